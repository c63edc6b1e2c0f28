"""Command-line entry point: operadix <command> [options].

Exit status: 0 success, 1 axiom or certificate violation, 2 unstabilized
truncation (with --require-stable, or when A -> P_A(0) is not invertible),
3 input or schema error.
"""

from __future__ import annotations

import argparse
import os
import sys
import warnings

from .algebras import check_algebra_axioms, free_algebra, group_algebra_c2
from .base_cat import Morphism, Obj, VECTQ, morphism_from_json, morphism_to_json, obj_to_json, vect_n
from .checks import Violation
from .errors import CapGuardError, OperadixError, StabilizationError, TruncationError
from . import serialize as ser

EXIT_OK, EXIT_VIOLATION, EXIT_UNSTABLE, EXIT_INPUT = 0, 1, 2, 3


class Job:
    """Collects the JSON artifact, console lines and the exit status of one run."""

    def __init__(self, args):
        self.args = args
        self.data = {"command": args.command}
        self.lines = []
        self.status = EXIT_OK

    def say(self, line):
        self.lines.append(line)

    def violation(self, cert):
        self.data.setdefault("violations", []).append(
            {"subject": cert.subject, "axiom": cert.axiom, "witness": _jsonable(cert.witness)})
        self.say(f"VIOLATION {cert}")
        self.status = max(self.status, EXIT_VIOLATION)

    def certificate(self, key, cert):
        if not cert:
            self.violation(cert)
            self.data[key] = {"ok": False, "violation": str(cert)}
        else:
            self.data[key] = {"ok": True, "checked": cert.checked}
            self.say(f"{key}: ok ({cert.checked} checks)")

    def envelope(self, key, env):
        s = env.summary()
        self.data[key] = s
        self.say(f"{key}: profile {s['profile']} next {s['profile_next']} "
                 f"stabilized {s['stabilized']}")
        if self.args.require_stable and env.stabilized is not True:
            self.say(f"{key}: not stabilized at cap {env.K}")
            self.status = max(self.status, EXIT_UNSTABLE)


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (int, str, bool)) or x is None:
        return x
    return str(x)


# -- shared loaders ----------------------------------------------------------------

def _operad(args, need):
    """The base operad, truncated high enough for `need`."""
    N = max(need, args.max_arity or 0)
    return ser.load_operad(args.operad, N)


def _load_algebra(args, P, path=None):
    path = path or args.algebra
    if path is None:
        raise OperadixError("an --algebra file is required")
    d = ser.read_json(path)
    ref = d.get("operad")
    if ref is not None and isinstance(ref, str) and ref != args.operad and not ref.endswith(".json"):
        raise OperadixError(f"{path} is over {ref}, not {args.operad}")
    return ser.algebra_from_json(d, P)


def _K(args):
    K = args.summand_cap
    if K is None or K < 0:
        raise OperadixError("summand cap must be a nonnegative integer")
    return K


def _need(args, extra=0):
    """Truncation of the base operad for envelopes up to --max-arity at cap K."""
    return (args.max_arity or 1) + _K(args) + 2 + extra


def _envelope(args, P, A, max_arity, stabilization=True, route=None):
    from .enveloping import env_operad
    route = route if args.route == "auto" and route else args.route
    return env_operad(P, A, _K(args), max_arity=max_arity, route=route, check=False,
                      stabilization=stabilization)


# -- commands ------------------------------------------------------------------

def cmd_env_operad(job):
    from .operads import check_operad_axioms
    a = job.args
    N = a.max_arity or 2
    # the axiom check composes elements of weight up to K each
    P = _operad(a, N + 2 * _K(a) + 1)
    A = _load_algebra(a, P)
    env = _envelope(a, P, A, N)
    job.envelope("envelope", env)
    job.certificate("operad_axioms", check_operad_axioms(env.operad, max_arity=N))
    job.data["result"] = ser.envelope_to_json(env, max_arity=N)


def cmd_env_algebra(job):
    from .enveloping import env_algebra
    a = job.args
    P = _operad(a, 1 + _K(a) + 2)
    A = _load_algebra(a, P)
    env = _envelope(a, P, A, 1)
    job.envelope("envelope", env)
    E = env_algebra(env)
    job.data["monoid"] = ser.monoid_to_json(E)
    job.say(f"Env dim {E.dim}")


def cmd_check_algebra(job):
    a = job.args
    N = a.max_arity or 3
    P = _operad(a, N)
    A = _load_algebra(a, P)
    job.data["dim"] = A.dim
    job.certificate("algebra_axioms", check_algebra_axioms(A, max_arity=N))


def cmd_check_module(job):
    from .modules import check_module_axioms
    a = job.args
    d = ser.read_json(a.module)
    N = a.max_arity or int(d.get("max_arity", 3))
    P = _operad(a, N)
    M = ser.module_from_json(d, P)
    job.data["dim"] = M.dim
    job.certificate("module_axioms", check_module_axioms(M, max_arity=min(N, M.max_arity)))


def cmd_free_algebra(job):
    a = job.args
    W = a.weight_cap or 2
    P = _operad(a, max(W, a.max_arity or 3))
    X = vect_n(a.generators, "x")
    F = free_algebra(P, X, W)
    weights = [0] * (W + 1)
    for lab in F.carrier.basis:
        weights[lab[0]] += 1
    job.data["dim"] = F.dim
    job.data["weight_dims"] = weights
    job.data["algebra"] = ser.presentation_to_json(F, a.operad)
    job.say(f"free algebra on {a.generators} generators, dims by weight {weights}")


def cmd_free_module(job):
    from .modules import free_module, free_module_comparison
    a = job.args
    N = a.max_arity or 4
    P = _operad(a, max(N, 1 + _K(a) + 2))
    A = _load_algebra(a, P)
    F = free_module(A, vect_n(a.m0_dim, "m"), N)
    job.data["dim"] = F.dim
    # module conversions embed operations of every arity into P_A(1) directly,
    # which the canonical route does without computing higher layers
    env = _envelope(a, P, A, 1, route="canonical")
    job.envelope("envelope", env)
    C, _ = free_module_comparison(F, env)
    iso = C.is_iso()
    job.data["comparison"] = {"iso": iso, "matrix": morphism_to_json(_plain(C))}
    job.say(f"free module dim {F.dim}, Env (x) M0 dim {C.cod.dim}, iso {iso}")
    if not iso:
        job.violation(Violation("free module", "comparison iso", {"dims": [C.dom.dim, C.cod.dim]}))


def _plain(f):
    return Morphism(Obj(VECTQ, tuple(map(str, f.dom.basis))), Obj(VECTQ, tuple(map(str, f.cod.basis))),
                    f.data)


def cmd_module_roundtrip(job):
    from .enveloping import env_algebra
    from .modules import regular_module, roundtrip
    from .monoids import regular_monoid_module
    a = job.args
    P = _operad(a, 1 + _K(a) + 2)
    if a.module:
        M = ser.module_from_json(ser.read_json(a.module), P)
        A = M.algebra
    else:
        A = _load_algebra(a, P)
        M = regular_module(A)
    env = _envelope(a, P, A, 1, route="canonical")
    job.envelope("envelope", env)
    if env.stabilized is not True and not a.force:
        raise StabilizationError("round trip needs a stabilized envelope (use --force to override)")
    job.certificate("module_roundtrip", roundtrip(env, M=M))
    job.certificate("env_module_roundtrip", roundtrip(env, Y=regular_monoid_module(env_algebra(env))))


def cmd_semidirect(job):
    from .modules import semidirect, square_zero_check
    a = job.args
    d = ser.read_json(a.module)
    N = a.max_arity or int(d.get("max_arity", 2))
    P = _operad(a, N)
    M = ser.module_from_json(d, P)
    S = semidirect(M)
    job.data["dim"] = S.dim
    job.data["algebra"] = ser.algebra_to_json(S, a.operad, max_arity=min(N, 2))
    job.certificate("square_zero", square_zero_check(S, S.m_indices, A=M.algebra, M=M,
                                                     max_arity=min(N, M.max_arity)))
    job.certificate("algebra_axioms", check_algebra_axioms(S, max_arity=min(3, S.max_arity)))


def cmd_hopf_env(job):
    from .enveloping import commutative_oracle
    from .hopf import (Bialgebra, check_env_hopf, env_hopf, group_bialgebra_c2, hopf_for,
                       match_bialgebra, trivial_bialgebra)
    a = job.args
    P = _operad(a, 1 + _K(a) + 2)
    H = hopf_for(P)
    if a.bialgebra in (None, "group-c2"):
        Bi = group_bialgebra_c2(H)
    elif a.bialgebra == "trivial":
        Bi = trivial_bialgebra(H)
    else:
        Bi = ser.bialgebra_from_json(ser.read_json(a.bialgebra), H)
    eh = env_hopf(Bi, _K(a), check=False)
    job.envelope("envelope", eh.env)
    job.certificate("hopf", check_env_hopf(eh))
    E = eh.monoid
    job.data["env"] = ser.monoid_to_json(E)
    job.data["env_delta"] = ser.cols_to_json([eh.env_delta(u) for u in range(E.dim)], E.dim * E.dim)
    job.data["env_counit"] = [ser.q_to_str(eh.env_counit(u)) for u in range(E.dim)]
    if a.operad == "uCom":
        f = commutative_oracle(eh.env)
        if f.matrix().is_iso():
            job.certificate("matches_input_bialgebra", match_bialgebra(eh, f))
    _ = (Bialgebra, group_algebra_c2)


def cmd_base_change(job):
    from .algebras import AlgebraMap, check_algebra_map
    from .base_change import algebra_base_change, free_extension_check
    a = job.args
    P = _operad(a, 1 + _K(a) + 2)
    A = _load_algebra(a, P, a.source)
    B = _load_algebra(a, P, a.target)
    f = morphism_from_json(ser.read_json(a.map))
    if f.dom.dim != A.dim or f.cod.dim != B.dim:
        raise OperadixError("map dimensions do not match the algebras")
    fm = AlgebraMap(A, B, lambda x: dict(f.data[x]), name="f")
    job.certificate("algebra_map", check_algebra_map(fm, max_arity=min(3, A.max_arity, B.max_arity)))
    if job.status:
        return
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        bc = algebra_base_change(P, fm, _K(a), route=a.route)
    for w in caught:
        job.say(f"warning: {w.message}")
    job.envelope("source_envelope", bc.env_A)
    job.envelope("target_envelope", bc.env_B)
    g = bc.monoid_map
    job.data["env_map"] = ser.monoid_map_to_json(g)
    C = vect_n(1)
    job.certificate("unit_on_free_module", free_extension_check(g, C))
    from .base_change import extend, unit_map
    from .monoids import free_monoid_module
    X = free_monoid_module(g.source, C)
    job.data["unit_matrix"] = morphism_to_json(_plain(unit_map(g, X, extend(g, X))))


def cmd_trees_enumerate(job):
    from .trees import admissible, count_table, count_table_csv, enumerate_trees, term
    a = job.args
    pred = None if a.all else admissible
    if a.csv:
        table = count_table(a.n, a.k, a.arity_cap, predicate=pred)
        job.csv = count_table_csv(table)
        job.say(f"count table up to n={a.n}, k={a.k}")
        return
    trees = enumerate_trees(a.n, a.k, predicate=pred, arity_cap=a.arity_cap)
    job.data["trees"] = [term(T) for T in trees]
    job.data["count"] = len(trees)
    job.say(f"{len(trees)} trees with n={a.n}, k={a.k}")


def cmd_trees_usets(job):
    from .trees import (LabelSetPair, aut_group, brute_force_u_star, equivariance_certificate,
                        labelling_term, parse, u_minus_set, u_set, u_star_set)
    a = job.args
    T = parse(a.tree)
    d = ser.read_json(a.labels)
    L = LabelSetPair(d.get("K1", {}), d.get("K2", {}))

    def dump(S):
        return sorted(labelling_term(T, x) for x in S)

    star, brute = u_star_set(T, L), brute_force_u_star(T, L)
    job.data.update({"tree": str(T), "u": dump(u_set(T, L)), "u_star": dump(star),
                     "u_minus": dump(u_minus_set(T, L)), "aut_order": aut_group(T).order})
    job.say(f"|u| = {len(u_set(T, L))}, |u*| = {len(star)}, |u-| = {len(u_minus_set(T, L))}")
    if star != brute:
        job.violation(Violation(str(T), "u* = brute force", {}))
    job.certificate("equivariance", equivariance_certificate(T, L))


def cmd_verify_all(job):
    from .verify import criterion_11, report_bytes, run_all
    a = job.args
    baseline = a.baseline
    if baseline is None and a.out and os.path.exists(a.out):
        baseline = a.out
    old = None
    if baseline is not None:
        with open(baseline, "rb") as fh:
            old = fh.read()
    rows = run_all()
    job.artifact = report_bytes(rows).decode()
    for r in rows + [criterion_11(rows, old)]:
        job.say(f"[{'PASS' if r['ok'] else 'FAIL'}] criterion {r['id']}: {r['name']}")
        if not r["ok"]:
            job.say(f"    {r['details']}")
            job.status = max(job.status, EXIT_VIOLATION)


COMMANDS = {
    "env-operad": cmd_env_operad, "env-algebra": cmd_env_algebra,
    "check-algebra": cmd_check_algebra, "check-module": cmd_check_module,
    "free-algebra": cmd_free_algebra, "free-module": cmd_free_module,
    "module-roundtrip": cmd_module_roundtrip, "semidirect": cmd_semidirect,
    "hopf-env": cmd_hopf_env, "base-change": cmd_base_change,
    "trees-enumerate": cmd_trees_enumerate, "trees-usets": cmd_trees_usets,
    "verify-all": cmd_verify_all,
}


def build_parser():
    p = argparse.ArgumentParser(prog="operadix", description="Enveloping operads of algebras over operads.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--operad", default="uAss", help="uAss, uCom or a JSON operad file")
        sp.add_argument("--max-arity", type=int, default=None)
        sp.add_argument("--weight-cap", type=int, default=None)
        sp.add_argument("--summand-cap", "-K", type=int, default=3)
        sp.add_argument("--require-stable", action="store_true")
        sp.add_argument("--route", default="auto", choices=["auto", "presentation", "canonical"])
        sp.add_argument("--out", default=None, help="write the JSON (or CSV) artifact here")

    for name in ("env-operad", "env-algebra", "check-algebra", "free-module", "module-roundtrip"):
        sp = sub.add_parser(name)
        common(sp)
        sp.add_argument("--algebra", required=name != "module-roundtrip")
        if name == "free-module":
            sp.add_argument("--m0-dim", type=int, default=1)
        if name == "module-roundtrip":
            sp.add_argument("--module", default=None)
            sp.add_argument("--force", action="store_true")
    for name in ("check-module", "semidirect"):
        sp = sub.add_parser(name)
        common(sp)
        sp.add_argument("--module", required=True)
    sp = sub.add_parser("free-algebra")
    common(sp)
    sp.add_argument("--generators", type=int, default=1)
    sp = sub.add_parser("hopf-env")
    common(sp)
    sp.add_argument("--bialgebra", default=None, help="group-c2, trivial or a JSON bialgebra file")
    sp = sub.add_parser("base-change")
    common(sp)
    sp.add_argument("--source", required=True)
    sp.add_argument("--target", required=True)
    sp.add_argument("--map", required=True, help="JSON morphism between the carriers")
    sp = sub.add_parser("trees")
    tsub = sp.add_subparsers(dest="trees_command", required=True)
    te = tsub.add_parser("enumerate")
    te.add_argument("-n", type=int, required=True)
    te.add_argument("-k", type=int, required=True)
    te.add_argument("--arity-cap", type=int, default=3)
    te.add_argument("--all", action="store_true", help="drop the coloured-or-unary condition")
    te.add_argument("--csv", action="store_true", help="emit the counting table up to (n, k)")
    te.add_argument("--out", default=None)
    tu = tsub.add_parser("usets")
    tu.add_argument("--tree", required=True)
    tu.add_argument("--labels", required=True, help='JSON {"K1": {"1": ["id", ...]}, "K2": {...}}')
    tu.add_argument("--out", default=None)
    sp = sub.add_parser("verify-all")
    sp.add_argument("--out", default=None, help="report of criteria 1-10 (JSON)")
    sp.add_argument("--baseline", default=None,
                    help="earlier report to compare against (default: --out if it exists)")
    return p


def _finish(job):
    text = getattr(job, "csv", None) or getattr(job, "artifact", None)
    if text is None:
        job.data["exit_status"] = job.status
        text = ser.dumps(_jsonable(job.data))
    # human-readable lines go to stderr when stdout carries the artifact
    stream = sys.stdout if job.args.out else sys.stderr
    for line in job.lines:
        print(line, file=stream)
    if job.args.out:
        ser.write_atomic(job.args.out, text)
    else:
        sys.stdout.write(text)


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    for attr in ("require_stable", "max_arity", "route", "operad", "summand_cap"):
        if not hasattr(args, attr):
            setattr(args, attr, None)
    if args.command == "trees":
        args.command = f"trees-{args.trees_command}"
    for attr in ("max_arity", "weight_cap", "summand_cap"):
        v = getattr(args, attr, None)
        if v is not None and v < 0:
            print(f"error: --{attr.replace('_', '-')} must be nonnegative", file=sys.stderr)
            return EXIT_INPUT
    job = Job(args)
    try:
        COMMANDS[args.command](job)
    except StabilizationError as exc:
        print(f"unstable: {exc}", file=sys.stderr)
        return EXIT_UNSTABLE
    except (OperadixError, CapGuardError, TruncationError, OSError, ValueError, KeyError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    _finish(job)
    return job.status


if __name__ == "__main__":
    sys.exit(main())
