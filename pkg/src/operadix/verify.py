"""The acceptance criteria as runnable checks.

Each criterion returns a plain dict {"id", "name", "ok", "details"} whose
contents are deterministic, so reports can be compared byte for byte.
"""

from __future__ import annotations

from .algebras import (AlgebraMap, dual_numbers, free_algebra, ground_algebra, group_algebra_c2,
                       identity_map, check_algebra_map)
from .base_cat import Morphism, vect_n
from .base_change import (algebra_base_change, free_extension_check, hom_bijection,
                          triangle_identities)
from .enveloping import (algebra_monoid, associative_oracle, check_relative, commutative_oracle,
                         compare_envelopes, env_algebra, env_operad, env_operad_free, relative_env)
from .hopf import (check_env_bialgebra, env_hopf, group_bialgebra_c2, match_bialgebra, ucom_hopf)
from .modules import (AModule, free_module, free_module_comparison, free_module_map,
                      regular_module, roundtrip, semidirect, square_zero_check, tensor_module)
from .monoids import (MonoidMap, check_module_map, check_monoid_map, free_monoid_module,
                      opposite, regular_monoid_module, tensor_monoid)
from .operads import UAss, UCom, builtin
from . import trees
from .serialize import dumps
from .trees import (LabelSetPair, brute_force_u_star, cross_validate, parse, u_set, u_star_set)

_ENVS = []


def _record(env):
    _ENVS.append(env)
    return env


def _result(i, name, ok, details):
    return {"id": i, "name": name, "ok": bool(ok), "details": details}


def _s(cert):
    return str(cert) if not cert else f"ok ({cert.checked} checks)"


def criterion_1():
    """Relation-free envelope against the closed free formula."""
    rows = []
    ok = True
    for name in ("uAss", "uCom"):
        for d in (1, 2):
            P = builtin(name, 6)
            F = free_algebra(P, vect_n(d, "x"), 3)
            env = _record(env_operad(P, F, 3, max_arity=3, check=False, stabilization=False))
            L = env_operad_free(P, d, 3, max_arity=3)
            cert = compare_envelopes(env.operad, L, 3)
            ok &= bool(cert)
            rows.append({"operad": name, "gens": d, "profile": env.operad.profile(),
                         "result": _s(cert)})
    return _result(1, "free envelope formula", ok, rows)


def criterion_2():
    """eta_bar invertible for every envelope built by the other criteria."""
    if not _ENVS:
        criterion_1()
        criterion_3()
    rows = [{"algebra": e.algebra.name, "operad": e.base.name, "K": e.K,
             "iso": e.eta_bar_matrix.is_iso()} for e in _ENVS]
    return _result(2, "P_A(0) = A", all(r["iso"] for r in rows), rows)


def criterion_3():
    rows = []
    ok = True
    for P, oracle, want in ((UCom(6), commutative_oracle, 2), (UAss(6), associative_oracle, 4)):
        env = _record(env_operad(P, dual_numbers(P), 3, max_arity=1))
        f = oracle(env)
        iso = f.matrix().is_iso()
        cert = check_monoid_map(f)
        good = env.stabilized is True and iso and bool(cert) and env.operad.dim(1) == want
        ok &= good
        rows.append({"operad": P.name, "dim": env.operad.dim(1), "expected": want,
                     "stabilized": env.stabilized, "iso": iso, "monoid_map": _s(cert)})
    return _result(3, "classical oracles", ok, rows)


def _module_instances():
    out = []
    for P in (UAss(6), UCom(6)):
        D = dual_numbers(P)
        env = _record(env_operad(P, D, 3, max_arity=1))
        out.append((env, regular_module(D), f"{P.name} Q[x]/x2 on itself"))
        out.append((env, tensor_module(D, vect_n(2, "v")), f"{P.name} Q[x]/x2 (x) Q^2"))
    P = UCom(6)
    C = group_algebra_c2(P)
    env = _record(env_operad(P, C, 3, max_arity=1))
    out.append((env, regular_module(C), "uCom Q[C2] on itself"))
    P = UAss(6)
    C = group_algebra_c2(P)
    env = _record(env_operad(P, C, 3, max_arity=1))
    out.append((env, regular_module(C), "uAss Q[C2] on itself"))
    return out


def criterion_4():
    rows = []
    ok = True
    for env, M, label in _module_instances():
        cert = roundtrip(env, M=M)
        Y = regular_monoid_module(env_algebra(env))
        cert2 = roundtrip(env, Y=Y)
        ok &= bool(cert) and bool(cert2)
        rows.append({"instance": label, "A-module": _s(cert), "Env-module": _s(cert2)})
    return _result(4, "module round trip", ok and len(rows) >= 5, rows)


def criterion_5():
    rows = []
    ok = True
    for P in (UAss(6), UCom(6)):
        D = dual_numbers(P)
        env = _record(env_operad(P, D, 3, max_arity=1))
        frees = {}
        for d in (1, 2):
            F = free_module(D, vect_n(d, "m"), 4)
            C, Y = free_module_comparison(F, env)
            iso = C.is_iso()
            frees[d] = (F, C)
            ok &= iso
            rows.append({"operad": P.name, "M0": d, "dim": F.dim, "env_x_M0": C.cod.dim, "iso": iso})
        # naturality in M0 along g: Q^1 -> Q^2
        g = Morphism(vect_n(1, "m"), vect_n(2, "m"), [{0: 1, 1: 2}])
        (F1, C1), (F2, C2) = frees[1], frees[2]
        Fg = free_module_map(F1, F2, g)
        # Env (x) g on Env (x) Q^1 -> Env (x) Q^2
        side = Morphism(C1.cod, C2.cod, [{e * 2 + j: c for j, c in g.data[0].items()}
                                         for e in range(C1.cod.dim)])
        nat = Fg.then(C2) == C1.then(side)
        ok &= nat
        rows.append({"operad": P.name, "naturality": nat})
    return _result(5, "free module = Env (x) M0", ok, rows)


def criterion_6():
    rows = []
    ok = True
    P = UCom(6)
    D = dual_numbers(P)
    Q = ground_algebra(P)
    cases = [(P, D, D, identity_map(D), 2, 1, "alpha = id"),
             (P, D, Q, AlgebraMap(D, Q, lambda a: {0: 1} if a == 0 else {}, name="x->0"), 2, 1,
              "Q[x]/x2 -> Q")]
    PA = UAss(7)
    F = free_algebra(PA, vect_n(1, "x"), 3)
    DA = dual_numbers(PA)
    cases.append((PA, F, DA, AlgebraMap(F, DA, lambda a: {F.weight(a): 1} if F.weight(a) < 2 else {},
                                         name="free->Q[x]/x2"), 3, 2, "uAss free<x> -> Q[x]/x2"))
    for P, A, B, alpha, K, K_rel, label in cases:
        c0 = check_algebra_map(alpha, max_arity=3)
        rel = relative_env(P, A, B, alpha, K=K, K_rel=K_rel, check=False)
        cert = check_relative(rel)
        ok &= bool(c0) and bool(cert)
        rows.append({"instance": label, "alpha": _s(c0), "iso": _s(cert),
                     "dims": [rel.env_B.operad.dim(n) for n in range(rel.arity + 1)]})
    return _result(6, "relative envelope", ok, rows)


def criterion_7():
    rows = []
    ok = True
    for P in (UAss(4), UCom(4)):
        D = dual_numbers(P)
        for M in (regular_module(D), tensor_module(D, vect_n(2, "v")), free_module(D, vect_n(1, "m"), 4)):
            S = semidirect(M)
            cert = square_zero_check(S, S.m_indices, A=D, M=M, max_arity=min(2, M.max_arity))
            ok &= bool(cert)
            rows.append({"operad": P.name, "module": M.name, "dim": S.dim, "result": _s(cert)})
    # fault injection: a product of two M elements that does not vanish
    P = UCom(4)
    D = dual_numbers(P)
    S = semidirect(regular_module(D))
    from .algebras import Algebra
    bad = Algebra(P, S.carrier, lambda n, p, args: {S.dim - 1: 1} if n == 2 and max(args) < 2
                  else S.gamma(n, p, args), name="faulty")
    cert = square_zero_check(bad, S.m_indices)
    detected = not cert
    ok &= detected
    rows.append({"fault": "mu_2(m, m) != 0", "detected": detected, "witness": str(cert)})
    # a module whose action breaks associativity is caught through the projection
    M = regular_module(D)
    broken = AModule(D, M.carrier, lambda n, k, p, a: {0: 1} if (n, a) == (2, (1, 1)) else M.mu(n, k, p, a),
                     name="broken")
    cert = square_zero_check(semidirect(broken), list(range(2)), A=D, M=broken)
    from .algebras import check_algebra_axioms
    cert2 = check_algebra_axioms(semidirect(broken), max_arity=3)
    detected = (not cert) or (not cert2)
    ok &= detected
    rows.append({"fault": "non-module action", "detected": detected,
                 "witness": str(cert) if not cert else str(cert2)})
    return _result(7, "square-zero", ok, rows)


def criterion_8():
    P = UCom(5)
    H = ucom_hopf(P)
    Bi = group_bialgebra_c2(H)
    eh = env_hopf(Bi, 3, check=False)
    _record(eh.env)
    from .hopf import check_env_hopf
    cert = check_env_hopf(eh)
    cert2 = check_env_bialgebra(eh)
    f = commutative_oracle(eh.env)
    cert3 = match_bialgebra(eh, f)
    iso = f.matrix().is_iso()
    ok = bool(cert) and bool(cert2) and bool(cert3) and iso
    return _result(8, "Hopf", ok, {"Hopf axioms on P_A": _s(cert), "Env bialgebra": _s(cert2),
                                   "match with Q[C2]": _s(cert3), "Env = A": iso,
                                   "profile": eh.env.profile})


def criterion_9():
    rows = []
    ok = True
    P = UCom(4)
    D = algebra_monoid(dual_numbers(P))
    Q = algebra_monoid(ground_algebra(P))
    unit = MonoidMap(Q, D, lambda a: {0: 1}, name="Q->D")
    PA = UAss(6)
    DA = algebra_monoid(dual_numbers(PA))
    T = tensor_monoid(DA, opposite(DA))
    incl = MonoidMap(DA, T, lambda a: {a * 2: 1}, name="D->DxD^op")
    aug = MonoidMap(D, Q, lambda a: {0: 1} if a == 0 else {}, name="D->Q")
    for f, Xs, Ys in ((unit, [regular_monoid_module(Q), free_monoid_module(Q, vect_n(2))],
                       [regular_monoid_module(D)]),
                      (incl, [regular_monoid_module(DA), free_monoid_module(DA, vect_n(2))],
                       [regular_monoid_module(T)]),
                      (aug, [regular_monoid_module(D)], [regular_monoid_module(Q)])):
        for X in Xs:
            for Y in Ys:
                c1 = triangle_identities(f, X, Y)
                c2 = hom_bijection(f, X, Y)
                ok &= bool(c1) and bool(c2)
                rows.append({"map": f.name, "X": X.name, "Y": Y.name, "triangles": _s(c1),
                             "hom bijection": _s(c2)})
        for d in (1, 2):
            c = free_extension_check(f, vect_n(d))
            ok &= bool(c)
            rows.append({"map": f.name, "C": d, "unit = f (x) id_C": _s(c)})
    # the Env map of an algebra map, and its unit on the free module on Q
    F = free_algebra(PA, vect_n(1, "x"), 2)
    fm = AlgebraMap(F, dual_numbers(PA), lambda a: {a: 1} if a < 2 else {}, name="free->Q[x]/x2")
    import warnings
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        bc = algebra_base_change(PA, fm, 2, K_B=3)
    from .linalg import rank
    r = rank(bc.matrix().matrix())
    c = free_extension_check(bc.monoid_map, vect_n(1))
    ok &= bool(c) and r == bc.env_B.operad.dim(1)
    rows.append({"map": "Env(free<x>) -> Env(Q[x]/x2)", "dims": [bc.env_A.operad.dim(1),
                                                                 bc.env_B.operad.dim(1)],
                 "rank": r, "unit = f (x) id_Q": _s(c)})
    return _result(9, "base change", ok, rows)


def criterion_10():
    cert = cross_validate(max_vertices=3, arity_cap=3, max_labels=3)
    T = parse("U1(.)")
    L = LabelSetPair({1: ["id", "a"]}, {1: ["id", "a", "b"]})
    ex1 = u_star_set(T, L) == brute_force_u_star(T, L) == {("id", (None,))} and len(u_set(T, L)) == 2
    T = parse("C2(.,.)")
    L = LabelSetPair({1: ["id"], 2: ["p"]}, {1: ["id"], 2: ["p", "q"]})
    ex2 = u_star_set(T, L) == brute_force_u_star(T, L) == {("p", (None, None))}
    ok = bool(cert) and ex1 and ex2
    return _result(10, "admissible trees", ok, {"cross validation": _s(cert),
                                              "notes": dict(cert.notes) if cert else {},
                                              "unary example": ex1, "binary example": ex2})


CRITERIA = [criterion_1, criterion_3, criterion_2, criterion_4, criterion_5, criterion_6,
            criterion_7, criterion_8, criterion_9, criterion_10]


def run_all(select=None):
    """Criteria 1-10 in a fixed order (2 after 1 and 3 so it sees their envelopes)."""
    _ENVS.clear()
    out = []
    for fn in CRITERIA:
        i = int(fn.__name__.split("_")[1])
        if select and i not in select:
            continue
        try:
            out.append(fn())
        except Exception as exc:  # a crash is a failed criterion, reported with its cause
            out.append(_result(i, fn.__doc__ or fn.__name__, False,
                               {"error": f"{type(exc).__name__}: {exc}"}))
    return sorted(out, key=lambda r: r["id"])


def report_bytes(rows):
    """The verification artifact: criteria rows as canonical JSON."""
    return dumps({"criteria": rows}).encode()


def clear_caches():
    for fn in (trees.u_set, trees.u_star_set, trees.u_minus_set, trees._assembler):
        fn.cache_clear()
    _ENVS.clear()


def criterion_11(rows, baseline=None):
    """Determinism: the artifact of this run against a previous run's bytes,
    or against a second full run from cold caches when none is given."""
    mine = report_bytes(rows)
    if baseline is None:
        clear_caches()
        baseline = report_bytes(run_all())
        source = "second run"
    else:
        source = "previous run"
    same = mine == baseline
    details = {"compared with": source, "bytes": len(mine), "identical": same}
    if not same:
        a, b = mine.decode().splitlines(), baseline.decode().splitlines()
        first = next((i for i, (x, y) in enumerate(zip(a, b)) if x != y), min(len(a), len(b)))
        details["first difference at line"] = first + 1
    return _result(11, "determinism", same, details)
