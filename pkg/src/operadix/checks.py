"""Results returned by the exhaustive axiom checkers."""

from __future__ import annotations

import os
from dataclasses import dataclass, field


@dataclass
class Certificate:
    subject: str
    checked: int = 0
    notes: dict = field(default_factory=dict)
    ok = True

    def __bool__(self):
        return True


@dataclass
class Violation:
    subject: str
    axiom: str
    witness: dict = field(default_factory=dict)
    ok = False

    def __bool__(self):
        return False

    def __str__(self):
        return f"{self.subject}: axiom {self.axiom} fails at {self.witness}"


def cap_guard(default=200000):
    """Upper bound on brute-force enumeration sizes (env OPERADIX_CAP_GUARD)."""
    raw = os.environ.get("OPERADIX_CAP_GUARD")
    if raw is None:
        return default
    return int(raw)
