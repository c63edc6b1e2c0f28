"""Enveloping operads and enveloping algebras of algebras over operads,
computed exactly over the rationals within finite truncations."""

from .algebras import (Algebra, AlgebraMap, PresentedAlgebra, Presentation, check_algebra_axioms,
                       free_algebra)
from .enveloping import EnvOperad, env_algebra, env_operad, env_operad_free
from .operads import builtin

__all__ = ["Algebra", "AlgebraMap", "PresentedAlgebra", "Presentation", "check_algebra_axioms",
           "free_algebra", "EnvOperad", "env_algebra", "env_operad", "env_operad_free", "builtin"]
__version__ = "0.1.0"
