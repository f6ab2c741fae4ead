"""Exact integral homotopy-group bookkeeping for THH of ell and ko.

The closed forms live in `closed_forms`, the Bockstein-style tower engines
in `ss`, the divided-power cap calculus in `thc`, and the cross-check
suites in `verify`.  Everything is exact integer arithmetic.
"""

from .padic import PrimeContext, TorsionWord, binom_valuation, nu, r_truncation
from .closed_forms import (ko_homotopy, thh_ell, thh_ell_HZ, thh_ell_k1,
                           thh_ko, thh_ko_ku)
from .graded import GradedModulePresentation, ModuleMap

__all__ = [
    "PrimeContext", "TorsionWord", "binom_valuation", "nu", "r_truncation",
    "thh_ell", "thh_ell_HZ", "thh_ell_k1", "thh_ko", "thh_ko_ku",
    "ko_homotopy", "GradedModulePresentation", "ModuleMap",
]
