"""Twisted central L-values of newforms over number fields.

Exact ray class character machinery (Gauss sums, root numbers, Galois
averages) together with a smoothed approximate functional equation for the
L-values themselves, plus the lattice-point counting used to control the
averaged sums.
"""

from .fields import FieldElement, IntegralIdeal, LocalIso, NumberFieldData, nf_load, split_local_iso
from .roots import CyclotomicNumber, RootOfUnity

__all__ = [
    "CyclotomicNumber",
    "FieldElement",
    "IntegralIdeal",
    "LocalIso",
    "NumberFieldData",
    "RootOfUnity",
    "nf_load",
    "split_local_iso",
]

__version__ = "0.1.0"
