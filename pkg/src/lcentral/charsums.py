"""Gauss sums, root numbers, and Galois averages of ray class characters.

The Gauss sum here is the shifted complete character sum

    G(chi, a) = chi(d)^(-1) * sum_x chi_loc(x) * efin(a * x~ / (d * pi^c))

over unit residues x mod p^c, where c is the conductor exponent, pi the fixed
generator of the prime, x~ an integral lift, and d a generator of the
different.  `chi_loc` is the local evaluation (the conjugate of the value on
ideal classes); `efin` is e(-Tr(.)).  With those normalizations the shift
identity G(chi)*conj(chi_loc)(a) = G(chi, a), the modulus |G|^2 = p^c, and
the conjugation law conj(G(chi)) = chi(-1) G(conj chi) all hold exactly, and
over the rationals G(conj chi) coincides with the classical Gauss sum of the
attached (even) Dirichlet character.

Root numbers follow the prime-power-conductor evaluation for forms with
trivial finite central character: W(chi) = chi(-1) * G(conj chi)^2 / p^c,
which has modulus one identically.

Galois averages are exact: sums of roots of unity assembled in cyclotomic
arithmetic and then recognized against the closed form (zero, a rational, or
the original character value).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from .fields import FieldElement
from .roots import CyclotomicNumber, RootOfUnity
from .rayclass import HeckeCharacter, PrimeContext, ResidueCharacter

Character = HeckeCharacter | ResidueCharacter

# largest cyclotomic level we are willing to reduce exactly
EXACT_LEVEL_LIMIT = 20000


@dataclass(frozen=True)
class CoefficientFieldContext:
    """Arithmetic of the coefficient field that steers Galois orbits.

    `n0` is the depth of p-power roots of unity in the field the character
    values are adjoined to: orbits run over substitutions t = 1 mod p^min(e,n0).
    """

    p: int
    n0: int

    def __post_init__(self):
        if self.n0 < 0:
            raise ValueError("n0 must be >= 0")


def _orbit_substitutions(p: int, e: int, n0: int) -> list[int]:
    """Exponent substitutions t acting on a character of order p^e."""
    if e == 0:
        return [1]
    mod = p ** e
    fixed = p ** min(e, n0)
    return [t for t in range(1, mod) if t % p != 0 and t % fixed == 1 % fixed]


def galois_orbit(chi: Character, ctx: CoefficientFieldContext) -> list[Character]:
    """The conjugates chi^t of a p-power-order character, deduplicated."""
    p = chi.p
    if p != ctx.p:
        raise ValueError("context prime differs from the character's prime")
    a, e = _split_p(chi.order, p)
    if a != 1:
        raise ValueError("Galois orbits are defined here for p-power-order characters")
    seen = set()
    orbit = []
    for t in _orbit_substitutions(p, e, ctx.n0):
        tw = chi.power(t)
        key = tw.vec if isinstance(tw, HeckeCharacter) else tw.k
        if key not in seen:
            seen.add(key)
            orbit.append(tw)
    return orbit


def _split_p(n: int, p: int) -> tuple[int, int]:
    m = 0
    while n % p == 0:
        n //= p
        m += 1
    return n, m


# ---------------------------------------------------------------------------
# Gauss sums
# ---------------------------------------------------------------------------

def gauss_sum(chi: Character, shift=1, exact: bool = False):
    """Shifted Gauss sum G(chi, shift); complex, or CyclotomicNumber if exact.

    The trivial character gets G := 1 by convention.  `shift` may be an
    integer or a field element; only its residue class mod p^c matters.
    """
    c = chi.conductor_exponent
    ctx: PrimeContext = chi.prime_ctx
    nf = ctx.nf
    if c == 0:
        return CyclotomicNumber.from_rational(1) if exact else 1.0 + 0j
    p = ctx.p
    mod = p ** c
    pi_c = ctx.pi ** c
    d_gen = nf.different_gen
    if isinstance(shift, FieldElement):
        a_elt = shift
    else:
        a_elt = nf.element_from_int(int(shift))
    denom = (d_gen * pi_c).inverse()

    pref = chi.local_value(d_gen)
    if pref is None:
        raise ValueError("the different meets the prime; unsupported configuration")
    pref = pref.conjugate()

    terms: list[tuple[RootOfUnity, RootOfUnity]] = []
    for x in range(1, mod):
        if x % p == 0:
            continue
        val = chi.local_value(x)
        if val is None:
            continue
        lift = nf.element_from_int(x)
        phase = nf.efin_phase(a_elt * lift * denom)
        terms.append((val, RootOfUnity(phase)))

    if exact:
        level = 1
        for val, ph in terms:
            level = lcm(level, val.order, ph.order)
        level = lcm(level, pref.order)
        if level > EXACT_LEVEL_LIMIT:
            raise ValueError(
                f"exact Gauss sum would need cyclotomic level {level}; use exact=False")
        acc: dict[int, Fraction] = {}
        for val, ph in terms:
            e = int((val.phase + ph.phase) % 1 * level)
            acc[e] = acc.get(e, Fraction(0)) + 1
        total = CyclotomicNumber(level, acc)
        return total * CyclotomicNumber.from_root(pref, level=level)

    total = 0j
    for val, ph in terms:
        total += (val * ph).to_complex()
    return total * pref.to_complex()


def root_number(chi: Character, nebentypus: str = "trivial") -> complex:
    """The twist root number W(chi) for a form with trivial central character.

    Unit modulus is a hard postcondition; a violation means the inputs are
    outside the supported configuration and raises.
    """
    if nebentypus != "trivial":
        raise NotImplementedError(
            "root numbers are implemented for trivial nebentypus; supply the "
            "nonsplit constant with the form data instead")
    if chi.conductor_exponent == 0:
        return 1.0 + 0j
    q = chi.conductor_norm
    g = gauss_sum(chi.conjugate())
    if isinstance(chi, HeckeCharacter):
        m1 = chi.value_on_ideal_of(-1)
        sign = m1.to_complex() if m1 is not None else 1.0
    else:
        sign = chi.local_value(-1).to_complex()
    w = sign * g * g / q
    if abs(abs(w) - 1) > 1e-9:
        raise ArithmeticError(f"root number drifted off the unit circle: |W| = {abs(w)}")
    return w


def gauss_sum_conjugation_defect(chi: Character) -> float:
    """|conj(G(chi)) - chi(-1) G(conj chi)|, which should vanish."""
    g = gauss_sum(chi)
    gbar = gauss_sum(chi.conjugate())
    if isinstance(chi, HeckeCharacter):
        m1 = chi.value_on_ideal_of(-1)
        sign = m1.to_complex() if m1 is not None else 1.0
    else:
        sign = chi.local_value(-1).to_complex()
    return abs(g.conjugate() - sign * gbar)


# ---------------------------------------------------------------------------
# Galois averages
# ---------------------------------------------------------------------------

@dataclass
class AverageResult:
    """Exact Galois-averaged character value.

    `cyclotomic` always carries the exact mean.  When the mean matches the
    closed form (it always should), `coeff`/`root` express it as
    coeff * root with a rational coefficient and a single root of unity.
    """

    cyclotomic: CyclotomicNumber
    orbit_size: int
    coeff: Fraction | None
    root: RootOfUnity | None

    @property
    def value(self) -> complex:
        return self.cyclotomic.to_complex()

    def is_zero(self) -> bool:
        return self.coeff == 0 if self.coeff is not None else self.cyclotomic.is_zero()


def _recognize(mean: CyclotomicNumber, seed: RootOfUnity) -> tuple[Fraction | None, RootOfUnity | None]:
    red = mean.reduced()
    if not red.coeffs:
        return Fraction(0), RootOfUnity(0)
    q = red.is_rational()
    if q is not None:
        return q, RootOfUnity(0)
    if mean == CyclotomicNumber.from_root(seed):
        return Fraction(1), seed
    return None, None


def average_char(chi: Character, ctx: CoefficientFieldContext, a) -> AverageResult:
    """Exact mean of chi^t(a) over the Galois orbit (value on ideal classes)."""
    orbit = galois_orbit(chi, ctx)
    vals = [_ideal_value(tw, a) for tw in orbit]
    n = len(orbit)
    if any(v is None for v in vals):
        zero = CyclotomicNumber.zero()
        return AverageResult(cyclotomic=zero, orbit_size=n, coeff=Fraction(0), root=RootOfUnity(0))
    level = 1
    for v in vals:
        level = lcm(level, v.order)
    acc: dict[int, Fraction] = {}
    for v in vals:
        e = int(v.phase * level)
        acc[e] = acc.get(e, Fraction(0)) + Fraction(1, n)
    mean = CyclotomicNumber(level, acc)
    seed = _ideal_value(chi, a)
    coeff, root = _recognize(mean, seed)
    return AverageResult(cyclotomic=mean, orbit_size=n, coeff=coeff, root=root)


def _ideal_value(chi: Character, a) -> RootOfUnity | None:
    if isinstance(chi, HeckeCharacter):
        if isinstance(a, tuple) and len(a) and not isinstance(a[0], int):
            return chi.value_on_ideal_of(a)
        if isinstance(a, tuple):
            # a canonical class element
            return chi.value_on_class(a)
        return chi.value_on_ideal_of(a)
    return chi.local_value(a)


def average_support(chi: Character, ctx: CoefficientFieldContext, a,
                    variant: str = "corrected") -> bool:
    """Support predicate for the averaged character, by value order.

    variant "paper": nonzero iff the order of chi(a) divides p^n0;
    variant "corrected": nonzero iff it divides p^(n0+1).
    """
    val = _ideal_value(chi, a)
    if val is None:
        return False
    _, j = val.order_p_part(ctx.p)
    if variant == "paper":
        return j <= ctx.n0
    if variant == "corrected":
        return j <= ctx.n0 + 1
    raise ValueError(f"unknown support variant {variant!r}")


def average_iota(chi: Character, ctx: CoefficientFieldContext, a,
                 nebentypus: str = "trivial") -> complex:
    """Mean of W(chi^t) * conj(chi^t)(a) over the Galois orbit (complex)."""
    orbit = galois_orbit(chi, ctx)
    total = 0j
    for tw in orbit:
        v = _ideal_value(tw.conjugate(), a)
        if v is None:
            continue
        total += root_number(tw, nebentypus) * v.to_complex()
    return total / len(orbit)


def averaged_iota_table(chi: Character, ctx: CoefficientFieldContext,
                        nebentypus: str = "trivial") -> dict[int, complex]:
    """average_iota at every unit residue class mod the conductor, keyed by
    smallest residue; shared work across the sweep."""
    orbit = galois_orbit(chi, ctx)
    c = chi.conductor_exponent
    p = chi.p
    mod = p ** c
    roots = [root_number(tw, nebentypus) for tw in orbit]
    out: dict[int, complex] = {}
    for r in range(1, mod):
        if r % p == 0:
            continue
        total = 0j
        for w, tw in zip(roots, orbit):
            v = _value_at_residue(tw.conjugate(), r)
            if v is not None:
                total += w * v.to_complex()
        out[r] = total / len(orbit)
    return out


def _value_at_residue(chi: Character, r: int) -> RootOfUnity | None:
    if isinstance(chi, HeckeCharacter):
        return chi.value_at_residue(r)
    # residue characters: ideal-style evaluation is the plain dual value
    v = chi.local_value(r)
    return v


def kloosterman_bound_report(chi: Character, ctx: CoefficientFieldContext,
                             nebentypus: str = "trivial") -> dict:
    """Sweep |averaged iota| over unit residues and compare to p^(-n/2).

    n is the experiment level attached to the conductor exponent c by
    c = n + n0 + 1; the report carries the sweep maximum and the implied
    constant against that scale.
    """
    c = chi.conductor_exponent
    p = chi.p
    n = c - ctx.n0 - 1
    if n < 0:
        raise ValueError("conductor too small for the context depth")
    table = averaged_iota_table(chi, ctx, nebentypus)
    max_abs = max(abs(v) for v in table.values()) if table else 0.0
    argmax = max(table, key=lambda r: abs(table[r])) if table else None
    scale = p ** (-n / 2)
    return {
        "character_label": chi.label,
        "p": p,
        "level": n,
        "conductor_exponent": c,
        "conductor_norm": p ** c,
        "orbit_size": len(galois_orbit(chi, ctx)),
        "max_abs": max_abs,
        "argmax_residue": argmax,
        "scale": scale,
        "constant": max_abs / scale if scale else float("inf"),
    }
