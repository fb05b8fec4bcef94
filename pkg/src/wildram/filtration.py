"""Lower-numbering ramification groups in the totally ramified cases.

Everything is evaluated inside the local tower built by
:func:`wildram.oracle.build_splitting_tower`.  A Galois element is given by
its action on the roots ``alpha`` and ``beta``; applying it to an element
means substituting the images of ``alpha`` and ``beta`` into a polynomial
expression, so ``pi`` is always handled as a function of the two roots.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import product

from .dyadic import int_val2
from .efg import classify_efg
from .errors import NotTotallyRamified, PrecisionExhausted, StructureConstantMismatch
from .oracle import build_splitting_tower, with_escalation
from .tower import _lower_bound
from .triple import EfgTriple

__all__ = [
    "GALOIS_ELEMENTS",
    "FiltrationProfile",
    "GaloisElement",
    "MINIMAL_POLYNOMIAL",
    "filtration_profile",
    "galois_displacements",
    "minimal_polynomial_coefficients",
    "ramification_case",
    "uniformizer",
    "verify_structure_constants",
]


@dataclass(frozen=True)
class GaloisElement:
    """``alpha -> sa * X``, ``beta -> sb * Y`` with ``(X, Y) = (beta, alpha)`` if ``swap``."""

    label: str
    swap: bool
    sa: int
    sb: int

    def images(self, alpha, beta):
        """``(sigma(alpha), sigma(beta))`` for concrete roots."""
        return _apply(self, alpha, beta)

    def _image_symbol(self, root: str) -> tuple[int, str]:
        # image of alpha or beta as (sign, root name)
        if root == "alpha":
            return self.sa, "beta" if self.swap else "alpha"
        return self.sb, "alpha" if self.swap else "beta"

    def compose(self, other: GaloisElement) -> GaloisElement:
        """``self`` after ``other``."""
        out = {}
        for root in ("alpha", "beta"):
            s1, r1 = other._image_symbol(root)
            s2, r2 = self._image_symbol(r1)
            out[root] = (s1 * s2, r2)
        swap = out["alpha"][1] == "beta"
        return _element_for(swap, out["alpha"][0], out["beta"][0])

    @property
    def fixes_sqrt_minus_c(self) -> bool:
        # sqrt(-c) = alpha**2 + c, and alpha**2 <-> beta**2 negates it
        return not self.swap

    def __str__(self) -> str:
        return self.label


def _make_elements() -> tuple[GaloisElement, ...]:
    table = [
        (False, 1, 1), (False, -1, 1), (False, 1, -1), (False, -1, -1),
        (True, 1, 1), (True, -1, 1), (True, 1, -1), (True, -1, -1),
    ]
    return tuple(GaloisElement(f"sigma{i}", *s) for i, s in enumerate(table))


GALOIS_ELEMENTS: tuple[GaloisElement, ...] = _make_elements()
_BY_ACTION = {(g.swap, g.sa, g.sb): g for g in GALOIS_ELEMENTS}
_BY_LABEL = {g.label: g for g in GALOIS_ELEMENTS}


def _element_for(swap: bool, sa: int, sb: int) -> GaloisElement:
    return _BY_ACTION[(swap, sa, sb)]


def _apply(g: GaloisElement, alpha, beta):
    if g.swap:
        return g.sa * beta, g.sb * alpha
    return g.sa * alpha, g.sb * beta


# -- uniformizers --------------------------------------------------------------

def ramification_case(c: int) -> str:
    """``"1mod4"`` or ``"2^(2k+1)m"``; raises NotTotallyRamified otherwise."""
    triple, _ = classify_efg(c)
    if triple != EfgTriple(8, 1, 1):
        raise NotTotallyRamified(f"c = {c} has triple {triple}")
    return "1mod4" if c % 4 == 1 else "2^(2k+1)m"


def _pi_expression(c: int):
    """``pi`` as a function of ``(alpha, beta)``."""
    if c % 4 == 1:
        return lambda a, b: (a / 2) * (a + b + b * b)
    k = (int_val2(c) - 1) // 2
    if k % 2 == 0:
        h = k // 2
        s = 1 << h

        def pi_even(a, b):
            x = a / s
            return (x * x * x + (a + b) / s + 2) / 2

        return pi_even
    h = (k - 1) // 2
    s, s1 = 1 << h, 1 << (h + 1)

    def pi_odd(a, b):
        y = (a + b) / s1
        return (a / s + y * y * y + 2) / 2

    return pi_odd


def _tower_and_pi(c: int, precision: int):
    loc = build_splitting_tower(c, precision)
    if loc.field.e != 8:
        raise NotTotallyRamified(f"tower for c = {c} has e = {loc.field.e}")
    expr = _pi_expression(c)
    pi = expr(loc.alpha, loc.beta)
    vp = loc.field.vpi(pi)
    if vp != 1:
        raise StructureConstantMismatch("v_pi(pi)", 1, vp)
    return loc, expr, pi


def uniformizer(c: int, precision: int | None = None):
    """A uniformizer of the totally ramified local splitting field.

    Returns the tower element ``pi``; its valuation is checked to be 1/8.

    Raises:
        NotTotallyRamified: if 2 is not totally ramified for ``c``.
    """
    ramification_case(c)
    (loc, _, pi), _ = with_escalation(_tower_and_pi, c, precision)
    return pi


# -- displacements and filtration -------------------------------------------

def _displacements_at(c: int, precision: int) -> dict[str, int]:
    loc, expr, pi = _tower_and_pi(c, precision)
    F = loc.field
    out = {}
    for g in GALOIS_ELEMENTS[1:]:
        a, b = _apply(g, loc.alpha, loc.beta)
        out[g.label] = F.vpi(pi - expr(a, b))
    return out


def galois_displacements(c: int, precision: int | None = None) -> dict[str, int]:
    """``v_pi(pi - sigma(pi))`` for the seven non-identity elements."""
    ramification_case(c)
    disp, _ = with_escalation(_displacements_at, c, precision)
    return disp


@dataclass
class FiltrationProfile:
    """Sizes and members of ``G_i`` for ``i = 0, 1, ...`` up to the first trivial group."""

    c: int
    case: str
    sizes: list[int]
    groups: list[list[str]]
    displacements: dict[str, int] = field(default_factory=dict)

    def group(self, i: int) -> list[str]:
        return self.groups[i] if i < len(self.groups) else ["sigma0"]

    def to_dict(self) -> dict:
        return {
            "c": self.c,
            "case": self.case,
            "sizes": self.sizes,
            "groups": self.groups,
            "displacements": self.displacements,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def is_subgroup(labels) -> bool:
    elems = [_BY_LABEL[x] for x in labels]
    if GALOIS_ELEMENTS[0] not in elems:
        return False
    return all(a.compose(b) in elems for a in elems for b in elems)


def filtration_profile(c: int, precision: int | None = None) -> FiltrationProfile:
    """Ramification groups ``G_i = {sigma : v_pi(sigma(pi) - pi) >= i + 1}``."""
    case = ramification_case(c)
    disp = galois_displacements(c, precision)
    sizes, groups = [], []
    i = 0
    while True:
        members = ["sigma0"] + [g for g in disp if disp[g] >= i + 1]
        sizes.append(len(members))
        groups.append(members)
        if len(members) == 1:
            break
        i += 1
    for gi in groups:
        if not is_subgroup(gi):
            raise AssertionError(f"G_i = {gi} is not a subgroup")
    return FiltrationProfile(c, case, sizes, groups, disp)


# -- structure constants -----------------------------------------------------

# coefficients of x**7 ... x**0 as polynomials in m, lowest degree first
MINIMAL_POLYNOMIAL: tuple[tuple[int, ...], ...] = (
    (4, 16),
    (8, 68, 160, 64),
    (8, 112, 560, 1152, 768),
    (6, 120, 960, 3832, 7712, 6784, 1536),
    (0, 32, 600, 4528, 17408, 35328, 34816, 12288),
    (-4, -56, -104, 2552, 21936, 81984, 165376, 180224, 94208, 16384),
    (0, 8, 240, 3056, 21696, 94528, 261376, 456704, 483328, 278528, 65536),
    (2, 60, 828, 6968, 39828, 162384, 481232, 1035392, 1587968, 1671168, 1126400, 425984, 65536),
)


def minimal_polynomial_coefficients(m: int) -> list[int]:
    """Integer coefficients of the degree-8 polynomial of ``pi``, constant term first."""
    top_down = [1] + [sum(a * m**i for i, a in enumerate(p)) for p in MINIMAL_POLYNOMIAL]
    return top_down[::-1]


def _structure_at(c: int, precision: int) -> dict:
    loc, expr, pi = _tower_and_pi(c, precision)
    F = loc.field
    a, b = loc.alpha, loc.beta
    report = {
        "v_pi(pi)": F.vpi(pi),
        "v_pi(beta)": F.vpi(b),
        "v_pi(alpha+beta)": F.vpi(a + b),
        "v_pi(-alpha+beta)": F.vpi(b - a),
        "v_pi(alpha+beta+beta^2)": F.vpi(a + b + b * b),
    }
    ab = a * b
    for s1, s2, s3 in product((1, -1), repeat=3):
        name = f"v_pi({_sgn(s1)}alpha{_sgn(s2)}alpha*beta{_sgn(s3)}beta)"
        report[name] = F.vpi(s1 * a + s2 * ab + s3 * b)
    for g in GALOIS_ELEMENTS[1:]:
        ga, gb = _apply(g, a, b)
        report[f"displacement({g.label})"] = F.vpi(pi - expr(ga, gb))
    return report


def _sgn(s: int) -> str:
    return "+" if s > 0 else "-"


def _minpoly_bits(c: int, precision: int) -> int:
    """Guaranteed 2-adic valuation of the polynomial evaluated at ``pi``."""
    _, _, pi = _tower_and_pi(c, precision)
    coeffs = minimal_polynomial_coefficients((c - 1) // 4)
    acc = None
    for a in reversed(coeffs):
        acc = a if acc is None else acc * pi + a
    if isinstance(acc, int):
        raise AssertionError("polynomial evaluation stayed an integer")
    return _lower_bound(acc)


_EXPECTED = {
    "v_pi(pi)": 1,
    "v_pi(beta)": 2,
    "v_pi(alpha+beta)": 4,
    "v_pi(-alpha+beta)": 4,
    "v_pi(alpha+beta+beta^2)": 7,
}
_EXPECTED_DISPLACEMENTS_1MOD4 = dict(zip([g.label for g in GALOIS_ELEMENTS[1:]], (4, 4, 6, 2, 2, 2, 2)))


def verify_structure_constants(c: int, precision: int | None = None, minpoly_bits: int = 64) -> dict:
    """Check the valuation identities around ``pi`` for ``c = 1 mod 4``.

    Also evaluates the degree-8 polynomial with coefficients in
    ``m = (c - 1)/4`` at ``pi`` and checks that it vanishes to at least
    ``minpoly_bits`` bits and is Eisenstein.

    Returns:
        A report mapping each quantity to its observed value.

    Raises:
        StructureConstantMismatch: naming the first quantity that fails.
    """
    if ramification_case(c) != "1mod4":
        raise ValueError("structure constants are tabulated for c = 1 mod 4")
    report, prec = with_escalation(_structure_at, c, precision)
    for name, observed in report.items():
        if name.startswith("displacement("):
            expected = _EXPECTED_DISPLACEMENTS_1MOD4[name[len("displacement("):-1]]
        else:
            expected = _EXPECTED.get(name, 6)
        if observed != expected:
            raise StructureConstantMismatch(name, expected, observed)

    coeffs = minimal_polynomial_coefficients((c - 1) // 4)
    eisenstein = coeffs[0] % 4 == 2 and all(a % 2 == 0 for a in coeffs[1:-1]) and coeffs[-1] == 1
    if not eisenstein:
        raise StructureConstantMismatch("eisenstein", True, False)
    report["eisenstein"] = True

    # each pass through the Horner scheme costs a few bits; start well above the target
    p = max(prec, 4 * minpoly_bits)
    while True:
        try:
            bits = _minpoly_bits(c, p)
        except PrecisionExhausted:
            bits = 0
        if bits >= minpoly_bits or p >= 1 << 12:
            break
        p *= 2
    report["minpoly_vanishing_bits"] = int(bits)
    if bits < minpoly_bits:
        raise StructureConstantMismatch("minimal polynomial at pi", f">= {minpoly_bits} bits", bits)
    report["precision"] = prec
    return report
