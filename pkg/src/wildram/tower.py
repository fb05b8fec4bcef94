"""Iterated quadratic extensions of Q_2.

An element of a tower of depth ``L`` is stored as nested pairs: a
:class:`TowerElement` of level ``L`` is ``a + b*sqrt(u_L)`` where ``a`` and
``b`` are elements of level below ``L`` and ``u_L`` is the radicand adjoined at
step ``L``.  Level 0 elements are :class:`~wildram.dyadic.DyadicNumber`.

Valuations are computed through the norm map: for ``x`` of level ``L``,
``v(x) = v(N(x)) / 2`` where ``N(a + b sqrt(u)) = a**2 - b**2 u``.  This holds
for any genuine quadratic step, so no basis needs to be adapted to the
ramification.  Valuations are normalized so that ``v(2) = 1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .dyadic import INF, DyadicNumber, _add as _dadd, _mul as _dmul
from .errors import PrecisionExhausted, ResidueDegreeOverflow

__all__ = [
    "StepKind",
    "TowerElement",
    "TowerField",
    "element_valuation",
    "extend_by_sqrt",
    "is_square_in_field",
]


class StepKind(str, Enum):
    TRIVIAL = "trivial"
    UNRAMIFIED = "unramified"
    RAMIFIED = "ramified"


class _Generators:
    """Radicands of a tower plus the valuations of their square roots."""

    __slots__ = ("radicands", "root_valuations")

    def __init__(self, radicands: tuple, root_valuations: tuple):
        self.radicands = radicands
        self.root_valuations = root_valuations

    def extended(self, u, root_valuation: Fraction) -> _Generators:
        return _Generators(self.radicands + (u,), self.root_valuations + (root_valuation,))


class TowerElement:
    """``a + b*sqrt(u)`` for the radicand ``u`` of step ``level``."""

    __slots__ = ("level", "a", "b", "gens")

    def __init__(self, level: int, a, b, gens: _Generators):
        self.level = level
        self.a = a
        self.b = b
        self.gens = gens

    def __repr__(self) -> str:
        return f"({self.a!r}) + ({self.b!r})*r{self.level}"

    def __add__(self, other):
        if isinstance(other, int):
            return TowerElement(self.level, self.a + other, self.b, self.gens)
        return _add(self, other)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, int):
            return TowerElement(self.level, self.a - other, self.b, self.gens)
        return _add(self, _neg(other))

    def __rsub__(self, other):
        return _neg(self) + other

    def __neg__(self):
        return _neg(self)

    def __mul__(self, other):
        if isinstance(other, int):
            return TowerElement(self.level, self.a * other, self.b * other, self.gens)
        return _mul(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, int):
            return TowerElement(self.level, self.a / other, self.b / other, self.gens)
        return _div(self, other)

    def __rtruediv__(self, other):
        return _inv(self) * other

    def __pow__(self, n: int):
        if n < 0:
            return _inv(self) ** (-n)
        if n == 0:
            raise ValueError("zeroth power needs a precision; build 1 in the field instead")
        result = None
        base = self
        while True:
            if n & 1:
                result = base if result is None else _mul(result, base)
            n >>= 1
            if not n:
                return result
            base = _sqr(base)


# -- raw arithmetic on DyadicNumber / TowerElement -------------------------

def _add(x, y):
    lx = x.level
    ly = y.level
    if lx == ly:
        if lx == 0:
            return _dadd(x, y)
        return TowerElement(lx, _add(x.a, y.a), _add(x.b, y.b), x.gens)
    if lx > ly:
        return TowerElement(lx, _add(x.a, y), x.b, x.gens)
    return TowerElement(ly, _add(x, y.a), y.b, y.gens)


def _neg(x):
    if x.level == 0:
        return -x
    return TowerElement(x.level, _neg(x.a), _neg(x.b), x.gens)


def _mul(x, y):
    lx = x.level
    ly = y.level
    if lx == ly:
        if lx == 0:
            return _dmul(x, y)
        u = x.gens.radicands[lx - 1]
        a1, b1, a2, b2 = x.a, x.b, y.a, y.b
        return TowerElement(
            lx,
            _add(_mul(a1, a2), _mul(_mul(b1, b2), u)),
            _add(_mul(a1, b2), _mul(b1, a2)),
            x.gens,
        )
    if lx > ly:
        return TowerElement(lx, _mul(x.a, y), _mul(x.b, y), x.gens)
    return TowerElement(ly, _mul(x, y.a), _mul(x, y.b), y.gens)


def _sqr(x):
    lx = x.level
    if lx == 0:
        return _dmul(x, x)
    a, b = x.a, x.b
    u = x.gens.radicands[lx - 1]
    ab = _mul(a, b)
    return TowerElement(lx, _add(_sqr(a), _mul(_sqr(b), u)), _add(ab, ab), x.gens)


def _norm(x):
    """Norm from level ``x.level`` down to the level below."""
    u = x.gens.radicands[x.level - 1]
    return _add(_sqr(x.a), _neg(_mul(_sqr(x.b), u)))


def _inv(x):
    if x.level == 0:
        return 1 / x
    n_inv = _inv(_norm(x))
    return TowerElement(x.level, _mul(x.a, n_inv), _neg(_mul(x.b, n_inv)), x.gens)


def _div(x, y):
    if y.level == 0:
        return _div_scalar(x, y)
    return _mul(x, _inv(y))


def _div_scalar(x, d: DyadicNumber):
    if x.level == 0:
        return x / d
    return TowerElement(x.level, _div_scalar(x.a, d), _div_scalar(x.b, d), x.gens)


def _val_num(x):
    """``v(x) * 2**x.level`` as an integer (``inf`` for the exact zero)."""
    if x.level == 0:
        v = x.valuation
        if v == INF and x.precision != INF:
            raise PrecisionExhausted("valuation of a zero to precision")
        return v
    n = _norm(x)
    k = _val_num(n)
    if k == INF:
        return k
    return k << (x.level - 1 - n.level)


def _lower_bound(x) -> Fraction:
    """A guaranteed lower bound for ``v(x)``, valid even for zeros to precision."""
    if x.level == 0:
        if x.valuation == INF:
            return x.precision
        return x.valuation
    rv = x.gens.root_valuations[x.level - 1]
    return min(_lower_bound(x.a), _lower_bound(x.b) + rv)


def is_zero_to(x, bound) -> bool:
    """Whether ``x`` is certainly divisible by ``2**bound`` (2-adic units)."""
    return _lower_bound(x) >= bound


# -- fields ------------------------------------------------------------------

class TowerField:
    """A tower of nontrivial quadratic extensions of Q_2 with tracked invariants.

    ``e`` and ``f`` are the ramification index and residue degree over Q_2,
    ``uniformizer`` has valuation ``1/e`` and ``residue_reps`` lists
    representatives of the residue field, zero first.
    """

    def __init__(self, gens, e, f, uniformizer, residue_reps, precision, kinds=()):
        self.gens = gens
        self.e = e
        self.f = f
        self.uniformizer = uniformizer
        self.residue_reps = residue_reps
        self.precision = precision
        self.kinds = tuple(kinds)
        self._pi_powers = [None, uniformizer]

    @classmethod
    def base(cls, precision: int) -> TowerField:
        """Q_2 itself, with uniformizer 2 and residue field F_2."""
        zero = DyadicNumber.zero()
        one = DyadicNumber.from_int(1, precision)
        two = DyadicNumber.from_int(2, precision + 1)
        return cls(_Generators((), ()), 1, 1, two, (zero, one), precision)

    @property
    def level(self) -> int:
        return len(self.gens.radicands)

    @property
    def degree(self) -> int:
        return self.e * self.f

    def __repr__(self) -> str:
        return f"TowerField(level={self.level}, e={self.e}, f={self.f}, kinds={[k.value for k in self.kinds]})"

    def __call__(self, x):
        """Coerce an int (or an element) into the field."""
        if isinstance(x, int):
            return DyadicNumber.from_int(x, self.precision)
        return x

    def generator(self):
        """The square root adjoined at the top step."""
        L = self.level
        if L == 0:
            raise ValueError("Q_2 has no adjoined generator")
        return TowerElement(
            L, DyadicNumber.zero_to(self.precision), DyadicNumber.from_int(1, self.precision), self.gens
        )

    def pi_power(self, k: int):
        pows = self._pi_powers
        while len(pows) <= k:
            pows.append(_mul(pows[-1], self.uniformizer))
        return pows[k]

    def scale_of(self, k: int):
        """An element of valuation exactly ``k/e`` built from 2 and the uniformizer.

        Returns ``None`` for ``k == 0`` (the scale is 1).
        """
        if k == 0:
            return None
        q, r = divmod(k, self.e)
        two_q = DyadicNumber(q, 1, self.precision + max(q, 0) + 1)
        if r == 0:
            return two_q
        return _mul(self.pi_power(r), two_q)

    # -- valuations -----------------------------------------------------

    def valuation(self, x) -> Fraction:
        """``v(x)`` with ``v(2) = 1``; ``inf`` for the exact zero."""
        x = self(x)
        k = _val_num(x)
        if k == INF:
            return INF
        return Fraction(k, 1 << x.level)

    def vpi(self, x) -> int:
        """Valuation in units of the uniformizer, ``e * v(x)``."""
        k = _val_num(x)
        if k == INF:
            return INF
        num = k * self.e
        den = 1 << x.level
        if num % den:
            raise ArithmeticError("element valuation outside the value group")
        return num // den

    def vpi_capped(self, x, cap: int) -> int:
        try:
            return min(self.vpi(x), cap)
        except PrecisionExhausted:
            if _lower_bound(x) * self.e >= cap:
                return cap
            raise

    # -- squares ----------------------------------------------------------

    def _best_square_approximation(self, u):
        """Maximize ``min(vpi(w**2 - u), 2e + 1)`` over units ``w``.

        ``u`` must be a unit.  The value only depends on ``w`` modulo
        ``pi**(e+1)``; a branch at depth ``j`` whose value falls below
        ``min(e + j, 2j)`` is final, so the search prunes there.
        """
        e = self.e
        cap = 2 * e + 1
        reps = self.residue_reps
        best_d, best_w = -1, None
        stack = [(r, 1) for r in reversed(reps[1:])]
        while stack:
            w, j = stack.pop()
            d = self.vpi_capped(_add(_sqr(w), _neg(u)), cap)
            if d > best_d:
                best_d, best_w = d, w
                if d >= cap:
                    break
            if d >= min(e + j, 2 * j) and j <= e:
                pj = self.pi_power(j)
                for r in reversed(reps):
                    if r.level == 0 and r.is_exact_zero:
                        stack.append((w, j + 1))
                    else:
                        stack.append((_add(w, _mul(r, pj)), j + 1))
        return best_d, best_w

    def _hensel_sqrt(self, u, w):
        """Newton-lift ``w`` (with ``vpi(w**2 - u) > 2e``) to a root of ``u``."""
        last = -1
        for _ in range(200):
            diff = _add(_sqr(w), _neg(u))
            try:
                d = self.vpi(diff)
            except PrecisionExhausted:
                return w
            if d == INF or d <= last:
                return w
            last = d
            w = _add(w, _neg(_div(diff, _mul(w, self(2)))))
        return w

    def _unit_part(self, u):
        """Split ``u = s**2 * u1`` with ``u1`` a unit; returns ``(vpi(u), s, u1)``.

        For odd ``vpi(u)`` only the valuation is meaningful.
        """
        vu = self.vpi(u)
        if vu == INF:
            raise ValueError("cannot take square roots of zero here")
        if vu % 2:
            return vu, None, None
        s = self.scale_of(vu // 2)
        if s is None:
            return vu, None, u
        return vu, s, _div(u, _sqr(s))

    def is_square(self, u):
        """A square root of ``u`` in this field, or ``None``."""
        u = self(u)
        vu, s, u1 = self._unit_part(u)
        if vu % 2:
            return None
        d, w = self._best_square_approximation(u1)
        if d < 2 * self.e + 1:
            return None
        root = self._hensel_sqrt(u1, w)
        return root if s is None else _mul(root, s)

    def extend_by_sqrt(self, u):
        """Adjoin ``sqrt(u)``.

        Returns ``(field, kind, root)``: for a trivial step the field is
        ``self`` and ``root`` is the square root found in it; otherwise the
        field is one level higher and ``root`` is its generator.
        """
        u = self(u)
        vu, s, u1 = self._unit_part(u)
        e = self.e
        if vu % 2:
            gens = self.gens.extended(u, Fraction(vu, 2 * e))
            g = self._generator_for(gens)
            unif = _div_by_scale(g, self.scale_of((vu - 1) // 2))
            field = TowerField(
                gens, 2 * e, self.f, unif, self.residue_reps, self.precision,
                self.kinds + (StepKind.RAMIFIED,),
            )
            return field, StepKind.RAMIFIED, g

        d, w = self._best_square_approximation(u1)
        if d >= 2 * e + 1:
            root = self._hensel_sqrt(u1, w)
            return self, StepKind.TRIVIAL, (root if s is None else _mul(root, s))

        gens = self.gens.extended(u, Fraction(vu, 2 * e))
        g = self._generator_for(gens)
        sq = g if s is None else _div(g, s)  # sqrt(u1) inside the new field
        if d == 2 * e:
            if self.f >= 2:
                raise ResidueDegreeOverflow(
                    f"unramified step over a field with residue degree {self.f}"
                )
            # sqrt(u1) = w (1 + 2y) with y a unit whose residue generates F_4
            y = _div_scalar(_add(_div(sq, w), DyadicNumber.from_int(-1, self.precision)), self(2))
            one = self.residue_reps[1]
            reps = (self.residue_reps[0], one, y, _add(y, one))
            field = TowerField(
                gens, e, 2 * self.f, self.uniformizer, reps, self.precision,
                self.kinds + (StepKind.UNRAMIFIED,),
            )
            return field, StepKind.UNRAMIFIED, g
        if d % 2 == 0:
            raise ArithmeticError(f"even defect {d} below 2e = {2 * e}: search incomplete")
        # v(sqrt(u1) - w) = d/2 in units of the old uniformizer
        num = _add(sq, _neg(w))
        unif = _div_by_scale(num, self.scale_of((d - 1) // 2))
        field = TowerField(
            gens, 2 * e, self.f, unif, self.residue_reps, self.precision,
            self.kinds + (StepKind.RAMIFIED,),
        )
        return field, StepKind.RAMIFIED, g

    def _generator_for(self, gens):
        L = len(gens.radicands)
        return TowerElement(
            L, DyadicNumber.zero_to(self.precision), DyadicNumber.from_int(1, self.precision), gens
        )


def _div_by_scale(x, scale):
    return x if scale is None else _div(x, scale)


def is_square_in_field(field: TowerField, u):
    """Square root of ``u`` in ``field`` or ``None``."""
    return field.is_square(u)


def extend_by_sqrt(field: TowerField, u):
    """Adjoin ``sqrt(u)``; returns ``(field, kind)``."""
    new, kind, _ = field.extend_by_sqrt(u)
    return new, kind


def element_valuation(field: TowerField, x) -> Fraction:
    return field.valuation(x)
