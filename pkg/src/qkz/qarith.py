"""Exact scalar arithmetic in the deformation parameter q.

Three exact scalar domains, sharing operator overloads so that generic code
(polynomials, linear algebra) can stay agnostic:

* :class:`LaurentQ` -- Laurent polynomials in q with rational coefficients.
* :class:`RationalQ` -- the fraction field of LaurentQ, kept in a canonical
  reduced form so equality is structural.
* :class:`CycloQ` -- elements of the cyclotomic field obtained by sending q
  to a specific root of unity (see :func:`cyclo_field`).

Values are immutable; all operations return new objects.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Union

__all__ = [
    "LaurentQ",
    "RationalQ",
    "CycloField",
    "CycloQ",
    "QNumber",
    "q_int",
    "q_factorial",
    "q_binomial",
    "laurent_gcd",
    "cyclo_field",
]


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


class LaurentQ:
    """A Laurent polynomial in q over the rationals.

    Internally a map exponent -> nonzero Fraction.  Supports ring
    arithmetic, exact division, substitution of a numeric value for q, and
    a canonical text / JSON form.

    >>> str(q_int(2))
    'q^-1 + q'
    >>> q_int(2) * q_int(2) - q_int(3) == LaurentQ.one()
    True
    """

    __slots__ = ("_c", "_hash")

    def __init__(self, coeffs: dict[int, Fraction] | None = None):
        c = {}
        if coeffs:
            for e, v in coeffs.items():
                v = _as_fraction(v)
                if v:
                    c[int(e)] = v
        self._c = c
        self._hash = None

    # -- constructors ---------------------------------------------------

    @staticmethod
    def zero() -> "LaurentQ":
        return _LQ_ZERO

    @staticmethod
    def one() -> "LaurentQ":
        return _LQ_ONE

    @staticmethod
    def const(v) -> "LaurentQ":
        return LaurentQ({0: _as_fraction(v)})

    @staticmethod
    def monomial(exp: int, coeff=1) -> "LaurentQ":
        return LaurentQ({exp: _as_fraction(coeff)})

    @staticmethod
    def q_power(exp: int) -> "LaurentQ":
        return LaurentQ({exp: Fraction(1)})

    # -- inspection -----------------------------------------------------

    def items(self) -> Iterable[tuple[int, Fraction]]:
        return sorted(self._c.items())

    def coeff(self, exp: int) -> Fraction:
        return self._c.get(exp, Fraction(0))

    @property
    def min_exp(self) -> int:
        if not self._c:
            raise ValueError("zero has no exponent range")
        return min(self._c)

    @property
    def max_exp(self) -> int:
        if not self._c:
            raise ValueError("zero has no exponent range")
        return max(self._c)

    def is_monomial(self) -> bool:
        return len(self._c) == 1

    def as_constant(self) -> Fraction:
        """The value as a plain rational; raises if q actually appears."""
        if not self._c:
            return Fraction(0)
        if set(self._c) == {0}:
            return self._c[0]
        raise ValueError(f"{self} is not constant in q")

    def __bool__(self) -> bool:
        return bool(self._c)

    def __len__(self) -> int:
        return len(self._c)

    # -- arithmetic -----------------------------------------------------

    def __add__(self, other):
        other = _coerce_laurent(other)
        if other is NotImplemented:
            return NotImplemented
        if not other._c:
            return self
        if not self._c:
            return other
        c = dict(self._c)
        for e, v in other._c.items():
            w = c.get(e)
            if w is None:
                c[e] = v
            else:
                w = w + v
                if w:
                    c[e] = w
                else:
                    del c[e]
        out = LaurentQ.__new__(LaurentQ)
        out._c = c
        out._hash = None
        return out

    __radd__ = __add__

    def __neg__(self):
        out = LaurentQ.__new__(LaurentQ)
        out._c = {e: -v for e, v in self._c.items()}
        out._hash = None
        return out

    def __sub__(self, other):
        other = _coerce_laurent(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce_laurent(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = _coerce_laurent(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self._c, other._c
        if not a or not b:
            return _LQ_ZERO
        if len(a) > len(b):
            a, b = b, a
        if len(a) == 1:
            ((e1, v1),) = a.items()
            out = LaurentQ.__new__(LaurentQ)
            if v1 == 1:
                out._c = {e2 + e1: v2 for e2, v2 in b.items()}
            elif v1 == -1:
                out._c = {e2 + e1: -v2 for e2, v2 in b.items()}
            else:
                out._c = {e2 + e1: v2 * v1 for e2, v2 in b.items()}
            out._hash = None
            return out
        c: dict[int, Fraction] = {}
        for e1, v1 in a.items():
            for e2, v2 in b.items():
                e = e1 + e2
                w = c.get(e)
                if w is None:
                    c[e] = v1 * v2
                else:
                    w = w + v1 * v2
                    if w:
                        c[e] = w
                    else:
                        del c[e]
        out = LaurentQ.__new__(LaurentQ)
        out._c = c
        out._hash = None
        return out

    __rmul__ = __mul__

    def shift(self, d: int) -> "LaurentQ":
        """Multiply by q^d (exponent shift)."""
        if d == 0:
            return self
        out = LaurentQ.__new__(LaurentQ)
        out._c = {e + d: v for e, v in self._c.items()}
        out._hash = None
        return out

    def scale(self, v) -> "LaurentQ":
        v = _as_fraction(v)
        if not v:
            return _LQ_ZERO
        if v == 1:
            return self
        out = LaurentQ.__new__(LaurentQ)
        out._c = {e: w * v for e, w in self._c.items()}
        out._hash = None
        return out

    def __pow__(self, n: int):
        if n < 0:
            if self.is_monomial():
                ((e, v),) = self._c.items()
                return LaurentQ({e * n: v**n})
            raise ValueError("negative powers only defined for monomials")
        out = _LQ_ONE
        base = self
        while n:
            if n & 1:
                out = out * base
            n >>= 1
            if n:
                base = base * base
        return out

    def bar(self) -> "LaurentQ":
        """The involution q -> q^-1."""
        out = LaurentQ.__new__(LaurentQ)
        out._c = {-e: v for e, v in self._c.items()}
        out._hash = None
        return out

    def divide_exact(self, other: "LaurentQ") -> "LaurentQ":
        """Exact division; raises ValueError when the remainder is nonzero."""
        other = _coerce_laurent(other)
        if not other._c:
            raise ZeroDivisionError("division by zero LaurentQ")
        if not self._c:
            return _LQ_ZERO
        if other.is_monomial():
            ((e, v),) = other._c.items()
            return self.shift(-e).scale(Fraction(1) / v)
        # shift to ordinary polynomials so long division terminates
        sa, sb = self.min_exp, other.min_exp
        rem = {e - sa: v for e, v in self._c.items()}
        div = {e - sb: v for e, v in other._c.items()}
        top, topv = max(div), div[max(div)]
        quot: dict[int, Fraction] = {}
        while rem and max(rem) >= top:
            e = max(rem)
            d = e - top
            cv = rem[e] / topv
            quot[d] = cv
            for oe, ov in div.items():
                t = oe + d
                w = rem.get(t, Fraction(0)) - cv * ov
                if w:
                    rem[t] = w
                else:
                    rem.pop(t, None)
        if rem:
            raise ValueError("non-exact LaurentQ division")
        return LaurentQ(quot).shift(sa - sb)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(Fraction(1) / _as_fraction(other))
        if isinstance(other, LaurentQ):
            return RationalQ(self, other)
        return NotImplemented

    # -- evaluation / conversion ----------------------------------------

    def eval_complex(self, q: complex) -> complex:
        return sum(complex(v) * q**e for e, v in self._c.items())

    def eval_fraction(self, q: Fraction) -> Fraction:
        return sum((v * q**e for e, v in self._c.items()), Fraction(0))

    # -- canonical forms -------------------------------------------------

    def __eq__(self, other):
        other = _coerce_laurent(other)
        if other is NotImplemented:
            return NotImplemented
        return self._c == other._c

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._c.items()))
        return self._hash

    def __str__(self) -> str:
        return render_terms(self.items(), "q")

    def __repr__(self) -> str:
        return f"LaurentQ({self})"

    def to_json(self) -> list[list[int]]:
        return [[e, v.numerator, v.denominator] for e, v in self.items()]

    @staticmethod
    def from_json(data) -> "LaurentQ":
        return LaurentQ({int(e): Fraction(int(n), int(d)) for e, n, d in data})


_LQ_ZERO = LaurentQ()
_LQ_ONE = LaurentQ({0: Fraction(1)})


def _coerce_laurent(x):
    if isinstance(x, LaurentQ):
        return x
    if isinstance(x, (int, Fraction)):
        return LaurentQ.const(x)
    return NotImplemented


def render_terms(items, sym: str) -> str:
    """Canonical text form `c*sym^e + ...`, exponents ascending."""
    parts = []
    for e, v in items:
        if not v:
            continue
        if e == 0:
            body = str(v)
        else:
            p = sym if e == 1 else f"{sym}^{e}"
            if v == 1:
                body = p
            elif v == -1:
                body = f"-{p}"
            else:
                body = f"{v}*{p}"
        parts.append(body)
    if not parts:
        return "0"
    out = parts[0]
    for p in parts[1:]:
        out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
    return out


# ---------------------------------------------------------------------------
# integer polynomial helpers (dense lists, constant term first) used for the
# canonical reduction of RationalQ and for cyclotomic moduli


def _ipoly_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _ipoly_content(a: list[int]) -> int:
    g = 0
    for v in a:
        g = gcd(g, abs(v))
    return g or 1


def _ipoly_mul_scalar(a: list[int], s: int) -> list[int]:
    return [v * s for v in a]


def _ipoly_div_scalar(a: list[int], s: int) -> list[int]:
    return [v // s for v in a]


def _ipoly_pseudo_rem(a: list[int], b: list[int]) -> list[int]:
    """Pseudo-remainder of a by b (b nonzero), dense int lists."""
    a = a[:]
    db, lb = len(b) - 1, b[-1]
    while len(a) - 1 >= db and a:
        da = len(a) - 1
        co = a[-1]
        a = _ipoly_mul_scalar(a, lb)
        shift = da - db
        for i, v in enumerate(b):
            a[i + shift] -= co * v
        a = _ipoly_trim(a)
    return a


def _ipoly_gcd(a: list[int], b: list[int]) -> list[int]:
    """Primitive gcd via the primitive Euclidean remainder sequence."""
    a, b = _ipoly_trim(a[:]), _ipoly_trim(b[:])
    if not a:
        g = b
    elif not b:
        g = a
    else:
        a = _ipoly_div_scalar(a, _ipoly_content(a))
        b = _ipoly_div_scalar(b, _ipoly_content(b))
        while b:
            r = _ipoly_pseudo_rem(a, b)
            if r:
                r = _ipoly_div_scalar(r, _ipoly_content(r))
            a, b = b, r
        g = a
    g = g[:]
    if g and g[-1] < 0:
        g = _ipoly_mul_scalar(g, -1)
    return g


def _ipoly_div_exact(a: list[int], b: list[int]) -> list[int]:
    """Exact division of integer polynomials (raises if not exact)."""
    a = _ipoly_trim(a[:])
    b = _ipoly_trim(b[:])
    if not b:
        raise ZeroDivisionError
    if not a:
        return []
    q = [0] * (len(a) - len(b) + 1)
    while a:
        da, db = len(a) - 1, len(b) - 1
        if da < db or a[-1] % b[-1]:
            raise ValueError("non-exact integer polynomial division")
        c = a[-1] // b[-1]
        q[da - db] = c
        for i, v in enumerate(b):
            a[i + da - db] -= c * v
        a = _ipoly_trim(a)
    return q


def _laurent_to_ipoly(x: LaurentQ) -> tuple[list[int], int, Fraction]:
    """Write x = scale * q^shift * (primitive integer poly, constant term != 0)."""
    if not x:
        return [], 0, Fraction(0)
    sh = x.min_exp
    den_lcm = 1
    for _, v in x.items():
        den_lcm = den_lcm * v.denominator // gcd(den_lcm, v.denominator)
    coeffs = [0] * (x.max_exp - sh + 1)
    for e, v in x.items():
        coeffs[e - sh] = int(v * den_lcm)
    cont = _ipoly_content(coeffs)
    if coeffs[-1] < 0:
        cont = -cont
    coeffs = _ipoly_div_scalar(coeffs, cont)
    return coeffs, sh, Fraction(cont, den_lcm)


def _ipoly_to_laurent(a: list[int], shift: int = 0) -> LaurentQ:
    return LaurentQ({i + shift: Fraction(v) for i, v in enumerate(a) if v})


class RationalQ:
    """A ratio of Laurent polynomials in q, reduced to a canonical form.

    The denominator is a primitive integer polynomial with nonzero, positive
    constant term; common factors (over Q) are removed, so `==` is
    structural equality.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, _reduced=False):
        num = _coerce_laurent(num)
        den = _LQ_ONE if den is None else _coerce_laurent(den)
        if num is NotImplemented or den is NotImplemented:
            raise TypeError("RationalQ expects LaurentQ-coercible arguments")
        if not den:
            raise ZeroDivisionError("zero denominator in RationalQ")
        if _reduced:
            self.num, self.den = num, den
            return
        if not num:
            self.num, self.den = _LQ_ZERO, _LQ_ONE
            return
        if den.is_monomial():
            ((e, v),) = den._c.items()
            self.num = num.shift(-e).scale(Fraction(1) / v)
            self.den = _LQ_ONE
            return
        np_, ns, nsc = _laurent_to_ipoly(num)
        dp_, ds, dsc = _laurent_to_ipoly(den)
        g = _ipoly_gcd(np_, dp_)
        if len(g) > 1:
            np_ = _ipoly_div_exact(np_, g)
            dp_ = _ipoly_div_exact(dp_, g)
        if dp_[0] < 0:
            dp_ = _ipoly_mul_scalar(dp_, -1)
            np_ = _ipoly_mul_scalar(np_, -1)
        # positive constant term guaranteed: dp_[0] != 0 by the shift split
        self.num = _ipoly_to_laurent(np_, ns - ds).scale(nsc / dsc)
        self.den = _ipoly_to_laurent(dp_)

    # -- constructors ----------------------------------------------------

    @staticmethod
    def zero() -> "RationalQ":
        return RationalQ(_LQ_ZERO, _LQ_ONE, _reduced=True)

    @staticmethod
    def one() -> "RationalQ":
        return RationalQ(_LQ_ONE, _LQ_ONE, _reduced=True)

    # -- inspection -------------------------------------------------------

    def __bool__(self):
        return bool(self.num)

    def is_laurent(self) -> bool:
        return self.den == _LQ_ONE

    def to_laurent(self) -> LaurentQ:
        if self.den == _LQ_ONE:
            return self.num
        return self.num.divide_exact(self.den)

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        other = _coerce_rational(other)
        if other is NotImplemented:
            return NotImplemented
        if self.den == other.den:
            return RationalQ(self.num + other.num, self.den)
        return RationalQ(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalQ(-self.num, self.den, _reduced=True)

    def __sub__(self, other):
        other = _coerce_rational(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce_rational(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = _coerce_rational(other)
        if other is NotImplemented:
            return NotImplemented
        return RationalQ(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce_rational(other)
        if other is NotImplemented:
            return NotImplemented
        if not other.num:
            raise ZeroDivisionError("division by zero RationalQ")
        return RationalQ(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        other = _coerce_rational(other)
        if other is NotImplemented:
            return NotImplemented
        return other / self

    def inv(self) -> "RationalQ":
        return RationalQ.one() / self

    def __pow__(self, n: int):
        out = RationalQ.one()
        base = self if n >= 0 else self.inv()
        for _ in range(abs(n)):
            out = out * base
        return out

    # -- evaluation / canonical forms --------------------------------------

    def eval_complex(self, q: complex) -> complex:
        return self.num.eval_complex(q) / self.den.eval_complex(q)

    def eval_fraction(self, q: Fraction) -> Fraction:
        return self.num.eval_fraction(q) / self.den.eval_fraction(q)

    def __eq__(self, other):
        other = _coerce_rational(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __str__(self):
        if self.den == _LQ_ONE:
            return str(self.num)
        return f"({self.num}) / ({self.den})"

    def __repr__(self):
        return f"RationalQ({self})"


def _coerce_rational(x):
    if isinstance(x, RationalQ):
        return x
    if isinstance(x, (int, Fraction, LaurentQ)):
        return RationalQ(_coerce_laurent(x), _LQ_ONE, _reduced=True)
    return NotImplemented


def laurent_gcd(a: LaurentQ, b: LaurentQ) -> LaurentQ:
    """Monic-free gcd: primitive integer polynomial in q, ignoring q-units.

    The result has minimum exponent 0 and positive constant term, matching
    the canonical denominator form of RationalQ, so lcm-style bookkeeping
    of denominators stays exact.
    """
    if not a:
        return b
    if not b:
        return a
    pa, _, _ = _laurent_to_ipoly(a)
    pb, _, _ = _laurent_to_ipoly(b)
    g = _ipoly_gcd(pa, pb)
    if g[0] < 0:
        g = _ipoly_mul_scalar(g, -1)
    return _ipoly_to_laurent(g)


# ---------------------------------------------------------------------------
# cyclotomic specialization


def _cyclotomic_ipoly(m: int) -> list[int]:
    """The m-th cyclotomic polynomial as a dense integer list."""
    # x^m - 1 divided by the cyclotomic polynomials of the proper divisors
    num = [0] * (m + 1)
    num[0], num[m] = -1, 1
    for d in range(1, m):
        if m % d == 0:
            num = _ipoly_div_exact(num, _cyclotomic_ipoly(d))
    return num


@dataclass(frozen=True)
class CycloField:
    """The field Q(q0) with q0 = -exp(-i*pi/(level+2)).

    q0 is a primitive root of unity of order `order`; `modulus` is its
    minimal polynomial over Q (a cyclotomic polynomial), stored as a dense
    integer coefficient tuple, constant term first.
    """

    level: int
    order: int
    modulus: tuple[int, ...]

    @property
    def degree(self) -> int:
        return len(self.modulus) - 1

    def q0_complex(self) -> complex:
        import math

        return -cmath.exp(complex(0.0, -math.pi / (self.level + 2)))

    # -- element constructors ---------------------------------------------

    def zero(self) -> "CycloQ":
        return CycloQ(self, (Fraction(0),) * self.degree)

    def one(self) -> "CycloQ":
        v = [Fraction(0)] * self.degree
        v[0] = Fraction(1)
        return CycloQ(self, tuple(v))

    def const(self, c) -> "CycloQ":
        v = [Fraction(0)] * self.degree
        v[0] = _as_fraction(c)
        return CycloQ(self, tuple(v))

    def q_power(self, e: int) -> "CycloQ":
        """The image of q^e, i.e. q0^(e mod order)."""
        return CycloQ(self, self._power_basis()[e % self.order])

    def from_laurent(self, x: LaurentQ) -> "CycloQ":
        pw = self._power_basis()
        acc = [Fraction(0)] * self.degree
        for e, v in x._c.items():
            row = pw[e % self.order]
            for i, r in enumerate(row):
                if r:
                    acc[i] += v * r
        return CycloQ(self, tuple(acc))

    def from_rational(self, x: RationalQ) -> "CycloQ":
        den = self.from_laurent(x.den)
        if not den:
            raise ZeroDivisionError(
                f"denominator {x.den} vanishes at the root of unity of order {self.order}"
            )
        return self.from_laurent(x.num) / den

    def _power_basis(self) -> list[tuple[Fraction, ...]]:
        cache = _CYCLO_POWER_CACHE.get(self.modulus)
        if cache is not None:
            return cache
        d = self.degree
        rows: list[tuple[Fraction, ...]] = []
        cur = [Fraction(0)] * d
        cur[0] = Fraction(1)
        for _ in range(self.order):
            rows.append(tuple(cur))
            # multiply by x modulo the modulus
            nxt = [Fraction(0)] * (d + 1)
            for i, v in enumerate(cur):
                nxt[i + 1] = v
            top = nxt[d]
            if top:
                for i in range(d):
                    nxt[i] -= top * self.modulus[i]
            cur = nxt[:d]
        _CYCLO_POWER_CACHE[self.modulus] = rows
        return rows


_CYCLO_POWER_CACHE: dict[tuple[int, ...], list[tuple[Fraction, ...]]] = {}
_CYCLO_FIELD_CACHE: dict[int, CycloField] = {}


def cyclo_field(level: int) -> CycloField:
    """The cyclotomic field for q0 = -exp(-i*pi/(level+2)).

    The order of q0 is level+2 for odd level and 2(level+2) for even level;
    the modulus is the factor of x^(2(level+2)) - 1 (a cyclotomic
    polynomial) that vanishes at q0, confirmed numerically.
    """
    if level < 1:
        raise ValueError("level must be a positive integer")
    cached = _CYCLO_FIELD_CACHE.get(level)
    if cached is not None:
        return cached
    order = (level + 2) if level % 2 else 2 * (level + 2)
    modulus = _cyclotomic_ipoly(order)
    field = CycloField(level=level, order=order, modulus=tuple(modulus))
    q0 = field.q0_complex()
    val = sum(c * q0**i for i, c in enumerate(modulus))
    if abs(val) > 1e-9:
        raise AssertionError(
            f"cyclotomic modulus of order {order} does not vanish at q0={q0}"
        )
    _CYCLO_FIELD_CACHE[level] = field
    return field


class CycloQ:
    """An element of a CycloField, as coordinates in the power basis of q0."""

    __slots__ = ("field", "vec")

    def __init__(self, field: CycloField, vec: tuple[Fraction, ...]):
        if len(vec) != field.degree:
            raise ValueError("coordinate vector has wrong length")
        self.field = field
        self.vec = vec

    def __bool__(self):
        return any(self.vec)

    def _check(self, other) -> "CycloQ":
        if isinstance(other, CycloQ):
            if other.field.modulus != self.field.modulus:
                raise ValueError("mixing elements of different cyclotomic fields")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.const(other)
        if isinstance(other, LaurentQ):
            return self.field.from_laurent(other)
        return NotImplemented

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return NotImplemented
        return CycloQ(self.field, tuple(a + b for a, b in zip(self.vec, other.vec)))

    __radd__ = __add__

    def __neg__(self):
        return CycloQ(self.field, tuple(-a for a in self.vec))

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return NotImplemented
        d = self.field.degree
        conv = [Fraction(0)] * (2 * d - 1)
        for i, a in enumerate(self.vec):
            if not a:
                continue
            for j, b in enumerate(other.vec):
                if b:
                    conv[i + j] += a * b
        mod = self.field.modulus
        for k in range(2 * d - 2, d - 1, -1):
            c = conv[k]
            if c:
                conv[k] = Fraction(0)
                for i in range(d):
                    conv[k - d + i] -= c * mod[i]
        return CycloQ(self.field, tuple(conv[:d]))

    __rmul__ = __mul__

    def inv(self) -> "CycloQ":
        """Multiplicative inverse via the extended Euclidean algorithm."""
        if not self:
            raise ZeroDivisionError("inverse of zero in cyclotomic field")
        mod = [Fraction(c) for c in self.field.modulus]
        a = list(self.vec)
        # extended gcd of a and mod in Q[x]
        r0, r1 = mod, _qpoly_trim(a)
        t0, t1 = [], [Fraction(1)]
        while True:
            if len(r1) == 1:
                inv_c = Fraction(1) / r1[0]
                res = [c * inv_c for c in t1]
                res += [Fraction(0)] * (self.field.degree - len(res))
                return CycloQ(self.field, tuple(res[: self.field.degree]))
            q, r = _qpoly_divmod(r0, r1)
            r0, r1 = r1, r
            t0, t1 = t1, _qpoly_sub(t0, _qpoly_mul(q, t1))
            if not r1:
                raise ZeroDivisionError("element not invertible (modulus not coprime)")

    def __truediv__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inv()

    def __rtruediv__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inv()

    def __pow__(self, n: int):
        base = self if n >= 0 else self.inv()
        out = self.field.one()
        for _ in range(abs(n)):
            out = out * base
        return out

    def eval_complex(self) -> complex:
        q0 = self.field.q0_complex()
        return sum(complex(v) * q0**i for i, v in enumerate(self.vec))

    def __eq__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return NotImplemented
        return self.vec == other.vec

    def __hash__(self):
        return hash((self.field.modulus, self.vec))

    def __str__(self):
        return render_terms(
            [(i, v) for i, v in enumerate(self.vec) if v], "q"
        )

    def __repr__(self):
        return f"CycloQ({self})"

    def to_json(self) -> list[list[int]]:
        return [
            [i, v.numerator, v.denominator] for i, v in enumerate(self.vec) if v
        ]

    @staticmethod
    def from_json(field: CycloField, data) -> "CycloQ":
        v = [Fraction(0)] * field.degree
        for i, n, d in data:
            v[int(i)] = Fraction(int(n), int(d))
        return CycloQ(field, tuple(v))


def _qpoly_trim(a: list[Fraction]) -> list[Fraction]:
    a = a[:]
    while a and not a[-1]:
        a.pop()
    return a


def _qpoly_sub(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    n = max(len(a), len(b))
    out = [(a[i] if i < len(a) else Fraction(0)) - (b[i] if i < len(b) else Fraction(0)) for i in range(n)]
    return _qpoly_trim(out)

def _qpoly_mul(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    return _qpoly_trim(out)


def _qpoly_divmod(a: list[Fraction], b: list[Fraction]):
    a = a[:]
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b) and a:
        c = a[-1] / b[-1]
        d = len(a) - len(b)
        q[d] = c
        for i, v in enumerate(b):
            a[i + d] -= c * v
        a = _qpoly_trim(a)
    return _qpoly_trim(q), a


# ---------------------------------------------------------------------------
# q-integers

QNumber = Union[int, Fraction, LaurentQ, RationalQ, CycloQ]


def q_int(n: int) -> LaurentQ:
    """The symmetric q-integer [n] = (q^n - q^-n)/(q - q^-1).

    >>> str(q_int(3))
    'q^-2 + 1 + q^2'
    >>> q_int(-2) == -q_int(2)
    True
    """
    if n < 0:
        return -q_int(-n)
    return LaurentQ({e: Fraction(1) for e in range(-(n - 1), n, 2)})


def q_factorial(n: int) -> LaurentQ:
    """[n]! = [1][2]...[n]; [0]! = 1."""
    if n < 0:
        raise ValueError("q-factorial of a negative integer")
    out = _LQ_ONE
    for i in range(2, n + 1):
        out = out * q_int(i)
    return out


def q_binomial(m: int, k: int) -> LaurentQ:
    """The symmetric q-binomial [m choose k], a Laurent polynomial.

    >>> str(q_binomial(4, 2))
    'q^-4 + q^-2 + 2 + q^2 + q^4'
    """
    if k < 0 or k > m:
        return _LQ_ZERO
    k = min(k, m - k)
    num = _LQ_ONE
    for i in range(1, k + 1):
        num = num * q_int(m - k + i)
    return num.divide_exact(q_factorial(k))
