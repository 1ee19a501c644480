"""Sparse multivariate Laurent polynomials over a pluggable coefficient domain.

Exponent vectors are integer tuples (negative entries allowed).  The
coefficient domain is described by a small :class:`Domain` object; concrete
domains wrap the exact scalar types from :mod:`qkz.qarith` or plain
rationals.  Coefficients must support ``+ - *`` and truthiness (zero is
falsy), which all the exact scalars do.
"""

from __future__ import annotations

import heapq
from fractions import Fraction
from typing import Callable, Iterable

from .qarith import CycloField, CycloQ, LaurentQ, RationalQ

__all__ = [
    "Domain",
    "FRACTION_DOMAIN",
    "LAURENT_DOMAIN",
    "RATIONAL_DOMAIN",
    "CycloDomain",
    "MPoly",
]


class Domain:
    """Coefficient domain descriptor: identity elements plus coercion."""

    name = "abstract"
    is_field = False

    def zero(self):
        raise NotImplementedError

    def one(self):
        raise NotImplementedError

    def coerce(self, x):
        raise NotImplementedError

    def div(self, a, b):
        """Field division (or exact division when meaningful)."""
        raise NotImplementedError

    def coeff_json(self, a):
        raise NotImplementedError


class _FractionDomain(Domain):
    name = "fraction"
    is_field = True

    def zero(self):
        return Fraction(0)

    def one(self):
        return Fraction(1)

    def coerce(self, x):
        if isinstance(x, Fraction):
            return x
        if isinstance(x, int):
            return Fraction(x)
        raise TypeError(f"cannot coerce {x!r} into Q")

    def div(self, a, b):
        return a / b

    def coeff_json(self, a):
        return [[0, a.numerator, a.denominator]] if a else []


class _LaurentDomain(Domain):
    name = "laurent"
    is_field = False

    def zero(self):
        return LaurentQ.zero()

    def one(self):
        return LaurentQ.one()

    def coerce(self, x):
        if isinstance(x, LaurentQ):
            return x
        if isinstance(x, (int, Fraction)):
            return LaurentQ.const(x)
        if isinstance(x, RationalQ):
            return x.to_laurent()
        raise TypeError(f"cannot coerce {x!r} into Q[q, q^-1]")

    def div(self, a, b):
        return a.divide_exact(b)

    def coeff_json(self, a):
        return a.to_json()


class _RationalDomain(Domain):
    name = "rational"
    is_field = True

    def zero(self):
        return RationalQ.zero()

    def one(self):
        return RationalQ.one()

    def coerce(self, x):
        if isinstance(x, RationalQ):
            return x
        if isinstance(x, (int, Fraction, LaurentQ)):
            return RationalQ(x)
        raise TypeError(f"cannot coerce {x!r} into Q(q)")

    def div(self, a, b):
        return a / b

    def coeff_json(self, a):
        return {"num": a.num.to_json(), "den": a.den.to_json()}


class CycloDomain(Domain):
    name = "cyclo"
    is_field = True

    def __init__(self, field: CycloField):
        self.field = field

    def zero(self):
        return self.field.zero()

    def one(self):
        return self.field.one()

    def coerce(self, x):
        if isinstance(x, CycloQ):
            if x.field.modulus != self.field.modulus:
                raise TypeError("element of a different cyclotomic field")
            return x
        if isinstance(x, (int, Fraction)):
            return self.field.const(x)
        if isinstance(x, LaurentQ):
            return self.field.from_laurent(x)
        if isinstance(x, RationalQ):
            return self.field.from_rational(x)
        raise TypeError(f"cannot coerce {x!r} into the cyclotomic field")

    def div(self, a, b):
        return a / b

    def coeff_json(self, a):
        return a.to_json()


FRACTION_DOMAIN = _FractionDomain()
LAURENT_DOMAIN = _LaurentDomain()
RATIONAL_DOMAIN = _RationalDomain()


class MPoly:
    """A sparse polynomial in `nvars` variables with integer exponents.

    >>> z0, z1 = MPoly.gens(2, LAURENT_DOMAIN)
    >>> p = (z0 - z1) * (z0 + z1)
    >>> p == z0 * z0 - z1 * z1
    True
    """

    __slots__ = ("nvars", "domain", "_c")

    def __init__(self, nvars: int, domain: Domain, coeffs: dict | None = None):
        self.nvars = nvars
        self.domain = domain
        self._c = coeffs if coeffs is not None else {}

    # -- constructors -----------------------------------------------------

    @staticmethod
    def zero(nvars: int, domain: Domain) -> "MPoly":
        return MPoly(nvars, domain, {})

    @staticmethod
    def const(nvars: int, domain: Domain, c) -> "MPoly":
        c = domain.coerce(c)
        if not c:
            return MPoly(nvars, domain, {})
        return MPoly(nvars, domain, {(0,) * nvars: c})

    @staticmethod
    def monomial(nvars: int, domain: Domain, exps: tuple[int, ...], coeff=1) -> "MPoly":
        coeff = domain.coerce(coeff)
        if not coeff:
            return MPoly(nvars, domain, {})
        return MPoly(nvars, domain, {tuple(exps): coeff})

    @staticmethod
    def gen(nvars: int, domain: Domain, i: int) -> "MPoly":
        e = [0] * nvars
        e[i] = 1
        return MPoly(nvars, domain, {tuple(e): domain.one()})

    @staticmethod
    def gens(nvars: int, domain: Domain) -> list["MPoly"]:
        return [MPoly.gen(nvars, domain, i) for i in range(nvars)]

    # -- inspection ---------------------------------------------------------

    def __bool__(self):
        return bool(self._c)

    def __len__(self):
        return len(self._c)

    def terms(self) -> list[tuple[tuple[int, ...], object]]:
        """Terms sorted by exponent vector (deterministic)."""
        return sorted(self._c.items())

    def coeff(self, exps: tuple[int, ...]):
        return self._c.get(tuple(exps), self.domain.zero())

    def total_degree(self) -> int:
        if not self._c:
            raise ValueError("zero polynomial has no degree")
        return max(sum(e) for e in self._c)

    def degrees(self) -> set[int]:
        return {sum(e) for e in self._c}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def min_exponents(self) -> tuple[int, ...]:
        """Componentwise minimum of all exponent vectors."""
        if not self._c:
            raise ValueError("zero polynomial")
        its = iter(self._c)
        out = list(next(its))
        for e in its:
            for i, v in enumerate(e):
                if v < out[i]:
                    out[i] = v
        return tuple(out)

    # -- ring operations ------------------------------------------------------

    def _compat(self, other) -> "MPoly":
        if isinstance(other, MPoly):
            if other.nvars != self.nvars:
                raise ValueError("mixing polynomials in different variable counts")
            return other
        try:
            return MPoly.const(self.nvars, self.domain, other)
        except TypeError:
            return NotImplemented

    def __add__(self, other):
        other = self._compat(other)
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
        return MPoly(self.nvars, self.domain, c)

    __radd__ = __add__

    def __neg__(self):
        return MPoly(self.nvars, self.domain, {e: -v for e, v in self._c.items()})

    def __sub__(self, other):
        other = self._compat(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._compat(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if not isinstance(other, MPoly):
            try:
                return self.scale(other)
            except TypeError:
                return NotImplemented
        other = self._compat(other)
        a, b = self._c, other._c
        if not a or not b:
            return MPoly(self.nvars, self.domain, {})
        if len(a) > len(b):
            a, b = b, a
        c: dict = {}
        for e1, v1 in a.items():
            for e2, v2 in b.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                w = c.get(e)
                if w is None:
                    c[e] = v1 * v2
                else:
                    w = w + v1 * v2
                    if w:
                        c[e] = w
                    else:
                        del c[e]
        return MPoly(self.nvars, self.domain, c)

    __rmul__ = __mul__

    def scale(self, coeff) -> "MPoly":
        coeff = self.domain.coerce(coeff)
        if not coeff:
            return MPoly(self.nvars, self.domain, {})
        return MPoly(self.nvars, self.domain, {e: v * coeff for e, v in self._c.items()})

    def mul_monomial(self, exps: tuple[int, ...], coeff=None) -> "MPoly":
        c = {}
        for e, v in self._c.items():
            ne = tuple(x + y for x, y in zip(e, exps))
            c[ne] = v if coeff is None else v * coeff
        return MPoly(self.nvars, self.domain, c)

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        out = MPoly.const(self.nvars, self.domain, 1)
        base = self
        while n:
            if n & 1:
                out = out * base
            n >>= 1
            if n:
                base = base * base
        return out

    def __eq__(self, other):
        other = self._compat(other)
        if other is NotImplemented:
            return NotImplemented
        return self._c == other._c

    def __hash__(self):
        return hash(frozenset((e, hash(v)) for e, v in self._c.items()))

    # -- structured division -----------------------------------------------

    def exact_div_binomial(self, e1: tuple[int, ...], c1, e2: tuple[int, ...], c2) -> "MPoly":
        """Exact division by (c1*z^e1 + c2*z^e2), e1 the lex-leading exponent.

        Uses synthetic division under the lexicographic order; raises
        ValueError if the division is not exact.
        """
        if not self._c:
            return self
        c1 = self.domain.coerce(c1)
        c2 = self.domain.coerce(c2)
        dom = self.domain
        inv_like: Callable = (lambda v: dom.div(v, c1))
        rem = dict(self._c)
        # exact quotients live in a finite exponent box: extreme coefficients
        # in each variable multiply without cancellation
        lo = [min(e[i] for e in rem) - min(e1[i], e2[i]) for i in range(self.nvars)]
        hi = [max(e[i] for e in rem) - max(e1[i], e2[i]) for i in range(self.nvars)]
        # lexicographic max via negated tuples in a min-heap, lazy deletion
        heap = [tuple(-x for x in e) for e in rem]
        heapq.heapify(heap)
        delta = tuple(y - x for x, y in zip(e1, e2))
        quot: dict = {}
        while rem:
            while heap:
                neg = heap[0]
                lead = tuple(-x for x in neg)
                if lead in rem:
                    break
                heapq.heappop(heap)
            if not heap:
                break
            lv = rem.pop(lead)
            qe = tuple(x - y for x, y in zip(lead, e1))
            if any(x < l or x > h for x, l, h in zip(qe, lo, hi)):
                raise ValueError("non-exact division by binomial")
            qv = inv_like(lv)
            old = quot.get(qe)
            quot[qe] = qv if old is None else old + qv
            # subtract qv * c2 * z^(qe + e2) from the remainder
            te = tuple(x + y for x, y in zip(lead, delta))
            w = rem.get(te, None)
            sub = qv * c2
            if w is None:
                if sub:
                    rem[te] = -sub
                    heapq.heappush(heap, tuple(-x for x in te))
            else:
                w = w - sub
                if w:
                    rem[te] = w
                else:
                    del rem[te]
        if rem:
            raise ValueError("non-exact division by binomial")
        return MPoly(self.nvars, self.domain, {e: v for e, v in quot.items() if v})

    def divide_exact(self, other: "MPoly") -> "MPoly":
        """Exact division by an arbitrary polynomial (lex ordering)."""
        other = self._compat(other)
        if not other._c:
            raise ZeroDivisionError("division by the zero polynomial")
        if len(other._c) == 1:
            ((e, v),) = other._c.items()
            inv = self.domain.div(self.domain.one(), v)
            return self.mul_monomial(tuple(-x for x in e), inv)
        if len(other._c) == 2:
            (ea, va), (eb, vb) = sorted(other._c.items(), reverse=True)
            return self.exact_div_binomial(ea, va, eb, vb)
        rem = self
        lead_e = max(other._c)
        lead_v = other._c[lead_e]
        lo = [
            min(e[i] for e in self._c) - min(e[i] for e in other._c)
            for i in range(self.nvars)
        ]
        hi = [
            max(e[i] for e in self._c) - max(e[i] for e in other._c)
            for i in range(self.nvars)
        ]
        quot = MPoly.zero(self.nvars, self.domain)
        while rem:
            e = max(rem._c)
            qe = tuple(x - y for x, y in zip(e, lead_e))
            if any(x < l or x > h for x, l, h in zip(qe, lo, hi)):
                raise ValueError("non-exact polynomial division")
            qv = self.domain.div(rem._c[e], lead_v)
            t = MPoly.monomial(self.nvars, self.domain, qe, qv)
            quot = quot + t
            rem = rem - t * other
            if rem and max(rem._c) >= e:
                raise ValueError("non-exact polynomial division")
        return quot

    # -- substitutions -----------------------------------------------------

    def subst_monomial(self, images: list[tuple[object, tuple[int, ...]]]) -> "MPoly":
        """Substitute each variable by coeff * z^exps (a monomial image).

        `images[i] = (coeff, exps)`; constant images use exps = all zeros.
        Coefficients may be any value the domain coerces.
        """
        if len(images) != self.nvars:
            raise ValueError("one image per variable required")
        dom = self.domain
        imgs = [(dom.coerce(c), tuple(e)) for c, e in images]
        out: dict = {}
        for e, v in self._c.items():
            ne = [0] * self.nvars
            coeff = v
            dead = False
            for i, p in enumerate(e):
                if p == 0:
                    continue
                ci, ei = imgs[i]
                if not ci:
                    dead = True
                    break
                if p != 1 or any(ei):
                    for j, x in enumerate(ei):
                        ne[j] += x * p
                if p == 1:
                    coeff = coeff * ci
                else:
                    coeff = coeff * ci**p
            if dead:
                continue
            key = tuple(ne)
            w = out.get(key)
            if w is None:
                out[key] = coeff
            else:
                w = w + coeff
                if w:
                    out[key] = w
                else:
                    del out[key]
        return MPoly(self.nvars, self.domain, out)

    def permute_vars(self, perm: list[int]) -> "MPoly":
        """Relabel variables: new variable perm[i] carries old exponent i."""
        out = {}
        for e, v in self._c.items():
            ne = [0] * self.nvars
            for i, p in enumerate(e):
                ne[perm[i]] = p
            out[tuple(ne)] = v
        return MPoly(self.nvars, self.domain, out)

    def map_coefficients(self, f: Callable, new_domain: Domain) -> "MPoly":
        out = {}
        for e, v in self._c.items():
            w = f(v)
            if w:
                out[e] = w
        return MPoly(self.nvars, new_domain, out)

    def eval_complex(self, values: list[complex], coeff_eval: Callable) -> complex:
        """Evaluate numerically; `coeff_eval` maps a coefficient to complex."""
        total = 0j
        for e, v in self._c.items():
            m = coeff_eval(v)
            for x, p in zip(values, e):
                if p:
                    m *= x**p
            total += m
        return total

    # -- canonical output ----------------------------------------------------

    def __str__(self):
        if not self._c:
            return "0"
        bits = []
        for e, v in self.terms():
            mono = "*".join(
                f"z{i + 1}" if p == 1 else f"z{i + 1}^{p}"
                for i, p in enumerate(e)
                if p
            )
            cs = str(v)
            if " " in cs or "/" in cs:
                cs = f"({cs})"
            bits.append(f"{cs}*{mono}" if mono else cs)
        return " + ".join(bits)

    def __repr__(self):
        return f"MPoly[{self.nvars} vars, {len(self._c)} terms]"

    def to_json(self):
        return [
            {"exps": list(e), "coeff": self.domain.coeff_json(v)}
            for e, v in self.terms()
        ]

    @staticmethod
    def from_json(nvars: int, domain: Domain, data) -> "MPoly":
        out = {}
        for t in data:
            e = tuple(int(x) for x in t["exps"])
            cj = t["coeff"]
            if domain.name == "laurent":
                v = LaurentQ.from_json(cj)
            elif domain.name == "fraction":
                v = Fraction(0)
                for ee, n, d in cj:
                    if ee == 0:
                        v = Fraction(int(n), int(d))
            elif domain.name == "cyclo":
                v = CycloQ.from_json(domain.field, cj)
            else:
                raise ValueError(f"no JSON reader for domain {domain.name}")
            if v:
                out[e] = v
        return MPoly(nvars, domain, out)


def prod_polys(factors: Iterable[MPoly], nvars: int, domain: Domain) -> MPoly:
    out = MPoly.const(nvars, domain, 1)
    for f in factors:
        out = out * f
    return out
