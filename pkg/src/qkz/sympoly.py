"""Partitions, staircase diagrams, and symmetric polynomials.

Provides monomial/Schur/Macdonald symmetric polynomials over exact
coefficient domains, admissibility and wheel-condition tests for staircase
diagrams, and a generic Pfaffian.  Macdonald polynomials are computed two
ways: `macdonald` works for arbitrary parameters from the defining
property (monic, dominance-triangular, orthogonal to every lower monomial
under the (q_M, t_M) power-sum inner product), while `staircase_macdonald`
solves the q-difference eigenproblem at the level specialization, which
scales to the staircase diagrams the correlation-function pipeline needs.
The two routes are checked against each other in the test suite.
"""

from __future__ import annotations

import operator
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .mpoly import FRACTION_DOMAIN, LAURENT_DOMAIN, MPoly, RATIONAL_DOMAIN
from .qarith import LaurentQ, RationalQ, laurent_gcd

__all__ = [
    "Partition",
    "SymPoly",
    "MacdonaldParams",
    "staircase",
    "is_admissible",
    "schur",
    "macdonald",
    "staircase_macdonald",
    "cleared_mcoeffs",
    "wheel_vanishes",
    "principal_specialization_valuation",
    "pfaffian",
    "partitions_of",
    "dominance_le",
]


@dataclass(frozen=True, order=True)
class Partition:
    """A weakly decreasing tuple of nonnegative parts.

    Trailing zeros are kept: the declared length matters when the partition
    labels variables of a fixed-width polynomial ring.

    >>> Partition((3, 1, 0)).size
    4
    """

    parts: tuple[int, ...]

    def __post_init__(self):
        p = tuple(int(x) for x in self.parts)
        object.__setattr__(self, "parts", p)
        if any(x < 0 for x in p):
            raise ValueError("negative part in partition")
        if any(p[i] < p[i + 1] for i in range(len(p) - 1)):
            raise ValueError(f"parts not weakly decreasing: {p}")

    @property
    def size(self) -> int:
        return sum(self.parts)

    @property
    def length(self) -> int:
        return len(self.parts)

    def nonzero_length(self) -> int:
        return sum(1 for x in self.parts if x)

    def trimmed(self) -> tuple[int, ...]:
        return tuple(x for x in self.parts if x)

    def to_json(self) -> list[int]:
        return list(self.parts)

    def __str__(self):
        return "(" + ",".join(map(str, self.parts)) + ")"


def partitions_of(d: int, max_part: int | None = None) -> list[tuple[int, ...]]:
    """All partitions of d (descending parts), largest-first order."""
    if d == 0:
        return [()]
    out = []
    mp = d if max_part is None else min(d, max_part)
    for first in range(mp, 0, -1):
        for rest in partitions_of(d - first, first):
            out.append((first,) + rest)
    return out


def dominance_le(mu: tuple[int, ...], lam: tuple[int, ...]) -> bool:
    """mu <= lam in dominance order (partitions of the same number)."""
    if sum(mu) != sum(lam):
        raise ValueError("dominance compares partitions of equal size")
    a = b = 0
    for i in range(max(len(mu), len(lam))):
        a += mu[i] if i < len(mu) else 0
        b += lam[i] if i < len(lam) else 0
        if a > b:
            return False
    return True


def staircase(level: int, n: int, twist_k: int) -> Partition:
    """The staircase diagram with ln parts for n sites at the given twist.

    Block i of l consecutive parts equals 2(n-i), plus one extra box on the
    first l-twist_k parts of each block.
    """
    if not (1 <= level and n >= 1):
        raise ValueError("level and n must be positive")
    if not (0 <= twist_k <= level):
        raise ValueError(f"twist {twist_k} outside [0, {level}]")
    parts = []
    for i in range(1, level * n + 1):
        base = 2 * (n - (i + level - 1) // level)
        extra = 1 if ((i - 1) % level) < level - twist_k else 0
        parts.append(base + extra)
    return Partition(tuple(parts))


def is_admissible(lam: Partition, r: int, k: int) -> bool:
    """True iff lam_i - lam_{i+k} >= r for every valid i."""
    p = lam.parts
    return all(p[i] - p[i + k] >= r for i in range(len(p) - k))


# ---------------------------------------------------------------------------
# monomial expansion helpers


def distinct_permutations(seq):
    """All distinct permutations of a multiset, in lexicographic order."""
    seq = sorted(seq)
    while True:
        yield tuple(seq)
        i = len(seq) - 2
        while i >= 0 and seq[i] >= seq[i + 1]:
            i -= 1
        if i < 0:
            return
        j = len(seq) - 1
        while seq[j] <= seq[i]:
            j -= 1
        seq[i], seq[j] = seq[j], seq[i]
        seq[i + 1 :] = reversed(seq[i + 1 :])


def monomial_sym_poly(mu: tuple[int, ...], nvars: int, domain) -> MPoly:
    """The monomial symmetric polynomial m_mu in nvars variables."""
    mu = tuple(x for x in mu if x)
    if len(mu) > nvars:
        return MPoly.zero(nvars, domain)
    one = domain.one()
    padded = list(mu) + [0] * (nvars - len(mu))
    coeffs = {perm: one for perm in distinct_permutations(padded)}
    return MPoly(nvars, domain, coeffs)


@dataclass(frozen=True)
class SymPoly:
    """An expanded symmetric polynomial plus its monomial-basis data.

    `poly` is the expansion in w_1..w_nvars; `mcoeffs` (when available)
    maps partitions to coefficients of monomial symmetric polynomials and is
    what evaluation-heavy callers use.
    """

    nvars: int
    poly: MPoly
    symmetric: bool = True
    mcoeffs: tuple = ()

    def mcoeff_dict(self) -> dict[tuple[int, ...], object]:
        return dict(self.mcoeffs)

    def check_symmetric(self) -> bool:
        for i in range(self.nvars - 1):
            perm = list(range(self.nvars))
            perm[i], perm[i + 1] = perm[i + 1], perm[i]
            if self.poly.permute_vars(perm) != self.poly:
                return False
        return True


# ---------------------------------------------------------------------------
# power-sum transition matrices (cached per degree)


@lru_cache(maxsize=None)
def _p_in_m(d: int) -> dict[tuple[int, ...], dict[tuple[int, ...], int]]:
    """Expansion of every p_lambda (lambda |- d) on the m basis.

    Built by folding the rule: p_r * m_mu picks one distinct part v of mu
    (or v=0) and replaces it by v+r; the coefficient is the multiplicity of
    v+r in the resulting partition.
    """
    out = {}
    for lam in partitions_of(d):
        acc: dict[tuple[int, ...], int] = {(): 1}
        for r in lam:
            new: dict[tuple[int, ...], int] = {}
            for mu, c in acc.items():
                for v in set(mu) | {0}:
                    lst = list(mu)
                    if v:
                        lst.remove(v)
                    lst.append(v + r)
                    nu = tuple(sorted(lst, reverse=True))
                    coeff = c * nu.count(v + r)
                    new[nu] = new.get(nu, 0) + coeff
            acc = new
        out[lam] = acc
    return out


@lru_cache(maxsize=None)
def _m_in_p(d: int) -> dict[tuple[int, ...], dict[tuple[int, ...], Fraction]]:
    """Expansion of every m_lambda on the p basis (matrix inversion)."""
    plist = partitions_of(d)
    idx = {lam: i for i, lam in enumerate(plist)}
    n = len(plist)
    pm = _p_in_m(d)
    # rows: p_lambda in m basis
    a = [[Fraction(pm[lam].get(mu, 0)) for mu in plist] for lam in plist]
    inv = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for col in range(n):
        piv = next(r for r in range(col, n) if a[r][col])
        a[col], a[piv] = a[piv], a[col]
        inv[col], inv[piv] = inv[piv], inv[col]
        pv = a[col][col]
        a[col] = [x / pv for x in a[col]]
        inv[col] = [x / pv for x in inv[col]]
        for r in range(n):
            if r != col and a[r][col]:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
                inv[r] = [x - f * y for x, y in zip(inv[r], inv[col])]
    # inv maps m-coordinates to p-coordinates: m_mu = sum_nu inv[mu][nu] p_nu
    out = {}
    for mu in plist:
        row = inv[idx[mu]]
        out[mu] = {nu: row[idx[nu]] for nu in plist if row[idx[nu]]}
    return out


def _z_factor(alpha: tuple[int, ...]) -> int:
    z = 1
    for r in set(alpha):
        m = alpha.count(r)
        z *= r**m
        fact = 1
        for i in range(2, m + 1):
            fact *= i
        z *= fact
    return z


@dataclass(frozen=True)
class MacdonaldParams:
    """The two deformation parameters of the Macdonald inner product.

    Values may be exact rationals or (Laurent) polynomials in q; the
    specialization used by the correlation-function pipeline is
    t_M = q^-2, q_M = q^(2(level+1)).
    """

    q_m: object
    t_m: object

    @staticmethod
    def level_specialization(level: int) -> "MacdonaldParams":
        return MacdonaldParams(
            q_m=LaurentQ.q_power(2 * (level + 1)), t_m=LaurentQ.q_power(-2)
        )

    def is_numeric(self) -> bool:
        return isinstance(self.q_m, (int, Fraction)) and isinstance(
            self.t_m, (int, Fraction)
        )

    def _power(self, base, a: int):
        if isinstance(base, (int, Fraction)):
            return Fraction(base) ** a
        return base**a

    def pair_weight(self, alpha: tuple[int, ...]):
        """<p_alpha, p_alpha> = z_alpha prod (1 - q_M^a)/(1 - t_M^a)."""
        z = _z_factor(alpha)
        if self.is_numeric():
            w = Fraction(z)
            for a in alpha:
                den = 1 - self._power(self.t_m, a)
                if not den:
                    raise ValueError("specialization not generic")
                w *= (1 - self._power(self.q_m, a)) / den
            return w
        num = LaurentQ.const(z)
        den = LaurentQ.one()
        for a in alpha:
            num = num * (LaurentQ.one() - _as_laurent(self.q_m) ** a)
            den = den * (LaurentQ.one() - _as_laurent(self.t_m) ** a)
        if not den:
            raise ValueError("specialization not generic")
        return RationalQ(num, den)

    def relation_holds(self, r: int, k: int) -> bool:
        """Whether q_M^(r-1) t_M^(k+1) == 1 exactly."""
        lhs = self._power(self.q_m, r - 1) * self._power(self.t_m, k + 1)
        if isinstance(lhs, Fraction):
            return lhs == 1
        return lhs == LaurentQ.one()


def _as_laurent(x) -> LaurentQ:
    if isinstance(x, LaurentQ):
        return x
    if isinstance(x, RationalQ):
        return x.to_laurent()
    return LaurentQ.const(x)


@lru_cache(maxsize=None)
def _pair_weight(params: MacdonaldParams, alpha: tuple[int, ...]):
    return params.pair_weight(alpha)


@lru_cache(maxsize=None)
def _gram_entry(d: int, mu: tuple[int, ...], nu: tuple[int, ...], params: MacdonaldParams):
    mp = _m_in_p(d)
    rowm, rown = mp[mu], mp[nu]
    if params.is_numeric():
        total = Fraction(0)
        for alpha, a in rowm.items():
            b = rown.get(alpha)
            if b:
                total += _pair_weight(params, alpha) * (a * b)
        return total
    # at the specializations used here the pair weights are Laurent in q,
    # which keeps the accumulation in the polynomial ring (fast); fall back
    # to rational-function arithmetic otherwise
    lau_acc = LaurentQ.zero()
    rat_acc = None
    for alpha, a in rowm.items():
        b = rown.get(alpha)
        if not b:
            continue
        w = _pair_weight(params, alpha)
        if isinstance(w, RationalQ) and w.is_laurent():
            lau_acc = lau_acc + w.num.scale(a * b)
        else:
            term = w * (a * b)
            rat_acc = term if rat_acc is None else rat_acc + term
    total = RationalQ(lau_acc)
    if rat_acc is not None:
        total = total + rat_acc
    return total


def _field_ops(params: MacdonaldParams):
    """(coerce, div, zero-test) for the Gram field of the given params."""
    if params.is_numeric():
        return (lambda x: Fraction(x) if isinstance(x, int) else x), operator.truediv
    def coerce(x):
        if isinstance(x, RationalQ):
            return x
        return RationalQ(_as_laurent(x))
    return coerce, operator.truediv


@lru_cache(maxsize=None)
def _macdonald_mcoeffs(
    lam: tuple[int, ...], params: MacdonaldParams
) -> tuple[tuple[tuple[int, ...], object], ...]:
    """m-basis coefficients of the monic P_lam as (partition, coeff) pairs.

    Solves the orthogonality conditions <P_lam, m_nu> = 0 for every nu
    strictly below lam in dominance order: with P_lam = m_lam + sum c_mu
    m_mu this is a linear system in the c_mu with the Gram matrix of the
    strict downset, solved exactly by Gaussian elimination.
    """
    d = sum(lam)
    coerce, div = _field_ops(params)
    if d == 0:
        return (((), coerce(1)),)
    down = [
        mu for mu in partitions_of(d) if mu != lam and dominance_le(mu, lam)
    ]
    if not down:
        return ((lam, coerce(1)),)
    g = [
        [coerce(_gram_entry(d, mu, nu, params)) for nu in down]
        for mu in down
    ]
    rhs = [coerce(-1 * _gram_entry(d, mu, lam, params)) for mu in down]
    n = len(down)
    for col in range(n):
        piv = None
        for r in range(col, n):
            if g[r][col]:
                piv = r
                break
        if piv is None:
            raise ValueError("specialization not generic")
        g[col], g[piv] = g[piv], g[col]
        rhs[col], rhs[piv] = rhs[piv], rhs[col]
        pv = g[col][col]
        for r in range(col + 1, n):
            f = g[r][col]
            if f:
                ratio = div(f, pv)
                g[r] = [x - ratio * y for x, y in zip(g[r], g[col])]
                rhs[r] = rhs[r] - ratio * rhs[col]
    coeffs: list = [None] * n
    for i in range(n - 1, -1, -1):
        acc = rhs[i]
        for j in range(i + 1, n):
            if g[i][j] and coeffs[j]:
                acc = acc - g[i][j] * coeffs[j]
        coeffs[i] = div(acc, g[i][i])
    out = [(lam, coerce(1))]
    for mu, c in zip(down, coeffs):
        if c:
            out.append((mu, c))
    return tuple(out)


def macdonald(lam: Partition, params: MacdonaldParams, nvars: int) -> SymPoly:
    """The monic Macdonald polynomial P_lam in nvars variables.

    Coefficients are exact rationals for numeric params and rational
    functions of q otherwise.  Raises ValueError("specialization not
    generic") when the Gram matrix degenerates.
    """
    key = lam.trimmed()
    if len(key) > nvars:
        raise ValueError("partition longer than the number of variables")
    mcoeffs = _macdonald_mcoeffs(key, params)
    domain = FRACTION_DOMAIN if params.is_numeric() else RATIONAL_DOMAIN
    poly = MPoly.zero(nvars, domain)
    kept = []
    for mu, c in mcoeffs:
        if len(mu) <= nvars:
            kept.append((mu, c))
            poly = poly + monomial_sym_poly(mu, nvars, domain).scale(c)
    return SymPoly(nvars=nvars, poly=poly, symmetric=True, mcoeffs=tuple(kept))


@lru_cache(maxsize=None)
def _qdiff_kernels(nvars: int, t_m: LaurentQ) -> tuple[MPoly, ...]:
    """B_i = prod_{j != i} (t_M x_i - x_j) * prod_{a<b, a,b != i} (x_a - x_b).

    Multiplying the first-order Macdonald q-difference operator through by
    the full Vandermonde turns its action into (D f) * V = sum_i (-1)^i B_i
    * (f with x_i -> q_M x_i), so matrix elements of D come out of plain
    coefficient lookups in these fixed polynomials.
    """
    one = LAURENT_DOMAIN.one()
    out = []
    for i in range(nvars):
        p = MPoly.const(nvars, LAURENT_DOMAIN, one)
        for j in range(nvars):
            if j == i:
                continue
            ei = [0] * nvars
            ej = [0] * nvars
            ei[i], ej[j] = 1, 1
            p = p * (
                MPoly.monomial(nvars, LAURENT_DOMAIN, tuple(ei), t_m)
                + MPoly.monomial(nvars, LAURENT_DOMAIN, tuple(ej), -one)
            )
        for a in range(nvars):
            if a == i:
                continue
            for b in range(a + 1, nvars):
                if b == i:
                    continue
                ea = [0] * nvars
                eb = [0] * nvars
                ea[a], eb[b] = 1, 1
                p = p * (
                    MPoly.monomial(nvars, LAURENT_DOMAIN, tuple(ea), one)
                    + MPoly.monomial(nvars, LAURENT_DOMAIN, tuple(eb), -one)
                )
        out.append(p)
    return tuple(out)


@lru_cache(maxsize=None)
def _schur_mcoeffs(mu: tuple[int, ...], nvars: int) -> tuple[tuple[tuple[int, ...], int], ...]:
    """Monomial expansion of s_mu in nvars variables (integer coefficients)."""
    s = schur(Partition(mu), nvars)
    out = []
    for rho in partitions_of(sum(mu), max_part=mu[0] if mu else 0):
        if len(rho) > nvars or not dominance_le(rho, mu):
            continue
        c = s.poly.coeff(tuple(rho) + (0,) * (nvars - len(rho)))
        if c:
            assert c.denominator == 1
            out.append((rho, int(c)))
    return tuple(out)


def _qdiff_eigenvalue(mu: tuple[int, ...], nvars: int, q_m: LaurentQ, t_m: LaurentQ) -> LaurentQ:
    padded = tuple(mu) + (0,) * (nvars - len(mu))
    total = LaurentQ.zero()
    for i, part in enumerate(padded):
        total = total + q_m**part * t_m ** (nvars - 1 - i)
    return total


@lru_cache(maxsize=None)
def _eigen_mcoeffs(
    lam: tuple[int, ...], nvars: int, level: int
) -> tuple[tuple[tuple[int, ...], RationalQ], ...]:
    """m-basis coefficients of P_lam at the level specialization.

    Solves the q-difference eigenproblem in the Schur basis, where the
    operator matrix is triangular for dominance and every division is by a
    difference of two eigenvalues (a small Laurent polynomial).  This keeps
    all intermediate quantities small, unlike elimination on the Gram
    matrix, and never assumes the coefficients are Laurent: beyond level 2
    some of them genuinely acquire q-integer denominators.
    """
    q_m = LaurentQ.q_power(2 * (level + 1))
    t_m = LaurentQ.q_power(-2)
    d = sum(lam)
    if d == 0:
        return (((), RationalQ.one()),)
    down = [
        mu
        for mu in partitions_of(d)
        if len(mu) <= nvars and dominance_le(mu, lam)
    ]
    down.sort(reverse=True)  # descending lex refines descending dominance
    kernels = _qdiff_kernels(nvars, t_m)
    delta = tuple(range(nvars - 1, -1, -1))
    nd = len(down)

    # amat[a][b] = coefficient of s_{down[a]} in D m_{down[b]}
    amat = [[LaurentQ.zero()] * nd for _ in range(nd)]
    targets = [
        tuple(m + g for m, g in zip(mu + (0,) * (nvars - len(mu)), delta))
        for mu in down
    ]
    for b, nu in enumerate(down):
        monos = list(
            distinct_permutations(tuple(nu) + (0,) * (nvars - len(nu)))
        )
        for i in range(nvars):
            kern = kernels[i]._c
            sign = -1 if i % 2 else 1
            for a in range(b, nd):
                kappa = targets[a]
                acc = LaurentQ.zero()
                for rho in monos:
                    c = kern.get(tuple(x - r for x, r in zip(kappa, rho)))
                    if c is not None:
                        acc = acc + c.shift(2 * (level + 1) * rho[i])
                if acc:
                    amat[a][b] = amat[a][b] + acc.scale(sign)

    eigs = [_qdiff_eigenvalue(mu, nvars, q_m, t_m) for mu in down]
    for a, mu in enumerate(down):
        if amat[a][a] != eigs[a]:
            raise AssertionError(
                f"q-difference operator diagonal mismatch at {mu}"
            )

    # push the Schur-coordinate output back to monomial coordinates via the
    # (unitriangular, integer) Kostka expansion: the m-basis matrix element
    # is dmat[r][b] = sum_a K[down[a]][down[r]] * amat[a][b]
    pos = {mu: a for a, mu in enumerate(down)}
    dmat = [[LaurentQ.zero()] * nd for _ in range(nd)]
    for a, mu in enumerate(down):
        kost = _schur_mcoeffs(mu, nvars)
        for b in range(a + 1):
            v = amat[a][b]
            if not v:
                continue
            for rho, kval in kost:
                r = pos[rho]
                dmat[r][b] = dmat[r][b] + v.scale(kval)
    for a, mu in enumerate(down):
        if dmat[a][a] != eigs[a]:
            raise AssertionError(
                f"monomial-basis diagonal mismatch at {mu}"
            )

    # triangular solve for the monomial coefficients, top partition first
    e_lam = eigs[0]
    cs: list[RationalQ] = [RationalQ.one()]
    for a in range(1, nd):
        acc = RationalQ.zero()
        for b in range(a):
            if cs[b] and dmat[a][b]:
                acc = acc + cs[b] * dmat[a][b]
        den = e_lam - eigs[a]
        if not den:
            raise ValueError("specialization not generic")
        cs.append(acc / RationalQ(den))
    return tuple((mu, cs[a]) for a, mu in enumerate(down) if cs[a])


@lru_cache(maxsize=None)
def staircase_macdonald(level: int, n: int, twist_k: int) -> SymPoly:
    """P at the staircase diagram under the level specialization.

    Coefficients are rational functions of q: most are Laurent polynomials,
    but beyond level 2 some pick up denominators that are products of
    q-integers (those cancel only after the known q-factorial normalization
    of the downstream correlation functions).
    """
    lam = staircase(level, n, twist_k)
    nvars = level * n
    mcoeffs = _eigen_mcoeffs(lam.trimmed(), nvars, level)
    poly = MPoly.zero(nvars, RATIONAL_DOMAIN)
    for mu, c in mcoeffs:
        poly = poly + monomial_sym_poly(mu, nvars, RATIONAL_DOMAIN).scale(c)
    return SymPoly(nvars=nvars, poly=poly, symmetric=True, mcoeffs=mcoeffs)


def cleared_mcoeffs(
    mcoeffs: tuple[tuple[tuple[int, ...], RationalQ], ...],
) -> tuple[LaurentQ, tuple[tuple[tuple[int, ...], LaurentQ], ...]]:
    """Scale rational m-coefficients by the lcm D of their q-denominators.

    Returns (D, pairs) with pairs (partition, coeff * D), so a caller can
    work entirely in the Laurent ring and fold the single 1/D into a scalar
    prefactor.
    """
    den = LaurentQ.one()
    for _, c in mcoeffs:
        c = _as_rational(c)
        g = laurent_gcd(den, c.den)
        den = den * c.den.divide_exact(g)
    out = []
    for mu, c in mcoeffs:
        c = _as_rational(c)
        out.append((mu, c.num * den.divide_exact(c.den)))
    return den, tuple(out)


def _as_rational(x) -> RationalQ:
    if isinstance(x, RationalQ):
        return x
    return RationalQ(_as_laurent(x))


def schur(lam: Partition, nvars: int, domain=FRACTION_DOMAIN) -> SymPoly:
    """Schur polynomial via the bialternant ratio (division is exact)."""
    key = lam.trimmed()
    if len(key) > nvars:
        raise ValueError("partition longer than the number of variables")
    exps = [
        (key[j] if j < len(key) else 0) + nvars - 1 - j for j in range(nvars)
    ]
    det = MPoly.zero(nvars, domain)
    one = domain.one()
    for perm in _permutations_signed(nvars):
        sigma, sign = perm
        key_e = tuple(exps[sigma[i]] for i in range(nvars))
        det = det + MPoly.monomial(nvars, domain, key_e, sign * one)
    for i in range(nvars):
        for j in range(i + 1, nvars):
            e1 = [0] * nvars
            e2 = [0] * nvars
            e1[i], e2[j] = 1, 1
            det = det.exact_div_binomial(tuple(e1), 1, tuple(e2), -1)
    return SymPoly(nvars=nvars, poly=det, symmetric=True, mcoeffs=())


def _permutations_signed(n: int):
    import itertools

    base = list(range(n))
    for sigma in itertools.permutations(base):
        inv = 0
        for i in range(n):
            for j in range(i + 1, n):
                inv += sigma[i] > sigma[j]
        yield sigma, (-1) ** inv


def wheel_vanishes(f: SymPoly, r: int, k: int, t_m, q_m) -> bool:
    """Whether f vanishes on every wheel chain of k+1 variables.

    The first k+1 variables are set to z, z*(t q^{s_1}), z*(t q^{s_1+s_2})
    cumulatively, with s_i >= 0 and sum s_i <= r-1; the remaining variables
    and z stay free.  Requires q_M^(r-1) t_M^(k+1) = 1.
    """
    if not MacdonaldParams(q_m, t_m).relation_holds(r, k):
        raise ValueError("wheel parameters must satisfy q_M^(r-1) t_M^(k+1) = 1")
    nv = f.nvars
    if k + 1 > nv:
        return True
    t_m = _wheel_scalar(t_m)
    q_m = _wheel_scalar(q_m)
    rest = nv - (k + 1)
    new_n = 1 + rest
    for svec in _bounded_compositions(k, r - 1):
        images = []
        ratio_acc = None
        for i in range(k + 1):
            if i == 0:
                coeff = 1
            else:
                step = t_m * q_m ** svec[i - 1]
                ratio_acc = step if ratio_acc is None else ratio_acc * step
                coeff = ratio_acc
            e = [0] * new_n
            e[0] = 1
            images.append((coeff, tuple(e)))
        for j in range(rest):
            e = [0] * new_n
            e[1 + j] = 1
            images.append((1, tuple(e)))
        if f.poly.subst_monomial(images):
            return False
    return True


def _wheel_scalar(x):
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    return _as_laurent(x)


def _bounded_compositions(length: int, total_max: int):
    """All s in Z_{>=0}^length with sum(s) <= total_max."""
    if length == 0:
        yield ()
        return
    for first in range(total_max + 1):
        for rest in _bounded_compositions(length - 1, total_max - first):
            yield (first,) + rest


def principal_specialization_valuation(level: int, n: int, twist_k: int, j: int) -> int:
    """Valuation in z of P at the staircase with the first j variables set
    to the geometric chain (z, q^2 z, ..., q^(2j-2) z)."""
    if j < 0 or j > level:
        raise ValueError("chain length must satisfy 0 <= j <= level")
    if j == 0:
        return 0
    f = staircase_macdonald(level, n, twist_k)
    nv = f.nvars
    rest = nv - j
    new_n = 1 + rest
    images = []
    for i in range(j):
        e = [0] * new_n
        e[0] = 1
        images.append((LaurentQ.q_power(2 * i), tuple(e)))
    for m in range(rest):
        e = [0] * new_n
        e[1 + m] = 1
        images.append((1, tuple(e)))
    sub = f.poly.subst_monomial(images)
    if not sub:
        raise ValueError("specialized polynomial vanished identically")
    return min(e[0] for e in sub._c)


def pfaffian(rows):
    """Pfaffian of an antisymmetric even-dimensional matrix.

    Entries may be any ring elements supporting + - *.  Expansion along the
    first row; Pf([[0,a],[-a,0]]) = a.
    """
    m = len(rows)
    if m % 2:
        raise ValueError("Pfaffian requires even dimension")
    for i in range(m):
        if len(rows[i]) != m:
            raise ValueError("matrix not square")
        if rows[i][i]:
            raise ValueError("matrix not antisymmetric (nonzero diagonal)")
        for j in range(i + 1, m):
            if rows[i][j] != -rows[j][i]:
                raise ValueError("matrix not antisymmetric")
    return _pf(rows, tuple(range(m)))


def _pf(rows, active: tuple[int, ...]):
    if not active:
        return 1
    first = active[0]
    total = None
    for pos in range(1, len(active)):
        j = active[pos]
        entry = rows[first][j]
        if not entry:
            continue
        sub = tuple(x for x in active[1:] if x != j)
        term = entry * _pf(rows, sub)
        if pos % 2 == 0:
            term = -term
        total = term if total is None else total + term
    if total is None:
        return rows[first][first]  # a zero of the right type
    return total
