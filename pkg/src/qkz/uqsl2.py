"""Spin-l/2 evaluation representation, spin projectors, and R-matrices.

The representation acts on V with basis |0>..|l>; the affine generators
carry the spectral parameter z as a genuine Laurent variable.  Projectors
P_j onto the spin-j summand of V (x) V are built by pure linear algebra
(highest-weight kernels plus lowering descendants) symbolically over
RationalQ; root-of-unity values are obtained by specializing entries.
At a root with [level+2] = 0 the spins j and level+1-j share a Casimir
value and only the sum of their projectors stays finite, so cyclotomic
work goes through sector_projectors, which fuses such pairs into one
class (their R-matrix scalars agree identically there).  The two
R-matrix normalizations are stored sector-diagonally (one scalar
function of z per sector) and assembled on demand.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .linalg import identity, kernel_basis, kron, mat_inverse
from .mpoly import LAURENT_DOMAIN, MPoly
from .qarith import CycloField, CycloQ, LaurentQ, RationalQ, q_int

__all__ = [
    "EvalRep",
    "RMatrix",
    "eval_rep",
    "coproduct_action",
    "coproduct_chain",
    "spin_projectors",
    "sector_projectors",
    "rbar",
    "rcheck_poly",
    "rcheck_cleared_coeffs",
    "twist_matrix",
    "matrix_to_json",
]


def _zconst(c: LaurentQ) -> MPoly:
    return MPoly.const(1, LAURENT_DOMAIN, c)


def _zmono(c: LaurentQ, deg: int) -> MPoly:
    return MPoly.monomial(1, LAURENT_DOMAIN, (deg,), c)


@dataclass(frozen=True)
class EvalRep:
    """Generator matrices on |0>..|level>, entries polynomial in z.

    Columns index the input basis vector: m[r][c] is the |r> component of
    the generator applied to |c>.
    """

    level: int
    e0: tuple
    e1: tuple
    f0: tuple
    f1: tuple
    k0: tuple
    k1: tuple

    @property
    def dim(self) -> int:
        return self.level + 1


@lru_cache(maxsize=None)
def eval_rep(level: int) -> EvalRep:
    """The spin-level/2 evaluation representation with symbolic z."""
    if level < 1:
        raise ValueError("level must be at least 1")
    d = level + 1
    zero = MPoly.zero(1, LAURENT_DOMAIN)

    def build(fill):
        m = [[zero] * d for _ in range(d)]
        fill(m)
        return tuple(tuple(r) for r in m)

    def e1(m):
        for b in range(level):
            m[b + 1][b] = _zconst(q_int(level - b))

    def f1(m):
        for b in range(1, d):
            m[b - 1][b] = _zconst(q_int(b))

    def k1(m):
        for b in range(d):
            m[b][b] = _zconst(LaurentQ.q_power(2 * b - level))

    def e0(m):
        for b in range(1, d):
            m[b - 1][b] = _zmono(
                q_int(b) * LaurentQ.q_power(-level - 2), 1
            )

    def f0(m):
        for b in range(level):
            m[b + 1][b] = _zmono(
                q_int(level - b) * LaurentQ.q_power(level + 2), -1
            )

    def k0(m):
        for b in range(d):
            m[b][b] = _zconst(LaurentQ.q_power(level - 2 * b))

    return EvalRep(
        level=level,
        e0=build(e0),
        e1=build(e1),
        f0=build(f0),
        f1=build(f1),
        k0=build(k0),
        k1=build(k1),
    )


def _site_matrices(level: int) -> dict[str, tuple]:
    """z-free single-site matrices over LaurentQ for E1, F1, K1, K1inv."""
    d = level + 1
    zero = LaurentQ.zero()

    def blank():
        return [[zero] * d for _ in range(d)]

    e = blank()
    f = blank()
    k = blank()
    kinv = blank()
    for b in range(d):
        if b < level:
            e[b + 1][b] = q_int(level - b)
        if b > 0:
            f[b - 1][b] = q_int(b)
        k[b][b] = LaurentQ.q_power(2 * b - level)
        kinv[b][b] = LaurentQ.q_power(level - 2 * b)
    frz = lambda m: tuple(tuple(r) for r in m)
    return {"E1": frz(e), "F1": frz(f), "K1": frz(k), "K1inv": frz(kinv)}


def coproduct_action(level: int, generator: str) -> tuple:
    """Matrix of Delta(x) on V (x) V for x in {E1, F1, K1}.

    Delta(E) = E (x) 1 + K (x) E, Delta(F) = F (x) K^-1 + 1 (x) F,
    Delta(K) = K (x) K.
    """
    return coproduct_chain(level, generator, 2)


def coproduct_chain(level: int, generator: str, nsites: int) -> tuple:
    """Matrix of the iterated coproduct of E1/F1/K1 on V^(x nsites)."""
    site = _site_matrices(level)
    d = level + 1
    one = identity(d, LaurentQ.one(), LaurentQ.zero())
    if generator == "K1":
        out = site["K1"]
        for _ in range(nsites - 1):
            out = kron(out, site["K1"])
        return out
    if generator not in ("E1", "F1"):
        raise ValueError(f"unsupported generator {generator!r}")
    gen = site[generator]
    left = site["K1"] if generator == "E1" else one
    right = one if generator == "E1" else site["K1inv"]
    total = None
    for pos in range(nsites):
        term = None
        for s in range(nsites):
            factor = gen if s == pos else (left if s < pos else right)
            term = factor if term is None else kron(term, factor)
        total = term if total is None else tuple(
            tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(total, term)
        )
    return total


def _scalar_ops(field: CycloField | None):
    """(lift LaurentQ -> scalar, zero, one) for the requested arithmetic."""
    if field is None:
        return (lambda c: RationalQ(c)), RationalQ.zero(), RationalQ.one()
    return field.from_laurent, field.zero(), field.one()


def _check_semisimple(level: int, field: CycloField) -> None:
    """V (x) V decomposes with the generic multiplicities iff [m] != 0
    for m = 1..level+1."""
    for m in range(1, level + 2):
        if field.from_laurent(q_int(m)) == field.zero():
            raise ValueError("non-semisimple specialization")


@lru_cache(maxsize=None)
def spin_projectors(level: int, field: CycloField | None = None) -> tuple:
    """The orthogonal idempotents P_0..P_level of V (x) V.

    Within each weight space, highest-weight vectors are the kernel of
    Delta(E1), descendants are generated by Delta(F1), and the resulting
    change of basis is inverted exactly.  Any degeneracy (wrong kernel
    dimension, vanishing descendant, singular basis) raises
    ValueError("non-semisimple specialization").

    With a cyclotomic field the symbolic entries are specialized one by
    one.  Beware: at a root with [level+2] = 0 the individual P_j for
    the Casimir-degenerate pairs have poles even though the module is
    still semisimple; such fields must use sector_projectors instead.
    """
    err = "non-semisimple specialization"
    if field is not None:
        _check_semisimple(level, field)
        try:
            return tuple(
                tuple(
                    tuple(field.from_rational(x) for x in row) for row in p
                )
                for p in spin_projectors(level)
            )
        except ZeroDivisionError:
            raise ValueError(err) from None
    lift, zero, one = _scalar_ops(None)
    d = level + 1
    dim2 = d * d
    de = tuple(
        tuple(lift(x) for x in row) for row in coproduct_action(level, "E1")
    )
    df = tuple(
        tuple(lift(x) for x in row) for row in coproduct_action(level, "F1")
    )

    def weight_indices(u: int) -> list[int]:
        return [
            b1 * d + b2
            for b1 in range(d)
            for b2 in range(d)
            if b1 + b2 == u
        ]

    # highest-weight vector of spin j lives at weight u = level + j
    hw: dict[int, tuple] = {}
    for j in range(level, -1, -1):
        cols = weight_indices(level + j)
        rows = weight_indices(level + j + 1)
        if rows:
            block = tuple(tuple(de[r][c] for c in cols) for r in rows)
            ker = kernel_basis(block, zero, one)
        else:
            # top weight space: Delta(E1) maps it to zero outright
            ker = [
                tuple(one if i == t else zero for i in range(len(cols)))
                for t in range(len(cols))
            ]
        if len(ker) != 1:
            raise ValueError(err)
        vec = [zero] * dim2
        for c, x in zip(cols, ker[0]):
            vec[c] = x
        hw[j] = tuple(vec)

    # descendants v_{j,m} = Delta(F1)^m hw_j, m = 0..2j
    desc: dict[tuple[int, int], tuple] = {}
    for j in range(level + 1):
        v = hw[j]
        desc[(j, 0)] = v
        for m in range(1, 2 * j + 1):
            w = [zero] * dim2
            for r in range(dim2):
                acc = zero
                for c in range(dim2):
                    if df[r][c] and v[c]:
                        acc = acc + df[r][c] * v[c]
                w[r] = acc
            if not any(w):
                raise ValueError(err)
            v = tuple(w)
            desc[(j, m)] = v

    projs = [
        [[zero] * dim2 for _ in range(dim2)] for _ in range(level + 1)
    ]
    for u in range(2 * level + 1):
        idx = weight_indices(u)
        js = [j for j in range(level + 1) if abs(level - u) <= j]
        cols = tuple(
            tuple(desc[(j, level + j - u)][i] for j in js) for i in idx
        )
        inv = mat_inverse(cols, zero, one, singular_msg=err)
        for a, j in enumerate(js):
            for r, i in enumerate(idx):
                if not cols[r][a]:
                    continue
                for s, t in enumerate(idx):
                    if inv[a][s]:
                        projs[j][i][t] = projs[j][i][t] + cols[r][a] * inv[a][s]
    return tuple(
        tuple(tuple(row) for row in p) for p in projs
    )


@lru_cache(maxsize=None)
def sector_projectors(level: int, field: CycloField | None = None) -> tuple:
    """Projectors grouped into the classes that stay separable.

    Returns ((spins, matrix), ...) where spins is a sorted tuple of the
    j values sharing the class.  Symbolically every class is a single
    spin.  Over a field with [level+2] = 0 the Casimir values of spins
    j and level+1-j coincide and only P_j + P_{level+1-j} is finite, so
    those two spins form one class; the R-matrix sector scalars of
    paired spins agree identically at such a root, which is what keeps
    the R-matrix entries finite there (the actual values also carry a
    nilpotent piece mixing the paired spins; see RMatrix.value_matrix).
    """
    projs = spin_projectors(level)
    if field is None:
        return tuple(((j,), p) for j, p in enumerate(projs))
    _check_semisimple(level, field)
    if field.from_laurent(q_int(level + 2)) == field.zero():
        classes = []
        for j in range(level + 1):
            partner = level + 1 - j
            if partner > level:
                classes.append((j,))
            elif partner == j:
                classes.append((j,))
            elif partner > j:
                classes.append((j, partner))
    else:
        classes = [(j,) for j in range(level + 1)]
    dim2 = (level + 1) ** 2
    out = []
    for js in classes:
        def entry(r: int, c: int) -> RationalQ:
            acc = projs[js[0]][r][c]
            for j in js[1:]:
                acc = acc + projs[j][r][c]
            return acc

        try:
            mat = tuple(
                tuple(field.from_rational(entry(r, c)) for c in range(dim2))
                for r in range(dim2)
            )
        except ZeroDivisionError:
            raise ValueError("non-semisimple specialization") from None
        out.append((js, mat))
    return tuple(out)


@dataclass(frozen=True)
class RMatrix:
    """Sector-diagonal R-matrix: one scalar function of z per projector.

    Each sector scalar is a product of factors (c + d*z) over a like
    product; factors are stored as (c, d) LaurentQ pairs so consumers can
    clear denominators exactly.
    """

    level: int
    tag: str
    num_factors: tuple  # per sector j: tuple of (c, d) meaning c + d z
    den_factors: tuple

    def sector_value(self, j: int, z, field: CycloField | None = None):
        """The sector-j scalar at a rational z, over RationalQ or CycloQ."""
        lift, _, one = _scalar_ops(field)
        zval = Fraction(z)
        num = one
        for c, dcoef in self.num_factors[j]:
            num = num * lift(c + dcoef.scale(zval))
        den = one
        for c, dcoef in self.den_factors[j]:
            den = den * lift(c + dcoef.scale(zval))
        return num / den

    def value_matrix(self, z, field: CycloField | None = None) -> tuple:
        """The full matrix on V (x) V at a rational z.

        Cyclotomic values are obtained by specializing the symbolic
        matrix entry by entry.  At a root with [level+2] = 0 the entries
        stay finite (paired sector scalars agree identically there), but
        the limit carries a nilpotent piece on top of the naive
        shared-scalar times class-projector assembly, so summing over
        sector_projectors directly would drop it.
        """
        if field is not None:
            _check_semisimple(self.level, field)
            sym = self.value_matrix(z)
            try:
                return tuple(
                    tuple(field.from_rational(x) for x in row) for row in sym
                )
            except ZeroDivisionError:
                raise ValueError("non-semisimple specialization") from None
        zero = RationalQ.zero()
        dim2 = (self.level + 1) ** 2
        out = [[zero] * dim2 for _ in range(dim2)]
        for j, p in enumerate(spin_projectors(self.level)):
            s = self.sector_value(j, z)
            for r in range(dim2):
                for c in range(dim2):
                    if p[r][c]:
                        out[r][c] = out[r][c] + s * p[r][c]
        return tuple(tuple(r) for r in out)


@lru_cache(maxsize=None)
def rbar(level: int) -> RMatrix:
    """Normalization fixed to 1 on the highest spin sector j = level:

    sector j carries prod_{r=j+1}^{level} (z - q^(2r))/(1 - q^(2r) z).
    """
    num = []
    den = []
    for j in range(level + 1):
        num.append(
            tuple(
                (-LaurentQ.q_power(2 * r), LaurentQ.one())
                for r in range(j + 1, level + 1)
            )
        )
        den.append(
            tuple(
                (LaurentQ.one(), -LaurentQ.q_power(2 * r))
                for r in range(j + 1, level + 1)
            )
        )
    return RMatrix(level=level, tag="rbar", num_factors=tuple(num), den_factors=tuple(den))


@lru_cache(maxsize=None)
def rcheck_poly(level: int) -> RMatrix:
    """Normalization fixed to 1 on the singlet sector j = 0:

    sector j carries prod_{r=1}^{j} (1 - q^(2r) z)/(z - q^(2r)).
    """
    num = []
    den = []
    for j in range(level + 1):
        num.append(
            tuple(
                (LaurentQ.one(), -LaurentQ.q_power(2 * r))
                for r in range(1, j + 1)
            )
        )
        den.append(
            tuple(
                (-LaurentQ.q_power(2 * r), LaurentQ.one())
                for r in range(1, j + 1)
            )
        )
    return RMatrix(level=level, tag="rcheck_poly", num_factors=tuple(num), den_factors=tuple(den))


@lru_cache(maxsize=None)
def rcheck_cleared_coeffs(level: int, field: CycloField | None = None) -> tuple:
    """The two-site exchange matrix with denominators cleared, tabulated
    by powers of the two spectral parameters.

    Entry [r][c] is a tuple of ((dz, dw), scalar) pairs encoding the
    polynomial matrix sum_j prod_{r<=j} (w - q^(2r) z) prod_{j<r<=level}
    (z - q^(2r) w) P_j, which equals prod_{r=1}^{level} (z - q^(2r) w)
    times the value of rcheck_poly at argument z/w.  Cyclotomic tables
    specialize the symbolic coefficients entry by entry: the assembled
    sums stay finite at a matched root even where individual P_j blow up.
    """
    if field is not None:
        _check_semisimple(level, field)
        try:
            return tuple(
                tuple(
                    tuple((e, field.from_rational(v)) for e, v in ent)
                    for ent in row
                )
                for row in rcheck_cleared_coeffs(level)
            )
        except ZeroDivisionError:
            raise ValueError("non-semisimple specialization") from None
    one = LaurentQ.one()
    sector = []
    for j in range(level + 1):
        poly = {(0, 0): one}
        for r in range(1, level + 1):
            if r <= j:
                fac = (((0, 1), one), ((1, 0), -LaurentQ.q_power(2 * r)))
            else:
                fac = (((1, 0), one), ((0, 1), -LaurentQ.q_power(2 * r)))
            new: dict = {}
            for e1, v1 in poly.items():
                for e2, v2 in fac:
                    key = (e1[0] + e2[0], e1[1] + e2[1])
                    add = v1 * v2
                    cur = new.get(key)
                    cur = add if cur is None else cur + add
                    if cur:
                        new[key] = cur
                    elif key in new:
                        del new[key]
            poly = new
        sector.append(poly)
    dim2 = (level + 1) ** 2
    projs = spin_projectors(level)
    out = []
    for r in range(dim2):
        row = []
        for c in range(dim2):
            acc: dict = {}
            for j, p in enumerate(projs):
                if not p[r][c]:
                    continue
                for e, v in sector[j].items():
                    add = RationalQ(v) * p[r][c]
                    cur = acc.get(e)
                    cur = add if cur is None else cur + add
                    if cur:
                        acc[e] = cur
                    elif e in acc:
                        del acc[e]
            row.append(tuple(sorted(acc.items())))
        out.append(tuple(row))
    return tuple(out)


def twist_matrix(level: int, twist_k: int) -> tuple[LaurentQ, ...]:
    """Diagonal single-site twist (-q^(1+k))^(2b-level), b = 0..level."""
    if not 0 <= twist_k <= level:
        raise ValueError("twist must satisfy 0 <= k <= level")
    out = []
    for b in range(level + 1):
        e = 2 * b - level
        sign = 1 if e % 2 == 0 else -1
        out.append(LaurentQ.q_power((1 + twist_k) * e).scale(sign))
    return tuple(out)


def matrix_to_json(mat) -> dict:
    """Dense row-major export; entries use each scalar's own JSON form."""

    def scal(x):
        if isinstance(x, MPoly):
            return x.to_json()
        if isinstance(x, RationalQ):
            return {"num": x.num.to_json(), "den": x.den.to_json()}
        if isinstance(x, (LaurentQ, CycloQ)):
            return x.to_json()
        raise TypeError(f"cannot serialize {x!r}")

    return {
        "rows": len(mat),
        "cols": len(mat[0]) if mat else 0,
        "entries": [[scal(x) for x in row] for row in mat],
    }
