"""Brute-force residue evaluation of the nested contour representation.

Evaluates one vector component at exact rational (q, z) by walking the
contour picture literally: integration variables are consumed from the
last one inward, each either landing on a base point q^level z_s with s at
or past its own label, or descending one rung below a value some variable
further right already holds.  Every complete placement contributes the
residue of the raw integrand, term by term, with none of the grouping or
factored-denominator bookkeeping the library's lattice recursion uses, so
exact agreement between the two routes is meaningful.

The symmetric numerator is pluggable.  level1_product_numerator builds the
classical level-1 product form directly; macdonald_numerator expands the
staircase Macdonald polynomial monomial by monomial.
"""

from __future__ import annotations

from fractions import Fraction

from qkz.qarith import q_binomial, q_factorial
from qkz.sympoly import cleared_mcoeffs, distinct_permutations, staircase_macdonald


def eval_fraction(poly, q: Fraction, points) -> Fraction:
    """Evaluate a polynomial with LaurentQ or RationalQ coefficients."""
    total = Fraction(0)
    for e, c in poly.terms():
        m = c.eval_fraction(q)
        for x, p in zip(points, e):
            if p:
                m *= x**p
        total += m
    return total


def level1_product_numerator(n: int, twist_k: int):
    def p_eval(q: Fraction, w: list) -> Fraction:
        total = Fraction(1)
        for x in w:
            total *= x ** (1 - twist_k)
        q2 = q * q
        for i in range(n):
            for j in range(i + 1, n):
                total *= (w[i] - q2 * w[j]) * (w[i] - w[j] / q2)
        return total

    return p_eval


def macdonald_numerator(level: int, n: int, twist_k: int):
    den, pairs = cleared_mcoeffs(staircase_macdonald(level, n, twist_k).mcoeffs)
    nw = level * n

    def p_eval(q: Fraction, w: list) -> Fraction:
        total = Fraction(0)
        for mu, c in pairs:
            pad = tuple(mu) + (0,) * (nw - len(mu))
            msum = Fraction(0)
            for perm in distinct_permutations(pad):
                m = Fraction(1)
                for x, p in zip(w, perm):
                    if p:
                        m *= x**p
                msum += m
            total += c.eval_fraction(q) * msum
        return total / den.eval_fraction(q)

    return p_eval


def placements(level: int, n: int, eps) -> list:
    """Every admissible placement, as a tuple indexed by variable.

    Entry i-1 is a pair (s, d): variable i sits at q^(level-2d) z_s.  Depth
    0 needs s >= eps[i-1]; depth d >= 1 needs the value one rung up at the
    same site to be taken already, and no value is used twice.
    """
    nw = level * n
    sites = 2 * n
    out: list = []
    acc: list = [None] * nw
    taken: set = set()

    def rec(i: int) -> None:
        if i == 0:
            out.append(tuple(acc))
            return
        for s in range(1, sites + 1):
            for d in range(level):
                if d == 0 and s < eps[i - 1]:
                    continue
                if (s, d) in taken:
                    continue
                if d and (s, d - 1) not in taken:
                    continue
                taken.add((s, d))
                acc[i - 1] = (s, d)
                rec(i - 1)
                taken.discard((s, d))
                acc[i - 1] = None

    rec(nw)
    return out


def prefactor(level: int, n: int, twist_k: int, b, q: Fraction, z) -> Fraction:
    out = q ** (level * level * n * (n - 1) + n * level * (level - 1) // 2)
    out *= (
        q_factorial(twist_k).eval_fraction(q)
        * q_factorial(level - twist_k).eval_fraction(q)
    ) ** n
    for bi in b:
        a = (q - 1 / q) ** bi * q ** (bi * (2 * level - bi + 1) // 2)
        a *= q_binomial(level, bi).eval_fraction(q)
        out *= -a if bi % 2 else a
    for i in range(2 * n):
        out *= z[i] ** twist_k
    for i in range(2 * n):
        for j in range(i + 1, 2 * n):
            for r in range(1, level + 1):
                out *= q ** (2 * r) * z[j] - z[i]
    return out


def naive_component_value(
    level: int, n: int, twist_k: int, b, q: Fraction, z, p_eval=None
) -> Fraction:
    """Sum of residues times the polynomial prefactor, all over Fraction.

    The points z must be multiplicatively generic against q (distinct
    primes against a non-unit rational q do fine): then the only vanishing
    denominator factors are the ones each residue consumes.
    """
    if p_eval is None:
        p_eval = macdonald_numerator(level, n, twist_k)
    eps = tuple(j for j, x in enumerate(b, start=1) for _ in range(x))
    nw = level * n
    sites = 2 * n
    qln = q**level
    q2 = q * q
    total = Fraction(0)
    for place in placements(level, n, eps):
        vals = [q ** (level - 2 * d) * z[s - 1] for s, d in place]
        keys = [(level - 2 * d, s) for s, d in place]
        term = p_eval(q, vals)
        for i in range(nw):
            si, di = place[i]
            if di:
                term *= Fraction(-1) / q2
            parent = (level - 2 * di + 2, si)
            for j in range(i + 1, nw):
                term *= vals[j] - vals[i]
                if di and keys[j] == parent:
                    continue
                term /= vals[j] - q2 * vals[i]
            lab = eps[i]
            for j in range(1, lab + 1):
                term /= qln * vals[i] - z[j - 1]
            for j in range(lab, sites + 1):
                if di == 0 and j == si:
                    continue
                term /= vals[i] - qln * z[j - 1]
        total += term
    return prefactor(level, n, twist_k, b, q, z) * total
