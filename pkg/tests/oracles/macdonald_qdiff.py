"""Independent Macdonald-polynomial oracle via the q-difference operator.

Implemented entirely with sympy so it shares no code with the library under
test.  The route is also different: instead of orthogonalization, P_lambda
is recovered as the unique monic dominance-triangular eigenfunction of the
Macdonald operator

    D f = sum_i [ prod_{j != i} (t x_i - x_j)/(x_i - x_j) ] f|_{x_i -> q x_i}

with eigenvalue  e_lambda = sum_i q^{lambda_i} t^{N-i}.

Works at exact rational (q, t).  Run as a script to print the frozen
coefficient tables used in the test-suite.
"""

from __future__ import annotations

from functools import lru_cache

import sympy as sp


def partitions_of(d: int, max_part: int | None = None) -> list[tuple[int, ...]]:
    if d == 0:
        return [()]
    out = []
    mp = d if max_part is None else min(d, max_part)
    for first in range(mp, 0, -1):
        for rest in partitions_of(d - first, first):
            out.append((first,) + rest)
    return out


def dominates(lam: tuple[int, ...], mu: tuple[int, ...]) -> bool:
    """lam >= mu in dominance order (same size)."""
    a = b = 0
    for i in range(max(len(lam), len(mu))):
        a += lam[i] if i < len(lam) else 0
        b += mu[i] if i < len(mu) else 0
        if a < b:
            return False
    return True


def _distinct_perms(seq):
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


def monomial_sym(mu: tuple[int, ...], xs) -> sp.Expr:
    n = len(xs)
    if len(mu) > n:
        return sp.Integer(0)
    padded = list(mu) + [0] * (n - len(mu))
    total = sp.Integer(0)
    for perm in _distinct_perms(padded):
        term = sp.Integer(1)
        for x, e in zip(xs, perm):
            if e:
                term *= x**e
        total += term
    return total


def apply_macdonald_operator(f: sp.Expr, xs, q, t) -> sp.Expr:
    """D f, returned as an expanded polynomial (the division is exact)."""
    n = len(xs)
    vand = sp.prod(xs[j] - xs[k] for j in range(n) for k in range(j + 1, n))
    total = sp.Integer(0)
    for i in range(n):
        shifted = f.subs(xs[i], q * xs[i], simultaneous=True)
        coeff = sp.prod(t * xs[i] - xs[j] for j in range(n) if j != i)
        minor = sp.prod(
            xs[j] - xs[k]
            for j in range(n)
            for k in range(j + 1, n)
            if i not in (j, k)
        )
        total += sp.Integer(-1) ** i * coeff * shifted * minor
    quo, rem = sp.div(sp.expand(total), vand, *xs)
    assert rem == 0, "Macdonald operator did not produce a polynomial"
    return sp.expand(quo)


def to_m_basis(f: sp.Expr, d: int, xs) -> dict[tuple[int, ...], sp.Rational]:
    """Coefficients of a degree-d symmetric polynomial on the m basis."""
    poly = sp.Poly(f, *xs)
    out: dict[tuple[int, ...], sp.Rational] = {}
    for mu in partitions_of(d):
        if len(mu) > len(xs):
            continue
        exps = tuple(list(mu) + [0] * (len(xs) - len(mu)))
        c = poly.coeff_monomial(sp.prod(x**e for x, e in zip(xs, exps)))
        if c:
            out[mu] = sp.Rational(c)
    return out


@lru_cache(maxsize=None)
def macdonald_m_coeffs(
    lam: tuple[int, ...], nvars: int, q: sp.Rational, t: sp.Rational
) -> dict[tuple[int, ...], sp.Rational]:
    """m-basis coefficients of the monic P_lam(x_1..x_nvars; q, t)."""
    q, t = sp.Rational(q), sp.Rational(t)
    d = sum(lam)
    xs = sp.symbols(f"x1:{nvars + 1}")
    downset = [
        mu
        for mu in partitions_of(d)
        if len(mu) <= nvars and dominates(lam, mu)
    ]

    def eig(mu):
        return sum(
            q ** (mu[i] if i < len(mu) else 0) * t ** (nvars - 1 - i)
            for i in range(nvars)
        )

    dmat = {}
    for mu in downset:
        dmat[mu] = to_m_basis(
            apply_macdonald_operator(monomial_sym(mu, xs), xs, q, t), d, xs
        )
        assert dmat[mu].get(mu) == eig(mu), "operator not triangular as expected"
    e_lam = eig(lam)
    coeffs: dict[tuple[int, ...], sp.Rational] = {lam: sp.Rational(1)}
    # triangular back-substitution in decreasing dominance
    order = sorted(downset, reverse=True)
    for mu in order:
        if mu == lam:
            continue
        upper = sum(
            dmat[nu].get(mu, 0) * coeffs[nu]
            for nu in coeffs
            if nu != mu
        )
        denom = e_lam - eig(mu)
        assert denom != 0, "non-generic (q,t) for the oracle"
        coeffs[mu] = sp.Rational(upper, 1) / denom
    return {mu: c for mu, c in coeffs.items() if c}


def macdonald_poly(lam, nvars, q, t) -> sp.Expr:
    xs = sp.symbols(f"x1:{nvars + 1}")
    coeffs = macdonald_m_coeffs(tuple(lam), nvars, sp.Rational(q), sp.Rational(t))
    return sp.expand(
        sum(c * monomial_sym(mu, xs) for mu, c in coeffs.items())
    )


if __name__ == "__main__":
    # Frozen tables for the test-suite (printed once, pasted into tests).
    cases = [
        ((2,), 2, sp.Rational(2, 3), sp.Rational(5, 7)),
        ((2,), 3, sp.Rational(2, 3), sp.Rational(5, 7)),
        ((1, 1), 2, sp.Rational(2, 3), sp.Rational(5, 7)),
        ((2, 1), 3, sp.Rational(2, 3), sp.Rational(5, 7)),
        ((3, 1), 4, sp.Rational(3, 5), sp.Rational(2, 7)),
        ((2, 2), 4, sp.Rational(3, 5), sp.Rational(2, 7)),
        ((3, 3, 1, 1), 4, sp.Rational(1, 2), sp.Rational(1, 4)),
    ]
    for lam, n, q, t in cases:
        cs = macdonald_m_coeffs(lam, n, q, t)
        pretty = {mu: str(c) for mu, c in sorted(cs.items(), reverse=True)}
        print(f"lam={lam} N={n} q={q} t={t}: {pretty}")
