"""Explicit product forms for distinguished vector components.

Everything here is assembled directly from binomial factors, with no use of
the residue machinery, so golden tests compare two genuinely different
routes to the same polynomial.
"""

from __future__ import annotations

from qkz.mpoly import LAURENT_DOMAIN, MPoly
from qkz.qarith import LaurentQ


def _unit(sites: int, i: int) -> tuple:
    return tuple(1 if t == i else 0 for t in range(sites))


def zbinom(sites: int, j: int, e: int, i: int) -> MPoly:
    """z_j - q^e z_i (1-based indices)."""
    return MPoly(
        sites,
        LAURENT_DOMAIN,
        {_unit(sites, j - 1): LaurentQ.one(), _unit(sites, i - 1): -LaurentQ.q_power(e)},
    )


def component_1210() -> MPoly:
    out = zbinom(4, 1, 2, 2) * zbinom(4, 2, 2, 3) * zbinom(4, 3, 2, 4) * zbinom(4, 1, 6, 4)
    return out.scale(LaurentQ.q_power(1) + LaurentQ.q_power(3))


def component_1201() -> MPoly:
    q = LaurentQ.q_power
    mid = MPoly(
        4,
        LAURENT_DOMAIN,
        {
            (1, 1, 0, 0): q(2),
            (1, 0, 1, 0): LaurentQ.one() - q(4),
            (0, 1, 1, 0): -q(4),
            (1, 0, 0, 1): -q(4),
            (0, 0, 1, 1): q(10),
        },
    )
    out = zbinom(4, 1, 2, 2) * zbinom(4, 3, 2, 4) * mid
    return out.scale(-(q(1) + q(3)))


def simple_component(level: int, n: int, twist_k: int) -> MPoly:
    """The component with spins 0 on the first n sites and level on the rest."""
    sites = 2 * n
    c = LaurentQ.q_power((level - twist_k) * n + level * n * (n - level) // 2)
    if (level * n * (n + 1) // 2) % 2:
        c = -c
    exps = tuple(twist_k if i < n else 0 for i in range(sites))
    out = MPoly.monomial(sites, LAURENT_DOMAIN, exps, c)
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            for r in range(1, level + 1):
                # (q^2r z_j - z_i) = q^2r (z_j - q^-2r z_i)
                out = out * zbinom(sites, j, -2 * r, i).scale(LaurentQ.q_power(2 * r))
                out = out * zbinom(sites, n + j, -2 * r, n + i).scale(LaurentQ.q_power(2 * r))
    return out


def rotated_next(prev: MPoly, level: int, n: int, twist_k: int, last_spin: int) -> MPoly:
    """Component at (b[-1],) + b[:-1] from the component at b.

    Cyclic covariance moves the last argument to the front at the price of
    a q-power shift of that argument and a scalar phase, so an explicit
    product form stays an explicit product form under rotation.
    """
    sites = 2 * n
    images = [(1, _unit(sites, i)) for i in range(1, sites)]
    images.append((LaurentQ.q_power(-2 * (level + 2)), _unit(sites, 0)))
    out = prev.subst_monomial(images)
    e = (1 + twist_k) * (2 * last_spin - level) - (level + 2) * ((n - 1) * level + twist_k)
    c = LaurentQ.q_power(-e)
    if level % 2:
        c = -c
    return out.scale(c)
