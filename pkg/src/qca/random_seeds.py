"""Random seeds and compatible triples for property tests and sweeps.

All generators take a ``random.Random`` so runs are reproducible.
"""

from __future__ import annotations

import random
from typing import Optional

from . import intmat
from .compat import check_C2_C3, check_C4_global_W, omega_from_W, verify_triple_bounded
from .errors import NotIntegralOmega, QCAError
from .laurent import LaurentV, q_analog
from .seed import CompatibleTriple, ExtendedExchangeMatrix, PoissonMatrix, QuantumSeed


def random_principal(rng: random.Random, n: int, bound: int = 3) -> tuple:
    """Skew-symmetrizable n x n matrix S E with S skew and E positive diagonal."""
    E = [rng.choice((1, 1, 1, 2, 3)) for _ in range(n)]
    B = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            lim = bound // max(E[i], E[j])
            s = rng.randint(-lim, lim)
            B[i][j] = s * E[j]
            B[j][i] = -s * E[i]
    return tuple(map(tuple, B))


def random_exchange(rng: random.Random, m: int, n: int, bound: int = 3) -> ExtendedExchangeMatrix:
    top = random_principal(rng, n, bound)
    frozen = tuple(tuple(rng.randint(-bound, bound) for _ in range(n)) for _ in range(m - n))
    return ExtendedExchangeMatrix(top + frozen)


def _lattice(ex: ExtendedExchangeMatrix):
    # same equations as for W: B~^T X = (diag(c_r D0) 0)
    from .structure import second_deformation_lattice

    dummy = QuantumSeed._unchecked(ex, intmat.zeros(ex.m, ex.m))
    return second_deformation_lattice(dummy)


def _combine(rng, basis, coeff_bound):
    m = len(basis[0][0])
    X = intmat.zeros(m, m)
    c = (0,) * len(basis[0][1])
    for Xb, cb in basis:
        a = rng.randint(-coeff_bound, coeff_bound)
        if a:
            X = intmat.add(X, intmat.scale(Xb, a))
            c = tuple(x + a * y for x, y in zip(c, cb))
    return X, c


def lambda_for(rng: random.Random, ex: ExtendedExchangeMatrix, tries: int = 40,
               coeff_bound: int = 2) -> Optional[tuple]:
    """A random Lambda with B~^T Lambda = (diag(d_r D0) 0), all d_r > 0, or None."""
    basis = _lattice(ex)
    if not basis:
        return None
    for _ in range(tries):
        L, d = _combine(rng, basis, coeff_bound)
        if all(x > 0 for x in d):
            return L
    return None


def random_quantum_seed(rng: random.Random, m_max: int = 6, n_max: int = 4,
                        bound: int = 3, max_tries: int = 500) -> QuantumSeed:
    for _ in range(max_tries):
        n = rng.randint(1, n_max)
        m = rng.randint(n, m_max)
        ex = random_exchange(rng, m, n, bound)
        L = lambda_for(rng, ex)
        if L is not None:
            return QuantumSeed(ex, L)
    raise RuntimeError("no compatible pair found; widen the sampling bounds")


def random_compatible_triple(rng: random.Random, m_max: int = 4, n_max: int = 3,
                             depth: int = 3, coeff_bound: int = 2,
                             max_tries: int = 2000, bound: int = 3) -> CompatibleTriple:
    """A triple passing C1, C1*, C2, C3 to ``depth``, root C4, with integral Omega.

    W is drawn from the C1* lattice, so both W = a Lambda and genuinely
    different W occur.
    """
    for _ in range(max_tries):
        seed = random_quantum_seed(rng, m_max, n_max, bound)
        basis = _lattice(seed.ex)
        W, _ = _combine(rng, basis, coeff_bound)
        if rng.random() < 0.25:
            W = intmat.scale(seed.Lambda, rng.randint(-2, 2))
        try:
            triple = CompatibleTriple(seed, W)
            omega_from_W(W, seed.Lambda)
        except (NotIntegralOmega, QCAError):
            continue
        if not check_C2_C3(triple)[0] or not check_C4_global_W(triple)[0]:
            continue
        if verify_triple_bounded(triple, depth).ok:
            return triple
    raise RuntimeError("no compatible triple found; widen the sampling bounds")


def random_torus_bracket(rng: random.Random, Lambda) -> PoissonMatrix:
    """A random Omega that is a genuine bracket on the torus of Lambda.

    Such Omega are f_r [lambda_ij] on each connected component of the graph
    lambda_ij != 0, with one Laurent scalar f_r per component, plus arbitrary
    integer constants between vertices isolated in that graph.
    """
    from .structure import _union_find_blocks

    m = len(Lambda)
    edges = [(i, j) for i in range(m) for j in range(i + 1, m) if Lambda[i][j]]
    comps = _union_find_blocks(m, edges)
    isolated = {c[0] for c in comps if len(c) == 1}
    scalars = (LaurentV.zero(), LaurentV.one(), LaurentV.constant(2), LaurentV.constant(-1),
               LaurentV.monomial(1), LaurentV.monomial(-1, 3))
    f = {}
    for comp in comps:
        g = rng.choice(scalars)
        for i in comp:
            f[i] = g
    rows = [[LaurentV.zero()] * m for _ in range(m)]
    for i in range(m):
        for j in range(i + 1, m):
            if Lambda[i][j]:
                x = f[i] * q_analog(Lambda[i][j])
            elif i in isolated and j in isolated:
                x = LaurentV.constant(rng.randint(-2, 2))
            else:
                continue
            rows[i][j], rows[j][i] = x, -x
    return PoissonMatrix(tuple(map(tuple, rows)))
