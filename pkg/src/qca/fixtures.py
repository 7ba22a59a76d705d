"""Hard-coded seeds used by tests, scripts and the CLI ``fixture`` command."""

from __future__ import annotations

from . import intmat
from .seed import CompatibleTriple, ExtendedExchangeMatrix, QuantumSeed

FIXTURES = ("sl2", "ex5x2", "rank2free", "blockfree")


def sl2_seed() -> QuantumSeed:
    """Quantum SL(2): cluster (a, b, c) with a mutable, b and c frozen."""
    B = ((0,), (1,), (1,))
    L = ((0, -1, -1), (1, 0, 0), (1, 0, 0))
    return QuantumSeed(ExtendedExchangeMatrix(B), L)


def sl2_W(w1: int = 3, w2: int = 1) -> tuple:
    return ((0, -w1, -w2), (w1, 0, 0), (w2, 0, 0))


def sl2(w1: int = 3, w2: int = 1) -> CompatibleTriple:
    return CompatibleTriple(sl2_seed(), sl2_W(w1, w2))


def ex5x2(a: int = 1, b: int = 1) -> CompatibleTriple:
    """Rank-2 seed with three frozen rows; W has an extra block on the frozen rows
    where Lambda vanishes."""
    B = ((0, 1), (-1, 0), (1, 0), (1, 0), (1, 0))
    L = intmat.direct_sum(((0, 1), (-1, 0)), intmat.zeros(3, 3))
    W = intmat.direct_sum(((0, a), (-a, 0)), ((0, -b, b), (b, 0, -b), (-b, b, 0)))
    return CompatibleTriple(QuantumSeed(ExtendedExchangeMatrix(B), L), W)


def rank2free_seed() -> QuantumSeed:
    """Coefficient-free rank 2, B = Lambda = [[0,1],[-1,0]], B^T Lambda = I."""
    J = ((0, 1), (-1, 0))
    return QuantumSeed(ExtendedExchangeMatrix(J), J)


def rank2free(a: int = 1) -> CompatibleTriple:
    seed = rank2free_seed()
    return CompatibleTriple(seed, intmat.scale(seed.Lambda, a))


def blockfree_seed() -> QuantumSeed:
    """Coefficient-free 4x4 seed made of two blocks, [[0,1],[-1,0]] and [[0,2],[-1,0]].

    Lambda = J + J gives B^T Lambda = diag(1, 1, 1, 2), the minimal symmetrizer.
    """
    J = ((0, 1), (-1, 0))
    B = intmat.direct_sum(J, ((0, 2), (-1, 0)))
    L = intmat.direct_sum(J, J)
    return QuantumSeed(ExtendedExchangeMatrix(B), L)


def blockfree(a1: int = 1, a2: int = 1) -> CompatibleTriple:
    J = ((0, 1), (-1, 0))
    W = intmat.direct_sum(intmat.scale(J, a1), intmat.scale(J, a2))
    return CompatibleTriple(blockfree_seed(), W)


def get_fixture(name: str, **params) -> CompatibleTriple:
    if name == "sl2":
        return sl2(params.get("w1", 3), params.get("w2", 1))
    if name == "ex5x2":
        return ex5x2(params.get("a", 1), params.get("b", 1))
    if name == "rank2free":
        return rank2free(params.get("a", 1))
    if name == "blockfree":
        return blockfree(params.get("a1", 1), params.get("a2", 1))
    raise KeyError(f"unknown fixture {name!r}; choose from {', '.join(FIXTURES)}")
