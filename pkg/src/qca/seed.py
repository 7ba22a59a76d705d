"""Seeds, compatible triples, Poisson matrices, and their mutations.

Indices are 0-based everywhere: mutable directions are 0..n-1 and frozen
rows are n..m-1.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Union

from . import intmat
from .errors import (
    DimensionMismatch,
    DirectionOutOfRange,
    MalformedInput,
    NotCompatible,
)
from .intmat import Matrix
from .laurent import LaurentV


def _pos(x: int) -> int:
    return x if x > 0 else 0


def _sgn(x: int) -> int:
    return (x > 0) - (x < 0)


@dataclass(frozen=True)
class ExtendedExchangeMatrix:
    """m x n integer matrix whose top n x n block is skew-symmetrizable."""

    B: Matrix

    def __post_init__(self):
        B = intmat.as_matrix(self.B)
        object.__setattr__(self, "B", B)
        m, n = intmat.shape(B)
        if m == 0 or n == 0:
            raise MalformedInput("exchange matrix must have positive dimensions")
        if n > m:
            raise MalformedInput(f"more mutable columns ({n}) than rows ({m})")
        intmat.skew_symmetrizer(self.principal)

    @classmethod
    def _unchecked(cls, B: Matrix) -> "ExtendedExchangeMatrix":
        obj = object.__new__(cls)
        object.__setattr__(obj, "B", B)
        return obj

    @property
    def m(self) -> int:
        return len(self.B)

    @property
    def n(self) -> int:
        return len(self.B[0])

    @property
    def principal(self) -> Matrix:
        return self.B[: len(self.B[0])]

    def symmetrizer(self) -> tuple:
        return intmat.skew_symmetrizer(self.principal)

    def column(self, k: int) -> tuple:
        return tuple(row[k] for row in self.B)


@dataclass(frozen=True)
class QuantumSeed:
    """Compatible pair (B~, Lambda); C1 is checked at construction."""

    ex: ExtendedExchangeMatrix
    Lambda: Matrix

    def __post_init__(self):
        if not isinstance(self.ex, ExtendedExchangeMatrix):
            object.__setattr__(self, "ex", ExtendedExchangeMatrix(self.ex))
        L = intmat.as_matrix(self.Lambda)
        object.__setattr__(self, "Lambda", L)
        m = self.ex.m
        if intmat.shape(L) != (m, m):
            raise DimensionMismatch(f"Lambda must be {m}x{m}, got {intmat.shape(L)}")
        if not intmat.is_skew_symmetric(L):
            raise MalformedInput("Lambda is not skew-symmetric")
        from .compat import check_C1

        ok, _ = check_C1(self)
        if not ok:
            raise NotCompatible("(B~, Lambda) violates C1: B~^T Lambda is not (D 0)")

    @classmethod
    def _unchecked(cls, ex: ExtendedExchangeMatrix, Lambda: Matrix) -> "QuantumSeed":
        obj = object.__new__(cls)
        object.__setattr__(obj, "ex", ex)
        object.__setattr__(obj, "Lambda", Lambda)
        return obj

    @property
    def B(self) -> Matrix:
        return self.ex.B

    @property
    def m(self) -> int:
        return self.ex.m

    @property
    def n(self) -> int:
        return self.ex.n


@dataclass(frozen=True)
class CompatibleTriple:
    """(B~, Lambda, W). Only C1* is checked eagerly; full compatibility
    quantifies over the mutation class and is the bounded verifier's job."""

    seed: QuantumSeed
    W: Matrix

    def __post_init__(self):
        W = intmat.as_matrix(self.W)
        object.__setattr__(self, "W", W)
        m = self.seed.m
        if intmat.shape(W) != (m, m):
            raise DimensionMismatch(f"W must be {m}x{m}, got {intmat.shape(W)}")
        if not intmat.is_skew_symmetric(W):
            raise MalformedInput("W is not skew-symmetric")
        from .compat import check_C1star

        ok, _ = check_C1star(self)
        if not ok:
            raise NotCompatible("(B~, W) violates C1*: B~^T W is not c(D 0)")

    @classmethod
    def _unchecked(cls, seed: QuantumSeed, W: Matrix) -> "CompatibleTriple":
        obj = object.__new__(cls)
        object.__setattr__(obj, "seed", seed)
        object.__setattr__(obj, "W", W)
        return obj

    @property
    def B(self) -> Matrix:
        return self.seed.B

    @property
    def Lambda(self) -> Matrix:
        return self.seed.Lambda

    @property
    def m(self) -> int:
        return self.seed.m

    @property
    def n(self) -> int:
        return self.seed.n

    def key(self) -> tuple:
        return (self.seed.B, self.seed.Lambda, self.W)


@dataclass(frozen=True)
class PoissonMatrix:
    """Skew-symmetric m x m matrix over Z[v^{+-1}]."""

    Omega: tuple

    def __post_init__(self):
        rows = tuple(tuple(x if isinstance(x, LaurentV) else LaurentV.constant(x) for x in r)
                     for r in self.Omega)
        m = len(rows)
        if any(len(r) != m for r in rows):
            raise DimensionMismatch("Poisson matrix must be square")
        for i in range(m):
            if rows[i][i]:
                raise MalformedInput(f"nonzero diagonal omega_{i}{i}")
            for j in range(i + 1, m):
                if rows[i][j] != -rows[j][i]:
                    raise MalformedInput(f"Omega not skew-symmetric at ({i},{j})")
        object.__setattr__(self, "Omega", rows)

    @classmethod
    def zero(cls, m: int) -> "PoissonMatrix":
        z = LaurentV.zero()
        return cls(tuple((z,) * m for _ in range(m)))

    @property
    def m(self) -> int:
        return len(self.Omega)

    def __getitem__(self, ij):
        i, j = ij
        return self.Omega[i][j]


MutationSequence = Sequence[int]


def _check_direction(k: int, n: int) -> None:
    if not isinstance(k, int) or isinstance(k, bool) or not 0 <= k < n:
        raise DirectionOutOfRange(f"direction {k!r} not in [0, {n})")


# ---------------------------------------------------------------- matrix rules

def _mutate_B_matrix(B: Matrix, k: int) -> Matrix:
    out = []
    for i, row in enumerate(B):
        bik = row[k]
        new = []
        for j, bij in enumerate(row):
            if i == k or j == k:
                new.append(-bij)
            else:
                new.append(bij + _sgn(bik) * _pos(bik * B[k][j]))
        out.append(tuple(new))
    return tuple(out)


def mutate_B(ex: ExtendedExchangeMatrix, k: int) -> ExtendedExchangeMatrix:
    """Matrix mutation: negate row/column k, else b_ij + sgn(b_ik)[b_ik b_kj]_+."""
    _check_direction(k, ex.n)
    return ExtendedExchangeMatrix._unchecked(_mutate_B_matrix(ex.B, k))


def _mutate_skew(M: Matrix, B: Matrix, k: int) -> Matrix:
    """Shared rule for Lambda, W and the classical Poisson matrix.

    Row k becomes -M_kj + sum_l [b_lk]_+ M_lj; column k follows by skew-symmetry.
    ``B`` is the pre-mutation exchange matrix.
    """
    m = len(M)
    col = [_pos(B[l][k]) for l in range(m)]
    rowk = [-M[k][j] + sum(col[l] * M[l][j] for l in range(m) if col[l]) for j in range(m)]
    rowk[k] = 0
    out = [list(r) for r in M]
    for j in range(m):
        if j != k:
            out[k][j] = rowk[j]
            out[j][k] = -rowk[j]
    out[k][k] = 0
    return tuple(map(tuple, out))


def mutate_Lambda(seed: QuantumSeed, k: int) -> Matrix:
    _check_direction(k, seed.n)
    return _mutate_skew(seed.Lambda, seed.B, k)


def mutate_W(triple: CompatibleTriple, k: int) -> Matrix:
    _check_direction(k, triple.n)
    return _mutate_skew(triple.W, triple.B, k)


def mutate_Omega_nonquantum(Psi: Matrix, ex: ExtendedExchangeMatrix, k: int) -> Matrix:
    """Mutation of an integer Poisson matrix of a (non-quantum) cluster algebra."""
    _check_direction(k, ex.n)
    if intmat.shape(Psi) != (ex.m, ex.m):
        raise DimensionMismatch("Psi must be m x m")
    return _mutate_skew(Psi, ex.B, k)


def mutate_Omega_direct(Omega: PoissonMatrix, seed: QuantumSeed, k: int) -> PoissonMatrix:
    """Closed-form mutation of a quantum Poisson matrix in direction k.

    omega'_kj = v^(lambda_jk - sum_t [b_tk]_+ lambda_jt) * H_j with

        H_j = sum_{b_tk > 0} omega_tj v^(lambda_jt)
                  sum_{h=1}^{b_tk} v^(2 sum_{i >= t} ([b_ik]_+ - delta_ik) lambda_ji - 2 h lambda_jt)
              - omega_kj v^(lambda_kj + 2 sum_{i > k} lambda_ji [b_ik]_+)

    Entries off row/column k are unchanged. The value is returned even when
    Omega is not compatible at this seed; certifying that is compat's job.
    """
    _check_direction(k, seed.n)
    m = seed.m
    if Omega.m != m:
        raise DimensionMismatch("Omega and seed sizes differ")
    B, L, W = seed.B, seed.Lambda, Omega.Omega
    plus = [_pos(B[i][k]) for i in range(m)]
    shifted = [plus[i] - (i == k) for i in range(m)]
    out = [list(r) for r in W]
    for j in range(m):
        if j == k:
            continue
        H = LaurentV.zero()
        # tail[t] = sum_{i >= t} ([b_ik]_+ - delta_ik) lambda_ji
        tail = [0] * (m + 1)
        for i in range(m - 1, -1, -1):
            tail[i] = tail[i + 1] + shifted[i] * L[j][i]
        for t in range(m):
            if B[t][k] > 0 and W[t][j]:
                inner = LaurentV([(2 * tail[t] - 2 * h * L[j][t], 1) for h in range(1, B[t][k] + 1)])
                H = H + W[t][j] * inner.shift(L[j][t])
        if W[k][j]:
            e = L[k][j] + 2 * sum(L[j][i] * plus[i] for i in range(k + 1, m))
            H = H - W[k][j].shift(e)
        pref = L[j][k] - sum(plus[t] * L[j][t] for t in range(m))
        new = H.shift(pref)
        out[k][j] = new
        out[j][k] = -new
    return PoissonMatrix(tuple(map(tuple, out)))


# ---------------------------------------------------------------- sequences

def mutate_seed(seed: QuantumSeed, k: int) -> QuantumSeed:
    _check_direction(k, seed.n)
    # Lambda uses the pre-mutation B~, so compute it before replacing B~
    L = _mutate_skew(seed.Lambda, seed.B, k)
    return QuantumSeed._unchecked(mutate_B(seed.ex, k), L)


def mutate_triple(triple: CompatibleTriple, k: int) -> CompatibleTriple:
    _check_direction(k, triple.n)
    W = _mutate_skew(triple.W, triple.B, k)
    return CompatibleTriple._unchecked(mutate_seed(triple.seed, k), W)


def apply_sequence(obj: Union[QuantumSeed, CompatibleTriple], seq: MutationSequence):
    """Mutate left to right along ``seq``; returns the same type as ``obj``."""
    step = mutate_triple if isinstance(obj, CompatibleTriple) else mutate_seed
    for k in seq:
        obj = step(obj, k)
    return obj


def apply_sequence_with_omega(triple_or_seed, Omega: PoissonMatrix, seq: MutationSequence):
    """Mutate a seed (or triple) together with a Poisson matrix via the closed form."""
    obj = triple_or_seed
    for k in seq:
        seed = obj.seed if isinstance(obj, CompatibleTriple) else obj
        Omega = mutate_Omega_direct(Omega, seed, k)
        obj = mutate_triple(obj, k) if isinstance(obj, CompatibleTriple) else mutate_seed(obj, k)
    return obj, Omega
