"""Block structure, triviality, the space of second deformation matrices,
C-matrices and the cluster-extension construction."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Optional, Sequence

from . import intmat
from .compat import CompatReport, omega_from_W, verify_triple_bounded
from .errors import (
    DimensionMismatch,
    DirectionOutOfRange,
    MalformedInput,
    NoNonzeroP,
    NotIndecomposable,
    NotIntegralOmega,
    SignCoherenceViolation,
    SizeBound,
)
from .intmat import Matrix
from .laurent import q_analog
from .seed import CompatibleTriple, ExtendedExchangeMatrix, QuantumSeed, _mutate_B_matrix


# ---------------------------------------------------------------- decomposition

@dataclass(frozen=True)
class Block:
    indices: tuple
    mutable: tuple  # the members that are mutable, i.e. < n
    B: Matrix       # rows `indices`, columns `mutable`
    Lambda: Matrix
    W: Optional[Matrix] = None


@dataclass(frozen=True)
class Decomposition:
    blocks: tuple
    theta: dict  # (a, b) with a < b -> Lambda[I_a, I_b]

    @classmethod
    def from_matrices(cls, B: Matrix, Lambda: Matrix, W: Optional[Matrix], parts) -> "Decomposition":
        """Build a decomposition along a given partition; no connectivity check."""
        n = len(B[0])
        blocks = []
        for I in parts:
            I = tuple(sorted(I))
            mut = tuple(i for i in I if i < n)
            blocks.append(Block(
                indices=I,
                mutable=mut,
                B=intmat.submatrix(B, I, mut),
                Lambda=intmat.submatrix(Lambda, I, I),
                W=None if W is None else intmat.submatrix(W, I, I),
            ))
        theta = {}
        for a in range(len(blocks)):
            for b in range(a + 1, len(blocks)):
                theta[(a, b)] = intmat.submatrix(Lambda, blocks[a].indices, blocks[b].indices)
        return cls(tuple(blocks), theta)

    def parts(self) -> list:
        return [list(b.indices) for b in self.blocks]


def _union_find_blocks(m: int, edges) -> list:
    parent = list(range(m))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i, j in edges:
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[max(ri, rj)] = min(ri, rj)
    groups: dict = {}
    for i in range(m):
        groups.setdefault(find(i), []).append(i)
    return sorted(groups.values(), key=lambda g: g[0])


def decompose(obj) -> Decomposition:
    """Split [0, m) along the relation i ~ j iff b_ij != 0 (j mutable).

    Frozen rows join the block of every mutable column they touch.
    Blocks are ordered by smallest member.
    """
    if isinstance(obj, CompatibleTriple):
        seed, W = obj.seed, obj.W
    else:
        seed, W = obj, None
    B = seed.B
    edges = [(i, j) for i in range(seed.m) for j in range(seed.n) if B[i][j]]
    return Decomposition.from_matrices(B, seed.Lambda, W, _union_find_blocks(seed.m, edges))


def theta_check(dec: Decomposition) -> bool:
    """Each off-block slice Theta of Lambda satisfies B_{I_a}^T Theta = 0 and Theta B_{I_b} = 0."""
    for (a, b), T in dec.theta.items():
        Ba, Bb = dec.blocks[a].B, dec.blocks[b].B
        if Ba and Ba[0] and not intmat.is_zero(intmat.matmul(intmat.transpose(Ba), T)):
            return False
        if Bb and Bb[0] and not intmat.is_zero(intmat.matmul(T, Bb)):
            return False
    return True


# ---------------------------------------------------------------- triviality

@dataclass(frozen=True)
class TrivialityVerdict:
    trivial: bool
    blocks: tuple  # ((indices, a), ...) with a a Fraction, or a=None on the failing block
    witness: Optional[tuple] = None  # (block indices, (i, j)) of the first violation

    def to_dict(self) -> dict:
        def enc(a):
            if a is None:
                return None
            return a.numerator if a.denominator == 1 else f"{a.numerator}/{a.denominator}"

        return {
            "trivial": self.trivial,
            "blocks": [{"indices": list(I), "a": enc(a)} for I, a in self.blocks],
            "witness": None if self.witness is None else
            {"block": list(self.witness[0]), "entry": list(self.witness[1])},
        }


def classify_triviality(Lambda: Matrix, W: Matrix) -> TrivialityVerdict:
    """Decide whether W and Lambda split simultaneously with W_i = a_i Lambda_i.

    The finest common splitting is given by the connected components of the
    graph with an edge i - j when lambda_ij != 0 or W_ij != 0; the pair is
    trivial iff W = a Lambda on each component. A component on which Lambda
    vanishes but W does not is therefore non-trivial. The scalar a is
    allowed to be rational (a Lambda_i must still be an integer matrix).
    """
    Lambda = intmat.as_matrix(Lambda)
    W = intmat.as_matrix(W)
    m = len(Lambda)
    if intmat.shape(W) != (m, m) or intmat.shape(Lambda) != (m, m):
        raise DimensionMismatch("Lambda and W must be square of the same size")
    edges = [(i, j) for i in range(m) for j in range(i + 1, m) if Lambda[i][j] or W[i][j]]
    out = []
    witness = None
    for comp in _union_find_blocks(m, edges):
        pairs = [(i, j) for i in comp for j in comp if i < j]
        ref = next(((i, j) for i, j in pairs if Lambda[i][j]), None)
        if ref is None:
            a = Fraction(0)
        else:
            a = Fraction(W[ref[0]][ref[1]], Lambda[ref[0]][ref[1]])
        bad = next(((i, j) for i, j in pairs if W[i][j] != a * Lambda[i][j]), None)
        if bad is not None:
            out.append((tuple(comp), None))
            if witness is None:
                witness = (tuple(comp), bad)
        else:
            out.append((tuple(comp), a))
    return TrivialityVerdict(witness is None, tuple(out), witness)


# ---------------------------------------------------------------- W solver

@dataclass(frozen=True)
class WCandidate:
    W: Matrix
    c: tuple                 # per-component scalar of B~^T W = c (D0 0)
    coefficients: tuple      # combination of lattice basis vectors giving W
    integral_omega: bool     # omega_from_W succeeds
    certified: bool          # bounded verification passed
    trivial: bool
    report: Optional[CompatReport] = None

    def to_dict(self) -> dict:
        return {
            "coefficients": list(self.coefficients),
            "W": [list(r) for r in self.W],
            "c": list(self.c),
            "integral_omega": self.integral_omega,
            "certified": self.certified,
            "trivial": self.trivial,
            "report": None if self.report is None else self.report.to_dict(),
        }


def second_deformation_lattice(seed: QuantumSeed) -> list:
    """Integer lattice of (W, c) with B~^T W = (diag(c_r D0) 0), W skew.

    Unknowns are W_ij for i < j in row order followed by one c per
    component of the principal part. Returns a list of (W, c) pairs forming
    a lattice basis in canonical (HNF) order.
    """
    B, m, n = seed.B, seed.m, seed.n
    D0 = seed.ex.symmetrizer()
    comps = intmat.symmetrizer_components(B[:n])
    comp_of = {h: r for r, comp in enumerate(comps) for h in comp}
    pairs = [(i, j) for i in range(m) for j in range(i + 1, m)]
    idx = {p: t for t, p in enumerate(pairs)}
    N = len(pairs) + len(comps)
    rows = []
    for h in range(n):
        for j in range(m):
            row = [0] * N
            for i in range(m):
                if B[i][h] and i != j:
                    if i < j:
                        row[idx[(i, j)]] += B[i][h]
                    else:
                        row[idx[(j, i)]] -= B[i][h]
            if j == h:
                row[len(pairs) + comp_of[h]] -= D0[h]
            rows.append(tuple(row))
    basis = intmat.integer_nullspace(tuple(rows), ncols=N)
    out = []
    for vec in basis:
        W = intmat.skew_from_upper(vec[: len(pairs)], m)
        out.append((W, tuple(vec[len(pairs):])))
    return out


def _candidate(seed: QuantumSeed, W: Matrix, c: tuple, coeffs: tuple, depth: int) -> WCandidate:
    try:
        omega_from_W(W, seed.Lambda)
        integral = True
    except NotIntegralOmega:
        integral = False
    triple = CompatibleTriple(seed, W)
    report = verify_triple_bounded(triple, depth) if integral else None
    verdict = classify_triviality(seed.Lambda, W)
    return WCandidate(W, c, coeffs, integral, bool(report and report.ok), verdict.trivial, report)


def solve_second_deformations(seed: QuantumSeed, depth: int = 4,
                              combinations: Sequence[Sequence[int]] = ()) -> list:
    """All second deformation matrices compatible with ``seed`` in C1* form,
    each basis vector (and each requested integer combination) certified to
    ``depth``. Candidates whose Poisson matrix is not integral are reported
    uncertified."""
    basis = second_deformation_lattice(seed)
    out = []
    r = len(basis)
    for t, (W, c) in enumerate(basis):
        coeffs = tuple(int(s == t) for s in range(r))
        out.append(_candidate(seed, W, c, coeffs, depth))
    for coeffs in combinations:
        if len(coeffs) != r:
            raise DimensionMismatch(f"combination needs {r} coefficients")
        W = intmat.zeros(seed.m, seed.m)
        c = (0,) * (len(basis[0][1]) if basis else 0)
        for a, (Wb, cb) in zip(coeffs, basis):
            W = intmat.add(W, intmat.scale(Wb, a))
            c = tuple(x + a * y for x, y in zip(c, cb))
        out.append(_candidate(seed, W, c, tuple(coeffs), depth))
    return out


# ---------------------------------------------------------------- C-matrices

def _sign_coherent(C: Matrix) -> bool:
    for col in intmat.transpose(C):
        if any(x > 0 for x in col) and any(x < 0 for x in col):
            return False
    return True


def c_matrix(B: Matrix, seq: Sequence[int]) -> Matrix:
    """Bottom block of (B; I_n) mutated along ``seq``.

    Raises SignCoherenceViolation if some column has both signs, which
    cannot happen for a correct mutation routine.
    """
    B = intmat.as_matrix(B)
    n = len(B)
    ExtendedExchangeMatrix(B)  # validates skew-symmetrizability
    M = intmat.vstack(B, intmat.identity(n))
    for k in seq:
        if not isinstance(k, int) or not 0 <= k < n:
            raise DirectionOutOfRange(f"direction {k!r} not in [0, {n})")
        M = _mutate_B_matrix(M, k)
    C = M[n:]
    if not _sign_coherent(C):
        raise SignCoherenceViolation(f"C-matrix {C} has a column of mixed sign")
    return C


# ---------------------------------------------------------------- extensions

@dataclass(frozen=True)
class ExtensionPlan:
    base_seed: QuantumSeed
    sequence: tuple
    C: Matrix
    row_selection: tuple
    B_ext: ExtendedExchangeMatrix
    Lambda_ext: Matrix
    P: Matrix
    W_ext: Matrix
    a: int
    report: CompatReport
    verdict: TrivialityVerdict

    @property
    def triple(self) -> CompatibleTriple:
        return CompatibleTriple(QuantumSeed(self.B_ext, self.Lambda_ext), self.W_ext)

    @property
    def ok(self) -> bool:
        return self.report.ok and not self.verdict.trivial

    def to_dict(self) -> dict:
        rows = lambda M: [list(r) for r in M]  # noqa: E731
        return {
            "sequence": list(self.sequence),
            "row_selection": list(self.row_selection),
            "a": self.a,
            "C": rows(self.C),
            "B": rows(self.B_ext.B),
            "Lambda": rows(self.Lambda_ext),
            "P": rows(self.P),
            "W": rows(self.W_ext),
            "report": self.report.to_dict(),
            "triviality": self.verdict.to_dict(),
            "ok": self.ok,
        }


def skew_annihilators(K: Matrix) -> list:
    """Lattice basis of skew-symmetric integer P with K^T P = 0 (K is N x n).

    Unknowns are the strict upper triangle of P in row order.
    """
    N, n = intmat.shape(K)
    pairs = [(i, j) for i in range(N) for j in range(i + 1, N)]
    idx = {p: t for t, p in enumerate(pairs)}
    rows = []
    for h in range(n):
        for j in range(N):
            row = [0] * len(pairs)
            for i in range(N):
                if K[i][h] and i != j:
                    if i < j:
                        row[idx[(i, j)]] += K[i][h]
                    else:
                        row[idx[(j, i)]] -= K[i][h]
            rows.append(tuple(row))
    return [intmat.skew_from_upper(v, N) for v in intmat.integer_nullspace(tuple(rows), ncols=len(pairs))]


def build_extension(seed: QuantumSeed, seq: Sequence[int] = (), row_selection: Sequence[int] = (),
                    depth: int = 4, p_index: int = 0, a: int = 1) -> ExtensionPlan:
    """Extend an indecomposable seed by frozen rows (C; C') so that it carries
    a non-trivial second quantization W' = a Lambda + P.

    C is the C-matrix reached along ``seq`` from the seed whose principal
    part mutates to this seed's principal part along ``seq``; C' repeats the
    rows of C listed in ``row_selection`` (s = len(row_selection) > n + 1).
    P is the ``p_index``-th lattice basis vector of the skew solutions of
    (C; C')^T P = 0.
    """
    n = seed.n
    seq = tuple(seq)
    rows = tuple(row_selection)
    s = len(rows)
    if s <= n + 1:
        raise SizeBound(f"need more than n+1 = {n + 1} selected rows, got {s}")
    if any(not isinstance(r, int) or not 0 <= r < n for r in rows):
        raise MalformedInput(f"row indices must lie in [0, {n})")
    if len(decompose(seed).blocks) > 1:
        raise NotIndecomposable("the seed splits into several blocks")
    principal = seed.B[:n]
    start = principal
    for k in reversed(seq):
        start = _mutate_B_matrix(start, k)
    C = c_matrix(start, seq)
    Cp = tuple(C[r] for r in rows)
    K = intmat.vstack(C, Cp)
    sols = skew_annihilators(K)
    if not sols:
        raise NoNonzeroP("(C; C')^T P = 0 has only the zero skew solution")
    if not 0 <= p_index < len(sols):
        raise MalformedInput(f"p_index must lie in [0, {len(sols)})")
    P = sols[p_index]
    B_ext = ExtendedExchangeMatrix(intmat.vstack(seed.B, K))
    L_ext = intmat.direct_sum(seed.Lambda, intmat.zeros(n + s, n + s))
    W_ext = intmat.direct_sum(intmat.scale(seed.Lambda, a), P)
    triple = CompatibleTriple(QuantumSeed(B_ext, L_ext), W_ext)
    report = verify_triple_bounded(triple, depth)
    verdict = classify_triviality(L_ext, W_ext)
    return ExtensionPlan(seed, seq, C, rows, B_ext, L_ext, P, W_ext, a, report, verdict)


def almost_principal_builder(seed: QuantumSeed, J_rows: Sequence[int], depth: int = 4,
                             p_index: int = 0, a: int = 1) -> ExtensionPlan:
    """Extension (B; I_n; J) of a coefficient-free seed, J made of rows of I_n.

    Requires 2n + |J| > 3n + 1.
    """
    n = seed.n
    if seed.m != n:
        raise MalformedInput("almost principal extension needs a coefficient-free seed (m = n)")
    m_new = 2 * n + len(J_rows)
    if m_new <= 3 * n + 1:
        raise SizeBound(f"m' = {m_new} must exceed 3n+1 = {3 * n + 1}")
    return build_extension(seed, (), J_rows, depth, p_index, a)


# ---------------------------------------------------------------- coefficient-free

@dataclass
class CoefficientFreeReport:
    blocks: list
    lattice_rank: int
    lattice_matches_blocks: bool
    candidates_checked: int = 0
    all_trivial: bool = True
    locally_standard: bool = True
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.lattice_matches_blocks and self.all_trivial and self.locally_standard

    def to_dict(self) -> dict:
        return {
            "ok": self.ok,
            "blocks": self.blocks,
            "lattice_rank": self.lattice_rank,
            "lattice_matches_blocks": self.lattice_matches_blocks,
            "candidates_checked": self.candidates_checked,
            "all_trivial": self.all_trivial,
            "locally_standard": self.locally_standard,
            "failures": self.failures,
        }


def _block_embedding(Lambda: Matrix, I: Sequence[int]) -> Matrix:
    m = len(Lambda)
    S = set(I)
    return tuple(tuple(Lambda[i][j] if i in S and j in S else 0 for j in range(m)) for i in range(m))


def coefficient_free_analysis(seed: QuantumSeed, bound: int = 3) -> CoefficientFreeReport:
    """For m = n: compare the lattice of second deformation matrices with the
    lattice spanned by the primitive block pieces of Lambda, and check that
    every combination with coefficients in [-bound, bound] is trivial with a
    locally standard Poisson matrix (a_i [lambda_ij] inside block i, 0 across)."""
    if seed.m != seed.n:
        raise MalformedInput("coefficient-free analysis needs m = n")
    m = seed.m
    blocks = [list(b.indices) for b in decompose(seed).blocks]
    basis = [W for W, _ in second_deformation_lattice(seed)]
    expected = []
    for I in blocks:
        piece = _block_embedding(seed.Lambda, I)
        g = gcd(*intmat.upper_entries(piece))
        if g:
            expected.append(tuple(tuple(x // g for x in r) for r in piece))
    got_hnf = intmat.hermite_normal_form([intmat.upper_entries(W) for W in basis])
    exp_hnf = intmat.hermite_normal_form([intmat.upper_entries(W) for W in expected])
    rep = CoefficientFreeReport(blocks, len(basis), got_hnf == exp_hnf)
    if not rep.lattice_matches_blocks:
        rep.failures.append("solution lattice differs from the block lattice")
    block_of = {i: b for b, I in enumerate(blocks) for i in I}
    for coeffs in itertools.product(range(-bound, bound + 1), repeat=len(basis)):
        W = intmat.zeros(m, m)
        for a, Wb in zip(coeffs, basis):
            W = intmat.add(W, intmat.scale(Wb, a))
        rep.candidates_checked += 1
        verdict = classify_triviality(seed.Lambda, W)
        if not verdict.trivial:
            rep.all_trivial = False
            rep.failures.append(f"non-trivial W for coefficients {list(coeffs)}")
            continue
        try:
            Om = omega_from_W(W, seed.Lambda)
        except NotIntegralOmega:
            continue
        # per-block scalar, read off from W = a Lambda inside the block
        scal = {}
        for I in blocks:
            ref = next(((i, j) for i in I for j in I if seed.Lambda[i][j]), None)
            scal[block_of[I[0]]] = Fraction(0) if ref is None else \
                Fraction(W[ref[0]][ref[1]], seed.Lambda[ref[0]][ref[1]])
        for i in range(m):
            for j in range(m):
                if block_of[i] != block_of[j]:
                    ok = not Om[i, j]
                else:
                    a = scal[block_of[i]]
                    lam = seed.Lambda[i][j]
                    want = q_analog(lam).scale(int(a * lam) // lam) if lam else q_analog(0)
                    ok = Om[i, j] == want and (a * lam).denominator == 1
                if not ok:
                    rep.locally_standard = False
                    rep.failures.append(f"omega_{i}{j} not standard for coefficients {list(coeffs)}")
    return rep
