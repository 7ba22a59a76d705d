"""Compatibility checks for pairs, triples and Poisson matrices.

Every check is report-style: it returns a flag plus the data that explains
it, and raises only on malformed input. Ratio conditions are always tested
cross-multiplied, so vanishing denominators need no special case.

Scalars attached to a skew-symmetrizer (the d of C1, the c of C1* and of
the global C4 test) are reported per connected component of the principal
part, in the component order of ``intmat.symmetrizer_components``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from . import intmat
from .errors import DimensionMismatch, NotDivisible, NotIntegralOmega, NotSecondDeformation
from .intmat import Matrix
from .laurent import LaurentV, laurent_divide_exact, q_analog
from .seed import CompatibleTriple, PoissonMatrix, QuantumSeed, mutate_triple


def _components(B: Matrix) -> list[list[int]]:
    n = len(B[0])
    return intmat.symmetrizer_components(B[:n])


# ---------------------------------------------------------------- C1 and C1*

def _diagonal_block_scales(P: Matrix, B: Matrix):
    """If P = (M 0) with M = diag(s_r * D0) per component, return the s_r.

    P is n x m. Returns None when the shape is wrong; scales are Fractions.
    """
    n = len(B[0])
    for h, row in enumerate(P):
        for j, x in enumerate(row):
            if j != h and x:
                return None
    D0 = intmat.skew_symmetrizer(B[:n])
    scales = []
    for comp in _components(B):
        s = Fraction(P[comp[0]][comp[0]], D0[comp[0]])
        if any(Fraction(P[h][h], D0[h]) != s for h in comp):
            return None
        scales.append(s)
    return tuple(scales)


def check_C1(seed: QuantumSeed):
    """B~^T Lambda = (M 0) with M = d_r D0 on each component, every d_r a positive integer.

    Returns (ok, M) with M the n x n block (None if the shape is wrong).
    """
    B, L = seed.B, seed.Lambda
    P = intmat.matmul(intmat.transpose(B), L)
    n = len(B[0])
    M = tuple(row[:n] for row in P)
    scales = _diagonal_block_scales(P, B)
    if scales is None:
        return False, None
    ok = all(s > 0 and s.denominator == 1 for s in scales)
    return ok, M


def c1_scales(seed: QuantumSeed) -> tuple:
    """The positive integers d_r with B~^T Lambda = (diag(d_r D0) 0)."""
    P = intmat.matmul(intmat.transpose(seed.B), seed.Lambda)
    scales = _diagonal_block_scales(P, seed.B)
    return None if scales is None else tuple(int(s) for s in scales)


def check_C1star(triple: CompatibleTriple):
    """B~^T W = c (D0 0), one rational c per component with c D0 integral.

    Returns (ok, cs) where cs is the tuple of per-component Fractions.
    Because D0 is the minimal symmetrizer, every c that passes is in fact
    an integer; ``c_is_integral`` reports it for callers that care.
    """
    P = intmat.matmul(intmat.transpose(triple.B), triple.W)
    scales = _diagonal_block_scales(P, triple.B)
    if scales is None:
        return False, None
    return True, scales


def c_is_integral(cs) -> bool:
    return cs is not None and all(Fraction(c).denominator == 1 for c in cs)


# ---------------------------------------------------------------- Omega <-> W

def omega_from_W(W: Matrix, Lambda: Matrix) -> PoissonMatrix:
    """omega_ij = W_ij [lambda_ij] / lambda_ij when lambda_ij != 0, else W_ij."""
    W = intmat.as_matrix(W)
    Lambda = intmat.as_matrix(Lambda)
    if intmat.shape(W) != intmat.shape(Lambda):
        raise DimensionMismatch("W and Lambda differ in shape")
    m = len(W)
    rows = []
    for i in range(m):
        row = []
        for j in range(m):
            w, lam = W[i][j], Lambda[i][j]
            if lam == 0:
                row.append(LaurentV.constant(w))
            else:
                if w % lam:
                    raise NotIntegralOmega(i, j)
                row.append(q_analog(lam).scale(w // lam))
        rows.append(tuple(row))
    return PoissonMatrix(tuple(rows))


def W_from_omega(Omega: PoissonMatrix, Lambda: Matrix) -> Matrix:
    """W_ij = omega_ij lambda_ij / [lambda_ij] when lambda_ij != 0, else omega_ij.

    Raises NotSecondDeformation when the result is not an integer.
    """
    Lambda = intmat.as_matrix(Lambda)
    m = Omega.m
    if intmat.shape(Lambda) != (m, m):
        raise DimensionMismatch("Omega and Lambda differ in shape")
    out = [[0] * m for _ in range(m)]
    for i in range(m):
        for j in range(m):
            w, lam = Omega[i, j], Lambda[i][j]
            if lam == 0:
                if not w.is_constant():
                    raise NotSecondDeformation(i, j)
                out[i][j] = w.constant_value()
                continue
            try:
                quo = laurent_divide_exact(w, q_analog(lam))
            except NotDivisible:
                raise NotSecondDeformation(i, j) from None
            if not quo.is_constant():
                raise NotSecondDeformation(i, j)
            out[i][j] = quo.constant_value() * lam
    return tuple(map(tuple, out))


# ---------------------------------------------------------------- C2, C3, C4

def _vdiff(lam: int) -> LaurentV:
    """v^lam - v^-lam, i.e. q^{lam/2} - q^{-lam/2}."""
    return LaurentV.monomial(lam) - LaurentV.monomial(-lam)


def check_C2_C3(triple: CompatibleTriple, omega_form: bool = False,
                Omega: Optional[PoissonMatrix] = None):
    """Check (C2) and (C3) for every j in [0,m), k in [0,n), j != k.

    W-form: W_uj lambda_kj = W_kj lambda_uj whenever b_uk != 0, and
    W_uj lambda_vj = W_vj lambda_uj whenever b_uk b_vk != 0.
    Omega-form uses omega and v^lam - v^-lam in place of W and lambda.

    Returns (ok, witnesses) with witnesses a list of
    (condition, (j, k, u)) or (condition, (j, k, u, v)).
    """
    B, L = triple.B, triple.Lambda
    m, n = triple.m, triple.n
    if omega_form:
        if Omega is None:
            Omega = omega_from_W(triple.W, L)
        ent = lambda a, b: Omega[a, b]  # noqa: E731
        rat = _vdiff
    else:
        W = triple.W
        ent = lambda a, b: W[a][b]  # noqa: E731
        rat = lambda x: x  # noqa: E731
    witnesses = []
    for k in range(n):
        support = [u for u in range(m) if B[u][k]]
        for j in range(m):
            if j == k:
                continue
            for u in support:
                if ent(u, j) * rat(L[k][j]) != ent(k, j) * rat(L[u][j]):
                    witnesses.append(("C2", (j, k, u)))
            for a in range(len(support)):
                for b in range(a + 1, len(support)):
                    u, w = support[a], support[b]
                    if ent(u, j) * rat(L[w][j]) != ent(w, j) * rat(L[u][j]):
                        witnesses.append(("C3", (j, k, u, w)))
    return not witnesses, witnesses


def check_C4_local(seed: QuantumSeed, Omega: PoissonMatrix):
    """sum over t with lambda_tj = 0 of omega_tj b_tk is 0, for all j != k.

    Returns (ok, list of offending (j, k)).
    """
    B, L = seed.B, seed.Lambda
    bad = []
    for k in range(seed.n):
        for j in range(seed.m):
            if j == k:
                continue
            s = LaurentV.zero()
            for t in range(seed.m):
                if L[t][j] == 0 and B[t][k]:
                    s = s + Omega[t, j].scale(B[t][k])
            if s:
                bad.append((j, k))
    return not bad, bad


@dataclass(frozen=True)
class HatOmega:
    """Omega with every entry zeroed where lambda_ij != 0."""

    matrix: tuple

    @classmethod
    def build(cls, Omega: PoissonMatrix, Lambda: Matrix) -> "HatOmega":
        z = LaurentV.zero()
        m = Omega.m
        return cls(tuple(tuple(Omega[i, j] if Lambda[i][j] == 0 else z for j in range(m))
                         for i in range(m)))


def _hat_product_scales(H, B: Matrix, zero, div):
    """Solve H B~ = c D~ per component. H is m x m, entries int or LaurentV.

    Returns (ok, scales, first_bad) with first_bad the (row, col) of the first
    mismatch in row-major order.
    """
    m, n = len(B), len(B[0])
    P = [[sum((H[i][t] * B[t][h] for t in range(m) if B[t][h]), zero) for h in range(n)]
         for i in range(m)]
    D0 = intmat.skew_symmetrizer(B[:n])
    scales = {}
    bad = None
    for comp in _components(B):
        h0 = comp[0]
        c = div(P[h0][h0], D0[h0])
        if c is None:
            bad = bad or (h0, h0)
            c = zero
        for h in comp:
            scales[h] = c
    for i in range(m):
        for h in range(n):
            want = scales[h] * D0[h] if i == h else zero
            if P[i][h] != want and bad is None:
                bad = (i, h)
    comps = _components(B)
    return bad is None, tuple(scales[c[0]] for c in comps), bad


def _div_laurent(x: LaurentV, d: int):
    try:
        return x.divide_int(d)
    except NotDivisible:
        return None


def _div_int(x: int, d: int):
    return x // d if x % d == 0 else None


def check_C4_global(seed: QuantumSeed, Omega: PoissonMatrix):
    """Single-seed form of C4: Omega^ B~ = c D~ with D~ = (D0; 0).

    Returns (ok, cs) with one LaurentV c per component (None on failure).
    """
    H = HatOmega.build(Omega, seed.Lambda).matrix
    ok, cs, _ = _hat_product_scales(H, seed.B, LaurentV.zero(), _div_laurent)
    return ok, (cs if ok else None)


def check_C4_global_W(triple: CompatibleTriple):
    """C4 global test in W form; W and Omega agree wherever lambda_ij = 0.

    Returns (ok, integer cs, first offending (row, col) or None).
    """
    L, W = triple.Lambda, triple.W
    m = triple.m
    H = tuple(tuple(W[i][j] if L[i][j] == 0 else 0 for j in range(m)) for i in range(m))
    return _hat_product_scales(H, triple.B, 0, _div_int)


# ---------------------------------------------------------------- bounded BFS

@dataclass
class CompatReport:
    c1: bool = True
    c1_scale: Optional[tuple] = None
    c1_star: bool = True
    c: Optional[tuple] = None
    c_integral: bool = True
    c2: bool = True
    c3: bool = True
    c4_global: bool = True
    c4_scalar: Optional[tuple] = None
    depth_checked: int = 0
    seeds_visited: int = 0
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        def frac(x):
            x = Fraction(x)
            return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"

        return {
            "ok": self.ok,
            "depth_checked": self.depth_checked,
            "seeds_visited": self.seeds_visited,
            "c1": self.c1,
            "c1_scale": None if self.c1_scale is None else list(self.c1_scale),
            "c1_star": self.c1_star,
            "c": None if self.c is None else [frac(x) for x in self.c],
            "c_integral": self.c_integral,
            "c2": self.c2,
            "c3": self.c3,
            "c4_global": self.c4_global,
            "c4_scalar": None if self.c4_scalar is None else list(self.c4_scalar),
            "failures": [
                {"sequence": list(seq), "condition": cond, "indices": list(idx)}
                for seq, cond, idx in self.failures
            ],
        }


def _check_node(triple: CompatibleTriple, seq: tuple, report: CompatReport) -> None:
    ok, _ = check_C1(triple.seed)
    if not ok:
        report.c1 = False
        report.failures.append((seq, "C1", ()))
    ok, cs = check_C1star(triple)
    if not ok:
        report.c1_star = False
        report.failures.append((seq, "C1*", ()))
    elif not c_is_integral(cs):
        report.c_integral = False
    ok, wit = check_C2_C3(triple)
    for cond, idx in wit:
        if cond == "C2":
            report.c2 = False
        else:
            report.c3 = False
        report.failures.append((seq, cond, idx))


def verify_triple_bounded(triple: CompatibleTriple, depth: int) -> CompatReport:
    """Explore all mutation sequences of length <= depth and check each triple.

    C1, C1*, C2 and C3 are checked at every distinct triple reached (exact
    matrix equality dedups). C4 is checked once, at the root, through its
    single-seed form, which then holds along the whole mutation class.
    The report certifies depth ``depth`` only.
    """
    if depth < 0:
        raise ValueError("depth must be non-negative")
    report = CompatReport(depth_checked=depth)
    report.c1_scale = c1_scales(triple.seed)
    ok, cs = check_C1star(triple)
    report.c = cs
    ok4, c4, bad = check_C4_global_W(triple)
    report.c4_global = ok4
    report.c4_scalar = c4 if ok4 else None
    if not ok4:
        report.failures.append(((), "C4", bad))

    seen = {triple.key()}
    queue = deque([(triple, (), None)])
    while queue:
        node, seq, last = queue.popleft()
        _check_node(node, seq, report)
        if len(seq) == depth:
            continue
        for k in range(node.n):
            if k == last:
                continue
            nxt = mutate_triple(node, k)
            key = nxt.key()
            if key in seen:
                continue
            seen.add(key)
            queue.append((nxt, seq + (k,), k))
    report.seeds_visited = len(seen)
    report.failures.sort(key=lambda f: (f[0], f[1], f[2]))
    return report
