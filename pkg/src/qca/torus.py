"""Quantum tori in one and two parameters, and a Leibniz-rule Poisson bracket.

Monomials are stored as exponent vectors X^e. Multiplication is

    X^e X^f = u^(e^T W f) v^(e^T Lambda f) X^(e+f)

so W = 0 gives the one-parameter torus. The bracket is computed from
scratch by expanding monomials into words in the generators and applying
the Leibniz rule letter by letter; it is an oracle for the closed-form
mutation of Poisson matrices and shares no code with it.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from . import intmat
from .errors import DimensionMismatch, MalformedInput, NotDivisible, NotLogCanonical, TwoParameterUnsupported
from .intmat import Matrix
from .laurent import LaurentUV, LaurentV, laurent_divide_exact, q_analog
from .seed import ExtendedExchangeMatrix, PoissonMatrix, QuantumSeed, _check_direction, mutate_Lambda


def bilinear_form(M: Matrix, e: Sequence[int], f: Sequence[int]) -> int:
    """e^T M f."""
    m = len(M)
    if len(e) != m or len(f) != m or (M and len(M[0]) != m):
        raise DimensionMismatch("bilinear_form: sizes differ")
    total = 0
    for i, ei in enumerate(e):
        if ei:
            row = M[i]
            total += ei * sum(row[j] * fj for j, fj in enumerate(f) if fj)
    return total


@dataclass(frozen=True)
class TorusContext:
    m: int
    Lambda: Matrix
    W: Matrix = None

    def __post_init__(self):
        L = intmat.as_matrix(self.Lambda)
        W = intmat.zeros(self.m, self.m) if self.W is None else intmat.as_matrix(self.W)
        for name, M in (("Lambda", L), ("W", W)):
            if intmat.shape(M) != (self.m, self.m):
                raise DimensionMismatch(f"{name} must be {self.m}x{self.m}")
            if not intmat.is_skew_symmetric(M):
                raise MalformedInput(f"{name} is not skew-symmetric")
        object.__setattr__(self, "Lambda", L)
        object.__setattr__(self, "W", W)

    @property
    def one_parameter(self) -> bool:
        return intmat.is_zero(self.W)

    def twist(self, e, f) -> LaurentUV:
        return LaurentUV.monomial(bilinear_form(self.W, e, f), bilinear_form(self.Lambda, e, f))

    def mul(self, a: "TorusElement", b: "TorusElement") -> "TorusElement":
        acc: dict = {}
        for e, ca in a.terms:
            for f, cb in b.terms:
                g = tuple(x + y for x, y in zip(e, f))
                c = ca * cb * self.twist(e, f)
                acc[g] = acc.get(g, LaurentUV.zero()) + c
        return TorusElement.from_dict(acc)

    def generator(self, i: int, power: int = 1) -> "TorusElement":
        e = [0] * self.m
        e[i] = power
        return TorusElement.monomial(e)


@dataclass(frozen=True)
class TorusMonomial:
    coeff: LaurentUV
    exponent: tuple

    def __post_init__(self):
        c = self.coeff
        if isinstance(c, LaurentV):
            c = LaurentUV.from_v(c)
        elif isinstance(c, int):
            c = LaurentUV.constant(c)
        if not c:
            raise MalformedInput("monomial coefficient must be nonzero")
        object.__setattr__(self, "coeff", c)
        object.__setattr__(self, "exponent", tuple(self.exponent))

    def as_element(self) -> "TorusElement":
        return TorusElement(((self.exponent, self.coeff),))


def mono_mul(ctx: TorusContext, a: TorusMonomial, b: TorusMonomial) -> TorusMonomial:
    if len(a.exponent) != ctx.m or len(b.exponent) != ctx.m:
        raise DimensionMismatch("monomial size differs from context")
    e, f = a.exponent, b.exponent
    return TorusMonomial(a.coeff * b.coeff * ctx.twist(e, f), tuple(x + y for x, y in zip(e, f)))


@dataclass(frozen=True)
class TorusElement:
    """Finite sum of c_e X^e, stored as a sorted tuple of (exponent, coeff)."""

    terms: tuple = ()

    @classmethod
    def from_dict(cls, d: dict) -> "TorusElement":
        items = []
        for e, c in sorted(d.items()):
            if isinstance(c, int):
                c = LaurentUV.constant(c)
            elif isinstance(c, LaurentV):
                c = LaurentUV.from_v(c)
            if c:
                items.append((tuple(e), c))
        return cls(tuple(items))

    @classmethod
    def monomial(cls, e: Iterable[int], c=1) -> "TorusElement":
        return cls.from_dict({tuple(e): c})

    @classmethod
    def zero(cls) -> "TorusElement":
        return cls(())

    def as_dict(self) -> dict:
        return dict(self.terms)

    def __bool__(self):
        return bool(self.terms)

    def __add__(self, other: "TorusElement") -> "TorusElement":
        acc = self.as_dict()
        for e, c in other.terms:
            acc[e] = acc.get(e, LaurentUV.zero()) + c
        return TorusElement.from_dict(acc)

    def __neg__(self) -> "TorusElement":
        return TorusElement(tuple((e, -c) for e, c in self.terms))

    def __sub__(self, other: "TorusElement") -> "TorusElement":
        return self + (-other)

    def scale(self, c) -> "TorusElement":
        if isinstance(c, int):
            c = LaurentUV.constant(c)
        elif isinstance(c, LaurentV):
            c = LaurentUV.from_v(c)
        return TorusElement.from_dict({e: x * c for e, x in self.terms})

    def coefficient(self, e) -> LaurentUV:
        return self.as_dict().get(tuple(e), LaurentUV.zero())

    def at_u_one(self) -> "TorusElement":
        acc: dict = {}
        for e, c in self.terms:
            acc[e] = acc.get(e, LaurentUV.zero()) + LaurentUV.from_v(c.at_u_one())
        return TorusElement.from_dict(acc)

    def to_json(self) -> list:
        return [{"e": list(e), "c": c.to_json()} for e, c in self.terms]

    @classmethod
    def from_json(cls, data) -> "TorusElement":
        if not isinstance(data, list):
            raise MalformedInput("torus element must be a list")
        acc = {}
        for t in data:
            if not isinstance(t, dict) or set(t) != {"e", "c"}:
                raise MalformedInput(f"bad torus term {t!r}")
            e = tuple(t["e"])
            if e in acc:
                raise MalformedInput(f"repeated exponent {list(e)}")
            acc[e] = LaurentUV.from_json(t["c"])
        return cls.from_dict(acc)

    def __str__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"({c})X^{list(e)}" for e, c in self.terms)


def mutated_variable(ctx: TorusContext, ex: ExtendedExchangeMatrix, k: int) -> TorusElement:
    """X'_k = X^(-e_k + [b_k]_+) + X^(-e_k + [-b_k]_+) with b_k the k-th column of B~."""
    _check_direction(k, ex.n)
    if ex.m != ctx.m:
        raise DimensionMismatch("exchange matrix and context sizes differ")
    col = ex.column(k)
    pos = [max(b, 0) for b in col]
    neg = [max(-b, 0) for b in col]
    pos[k] -= 1
    neg[k] -= 1
    acc: dict = {}
    for e in (tuple(pos), tuple(neg)):
        acc[e] = acc.get(e, 0) + 1
    return TorusElement.from_dict(acc)


# ---------------------------------------------------------------- Leibniz bracket

class _VTorus:
    """Monomial arithmetic on the one-parameter torus with LaurentV coefficients."""

    def __init__(self, Lambda: Matrix):
        self.L = Lambda
        self.m = len(Lambda)

    def mul(self, a, b):
        (ca, e), (cb, f) = a, b
        return (ca * cb).shift(bilinear_form(self.L, e, f)), tuple(x + y for x, y in zip(e, f))

    def prod(self, *monos):
        out = (LaurentV.one(), (0,) * self.m)
        for x in monos:
            out = self.mul(out, x)
        return out

    def letter(self, i, s):
        e = [0] * self.m
        e[i] = s
        return (LaurentV.one(), tuple(e))

    def word(self, e):
        """Letters of the ascending ordered product X_0^e_0 ... X_{m-1}^e_{m-1}
        and the v-power c with X^e = v^c * (that product)."""
        letters = []
        for i, ei in enumerate(e):
            s = 1 if ei > 0 else -1
            letters.extend([(i, s)] * abs(ei))
        corr = -sum(e[i] * e[j] * self.L[i][j] for i in range(self.m) for j in range(i + 1, self.m))
        return letters, corr


def _letter_bracket(T: _VTorus, Omega: PoissonMatrix, a, b):
    """{X_i^s, X_j^t} for s, t in {+1, -1}, as a (coeff, exponent) monomial."""
    (i, s), (j, t) = a, b
    e = [0] * T.m
    e[i] += 1
    e[j] += 1
    core = (Omega[i, j], tuple(e))
    if s < 0:
        inv = T.letter(i, -1)
        core = T.prod(inv, core, inv)
        core = (-core[0], core[1])
    if t < 0:
        inv = T.letter(j, -1)
        core = T.prod(inv, core, inv)
        core = (-core[0], core[1])
    return core


def _word_bracket(T: _VTorus, Omega: PoissonMatrix, A: list, B: list) -> dict:
    acc: dict = {}
    mA = [T.letter(i, s) for i, s in A]
    mB = [T.letter(i, s) for i, s in B]
    one = T.prod()
    preA = [one]
    for x in mA:
        preA.append(T.mul(preA[-1], x))
    sufA = [one] * (len(mA) + 1)
    for a in range(len(mA) - 1, -1, -1):
        sufA[a] = T.mul(mA[a], sufA[a + 1])
    preB = [one]
    for x in mB:
        preB.append(T.mul(preB[-1], x))
    sufB = [one] * (len(mB) + 1)
    for b in range(len(mB) - 1, -1, -1):
        sufB[b] = T.mul(mB[b], sufB[b + 1])
    for a in range(len(A)):
        for b in range(len(B)):
            core = _letter_bracket(T, Omega, A[a], B[b])
            if not core[0]:
                continue
            c, e = T.prod(preA[a], preB[b], core, sufB[b + 1], sufA[a + 1])
            acc[e] = acc.get(e, LaurentV.zero()) + c
    return acc


def poisson_bracket_leibniz(ctx: TorusContext, Omega: PoissonMatrix,
                            a: TorusElement, b: TorusElement) -> TorusElement:
    """{a, b} from {X_i, X_j} = omega_ij X^(e_i+e_j} by the Leibniz rule.

    Each monomial is rewritten as v^c times the index-ascending word in the
    generators and their inverses; {X_i^-1, y} = -X_i^-1 {X_i, y} X_i^-1.
    The bracket is bilinear over the coefficient ring.
    """
    if not ctx.one_parameter:
        raise TwoParameterUnsupported("the bracket is defined on the one-parameter torus only")
    if Omega.m != ctx.m:
        raise DimensionMismatch("Omega and context sizes differ")
    T = _VTorus(ctx.Lambda)
    out: dict = {}
    for e, ca in a.terms:
        A, corr_a = T.word(e)
        for f, cb in b.terms:
            B, corr_b = T.word(f)
            for g, c in _word_bracket(T, Omega, A, B).items():
                term = ca * cb * LaurentUV.from_v(c.shift(corr_a + corr_b))
                out[g] = out.get(g, LaurentUV.zero()) + term
    return TorusElement.from_dict(out)


def verify_log_canonical_step(ctx: TorusContext, Omega: PoissonMatrix, seed: QuantumSeed,
                              k: int, j: int) -> LaurentV:
    """Find omega' with {X'_k, X_j} = omega' v^(lambda'_jk) X'_k X_j, or raise.

    omega' is solved from the lowest monomial of X'_k X_j and then checked
    on every monomial. NotLogCanonical carries the residual element.
    """
    _check_direction(k, seed.n)
    if j == k or not 0 <= j < seed.m:
        raise ValueError(f"index j={j} must differ from k={k} and lie in [0, {seed.m})")
    Xk = mutated_variable(ctx, seed.ex, k)
    Xj = ctx.generator(j)
    br = poisson_bracket_leibniz(ctx, Omega, Xk, Xj)
    lam_jk = mutate_Lambda(seed, k)[j][k]
    target = ctx.mul(Xk, Xj).scale(LaurentV.monomial(lam_jk))
    e0, c0 = target.terms[0]
    num = br.coefficient(e0)
    try:
        w = laurent_divide_exact(num.to_v(), c0.to_v())
    except (NotDivisible, ValueError):
        raise NotLogCanonical(br) from None
    residual = br - target.scale(w)
    if residual:
        raise NotLogCanonical(residual)
    return w


def is_torus_bracket(Omega: PoissonMatrix, Lambda: Matrix) -> bool:
    """Whether {X_i, X_j} = omega_ij X^(e_i+e_j) extends to a bracket on the torus.

    Applying the Leibniz rule to X_k X_i and to X_i X_k must agree, which
    reduces to omega_ki [lambda_kj] = omega_kj [lambda_ki] for all i, j, k.
    When this fails the Leibniz bracket above still returns a value, but it
    depends on the fixed ascending order of generators.
    """
    m = Omega.m
    qa = {}
    for k in range(m):
        for i in range(m):
            for j in range(i + 1, m):
                a, b = Lambda[k][j], Lambda[k][i]
                qa.setdefault(a, q_analog(a))
                qa.setdefault(b, q_analog(b))
                if Omega[k, i] * qa[a] != Omega[k, j] * qa[b]:
                    return False
    return True
