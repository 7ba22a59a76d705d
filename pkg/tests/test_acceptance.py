"""Acceptance checks, one test per criterion, each printing a PASS/FAIL line."""

import random
import time

import pytest

from qca import intmat
from qca.compat import check_C1, check_C4_global, omega_from_W, verify_triple_bounded
from qca.errors import SizeBound
from qca.fixtures import FIXTURES, blockfree_seed, get_fixture, rank2free_seed, sl2, sl2_seed, sl2_W
from qca.jsonio import load_seed_text
from qca.laurent import LaurentUV
from qca.random_seeds import random_compatible_triple, random_quantum_seed
from qca.seed import CompatibleTriple, mutate_B, mutate_Lambda, mutate_Omega_direct, mutate_seed, mutate_W
from qca.structure import (
    almost_principal_builder,
    build_extension,
    classify_triviality,
    coefficient_free_analysis,
    second_deformation_lattice,
    solve_second_deformations,
)
from qca.torus import TorusContext, TorusMonomial, mono_mul, mutated_variable, verify_log_canonical_step

from cli_cases import run_suite


@pytest.fixture
def criterion(capsys):
    """Times the body, enforces the limit and prints one PASS/FAIL line."""
    def run(number, title, limit, body):
        start = time.perf_counter()
        err = None
        try:
            body()
        except Exception as e:  # reported, then re-raised
            err = e
        elapsed = time.perf_counter() - start
        if err is None and limit is not None and elapsed >= limit:
            err = AssertionError(f"took {elapsed:.2f}s, limit {limit}s")
        status = "PASS" if err is None else "FAIL"
        with capsys.disabled():
            print(f"\n[{status}] criterion {number}: {title} ({elapsed:.2f}s)")
        if err is not None:
            raise err
    return run


def test_1_sl2_fixture_exact(criterion, tmp_path):
    def body():
        from qca.cli import main
        import io

        out = io.StringIO()
        assert main(["fixture", "sl2", "--w1", "3", "--w2", "1"], out) == 0
        p = tmp_path / "sl2.json"
        p.write_text(out.getvalue())
        out = io.StringIO()
        assert main(["mutate", "--seed", str(p), "--sequence", "0"], out) == 0
        expected = (
            '{\n  "m": 3,\n  "n": 1,\n'
            '  "B": [\n    [0],\n    [-1],\n    [-1]\n  ],\n'
            '  "Lambda": [\n    [0, 1, 1],\n    [-1, 0, 0],\n    [-1, 0, 0]\n  ],\n'
            '  "W": [\n    [0, 3, 1],\n    [-3, 0, 0],\n    [-1, 0, 0]\n  ]\n}\n'
        )
        assert out.getvalue() == expected
        t0 = sl2(3, 1)
        seed, W, _ = load_seed_text(out.getvalue())
        assert seed.Lambda == intmat.neg(t0.Lambda) and W == intmat.neg(t0.W)
    criterion(1, "SL2 fixture and one mutation reproduce the displayed matrices", 1.0, body)


def test_2_sl2_torus_relations(criterion):
    def body():
        t = sl2(3, 1)
        ctx = TorusContext(3, t.Lambda, t.W)
        r = LaurentUV.monomial(6, 2)  # p^3 q with p = u^2, q = v^2
        s = LaurentUV.monomial(2, 2)  # p q
        rinv, sinv = LaurentUV.monomial(-6, -2), LaurentUV.monomial(-2, -2)
        a, b, c = (TorusMonomial(1, e) for e in ((1, 0, 0), (0, 1, 0), (0, 0, 1)))

        def commutes(x, y, factor):
            xy, yx = mono_mul(ctx, x, y), mono_mul(ctx, y, x)
            return xy.exponent == yx.exponent and xy.coeff == yx.coeff * factor

        assert commutes(a, b, rinv) and commutes(a, c, sinv) and commutes(b, c, LaurentUV.one())
        d = mutated_variable(ctx, t.seed.ex, 0)
        for e, coeff in d.as_dict().items():
            term = TorusMonomial(coeff, e)
            assert commutes(term, b, r) and commutes(term, c, s)
        A, B, C = (ctx.generator(i) for i in range(3))
        rs_half_inv = LaurentUV.monomial(-4, -2)  # (rs)^(-1/2) = p^-2 q^-1
        lhs = ctx.mul(A, d) - ctx.mul(B, C).scale(rs_half_inv)
        assert lhs.as_dict() == {(0, 0, 0): LaurentUV.one()}
    criterion(2, "SL2 torus commutation relations and quantum determinant", 1.0, body)


def test_3_involution_and_C1(criterion):
    def body():
        rng = random.Random(2024)
        for _ in range(200):
            seed = random_quantum_seed(rng, 6, 4, 3)
            basis = second_deformation_lattice(seed)
            W = intmat.zeros(seed.m, seed.m)
            for Wb, _ in basis:
                W = intmat.add(W, intmat.scale(Wb, rng.randint(-2, 2)))
            triple = CompatibleTriple(seed, W)
            for _ in range(3):
                seq = [rng.randrange(seed.n) for _ in range(rng.randint(0, 8))]
                cur = triple
                for k in seq:
                    nxt = CompatibleTriple(mutate_seed(cur.seed, k), mutate_W(cur, k))
                    assert mutate_B(nxt.seed.ex, k) == cur.seed.ex
                    assert mutate_Lambda(nxt.seed, k) == cur.Lambda
                    assert mutate_W(nxt, k) == cur.W
                    ok, M = check_C1(nxt.seed)
                    assert ok and intmat.is_diagonal(M)
                    cur = nxt
    criterion(3, "mutation is an involution and preserves C1 on 200 random seeds", 60.0, body)


def test_4_omega_oracle(criterion):
    def body():
        rng = random.Random(4)
        triples = [sl2(3, 1), get_fixture("rank2free")]
        triples += [random_compatible_triple(rng, m_max=4) for _ in range(50)]
        compared = 0
        for t in triples:
            Om = omega_from_W(t.W, t.Lambda)
            ctx = TorusContext(t.m, t.Lambda)
            for k in range(t.n):
                direct = mutate_Omega_direct(Om, t.seed, k)
                for j in range(t.m):
                    if j != k:
                        assert verify_log_canonical_step(ctx, Om, t.seed, k, j) == direct[k, j]
                        compared += 1
        assert compared >= 50
    criterion(4, "closed-form Omega mutation agrees with the Leibniz bracket", 120.0, body)


def test_5_c4_invariance(criterion):
    def body():
        rng = random.Random(5)
        triples = [get_fixture(name) for name in FIXTURES]
        # rank 3 with entries up to 3 is usually wild and Lambda grows to ~1e5 by length 6;
        # rank <= 2 (any entries) and rank 3 with entries in {-1, 0, 1} stay small
        triples += [random_compatible_triple(rng, n_max=2) for _ in range(25)]
        triples += [random_compatible_triple(rng, n_max=3, bound=1) for _ in range(25)]
        assert sum(t.n == 3 for t in triples) >= 5
        for t in triples:
            Om = omega_from_W(t.W, t.Lambda)
            ok, c = check_C4_global(t.seed, Om)
            assert ok
            stack = [(t.seed, Om, 0)]
            while stack:
                seed, O, depth = stack.pop()
                assert check_C4_global(seed, O) == (True, c)
                if depth < 6:
                    for k in range(seed.n):
                        stack.append((mutate_seed(seed, k), mutate_Omega_direct(O, seed, k), depth + 1))
    criterion(5, "hat-Omega B = c D with the same c along all sequences of length <= 6", 60.0, body)


def test_6_sl2_w_space(criterion):
    def body():
        cands = solve_second_deformations(sl2_seed(), 4, [(-3, -1), (-1, -1)])
        basis = [c.W for c in cands[:2]]
        upper = lambda Ms: intmat.hermite_normal_form([intmat.upper_entries(M) for M in Ms])  # noqa: E731
        assert upper(basis) == upper([sl2_W(1, 0), sl2_W(0, 1)])
        assert all(c.certified for c in cands)
        w31, w11 = cands[2], cands[3]
        assert w31.W == sl2_W(3, 1) and not w31.trivial
        assert w11.W == sl2_W(1, 1) and w11.trivial
        assert not classify_triviality(sl2_seed().Lambda, sl2_W(3, 1)).trivial
        assert classify_triviality(sl2_seed().Lambda, sl2_W(1, 1)).trivial
    criterion(6, "SL2 second deformations form the (w1, w2) family, trivial iff w1 = w2", 5.0, body)


def test_7_coefficient_free(criterion):
    def body():
        for seed in (rank2free_seed(), blockfree_seed()):
            rep = coefficient_free_analysis(seed)
            assert rep.lattice_matches_blocks and rep.all_trivial and rep.ok, rep.to_dict()
            assert rep.candidates_checked > 0
    criterion(7, "coefficient-free seeds only carry block multiples of Lambda", 10.0, body)


def test_8_extension(criterion):
    def body():
        plan = build_extension(rank2free_seed(), (), [0, 0, 1, 1], depth=4)
        K = intmat.vstack(plan.C, tuple(plan.C[r] for r in plan.row_selection))
        assert intmat.is_skew_symmetric(plan.P) and not intmat.is_zero(plan.P)
        assert intmat.is_zero(intmat.matmul(intmat.transpose(K), plan.P))
        assert plan.report.ok and plan.report.depth_checked == 4
        assert not plan.verdict.trivial
        t = get_fixture("ex5x2", a=1, b=1)
        assert verify_triple_bounded(t, 4).ok
        assert not classify_triviality(t.Lambda, t.W).trivial
    criterion(8, "extension by (C; C') carries a certified non-trivial W", 30.0, body)


def test_9_almost_principal_boundary(criterion):
    def body():
        plan = almost_principal_builder(rank2free_seed(), [0, 0, 1, 1], depth=4)
        assert plan.B_ext.m == 8 and plan.ok
        with pytest.raises(SizeBound):
            almost_principal_builder(rank2free_seed(), [0, 0, 1])
    criterion(9, "almost principal coefficients need |J| > n + 1", 5.0, body)


def test_10_cli_determinism(criterion, tmp_path):
    def body():
        first, second = tmp_path / "a", tmp_path / "b"
        first.mkdir()
        second.mkdir()
        r1 = run_suite(first, hashseed="1")
        r2 = run_suite(second, hashseed="2")
        assert r1.keys() == r2.keys()
        for name in r1:
            # file paths differ between the runs only in argv, never in the output
            assert r1[name] == r2[name], name
        assert all(code == 0 for code, _ in r1.values())
    criterion(10, "two runs of the CLI suite are byte-identical", None, body)
