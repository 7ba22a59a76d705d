import random

import pytest

from qca import intmat
from qca.compat import check_C1, omega_from_W
from qca.errors import DirectionOutOfRange, MalformedInput, NotCompatible, NotSkewSymmetrizable
from qca.fixtures import rank2free, sl2, sl2_seed
from qca.laurent import LaurentV
from qca.random_seeds import random_compatible_triple, random_quantum_seed
from qca.seed import (
    CompatibleTriple,
    ExtendedExchangeMatrix,
    PoissonMatrix,
    QuantumSeed,
    apply_sequence,
    mutate_B,
    mutate_Lambda,
    mutate_Omega_direct,
    mutate_Omega_nonquantum,
    mutate_W,
    mutate_seed,
    mutate_triple,
)

SL2_L = ((0, -1, -1), (1, 0, 0), (1, 0, 0))


def test_mutate_B_examples():
    ex = ExtendedExchangeMatrix(((0,), (1,), (1,)))
    assert mutate_B(ex, 0).B == ((0,), (-1,), (-1,))
    J = ExtendedExchangeMatrix(((0, 1), (-1, 0)))
    assert mutate_B(J, 0).B == ((0, -1), (1, 0))


def test_mutate_B_generic_entry():
    # b'_21 = b_21 + sgn(b_20)[b_20 b_01]_+ with the 3x3 A3 quiver
    ex = ExtendedExchangeMatrix(((0, 1, 0), (-1, 0, 1), (0, -1, 0)))
    out = mutate_B(ex, 1).B
    assert out == ((0, -1, 1), (1, 0, -1), (-1, 1, 0))


def test_mutate_Lambda_and_W_sl2():
    t = sl2(3, 1)
    assert mutate_Lambda(t.seed, 0) == intmat.neg(SL2_L)
    assert mutate_W(t, 0) == intmat.neg(t.W)
    assert mutate_Lambda(mutate_seed(t.seed, 0), 0) == SL2_L


def test_apply_sequence_sl2():
    t = sl2(3, 1)
    t1 = apply_sequence(t, [0])
    assert t1.B == ((0,), (-1,), (-1,))
    assert t1.Lambda == intmat.neg(SL2_L)
    assert t1.W == ((0, 3, 1), (-3, 0, 0), (-1, 0, 0))
    assert apply_sequence(t, []) == t
    assert apply_sequence(t, [0, 0]).key() == t.key()


def test_direction_errors():
    t = sl2()
    with pytest.raises(DirectionOutOfRange):
        mutate_B(t.seed.ex, 1)
    with pytest.raises(DirectionOutOfRange):
        apply_sequence(t, [0, -1])


def test_construction_validation():
    with pytest.raises(NotSkewSymmetrizable):
        ExtendedExchangeMatrix(((0, 1), (1, 0)))
    with pytest.raises(NotCompatible):
        QuantumSeed(ExtendedExchangeMatrix(((0,), (1,), (1,))), intmat.zeros(3, 3))
    with pytest.raises(MalformedInput):
        QuantumSeed(ExtendedExchangeMatrix(((0,), (1,), (1,))), ((0, 1, 1), (1, 0, 0), (1, 0, 0)))
    with pytest.raises(NotCompatible):
        CompatibleTriple(sl2_seed(), ((0, 1, 0), (-1, 0, 1), (0, -1, 0)))
    with pytest.raises(MalformedInput):
        PoissonMatrix(((LaurentV.one(), 0), (0, 0)))


def test_zero_lambda_stays_zero():
    ex = ExtendedExchangeMatrix(((0, 2), (-1, 0), (3, 1)))
    Z = intmat.zeros(3, 3)
    for k in range(2):
        assert mutate_Omega_nonquantum(Z, ex, k) == Z


def test_involution_and_C1_preservation_random():
    rng = random.Random(3)
    for _ in range(200):
        seed = random_quantum_seed(rng)
        seq = [rng.randrange(seed.n) for _ in range(rng.randint(0, 8))]
        cur = seed
        for k in seq:
            twice = mutate_seed(mutate_seed(cur, k), k)
            assert twice.B == cur.B and twice.Lambda == cur.Lambda
            cur = mutate_seed(cur, k)
            assert check_C1(cur)[0]
        W = intmat.scale(seed.Lambda, 2)
        t = CompatibleTriple(seed, W)
        for k in range(seed.n):
            assert mutate_W(mutate_triple(t, k), k) == W
            # W = Lambda coincides with the Lambda rule
            assert mutate_W(CompatibleTriple(seed, seed.Lambda), k) == mutate_Lambda(seed, k)
            assert mutate_Omega_nonquantum(seed.Lambda, seed.ex, k) == mutate_Lambda(seed, k)


def test_mutate_omega_zero():
    seed = sl2_seed()
    Z = PoissonMatrix.zero(3)
    assert mutate_Omega_direct(Z, seed, 0) == Z


def test_route_independence_sl2():
    t = sl2(3, 1)
    Om = omega_from_W(t.W, t.Lambda)
    t1 = mutate_triple(t, 0)
    assert mutate_Omega_direct(Om, t.seed, 0) == omega_from_W(t1.W, t1.Lambda)


def test_route_independence_random():
    rng = random.Random(11)
    for _ in range(60):
        t = random_compatible_triple(rng)
        Om = omega_from_W(t.W, t.Lambda)
        for k in range(t.n):
            t1 = mutate_triple(t, k)
            assert mutate_Omega_direct(Om, t.seed, k) == omega_from_W(t1.W, t1.Lambda)


def test_nonquantum_degeneration():
    # Lambda = 0 is not a quantum seed, so bypass the C1 check
    rng = random.Random(5)
    for _ in range(100):
        m, n = rng.randint(2, 5), None
        n = rng.randint(1, m)
        from qca.random_seeds import random_exchange

        ex = random_exchange(rng, m, n)
        seed = QuantumSeed._unchecked(ex, intmat.zeros(m, m))
        Psi = intmat.skew_from_upper([rng.randint(-3, 3) for _ in range(m * (m - 1) // 2)], m)
        Om = PoissonMatrix(tuple(tuple(LaurentV.constant(x) for x in r) for r in Psi))
        for k in range(n):
            got = mutate_Omega_direct(Om, seed, k)
            want = mutate_Omega_nonquantum(Psi, ex, k)
            assert all(got[i, j] == want[i][j] for i in range(m) for j in range(m))


def test_rank2_omega_mutation_value():
    t = rank2free(1)
    Om = omega_from_W(t.W, t.Lambda)
    assert mutate_Omega_direct(Om, t.seed, 0)[0, 1] == -1
