"""Compare the closed-form Omega mutation with the Leibniz bracket on random triples.

Also counts, over random seeds and Omega, how often the one-step conditions
and the Leibniz computation agree.
"""

import argparse
import random
import time

from qca.compat import _vdiff, check_C4_local, omega_from_W
from qca.errors import NotLogCanonical
from qca.random_seeds import random_compatible_triple, random_quantum_seed, random_torus_bracket
from qca.seed import mutate_Omega_direct
from qca.torus import TorusContext, verify_log_canonical_step


def conditions_hold(seed, Om, k):
    B, L = seed.B, seed.Lambda
    sup = [u for u in range(seed.m) if B[u][k]]
    for j in range(seed.m):
        if j == k:
            continue
        for u in sup:
            for w in sup + [k]:
                if Om[u, j] * _vdiff(L[w][j]) != Om[w, j] * _vdiff(L[u][j]):
                    return False
    return k not in {kk for _, kk in check_C4_local(seed, Om)[1]}


def leibniz_ok(seed, Om, k):
    ctx = TorusContext(seed.m, seed.Lambda)
    try:
        for j in range(seed.m):
            if j != k:
                verify_log_canonical_step(ctx, Om, seed, k, j)
    except NotLogCanonical:
        return False
    return True


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--triples", type=int, default=100)
    ap.add_argument("--seeds", type=int, default=300)
    ap.add_argument("--rng-seed", type=int, default=0)
    args = ap.parse_args()
    rng = random.Random(args.rng_seed)

    start = time.perf_counter()
    pairs = mismatches = 0
    for _ in range(args.triples):
        t = random_compatible_triple(rng)
        Om = omega_from_W(t.W, t.Lambda)
        ctx = TorusContext(t.m, t.Lambda)
        for k in range(t.n):
            direct = mutate_Omega_direct(Om, t.seed, k)
            for j in range(t.m):
                if j != k:
                    pairs += 1
                    mismatches += verify_log_canonical_step(ctx, Om, t.seed, k, j) != direct[k, j]
    print(f"closed form vs Leibniz: {pairs} entries, {mismatches} mismatches "
          f"({time.perf_counter() - start:.1f}s)")

    counts = {(a, b): 0 for a in (True, False) for b in (True, False)}
    for _ in range(args.seeds):
        seed = random_quantum_seed(rng, 4, 3)
        Om = random_torus_bracket(rng, seed.Lambda)
        for k in range(seed.n):
            counts[conditions_hold(seed, Om, k), leibniz_ok(seed, Om, k)] += 1
    print("torus brackets, (conditions, Leibniz) -> count:")
    for key, n in counts.items():
        print("   ", key, n)


if __name__ == "__main__":
    main()
