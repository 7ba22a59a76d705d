"""Walk through the SL2 seed: mutation, torus relations, W-space, triviality."""

import argparse

from qca.compat import omega_from_W, verify_triple_bounded
from qca.fixtures import sl2, sl2_seed
from qca.laurent import LaurentUV
from qca.seed import mutate_triple
from qca.structure import solve_second_deformations
from qca.torus import TorusContext, mutated_variable


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--w1", type=int, default=3)
    ap.add_argument("--w2", type=int, default=1)
    ap.add_argument("--depth", type=int, default=5)
    args = ap.parse_args()

    t = sl2(args.w1, args.w2)
    t1 = mutate_triple(t, 0)
    print("B(t1)      =", [r[0] for r in t1.B])
    print("Lambda(t1) =", t1.Lambda)
    print("W(t1)      =", t1.W)
    print("Omega      =", omega_from_W(t.W, t.Lambda).Omega)

    ctx = TorusContext(3, t.Lambda, t.W)
    a, b, c = (ctx.generator(i) for i in range(3))
    d = mutated_variable(ctx, t.seed.ex, 0)
    w = args.w1 + args.w2
    det = ctx.mul(a, d) - ctx.mul(b, c).scale(LaurentUV.monomial(-w, -2))
    print("d          =", d)
    print("a d - (rs)^(-1/2) b c =", det)

    rep = verify_triple_bounded(t, args.depth)
    print(f"certified to depth {args.depth}: {rep.ok} ({rep.seeds_visited} seeds)")
    for cand in solve_second_deformations(sl2_seed(), args.depth, [(-args.w1, -args.w2)]):
        print("candidate", cand.coefficients, "W =", cand.W, "c =", cand.c,
              "certified" if cand.certified else "not certified",
              "trivial" if cand.trivial else "non-trivial")


if __name__ == "__main__":
    main()
