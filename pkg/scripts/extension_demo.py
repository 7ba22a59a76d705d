"""Build a cluster extension that carries a non-trivial second quantization."""

import argparse

from qca.fixtures import FIXTURES, get_fixture
from qca.structure import almost_principal_builder, build_extension


def _ints(text):
    return [int(x) for x in text.split(",") if x.strip()]


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--fixture", choices=FIXTURES, default="rank2free")
    ap.add_argument("--cseq", default="", help="mutation sequence selecting C")
    ap.add_argument("--rows", default="0,0,1,1", help="rows of C repeated in C'")
    ap.add_argument("--almost", action="store_true")
    ap.add_argument("--depth", type=int, default=4)
    args = ap.parse_args()

    seed = get_fixture(args.fixture).seed
    if args.almost:
        plan = almost_principal_builder(seed, _ints(args.rows), args.depth)
    else:
        plan = build_extension(seed, _ints(args.cseq), _ints(args.rows), args.depth)
    print("C =", plan.C)
    print("P =")
    for row in plan.P:
        print("   ", row)
    print(f"extended matrix is {plan.B_ext.m} x {plan.B_ext.n}")
    print(f"certified to depth {args.depth}: {plan.report.ok} ({plan.report.seeds_visited} seeds)")
    print("trivial" if plan.verdict.trivial else "non-trivial", plan.verdict.to_dict().get("witness"))


if __name__ == "__main__":
    main()
