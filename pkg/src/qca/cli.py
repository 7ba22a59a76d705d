"""Command-line front end.

Exit codes: 0 success / all checks pass, 1 a mathematical check failed,
2 malformed input, 3 usage error (bad flags, directions out of range).
"""

from __future__ import annotations

import argparse
import os
import sys

from . import fixtures, intmat
from .compat import W_from_omega, check_C2_C3, check_C4_local, omega_from_W, verify_triple_bounded
from .errors import (
    DimensionMismatch,
    DirectionOutOfRange,
    MalformedInput,
    NoNonzeroP,
    NotIndecomposable,
    NotLogCanonical,
    QCAError,
    SizeBound,
)
from .jsonio import dumps, load_seed_text, seed_to_dict
from .seed import CompatibleTriple, PoissonMatrix, apply_sequence, mutate_Omega_direct
from .structure import (
    almost_principal_builder,
    build_extension,
    classify_triviality,
    decompose,
    solve_second_deformations,
    theta_check,
)
from .torus import TorusContext, verify_log_canonical_step

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_USAGE = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def default_depth() -> int:
    raw = os.environ.get("QCA_DEPTH")
    if raw is None:
        return 4
    try:
        d = int(raw)
    except ValueError:
        raise UsageError(f"QCA_DEPTH must be an integer, got {raw!r}") from None
    if d < 0:
        raise UsageError("QCA_DEPTH must be non-negative")
    return d


def _int_list(text: str) -> list:
    text = text.strip()
    if not text:
        return []
    try:
        return [int(x) for x in text.split(",")]
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from None


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as e:
        raise MalformedInput(f"cannot read {path}: {e.strerror}") from None


def _load(path: str):
    return load_seed_text(_read(path))


def _depth(args) -> int:
    d = default_depth() if args.depth is None else args.depth
    if d < 0:
        raise UsageError("depth must be non-negative")
    return d


def _triple(seed, W, Omega) -> CompatibleTriple:
    # unchecked: a W violating C1* is reported as a failure, not rejected as input
    if W is None and Omega is not None:
        W = W_from_omega(Omega, seed.Lambda)
    if W is None:
        raise MalformedInput("this command needs W (or Omega) in the seed file")
    if not intmat.is_skew_symmetric(W):
        raise MalformedInput("W must be skew-symmetric")
    return CompatibleTriple._unchecked(seed, W)


# ---------------------------------------------------------------- commands

def cmd_mutate(args, out) -> int:
    seed, W, Omega = _load(args.seed)
    seq = _int_list(args.sequence)
    for k in seq:
        if not 0 <= k < seed.n:
            raise DirectionOutOfRange(f"direction {k} not in [0, {seed.n})")
    for k in seq:
        if Omega is not None:
            Omega = mutate_Omega_direct(Omega, seed, k)
        if W is not None:
            t = apply_sequence(CompatibleTriple._unchecked(seed, W), [k])
            seed, W = t.seed, t.W
        else:
            seed = apply_sequence(seed, [k])
    out.write(dumps(seed_to_dict(seed, W, Omega)))
    return EXIT_OK


def cmd_check(args, out) -> int:
    seed, W, Omega = _load(args.seed)
    triple = _triple(seed, W, Omega)
    depth = _depth(args)
    report = verify_triple_bounded(triple, depth)
    verdict = classify_triviality(triple.Lambda, triple.W)
    body = {"certified_depth": depth, "report": report.to_dict(), "triviality": verdict.to_dict()}
    out.write(dumps(body))
    return EXIT_OK if report.ok else EXIT_FAIL


def cmd_solve_w(args, out) -> int:
    seed, _, _ = _load(args.seed)
    depth = _depth(args)
    combos = [_int_list(c) for c in (args.combo or [])]
    try:
        cands = solve_second_deformations(seed, depth, combos)
    except DimensionMismatch as e:
        raise UsageError(str(e)) from None
    body = {
        "certified_depth": depth,
        "dimension": len(cands) - len(combos),
        "candidates": [c.to_dict() for c in cands],
    }
    out.write(dumps(body))
    return EXIT_OK


def cmd_decompose(args, out) -> int:
    seed, W, _ = _load(args.seed)
    dec = decompose(CompatibleTriple._unchecked(seed, W) if W is not None else seed)
    ok = theta_check(dec)
    body = {
        "blocks": dec.parts(),
        "theta_check": ok,
        "theta": [{"blocks": [a, b], "matrix": [list(r) for r in T]}
                  for (a, b), T in sorted(dec.theta.items())],
    }
    out.write(dumps(body))
    return EXIT_OK if ok else EXIT_FAIL


def cmd_extend(args, out) -> int:
    seed, _, _ = _load(args.seed)
    depth = _depth(args)
    rows = _int_list(args.rows)
    try:
        if args.almost:
            if args.cseq:
                raise UsageError("--almost uses C = I_n; drop --cseq")
            plan = almost_principal_builder(seed, rows, depth, args.p_index, args.a)
        else:
            plan = build_extension(seed, _int_list(args.cseq or ""), rows, depth, args.p_index, args.a)
    except SizeBound as e:
        raise UsageError(str(e)) from None
    except (NotIndecomposable, NoNonzeroP) as e:
        out.write(dumps({"error": type(e).__name__, "message": str(e)}))
        return EXIT_FAIL
    out.write(dumps({"certified_depth": depth, "plan": plan.to_dict()}))
    return EXIT_OK if plan.ok else EXIT_FAIL


def cmd_oracle(args, out) -> int:
    seed, W, Omega = _load(args.seed)
    k = args.direction
    if not 0 <= k < seed.n:
        raise DirectionOutOfRange(f"direction {k} not in [0, {seed.n})")
    if Omega is None:
        Omega = omega_from_W(W, seed.Lambda) if W is not None else PoissonMatrix.zero(seed.m)
    ctx = TorusContext(seed.m, seed.Lambda)
    direct = mutate_Omega_direct(Omega, seed, k)
    entries = []
    all_equal = True
    for j in range(seed.m):
        if j == k:
            continue
        row = {"j": j, "direct": direct[k, j].to_json()}
        try:
            w = verify_log_canonical_step(ctx, Omega, seed, k, j)
            row["leibniz"] = w.to_json()
            row["equal"] = w == direct[k, j]
        except NotLogCanonical as e:
            row["leibniz"] = None
            row["equal"] = False
            row["residual"] = e.residual.to_json()
        all_equal &= row["equal"]
        entries.append(row)
    as_triple = CompatibleTriple._unchecked(seed, W if W is not None else intmat.zeros(seed.m, seed.m))
    cond, _ = check_C2_C3(as_triple, omega_form=True, Omega=Omega)
    c4, _ = check_C4_local(seed, Omega)
    body = {"direction": k, "all_equal": all_equal, "entries": entries,
            "c2_c3_omega_form": cond, "c4_local": c4}
    out.write(dumps(body))
    return EXIT_OK if all_equal else EXIT_FAIL


def cmd_fixture(args, out) -> int:
    params = {k: getattr(args, k) for k in ("w1", "w2", "a", "b", "a1", "a2") if getattr(args, k) is not None}
    allowed = {"sl2": {"w1", "w2"}, "ex5x2": {"a", "b"}, "rank2free": {"a"}, "blockfree": {"a1", "a2"}}
    extra = set(params) - allowed[args.name]
    if extra:
        raise UsageError(f"fixture {args.name} does not take {', '.join(sorted(extra))}")
    triple = fixtures.get_fixture(args.name, **params)
    out.write(dumps(seed_to_dict(triple)))
    return EXIT_OK


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="qca", description="Quantum cluster seeds, Poisson structures and second quantization.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def seed_arg(sp):
        sp.add_argument("--seed", required=True, help="seed JSON file, or - for stdin")

    def depth_arg(sp):
        sp.add_argument("--depth", type=int, default=None,
                        help="mutation depth to certify (default 4, or $QCA_DEPTH)")

    sp = sub.add_parser("mutate", help="mutate a seed along a sequence of directions")
    seed_arg(sp)
    sp.add_argument("--sequence", default="", help="comma-separated 0-based directions")
    sp.set_defaults(func=cmd_mutate)

    sp = sub.add_parser("check", help="bounded verification of a compatible triple")
    seed_arg(sp)
    depth_arg(sp)
    sp.set_defaults(func=cmd_check)

    sp = sub.add_parser("solve-w", help="lattice of second deformation matrices")
    seed_arg(sp)
    depth_arg(sp)
    sp.add_argument("--combo", action="append", help="integer combination of basis vectors to certify too")
    sp.set_defaults(func=cmd_solve_w)

    sp = sub.add_parser("decompose", help="split a seed into indecomposable blocks")
    seed_arg(sp)
    sp.set_defaults(func=cmd_decompose)

    sp = sub.add_parser("extend", help="cluster extension carrying a non-trivial W")
    seed_arg(sp)
    sp.add_argument("--cseq", default="", help="mutation sequence selecting the C-matrix")
    sp.add_argument("--rows", required=True, help="rows of C repeated in C' (comma-separated)")
    sp.add_argument("--almost", action="store_true", help="almost principal coefficients (B; I; J)")
    sp.add_argument("--p-index", type=int, default=0, help="which kernel basis vector to use for P")
    sp.add_argument("--a", type=int, default=1, help="scalar on Lambda in W' = a Lambda + P")
    depth_arg(sp)
    sp.set_defaults(func=cmd_extend)

    sp = sub.add_parser("oracle", help="closed-form Omega mutation vs Leibniz bracket")
    seed_arg(sp)
    sp.add_argument("--direction", type=int, required=True)
    sp.set_defaults(func=cmd_oracle)

    sp = sub.add_parser("fixture", help="print a built-in seed")
    sp.add_argument("name", choices=fixtures.FIXTURES)
    for flag in ("w1", "w2", "a", "b", "a1", "a2"):
        sp.add_argument(f"--{flag}", type=int, default=None)
    sp.set_defaults(func=cmd_fixture)
    return p


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE
    try:
        return args.func(args, out)
    except (UsageError, DirectionOutOfRange) as e:
        print(f"qca: usage error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (QCAError, ValueError) as e:
        print(f"qca: invalid input: {e}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
