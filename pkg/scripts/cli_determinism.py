"""Run the CLI suite twice in fresh interpreters and diff the outputs byte for byte."""

import argparse
import sys
import tempfile
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "tests"))
from cli_cases import run_suite  # noqa: E402


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--keep", help="directory to keep the outputs of the first run")
    args = ap.parse_args()
    with tempfile.TemporaryDirectory() as tmp:
        a = Path(args.keep) if args.keep else Path(tmp) / "a"
        b = Path(tmp) / "b"
        a.mkdir(parents=True, exist_ok=True)
        b.mkdir()
        r1, r2 = run_suite(a, "1"), run_suite(b, "2")
    bad = [k for k in r1 if r1[k] != r2[k]]
    for name, (code, out) in r1.items():
        print(f"{name:24s} exit {code}  {len(out):6d} bytes  {'DIFF' if name in bad else 'same'}")
    print("identical" if not bad else f"{len(bad)} outputs differ")
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
