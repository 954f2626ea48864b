"""Write the heat-capacity/concurrence curves and the spectrum table to ./out."""
import argparse
from pathlib import Path

from heatent import cli


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default="out")
    ap.add_argument("--samples", type=int, default=401)
    args = ap.parse_args()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)

    for mode in ("cv-vs-nu", "cv-vs-lambda", "conc-vs-lambda"):
        path = out / f"{mode}.csv"
        cli.main(["curve", "--mode", mode, "--samples", str(args.samples), "-o", str(path)])
        print(f"wrote {path}")
    path = out / "spectrum.csv"
    cli.main(["spectrum", "--lambda-range=-3,3", "--steps", "121", "-o", str(path)])
    print(f"wrote {path}")


if __name__ == "__main__":
    main()
