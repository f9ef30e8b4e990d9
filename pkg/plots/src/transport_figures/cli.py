"""transport-figures: turn collective-transport output files into PNGs.

    transport-figures --figure pop --data steady.csv --out pop.png

Exit codes: 0 on success, 2 for usage errors or malformed data files.
"""
import argparse
import sys

import matplotlib

from .figures import FIGURES, DataFormatError, render


def _build_parser():
    parser = argparse.ArgumentParser(prog="transport-figures",
                                     description=__doc__.splitlines()[0])
    parser.add_argument("--figure", required=True, choices=FIGURES)
    parser.add_argument("--data", required=True,
                        help="CSV/JSON file written by collective-transport")
    parser.add_argument("--out", required=True, help="output image path")
    parser.add_argument("--title", default=None)
    parser.add_argument("--dpi", type=int, default=200)
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    matplotlib.use("Agg")
    try:
        fig = render(args.figure, args.data, args.out,
                     title=args.title, dpi=args.dpi)
    except (DataFormatError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    import matplotlib.pyplot as plt
    plt.close(fig)
    return 0


if __name__ == "__main__":
    sys.exit(main())
