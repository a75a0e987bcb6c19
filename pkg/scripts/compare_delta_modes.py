#!/usr/bin/env python3
"""Compare the two grading conventions for the gluing operator, slot by slot.

The graded convention keeps the lambda exponent fixed (the invariant 2g-2+n
is preserved when points are glued); the literal convention multiplies each
gluing term by lambda^(2k) instead.  The literal form misplaces boundary
strata -- visibly already for the one-pointed genus-1 space, whose boundary
point it moves three lambda-degrees up, into the (2,1) slot.

Usage: python3 scripts/compare_delta_modes.py [--truncation N]
"""

import argparse
import sys

from stablemoduli.dataset import embedded_dataset
from stablemoduli.pipeline import (
    closed_moduli_series,
    open_moduli_series,
    stable_slots,
)
from stablemoduli.plethysm import GluingMode
from stablemoduli.series import Truncation


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument(
        "--truncation", type=int, default=5, help="lambda-exponent bound (default 5)"
    )
    args = parser.parse_args()

    table = embedded_dataset()
    trunc = Truncation.standard(args.truncation)
    phi = open_moduli_series(table, trunc)
    by_mode = {
        mode: closed_moduli_series(phi, mode)
        for mode in (GluingMode.GRADED, GluingMode.LITERAL)
    }

    width = max(
        len(by_mode[GluingMode.GRADED].rank(2 * g - 2 + n, n).render_q())
        for (g, n) in stable_slots(args.truncation)
    )
    print(f"{'slot':8s} {'graded rank':{width}s} literal rank")
    disagreements = 0
    for (g, n) in stable_slots(args.truncation):
        ranks = {}
        for mode, closed in by_mode.items():
            r = closed.rank(2 * g - 2 + n, n)
            ranks[mode] = r.render_q() if r.is_diagonal() else r.render()
        marker = ""
        if ranks[GluingMode.GRADED] != ranks[GluingMode.LITERAL]:
            disagreements += 1
            marker = "   <-- differs"
        print(
            f"M[{g},{n}]   {ranks[GluingMode.GRADED]:{width}s} "
            f"{ranks[GluingMode.LITERAL]}{marker}"
        )
    print(f"\n{disagreements} of {len(stable_slots(args.truncation))} slots differ")
    return 0


if __name__ == "__main__":
    sys.exit(main())
