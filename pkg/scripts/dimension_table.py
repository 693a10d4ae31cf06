"""Tabulate dimensions of irreducible n-Lie V_n-modules against harmonic polynomials.

    python3 scripts/dimension_table.py --max-n 6 --max-t 5
"""

from __future__ import annotations

import argparse
from dataclasses import dataclass

from nlie_kit.prolong import nlie_dimension
from nlie_kit.sorep import laplacian_kernel_dim, sl2_module


@dataclass(frozen=True)
class TableConfig:
    max_n: int = 6
    max_t: int = 4


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--max-n", type=int, default=TableConfig.max_n)
    parser.add_argument("--max-t", type=int, default=TableConfig.max_t)
    args = parser.parse_args()
    cfg = TableConfig(args.max_n, args.max_t)
    ts = range(cfg.max_t + 1)
    print("n \\ t " + "".join(f"{t:>8}" for t in ts))
    bad = 0
    for n in range(2, cfg.max_n + 1):
        cells = []
        for t in ts:
            formula = nlie_dimension(n, t)
            model = sl2_module(t).dim if n == 2 else laplacian_kernel_dim(n + 1, t)
            bad += formula != model
            cells.append(f"{formula:>8}" if formula == model else f"{formula}!={model}".rjust(8))
        print(f"{n:>5} " + "".join(cells))
    return 1 if bad else 0


if __name__ == "__main__":
    raise SystemExit(main())
