"""Sweep module families and print which ones prolong to n-Lie modules of V_n.

    python3 scripts/reproduce_classification.py --max-n 5 --max-t 3
"""

from __future__ import annotations

import argparse
import json
from dataclasses import asdict, dataclass

from nlie_kit.prolong import can_prolong, family_module, predicted_prolongs


@dataclass(frozen=True)
class SweepConfig:
    max_n: int = 5
    max_t: int = 3
    tensor_max: int = 3


def sweep(cfg: SweepConfig) -> list[dict]:
    rows = []
    for t in range(cfg.tensor_max + 1):
        for r in range(cfg.tensor_max + 1):
            rows.append(_row("tensor", 3, t, r))
    for n in range(4, cfg.max_n + 1):
        for t in range(cfg.max_t + 1):
            rows.append(_row("harmonic", n, t, 0))
        rows.append(_row("adjoint", n, 0, 0))
        rows.append(_row("wedge2", n, 0, 0))
    return rows


def _row(kind, n, t, r):
    rep = family_module(kind, n, t, r)
    verdict = can_prolong(rep).verdict
    return {"n": n, "family": kind, "t": t, "r": r, "dim": rep.dim, "prolongs": verdict,
            "predicted": predicted_prolongs(kind, n, t, r)}


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--max-n", type=int, default=SweepConfig.max_n)
    parser.add_argument("--max-t", type=int, default=SweepConfig.max_t)
    parser.add_argument("--tensor-max", type=int, default=SweepConfig.tensor_max)
    parser.add_argument("--json", action="store_true", help="print JSON instead of a table")
    args = parser.parse_args()
    cfg = SweepConfig(args.max_n, args.max_t, args.tensor_max)
    rows = sweep(cfg)
    if args.json:
        print(json.dumps({"config": asdict(cfg), "rows": rows}, indent=2))
    else:
        print(f"{'n':>2} {'family':<9}{'t':>3}{'r':>3}{'dim':>6}  prolongs  predicted")
        for row in rows:
            print(f"{row['n']:>2} {row['family']:<9}{row['t']:>3}{row['r']:>3}{row['dim']:>6}  "
                  f"{str(row['prolongs']):<9} {row['predicted']}")
    mismatches = [r for r in rows if r["prolongs"] != r["predicted"]]
    print(f"{len(rows)} modules, {len(mismatches)} disagreements with the predicted pattern")
    return 1 if mismatches else 0


if __name__ == "__main__":
    raise SystemExit(main())
