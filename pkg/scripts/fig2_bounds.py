"""Application-count bounds against gate strength.

Writes the CSV used to re-plot the bounds curve and prints the breakpoints
of the minimum count together with the gap to the constructive count.

    python3 scripts/fig2_bounds.py --steps 10000 --csv bounds.csv
"""
import argparse
from dataclasses import dataclass

import numpy as np

from weylforge import cli
from weylforge.verifier import bounds_table


@dataclass
class Config:
    steps: int = 10_000
    csv: str = "bounds.csv"


def breakpoints(rows):
    """Rows where the minimum count changes, scanning from pi/2 downwards."""
    out = []
    for prev, cur in zip(rows[::-1], rows[::-1][1:]):
        if cur.min != prev.min:
            out.append(prev)
    return out


def main(cfg: Config) -> None:
    lo = np.pi / 2 / cfg.steps
    code = cli.main(
        ["bounds", "--gamma-min", repr(lo), "--gamma-max", "pi/2", "--steps", str(cfg.steps), "--csv", cfg.csv]
    )
    if code:
        raise SystemExit(code)
    rows = bounds_table(np.linspace(lo, np.pi / 2, cfg.steps))
    gaps = np.array([r.constructive - r.min for r in rows])
    print(f"wrote {cfg.steps} rows to {cfg.csv}")
    print(f"constructive - min: 0 on {np.mean(gaps == 0):.1%} of the grid, 1 elsewhere (max {gaps.max()})")
    print(f"old bound beaten on {np.mean([r.constructive < r.old for r in rows]):.1%} of the grid")
    print("gamma/pi  min  constructive  old   (last grid point before each drop in min)")
    for r in breakpoints(rows)[:8]:
        print(f"{r.gamma / np.pi:8.4f}  {r.min:3d}  {r.constructive:12d}  {r.old:3d}")


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--steps", type=int, default=Config.steps)
    p.add_argument("--csv", default=Config.csv)
    a = p.parse_args()
    main(Config(a.steps, a.csv))
