"""Monte-Carlo check of the n-application coverage regions.

For each (n, gamma) cell, samples random circuits of n ZZ(gamma)
applications joined by Haar-random locals and counts classes outside the
two coverage tetrahedra.

    python3 scripts/coverage_experiment.py --samples 100000
"""
import argparse
import time
from dataclasses import dataclass, field

import numpy as np

from weylforge.verifier import coverage_monte_carlo


@dataclass
class Config:
    samples: int = 100_000
    seed: int = 0
    ns: tuple = (3, 4, 5)
    gammas: tuple = field(default_factory=lambda: (np.pi / 2, np.pi / 3, np.pi / 4, np.pi / 8))
    tol: float = 1e-9


def main(cfg: Config) -> int:
    print(f"{'n':>2} {'gamma/pi':>9} {'samples':>8} {'violations':>10} {'max excess':>12} {'sec':>5}")
    total = 0
    for n in cfg.ns:
        for k, g in enumerate(cfg.gammas):
            t0 = time.perf_counter()
            rep = coverage_monte_carlo(n, g, cfg.samples, cfg.seed + 100 * n + k, tol=cfg.tol)
            dt = time.perf_counter() - t0
            total += rep.violations
            print(f"{n:2d} {g / np.pi:9.4f} {rep.samples:8d} {rep.violations:10d} {rep.max_boundary_excess:12.3e} {dt:5.1f}")
    print(f"total violations: {total}")
    return 1 if total else 0


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--samples", type=int, default=Config.samples)
    p.add_argument("--seed", type=int, default=Config.seed)
    a = p.parse_args()
    raise SystemExit(main(Config(samples=a.samples, seed=a.seed)))
