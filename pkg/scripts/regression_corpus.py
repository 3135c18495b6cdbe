"""Synthesize-then-verify regression over a seeded corpus, through the CLI.

Generates Haar-random targets with ``weylforge random``, compiles each with
``weylforge synthesize`` for every gate and checks ``weylforge verify``
exits 0.

    python3 scripts/regression_corpus.py --count 200 --gates cnot dcnot cu:pi/3 cu:0.3
"""
import argparse
import contextlib
import io
import json
import os
import tempfile
import time
from dataclasses import dataclass, field

from weylforge import cli


@dataclass
class Config:
    count: int = 200
    seed: int = 2024
    gates: list = field(default_factory=lambda: ["cnot", "dcnot", "cu:pi/3", "cu:0.3"])


def _quiet(argv):
    with contextlib.redirect_stdout(io.StringIO()):
        return cli.main(argv)


def main(cfg: Config) -> int:
    failures = 0
    with tempfile.TemporaryDirectory() as work:
        corpus = os.path.join(work, "corpus")
        assert cli.main(["random", "--seed", str(cfg.seed), "--count", str(cfg.count), "--out-dir", corpus]) == 0
        files = json.load(open(os.path.join(corpus, "manifest.json")))["files"]
        for gate in cfg.gates:
            t0 = time.perf_counter()
            apps, worst = [], 0.0
            for name in files:
                target = os.path.join(corpus, name)
                circ = os.path.join(work, "circuit.json")
                rep = os.path.join(work, "report.json")
                code = cli.main(["synthesize", "--target", target, "--gate", gate, "--out", circ, "--report", rep])
                code = code or _quiet(["verify", "--circuit", circ, "--target", target])
                if code:
                    failures += 1
                    print(f"FAIL {gate} {name} exit {code}")
                    continue
                r = json.load(open(rep))
                apps.append(r["applications"])
                worst = max(worst, r["residual"])
            dt = time.perf_counter() - t0
            hist = {k: apps.count(k) for k in sorted(set(apps))}
            print(f"{gate:>8}: {len(apps)}/{len(files)} verified, applications {hist}, worst residual {worst:.2e}, {dt:.1f} s")
    return 1 if failures else 0


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--count", type=int, default=Config.count)
    p.add_argument("--seed", type=int, default=Config.seed)
    p.add_argument("--gates", nargs="+", default=Config().gates)
    a = p.parse_args()
    raise SystemExit(main(Config(a.count, a.seed, a.gates)))
