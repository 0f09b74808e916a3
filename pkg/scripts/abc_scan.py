"""High-quality abc triples up to a bound, with the K = 1 exponent bound for each.

    python3 scripts/abc_scan.py --cmax 5000 --threshold 1.3 --out abc.csv
"""
from __future__ import annotations

import argparse
import csv
import sys
import time
from dataclasses import dataclass

from fltkit.classical import abc_scan, flt_exponent_bound


@dataclass
class ScanConfig:
    cmax: int = 1000
    threshold: float = 1.4
    out: str | None = None


def run(cfg: ScanConfig) -> list[list]:
    rows = []
    for t in abc_scan(cfg.cmax, cfg.threshold):
        rows.append([t.a, t.b, t.c, t.rad, f"{t.q:.12g}", flt_exponent_bound(t.a, t.b, t.c)])
    return rows


def main(argv=None) -> None:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--cmax", type=int, default=ScanConfig.cmax)
    p.add_argument("--threshold", type=float, default=ScanConfig.threshold)
    p.add_argument("--out", default=None)
    cfg = ScanConfig(**vars(p.parse_args(argv)))
    start = time.perf_counter()
    rows = run(cfg)
    sink = open(cfg.out, "w", newline="") if cfg.out else sys.stdout
    w = csv.writer(sink, lineterminator="\n")
    w.writerow(["a", "b", "c", "rad", "q", "n_bound_K1"])
    w.writerows(rows)
    if cfg.out:
        sink.close()
    print(f"# {len(rows)} triples with q > {cfg.threshold}, c <= {cfg.cmax} ({time.perf_counter() - start:.2f}s)", file=sys.stderr)


if __name__ == "__main__":
    main()
