"""A_n tables for a few curves, checking multiplicativity and the Hasse bound on the way.

    python3 scripts/ap_tables.py --nmax 500
"""
from __future__ import annotations

import argparse
import math
from dataclasses import dataclass, field
from math import gcd

from fltkit.apcount import build_ap_table
from fltkit.ecurve import RootForm, Short, parse_model

DEFAULT_CURVES = {
    "frey(1,8,9)": RootForm(0, 1, -8),
    "frey(3,125,128)": RootForm(0, 3, -125),
    "y^2=x^3+x+1": Short(1, 1),
    "37a1": parse_model("0,0,1,-1,0"),
}


@dataclass
class TableConfig:
    nmax: int = 300
    curves: dict = field(default_factory=lambda: dict(DEFAULT_CURVES))


def summarize(name, model, nmax):
    t = build_ap_table(model, nmax)
    vals = t.values
    mult_fail = sum(
        1
        for m in vals
        for n in vals
        if m * n <= nmax and gcd(m, n) == 1 and m * n in vals and vals[m * n] != vals[m] * vals[n]
    )
    primes = [p for p in vals if p > 1 and all(p % d for d in range(2, math.isqrt(p) + 1))]
    worst = max((abs(vals[p]) / (2 * math.sqrt(p)) for p in primes), default=0.0)
    head = " ".join(f"{vals[n]}" for n in sorted(vals)[:12])
    return f"{name:18s} computed={len(vals):4d} skipped={len(t.skipped):4d} mult_failures={mult_fail} max|a_p|/2sqrt(p)={worst:.3f}  a_n: {head}"


def main(argv=None) -> None:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--nmax", type=int, default=TableConfig.nmax)
    cfg = TableConfig(nmax=p.parse_args(argv).nmax)
    for name, model in cfg.curves.items():
        print(summarize(name, model, cfg.nmax))


if __name__ == "__main__":
    main()
