"""Check the A- and D-type product = theta identities over a range of ranks.

    python scripts/macdonald_sweep.py --order 300 --max-rank 6
"""

from __future__ import annotations

import argparse
import time
from dataclasses import dataclass

from affchar.identities import macdonald_product_a, macdonald_product_d, verify_identity


@dataclass
class SweepConfig:
    order: int = 200
    max_rank: int = 5


def sweep(cfg: SweepConfig) -> bool:
    ok = True
    jobs = [("A", r, macdonald_product_a(r)) for r in range(1, cfg.max_rank + 1)]
    jobs += [("D", r, macdonald_product_d(r)) for r in range(3, cfg.max_rank + 1)]
    print(f"{'type':<6}{'result':<28}{'seconds':>8}")
    for family, rank, spec in jobs:
        t0 = time.perf_counter()
        rep = verify_identity(spec, f"{family}{rank}", cfg.order)
        dt = time.perf_counter() - t0
        status = f"equal to q^{rep.order_checked}" if rep.equal else f"MISMATCH at q^{rep.first_mismatch_exponent}"
        print(f"{family}{rank:<5}{status:<28}{dt:8.2f}")
        ok &= rep.equal
    return ok


def main() -> int:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--order", type=int, default=SweepConfig.order)
    p.add_argument("--max-rank", type=int, default=SweepConfig.max_rank)
    a = p.parse_args()
    return 0 if sweep(SweepConfig(a.order, a.max_rank)) else 1


if __name__ == "__main__":
    raise SystemExit(main())
