"""Compare the principal specialization of level-1 tables with the multisum side.

Prints the certified order reached from each table order and the leading
coefficients, e.g.

    python scripts/principal_vs_multisum.py --order 40 A1 A2 A3 D4 E6
"""

from __future__ import annotations

import argparse
import time
from dataclasses import dataclass, field

from affchar.identities import level1_table_order, multisum_side, verify_specialization


@dataclass
class SpecializationConfig:
    order: int = 30
    types: list[str] = field(default_factory=lambda: ["A1", "A2", "A3", "D4"])
    show: int = 12


def run(cfg: SpecializationConfig) -> bool:
    ok = True
    for name in cfg.types:
        t0 = time.perf_counter()
        rep = verify_specialization(name, cfg.order)
        dt = time.perf_counter() - t0
        head = multisum_side(name, min(cfg.order, cfg.show - 1)).coefficient_list(0, min(cfg.order, cfg.show - 1))
        status = "equal" if rep.equal else f"MISMATCH at q^{rep.first_mismatch_exponent}"
        print(f"{name:<4} table order {level1_table_order(name, cfg.order):>3}  {status:<10} {dt:6.2f}s  {head}")
        ok &= rep.equal
    return ok


def main() -> int:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--order", type=int, default=SpecializationConfig.order)
    p.add_argument("types", nargs="*")
    a = p.parse_args()
    cfg = SpecializationConfig(a.order, a.types) if a.types else SpecializationConfig(a.order)
    return 0 if run(cfg) else 1


if __name__ == "__main__":
    raise SystemExit(main())
