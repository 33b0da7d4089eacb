"""Run the recurrence verifier on level-1 closed-form tables.

    python scripts/recurrence_check.py --order 30 A1 A2 D4 E8
"""

from __future__ import annotations

import argparse
import time
from dataclasses import dataclass, field

from affchar.characters import closed_form_level1, verify_recurrence


@dataclass
class RecurrenceConfig:
    order: int = 20
    types: list[str] = field(default_factory=lambda: ["A1", "A2", "A3", "A4", "D4", "E6", "E7", "E8"])


def run(cfg: RecurrenceConfig) -> bool:
    ok = True
    for name in cfg.types:
        t0 = time.perf_counter()
        table = closed_form_level1(name, cfg.order)
        npts = len(table.entries)
        rep = verify_recurrence(table)
        dt = time.perf_counter() - t0
        status = "ok" if rep.equal else f"MISMATCH at q^{rep.first_mismatch_exponent} {rep.detail}"
        print(f"{name:<4} support {npts:>10}  {rep.timing_note:<28} {status}  {dt:.1f}s")
        ok &= rep.equal
    return ok


def main() -> int:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--order", type=int, default=RecurrenceConfig.order)
    p.add_argument("types", nargs="*")
    a = p.parse_args()
    cfg = RecurrenceConfig(a.order, a.types) if a.types else RecurrenceConfig(a.order)
    return 0 if run(cfg) else 1


if __name__ == "__main__":
    raise SystemExit(main())
