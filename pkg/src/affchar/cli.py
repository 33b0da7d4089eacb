"""Command-line front end.

Exit codes: 0 computed or verified, 1 a verifier found a mismatch, 2 usage or
input error, 3 request outside the engine's scope (non-simply-laced closed
form, missing seeds).
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
import tempfile
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Callable

from .characters import (
    CharacterTable,
    closed_form_level1,
    homogeneous_character,
    principal_character,
    propagate_from_initial,
    verify_recurrence,
)
from .errors import AffCharError, InputError, MissingSeed, ScopeError
from .identities import (
    DEFAULT_ORDER,
    ThetaSpec,
    builtin_product,
    verify_identity,
    verify_level1_identity,
    verify_specialization,
    verify_user_identity,
)
from .lie import LieType
from .qseries import ProductSpec, QSeries
from .report import IdentityReport

log = logging.getLogger("affchar")

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE, EXIT_SCOPE = 0, 1, 2, 3


@dataclass
class JobConfig:
    command: str
    lie_type: str | None = None
    rank: int | None = None
    level: int | None = None
    order: int | None = None
    output: str | None = None
    format: str = "json"
    seed_file: str | None = None
    table_file: str | None = None
    identity_file: str | None = None
    builtin: str | None = None
    kind: str = "both"

    def __post_init__(self) -> None:
        if self.order is not None and self.order < 0:
            raise InputError(f"--order must be >= 0, got {self.order}")
        if self.level is not None and self.level < 1:
            raise InputError(f"--level must be >= 1, got {self.level}")

    def parsed_type(self) -> LieType:
        if self.lie_type is None:
            raise InputError("--type is required")
        return LieType.parse(self.lie_type, self.rank)


def _load_json(path: str) -> Any:
    try:
        return json.loads(Path(path).read_text())
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from exc


def _load_seeds(path: str) -> tuple[dict, dict]:
    obj = _load_json(path)
    if isinstance(obj, list):
        obj = {"entries": obj}
    items = obj.get("entries", obj.get("seeds"))
    if not isinstance(items, list):
        raise InputError(f"{path}: expected an 'entries' list of {{'n': [...], 'series': {{...}}}}")
    try:
        seeds = {tuple(int(x) for x in it["n"]): QSeries.from_json(it["series"]) for it in items}
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"{path}: malformed seed entry: {exc}") from exc
    return obj, seeds


def _table(cfg: JobConfig) -> CharacterTable:
    if cfg.table_file:
        return CharacterTable.from_json(_load_json(cfg.table_file))
    if cfg.seed_file:
        meta, seeds = _load_seeds(cfg.seed_file)
        try:
            t = cfg.parsed_type() if cfg.lie_type else LieType.parse(meta["type"], cfg.rank)
            level = cfg.level if cfg.level is not None else int(meta.get("level", 1))
            order = cfg.order if cfg.order is not None else int(meta.get("order", 10))
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, InputError):
                raise
            raise InputError(f"seed file needs --type (or a 'type' field): {exc}") from exc
        return propagate_from_initial(t, level, seeds, order)
    t = cfg.parsed_type()
    if cfg.level not in (None, 1):
        raise MissingSeed(f"level {cfg.level} tables need {cfg.level}^{t.rank} seed series (--seed)")
    return closed_form_level1(t, 10 if cfg.order is None else cfg.order)


def _table_text(table: CharacterTable) -> str:
    lines = [f"type {table.lie_type}  level {table.level}  order {table.order}  mu {table.mu}"]
    for n in table.points():
        lines.append(f"A{n} = {table.entries[n]}")
    return "\n".join(lines)


def run_char(cfg: JobConfig) -> tuple[int, Any, str]:
    table = _table(cfg)
    return EXIT_OK, table.to_json(), _table_text(table)


def run_specialize(cfg: JobConfig) -> tuple[int, Any, str]:
    table = _table(cfg)
    out: dict[str, Any] = {"type": str(table.lie_type), "level": table.level, "tableOrder": table.order}
    text = [f"type {table.lie_type}  level {table.level}  table order {table.order}"]
    if cfg.kind in ("homogeneous", "both"):
        s = homogeneous_character(table)
        out["homogeneous"] = s.to_json()
        text.append(f"homogeneous: {s}")
    if cfg.kind in ("principal", "both"):
        s = principal_character(table)
        out["principal"] = s.to_json()
        text.append(f"principal:   {s}")
    return EXIT_OK, out, "\n".join(text)


def _report(report: IdentityReport, extra: dict | None = None) -> tuple[int, Any, str]:
    payload = dict(extra or {})
    payload["report"] = report.to_json()
    return (EXIT_OK if report.equal else EXIT_MISMATCH), payload, report.to_text()


def run_verify_recurrence(cfg: JobConfig) -> tuple[int, Any, str]:
    table = _table(cfg)
    report = verify_recurrence(table, cfg.order if cfg.table_file else None)
    return _report(report, {"type": str(table.lie_type), "level": table.level})


def _identity_from_job(job: dict, order: int | None) -> IdentityReport:
    try:
        lhs = ProductSpec.from_json(job["lhs"])
        rhs = job["rhs"]
        n = int(job.get("order", DEFAULT_ORDER)) if order is None else order
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, InputError):
            raise
        raise InputError(f"malformed identity job: {exc}") from exc
    if not isinstance(rhs, dict):
        raise InputError("identity job 'rhs' must be an object")
    if "theta" in rhs:
        th = rhs["theta"]
        try:
            spec = ThetaSpec.make(th["matrix"], int(th["scale"]), th["shift"])
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, InputError):
                raise
            raise InputError(f"malformed theta spec: {exc}") from exc
        return verify_user_identity(lhs, spec, n)
    builtin = rhs.get("builtin")
    if builtin not in ("A", "D", "level1") or "type" not in rhs:
        raise InputError("identity job 'rhs' needs {'builtin': 'A'|'D'|'level1', 'type': ...} or {'theta': ...}")
    t = LieType.parse(rhs["type"])
    if builtin in ("A", "D") and t.family != builtin:
        raise InputError(f"builtin {builtin} does not match type {t}")
    if builtin == "level1":
        return verify_level1_identity(lhs, t, n)
    return verify_identity(lhs, t, n)


def run_verify_identity(cfg: JobConfig) -> tuple[int, Any, str]:
    if cfg.identity_file:
        job = _load_json(cfg.identity_file)
        if not isinstance(job, dict):
            raise InputError("identity job must be a JSON object")
        return _report(_identity_from_job(job, cfg.order), {"job": job})
    if cfg.builtin is None:
        raise InputError("verify-identity needs --identity FILE or --builtin {A,D,level1}")
    order = DEFAULT_ORDER if cfg.order is None else cfg.order
    if cfg.builtin == "level1":
        t = cfg.parsed_type()
        return _report(verify_specialization(t, order), {"builtin": "level1", "type": str(t)})
    t = LieType.parse(cfg.lie_type or cfg.builtin, cfg.rank)
    if t.family != cfg.builtin:
        raise InputError(f"builtin {cfg.builtin} does not match type {t}")
    lhs = builtin_product(t.family, t.rank)
    return _report(verify_identity(lhs, t, order), {"builtin": cfg.builtin, "type": str(t)})


COMMANDS: dict[str, Callable[[JobConfig], tuple[int, Any, str]]] = {
    "char": run_char,
    "specialize": run_specialize,
    "verify-recurrence": run_verify_recurrence,
    "verify-identity": run_verify_identity,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="affchar",
        description="Truncated characters of affine vacuum modules and their q-series identities.",
    )
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--type", dest="lie_type", help="simple type, e.g. A2, D4, E8 (or a bare letter with --rank)")
        p.add_argument("--rank", type=int)
        p.add_argument("--level", type=int)
        p.add_argument("--order", type=int)
        p.add_argument("--format", choices=("json", "text"), default="json")
        p.add_argument("--output", help="write here (atomically) instead of stdout")

    for name in ("char", "specialize", "verify-recurrence"):
        p = sub.add_parser(name)
        common(p)
        p.add_argument("--seed", dest="seed_file", help="JSON seed series on the box {0..k-1}^l")
        if name != "char":
            p.add_argument("--table", dest="table_file", help="CharacterTable JSON to use instead of computing one")
        if name == "specialize":
            p.add_argument("--kind", choices=("homogeneous", "principal", "both"), default="both")

    p = sub.add_parser("verify-identity")
    common(p)
    p.add_argument("--builtin", choices=("A", "D", "level1"))
    p.add_argument("--identity", dest="identity_file", help="identity job JSON")
    return parser


def _write(text: str, output: str | None) -> None:
    if output is None:
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    target = Path(output)
    fd, tmp = tempfile.mkstemp(dir=target.parent or Path("."), prefix=f".{target.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, target)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(name)s: %(message)s", stream=sys.stderr)
    fields = {k: v for k, v in vars(args).items() if k in JobConfig.__dataclass_fields__}
    started = time.perf_counter()
    try:
        cfg = JobConfig(**fields)
        code, payload, text = COMMANDS[cfg.command](cfg)
    except ScopeError as exc:
        print(f"affchar: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_SCOPE
    except AffCharError as exc:
        print(f"affchar: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    body = json.dumps(payload, indent=2) + "\n" if cfg.format == "json" else text + "\n"
    _write(body, cfg.output)
    log.info("%s finished in %.3fs", cfg.command, time.perf_counter() - started)
    return code


if __name__ == "__main__":
    sys.exit(main())
