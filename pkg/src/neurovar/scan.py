"""Grid scans over bounded architecture families and report serialization.

A scan enumerates every architecture inside the requested bounds (sorted by
depth, widths, degrees), runs the dimension sampler and the theorem verdict
on each, and flags disagreements between prediction and sampling.  Reports
serialize to JSON or CSV with a fixed column set; all values are exact
(integers, strings, booleans), primes are decimal strings, and re-running a
scan with the same spec and seed reproduces every row.
"""

from __future__ import annotations

import csv
import io
import json
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import product

from .domains import PrimeField, RATIONALS, random_prime
from .errors import NeurovarError
from .network import Architecture, validate
from .rank import DEFAULT_SEED, DEFAULT_TRIES, DimReport, derive_seed, neurovariety_stats
from .theory import (
    LAST_VERONESE_DEFECTIVE,
    PREDICTED_IDENTIFIABLE,
    PREDICTED_NON_DEFECTIVE,
    ROOM_FAILS,
    Verdict,
    necessity_scope,
    theorem_verdict,
)

REPORT_KEYS = (
    "arch",
    "degrees",
    "expdim",
    "expdim_refined",
    "dim_actual",
    "fiber_dim",
    "defective",
    "verdict",
    "trials",
    "seed",
    "domain",
    "prime",
    "pivot",
    "wall_ms",
)


@dataclass(frozen=True)
class ScanSpec:
    """Bounds and sampling parameters for an exhaustive scan.

    Architectures with more free weights than `max_free` or more ambient
    coordinates than `max_ambient` are skipped before any sampling; the
    defaults keep a full small-architecture sweep within minutes while
    covering every worked example.
    """

    depths: tuple[int, ...] = (2, 3)
    min_width: int = 1
    max_width: int = 4
    max_out_width: int = 2
    min_degree: int = 2
    max_degree: int = 4
    tries: int = DEFAULT_TRIES
    seed: int = DEFAULT_SEED
    field: str = "prime"
    prime: int | None = None
    max_free: int = 64
    max_ambient: int = 20_000

    def validate_bounds(self) -> None:
        if self.min_width < 1 or self.max_width < self.min_width:
            raise ValueError("width bounds must satisfy 1 <= min <= max")
        if self.min_degree < 2 or self.max_degree < self.min_degree:
            raise ValueError("degree bounds must satisfy 2 <= min <= max")
        if any(L < 2 for L in self.depths):
            raise ValueError("scans cover depths L >= 2")
        if self.max_out_width < 1:
            raise ValueError("max_out_width must be >= 1")
        if self.field not in ("prime", "rational"):
            raise ValueError("field must be 'prime' or 'rational'")

    def domain(self):
        if self.field == "rational":
            return RATIONALS
        p = self.prime if self.prime is not None else random_prime(derive_seed(self.seed, "prime"))
        return PrimeField(p)


@dataclass(frozen=True)
class ScanRow:
    """One architecture's scan outcome.

    `agreement` is False only when a non-defectiveness or identifiability
    prediction was contradicted by sampling, or when the necessity direction
    (failed condition must mean defective, inside its scope) failed.
    """

    arch: Architecture
    report: DimReport | None
    verdict: Verdict | None
    agreement: bool
    wall_ms: int
    error: str | None = None

    def to_record(self) -> dict:
        rep = self.report
        record = {
            "arch": list(self.arch.widths),
            "degrees": list(self.arch.degrees),
            "expdim": rep.expdim_general if rep else None,
            "expdim_refined": rep.expdim_refined if rep else None,
            "dim_actual": rep.dim_actual if rep else None,
            "fiber_dim": rep.fiber_dim if rep else None,
            "defective": rep.defective if rep else None,
            "verdict": self.verdict.label() if self.verdict else self.error,
            "trials": rep.trials if rep else None,
            "seed": rep.seed if rep else None,
            "domain": rep.domain_kind if rep else None,
            "prime": str(rep.prime) if rep and rep.prime is not None else None,
            "pivot": (rep.pivots[0] if len(rep.pivots) == 1 else list(rep.pivots)) if rep else None,
            "wall_ms": self.wall_ms,
        }
        return record


def grid_architectures(spec: ScanSpec) -> list[Architecture]:
    """All architectures inside the bounds, sorted by (L, widths, degrees)."""
    spec.validate_bounds()
    archs = []
    for L in sorted(spec.depths):
        width_ranges = [range(spec.min_width, spec.max_width + 1)] * L
        out_range = range(1, min(spec.max_width, spec.max_out_width) + 1)
        for widths in product(*width_ranges):
            for out in out_range:
                full = widths + (out,)
                for degrees in product(range(spec.min_degree, spec.max_degree + 1), repeat=L - 1):
                    arch = validate(full, degrees)
                    if arch.free_weight_count > spec.max_free:
                        continue
                    if arch.n_out * arch.ambient_per_output > spec.max_ambient:
                        continue
                    archs.append(arch)
    return archs


def agreement_flag(verdict: Verdict, report: DimReport, arch: Architecture) -> bool:
    """Check prediction vs sampling in both directions."""
    if verdict.kind in (PREDICTED_NON_DEFECTIVE, PREDICTED_IDENTIFIABLE) and report.defective:
        return False
    if (
        necessity_scope(arch)
        and verdict.kind in (ROOM_FAILS, LAST_VERONESE_DEFECTIVE)
        and not report.defective
    ):
        return False
    return True


def _compute_row(args) -> ScanRow:
    arch, tries, seed, field, prime = args
    domain = PrimeField(prime) if field == "prime" else RATIONALS
    start = time.perf_counter()
    try:
        verdict = theorem_verdict(arch)
        report = neurovariety_stats(arch, tries=tries, seed=seed, domain=domain)
        wall = int((time.perf_counter() - start) * 1000)
        return ScanRow(arch, report, verdict, agreement_flag(verdict, report, arch), wall)
    except NeurovarError as exc:
        wall = int((time.perf_counter() - start) * 1000)
        return ScanRow(arch, None, None, True, wall, error=f"{type(exc).__name__}: {exc}")


def scan(spec: ScanSpec, workers: int | None = None) -> list[ScanRow]:
    """Run the grid scan; deterministic given the spec, whatever the schedule.

    Per-row errors are recorded in the row rather than aborting the scan.
    `workers` defaults to the NV_THREADS environment variable (else serial).
    """
    domain = spec.domain()
    prime = domain.p if isinstance(domain, PrimeField) else None
    archs = grid_architectures(spec)
    jobs = [(arch, spec.tries, spec.seed, spec.field, prime) for arch in archs]
    if workers is None:
        workers = int(os.environ.get("NV_THREADS", "1"))
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_compute_row, jobs, chunksize=8))
    else:
        rows = [_compute_row(job) for job in jobs]
    return rows


# -- serialization ---------------------------------------------------------------


def _record_of(row) -> dict:
    if isinstance(row, ScanRow):
        record = row.to_record()
    else:
        record = dict(row)
    return {key: record.get(key) for key in REPORT_KEYS}


def _csv_cell(key: str, value) -> str:
    if value is None:
        return ""
    if key in ("arch", "degrees"):
        return ",".join(str(v) for v in value)
    if key == "pivot" and isinstance(value, list):
        return ";".join(str(v) for v in value)
    if isinstance(value, bool):
        return "true" if value else "false"
    return str(value)


def emit_report(rows, fmt: str = "json", path: str | None = None) -> str:
    """Serialize rows (ScanRow objects or parsed records) to JSON or CSV.

    Returns the serialized text; writes it to `path` when given.  Emission is
    byte-stable: identical rows produce identical bytes.
    """
    records = [_record_of(r) for r in rows]
    if fmt == "json":
        text = json.dumps(records, indent=2) + "\n"
    elif fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, quoting=csv.QUOTE_MINIMAL, lineterminator="\n")
        writer.writerow(REPORT_KEYS)
        for rec in records:
            writer.writerow([_csv_cell(k, rec[k]) for k in REPORT_KEYS])
        text = buf.getvalue()
    else:
        raise ValueError("format must be 'json' or 'csv'")
    if path is not None:
        try:
            with open(path, "w", encoding="utf-8") as fh:
                fh.write(text)
        except OSError as exc:
            raise OSError(f"cannot write report to {path}: {exc}") from exc
    return text


def _csv_value(key: str, cell: str):
    if cell == "":
        return None
    if key in ("arch", "degrees"):
        return [int(v) for v in cell.split(",")] if cell else []
    if key == "pivot":
        if ";" in cell:
            return [int(v) for v in cell.split(";")]
        return int(cell)
    if key == "defective":
        return cell == "true"
    if key in ("expdim", "expdim_refined", "dim_actual", "fiber_dim", "trials", "seed", "wall_ms"):
        return int(cell)
    return cell


def parse_report(text: str, fmt: str = "json") -> list[dict]:
    """Parse an emitted report back into records (inverse of emit_report)."""
    if fmt == "json":
        return [{k: rec.get(k) for k in REPORT_KEYS} for rec in json.loads(text)]
    if fmt == "csv":
        reader = csv.reader(io.StringIO(text))
        header = next(reader)
        if tuple(header) != REPORT_KEYS:
            raise ValueError("unexpected CSV header")
        out = []
        for row in reader:
            rec = {k: _csv_value(k, cell) for k, cell in zip(header, row)}
            # degrees may legitimately be empty for depth-1 networks
            if rec["degrees"] is None:
                rec["degrees"] = []
            out.append(rec)
        return out
    raise ValueError("format must be 'json' or 'csv'")
