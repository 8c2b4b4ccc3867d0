"""Sweeps over qubit count and state family, with CSV / JSON / table output."""

from __future__ import annotations

import csv
import enum
import io
import json
from dataclasses import asdict, dataclass
from typing import Iterable, Sequence

from pptineq.config import DEFAULT_TOLERANCES, DENSE_STATE_MAX, FULL_SPECTRUM_MAX, N_MAX, Tolerances
from pptineq.criteria import ppt_signature
from pptineq.errors import CapacityError, DomainError, NumericalError
from pptineq.qmat import DensityOperator
from pptineq.states import dur_state, ghz, noisy_ghz
from pptineq.witnesses import WitnessKind, build_witness

__all__ = [
    "Family",
    "SweepConfig",
    "WitnessResult",
    "SweepRow",
    "run_sweep",
    "threshold_report",
    "emit",
    "rows_from_json",
    "rows_from_csv",
    "CSV_HEADER",
]

CSV_HEADER = ("n", "family", "witness", "value", "bound", "violated", "all_ppt", "npt_cuts")
ALL_WITNESSES = tuple(WitnessKind)


class Family(str, enum.Enum):
    GHZ = "ghz"
    DUR = "dur"
    NOISY_GHZ = "noisyGhz"


@dataclass(frozen=True)
class SweepConfig:
    family: Family
    n_min: int = 3
    n_max: int = 10
    witnesses: tuple[WitnessKind, ...] = ALL_WITNESSES
    visibility: float | None = None
    check_ppt_signature: bool = False
    output_format: str = "json"
    seed: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "family", Family(self.family))
        kinds = sorted({WitnessKind(w) for w in self.witnesses}, key=ALL_WITNESSES.index)
        object.__setattr__(self, "witnesses", tuple(kinds))
        if not kinds:
            raise DomainError("at least one witness is required")
        if not 2 <= self.n_min <= self.n_max <= N_MAX:
            raise DomainError(f"need 2 <= n_min <= n_max <= {N_MAX}, got {self.n_min}..{self.n_max}")
        if self.family is Family.DUR and self.n_min < 3:
            raise DomainError("the Dür family starts at 3 qubits")
        if self.family is Family.NOISY_GHZ:
            if self.visibility is None:
                raise DomainError("noisyGhz needs a visibility")
            if not 0.0 <= self.visibility <= 1.0:
                raise DomainError(f"visibility must lie in [0, 1], got {self.visibility}")
        elif self.visibility is not None:
            raise DomainError("visibility only applies to the noisyGhz family")
        if self.check_ppt_signature and self.n_max > FULL_SPECTRUM_MAX:
            raise DomainError(f"PPT signatures are limited to n_max <= {FULL_SPECTRUM_MAX}")
        if self.output_format not in ("csv", "json", "table"):
            raise DomainError(f"unknown output format {self.output_format!r}")


@dataclass(frozen=True)
class WitnessResult:
    witness: str
    value: float
    bound: float
    violated: bool


@dataclass(frozen=True)
class SweepRow:
    n: int
    family: str
    witnesses: tuple[WitnessResult, ...] = ()
    visibility: float | None = None
    all_ppt: bool | None = None
    npt_cuts: int | None = None
    error: str | None = None


def _build_state(family: Family, n: int, visibility: float | None) -> DensityOperator:
    if family is Family.DUR:
        return dur_state(n)
    if family is Family.GHZ:
        return ghz(n).projector()
    return noisy_ghz(n, visibility)


def _evaluate_row(config: SweepConfig, n: int, tol: Tolerances) -> SweepRow:
    if n > DENSE_STATE_MAX:
        raise CapacityError(f"dense states are limited to {DENSE_STATE_MAX} qubits in sweeps")
    rho = _build_state(config.family, n, config.visibility)
    results = []
    for kind in config.witnesses:
        w = build_witness(kind, n)
        value = w.expectation(rho)
        if n <= FULL_SPECTRUM_MAX:
            dense = w.dense_expectation(rho)
            if abs(dense - value) > tol.eig:
                raise NumericalError(f"{kind.value} at n={n}: structured {value!r} vs dense {dense!r}")
        value = float(abs(value))
        results.append(WitnessResult(kind.value, value, w.classical_bound, bool(value > w.classical_bound + tol.eig)))
    all_ppt = npt = None
    if config.check_ppt_signature:
        sig = ppt_signature(rho, tol=tol)
        all_ppt, npt = sig.all_ppt, len(sig.npt_cuts)
    return SweepRow(n, config.family.value, tuple(results), config.visibility, all_ppt, npt)


def run_sweep(config: SweepConfig, *, tol: Tolerances = DEFAULT_TOLERANCES) -> list[SweepRow]:
    """One row per qubit count. Capacity problems are recorded on the row and the sweep continues."""
    rows = []
    for n in range(config.n_min, config.n_max + 1):
        try:
            rows.append(_evaluate_row(config, n, tol))
        except (CapacityError, MemoryError) as exc:
            rows.append(SweepRow(n, config.family.value, visibility=config.visibility, error=f"capacity: {exc}"))
    return rows


def threshold_report(rows: Sequence[SweepRow]) -> dict[str, int | None]:
    """First qubit count at which each witness is violated, ``None`` if never in range."""
    families = {r.family for r in rows}
    if len(families) > 1:
        raise DomainError(f"rows mix families {sorted(families)}")
    kinds: list[str] = []
    for r in rows:
        for res in r.witnesses:
            if res.witness not in kinds:
                kinds.append(res.witness)
    order = [k.value for k in ALL_WITNESSES]
    kinds.sort(key=lambda k: order.index(k) if k in order else len(order))
    report: dict[str, int | None] = {k: None for k in kinds}
    for r in sorted(rows, key=lambda r: r.n):
        for res in r.witnesses:
            if res.violated and report[res.witness] is None:
                report[res.witness] = r.n
    return report


def _fmt(x: float) -> str:
    return f"{x:.12g}"


def _flag(b: bool | None) -> str:
    return "" if b is None else ("true" if b else "false")


def _flat_records(rows: Iterable[SweepRow]) -> list[list[str]]:
    out = []
    for r in rows:
        for res in r.witnesses:
            out.append(
                [
                    str(r.n),
                    r.family,
                    res.witness,
                    _fmt(res.value),
                    _fmt(res.bound),
                    _flag(res.violated),
                    _flag(r.all_ppt),
                    "" if r.npt_cuts is None else str(r.npt_cuts),
                ]
            )
    return out


def _row_to_dict(row: SweepRow) -> dict:
    d = asdict(row)
    d["witnesses"] = [asdict(w) for w in row.witnesses]
    return d


def emit(rows: Sequence[SweepRow], fmt: str = "json") -> bytes:
    """Serialize rows; output is deterministic for identical rows."""
    if fmt == "json":
        return (json.dumps([_row_to_dict(r) for r in rows], indent=2) + "\n").encode()
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        writer.writerows(_flat_records(rows))
        return buf.getvalue().encode()
    if fmt == "table":
        table = [list(CSV_HEADER)] + _flat_records(rows)
        widths = [max(len(line[i]) for line in table) for i in range(len(CSV_HEADER))]
        lines = ["  ".join(cell.ljust(w) for cell, w in zip(line, widths)).rstrip() for line in table]
        lines.insert(1, "  ".join("-" * w for w in widths))
        for r in rows:
            if r.error:
                lines.append(f"n={r.n}: {r.error}")
        return ("\n".join(lines) + "\n").encode()
    raise DomainError(f"unknown output format {fmt!r}")


def rows_from_json(text: str | bytes) -> list[SweepRow]:
    data = json.loads(text)
    if not isinstance(data, list):
        raise DomainError("sweep JSON must be an array of rows")
    rows = []
    for d in data:
        d = dict(d)
        d["witnesses"] = tuple(WitnessResult(**w) for w in d.get("witnesses", ()))
        rows.append(SweepRow(**d))
    return rows


def _parse_flag(s: str) -> bool | None:
    return None if s == "" else s == "true"


def rows_from_csv(text: str | bytes) -> list[SweepRow]:
    """Rebuild rows from CSV output (values carry 12 significant digits)."""
    if isinstance(text, bytes):
        text = text.decode()
    reader = csv.reader(io.StringIO(text))
    header = next(reader, None)
    if header is None or tuple(header) != CSV_HEADER:
        raise DomainError("not a sweep CSV (unexpected header)")
    grouped: dict[tuple[int, str], dict] = {}
    for rec in reader:
        n, family, witness, value, bound, violated, all_ppt, npt = rec
        entry = grouped.setdefault(
            (int(n), family),
            {"results": [], "all_ppt": _parse_flag(all_ppt), "npt": None if npt == "" else int(npt)},
        )
        entry["results"].append(WitnessResult(witness, float(value), float(bound), violated == "true"))
    return [
        SweepRow(n, fam, tuple(e["results"]), all_ppt=e["all_ppt"], npt_cuts=e["npt"])
        for (n, fam), e in grouped.items()
    ]
