"""Timed sweeps of the miners over generated datasets.

A sweep varies one generator knob (planted-set density or maximum basket
size), generates and parses one database per point, and times every miner
on that same database.  Only the mining call is timed.
"""

from __future__ import annotations

import csv
import logging
import statistics
import time
import tracemalloc
import traceback
from dataclasses import dataclass, field
from html import escape
from pathlib import Path
from typing import Callable, Mapping, Sequence

import numpy as np

from .apriori import mine_apriori
from .core import FimError, SupportThreshold, TransactionDatabase, parse_database
from .datagen import DESK_DEFAULTS, GeneratorConfig, generate
from .eclat import mine_eclat
from .fpgrowth import mine_fpgrowth

log = logging.getLogger(__name__)

MINERS: dict[str, Callable] = {
    "apriori": mine_apriori,
    "eclat": mine_eclat,
    "fpgrowth": mine_fpgrowth,
}

EXPERIMENTS = {"density": "density", "basket-size": "max_basket_size"}

DEFAULT_POINTS = {
    "density": [round(0.1 * i, 1) for i in range(1, 9)],
    "basket-size": list(range(5, 101, 5)),
}

TRIALS_HEADER = ["algorithm", "param_name", "param_value", "trial", "wall_seconds", "itemsets_found"]
MEDIANS_HEADER = ["algorithm", "param_name", "param_value", "median_wall_seconds", "itemsets_found", "failed_trials"]


class ExperimentError(FimError):
    def __init__(self, point, cause: BaseException):
        super().__init__(f"failed at point {point!r}: {cause}")
        self.point = point


@dataclass
class ExperimentSpec:
    kind: str = "density"
    base_config: GeneratorConfig = DESK_DEFAULTS
    points: Sequence[float] | None = None
    algorithms: Sequence[str] = ("apriori", "eclat", "fpgrowth")
    trials: int = 3
    min_support: SupportThreshold = field(default_factory=lambda: SupportThreshold.fraction(0.01))

    def __post_init__(self):
        if self.kind not in EXPERIMENTS:
            raise ValueError(f"unknown experiment {self.kind!r}; choose from {sorted(EXPERIMENTS)}")
        if self.points is None:
            self.points = list(DEFAULT_POINTS[self.kind])
        self.points = list(self.points)
        if not self.points or self.points != sorted(self.points):
            raise ValueError("points must be non-empty and ascending")
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        unknown = set(self.algorithms) - set(MINERS)
        if unknown:
            raise ValueError(f"unknown algorithms {sorted(unknown)}")

    @property
    def param_name(self) -> str:
        return EXPERIMENTS[self.kind]

    def config_at(self, index: int) -> GeneratorConfig:
        value = self.points[index]
        if self.param_name == "max_basket_size":
            value = int(value)
        return self.base_config.replace(**{self.param_name: value, "seed": point_seed(self.base_config.seed, index)})


def point_seed(base_seed: int, index: int) -> int:
    """Seed for sweep point ``index``, derived from the base seed."""
    return int(np.random.SeedSequence([base_seed, index]).generate_state(1, np.uint64)[0])


@dataclass
class TrialResult:
    algorithm: str
    param_value: float
    trial_index: int
    wall_seconds: float
    itemsets_found: int | None
    peak_memory_bytes: int | None = None
    error: str | None = None

    @property
    def failed(self) -> bool:
        return self.error is not None


@dataclass
class BenchReport:
    spec: ExperimentSpec
    trials: list[TrialResult]

    @property
    def medians(self) -> dict[tuple[str, float], float | None]:
        out: dict[tuple[str, float], float | None] = {}
        for alg in self.spec.algorithms:
            for point in self.spec.points:
                times = [
                    t.wall_seconds
                    for t in self.trials
                    if t.algorithm == alg and t.param_value == point and not t.failed
                ]
                out[alg, point] = statistics.median(times) if times else None
        return out

    def itemsets_found(self, algorithm: str, point: float) -> int | None:
        for t in self.trials:
            if t.algorithm == algorithm and t.param_value == point and not t.failed:
                return t.itemsets_found
        return None

    def disagreements(self) -> list[float]:
        """Points where successful trials report different itemset counts."""
        bad = []
        for point in self.spec.points:
            found = {t.itemsets_found for t in self.trials if t.param_value == point and not t.failed}
            if len(found) > 1:
                bad.append(point)
        return bad


def time_miner(
    algorithm: str,
    db: TransactionDatabase,
    sigma: SupportThreshold | int,
    trials: int = 1,
    param_value: float = 0.0,
    miners: Mapping[str, Callable] = MINERS,
    measure_memory: bool = False,
) -> list[TrialResult]:
    """Run one miner ``trials`` times on ``db``, timing the mining call only.

    A miner exception (``MemoryError`` included) becomes a failed trial
    carrying the diagnostic.  With ``measure_memory`` an extra untimed run
    under ``tracemalloc`` fills ``peak_memory_bytes``.
    """
    try:
        miner = miners[algorithm]
    except KeyError:
        raise ValueError(f"unknown algorithm {algorithm!r}; choose from {sorted(miners)}") from None
    if trials < 1:
        raise ValueError("trials must be >= 1")

    peak = None
    if measure_memory:
        tracemalloc.start()
        try:
            miner(db, sigma)
            peak = tracemalloc.get_traced_memory()[1]
        except Exception:
            pass
        finally:
            tracemalloc.stop()

    results = []
    for trial in range(trials):
        start = time.perf_counter()
        try:
            result = miner(db, sigma)
        except Exception as exc:
            elapsed = time.perf_counter() - start
            log.warning("%s failed at %s: %r", algorithm, param_value, exc)
            diagnostic = "".join(traceback.format_exception_only(type(exc), exc)).strip()
            results.append(TrialResult(algorithm, param_value, trial, elapsed, None, peak, diagnostic))
            continue
        elapsed = time.perf_counter() - start
        results.append(TrialResult(algorithm, param_value, trial, elapsed, len(result), peak))
    return results


def run_experiment(
    spec: ExperimentSpec,
    miners: Mapping[str, Callable] = MINERS,
    on_database: Callable[[float, TransactionDatabase], None] | None = None,
) -> BenchReport:
    trials: list[TrialResult] = []
    for index, point in enumerate(spec.points):
        try:
            config = spec.config_at(index)
            db = parse_database(generate(config))
            db.csr  # build the shared array view outside the timed region
        except Exception as exc:
            raise ExperimentError(point, exc) from exc
        if on_database is not None:
            on_database(point, db)
        log.info("%s=%s: %d baskets, %d items", spec.param_name, point, db.n, len(db.dictionary))
        for alg in spec.algorithms:
            trials.extend(time_miner(alg, db, spec.min_support, spec.trials, point, miners))
    return BenchReport(spec, trials)


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def write_trials_csv(report: BenchReport, path: Path) -> None:
    with open(path, "w", newline="", encoding="ascii") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(TRIALS_HEADER)
        for t in report.trials:
            w.writerow([t.algorithm, report.spec.param_name, _fmt(t.param_value), t.trial_index,
                        _fmt(t.wall_seconds), _fmt(t.itemsets_found)])


def write_medians_csv(report: BenchReport, path: Path) -> None:
    medians = report.medians
    with open(path, "w", newline="", encoding="ascii") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(MEDIANS_HEADER)
        for alg in report.spec.algorithms:
            for point in report.spec.points:
                failed = sum(1 for t in report.trials
                             if t.algorithm == alg and t.param_value == point and t.failed)
                w.writerow([alg, report.spec.param_name, _fmt(point), _fmt(medians[alg, point]),
                            _fmt(report.itemsets_found(alg, point)), failed])


_COLORS = ["#d62728", "#1f77b4", "#2ca02c", "#9467bd", "#ff7f0e"]


def render_svg(report: BenchReport, width: int = 640, height: int = 400) -> str:
    """Line chart of median seconds against the swept parameter, one polyline per miner."""
    spec = report.spec
    medians = report.medians
    left, right, top, bottom = 70, 130, 30, 50
    pw, ph = width - left - right, height - top - bottom
    xs = [float(p) for p in spec.points]
    ys = [v for v in medians.values() if v is not None]
    x0, x1 = min(xs), max(xs)
    if x1 == x0:
        x1 = x0 + 1.0
    y1 = max(ys) if ys else 1.0
    y1 = y1 if y1 > 0 else 1.0

    def sx(x):
        return left + (x - x0) / (x1 - x0) * pw

    def sy(y):
        return top + ph - y / y1 * ph

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>',
        f'<line x1="{left}" y1="{top + ph}" x2="{left + pw}" y2="{top + ph}" stroke="black"/>',
        f'<line x1="{left}" y1="{top}" x2="{left}" y2="{top + ph}" stroke="black"/>',
    ]
    for x in xs:
        out.append(f'<text x="{sx(x):.1f}" y="{top + ph + 16}" font-size="10" '
                   f'text-anchor="middle">{escape(_fmt(x if spec.kind == "density" else int(x)))}</text>')
    for frac in (0.0, 0.25, 0.5, 0.75, 1.0):
        y = frac * y1
        out.append(f'<text x="{left - 6}" y="{sy(y) + 3:.1f}" font-size="10" text-anchor="end">{y:.3g}</text>')
    out.append(f'<text x="{left + pw / 2:.1f}" y="{height - 10}" font-size="12" '
               f'text-anchor="middle">{escape(spec.param_name)}</text>')
    out.append(f'<text x="16" y="{top + ph / 2:.1f}" font-size="12" text-anchor="middle" '
               f'transform="rotate(-90 16 {top + ph / 2:.1f})">median runtime (s)</text>')
    for k, alg in enumerate(spec.algorithms):
        color = _COLORS[k % len(_COLORS)]
        pts = " ".join(f"{sx(float(p)):.2f},{sy(medians[alg, p]):.2f}"
                       for p in spec.points if medians[alg, p] is not None)
        out.append(f'<polyline fill="none" stroke="{color}" stroke-width="2" points="{pts}">'
                   f'<title>{escape(alg)}</title></polyline>')
        ly = top + 14 + 18 * k
        out.append(f'<line x1="{left + pw + 12}" y1="{ly}" x2="{left + pw + 32}" y2="{ly}" '
                   f'stroke="{color}" stroke-width="2"/>')
        out.append(f'<text x="{left + pw + 36}" y="{ly + 4}" font-size="12">{escape(alg)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def emit_report(report: BenchReport, out_dir) -> dict[str, Path]:
    """Write ``trials.csv``, ``medians.csv`` and ``runtime.svg`` into ``out_dir``."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    paths = {
        "trials": out_dir / "trials.csv",
        "medians": out_dir / "medians.csv",
        "svg": out_dir / "runtime.svg",
    }
    write_trials_csv(report, paths["trials"])
    write_medians_csv(report, paths["medians"])
    paths["svg"].write_text(render_svg(report), encoding="utf-8")
    return paths
