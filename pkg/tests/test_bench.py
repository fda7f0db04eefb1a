import csv
import statistics
import xml.etree.ElementTree as ET

import pytest

from fimkit import bench
from fimkit.bench import (
    BenchReport,
    ExperimentError,
    ExperimentSpec,
    TrialResult,
    emit_report,
    point_seed,
    run_experiment,
    time_miner,
)
from fimkit.core import SupportThreshold, parse_database
from fimkit.datagen import GeneratorConfig

TINY = GeneratorConfig(basket_count=400, item_count=200, frequent_set_count=3, max_basket_size=8, density=0.5, seed=5)


def test_time_miner_worked_example(db5):
    results = time_miner("eclat", db5, 2, 3)
    assert len(results) == 3
    assert [r.trial_index for r in results] == [0, 1, 2]
    assert all(r.itemsets_found == 15 and r.wall_seconds >= 0 and not r.failed for r in results)


def test_time_miner_empty_database():
    (r,) = time_miner("fpgrowth", parse_database([]), 1)
    assert r.itemsets_found == 0 and r.wall_seconds >= 0


def test_time_miner_algorithms_agree(db5):
    counts = {alg: time_miner(alg, db5, 2)[0].itemsets_found for alg in bench.MINERS}
    assert set(counts.values()) == {15}


def test_time_miner_unknown_algorithm(db5):
    with pytest.raises(ValueError, match="unknown algorithm"):
        time_miner("naive", db5, 2)
    with pytest.raises(ValueError):
        time_miner("eclat", db5, 2, trials=0)


def test_time_miner_records_failure(db5):
    def exhausted(db, sigma):
        raise MemoryError("cannot allocate candidate array")

    results = time_miner("apriori", db5, 2, 2, miners={"apriori": exhausted})
    assert len(results) == 2
    assert all(r.failed and r.itemsets_found is None for r in results)
    assert "MemoryError" in results[0].error


def test_time_miner_memory_measurement(db5):
    (r,) = time_miner("eclat", db5, 2, measure_memory=True)
    assert r.peak_memory_bytes and r.peak_memory_bytes > 0
    (r,) = time_miner("eclat", db5, 2)
    assert r.peak_memory_bytes is None


def test_harness_overhead_is_small(db5):
    results = time_miner("noop", db5, 2, 50, miners={"noop": lambda db, sigma: ()})
    assert statistics.median(r.wall_seconds for r in results) < 1e-3


def test_spec_defaults():
    assert ExperimentSpec("density").points == [0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8]
    basket = ExperimentSpec("basket-size")
    assert basket.points == list(range(5, 101, 5)) and len(basket.points) == 20
    assert basket.param_name == "max_basket_size"


@pytest.mark.parametrize(
    "kwargs",
    [dict(kind="sizes"), dict(points=[]), dict(points=[0.5, 0.2]), dict(trials=0), dict(algorithms=["naive"])],
)
def test_spec_validation(kwargs):
    with pytest.raises(ValueError):
        ExperimentSpec(**{"kind": "density", **kwargs})


def test_point_seeds_are_distinct_and_stable():
    seeds = [point_seed(7, i) for i in range(20)]
    assert len(set(seeds)) == 20
    assert seeds == [point_seed(7, i) for i in range(20)]
    assert point_seed(8, 0) != seeds[0]


def test_config_at():
    spec = ExperimentSpec("basket-size", TINY, points=[5, 10])
    c = spec.config_at(1)
    assert c.max_basket_size == 10 and c.density == TINY.density and c.seed == point_seed(TINY.seed, 1)


@pytest.fixture(scope="module")
def small_report():
    spec = ExperimentSpec("density", TINY, points=[0.2, 0.6], trials=2, min_support=SupportThreshold.fraction(0.05))
    seen = {}

    def wrap(name):
        def run(db, sigma):
            seen.setdefault(name, []).append(id(db))
            return bench.MINERS[name](db, sigma)
        return run

    databases = []
    report = run_experiment(spec, miners={n: wrap(n) for n in bench.MINERS},
                            on_database=lambda p, db: databases.append(id(db)))
    return report, seen, databases


def test_run_experiment_cardinality(small_report):
    report, _, _ = small_report
    assert len(report.trials) == 3 * 2 * 2
    assert set(report.medians) == {(a, p) for a in bench.MINERS for p in (0.2, 0.6)}


def test_run_experiment_reuses_database(small_report):
    _, seen, databases = small_report
    for ids in seen.values():
        assert ids == [databases[0]] * 2 + [databases[1]] * 2


def test_run_experiment_counts_agree(small_report):
    report, _, _ = small_report
    assert report.disagreements() == []
    for point in (0.2, 0.6):
        assert len({report.itemsets_found(a, point) for a in bench.MINERS}) == 1
    assert report.itemsets_found("eclat", 0.2) > 0


def test_generation_failure_names_point():
    # max basket size 1 leaves no room for planted sets
    spec = ExperimentSpec("basket-size", TINY, points=[1, 5], trials=1)
    with pytest.raises(ExperimentError) as info:
        run_experiment(spec)
    assert info.value.point == 1


def test_disagreement_detected():
    spec = ExperimentSpec("density", TINY, points=[0.5], trials=1)
    report = BenchReport(spec, [TrialResult("apriori", 0.5, 0, 0.1, 10), TrialResult("eclat", 0.5, 0, 0.1, 11)])
    assert report.disagreements() == [0.5]


def test_emit_report(small_report, tmp_path):
    report, _, _ = small_report
    paths = emit_report(report, tmp_path / "out")
    with open(paths["trials"], newline="") as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == ["algorithm", "param_name", "param_value", "trial", "wall_seconds", "itemsets_found"]
    assert len(rows) == 1 + 12
    assert rows[1][:4] == ["apriori", "density", "0.2", "0"]
    assert b"\r" not in paths["trials"].read_bytes()

    # medians are re-derivable from the trials file
    with open(paths["medians"], newline="") as fh:
        medians = list(csv.DictReader(fh))
    assert len(medians) == 6
    for m in medians:
        times = [float(r[4]) for r in rows[1:] if r[0] == m["algorithm"] and r[2] == m["param_value"]]
        assert float(m["median_wall_seconds"]) == statistics.median(times)
        assert m["failed_trials"] == "0"

    svg = ET.parse(paths["svg"]).getroot()
    polylines = svg.findall("{http://www.w3.org/2000/svg}polyline")
    assert len(polylines) == 3
    assert all(len(p.get("points").split()) == 2 for p in polylines)
    assert "href" not in paths["svg"].read_text()


def test_emit_report_is_deterministic(small_report, tmp_path):
    report, _, _ = small_report
    a = emit_report(report, tmp_path / "a")
    b = emit_report(report, tmp_path / "b")
    for key in ("trials", "medians", "svg"):
        assert a[key].read_bytes() == b[key].read_bytes()


def test_emit_report_with_failed_trials(tmp_path):
    spec = ExperimentSpec("density", TINY, points=[0.1, 0.2], algorithms=["apriori", "eclat"], trials=1)
    trials = [
        TrialResult("apriori", 0.1, 0, 0.5, 4),
        TrialResult("apriori", 0.2, 0, 9.0, None, error="MemoryError"),
        TrialResult("eclat", 0.1, 0, 0.2, 4),
        TrialResult("eclat", 0.2, 0, 0.3, 6),
    ]
    paths = emit_report(BenchReport(spec, trials), tmp_path)
    rows = paths["trials"].read_text().splitlines()
    assert rows[2] == "apriori,density,0.2,0,9.0,"
    medians = paths["medians"].read_text().splitlines()
    assert medians[2] == "apriori,density,0.2,,,1"


def test_emit_report_unwritable(small_report, tmp_path):
    report, _, _ = small_report
    blocker = tmp_path / "file"
    blocker.write_text("x")
    with pytest.raises(OSError):
        emit_report(report, blocker / "sub")
