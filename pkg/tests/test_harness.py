import numpy as np
import pytest

from isinglearn.errors import ConfigError
from isinglearn.harness import (
    CSV_HEADER,
    ExperimentConfig,
    ExperimentRecord,
    child_seed,
    generate_mixed_coupling,
    records_from_csv,
    records_to_csv,
    run_experiment,
    summarize,
    summary_to_csv,
)
from isinglearn.model import canonical_pairs


def small_config(**kw):
    base = dict(p=5, density=0.3, n_list=(50, 100), replicates=3, master_seed=7)
    base.update(kw)
    return ExperimentConfig(**base)


class TestChildSeed:
    def test_frozen_values(self):
        # pinned so reruns on other platforms reproduce the same streams
        assert child_seed(0, "model") == 13200462363769634258
        assert child_seed(20260823, 10, "model") == 12165481915214238131
        assert child_seed(20260823, 10, 1000, 0, "data") == 12553322070538421394

    def test_distinct_per_coordinate(self):
        seen = {
            child_seed(1, 2, 3),
            child_seed(1, 2, 4),
            child_seed(1, 3, 3),
            child_seed(2, 2, 3),
            child_seed(1, 2, 3, "x"),
        }
        assert len(seen) == 5

    def test_range(self):
        s = child_seed(99, "a", "b")
        assert 0 <= s < 2 ** 64


class TestGenerate:
    def test_active_pair_count(self):
        # p=25, density 0.12: round(0.12 * 300) = 36 active pairs
        m = generate_mixed_coupling(25, 0.12, 0.5, seed=3)
        iu, ju = np.triu_indices(25, k=1)
        vals = m.theta[iu, ju]
        assert np.count_nonzero(vals) == 36
        assert set(np.abs(vals[vals != 0])) == {0.5}

    def test_full_density(self):
        m = generate_mixed_coupling(4, 1.0, 0.25, seed=0)
        assert np.count_nonzero(m.theta[np.triu_indices(4, k=1)]) == 6

    def test_deterministic(self):
        a = generate_mixed_coupling(10, 0.2, 0.5, seed=11)
        b = generate_mixed_coupling(10, 0.2, 0.5, seed=11)
        assert a == b
        c = generate_mixed_coupling(10, 0.2, 0.5, seed=12)
        assert a != c

    def test_both_signs_appear(self):
        m = generate_mixed_coupling(20, 0.3, 0.5, seed=1)
        vals = m.theta[np.triu_indices(20, k=1)]
        assert np.any(vals > 0) and np.any(vals < 0)

    def test_zero_active_rejected(self):
        with pytest.raises(ConfigError):
            generate_mixed_coupling(3, 0.01, 0.5, seed=0)


class TestConfig:
    def test_json_round(self):
        cfg = ExperimentConfig.from_json(
            '{"p": 5, "density": 0.3, "n_list": [50], "replicates": 2, "master_seed": 1}'
        )
        assert cfg.p == 5
        assert cfg.n_list == (50,)
        assert cfg.methods == ("NLm", "NLM", "GL")

    def test_unknown_field(self):
        with pytest.raises(ConfigError, match="unknown config fields"):
            ExperimentConfig.from_json('{"p": 5, "density": 0.3, "n_list": [50], "frobs": 1}')

    def test_bad_json(self):
        with pytest.raises(ConfigError):
            ExperimentConfig.from_json("{not json")

    def test_bad_method(self):
        with pytest.raises(ConfigError, match="unknown methods"):
            small_config(methods=("NLm", "XX"))

    def test_bad_density(self):
        with pytest.raises(ConfigError):
            small_config(density=0.0)
        with pytest.raises(ConfigError):
            small_config(density=1.5)

    def test_bad_sampler(self):
        with pytest.raises(ConfigError):
            small_config(sampler="metropolis")

    def test_empty_n_list(self):
        with pytest.raises(ConfigError):
            small_config(n_list=())


class TestRun:
    def test_record_count_and_layout(self):
        cfg = small_config()
        records = list(run_experiment(cfg))
        assert len(records) == 2 * 3 * 3  # n values x replicates x methods
        for rec in records:
            assert rec.method in ("NLm", "NLM", "GL")
            assert 0.0 <= rec.accuracy <= 1.0
            assert rec.err >= 0.0
            assert rec.converged

    def test_deterministic_byte_identical(self):
        cfg = small_config()
        a = records_to_csv(run_experiment(cfg))
        b = records_to_csv(run_experiment(cfg))
        assert a == b

    def test_wall_time_zero_by_default(self):
        for rec in run_experiment(small_config(replicates=1, n_list=(50,))):
            assert rec.wall_time_seconds == 0.0

    def test_wall_time_recorded_on_request(self):
        recs = list(run_experiment(small_config(replicates=1, n_list=(50,), record_timings=True)))
        assert all(r.wall_time_seconds > 0.0 for r in recs)

    def test_fixed_model_shares_support_across_replicates(self):
        # with a fixed model the same data seed gives the same record for
        # replicate 0 regardless of the replicate count
        cfg1 = small_config(replicates=1, n_list=(50,))
        cfg3 = small_config(replicates=3, n_list=(50,))
        recs1 = [r for r in run_experiment(cfg1)]
        recs3 = [r for r in run_experiment(cfg3) if r.replicate == 0]
        assert recs1 == recs3

    def test_fresh_model_changes_results(self):
        fixed = records_to_csv(run_experiment(small_config()))
        fresh = records_to_csv(run_experiment(small_config(fresh_model=True)))
        assert fixed != fresh

    def test_master_seed_changes_results(self):
        a = records_to_csv(run_experiment(small_config(master_seed=7)))
        b = records_to_csv(run_experiment(small_config(master_seed=8)))
        assert a != b

    def test_methods_subset(self):
        recs = list(run_experiment(small_config(methods=("GL",))))
        assert {r.method for r in recs} == {"GL"}

    def test_lambda_override(self):
        a = records_to_csv(run_experiment(small_config(replicates=1)))
        b = records_to_csv(run_experiment(small_config(replicates=1, lambda_override=0.5)))
        assert a != b

    def test_gibbs_and_exact_agree_on_schema(self):
        recs = list(run_experiment(small_config(replicates=1, n_list=(40,), sampler="gibbs")))
        assert len(recs) == 3


class TestRecordsCsv:
    def test_round_trip(self):
        recs = list(run_experiment(small_config(replicates=2, n_list=(50,))))
        back = records_from_csv(records_to_csv(recs))
        assert back == recs

    def test_header(self):
        text = records_to_csv([])
        assert text == CSV_HEADER + "\n"

    def test_bad_header_rejected(self):
        with pytest.raises(ValueError, match="bad records header"):
            records_from_csv("a,b,c\n1,2,3\n")

    def test_float_repr_exact(self):
        rec = ExperimentRecord(
            method="GL", p=3, n=10, replicate=0, seed=1,
            accuracy=1 / 3, err=0.1 + 0.2, solver_iterations=5,
            converged=True, wall_time_seconds=0.0,
        )
        back = records_from_csv(records_to_csv([rec]))[0]
        assert back.accuracy == rec.accuracy
        assert back.err == rec.err


class TestSummarize:
    def make(self, method, n, accs, errs=None):
        errs = errs if errs is not None else [0.0] * len(accs)
        return [
            ExperimentRecord(
                method=method, p=5, n=n, replicate=i, seed=i, accuracy=a,
                err=e, solver_iterations=1, converged=True, wall_time_seconds=0.0,
            )
            for i, (a, e) in enumerate(zip(accs, errs))
        ]

    def test_even_count_quartiles(self):
        rows = summarize(self.make("GL", 100, [0.2, 0.4, 0.6, 0.8]))
        row = rows[0]
        assert row["accuracy_median"] == pytest.approx(0.5)
        assert row["accuracy_q1"] == pytest.approx(0.35)
        assert row["accuracy_q3"] == pytest.approx(0.65)
        assert row["accuracy_iqr"] == pytest.approx(0.3)
        assert row["accuracy_mean"] == pytest.approx(0.5)
        assert row["count"] == 4

    def test_odd_count_median(self):
        rows = summarize(self.make("NLm", 50, [0.0, 1.0, 0.5]))
        assert rows[0]["accuracy_median"] == 0.5

    def test_grouping_and_order(self):
        recs = (
            self.make("GL", 100, [0.5])
            + self.make("NLm", 50, [0.1])
            + self.make("NLm", 100, [0.2])
        )
        rows = summarize(recs)
        assert [(r["method"], r["n"]) for r in rows] == [
            ("NLm", 50), ("NLm", 100), ("GL", 100)
        ]

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            summarize([])

    def test_csv_shape(self):
        text = summary_to_csv(summarize(self.make("GL", 100, [0.25, 0.75])))
        lines = text.strip().splitlines()
        assert lines[0].startswith("method,n,count,accuracy_mean")
        assert len(lines) == 2
        assert lines[1].split(",")[0] == "GL"
