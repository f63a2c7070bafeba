"""Experiment runner: determinism, serialization, tiny end-to-end runs."""

import pytest

from fograph import bench as B


def cfg(**kw):
    return B.ExperimentConfig(**kw)


class TestConfig:
    def test_unknown_experiment(self):
        with pytest.raises(B.BenchError):
            cfg(experiment="exp_nope")

    def test_bad_trials(self):
        with pytest.raises(B.BenchError):
            cfg(experiment="exp_dense", trials=0)

    def test_bad_tolerance(self):
        with pytest.raises(B.BenchError):
            cfg(experiment="exp_sizes", tolerance=0)

    def test_json_round_trip(self):
        c = cfg(experiment="exp_sparse", n=[50], c=[0.5], trials=2, seed=7)
        again = B.ExperimentConfig.from_json(c.to_json())
        assert again == c and again.hash() == c.hash()

    def test_hash_sensitive(self):
        c1 = cfg(experiment="exp_sparse", n=[50], c=[0.5], seed=7)
        c2 = cfg(experiment="exp_sparse", n=[50], c=[0.5], seed=8)
        assert c1.hash() != c2.hash()

    def test_row_seed_distinct(self):
        seeds = {B.row_seed(0, n, p, t)
                 for n in (10, 20) for p in (0.5, 0.25) for t in (0, 1)}
        assert len(seeds) == 8


class TestDeterminism:
    def test_byte_identical_rerun(self):
        c = cfg(experiment="exp_sparse", n=[60], c=[0.5, 1.0], trials=3, seed=3)
        out1 = B.report(B.run_experiment(c), "csv")
        out2 = B.report(B.run_experiment(c), "csv")
        assert out1 == out2

    def test_seed_changes_rows(self):
        c1 = cfg(experiment="exp_sparse", n=[60], c=[1.0], trials=1, seed=1)
        c2 = cfg(experiment="exp_sparse", n=[60], c=[1.0], trials=1, seed=2)
        assert B.run_experiment(c1)[0]["t1"] != B.run_experiment(c2)[0]["t1"] \
            or B.run_experiment(c1)[0]["seed"] != B.run_experiment(c2)[0]["seed"]


class TestRuns:
    def test_dense(self):
        c = cfg(experiment="exp_dense", n=[24], p=[0.5], trials=2, seed=5,
                k_max=2)
        rows = B.run_experiment(c)
        assert len(rows) == 2
        for r in rows:
            assert r["ext_verified"] and r["lemmaY_verified"]
            assert r["ext_k"] >= 1
            assert r["config_hash"] == c.hash()

    def test_sparse(self):
        c = cfg(experiment="exp_sparse", n=[80], c=[0.5], trials=2, seed=5)
        rows = B.run_experiment(c)
        assert len(rows) == 2
        for r in rows:
            assert 0 <= r["t1_over_n"] <= 1
            assert 0 < r["lambda1_over_n"] < 1
            if r["comps_ok"]:
                assert r["verified"] and r["depth"] >= 1

    def test_sizes(self):
        c = cfg(experiment="exp_sizes", n=[64], p=[0.5], trials=1, seed=5,
                max_tuple=2)
        rows = B.run_experiment(c)
        assert [r["tuple_len"] for r in rows] == [1, 2]
        for r in rows:
            assert 0 <= r["violation_rate"] <= 1
            assert r["checked"] == (64 if r["tuple_len"] == 1 else 64 * 63 // 2)

    def test_tenacity(self):
        c = cfg(experiment="exp_tenacity", n=[4, 5], p=[0.5], trials=2, seed=5)
        rows = B.run_experiment(c)
        assert len(rows) == 8
        for r in rows:
            assert r["isomorphic"] == (r["depth"] < 0)
            if not r["isomorphic"]:
                assert r["depth"] >= 1

    def test_oracle(self):
        c = cfg(experiment="exp_oracle", n_max=3)
        rows = B.run_experiment(c)
        assert rows and all(r["match"] for r in rows)


class TestReport:
    def make_rows(self):
        c = cfg(experiment="exp_sparse", n=[40], c=[1.0], trials=2, seed=1)
        return B.run_experiment(c)

    def test_csv_round_trip(self):
        rows = self.make_rows()
        text = B.report(rows, "csv")
        assert text.count("\r\n") == len(rows) + 1
        back = B.parse_report(text, "csv")
        assert len(back) == len(rows)
        assert [r["seed"] for r in back] == [str(r["seed"]) for r in rows]

    def test_jsonl_round_trip(self):
        rows = self.make_rows()
        back = B.parse_report(B.report(rows, "jsonl"), "jsonl")
        assert back == rows

    def test_empty_rejected(self):
        with pytest.raises(B.BenchError):
            B.report([], "csv")

    def test_unknown_format(self):
        with pytest.raises(B.BenchError):
            B.report(self.make_rows(), "xml")
