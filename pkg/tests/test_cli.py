from __future__ import annotations

import csv
import json
import shutil
from pathlib import Path

import pytest
import yaml

from tweetflow.cli import main
from tweetflow.config import load_config
from tweetflow.errors import ConfigError
from tweetflow.pipeline import run_all, run_stage


def make_config(tmp_path, corpus_path, **overrides) -> Path:
    payload = {
        "input": str(corpus_path),
        "out": str(tmp_path / "out"),
        "seed": 42,
        "languages": ["en", "it"],
        "topics": {"k": 3, "alpha": 0.5, "iterations": 150, "max_rounds": 1, "top_words": 10},
        "cluster": {"k_min": 2, "k_max": 3, "lda_refine": False},
    }
    payload.update(overrides)
    path = tmp_path / "config.yaml"
    path.write_text(yaml.safe_dump(payload), encoding="utf-8")
    return path


@pytest.fixture(scope="module")
def pipeline_out(tmp_path_factory, fixture_corpus_path):
    """One full pipeline run shared by the read-only assertions below."""
    tmp_path = tmp_path_factory.mktemp("pipeline")
    config_path = make_config(tmp_path, fixture_corpus_path)
    config = load_config(config_path)
    run_all(config)
    return config


class TestConfig:
    def test_missing_file(self, tmp_path):
        with pytest.raises(ConfigError):
            load_config(tmp_path / "absent.yaml")

    def test_missing_seed_rejected(self, tmp_path, fixture_corpus_path):
        path = tmp_path / "c.yaml"
        path.write_text(
            yaml.safe_dump({"input": str(fixture_corpus_path), "out": str(tmp_path)}),
            encoding="utf-8",
        )
        with pytest.raises(ConfigError, match="seed"):
            load_config(path)

    def test_bad_language_rejected(self, tmp_path, fixture_corpus_path):
        path = make_config(tmp_path, fixture_corpus_path, languages=["fr"])
        with pytest.raises(ConfigError):
            load_config(path)

    def test_relative_paths_resolve_against_config(self, tmp_path, fixture_corpus_path):
        shutil.copy(fixture_corpus_path, tmp_path / "corpus.jsonl")
        path = make_config(tmp_path, "corpus.jsonl")
        config = load_config(path)
        assert config.input == tmp_path / "corpus.jsonl"

    def test_stage_seeds_differ_and_are_stable(self, tmp_path, fixture_corpus_path):
        config = load_config(make_config(tmp_path, fixture_corpus_path))
        assert config.stage_seed("topics:en") != config.stage_seed("topics:it")
        assert config.stage_seed("topics:en") == config.stage_seed("topics:en")

    def test_lang_override_restricts(self, tmp_path, fixture_corpus_path):
        config = load_config(
            make_config(tmp_path, fixture_corpus_path), lang_override="it"
        )
        assert config.languages == ("it",)

    def test_unknown_resource_key_rejected(self, tmp_path, fixture_corpus_path):
        path = make_config(
            tmp_path, fixture_corpus_path, resources={"mystery": "x.txt"}
        )
        with pytest.raises(ConfigError):
            load_config(path)


class TestExitCodes:
    def test_config_error_is_1(self, tmp_path):
        assert main(["ingest", "--config", str(tmp_path / "absent.yaml")]) == 1

    def test_missing_upstream_is_3(self, tmp_path, fixture_corpus_path):
        config_path = make_config(tmp_path, fixture_corpus_path)
        assert main(["metrics", "--config", str(config_path)]) == 3

    def test_success_is_0(self, tmp_path, fixture_corpus_path):
        config_path = make_config(tmp_path, fixture_corpus_path)
        assert main(["ingest", "--config", str(config_path)]) == 0

    def test_unknown_stage_rejected_by_parser(self, tmp_path, fixture_corpus_path):
        config_path = make_config(tmp_path, fixture_corpus_path)
        with pytest.raises(SystemExit):
            main(["transmogrify", "--config", str(config_path)])


class TestStages:
    def test_ingest_counts(self, pipeline_out):
        manifest = json.loads((pipeline_out.out / "manifest.json").read_text())
        counts = manifest["stages"]["ingest"]["counts"]
        assert counts["loaded"] == 200
        assert counts["after_dedup"] == 197
        assert counts["kept_en"] + counts["kept_it"] == 197

    def test_explore_emits_min_vocab_rows(self, pipeline_out):
        # the fixture vocabulary is smaller than the top-1000 cap, so the
        # label template has exactly one row per vocabulary term
        for lang in ("en", "it"):
            words_path = pipeline_out.out / "explore" / f"words_{lang}.csv"
            with words_path.open(newline="", encoding="utf-8") as fh:
                rows = list(csv.DictReader(fh))
            corpus_rows = [
                json.loads(line)
                for line in (pipeline_out.out / "ingest" / f"corpus_{lang}.jsonl")
                .read_text(encoding="utf-8")
                .splitlines()
            ]
            assert 0 < len(rows) <= 1000
            assert rows[0].keys() == {"term", "label", "frequency"}
            assert all(r["label"] == "" for r in rows)
            assert len(corpus_rows) > 0

    def test_explore_honors_top_n(self, tmp_path, fixture_corpus_path):
        config = load_config(
            make_config(tmp_path, fixture_corpus_path, explore={"top_n": 5})
        )
        run_stage("ingest", config)
        run_stage("explore", config)
        lines = (config.out / "explore" / "words_en.csv").read_text().splitlines()
        assert len(lines) == 6  # header + 5

    def test_filter_subset_of_ingest(self, pipeline_out):
        for lang in ("en", "it"):
            ingest_ids = {
                json.loads(line)["id"]
                for line in (pipeline_out.out / "ingest" / f"corpus_{lang}.jsonl")
                .read_text(encoding="utf-8").splitlines()
            }
            matched_ids = [
                json.loads(line)["id"]
                for line in (pipeline_out.out / "filter" / f"matched_{lang}.jsonl")
                .read_text(encoding="utf-8").splitlines()
            ]
            assert set(matched_ids) <= ingest_ids

    def test_topic_report_schema(self, pipeline_out):
        path = pipeline_out.out / "topics" / "topic_words_en.csv"
        with path.open(newline="", encoding="utf-8") as fh:
            reader = csv.reader(fh)
            assert next(reader) == ["round", "topic_id", "rank", "word", "probability"]
            rows = list(reader)
        assert rows, "topic report should not be empty"
        probabilities = [float(r[4]) for r in rows]
        assert all(0.0 < p <= 1.0 for p in probabilities)

    def test_cluster_report_schema(self, pipeline_out):
        path = pipeline_out.out / "cluster" / "clusters_en.csv"
        with path.open(newline="", encoding="utf-8") as fh:
            reader = csv.reader(fh)
            assert next(reader) == ["k", "silhouette", "cluster_id", "size", "top_words"]
            rows = list(reader)
        sizes_by_k: dict[str, int] = {}
        for k, _, _, size, _ in rows:
            sizes_by_k[k] = sizes_by_k.get(k, 0) + int(size)
        # every k-row partitions the same corpus
        assert len(set(sizes_by_k.values())) == 1

    def test_tourism_ids_unique(self, pipeline_out):
        for lang in ("en", "it"):
            ids = [
                json.loads(line)["id"]
                for line in (pipeline_out.out / "cluster" / f"tourism_{lang}.jsonl")
                .read_text(encoding="utf-8").splitlines()
            ]
            assert len(ids) == len(set(ids))

    def test_categories_cover_tourism_corpus(self, pipeline_out):
        for lang in ("en", "it"):
            ids = {
                json.loads(line)["id"]
                for line in (pipeline_out.out / "cluster" / f"tourism_{lang}.jsonl")
                .read_text(encoding="utf-8").splitlines()
            }
            with (pipeline_out.out / "categorize" / f"categories_{lang}.csv").open(
                newline="", encoding="utf-8"
            ) as fh:
                rows = list(csv.DictReader(fh))
            assert {r["tweet_id"] for r in rows} == ids

    def test_sentiment_scores_in_range(self, pipeline_out):
        with (pipeline_out.out / "sentiment" / "scores_en.csv").open(
            newline="", encoding="utf-8"
        ) as fh:
            rows = list(csv.DictReader(fh))
        for row in rows:
            compound = float(row["compound"])
            assert -1.0 < compound < 1.0
            assert row["label"] == ("positive" if compound > 0 else "negative")

    def test_graph_stats_consistent(self, pipeline_out):
        with (pipeline_out.out / "graph" / "graph_stats.csv").open(
            newline="", encoding="utf-8"
        ) as fh:
            rows = list(csv.DictReader(fh))
        assert [r["Network"] for r in rows] == [
            "en_positive", "en_negative", "it_positive", "it_negative",
        ]
        for row in rows:
            n, e = int(row["Nodes"]), int(row["Edges"])
            if n >= 2:
                assert float(row["Density"]) == pytest.approx(
                    2 * e / (n * (n - 1)), abs=5e-5
                )

    def test_manifest_counts_match_files(self, pipeline_out):
        manifest = json.loads((pipeline_out.out / "manifest.json").read_text())
        for stage, entry in manifest["stages"].items():
            for rel, meta in entry["outputs"].items():
                path = pipeline_out.out / rel
                assert path.is_file(), rel
                if path.suffix == ".csv":
                    n_rows = len(path.read_text(encoding="utf-8").splitlines()) - 1
                    assert meta["rows"] == n_rows, rel

    def test_rerun_stage_reproduces_outputs(self, tmp_path, fixture_corpus_path):
        config = load_config(make_config(tmp_path, fixture_corpus_path))
        run_stage("ingest", config)
        first = (config.out / "ingest" / "corpus_en.jsonl").read_bytes()
        (config.out / "ingest" / "corpus_en.jsonl").unlink()
        run_stage("ingest", config)
        assert (config.out / "ingest" / "corpus_en.jsonl").read_bytes() == first


class TestRunStage:
    def test_unknown_stage_is_stage_error(self, tmp_path, fixture_corpus_path):
        from tweetflow.errors import StageError

        config = load_config(make_config(tmp_path, fixture_corpus_path))
        with pytest.raises(StageError, match="unknown stage"):
            run_stage("transmogrify", config)

    def test_interactive_selector_reads_stdin(self, monkeypatch, capsys):
        from tweetflow.pipeline import _interactive_selector
        from tweetflow.topics import TopicSummary

        summaries = [TopicSummary(0, (("sea", 0.5),)), TopicSummary(1, (("mud", 0.5),))]
        monkeypatch.setattr("builtins.input", lambda prompt: "0, 1")
        assert _interactive_selector(summaries) == {0, 1}


class TestEmptyPolaritySplit:
    def test_pipeline_survives_all_positive_corpus(self, tmp_path):
        # a tiny corpus whose negative splits are empty end to end
        extras = ["sand", "coast", "sunset", "swim", "boat", "cliff", "harbor", "dune"]
        rows = [
            {"id": f"p{i}", "lang": "en",
             "text": f"A beautiful beach holiday at the sea, lovely {extras[i]} travel #puglia"}
            for i in range(8)
        ]
        corpus_path = tmp_path / "tiny.jsonl"
        corpus_path.write_text(
            "\n".join(json.dumps(r) for r in rows) + "\n", encoding="utf-8"
        )
        config_path = make_config(
            tmp_path,
            corpus_path,
            languages=["en"],
            topics={"k": 2, "alpha": 0.5, "iterations": 60, "max_rounds": 1, "top_words": 10},
            cluster={"k_min": 2, "k_max": 2, "lda_refine": False},
        )
        config = load_config(config_path)
        run_all(config)
        stats = (config.out / "graph" / "graph_stats.csv").read_text(encoding="utf-8")
        negative_row = next(
            line for line in stats.splitlines() if line.startswith("en_negative")
        )
        assert negative_row.split(",")[1] == "0"  # zero nodes
        # metrics and communities skip the empty network but still emit files
        assert (config.out / "metrics" / "centrality_degree.csv").is_file()
        assert (config.out / "communities" / "communities.csv").is_file()
        assert (config.out / "report" / "places_en.geojson").is_file()

    def test_cluster_stage_degrades_when_nothing_to_cluster(self, tmp_path):
        # all docs share one token multiset: every TF-IDF row is empty
        rows = [
            {"id": f"d{i}", "lang": "en", "text": f"beach sea holiday travel {i}"}
            for i in range(6)
        ]
        corpus_path = tmp_path / "flat.jsonl"
        corpus_path.write_text(
            "\n".join(json.dumps(r) for r in rows) + "\n", encoding="utf-8"
        )
        config_path = make_config(
            tmp_path,
            corpus_path,
            languages=["en"],
            topics={"k": 2, "alpha": 0.5, "iterations": 40, "max_rounds": 1, "top_words": 10},
            cluster={"k_min": 2, "k_max": 3, "lda_refine": False},
        )
        config = load_config(config_path)
        for stage in ("ingest", "explore", "filter", "topics", "cluster"):
            run_stage(stage, config)
        manifest = json.loads((config.out / "manifest.json").read_text())
        counts = manifest["stages"]["cluster"]["counts"]
        assert counts["best_k_en"] == 0 and counts["route_b_en"] == 0
        # the matched route still flows through the merge
        assert counts["merged_en"] == counts["route_b_en"] + len(
            (config.out / "topics" / "refined_en.jsonl").read_text().splitlines()
        )
