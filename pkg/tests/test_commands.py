import json
import pytest
from click.testing import CliRunner
from api.commands.commands import cli


@pytest.fixture
def runner():
    return CliRunner()


@pytest.fixture
def ten_sentences(tmp_path):
    path = tmp_path / "ten.sent"
    path.write_text("\n".join(f"Sentence number {i} about genes." for i in range(10)), encoding="utf-8")
    return path


def read_bytes(directory):
    return {p.name: p.read_bytes() for p in sorted(directory.iterdir())}


def test_help(runner):
    result = runner.invoke(cli, ["--help"])
    assert result.exit_code == 0
    for command in ("summarize", "evaluate", "baseline", "sweep", "stats", "compare"):
        assert command in result.output


def test_summarize_concept_mode(runner, concept_files, tmp_path):
    document, annotations = concept_files
    out = tmp_path / "out"
    result = runner.invoke(cli, [
        "summarize", str(document), "--annotations", str(annotations),
        "--min-sup", "0.08", "--rate", "0.30", "--out", str(out)
    ])
    assert result.exit_code == 0, result.output
    assert sorted(p.name for p in out.iterdir()) == ["d1.itemsets.json", "d1.result.json", "d1.summary.txt"]
    assert json.loads((out / "d1.result.json").read_text(encoding="utf-8"))["N"] == 1


def test_summarize_term_mode_without_annotations(runner, concept_files, tmp_path):
    document, _ = concept_files
    result = runner.invoke(cli, ["summarize", str(document), "--mode", "term", "--out", str(tmp_path / "out")])
    assert result.exit_code == 0, result.output
    assert (tmp_path / "out" / "d1.summary.txt").exists()


def test_missing_annotation_file_names_the_stage(runner, concept_files, tmp_path):
    document, _ = concept_files
    result = runner.invoke(cli, [
        "summarize", str(document), "--annotations", str(tmp_path / "missing.jsonl"), "--out", str(tmp_path / "out")
    ])
    assert result.exit_code == 2
    assert "annotate" in result.output


def test_missing_document_names_the_parse_stage(runner, tmp_path):
    result = runner.invoke(cli, ["summarize", str(tmp_path / "none.txt"), "--mode", "term"])
    assert result.exit_code == 2
    assert "parse" in result.output


def test_invalid_min_sup_is_a_usage_error(runner, concept_files, tmp_path):
    document, annotations = concept_files
    result = runner.invoke(cli, ["summarize", str(document), "--annotations", str(annotations), "--min-sup", "1.5"])
    assert result.exit_code == 1


def test_unknown_flag_is_a_usage_error(runner):
    assert runner.invoke(cli, ["summarize", "--no-such-flag"]).exit_code == 1


def test_rerun_is_byte_identical(runner, concept_files, tmp_path):
    document, annotations = concept_files
    out = tmp_path / "out"
    args = ["summarize", str(document), "--annotations", str(annotations), "--out", str(out)]
    assert runner.invoke(cli, args).exit_code == 0
    first = read_bytes(out)
    assert runner.invoke(cli, args).exit_code == 0
    assert read_bytes(out) == first


def test_rerun_from_the_echoed_config(runner, concept_files, tmp_path):
    document, annotations = concept_files
    out = tmp_path / "out"
    args = ["summarize", str(document), "--annotations", str(annotations), "--mode", "concept",
            "--min-sup", "2/25", "--out", str(out)]
    assert runner.invoke(cli, args).exit_code == 0
    first = read_bytes(out)
    echo = tmp_path / "echo.json"
    echo.write_bytes(first["d1.result.json"])
    for path in out.iterdir():
        path.unlink()

    result = runner.invoke(cli, ["summarize", "--config", str(echo)])
    assert result.exit_code == 0, result.output
    assert read_bytes(out) == first


def test_lead_baseline(runner, ten_sentences, tmp_path):
    out = tmp_path / "out"
    result = runner.invoke(cli, ["baseline", str(ten_sentences), "--kind", "lead", "--rate", "0.3", "--out", str(out)])
    assert result.exit_code == 0, result.output
    written = json.loads((out / "ten.lead.result.json").read_text(encoding="utf-8"))
    assert written["selected"] == [0, 1, 2]


def test_random_baseline_is_reproducible(runner, ten_sentences, tmp_path):
    args = ["baseline", str(ten_sentences), "--kind", "random", "--seed", "7", "--out", str(tmp_path / "out")]
    assert runner.invoke(cli, args).exit_code == 0
    first = read_bytes(tmp_path / "out")
    assert runner.invoke(cli, args).exit_code == 0
    assert read_bytes(tmp_path / "out") == first


def test_random_baseline_without_seed(runner, ten_sentences, tmp_path):
    result = runner.invoke(cli, ["baseline", str(ten_sentences), "--kind", "random", "--out", str(tmp_path)])
    assert result.exit_code == 1
    assert "seed" in result.output


def test_evaluate(runner, tmp_path):
    system, models = tmp_path / "system", tmp_path / "models"
    system.mkdir()
    models.mkdir()
    (system / "d1.summary.txt").write_text("the cat sat on the mat", encoding="utf-8")
    (models / "d1.txt").write_text("the cat sat on the mat", encoding="utf-8")
    out = tmp_path / "report"
    result = runner.invoke(cli, ["evaluate", str(system), str(models), "--out", str(out)])
    assert result.exit_code == 0, result.output
    report = json.loads((out / "rouge_report.json").read_text(encoding="utf-8"))
    assert report["mean"]["R1"]["recall"] == pytest.approx(1.0)


def test_evaluate_with_an_empty_model(runner, tmp_path):
    system, models = tmp_path / "system", tmp_path / "models"
    system.mkdir()
    models.mkdir()
    (system / "d3.summary.txt").write_text("some words", encoding="utf-8")
    (models / "d3.txt").write_text("", encoding="utf-8")
    result = runner.invoke(cli, ["evaluate", str(system), str(models), "--out", str(tmp_path / "report")])
    assert result.exit_code == 2
    assert "d3" in result.output


def test_evaluate_unknown_metric(runner, tmp_path):
    result = runner.invoke(cli, ["evaluate", str(tmp_path), str(tmp_path), "--metrics", "R7"])
    assert result.exit_code == 1


def test_sweep(runner, make_corpus, tmp_path):
    root = make_corpus(documents=10)
    out = tmp_path / "sweep"
    result = runner.invoke(cli, ["sweep", str(root), "--mode", "term", "--sweep-range", "0.02:0.20:0.02", "--out", str(out)])
    assert result.exit_code == 0, result.output
    lines = (out / "sweep.csv").read_text(encoding="utf-8").strip().splitlines()
    assert len(lines) == 1 + 10
    assert lines[0].startswith("min_sup,")


def test_sweep_bad_range(runner, make_corpus):
    root = make_corpus(documents=2)
    result = runner.invoke(cli, ["sweep", str(root), "--mode", "term", "--sweep-range", "0.2:0.1:0.01"])
    assert result.exit_code == 1


def test_stats(runner, make_corpus, tmp_path):
    root = make_corpus(documents=3)
    result = runner.invoke(cli, ["stats", str(root), "--out", str(tmp_path / "stats")])
    assert result.exit_code == 0, result.output
    assert (tmp_path / "stats" / "corpus_stats.csv").exists()
    assert "documents" in result.output


def test_undecodable_model_summary_is_a_data_error(runner, tmp_path):
    system, models = tmp_path / "system", tmp_path / "models"
    system.mkdir()
    models.mkdir()
    (system / "d4.summary.txt").write_text("some words", encoding="utf-8")
    (models / "d4.txt").write_bytes(b"\xff\xfe not text")
    result = runner.invoke(cli, ["evaluate", str(system), str(models)])
    assert result.exit_code == 2
    assert "error [evaluate]" in result.output
    assert "d4" in result.output


def test_undecodable_annotation_line_is_a_data_error(runner, concept_files, tmp_path):
    document, _ = concept_files
    annotations = tmp_path / "bad.jsonl"
    annotations.write_bytes(b'{"sentence_index": 0, "concepts": []}\n\xff\n')
    result = runner.invoke(cli, [
        "summarize", str(document), "--annotations", str(annotations), "--out", str(tmp_path / "out")
    ])
    assert result.exit_code == 2
    assert "error [annotate]" in result.output
    assert ":2:" in result.output


def test_undecodable_stopword_list_is_a_data_error(runner, concept_files, tmp_path):
    document, _ = concept_files
    stopwords = tmp_path / "stop.txt"
    stopwords.write_bytes(b"the\n\xff\n")
    result = runner.invoke(cli, [
        "summarize", str(document), "--mode", "term", "--stopwords", str(stopwords), "--out", str(tmp_path / "out")
    ])
    assert result.exit_code == 2
    assert "error [annotate]" in result.output


def test_evaluate_after_summary_and_baselines_share_an_out_dir(runner, concept_files, tmp_path):
    document, annotations = concept_files
    out, models = tmp_path / "out", tmp_path / "models"
    models.mkdir()
    (models / "d1.txt").write_text("Autism risk is genetic.", encoding="utf-8")
    assert runner.invoke(cli, [
        "summarize", str(document), "--annotations", str(annotations), "--out", str(out)
    ]).exit_code == 0
    assert runner.invoke(cli, ["baseline", str(document), "--kind", "lead", "--out", str(out)]).exit_code == 0
    assert runner.invoke(cli, [
        "baseline", str(document), "--kind", "random", "--seed", "1", "--out", str(out)
    ]).exit_code == 0

    for method in ("itemset", "lead", "random"):
        result = runner.invoke(cli, [
            "evaluate", str(out), str(models), "--method", method, "--out", str(tmp_path / f"report-{method}")
        ])
        assert result.exit_code == 0, result.output
        report = json.loads((tmp_path / f"report-{method}" / "rouge_report.json").read_text(encoding="utf-8"))
        assert [row["doc_id"] for row in report["documents"]] == ["d1"]

    assert runner.invoke(cli, ["evaluate", str(out), str(models)]).exit_code == 0


def test_summarize_dump_transactions(runner, concept_files, tmp_path):
    document, annotations = concept_files
    out = tmp_path / "out"
    result = runner.invoke(cli, [
        "summarize", str(document), "--annotations", str(annotations), "--out", str(out), "--dump-transactions"
    ])
    assert result.exit_code == 0, result.output
    assert json.loads((out / "d1.transactions.json").read_text(encoding="utf-8"))["total"] == 4


def test_compare(runner, make_corpus, tmp_path):
    root = make_corpus(documents=3)
    out = tmp_path / "compare"
    result = runner.invoke(cli, [
        "compare", str(root), "--methods", "term,lead,random", "--seed", "11", "--out", str(out)
    ])
    assert result.exit_code == 0, result.output
    lines = (out / "compare.csv").read_text(encoding="utf-8").strip().splitlines()
    assert lines[0] == "method,documents,R1,R2,RW12,RSU4"
    assert [line.split(",")[0] for line in lines[1:]] == ["term", "lead", "random"]
    assert "lead" in result.output


def test_compare_random_without_seed(runner, make_corpus):
    root = make_corpus(documents=2)
    result = runner.invoke(cli, ["compare", str(root), "--methods", "random"])
    assert result.exit_code == 1
    assert "seed" in result.output


def test_compare_unknown_method(runner, make_corpus):
    root = make_corpus(documents=2)
    assert runner.invoke(cli, ["compare", str(root), "--methods", "bigram"]).exit_code == 1
