"""End-to-end tests of the helixspan CLI (path in $HELIXSPAN_CLI)."""

import csv
import io
import json
import os
import subprocess

import pytest

import helixspan as hx

CLI = os.environ.get("HELIXSPAN_CLI", "helixspan")


def run(*args, stdin=None, env_extra=None, expect=0):
    env = {k: v for k, v in os.environ.items() if not k.startswith("HELIXSPAN_")}
    env["HELIXSPAN_CLI"] = CLI
    if env_extra:
        env.update(env_extra)
    result = subprocess.run(
        [CLI, *args], input=stdin, capture_output=True, text=True, env=env
    )
    if expect is not None:
        assert result.returncode == expect, (
            f"helixspan {' '.join(args)} -> rc {result.returncode}\n"
            f"stdout: {result.stdout}\nstderr: {result.stderr}"
        )
    return result


def parse_csv(text):
    return list(csv.DictReader(io.StringIO(text)))


# ----- exit codes and argument handling --------------------------------------


def test_help_is_success():
    out = run("--help").stdout
    for sub in ("dist", "table", "limit", "check", "compare", "plot"):
        assert sub in out


def test_usage_errors_exit_2():
    run("frobnicate", expect=2)
    run("table", "--no-such-flag", expect=2)
    run("table", "--n", "0", expect=2)
    run("limit", "--format", "yaml", expect=2)


# ----- dist -------------------------------------------------------------------


def test_dist_positional():
    rows = parse_csv(run("dist", "((...))").stdout)
    assert rows == [
        {
            "line": "1",
            "n": "7",
            "d": "1",
            "d_tableau": "1",
            "irreducibles": "1",
            "isolated": "0",
            "min_stack": "2",
        }
    ]


def test_dist_single_vertex():
    row = parse_csv(run("dist", ".").stdout)[0]
    assert (row["n"], row["d"]) == ("1", "0")
    assert row["min_stack"] == ""


def test_dist_stdin_and_file(tmp_path):
    piped = run("dist", stdin="(...)\n..\n").stdout
    path = tmp_path / "structures.txt"
    path.write_text("(...)\n..\n")
    from_file = run("dist", "--in", str(path)).stdout
    assert piped == from_file
    rows = parse_csv(piped)
    assert [r["d"] for r in rows] == ["1", "1"]


def test_dist_positional_excludes_in(tmp_path):
    path = tmp_path / "structures.txt"
    path.write_text("(...)\n")
    run("dist", "(...)", "--in", str(path), expect=2)


def test_dist_bad_lines_are_reported():
    result = run("dist", stdin="(...)\nnope\n..\n")
    assert "line 2" in result.stderr
    assert len(parse_csv(result.stdout)) == 2  # good lines still processed

    strict = run("dist", "--strict", stdin="(...)\nnope\n", expect=1)
    assert "line 2" in strict.stderr


def test_dist_json():
    payload = json.loads(run("dist", "--format", "json", stdin="(.)(...)\nx\n").stdout)
    assert payload["rows"][0]["n"] == 8
    assert payload["rows"][0]["d"] == 3
    assert payload["rows"][0]["irreducibles"] == 2
    assert payload["errors"] and payload["errors"][0]["line"] == 2


def test_dist_agrees_with_bindings():
    structures = hx.enumerate_dot_brackets(9)
    result = run("dist", stdin="".join(s + "\n" for s in structures))
    for row, db in zip(parse_csv(result.stdout), structures, strict=True):
        assert int(row["d"]) == hx.bfs_distance(hx.parse_dot_bracket(db))


# ----- table ------------------------------------------------------------------


def test_table_small_csv_exact():
    assert run("table", "--n", "3").stdout == (
        "r,n,d,w,p\n1,1,0,1,1\n1,2,1,1,1\n1,3,1,1,0.5\n1,3,2,1,0.5\n"
    )


def test_table_json_matches_csv():
    text = run("table", "--n", "12").stdout
    payload = json.loads(run("table", "--n", "12", "--format", "json").stdout)
    assert payload["r"] == 1 and payload["N"] == 12
    csv_rows = parse_csv(text)
    assert len(csv_rows) == len(payload["rows"])
    for a, b in zip(csv_rows, payload["rows"], strict=True):
        assert (int(a["n"]), int(a["d"])) == (b["n"], b["d"])
        assert a["w"] == b["w"]
        assert float(a["p"]) == b["p"]


def test_table_env_and_flag_precedence():
    via_env = run("table", env_extra={"HELIXSPAN_N": "3"}).stdout
    assert via_env == run("table", "--n", "3").stdout
    # Flags beat the environment.
    via_both = run("table", "--n", "2", env_extra={"HELIXSPAN_N": "3"}).stdout
    assert via_both == run("table", "--n", "2").stdout


def test_table_r_and_truncation():
    rows = parse_csv(run("table", "--n", "8", "--r", "2").stdout)
    # r = 2 counts match the bindings' series.
    coeffs = hx.canonical_coeffs(2, 8)
    for n in range(1, 9):
        total = sum(int(r["w"]) for r in rows if r["n"] == str(n))
        assert total == coeffs[n]

    cut = parse_csv(run("table", "--n", "30", "--d-max", "4").stdout)
    assert max(int(r["d"]) for r in cut) <= 4


def test_table_cap():
    run("table", "--n", "60", "--cap", "50", expect=2)
    assert parse_csv(run("table", "--n", "60", "--cap", "60").stdout)


def test_table_out_file(tmp_path):
    target = tmp_path / "table.csv"
    result = run("table", "--n", "5", "--out", str(target))
    assert result.stdout == ""
    assert target.read_text() == run("table", "--n", "5").stdout
    assert list(tmp_path.iterdir()) == [target]  # no temp debris


# ----- limit ------------------------------------------------------------------


def test_limit_csv_exact():
    assert run("limit", "--d-max", "3").stdout == (
        "d,q_exact,q_decimal\n"
        "0,0,0\n"
        "1,7/2-3/2*sqrt5,0.14589803375\n"
        "2,18-8*sqrt5,0.111456180002\n"
        "3,83/2-37/2*sqrt5,0.132742416254\n"
        "# rho = 3/2-1/2*sqrt5 = 0.38196601125\n"
        "# 1/rho = 3/2+1/2*sqrt5 = 2.61803398875\n"
        "# delta = 1.40244778597\n"
        "# 1/delta = 0.713039023632\n"
    )


def test_limit_default_mass_below_one():
    rows = [
        line.split(",")
        for line in run("limit").stdout.splitlines()
        if line and not line.startswith(("#", "d,"))
    ]
    total = sum(float(r[2]) for r in rows)
    assert 0.99 < total < 1.0


def test_limit_json():
    payload = json.loads(run("limit", "--d-max", "5", "--format", "json").stdout)
    assert payload["D"] == 5
    assert payload["rows"][1]["q_exact"] == "7/2-3/2*sqrt5"
    assert abs(payload["constants"]["delta"] - 1.40244778597) < 1e-10
    assert payload["precision_bits"] == 100


def test_limit_precision_flag():
    default_bits = run("limit", "--d-max", "2").stdout
    more_bits = run("limit", "--d-max", "2", "--precision-bits", "200").stdout
    # Same printed digits: precision only guards the evaluation.
    assert default_bits == more_bits


# ----- check ------------------------------------------------------------------


def test_check_passes(tmp_path):
    report_path = tmp_path / "report.json"
    result = run("check", "--n", "10", "--out", str(report_path))
    assert "PASS" in result.stderr
    assert "FAIL" not in result.stderr
    reports = json.loads(report_path.read_text())
    names = {r["check"] for r in reports}
    assert {
        "bijection",
        "oracle",
        "row_sums",
        "specialization",
        "reference_distribution",
        "convergence",
        "growth_rate",
        "tail_ratio",
        "residual_slope",
    } <= names
    assert all(r["passed"] for r in reports)
    assert all(r["max_deviation"] <= r["tolerance"] for r in reports)


# ----- compare ----------------------------------------------------------------


def test_compare_full_enumeration_is_exact(tmp_path):
    path = tmp_path / "all10.txt"
    path.write_text("".join(s + "\n" for s in hx.enumerate_dot_brackets(10)))
    rows = parse_csv(run("compare", "--in", str(path)).stdout)
    assert rows, "expected comparison rows"
    for row in rows:
        assert float(row["difference"]) == 0.0  # empirical == p(10,d) exactly


def test_compare_arcless_mass(tmp_path):
    path = tmp_path / "arcless.txt"
    path.write_text(("." * 20 + "\n") * 3)
    rows = parse_csv(run("compare", "--in", str(path)).stdout)
    by_d = {int(r["d"]): float(r["empirical"]) for r in rows}
    assert by_d[19] == 1.0
    assert all(v == 0.0 for d, v in by_d.items() if d != 19)


def test_compare_mixed_lengths_fall_back_to_limit(tmp_path):
    path = tmp_path / "mixed.txt"
    path.write_text("(...)\n" + "." * 30 + "\n")
    result = run("compare", "--in", str(path))
    assert "limit" in result.stderr  # warns about the fallback
    run("compare", "--in", str(path), "--reference", "exact-n", expect=2)


def test_compare_empty_input(tmp_path):
    path = tmp_path / "empty.txt"
    path.write_text("# nothing\n")
    run("compare", "--in", str(path), expect=2)


def test_compare_json(tmp_path):
    path = tmp_path / "all8.txt"
    path.write_text("".join(s + "\n" for s in hx.enumerate_dot_brackets(8)))
    payload = json.loads(
        run("compare", "--in", str(path), "--format", "json").stdout
    )
    assert payload["reference"] == "exact-n"
    assert payload["n"] == 8
    assert payload["count"] == len(hx.enumerate_dot_brackets(8))


# ----- plot -------------------------------------------------------------------


def test_plot_from_table_csv(tmp_path):
    table = tmp_path / "t.csv"
    run("table", "--n", "30", "--out", str(table))
    first = tmp_path / "a.svg"
    second = tmp_path / "b.svg"
    run("plot", "--in", str(table), "--out", str(first))
    run("plot", "--in", str(table), "--out", str(second))
    data = first.read_bytes()
    assert data == second.read_bytes()  # byte-identical re-render
    assert data.startswith(b"<?xml")
    assert b"</svg>" in data
    assert b"q(d)" in data  # the limit-law overlay
    assert b"p(n=30,d)" in data


def test_plot_default_output_name(tmp_path):
    table = tmp_path / "t.csv"
    run("table", "--n", "10", "--out", str(table))
    run("plot", "--in", str(table))
    assert (tmp_path / "t.svg").exists()


def test_plot_limit_and_compare_schemas(tmp_path):
    limit = tmp_path / "limit.csv"
    run("limit", "--d-max", "40", "--out", str(limit))
    run("plot", "--in", str(limit), "--out", str(tmp_path / "limit.svg"))
    assert (tmp_path / "limit.svg").stat().st_size > 0

    sample = tmp_path / "all8.txt"
    sample.write_text("".join(s + "\n" for s in hx.enumerate_dot_brackets(8)))
    comparison = tmp_path / "cmp.csv"
    run("compare", "--in", str(sample), "--out", str(comparison))
    run("plot", "--in", str(comparison), "--out", str(tmp_path / "cmp.svg"))
    assert (tmp_path / "cmp.svg").stat().st_size > 0


def test_plot_json_input(tmp_path):
    table = tmp_path / "t.json"
    run("table", "--n", "12", "--format", "json", "--out", str(table))
    run("plot", "--in", str(table), "--out", str(tmp_path / "t.svg"))
    assert (tmp_path / "t.svg").read_bytes().startswith(b"<?xml")


def test_plot_rejects_unknown_schema(tmp_path):
    bad = tmp_path / "bad.csv"
    bad.write_text("a,b,c\n1,2,3\n")
    result = run("plot", "--in", str(bad), "--out", str(tmp_path / "x.svg"), expect=2)
    assert "SchemaMismatch" in result.stderr


def test_plot_empty_input(tmp_path):
    empty = tmp_path / "empty.csv"
    empty.write_text("r,n,d,w,p\n")
    out = tmp_path / "empty.svg"
    run("plot", "--in", str(empty), "--out", str(out), expect=2)
    run("plot", "--in", str(empty), "--out", str(out), "--allow-empty")
    assert out.read_bytes().startswith(b"<?xml")
