import csv
import io
import re

import pytest

from biharmonic.bench import CSV_HEADER
from biharmonic.cli import main


K3_TEXT = "0 1\n1 2\n2 0\n"
P4_TEXT = "0 1\n1 2\n2 3\n"  # bipartite path


@pytest.fixture()
def k3_file(tmp_path):
    path = tmp_path / "k3.txt"
    path.write_text(K3_TEXT)
    return str(path)


@pytest.fixture()
def p4_file(tmp_path):
    path = tmp_path / "p4.txt"
    path.write_text(P4_TEXT)
    return str(path)


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def rows_of(text):
    return list(csv.DictReader(io.StringIO(text)))


class TestStats:
    def test_triangle(self, capsys, k3_file):
        code, out, _ = run_cli(capsys, "stats", k3_file)
        assert code == 0
        assert "nodes: 3" in out
        assert "edges: 3" in out
        assert "avg degree: 2.00" in out
        assert "bipartite: no" in out
        assert "lcc size: 3" in out

    def test_spectral_flag(self, capsys, k3_file):
        code, out, _ = run_cli(capsys, "stats", k3_file, "--spectral")
        assert code == 0
        assert "lambda: 0.500000" in out
        assert "gamma2: 3.000000" in out

    def test_disconnected_lcc_sizes(self, capsys, tmp_path):
        path = tmp_path / "disc.txt"
        path.write_text("0 1\n1 2\n2 0\n8 9\n")
        code, out, _ = run_cli(capsys, "stats", str(path), "--lcc")
        assert code == 0
        assert "component sizes: 3 2" in out

    def test_missing_file(self, capsys):
        code, _, err = run_cli(capsys, "stats", "/nonexistent/file.txt")
        assert code == 3
        assert "error" in err


class TestQuery:
    def test_exact_pair_value(self, capsys, k3_file):
        code, out, _ = run_cli(capsys, "query", k3_file, "--method", "exact",
                               "-s", "0", "-t", "1")
        assert code == 0
        row = rows_of(out)[0]
        assert row["method"] == "exact"
        assert float(row["estimate"]) == pytest.approx(2.0 / 9.0, abs=1e-9)
        assert row["epsilon"] == ""
        assert row["seed"] == ""

    def test_header_schema(self, capsys, k3_file):
        _, out, _ = run_cli(capsys, "query", k3_file, "--method", "exact",
                            "-s", "0", "-t", "1")
        assert out.splitlines()[0] == CSV_HEADER

    def test_swf_deterministic_modulo_time(self, capsys, k3_file):
        argv = ["query", k3_file, "--method", "swf", "-s", "0", "-t", "1",
                "--eps", "0.1", "--seed", "42"]
        _, out1, _ = run_cli(capsys, *argv)
        _, out2, _ = run_cli(capsys, *argv)
        r1, r2 = rows_of(out1)[0], rows_of(out2)[0]
        r1.pop("time_ms"), r2.pop("time_ms")
        assert r1 == r2

    def test_push_on_bipartite_rejected(self, capsys, p4_file):
        code, _, err = run_cli(capsys, "query", p4_file, "--method", "push",
                               "-s", "0", "-t", "3")
        assert code == 3
        assert "bipartite" in err

    def test_exact_on_bipartite_allowed(self, capsys, p4_file):
        code, out, _ = run_cli(capsys, "query", p4_file, "--method", "exact",
                               "-s", "0", "-t", "3")
        assert code == 0
        assert float(rows_of(out)[0]["estimate"]) > 0

    def test_unknown_id(self, capsys, k3_file):
        code, _, err = run_cli(capsys, "query", k3_file, "--method", "exact",
                               "-s", "0", "-t", "9")
        assert code == 3

    def test_equal_nodes_usage_error(self, capsys, k3_file):
        code, _, err = run_cli(capsys, "query", k3_file, "--method", "push",
                               "-s", "1", "-t", "1")
        assert code == 2

    def test_nodal_method_rejects_t(self, capsys, k3_file):
        code, _, _ = run_cli(capsys, "query", k3_file, "--method", "snb",
                             "-s", "0", "-t", "1")
        assert code == 2

    def test_nodal_query(self, capsys, k3_file):
        code, out, _ = run_cli(capsys, "query", k3_file, "--method", "snb",
                               "-s", "0", "--eps", "0.1", "--seed", "1")
        assert code == 0
        row = rows_of(out)[0]
        assert row["t"] == ""
        assert abs(float(row["estimate"]) - 4.0 / 9.0) <= 3 * 0.1

    def test_original_ids_in_output(self, capsys, tmp_path):
        path = tmp_path / "shift.txt"
        path.write_text("10 20\n20 30\n30 10\n")
        code, out, _ = run_cli(capsys, "query", str(path), "--method", "exact",
                               "-s", "10", "-t", "30")
        assert code == 0
        row = rows_of(out)[0]
        assert (row["s"], row["t"]) == ("10", "30")


class TestExactCommands:
    def test_exact_pair(self, capsys, k3_file):
        code, out, _ = run_cli(capsys, "exact-pair", k3_file, "-s", "1", "-t", "2")
        assert code == 0
        assert float(rows_of(out)[0]["estimate"]) == pytest.approx(2.0 / 9.0, abs=1e-9)

    def test_exact_nodal(self, capsys, k3_file):
        code, out, _ = run_cli(capsys, "exact-nodal", k3_file, "-s", "0")
        assert code == 0
        assert float(rows_of(out)[0]["estimate"]) == pytest.approx(4.0 / 9.0, abs=1e-9)

    def test_size_limit_refusal(self, capsys, k3_file):
        code, _, err = run_cli(capsys, "exact-pair", k3_file, "-s", "0", "-t", "1",
                               "--size-limit", "2")
        assert code == 3


class TestGroundTruth:
    def test_k3_values(self, capsys, k3_file, tmp_path):
        pairs = tmp_path / "pairs.txt"
        pairs.write_text("0 1\n")
        out_csv = tmp_path / "gt.csv"
        code, _, _ = run_cli(capsys, "ground-truth", k3_file, str(pairs), str(out_csv))
        assert code == 0
        rows = rows_of(out_csv.read_text())
        assert len(rows) == 1
        assert round(float(rows[0]["ground_truth"]), 6) == round(2.0 / 9.0, 6)

    def test_empty_pairs_header_only(self, capsys, k3_file, tmp_path):
        pairs = tmp_path / "pairs.txt"
        pairs.write_text("")
        out_csv = tmp_path / "gt.csv"
        code, _, _ = run_cli(capsys, "ground-truth", k3_file, str(pairs), str(out_csv))
        assert code == 0
        assert out_csv.read_text() == "s,t,ground_truth\n"

    def test_duplicates_kept(self, capsys, k3_file, tmp_path):
        pairs = tmp_path / "pairs.txt"
        pairs.write_text("0 1\n0 1\n")
        out_csv = tmp_path / "gt.csv"
        run_cli(capsys, "ground-truth", k3_file, str(pairs), str(out_csv))
        lines = out_csv.read_text().splitlines()
        assert len(lines) == 3
        assert lines[1] == lines[2]


@pytest.mark.filterwarnings("ignore:swf stopped at the sample cap")
@pytest.mark.filterwarnings("ignore:stw sample cap")
class TestBench:
    def test_k3_all_methods(self, capsys, k3_file, tmp_path):
        out_csv = tmp_path / "bench.csv"
        code, out, _ = run_cli(
            capsys, "bench", k3_file, "--out", str(out_csv),
            "--methods", "exact,push,push+,stw,swf", "--eps", "0.1",
            "--pairs", "3", "--seed", "7", "--max-samples", "30000",
        )
        assert code == 0
        rows = rows_of(out_csv.read_text())
        assert len(rows) == 15
        for row in rows:
            assert float(row["abs_error"]) <= 0.1
        assert re.search(r"method=push eps=0.1 mean_abs_err=", out)

    def test_byte_identical_modulo_time(self, capsys, k3_file, tmp_path):
        argvs = []
        for name in ("a.csv", "b.csv"):
            argvs.append(["bench", k3_file, "--out", str(tmp_path / name),
                          "--methods", "push,swf", "--eps", "0.1,0.2",
                          "--pairs", "2", "--seed", "3",
                          "--max-samples", "20000"])
        for argv in argvs:
            assert main(argv) == 0
        capsys.readouterr()

        def strip_time(text):
            idx = CSV_HEADER.split(",").index("time_ms")
            out_lines = []
            for line in text.splitlines():
                parts = line.split(",")
                parts[idx] = ""
                out_lines.append(",".join(parts))
            return out_lines

        a = strip_time((tmp_path / "a.csv").read_text())
        b = strip_time((tmp_path / "b.csv").read_text())
        assert a == b

    def test_too_many_pairs(self, capsys, k3_file, tmp_path):
        code, _, err = run_cli(capsys, "bench", k3_file, "--out",
                               str(tmp_path / "x.csv"), "--pairs", "4",
                               "--eps", "0.1")
        assert code == 2

    def test_nodal_method_rejected(self, capsys, k3_file, tmp_path):
        code, _, _ = run_cli(capsys, "bench", k3_file, "--out",
                             str(tmp_path / "x.csv"), "--methods", "snb")
        assert code == 2

    def test_jobs_give_identical_rows(self, capsys, k3_file, tmp_path):
        outs = []
        for jobs, name in (("1", "j1.csv"), ("2", "j2.csv")):
            main(["bench", k3_file, "--out", str(tmp_path / name),
                  "--methods", "swf", "--eps", "0.1", "--pairs", "3",
                  "--seed", "5", "--jobs", jobs, "--max-samples", "20000"])
            capsys.readouterr()
            rows = rows_of((tmp_path / name).read_text())
            outs.append([(r["s"], r["t"], r["estimate"], r["walks_or_iters"]) for r in rows])
        assert outs[0] == outs[1]
