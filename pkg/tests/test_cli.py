import io
import json

from critlab.cli import main


def run_cli(capsys, argv, stdin=None, monkeypatch=None):
    if stdin is not None:
        monkeypatch.setattr("sys.stdin", io.StringIO(stdin))
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestSnfCommand:
    def test_stdin_matrix(self, capsys, monkeypatch):
        code, out, _ = run_cli(
            capsys, ["snf", "--matrix", "-"], stdin="2 2\n2 0\n0 3\n", monkeypatch=monkeypatch
        )
        assert code == 0
        assert out == "1 6\n"

    def test_graph_laplacian(self, capsys):
        code, out, _ = run_cli(capsys, ["snf", "--graph", "k3"])
        assert code == 0
        assert out == "1 3 0\n"

    def test_malformed_matrix(self, capsys, monkeypatch):
        code, _, err = run_cli(
            capsys, ["snf", "--matrix", "-"], stdin="2 2\n1\n", monkeypatch=monkeypatch
        )
        assert code == 1
        assert "error" in err


class TestCritgroupCommand:
    def test_petersen_json(self, capsys):
        code, out, _ = run_cli(capsys, ["critgroup", "--graph", "petersen", "--format", "json"])
        assert code == 0
        report = json.loads(out)
        assert report["schema"] == 1
        assert report["invariant_factors"] == [2, 10, 10, 10]
        assert report["order_factored"] == {"2": 4, "5": 3}
        assert report["free_rank"] == 1
        assert report["bicycle_dim"] == 4

    def test_byte_identical_output(self, capsys):
        _, first, _ = run_cli(capsys, ["critgroup", "--graph", "petersen", "--format", "json"])
        _, second, _ = run_cli(capsys, ["critgroup", "--graph", "petersen", "--format", "json"])
        assert first.encode() == second.encode()

    def test_edges_file(self, capsys, tmp_path):
        path = tmp_path / "k3.txt"
        path.write_text("3 3\n0 1\n1 2\n0 2\n")
        code, out, _ = run_cli(capsys, ["critgroup", "--edges", str(path), "--format", "json"])
        assert code == 0
        assert json.loads(out)["order_factored"] == {"3": 1}

    def test_both_sources_rejected(self, capsys, tmp_path):
        path = tmp_path / "k3.txt"
        path.write_text("3 3\n0 1\n1 2\n0 2\n")
        code, _, err = run_cli(
            capsys, ["critgroup", "--graph", "k3", "--edges", str(path)]
        )
        assert code == 1

    def test_unknown_graph(self, capsys):
        code, _, err = run_cli(capsys, ["critgroup", "--graph", "nosuchgraph"])
        assert code == 1
        assert "unknown graph" in err


class TestProfileCommand:
    def test_multi_prime(self, capsys):
        code, out, _ = run_cli(
            capsys,
            ["profile", "--graph", "petersen", "--prime", "2", "--prime", "5", "--format", "json"],
        )
        assert code == 0
        report = json.loads(out)
        assert report["profiles"][0] == {
            "p": 2,
            "multiplicities": [5, 4],
            "kernel_rank": 1,
            "total_valuation": 4,
        }
        assert report["profiles"][1]["multiplicities"] == [6, 3]

    def test_threads_do_not_change_output(self, capsys):
        args = ["profile", "--graph", "petersen", "--prime", "2", "--prime", "5", "--format", "json"]
        _, serial, _ = run_cli(capsys, args)
        _, threaded, _ = run_cli(capsys, args + ["--threads", "4"])
        assert serial == threaded

    def test_threads_env_var(self, capsys, monkeypatch):
        monkeypatch.setenv("CRITLAB_THREADS", "2")
        code, out, _ = run_cli(
            capsys,
            ["profile", "--graph", "k4", "--prime", "2", "--prime", "3", "--format", "json"],
        )
        assert code == 0
        assert json.loads(out)["profiles"][0]["p"] == 2

    def test_non_prime_rejected(self, capsys):
        code, _, err = run_cli(capsys, ["profile", "--graph", "k3", "--prime", "4"])
        assert code == 1
        assert "not a prime" in err

    def test_prime_required(self, capsys):
        code, _, _ = run_cli(capsys, ["profile", "--graph", "k3"])
        assert code == 1


class TestFiltrationCommand:
    def test_matrix_file(self, capsys, tmp_path):
        path = tmp_path / "m.txt"
        path.write_text("3 3\n5 0 0\n0 25 0\n0 0 0\n")
        code, out, _ = run_cli(
            capsys, ["filtration", "--matrix", str(path), "--prime", "5", "--format", "json"]
        )
        assert code == 0
        report = json.loads(out)
        assert report["pass"] is True
        assert report["dims_M"] == [3, 3, 2, 1, 1]
        assert report["dims_N"] == [0, 1, 2, 2, 2]
        assert report["kernel_dim"] == 1

    def test_graph_source(self, capsys):
        code, out, _ = run_cli(
            capsys, ["filtration", "--graph", "petersen", "--prime", "5", "--format", "json"]
        )
        assert code == 0
        assert json.loads(out)["pass"] is True


class TestSandpileCommand:
    def test_k3(self, capsys):
        code, out, _ = run_cli(capsys, ["sandpile", "--graph", "k3", "--format", "json"])
        assert code == 0
        report = json.loads(out)
        assert report["recurrent_count"] == 3
        assert report["invariant_factors"] == [3]
        assert report["matches_snf"] is True

    def test_size_guard_is_usage_error(self, capsys):
        code, _, err = run_cli(capsys, ["sandpile", "--graph", "hosi"])
        assert code == 1


class TestMooreAnalyze:
    def test_default_report(self, capsys):
        code, out, _ = run_cli(
            capsys, ["moore", "analyze", "--params", "3250,57,0,1", "--format", "json"]
        )
        assert code == 0
        report = json.loads(out)
        assert report["divisor_bound"] == [2, 5, 13, 25, 125]
        assert report["forced"] == {"2": 1728, "13": 1519}
        assert report["order_factored"] == {"2": 1728, "5": 4975, "13": 1519}

    def test_prime_5_families(self, capsys):
        code, out, _ = run_cli(
            capsys,
            ["moore", "analyze", "--params", "3250,57,0,1", "--prime", "5", "--format", "json"],
        )
        assert code == 0
        fams = json.loads(out)["families"]["5"]
        assert len(fams) == 2
        assert fams[0]["e_of_rank"] == ["1520 - e0", "1732 - e0", "e0 - 3"]
        assert fams[1]["e_of_rank"] == ["1521 - e0", "1730 - e0", "e0 - 2"]

    def test_text_output_mentions_identity(self, capsys):
        code, out, _ = run_cli(capsys, ["moore", "analyze", "--params", "50,7,0,1"])
        assert code == 0
        assert "(L - 15I)L = -50I + 1J" in out

    def test_infeasible_params_exit_2(self, capsys):
        code, _, err = run_cli(capsys, ["moore", "analyze", "--params", "10,3,1,1"])
        assert code == 2

    def test_bad_params_exit_1(self, capsys):
        code, _, _ = run_cli(capsys, ["moore", "analyze", "--params", "1,2,3"])
        assert code == 1


class TestUsage:
    def test_no_command(self, capsys):
        assert main([]) == 1

    def test_unknown_command(self, capsys):
        assert main(["frobnicate"]) == 1

    def test_graph_info(self, capsys):
        code, out, _ = run_cli(capsys, ["graph", "info", "--graph", "hosi", "--format", "json"])
        assert code == 0
        report = json.loads(out)
        assert (report["n"], report["m"]) == (50, 175)
        assert report["regular"] is True
