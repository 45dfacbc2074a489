
import pytest

from bramsey.cli import main
from bramsey.constructions import star_witness, witness_7_56
from bramsey.core import ProblemSpec
from bramsey.formats import (Certificate, WitnessFile, load_certificate, loads_certificate,
                             loads_witness)
from bramsey.errors import IndexOutOfRange, WitnessFormatError
from bramsey.search import Status, decide_arrow


def run(capsys, *argv):
    code = main(list(map(str, argv)))
    out, err = capsys.readouterr()
    return code, out, err


class TestWitnessFormat:
    def test_round_trip(self):
        w = witness_7_56()
        wf = WitnessFile.from_coloring(w.coloring, w.spec, note="a\nb")
        back = loads_witness(wf.dumps())
        assert back.spec == w.spec
        assert back.note == "a\nb"
        assert back.coloring() == w.coloring

    def test_empty_rows(self):
        spec = ProblemSpec(3, 4, 2, 2)
        text = WitnessFile.from_coloring(star_witness(3, 4), spec).dumps()
        assert text.splitlines()[1:] == ["1 2 3 4", "-", "-"]
        assert loads_witness(text).coloring() == star_witness(3, 4)

    @pytest.mark.parametrize("text", [
        "", "nonsense\n1\n", "bramsey-witness v1; 2 x 2 2\n1\n2\n",
        "bramsey-witness v1; 2 3 2 2\n1\n", "bramsey-witness v1; 1 3 2 2\n1 two\n",
    ])
    def test_malformed(self, text):
        with pytest.raises(WitnessFormatError):
            loads_witness(text)

    def test_out_of_range(self):
        wf = loads_witness("bramsey-witness v1; 2 3 2 2\n1 2\n4\n")
        with pytest.raises(IndexOutOfRange, match="row 2 lists y_4"):
            wf.coloring()


class TestCertificate:
    def test_round_trip(self):
        out = decide_arrow(ProblemSpec(5, 11, 2, 3))
        cert = Certificate.from_outcome(out)
        back = loads_certificate(cert.dumps())
        assert back.status is Status.NOT_ARROW and back.reverified
        assert back.nodes == out.stats.nodes
        assert back.prunes == dict(out.stats.prunes)
        assert back.trust == "self-verified"

    def test_tampered_witness_fails_reverification(self):
        cert = Certificate.from_outcome(decide_arrow(ProblemSpec(5, 11, 2, 3)))
        cert.witness.rows[0] = []  # drop a row's red edges; a blue K_{3,3} appears
        assert loads_certificate(cert.dumps()).reverified is False

    def test_arrow_certificate(self):
        cert = Certificate.from_outcome(decide_arrow(ProblemSpec(4, 15, 2, 3)))
        back = loads_certificate(cert.dumps())
        assert back.status is Status.ARROW and back.witness is None and back.reverified is None


class TestCommands:
    @pytest.mark.parametrize("name", ["a7x56", "b8x44"])
    def test_construct_then_verify(self, capsys, tmp_path, name):
        path = tmp_path / "w.txt"
        assert run(capsys, "construct", name, "--out", path)[0] == 0
        code, out, _ = run(capsys, "verify", path)
        assert code == 0
        assert "good" in out.lower()

    def test_construct_stdout(self, capsys):
        code, out, _ = run(capsys, "construct", "a7x56")
        assert code == 0 and out.startswith("bramsey-witness v1; 7 56 2 6")

    def test_star(self, capsys, tmp_path):
        path = tmp_path / "star.txt"
        assert run(capsys, "construct", "star", "--m", 4, "--n", 9, "--out", path)[0] == 0
        assert path.read_text().splitlines()[-4:] == [" ".join(map(str, range(1, 10))), "-", "-", "-"]
        assert run(capsys, "verify", path)[0] == 0

    def test_star_needs_shape(self, capsys):
        assert run(capsys, "construct", "star")[0] == 2

    def test_verify_wider_fails(self, capsys, tmp_path):
        path = tmp_path / "w.txt"
        run(capsys, "construct", "a7x56", "--out", path)
        code, out, _ = run(capsys, "verify", path, "--n", 57)
        assert code == 1
        assert "blue" in out.lower()

    def test_verify_m_mismatch(self, capsys, tmp_path):
        path = tmp_path / "w.txt"
        run(capsys, "construct", "a7x56", "--out", path)
        assert run(capsys, "verify", path, "--m", 8)[0] == 2

    def test_verify_corrupt_index(self, capsys, tmp_path):
        path = tmp_path / "w.txt"
        run(capsys, "construct", "a7x56", "--out", path)
        path.write_text(path.read_text().replace(" 56\n", " 57\n", 1))
        code, _, err = run(capsys, "verify", path)
        assert code == 2 and "IndexOutOfRange" in err

    def test_verify_missing_file(self, capsys, tmp_path):
        assert run(capsys, "verify", tmp_path / "nope.txt")[0] == 2

    def test_verify_writes_certificate(self, capsys, tmp_path):
        path, cert = tmp_path / "w.txt", tmp_path / "c.txt"
        run(capsys, "construct", "b8x44", "--out", path)
        assert run(capsys, "verify", path, "--out", cert)[0] == 0
        assert load_certificate(cert).reverified
        assert run(capsys, "verify", cert)[0] == 0
        text = cert.read_text().splitlines()
        idx = text.index("witness:") + 2
        while text[idx].startswith("#"):
            idx += 1
        text[idx] = "1"
        cert.write_text("\n".join(text) + "\n")
        assert run(capsys, "verify", cert)[0] == 1

    def test_search(self, capsys, tmp_path):
        code, out, _ = run(capsys, "search", "--m", 7, "--n", 8, "--s", 3)
        assert code == 0 and "NotArrow" in out and "bramsey-witness" in out
        cert = tmp_path / "c.txt"
        assert run(capsys, "search", "--m", 7, "--n", 9, "--s", 3, "--out", cert)[0] == 0
        assert load_certificate(cert).status is Status.ARROW

    def test_search_inconclusive(self, capsys):
        code, _, _ = run(capsys, "search", "--m", 8, "--n", 45, "--budget-nodes", 20,
                         "--rules", "max_degree,union_lookahead")
        assert code == 3

    def test_search_bad_rule(self, capsys):
        assert run(capsys, "search", "--m", 2, "--n", 2, "--rules", "magic")[0] == 2

    def test_search_unsupported(self, capsys):
        assert run(capsys, "search", "--m", 3, "--n", 3, "--a", 3)[0] == 2

    def test_scan(self, capsys):
        code, out, _ = run(capsys, "scan", "--m", 7, "--s", 3, "--n-hi", 12)
        assert code == 0 and "= 9" in out

    def test_scan_inconclusive(self, capsys):
        code, out, _ = run(capsys, "scan", "--m", 8, "--s", 6, "--n-lo", 44, "--n-hi", 45,
                           "--budget-nodes", 20, "--rules", "none")
        assert code == 3 and "inconclusive" in out

    def test_encode(self, capsys, tmp_path):
        path = tmp_path / "f.cnf"
        assert run(capsys, "encode", "--m", 2, "--n", 2, "--s", 2, "--out", path)[0] == 0
        assert "p cnf 4 2" in path.read_text()
        assert run(capsys, "encode", "--m", 7, "--n", 57)[0] == 2

    def test_oracle(self, capsys):
        code, out, _ = run(capsys, "oracle", "--m", 2, "--n", 3, "--s", 2)
        assert code == 0 and "NotArrow" in out
        assert run(capsys, "oracle", "--m", 5, "--n", 5, "--s", 2)[0] == 2

    def test_table(self, capsys):
        code, out, _ = run(capsys, "table", "k22_k33")
        assert code == 0 and "overall: match" in out

    def test_cegar(self, capsys, tmp_path, harness):
        cert = tmp_path / "c.txt"
        code, out, _ = run(capsys, "cegar", "--m", 3, "--n", 4, "--s", 2,
                           "--solver", harness.command, "--out", cert)
        assert code == 0
        assert load_certificate(cert).engine == "cegar"

    def test_cegar_env(self, capsys, monkeypatch, harness):
        monkeypatch.setenv("BRAMSEY_SOLVER_CMD", harness.command)
        code, out, _ = run(capsys, "cegar", "--m", 2, "--n", 2, "--s", 1)
        assert code == 0 and "Arrow" in out and "solver-trusted" in out

    def test_cegar_no_solver(self, capsys, monkeypatch):
        monkeypatch.delenv("BRAMSEY_SOLVER_CMD", raising=False)
        assert run(capsys, "cegar", "--m", 2, "--n", 2, "--s", 1)[0] == 2

    def test_usage(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main([])
        assert exc.value.code == 2
