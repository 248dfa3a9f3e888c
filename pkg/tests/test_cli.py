import pytest

from cpnet.medial import StrandMatching, format_matching

from cpnet.cli import main
from conftest import DATA, FIVE_NODE_PAIRS

FIVE_NODE_TEXT = format_matching(StrandMatching.from_pairs(FIVE_NODE_PAIRS))


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_forward(capsys):
    code, out, _ = run(capsys, "forward", f"{DATA}/edge7.cpn")
    assert code == 0
    assert out.split() == ["2", "2", "-7", "7", "7", "-7"]


def test_reconstruct_search(capsys):
    code, out, _ = run(capsys, "reconstruct", f"{DATA}/five_node.mat")
    assert code == 0
    assert out.startswith(FIVE_NODE_TEXT)
    assert "exterior" in out and out.rstrip().endswith("round-trip: exact")
    vals = sorted(int(line.split()[-1]) for line in out.splitlines() if line.startswith("tripod"))
    assert vals == [4, 10, 60, 300, 390, 600, 765]


def test_reconstruct_given_matching(capsys, tmp_path):
    p = tmp_path / "m.txt"
    p.write_text(FIVE_NODE_TEXT)
    code, out, _ = run(capsys, "reconstruct", f"{DATA}/five_node.mat", str(p))
    assert code == 0 and "1530/13" in out


def test_not_in_cell(capsys, tmp_path):
    p = tmp_path / "bad.mat"
    p.write_text("3 3\n-1 2 -1\n2 -3 1\n-1 1 0\n")
    code, _, err = run(capsys, "reconstruct", str(p))
    assert code == 3 and err.startswith("status: not-in-cell:")


def test_check(capsys):
    code, out, _ = run(capsys, "check", f"{DATA}/triangle.mat")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "well-connected: true"
    assert len(lines) == 4 and all(line.endswith(" 1") for line in lines[1:])


def test_minimal(capsys):
    assert run(capsys, "minimal", f"{DATA}/parallel.cpn")[1] == "minimal: false (strands cross twice)\n"
    assert run(capsys, "minimal", f"{DATA}/edge7.cpn")[1] == "minimal: true\n"


def test_matching_tiling_round_trip(capsys, tmp_path):
    m = tmp_path / "m.txt"
    m.write_text(FIVE_NODE_TEXT)
    _, tiling, _ = run(capsys, "tiling", str(m))
    t = tmp_path / "t.txt"
    t.write_text(tiling)
    _, back, _ = run(capsys, "matching", str(t), "--from-tiling")
    assert back.strip() == m.read_text().strip()


def test_standard_and_matching(capsys, tmp_path):
    m = tmp_path / "m.txt"
    m.write_text(format_matching(StrandMatching.from_pairs([(1, 4), (2, 5), (3, 6)])))
    _, net, _ = run(capsys, "--seed", "3", "standard", str(m), "--random")
    g = tmp_path / "g.cpn"
    g.write_text(net)
    _, out, _ = run(capsys, "matching", str(g))
    assert out == m.read_text()
    code, out, _ = run(capsys, "bvars", str(g))
    assert code == 0 and out.startswith("vertex 1")


def test_degenerate_matching(capsys, tmp_path):
    m = tmp_path / "m.txt"
    m.write_text(format_matching(StrandMatching.from_pairs([(1, 4), (2, 3)])))
    code, _, err = run(capsys, "standard", str(m))
    assert code == 2 and err.startswith("status: precondition-error:")


def test_minors(capsys):
    code, out, _ = run(capsys, "minors", f"{DATA}/five_node.mat", "--contiguous", "1", "3", "2")
    assert code == 0
    assert out.startswith("CM[1,3,2]") and "region" in out and "evaluated" in out
    head = out.splitlines()[0].split()[-1]
    assert out.splitlines()[-1].split()[-1] == head


def test_tilings(capsys):
    assert run(capsys, "tilings", "1", "1", "0", "7")[1] == "v[1,1]\n"
    assert run(capsys, "tilings", "2", "1", "2", "7", "--count")[1] == "6\n"


def test_groves(capsys):
    code, out, _ = run(capsys, "groves", f"{DATA}/edge7.cpn", "--normalize")
    assert code == 0
    assert sorted(line.split()[-1] for line in out.splitlines()) == ["1", "7"]


def test_missing_file(capsys):
    code, _, err = run(capsys, "forward", "/nonexistent.cpn")
    assert code == 2 and "status: precondition-error" in err


def test_usage():
    with pytest.raises(SystemExit):
        main([])
