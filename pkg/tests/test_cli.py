import itertools
import subprocess
import sys

import pytest

from mdeck.cli import main
from mdeck.collision import load_corpus
from mdeck.deck import Deck, compute_deck


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_deck_command(capsys):
    code, out, _ = run(capsys, "deck", "--input", "0110", "-m", "2")
    assert code == 0
    assert out == "deck m=2 n=4\n00 1\n01 2\n10 2\n11 1\nsum=6 binom=6 OK\n"
    code, out_rle, _ = run(capsys, "deck", "--input", "1_0 2_1 1_0", "-m", "2")
    assert out_rle == out


def test_deck_errors(capsys):
    code, _, err = run(capsys, "deck", "--input", "01", "-m", "3")
    assert code == 2 and "m exceeds string length" in err
    code, _, err = run(capsys, "deck", "--input", "0_1", "-m", "1")
    assert code == 2 and "0_1" in err


def test_deck_to_file(capsys, tmp_path):
    path = tmp_path / "d.txt"
    code, out, _ = run(capsys, "deck", "--input", "0110", "-m", "2", "-o", str(path))
    assert code == 0 and out == "sum=6 binom=6 OK\n"
    assert Deck.from_text(path.read_text()) == compute_deck("0110", 2)


def test_verify(capsys):
    assert run(capsys, "verify", "01", "10", "-m", "1")[0] == 0
    code, out, _ = run(capsys, "verify", "01", "11", "-m", "1")
    assert code == 1 and "y=0 count1=1 count2=0" in out


def test_verify_paper(capsys):
    code, out, _ = run(capsys, "verify-paper")
    assert code == 0
    lines = [line for line in out.splitlines() if line.startswith("m=")]
    assert len(lines) == 8 and all("result=collide" in line for line in lines)
    assert "time=" in lines[0]


def test_verify_paper_only_m(capsys):
    code, out, _ = run(capsys, "verify-paper", "--only-m", "7")
    assert code == 0
    assert out.splitlines()[0].startswith("m=7 n=54 result=collide")
    assert "verified=1" in out


def _corpus_text():
    from importlib import resources

    return resources.files("mdeck").joinpath("data/paper_pairs.txt").read_text()


def test_verify_paper_flipped_digit(capsys, tmp_path):
    text = _corpus_text().replace("m=2 n=4: 1_0 2_1 1_0 |", "m=2 n=4: 1_0 2_1 1_1 |")
    path = tmp_path / "corpus.txt"
    path.write_text(text)
    code, out, _ = run(capsys, "verify-paper", "--corpus", str(path))
    assert code == 1
    line = next(line for line in out.splitlines() if line.startswith("m=2 "))
    assert "result=distinct" in line and "y=" in line


def test_verify_paper_corrupted(capsys, tmp_path):
    path = tmp_path / "corpus.txt"
    path.write_text(_corpus_text().replace("m=3 n=7: 1_0", "m=3 n=7: 1_x"))
    assert run(capsys, "verify-paper", "--corpus", str(path))[0] == 3
    assert run(capsys, "verify-paper", "--corpus", str(tmp_path / "missing.txt"))[0] == 3


def test_search_and_expect(capsys):
    code, out, _ = run(capsys, "search", "-m", "2", "-n", "4", "--no-timing")
    assert code == 0
    assert "outcome=fails witness=0110 1001" in out and "wall_time" not in out
    assert run(capsys, "search", "-m", "2", "-n", "4", "--expect", "holds")[0] == 1
    assert run(capsys, "search", "-m", "2", "-n", "3", "--expect", "holds")[0] == 0


def test_search_budget(capsys):
    code, _, err = run(capsys, "search", "-m", "3", "-n", "12", "--memory-budget", "100")
    assert code == 3 and "by-weight-and-pair-counts" in err


def test_nm(capsys):
    code, out, _ = run(capsys, "nm", "-m", "3", "--max-n", "10", "--threads", "2")
    assert code == 0
    assert out.splitlines()[-1] == "N_3 = 6"


def test_bounds(capsys):
    code, out, _ = run(capsys, "bounds", "-m", "1")
    assert code == 0
    assert out.splitlines()[0] == "lower=- known=1 pigeonhole_upper=5"
    out7 = run(capsys, "bounds", "-m", "7")[1]
    assert "lower=13 known=-" in out7 and "paper_cap=53" in out7


def test_reconstruct_round_trip_all_length5(capsys, tmp_path):
    path = tmp_path / "deck.txt"
    for digits in itertools.product("01", repeat=5):
        x = "".join(digits)
        assert run(capsys, "deck", "--input", x, "-m", "3", "-o", str(path))[0] == 0
        code, out, _ = run(capsys, "reconstruct", "-m", "3", "--deck", str(path))
        assert code == 0 and out.strip() == x


def test_reconstruct_falls_back_to_bruteforce(capsys, tmp_path):
    path = tmp_path / "deck.txt"
    path.write_text(compute_deck("0110", 2).to_text())
    code, out, _ = run(capsys, "reconstruct", "--deck", str(path))
    assert code == 1 and out.split() == ["0110", "1001"]
    code, out, _ = run(capsys, "invert", "--deck", str(path))
    assert code == 0 and out.split() == ["0110", "1001", "preimages=2"]
    assert run(capsys, "reconstruct", "-m", "3", "--deck", str(path))[0] == 2


def test_sample_and_discriminate(capsys, tmp_path):
    path = tmp_path / "batch.txt"
    argv = ["sample", "--input", "0110", "-m", "2", "--count", "2000", "--seed", "11"]
    assert run(capsys, *argv, "-o", str(path))[0] == 0
    first = path.read_text()
    run(capsys, *argv, "-o", str(path))
    assert path.read_text() == first
    code, out, _ = run(
        capsys, "discriminate", "--samples", str(path), "--candidate", "0110",
        "--candidate", "1_1 2_0 1_1", "--candidate", "0101",
    )
    assert code == 0
    assert out.splitlines()[-1] == "argmax=0110,1001 ties=2"
    code, out, _ = run(capsys, "discriminate", "--samples", str(path), "--all")
    assert "ties=2" in out


@pytest.mark.parametrize(
    "argv",
    [
        ["sample", "--input", "0110100", "-m", "3", "--count", "50", "--seed", "5"],
        ["search", "-m", "3", "-n", "8", "--no-timing"],
        ["nm", "-m", "2", "--max-n", "6", "--no-timing"],
    ],
)
def test_seeded_commands_are_byte_identical(capsys, argv):
    assert run(capsys, *argv)[1] == run(capsys, *argv)[1]


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "mdeck", "bounds", "-m", "2"], capture_output=True, text=True
    )
    assert proc.returncode == 0
    assert proc.stdout.startswith("lower=- known=3 pigeonhole_upper=37")


def test_usage_error_exit_code():
    proc = subprocess.run([sys.executable, "-m", "mdeck", "deck"], capture_output=True)
    assert proc.returncode == 2


def test_corpus_is_rle_as_printed():
    for pair in load_corpus():
        assert "_" in pair.first_rle and "_" in pair.second_rle
