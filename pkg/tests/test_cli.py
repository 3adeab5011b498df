import json
import struct
import subprocess
import sys

import pytest

from dualtree import cli, index_io, mliq, rmq
from dualtree.minheap import build_minheap

from conftest import FIX_A, FIX_DFUDS, FIX_INTERVALS


def run_cli(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture
def array_index(tmp_path):
    src = tmp_path / "a.txt"
    src.write_text(" ".join(str(v) for v in FIX_A) + "\n")
    idx = tmp_path / "a.idx"
    assert cli.main(["build", "array", str(src), "-o", str(idx)]) == 0
    return idx


@pytest.fixture
def interval_index(tmp_path):
    src = tmp_path / "iv.txt"
    src.write_text("".join(f"{a} {b}\n" for a, b in FIX_INTERVALS))
    idx = tmp_path / "iv.idx"
    assert cli.main(["build", "intervals", str(src), "-o", str(idx)]) == 0
    return idx


def test_build_array_reports_bits(tmp_path, capsys):
    src = tmp_path / "a.txt"
    src.write_text("2 7 8 1 6 4 3 5\n")
    idx = tmp_path / "a.idx"
    code, out, _ = run_cli(capsys, "build", "array", str(src), "-o", str(idx), "--output", "jsonl")
    assert code == 0
    stats = json.loads(out)
    assert stats["raw_bits"] == len(FIX_DFUDS)
    assert idx.read_bytes()[:4] == b"DTR1"


def test_build_binary_format(tmp_path, capsys):
    src = tmp_path / "a.bin"
    index_io.write_array_binary(src, FIX_A)
    idx = tmp_path / "a.idx"
    code, _, _ = run_cli(capsys, "build", "array", str(src), "-o", str(idx), "--format", "binary")
    assert code == 0
    assert index_io.load_array_index(str(idx)).values == FIX_A


def test_build_errors_exit_2(tmp_path, capsys):
    empty = tmp_path / "empty.txt"
    empty.write_text("")
    code, _, err = run_cli(capsys, "build", "array", str(empty), "-o", str(tmp_path / "x.idx"))
    assert code == 2 and "empty" in err

    bad = tmp_path / "bad.txt"
    bad.write_text("1 4\n1 6\n")
    code, _, err = run_cli(capsys, "build", "intervals", str(bad), "-o", str(tmp_path / "y.idx"))
    assert code == 2 and "2" in err

    missing = tmp_path / "nope.txt"
    code, _, _ = run_cli(capsys, "build", "array", str(missing), "-o", str(tmp_path / "z.idx"))
    assert code == 2


def test_query_rmq(array_index, capsys):
    code, out, _ = run_cli(capsys, "query", str(array_index), "rmq", "2", "7", "--engine", "direct")
    assert code == 0 and out.strip() == "4"
    for engine in ("checked", "direct", "ancestor", "scan"):
        code, out, _ = run_cli(capsys, "query", str(array_index), "rmq", "2", "7", "--engine", engine)
        assert code == 0 and out.strip() == "4"


def test_query_rmq_stats(array_index, capsys):
    code, out, _ = run_cli(capsys, "query", str(array_index), "rmq", "2", "7", "--stats", "--output", "jsonl")
    record = json.loads(out)
    assert record["answer"] == 4
    assert record["ops"] == {"rank": 1, "select": 2, "rmq": 1, "open": 0, "close": 0, "bpselect": 0}


def test_query_mliq_none(interval_index, capsys):
    code, out, _ = run_cli(capsys, "query", str(interval_index), "mliq", "1", "10", "--engine", "weighted")
    assert code == 0 and out.strip() == "None"


def test_query_mliq_weighted_stats(interval_index, capsys):
    code, out, _ = run_cli(capsys, "query", str(interval_index), "mliq", "4", "5",
                           "--engine", "weighted", "--stats", "--output", "jsonl")
    record = json.loads(out)
    assert record["answer"] == 2
    assert record["ops"]["bpselect"] == 2


def test_query_order_violation_exit_3(array_index, capsys):
    code, _, err = run_cli(capsys, "query", str(array_index), "rmq", "7", "2")
    assert code == 3 and "7" in err


def test_query_out_of_range_exit_3(array_index, interval_index, capsys):
    code, _, _ = run_cli(capsys, "query", str(array_index), "rmq", "1", "9")
    assert code == 3
    code, _, _ = run_cli(capsys, "query", str(interval_index), "mliq", "0", "99")
    assert code == 3


def test_query_kind_mismatch_exit_2(array_index, capsys):
    code, _, _ = run_cli(capsys, "query", str(array_index), "mliq", "1", "2")
    assert code == 2


def test_loaded_index_matches_memory(array_index, interval_index):
    h_mem = build_minheap(FIX_A)
    h_disk = index_io.load_array_index(str(array_index))
    for i in range(1, 9):
        for j in range(i, 9):
            assert rmq.rmq_direct(h_disk, i, j) == rmq.rmq_direct(h_mem, i, j)
    s_mem = mliq.build_intervals(FIX_INTERVALS)
    s_disk = index_io.load_interval_index(str(interval_index))
    for a in range(0, 11):
        for b in range(a, 11):
            assert mliq.mliq_weighted(s_disk, a, b) == mliq.mliq_weighted(s_mem, a, b)


def test_corrupt_blob_rejected(array_index, capsys):
    data = bytearray(array_index.read_bytes())
    data[0] = ord("X")
    array_index.write_bytes(bytes(data))
    code, _, err = run_cli(capsys, "query", str(array_index), "rmq", "1", "2")
    assert code == 2 and "magic" in err


def test_verify_small_pass(capsys):
    code, out, _ = run_cli(capsys, "verify", "join", "--seed", "7", "--trees", "30", "--max-size", "40")
    assert code == 0
    assert "RESULT: pass" in out


def test_verify_claim_prints_counterexample(capsys):
    code, out, _ = run_cli(capsys, "verify", "--claim", "reversal-commute")
    assert code == 0
    assert "counterexamples" in out
    code, out, _ = run_cli(capsys, "verify", "--claim", "dfuds-mirror")
    assert code == 0
    assert "counterexamples" in out


def test_verify_env_seed(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("DUALTREE_SEED", "9")
    code, out, _ = run_cli(capsys, "verify", "join", "--trees", "20", "--max-size", "30")
    assert code == 0 and "seed 9" in out


def test_bench_rows_and_agreement(array_index, interval_index, capsys):
    code, out, _ = run_cli(capsys, "bench", str(array_index), "rmq", "--queries", "64", "--seed", "3")
    assert code == 0
    rows = [line.split("\t") for line in out.strip().splitlines()]
    header, body = rows[0], rows[1:]
    assert len(body) == 4
    digest_col = header.index("answers_sha256")
    assert len({r[digest_col] for r in body}) == 1

    code, out, _ = run_cli(capsys, "bench", str(interval_index), "mliq", "--queries", "32")
    rows = [line.split("\t") for line in out.strip().splitlines()]
    assert len(rows) == 3
    assert len({r[rows[0].index("answers_sha256")] for r in rows[1:]}) == 1


def test_bench_empty_workload(array_index, capsys):
    code, out, _ = run_cli(capsys, "bench", str(array_index), "rmq", "--queries", "0")
    assert code == 0
    assert len(out.strip().splitlines()) == 1  # header only


def test_console_script_installed():
    proc = subprocess.run([sys.executable, "-m", "dualtree.cli", "--help"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert "build" in proc.stdout and "verify" in proc.stdout
