"""Order scans: the loop-forcing property, checkpoints, identity overrides."""

import json
import os

import pytest

from quasilab.cayley import parse_table_text
from quasilab.identities import UnknownIdentityError, builtin_identity, check_identity
from quasilab.kunen import kunen_scan, modular_scan
from quasilab.latin import OrderTooLarge
from quasilab.reports import validate_report

# order: (total, satisfying, loops, satisfying loops)
N1_TALLIES = {
    1: (1, 1, 1, 1),
    2: (2, 2, 2, 2),
    3: (12, 3, 3, 3),
    4: (576, 16, 16, 16),
}


def test_full_scans_orders_1_to_4():
    for n, expected in N1_TALLIES.items():
        r = kunen_scan(n)
        got = (r.total_squares, r.n1_count, r.loop_count, r.n1_loop_count)
        assert got == expected
        assert r.kunen_holds
        assert r.loops_failing_n1 == expected[2] - expected[3]
        assert r.counterexample_files == ()
        assert r.mode == "full"


def test_scan_report_is_schema_valid():
    doc = kunen_scan(3).to_dict()
    assert validate_report(doc) == "kunen-scan"
    assert doc["sampling_note"] is None
    doc = kunen_scan(5, mode="sample", sample_size=25, seed=1).to_dict()
    assert validate_report(doc) == "kunen-scan"
    assert "not uniformly" in doc["sampling_note"]


def test_sample_mode_is_deterministic():
    a = kunen_scan(5, mode="sample", sample_size=40, seed=9)
    b = kunen_scan(5, mode="sample", sample_size=40, seed=9)
    assert (a.total_squares, a.n1_count, a.loop_count) == (40, b.n1_count, b.loop_count)
    assert a.sample_size == 40
    assert a.seed == 9
    assert a.kunen_holds  # no sampled square can violate the theorem


def test_order_limits():
    with pytest.raises(OrderTooLarge) as info:
        kunen_scan(6)  # full order 6 needs the explicit opt-in
    assert info.value.limit == 5
    with pytest.raises(OrderTooLarge) as info:
        kunen_scan(7, allow_n6=True)  # past the hard enumeration limit
    assert info.value.limit == 6
    with pytest.raises(ValueError):
        kunen_scan(0)
    with pytest.raises(ValueError):
        kunen_scan(3, mode="exhaustive")
    # sampling at order 6 needs no flag
    r = kunen_scan(6, mode="sample", sample_size=5, seed=0)
    assert r.total_squares == 5


def test_unknown_identity_name():
    with pytest.raises(UnknownIdentityError):
        kunen_scan(3, identity_name="bogus")


def test_commutativity_scan_dumps_counterexamples(tmp_path):
    # commutative non-loops exist at order 3, so scanning with the
    # commutativity identity exercises the failure path end to end
    r = kunen_scan(3, identity_name="commutativity", counterexample_dir=str(tmp_path))
    assert (r.total_squares, r.n1_count, r.loop_count, r.n1_loop_count) == (12, 6, 3, 3)
    assert not r.kunen_holds
    assert len(r.counterexample_files) == 3
    ident = builtin_identity("commutativity")
    for path in r.counterexample_files:
        assert os.path.dirname(path) == str(tmp_path)
        with open(path) as fh:
            q = parse_table_text(fh.read())
        assert check_identity(q, ident).holds
        assert not q.is_loop()


def test_moufang_left_scan_also_forces_loops():
    r = kunen_scan(4, identity_name="moufang_left")
    assert (r.n1_count, r.n1_loop_count) == (16, 16)
    assert r.kunen_holds
    assert r.identity_name == "moufang_left"


def test_checkpoint_round_trip(tmp_path):
    path = str(tmp_path / "scan4.json")
    first = kunen_scan(4, checkpoint=path)
    with open(path) as fh:
        data = json.load(fh)
    assert data["order"] == 4
    assert data["identity"] == "N1"
    assert len(data["completed"]) == 24  # one entry per first row

    # full resume: everything comes from the checkpoint
    resumed = kunen_scan(4, checkpoint=path)
    assert resumed.total_squares == first.total_squares
    assert resumed.n1_count == first.n1_count

    # partial resume: drop half the entries, tallies must still match
    dropped = dict(list(data["completed"].items())[::2])
    with open(path, "w") as fh:
        json.dump({"order": 4, "identity": "N1", "completed": dropped}, fh)
    partial = kunen_scan(4, checkpoint=path)
    assert partial.total_squares == 576
    assert partial.n1_count == 16


def test_checkpoint_for_other_scan_is_ignored(tmp_path):
    path = str(tmp_path / "other.json")
    with open(path, "w") as fh:
        json.dump({"order": 3, "identity": "commutativity", "completed": {"bad": {}}}, fh)
    r = kunen_scan(3, checkpoint=path)  # N1 scan: stale file must not poison it
    assert (r.total_squares, r.n1_count) == (12, 3)


def test_parallel_scan_matches_serial():
    serial = kunen_scan(4, jobs=1)
    parallel = kunen_scan(4, jobs=2)
    assert parallel.jobs == 2
    assert (parallel.total_squares, parallel.n1_count, parallel.loop_count) == (
        serial.total_squares,
        serial.n1_count,
        serial.loop_count,
    )


def test_modular_scan_order_3():
    m = modular_scan(3)
    assert m.total_squares == 12
    assert m.n1_count == 3
    assert m.trivial_cocycle_count == 3
    assert m.all_trivial
    assert m.dimension_one_count == 3
    assert validate_report(m.to_dict()) == "modular-scan"


def test_modular_scan_sample_mode():
    m = modular_scan(5, mode="sample", sample_size=30, seed=2)
    assert m.total_squares == 30
    assert m.all_trivial
    assert m.trivial_cocycle_count == m.n1_count
