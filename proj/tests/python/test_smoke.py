from fractions import Fraction
from pathlib import Path

import pytest

import fusionforge as ff

DATA = Path(__file__).resolve().parents[1] / "data"

REP_S3 = [
    [[1, 0, 0], [0, 1, 0], [0, 0, 1]],
    [[0, 1, 0], [1, 0, 0], [0, 0, 1]],
    [[0, 0, 1], [0, 0, 1], [1, 1, 1]],
]


def test_rep_s3():
    f = ff.FusionData(REP_S3, [0, 1, 2])
    assert ff.validate(f) is None
    assert ff.fpdims(f) == pytest.approx([1, 1, 2])
    assert ff.codegree_string(f) == "[2, 3, 6]"
    assert ff.codegrees(f) == [(Fraction(2), 1), (Fraction(3), 1), (Fraction(6), 1)]
    assert ff.is_drinfeld(f)
    assert ff.summarize(f)["commutative"]


def test_associativity_violation():
    bad = [[row[:] for row in block] for block in REP_S3]
    bad[1][2][2] = bad[2][1][2] = bad[2][2][1] = 2
    assert "associativity" in ff.validate(ff.FusionData(bad, [0, 1, 2])).lower()


def test_egyptian_counts():
    assert [len(ff.egyptian_fractions(n, divisibility=True)) for n in range(1, 6)] == [1, 1, 3, 12, 97]
    assert len(ff.egyptian_fractions(4, divisibility=True, nc_pattern=[2])) == 4


def test_types_and_search():
    assert ff.types_for_fpdim(6, 3) == [[1, 1, 2]]
    rings = ff.search([1, 1, 2, 6], [0, 1, 2, 3])
    assert len(rings) == 1
    assert ff.codegree_string(rings[0]) == "[2, 3, 7, 42]"


def test_classify_rank7_noncommutative():
    rep = ff.classify(7, noncommutative=True)
    assert rep["complete"]
    assert len(rep["drinfeld_rings"]) == 3


def test_induction():
    ring = ff.extend_ring(ff.extend_ring(ff.extend_ring(ff.trivial_ring())))
    sols = ff.induction_solutions(ring)
    assert len(sols) == 1
    assert sols[0][1] == [1, 1, 2, 6, 6, 6, 6, 6, 6, 6, 6, 14, 14, 14, 21, 21]


def test_group_theoretical():
    t, d = ff.group_theoretical("A(5)", "A(4)")
    assert t == [1, 1, 1, 3, 4, 4, 4]
    assert d == [0, 2, 1, 3, 4, 5, 6]
    catalog = (DATA / "groups60.txt").read_text()
    assert ff.find_group_subgroup([1, 1, 2, 3, 3, 6], catalog) == [("A5", "S3")]


def test_isaacs_and_round_trip():
    text = (DATA / "drinfeld_rank6_1frob.jsonl").read_text()
    rings = ff.parse_records(text)
    target = [r for r in rings if r.duality == [0, 1, 2, 3, 4, 5]
              and [round(x) for x in ff.fpdims(r)] == [1, 1, 2, 3, 3, 6]]
    assert len(target) == 1
    assert ff.isaacs_witness(target[0]) == Fraction(-8, 3)
    for r in rings:
        assert ff.parse_records(ff.render_text(r))[0] == r
        assert ff.parse_records(ff.render_json(r))[0] == r


def test_parse_error():
    with pytest.raises(ff.ParseError):
        ff.parse_records("{\"rank\": 2, \"duality\": [0")
