from dataclasses import replace
from fractions import Fraction

import pytest

from np2.sweep import (
    SweepSpec,
    evaluate_curve,
    frontier_summary,
    iter_curves,
    parse_coeffs,
    record_from_json,
    record_to_json,
    report_lines,
    run_sweep,
)
from np2.zeta import CurvePoly


def spec_g3():
    return SweepSpec(1, 3)


ID_FIX = ((11, 0), (13, 1), (15, 0), (17, 0), (19, 1), (21, 1))


def test_iter_curves_exhaustive():
    curves = list(iter_curves(spec_g3()))
    assert len(curves) == 8
    assert all(f.deg == 7 and f.coeff(7) == 1 for f in curves)
    assert len(set(curves)) == 8
    # leading coefficient runs over the nonzero field elements
    curves = list(iter_curves(SweepSpec(2, 1)))
    assert len(curves) == 12
    assert {f.coeff(3) for f in curves} == {1, 2, 3}


def test_iter_curves_fixed():
    curves = list(iter_curves(SweepSpec(1, 3, fixed=((5, 0),))))
    assert len(curves) == 4
    assert all(f.coeff(5) == 0 for f in curves)
    curves = list(iter_curves(SweepSpec(2, 1, fixed=((3, 2),))))
    assert len(curves) == 4
    assert all(f.coeff(3) == 2 for f in curves)


def test_spec_validation():
    with pytest.raises(ValueError, match="2\\^20"):
        list(iter_curves(SweepSpec(2, 11)))
    with pytest.raises(ValueError, match="count"):
        list(iter_curves(SweepSpec(1, 3, mode="random")))
    with pytest.raises(ValueError, match="mode"):
        list(iter_curves(SweepSpec(1, 3, mode="grid")))
    with pytest.raises(ValueError, match="predictor"):
        list(iter_curves(SweepSpec(1, 3, predictors=("zeta",))))
    with pytest.raises(ValueError, match="leading"):
        list(iter_curves(SweepSpec(1, 3, fixed=((7, 0),))))
    with pytest.raises(ValueError, match="odd"):
        list(iter_curves(SweepSpec(1, 3, fixed=((4, 1),))))


def test_random_sweep_reproducible():
    spec = SweepSpec(1, 3, mode="random", seed=42, count=5)
    a, _ = run_sweep(spec)
    b, _ = run_sweep(spec)
    assert len(a) == 5
    assert [replace(r, elapsed=None) for r in a] == [replace(r, elapsed=None) for r in b]
    c, _ = run_sweep(replace(spec, seed=43))
    assert [r.coeffs for r in a] != [r.coeffs for r in c]


def test_g3_sweep_all_agree():
    records, summary = run_sweep(spec_g3())
    assert summary.total == 8
    assert summary.agreements == 8
    assert summary.disagreements == 0
    assert summary.absences == 0
    for r in records:
        assert r.oracle == r.vss == (3, Fraction(1))
        assert r.hasse_case == "T1-i"


def test_record_rerun_reproduces_verdicts():
    records, _ = run_sweep(SweepSpec(1, 4, predictors=("oracle", "vss", "hasse")))
    for rec in records[:6]:
        f = CurvePoly.make(rec.field_degree, dict(rec.coeffs))
        again = evaluate_curve(f, rec.predictors)
        assert replace(again, elapsed=None) == replace(rec, elapsed=None)


def test_jsonl_roundtrip():
    records, _ = run_sweep(spec_g3())
    for rec in records:
        back = record_from_json(record_to_json(rec))
        assert back == replace(rec, elapsed=None)


def test_csv_header_only_when_empty():
    lines = report_lines([], "csv")
    assert lines == [
        "q,g,coeffs,predictors,oracle,vss,hasse_case,hasse_vertex,large_n_caveat,"
        "agree_oracle_vss,agree_oracle_hasse,agree_vss_hasse"
    ]
    with pytest.raises(ValueError, match="format"):
        report_lines([], "tsv")


def test_report_digest_stable():
    a, _ = run_sweep(spec_g3())
    b, _ = run_sweep(spec_g3())
    for fmt in ("jsonl", "csv"):
        assert report_lines(a, fmt) == report_lines(b, fmt)
    timed = report_lines(a, "jsonl", timing=True)
    assert all('"elapsed"' in line for line in timed)
    assert all('"elapsed"' not in line for line in report_lines(a, "jsonl"))


def test_parallel_matches_serial(monkeypatch):
    spec = SweepSpec(1, 4)
    monkeypatch.delenv("NP2_THREADS", raising=False)
    serial, s1 = run_sweep(spec)
    monkeypatch.setenv("NP2_THREADS", "3")
    parallel, s2 = run_sweep(spec)
    assert report_lines(serial, "jsonl") == report_lines(parallel, "jsonl")
    assert s1 == s2


def test_id_family_disagreement_counted():
    spec = SweepSpec(1, 10, fixed=ID_FIX, predictors=("oracle", "vss", "hasse"))
    records, summary = run_sweep(spec)
    assert summary.total == 32
    assert summary.oracle_disagreements == 32
    assert summary.absences == 16
    front = frontier_summary(records)
    assert set(front) == {"T2-id"}
    row = front["T2-id"]
    assert row["records"] == row["fired"] == 32
    assert row["oracle_disagree"] == 32
    assert row["oracle_agree"] == 0
    # the stable image abstains on half the family and never
    # contradicts the oracle where it does fire
    assert row["vss_disagree"] == 16
    assert sum(1 for r in records if r.vss is None) == 16
    assert all(r.agree_oracle_vss is not False for r in records)


def test_parse_coeffs_rejects_duplicates():
    assert parse_coeffs("7:1,3:1") == {7: 1, 3: 1}
    with pytest.raises(ValueError, match="repeated"):
        parse_coeffs("7:1,7:1")
