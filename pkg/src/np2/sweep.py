"""Sweep harness: run the predictor routes over curve families and
serialize one verdict per curve.

Sweeps are deterministic: exhaustive families enumerate coefficient
vectors in encoding order, random families pre-draw all curves from a
seed, and records are sorted by encoding after evaluation, so parallel
and serial runs produce byte-identical reports.  Timing is kept out of
the serialized forms by default so report digests are stable.
"""

from __future__ import annotations

import csv
import io
import json
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from fractions import Fraction
from random import Random

from .hasse import classify
from .vss import predict_first_vertex
from .zeta import CurvePoly, first_vertex, newton_polygon_of_curve

EXHAUSTIVE_CAP = 1 << 20
PREDICTORS = ("oracle", "vss", "hasse")

CSV_COLUMNS = (
    "q",
    "g",
    "coeffs",
    "predictors",
    "oracle",
    "vss",
    "hasse_case",
    "hasse_vertex",
    "large_n_caveat",
    "agree_oracle_vss",
    "agree_oracle_hasse",
    "agree_vss_hasse",
)


def frac_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def parse_frac(s: str) -> Fraction:
    num, den = s.split("/")
    return Fraction(int(num), int(den))


def coeffs_str(coeffs) -> str:
    return ",".join(f"{e}:{c}" for e, c in coeffs)


def parse_coeffs(s: str) -> dict[int, int]:
    out = {}
    for part in s.split(","):
        e, c = part.split(":")
        e = int(e)
        if e in out:
            raise ValueError(f"repeated exponent {e}")
        out[e] = int(c)
    return out


@dataclass(frozen=True)
class SweepSpec:
    """One curve family plus the predictors to run on it."""

    field_degree: int
    genus: int
    mode: str = "exhaustive"
    seed: int = 0
    count: int = 0
    fixed: tuple[tuple[int, int], ...] = ()
    predictors: tuple[str, ...] = PREDICTORS

    def validate(self) -> None:
        if self.mode not in ("exhaustive", "random"):
            raise ValueError(f"unknown sweep mode {self.mode!r}")
        if self.genus < 1:
            raise ValueError("genus must be positive")
        if not self.predictors:
            raise ValueError("no predictors selected")
        for p in self.predictors:
            if p not in PREDICTORS:
                raise ValueError(f"unknown predictor {p!r}")
        q = 1 << self.field_degree
        deg = 2 * self.genus + 1
        for e, c in self.fixed:
            if e < 1 or e > deg or e % 2 == 0:
                raise ValueError(f"fixed exponent {e} not an odd exponent of the family")
            if not 0 <= c < q:
                raise ValueError(f"fixed value {c} outside F_{q}")
            if e == deg and c == 0:
                raise ValueError("leading coefficient cannot be fixed to zero")
        if self.mode == "exhaustive":
            if q**self.genus > EXHAUSTIVE_CAP:
                raise ValueError("exhaustive sweep larger than 2^20 curves")
        elif self.count < 1:
            raise ValueError("random sweep needs a positive count")


def iter_curves(spec: SweepSpec):
    """Curves of the family, in deterministic order."""
    spec.validate()
    q = 1 << spec.field_degree
    deg = 2 * spec.genus + 1
    fixed = dict(spec.fixed)
    lower = list(range(1, deg, 2))
    if spec.mode == "exhaustive":
        def rec(i, coeffs):
            if i == len(lower):
                for lead in (fixed[deg],) if deg in fixed else range(1, q):
                    full = dict(coeffs)
                    full[deg] = lead
                    yield CurvePoly.make(spec.field_degree, full)
                return
            e = lower[i]
            for c in (fixed[e],) if e in fixed else range(q):
                if c:
                    coeffs[e] = c
                yield from rec(i + 1, coeffs)
                coeffs.pop(e, None)

        yield from rec(0, {})
    else:
        rng = Random(spec.seed)
        for _ in range(spec.count):
            coeffs = {deg: fixed.get(deg, rng.randrange(1, q))}
            for e in lower:
                c = fixed[e] if e in fixed else rng.randrange(q)
                if c:
                    coeffs[e] = c
            yield CurvePoly.make(spec.field_degree, coeffs)


@dataclass(frozen=True)
class VerdictRecord:
    """All verdicts for one curve; re-runnable from its encoding."""

    field_degree: int
    genus: int
    coeffs: tuple[tuple[int, int], ...]
    predictors: tuple[str, ...]
    oracle: tuple[int, Fraction] | None
    vss: tuple[int, Fraction] | None
    hasse_case: str | None
    hasse_vertex: tuple[int, int] | None
    large_n_caveat: bool | None
    agree_oracle_vss: bool | None
    agree_oracle_hasse: bool | None
    agree_vss_hasse: bool | None
    elapsed: float | None = None


def _agree(u, v):
    if u is None or v is None:
        return None
    return (u[0], Fraction(u[1])) == (v[0], Fraction(v[1]))


def evaluate_curve(f: CurvePoly, predictors=PREDICTORS) -> VerdictRecord:
    t0 = time.perf_counter()
    oracle = vss = case = None
    if "oracle" in predictors:
        oracle = first_vertex(newton_polygon_of_curve(f))
    if "vss" in predictors:
        vss = predict_first_vertex(f)
    if "hasse" in predictors:
        case = classify(f)
    return VerdictRecord(
        f.field_degree,
        f.genus,
        f.coeffs,
        tuple(predictors),
        oracle,
        vss,
        case.case_id if case else None,
        case.vertex if case else None,
        case.large_n_caveat if case else None,
        _agree(oracle, vss),
        _agree(oracle, case.vertex if case else None),
        _agree(vss, case.vertex if case else None),
        time.perf_counter() - t0,
    )


def _evaluate_job(job):
    f, predictors = job
    return evaluate_curve(f, predictors)


def _record_key(rec: VerdictRecord):
    dense = [0] * (rec.genus + 1)
    for e, c in rec.coeffs:
        dense[(e - 1) // 2] = c
    return (rec.field_degree, rec.genus, tuple(dense))


@dataclass(frozen=True)
class SweepSummary:
    total: int
    agreements: int
    disagreements: int
    oracle_disagreements: int
    absences: int


def summarize(records) -> SweepSummary:
    agreements = disagreements = oracle_dis = absences = 0
    for r in records:
        flags = [r.agree_oracle_vss, r.agree_oracle_hasse, r.agree_vss_hasse]
        ran = [f for f in flags if f is not None]
        if ran and all(ran):
            agreements += 1
        if any(f is False for f in flags):
            disagreements += 1
        if r.agree_oracle_vss is False or r.agree_oracle_hasse is False:
            oracle_dis += 1
        absent = ("vss" in r.predictors and r.vss is None) or (
            "hasse" in r.predictors and r.hasse_vertex is None
        )
        if absent:
            absences += 1
    return SweepSummary(len(records), agreements, disagreements, oracle_dis, absences)


def run_sweep(spec: SweepSpec) -> tuple[list[VerdictRecord], SweepSummary]:
    curves = list(iter_curves(spec))
    threads = int(os.environ.get("NP2_THREADS", "1") or "1")
    if threads > 1 and len(curves) > 1:
        jobs = [(f, spec.predictors) for f in curves]
        chunk = max(1, len(jobs) // (threads * 8))
        with ProcessPoolExecutor(max_workers=threads) as pool:
            records = list(pool.map(_evaluate_job, jobs, chunksize=chunk))
    else:
        records = [evaluate_curve(f, spec.predictors) for f in curves]
    records.sort(key=_record_key)
    return records, summarize(records)


def frontier_summary(records) -> dict[str, dict[str, int]]:
    """Per-case agreement table for the closed-form route."""
    rows: dict[str, dict[str, int]] = {}
    for r in records:
        if r.hasse_case is None:
            continue
        row = rows.setdefault(
            r.hasse_case,
            {
                "records": 0,
                "fired": 0,
                "oracle_agree": 0,
                "oracle_disagree": 0,
                "vss_agree": 0,
                "vss_disagree": 0,
            },
        )
        row["records"] += 1
        if r.hasse_vertex is None:
            continue
        row["fired"] += 1
        if r.agree_oracle_hasse is True:
            row["oracle_agree"] += 1
        elif r.agree_oracle_hasse is False:
            row["oracle_disagree"] += 1
        if r.agree_vss_hasse is True:
            row["vss_agree"] += 1
        elif r.agree_vss_hasse is False:
            row["vss_disagree"] += 1
    return {case: rows[case] for case in sorted(rows)}


def _vertex_json(v):
    if v is None:
        return None
    return [v[0], frac_str(Fraction(v[1]))]


def record_to_json(rec: VerdictRecord, timing: bool = False) -> str:
    obj = {
        "q": 1 << rec.field_degree,
        "g": rec.genus,
        "coeffs": coeffs_str(rec.coeffs),
        "predictors": ",".join(rec.predictors),
        "oracle": _vertex_json(rec.oracle),
        "vss": _vertex_json(rec.vss),
        "hasse_case": rec.hasse_case,
        "hasse_vertex": list(rec.hasse_vertex) if rec.hasse_vertex else None,
        "large_n_caveat": rec.large_n_caveat,
        "agree_oracle_vss": rec.agree_oracle_vss,
        "agree_oracle_hasse": rec.agree_oracle_hasse,
        "agree_vss_hasse": rec.agree_vss_hasse,
    }
    if timing:
        obj["elapsed"] = rec.elapsed
    return json.dumps(obj, sort_keys=True)


def record_from_json(line: str) -> VerdictRecord:
    obj = json.loads(line)
    q = obj["q"]
    a = q.bit_length() - 1
    if 1 << a != q:
        raise ValueError(f"q = {q} is not a power of two")

    def vertex(v):
        if v is None:
            return None
        return (v[0], parse_frac(v[1]))

    return VerdictRecord(
        a,
        obj["g"],
        tuple(sorted(parse_coeffs(obj["coeffs"]).items(), reverse=True)),
        tuple(obj["predictors"].split(",")),
        vertex(obj["oracle"]),
        vertex(obj["vss"]),
        obj["hasse_case"],
        tuple(obj["hasse_vertex"]) if obj["hasse_vertex"] else None,
        obj["large_n_caveat"],
        obj["agree_oracle_vss"],
        obj["agree_oracle_hasse"],
        obj["agree_vss_hasse"],
    )


def _csv_cell(value):
    if value is None:
        return ""
    if value is True:
        return "true"
    if value is False:
        return "false"
    return value


def report_lines(records, format: str, timing: bool = False) -> list[str]:
    if format == "jsonl":
        return [record_to_json(r, timing) for r in records]
    if format != "csv":
        raise ValueError(f"unknown report format {format!r}")
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    columns = CSV_COLUMNS + (("elapsed",) if timing else ())
    writer.writerow(columns)
    for r in records:
        row = [
            1 << r.field_degree,
            r.genus,
            coeffs_str(r.coeffs),
            ",".join(r.predictors),
            "" if r.oracle is None else f"{r.oracle[0]}:{frac_str(Fraction(r.oracle[1]))}",
            "" if r.vss is None else f"{r.vss[0]}:{frac_str(Fraction(r.vss[1]))}",
            _csv_cell(r.hasse_case),
            "" if r.hasse_vertex is None else f"{r.hasse_vertex[0]}:{r.hasse_vertex[1]}",
            _csv_cell(r.large_n_caveat),
            _csv_cell(r.agree_oracle_vss),
            _csv_cell(r.agree_oracle_hasse),
            _csv_cell(r.agree_vss_hasse),
        ]
        if timing:
            row.append(r.elapsed)
        writer.writerow(row)
    return buf.getvalue().splitlines()


def write_report(records, format: str, path: str, timing: bool = False) -> None:
    lines = report_lines(records, format, timing)
    with open(path, "w") as fh:
        for line in lines:
            fh.write(line + "\n")
