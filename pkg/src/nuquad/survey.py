"""Discriminant-range surveys: enumeration, parallel driving, aggregation.

The radicand range is split into fixed-size chunks of |d| values; workers
map the kernel over disjoint chunks and the partial counters are merged
by componentwise addition, so the result is independent of the worker
count and the chunk schedule.  CSV rows come back in increasing |d|
order, making reruns byte-identical.
"""

from __future__ import annotations

import json
import multiprocessing
import os
from dataclasses import dataclass, field
from pathlib import Path

from . import density, kernel

CSV_HEADER = ("d,disc,n,case_a,symmetric,rank_gram,rank_redei,four_rank,"
              "nu_lower,nu_upper,nu_exact,nu_is_exact,max_uniform_dim,"
              "conjecture2_decided,cs_pair")

DEFAULT_CHUNK = 1 << 16
FM_BRACKET_MAX_I = 8


class IoError(OSError):
    """Survey output could not be written."""


@dataclass
class SurveyAggregate:
    x_bound: int
    by_radicand: bool = False
    total: int = 0
    case_a: int = 0
    nu_inexact: int = 0
    violations: int = 0
    by_n: dict = field(default_factory=dict)
    by_n_r: dict = field(default_factory=dict)
    by_n_mud: dict = field(default_factory=dict)
    fm_n: dict = field(default_factory=dict)
    fm_n_d: dict = field(default_factory=dict)
    fm_bracket: dict = field(default_factory=dict)

    def absorb(self, counts: dict) -> None:
        self.total += counts["total"]
        self.case_a += counts["case_a"]
        self.nu_inexact += counts["nu_inexact"]
        self.violations += counts["violations"]
        for key, c in counts["by_n"].items():
            self.by_n[key] = self.by_n.get(key, 0) + c
        for key, c in counts["by_n_r"].items():
            self.by_n_r[key] = self.by_n_r.get(key, 0) + c
        for key, c in counts["by_n_mud"].items():
            self.by_n_mud[key] = self.by_n_mud.get(key, 0) + c

    def finalize(self) -> None:
        """Derive the threshold counters from the (n, max_dim) histogram."""
        self.fm_n = {}
        self.fm_n_d = {}
        self.fm_bracket = {i: 0 for i in range(FM_BRACKET_MAX_I + 1)}
        for n in sorted(self.by_n):
            self.fm_n_d[n] = {
                d: sum(c for (nn, mud), c in self.by_n_mud.items()
                       if nn == n and mud <= d)
                for d in range(max(n, 2) + 1)}
            self.fm_n[n] = self.fm_n_d[n][2]
        for (n, mud), c in self.by_n_mud.items():
            for i in range(FM_BRACKET_MAX_I + 1):
                # excluded above i + n/2, decided in halves: 2*mud <= 2i + n
                if 2 * mud <= 2 * i + n:
                    self.fm_bracket[i] += c


def squarefree_radicands(x: int, by_radicand: bool = False):
    """Yield every squarefree d < 0 with |disc| <= x (or |d| <= x when
    keyed by radicand), in increasing |d| order."""
    if x < 3:
        raise ValueError("bound must be at least 3")
    from ._pykernel import primes_upto
    from math import isqrt

    limit = x
    primes = primes_upto(isqrt(limit))
    for lo in range(1, limit + 1, DEFAULT_CHUNK):
        hi = min(lo + DEFAULT_CHUNK, limit + 1)
        sqfree = bytearray([1]) * (hi - lo)
        for p in primes:
            p2 = p * p
            for mult in range(((lo + p2 - 1) // p2) * p2, hi, p2):
                sqfree[mult - lo] = 0
        for idx in range(hi - lo):
            m = lo + idx
            if not sqfree[idx]:
                continue
            if by_radicand or m % 4 == 3:
                if m <= x:
                    yield -m
            elif 4 * m <= x:
                yield -m


def _chunks(x: int, chunk: int) -> list[tuple[int, int]]:
    return [(lo, min(lo + chunk, x + 1)) for lo in range(1, x + 1, chunk)]


def _work(args):
    lo, hi, x, by_radicand, want_rows, case_a_only, n_filter = args
    return kernel.survey_range(lo, hi, x, by_radicand, want_rows,
                               case_a_only, n_filter)


def run_survey(x: int, *, n_filter: int | None = None,
               case_a_only: bool = False, by_radicand: bool = False,
               jobs: int | None = None, chunk: int = DEFAULT_CHUNK,
               want_rows: bool = False):
    """Survey all fields with |disc| <= x; returns SurveyAggregate, or
    (SurveyAggregate, rows) when want_rows is set."""
    if x < 3:
        raise ValueError("bound must be at least 3")
    if jobs is None:
        jobs = os.cpu_count() or 1
    tasks = [(lo, hi, x, by_radicand, want_rows, case_a_only,
              -1 if n_filter is None else n_filter)
             for lo, hi in _chunks(x, chunk)]
    agg = SurveyAggregate(x_bound=x, by_radicand=by_radicand)
    rows: list[str] = []
    if jobs <= 1 or len(tasks) <= 1:
        results = map(_work, tasks)
        for counts, chunk_rows in results:
            agg.absorb(counts)
            if want_rows:
                rows.extend(chunk_rows)
    else:
        with multiprocessing.Pool(processes=min(jobs, len(tasks))) as pool:
            for counts, chunk_rows in pool.imap(_work, tasks, chunksize=1):
                agg.absorb(counts)
                if want_rows:
                    rows.extend(chunk_rows)
    agg.finalize()
    if want_rows:
        return agg, rows
    return agg


def _comparisons(agg: SurveyAggregate) -> dict:
    """Empirical proportions next to the reported fixtures and the
    limit-density bounds."""
    fm_nd = []
    for (n, d), fixture in sorted(density.PAPER_FM_ND.items()):
        bucket = agg.by_n.get(n, 0)
        if bucket == 0:
            continue
        fm_nd.append({
            "n": n, "d": d,
            "empirical": agg.fm_n_d[n].get(d, bucket) / bucket,
            "fixture": fixture,
            "fixture_source": "reported",
        })
    brackets = []
    if agg.total:
        for i in range(1, 4):
            brackets.append({
                "i": i,
                "empirical": agg.fm_bracket[i] / agg.total,
                "limit_bound": density.fm_bracket_bound(i),
            })
    return {"fm_n_d": fm_nd, "fm_bracket": brackets}


def aggregate_json(agg: SurveyAggregate) -> str:
    doc = {
        "x_bound": agg.x_bound,
        "keyed_by": "radicand" if agg.by_radicand else "discriminant",
        "total": agg.total,
        "case_a": agg.case_a,
        "by_n": {str(n): agg.by_n[n] for n in sorted(agg.by_n)},
        "by_n_r": {f"{n},{r}": agg.by_n_r[(n, r)]
                   for n, r in sorted(agg.by_n_r)},
        "fm_n": {str(n): agg.fm_n[n] for n in sorted(agg.fm_n)},
        "fm_n_d": {str(n): {str(d): c for d, c in sorted(per.items())}
                   for n, per in sorted(agg.fm_n_d.items())},
        "fm_bracket": {str(i): agg.fm_bracket[i]
                       for i in sorted(agg.fm_bracket)},
        "nu_inexact": agg.nu_inexact,
        "invariant_violations": agg.violations,
        "comparisons": _comparisons(agg),
    }
    return json.dumps(doc, indent=2) + "\n"


def emit(agg: SurveyAggregate, rows: list[str], out_dir) -> tuple[Path, Path]:
    """Write the per-field CSV and the aggregate JSON; deterministic."""
    out = Path(out_dir)
    try:
        out.mkdir(parents=True, exist_ok=True)
        csv_path = out / "survey_fields.csv"
        json_path = out / "survey_aggregate.json"
        with open(csv_path, "w") as fh:
            fh.write(CSV_HEADER + "\n")
            for row in rows:
                fh.write(row + "\n")
        with open(json_path, "w") as fh:
            fh.write(aggregate_json(agg))
    except OSError as exc:
        raise IoError(str(exc)) from exc
    return csv_path, json_path
