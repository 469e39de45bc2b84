"""Reproduction checks against the shipped reference tables.

Each check records what was expected, where that number comes from
("reference" for a shipped table, "derived" for an independent
computation), what was computed, and how long it took.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Callable

SUITES = ("enumeration", "equations", "solve", "measures")


@dataclass
class Check:
    name: str
    expected: object
    provenance: str
    computed: object
    passed: bool
    seconds: float
    detail: str = ""

    def line(self) -> str:
        extra = f" ({self.detail})" if self.detail else ""
        return f"{self.name}: {'pass' if self.passed else 'FAIL'}{extra}"

    def to_json(self) -> dict:
        return {"name": self.name, "expected": _plain(self.expected), "provenance": self.provenance,
                "computed": _plain(self.computed), "passed": self.passed,
                "seconds": round(self.seconds, 3), "detail": self.detail}


def _plain(v):
    if isinstance(v, (bool, int, str)) or v is None:
        return v
    if isinstance(v, float):
        return "inf" if v == float("inf") else v
    if isinstance(v, (list, tuple)):
        return [_plain(x) for x in v]
    return str(v)


@dataclass
class RunReport:
    suite: str
    checks: list[Check] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def add(self, name: str, expected, provenance: str, fn: Callable[[], object],
            compare: Callable[[object, object], bool] | None = None,
            detail: Callable[[object], str] | None = None) -> Check:
        t = time.perf_counter()
        try:
            computed = fn()
            ok = compare(expected, computed) if compare else computed == expected
            why = detail(computed) if detail and not ok else ""
        except Exception as exc:  # a crash is a failed check, not a crashed suite
            computed, ok, why = None, False, f"{type(exc).__name__}: {exc}"
        c = Check(name, expected, provenance, computed, bool(ok), time.perf_counter() - t, why)
        self.checks.append(c)
        return c

    def lines(self) -> list[str]:
        return [c.line() for c in self.checks]

    def to_json(self) -> dict:
        return {"suite": self.suite, "passed": self.passed, "checks": [c.to_json() for c in self.checks]}


# -- suites -----------------------------------------------------------------------

def _data():
    from .data import load

    return load(check=False)


def first_mismatch(expected, computed) -> str:
    for k, (e, c) in enumerate(zip(expected, computed), start=1):
        if e != c:
            return f"first mismatched generator x{k}: table has {e}, computed {c}"
    if len(expected) != len(computed):
        return f"lengths differ: table {len(expected)}, computed {len(computed)}"
    return ""


def enumeration_suite(report: RunReport, with_n3: bool = True) -> None:
    from .bench import count_minimal_benchmark
    from .marked import enumerate_minimal

    pd = _data()
    report.add("data files are internally consistent", True, "reference", lambda: (pd.check(), True)[1])
    mins = enumerate_minimal(2)
    report.add("minimal n=2 count = 87", 87, "reference", lambda: len(mins))
    report.add("minimal n=2 equals the generator table", list(pd.figure1), "reference", lambda: mins,
               detail=lambda c: first_mismatch(list(pd.figure1), c))
    report.add("minimal n=1 count = 4", 4, "derived", lambda: len(enumerate_minimal(1)))
    if with_n3:
        report.add("minimal n=3 count = 1,999,581", 1999581, "reference",
                   lambda: count_minimal_benchmark(3, threads=1).count)


def equations_suite(report: RunReport) -> None:
    from .equations import generate_quadratic
    from .linalg import span_equal
    from .pipeline import pipeline
    from .poly import Poly

    pd = _data()
    p = pipeline(2)
    report.add("distinct linear relations = 547", 547, "reference", lambda: len(p.linear))
    report.add("linear span equals the 79 reference relations", True, "reference",
               lambda: span_equal([r.poly for r in p.linear], [e.poly for e in pd.appendix_a]))
    report.add("distinct quadratic relations, data of size <= 8, = 1,404", 1404, "reference",
               lambda: len(p.quadratic),
               detail=lambda c: f"computed {c}; 1,404 is reached at size <= 6")
    report.add("distinct quadratic relations, data of size <= 6, = 1,404", 1404, "derived",
               lambda: len(generate_quadratic(2, p.table, max_size=6)))
    ref90 = {e.poly.canonical().key() for e in pd.appendix_b}
    report.add("reduced quadratics equal the 90 reference relations", True, "reference",
               lambda: len(ref90) == 90 and {q.key() for q in p.reduced_quadratics} == ref90,
               detail=lambda c: f"computed {len(p.reduced_quadratics)} reduced relations")
    sub = p.substitution
    report.add("every generator expressed over the 10-variable basis", True, "reference",
               lambda: sorted(sub.rows) == list(range(1, 88)) and list(sub.basis) == list(pd.vars10)
               and all(q.variables <= set(sub.basis) for q in sub.rows.values()))
    report.add("free variables after eliminating x5, x60 = 8", 8, "reference", lambda: len(sub.free))
    x = Poly.var
    report.add("x23 = 0", Poly(), "reference", lambda: sub[23])
    report.add("x65 = -x60", -x(60), "reference", lambda: sub[65])
    report.add("x6 = x14 + x15 + x60", x(14) + x(15) + x(60), "reference", lambda: sub[6])


def solve_suite(report: RunReport) -> None:
    from .groebner import GF2, QQ
    from .pipeline import pipeline
    from .solver import mod2_distinctness

    pd = _data()
    p = pipeline(2)
    rows = [tuple(r[1]) for r in pd.appendix_c]
    box1 = p.solutions(1, reference=rows)
    report.add("box-1 integer solutions = 37", 37, "reference", lambda: len(box1))
    report.add("box-1 solutions equal the measure table", rows, "reference", lambda: box1,
               detail=lambda c: first_mismatch(rows, c).replace("generator x", "row "))
    report.add("box-2 adds no solutions", rows, "derived", lambda: p.solutions(2, reference=rows))
    report.add("quotient dim ℚ = 37", 37, "reference", lambda: p.dimension(QQ))
    report.add("quotient dim 𝔽₂ = 37", 37, "reference", lambda: p.dimension(GF2))
    report.add("solutions pairwise distinct mod 2", True, "derived", lambda: mod2_distinctness(box1))
    p1 = pipeline(1)
    report.add("n=1 solutions = 4", 4, "reference", lambda: len(p1.solutions(1)))
    report.add("n=1 quotient dim ℚ = 4", 4, "reference", lambda: p1.dimension(QQ))


def measures_suite(report: RunReport, budget: int = 6, seed: int = 0) -> None:
    from .measures import AxiomReport, bundled_measures, check_amalgamation, check_chains, \
        check_isomorphisms, is_regular, sample_amalgamation, support_coherent, EXHAUSTIVE_LIMIT
    from .structures import parse

    pd = _data()
    ms = bundled_measures()
    ev = ms.evaluator
    report.add("all generator values in {-1,0,1}", True, "reference",
               lambda: all(v in (-1, 0, 1) for m in ms for v in m.generator_values))
    report.add("measure table reproduced on the 10 basis columns", [tuple(r[1]) for r in pd.appendix_c],
               "reference", lambda: [m.basis_values for m in ms])
    expected = [r[2] for r in pd.appendix_c]
    report.add("supports match the support table", expected, "reference",
               lambda: [c.name if c else None for c in ms.supports][:len(expected)],
               detail=lambda c: next((f"measure {k}: table {e}, computed {v}"
                                      for k, (e, v) in enumerate(zip(expected, c), 1) if e != v), ""))
    report.add("supports coherent on sizes <= 6", True, "derived",
               lambda: all(support_coherent(ev, ms.supports, 6)))
    report.add("every measure vanishes on 1342", True, "reference",
               lambda: not ev.structure(parse("1342")).any())
    report.add("no regular measure", False, "reference", lambda: any(is_regular(ev)))
    exhaustive = min(budget, EXHAUSTIVE_LIMIT)
    axioms = [("axiom (a) on isomorphisms of size <= 5", check_isomorphisms, 5),
              (f"axiom (b) chains into targets of size <= {exhaustive}", check_chains, exhaustive),
              (f"axiom (c) amalgamations of total size <= {exhaustive}", check_amalgamation, exhaustive)]
    if budget > EXHAUSTIVE_LIMIT:
        axioms.append((f"axiom (c) on 200 sampled spans of total size {exhaustive + 1}..{budget} (seed {seed})",
                       lambda ev, r, _: sample_amalgamation(ev, r, exhaustive + 1, budget, 200, seed), budget))
    for name, fn, size in axioms:
        def run(fn=fn, size=size):
            r = AxiomReport()
            fn(ev, r, size)
            return r

        report.add(name, [], "derived", run, compare=lambda e, r: r.ok,
                   detail=lambda r: f"{len(r.failures)} failures, first {r.failures[0]}")


def verify(suite: str = "all", with_n3: bool = True, budget: int = 6, seed: int = 0) -> RunReport:
    if suite not in SUITES + ("all",):
        raise ValueError(f"unknown suite {suite!r}")
    report = RunReport(suite)
    for name in SUITES:
        if suite not in ("all", name):
            continue
        if name == "enumeration":
            enumeration_suite(report, with_n3)
        elif name == "equations":
            equations_suite(report)
        elif name == "solve":
            solve_suite(report)
        else:
            measures_suite(report, budget, seed)
    return report
