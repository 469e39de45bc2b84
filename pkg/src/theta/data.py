"""Bundled reference tables.

The generator list, the linear and quadratic equation tables, the measure
table and the support ranges.  These are the published values, stored
verbatim as JSON so the pipeline can be diffed against them.  Set
THETA_DATA_DIR to load a different copy.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from pathlib import Path

from .marked import MarkedStructure, decode_marked, parse_marked
from .poly import Poly, parse_equation

GROUPS = ("I", "II", "III", "IV")


class DataError(ValueError):
    """A bundled data file is missing or internally inconsistent."""


@dataclass(frozen=True)
class ReferenceEquation:
    group: str
    text: str
    datum: str
    datum_as_printed: str | None = None

    @property
    def poly(self) -> Poly:
        return parse_equation(self.text)

    def datum_points(self):
        """(X, a, b): a is the solid mark, b the hollow one (linear table) or the second solid one (quadratic table)."""
        X, solid, hollow = decode_marked(self.datum)
        if hollow:
            return X, solid[0], hollow[0]
        return X, solid[0], solid[1]


@dataclass(frozen=True)
class PaperData:
    figure1: tuple[MarkedStructure, ...]
    appendix_a: tuple[ReferenceEquation, ...]
    appendix_b: tuple[ReferenceEquation, ...]
    appendix_c: tuple[tuple[int, tuple[int, ...], str], ...]
    columns: tuple[int, ...]
    group1_indices: tuple[int, ...]
    group2_chains: tuple[tuple[tuple[int, int], ...], ...]
    vars21: tuple[int, ...]
    vars10: tuple[int, ...]
    support_table: dict
    source: str

    def group(self, name: str) -> list[ReferenceEquation]:
        return [e for e in self.appendix_a if e.group == name]

    def measure_row(self, mid: int) -> tuple[int, ...]:
        return self.appendix_c[mid - 1][1]

    def check(self) -> None:
        """Raise DataError on any internal inconsistency."""
        n = len(self.figure1)
        if n != 87 or len(set(self.figure1)) != n:
            raise DataError(f"the generator list must hold 87 distinct marked permutations, found {n}")
        variables = set()
        for e in self.appendix_a + self.appendix_b:
            variables |= e.poly.variables
            X, a, b = e.datum_points()
            if a == b:
                raise DataError(f"datum {e.datum} marks one point twice")
        bad = sorted(v for v in variables if not 1 <= v <= n)
        if bad:
            raise DataError(f"variables outside x1..x{n}: {bad}")
        counts = {g: len(self.group(g)) for g in GROUPS}
        if counts != {"I": 48, "II": 19, "III": 10, "IV": 2}:
            raise DataError(f"unexpected linear-table group sizes {counts}")
        g1 = {next(iter(e.poly.variables)) for e in self.group("I")}
        if g1 != set(self.group1_indices):
            raise DataError("group I table disagrees with the listed vanishing indices")
        if len(self.appendix_b) != 90:
            raise DataError(f"quadratic table must have 90 equations, found {len(self.appendix_b)}")
        if len(self.appendix_c) != 37 or [r[0] for r in self.appendix_c] != list(range(1, 38)):
            raise DataError("measure table must have rows 1..37")
        for mid, row, _ in self.appendix_c:
            if len(row) != len(self.columns) or any(v not in (-1, 0, 1) for v in row):
                raise DataError(f"measure table row {mid} is malformed")
        for label, (lo, hi) in self.support_table.items():
            for mid in range(lo, hi + 1):
                if self.appendix_c[mid - 1][2] != label:
                    raise DataError(f"support of measure {mid} disagrees between tables")
        for v in self.vars10:
            if v not in self.vars21:
                raise DataError("vars10 must be a subset of vars21")


def data_dir() -> Path:
    env = os.environ.get("THETA_DATA_DIR")
    if env:
        return Path(env)
    return Path(str(resources.files("theta") / "data"))


def _read(path: Path, name: str):
    f = path / name
    try:
        return json.loads(f.read_text(encoding="utf-8"))
    except FileNotFoundError:
        raise DataError(f"missing data file {f}") from None
    except json.JSONDecodeError as exc:
        raise DataError(f"{f}: {exc}") from None


def load(path: str | Path | None = None, check: bool = True) -> PaperData:
    path = Path(path) if path is not None else data_dir()
    fig = _read(path, "figure1.json")
    gens = sorted(fig["generators"], key=lambda g: g["index"])
    if [g["index"] for g in gens] != list(range(1, len(gens) + 1)):
        raise DataError("generator indices must run 1..N without gaps")
    figure1 = tuple(parse_marked(g["marked"], fig.get("order_count", 2)) for g in gens)

    a = _read(path, "appendix_a.json")
    appendix_a = tuple(
        ReferenceEquation(g, e["equation"], e["datum"], e.get("datum_as_printed"))
        for g in GROUPS
        for e in a["groups"][g]
    )
    b = _read(path, "appendix_b.json")
    appendix_b = tuple(ReferenceEquation("B", e["equation"], e["datum"]) for e in b["equations"])
    c = _read(path, "appendix_c.json")
    appendix_c = tuple((r["id"], tuple(r["values"]), r["support"]) for r in c["rows"])
    sup = _read(path, "support_table.json")

    pd = PaperData(
        figure1=figure1,
        appendix_a=appendix_a,
        appendix_b=appendix_b,
        appendix_c=appendix_c,
        columns=tuple(c["columns"]),
        group1_indices=tuple(a["group1_indices"]),
        group2_chains=tuple(tuple((s, v) for s, v in chain) for chain in a["group2_chains"]),
        vars21=tuple(a["vars21"]),
        vars10=tuple(a["vars10"]),
        support_table={k: tuple(v) for k, v in sup.items()},
        source=str(path),
    )
    if check:
        pd.check()
    return pd


@lru_cache(maxsize=None)
def bundled() -> PaperData:
    return load()
