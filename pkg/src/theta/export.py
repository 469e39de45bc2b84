"""Deterministic JSON and CSV renderings of every computed table."""

from __future__ import annotations

import csv
import io
import json
from pathlib import Path

from .poly import Poly

WHAT = ("minimal", "equations", "substitution", "solutions", "measures")
GLYPHS = {1: "+", 0: "·", -1: "-"}


class ExportError(OSError):
    """Writing an export failed; the message names the path."""


def _json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False, ensure_ascii=False) + "\n"


def _csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _form(p: Poly, basis) -> list:
    return [p.constant()] + [p.coefficient((v,)) for v in basis]


def render(what: str, fmt: str = "json", order_count: int = 2, kind: str = "linear",
           paper_style: bool = False) -> str:
    """Text of one export; identical for identical inputs."""
    from .measures import bundled_measures, computed_measures
    from .pipeline import pipeline

    if what not in WHAT:
        raise ValueError(f"unknown export {what!r}; choose from {', '.join(WHAT)}")
    if fmt not in ("json", "csv"):
        raise ValueError(f"unknown format {fmt!r}")
    p = pipeline(order_count)

    if what == "minimal":
        recs = [{"index": i, "marked": str(m), **m.to_json()} for i, m in enumerate(p.table.structures, 1)]
        if fmt == "json":
            return _json(recs)
        return _csv(["index", "marked", "word", "mark"], [[r["index"], r["marked"], r["word"], r["mark"]] for r in recs])

    if what == "equations":
        rels = {"linear": p.linear, "quadratic": p.quadratic}.get(kind)
        if rels is None:
            if kind != "reduced":
                raise ValueError(f"unknown equation kind {kind!r}")
            polys = sorted(p.reduced_quadratics, key=lambda q: q.key())
            if fmt == "json":
                return _json([f"{q} = 0" for q in polys])
            return _csv(["equation"], [[f"{q} = 0"] for q in polys])
        if fmt == "json":
            return _json([r.to_json() for r in rels])
        return _csv(["lhs", "rhs", "constant", "datum"],
                    [[" ".join(map(str, d["lhs"])), " ".join(map(str, d["rhs"])), d["constant"], d["datum"]]
                     for d in (r.to_json() for r in rels)])

    if what == "substitution":
        sub = p.substitution
        if fmt == "json":
            return _json(sub.to_json())
        return _csv(["generator", "constant"] + [f"x{v}" for v in sub.basis],
                    [[f"x{i}"] + [str(c) for c in _form(q, sub.basis)] for i, q in sorted(sub.rows.items())])

    if what == "solutions":
        names = [f"x{v}" for v in p.basis]
        pts = p.solutions(1)
        if fmt == "json":
            return _json([dict(zip(names, pt)) for pt in pts])
        return _csv(names, [list(pt) for pt in pts])

    # measures
    ms = bundled_measures() if order_count == 2 else computed_measures(order_count)
    sups = [c.name if c else None for c in ms.supports] if order_count == 2 else [None] * len(ms)
    if fmt == "json":
        return _json([m.to_json(s) for m, s in zip(ms, sups)])
    cell = (lambda v: GLYPHS[v]) if paper_style else (lambda v: v)
    return _csv(["id"] + [f"x{v}" for v in p.basis] + ["support"],
                [[m.id] + [cell(v) for v in m.basis_values] + [s or ""] for m, s in zip(ms, sups)])


def export(what: str, fmt: str, path: str | Path, **kw) -> Path:
    """Write :func:`render` output to ``path``."""
    text = render(what, fmt, **kw)
    path = Path(path)
    try:
        path.write_text(text, encoding="utf-8")
    except OSError as exc:
        raise ExportError(f"cannot write {path}: {exc.strerror or exc}") from exc
    return path
