"""Text, JSON and CSV renderings of reports."""

from __future__ import annotations

import csv
import io
import json


def betti_grid(table: dict) -> list:
    """Lines of a Betti grid: rows ``j - i``, columns ``i``, plus totals."""
    entries = {(i, j): b for i, j, b in table["entries"]}
    totals = table["totals"]
    n = len(totals)
    offs = sorted({j - i for i, j in entries})
    cells = {o: [entries.get((i, i + o), 0) for i in range(n)] for o in offs}
    width = [max([len(str(totals[i]))] + [len(str(cells[o][i])) for o in offs]) for i in range(n)]
    label = max([len("total")] + [len(str(o)) for o in offs])

    def line(name, vals, zero="."):
        body = " ".join((str(v) if v else zero).rjust(width[i]) for i, v in enumerate(vals))
        return f"{name}:".rjust(label + 1) + " " + body

    out = [" " * (label + 2) + " ".join(str(i).rjust(width[i]) for i in range(n))]
    out += [line(str(o), cells[o]) for o in offs]
    out.append(line("total", totals, zero="0"))
    return out


def _flatten(prefix: str, v, out: list):
    if isinstance(v, dict):
        for k in v:
            _flatten(f"{prefix}.{k}" if prefix else str(k), v[k], out)
    elif isinstance(v, list) and v and any(isinstance(x, (dict, list)) for x in v):
        for i, x in enumerate(v):
            _flatten(f"{prefix}[{i}]", x, out)
    else:
        out.append((prefix, json.dumps(v) if isinstance(v, (list, type(None), bool)) else v))


def _text_body(rep) -> list:
    r = rep.result
    if rep.kind == "betti":
        return betti_grid(r)
    if rep.kind == "resolution":
        lines = betti_grid(r["betti"])
        pd = r["projective_dimension"]
        lines.append(f"projective dimension: {pd if pd is not None else 'not reached'}")
        return lines
    if rep.kind == "depth":
        return [f"depth = {r['depth']} (Ext^i vanishes for i in {r['vanishing']})"]
    if rep.kind in ("tor", "ext"):
        name = "Tor" if rep.kind == "tor" else "Ext"
        return [f"{name}_{m['index']}: length {m['length']}" + (" (zero)" if m["zero"] else "") for m in r["modules"]]
    if rep.kind == "audit":
        return [r["verdict"]] + [f"  {k}: {v}" for k, v in r["notes"].items()]
    if rep.kind == "eta":
        return [f"eta = {r['value']} (exact: {str(r['exact']).lower()}, period: {r['period']})"]
    out = []
    _flatten("", r, out)
    return [f"{k} = {v}" for k, v in out] if out else ["(no result)"]


def render_text(reports) -> str:
    lines = []
    for rep in reports:
        lines.append(f"> {rep.command}")
        lines += _text_body(rep)
        if rep.wall_time is not None:
            lines.append(f"[{rep.wall_time:.3f}s, cache hits: {rep.cache_hits}]")
        lines.append("")
    return "\n".join(lines)


def render_json(reports) -> str:
    return json.dumps({"reports": [r.to_json() for r in reports]}, indent=2, sort_keys=True) + "\n"


def render_csv(reports) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    betti = [r for r in reports if r.kind in ("betti", "resolution")]
    if betti and len(betti) == len(reports):
        w.writerow(["i", "j", "beta"])
        for r in betti:
            table = r.result if r.kind == "betti" else r.result["betti"]
            for i, j, b in table["entries"]:
                w.writerow([i, j, b])
        return buf.getvalue()
    w.writerow(["command", "key", "value"])
    for r in reports:
        if r.kind in ("betti", "resolution"):
            table = r.result if r.kind == "betti" else r.result["betti"]
            for i, j, b in table["entries"]:
                w.writerow([r.command, f"beta[{i},{j}]", b])
            continue
        rows: list = []
        _flatten("", r.result, rows)
        for k, v in rows:
            w.writerow([r.command, k, v])
    return buf.getvalue()


def render(reports, fmt: str = "text") -> bytes:
    if fmt == "text":
        s = render_text(reports)
    elif fmt == "json":
        s = render_json(reports)
    elif fmt == "csv":
        s = render_csv(reports)
    else:
        raise ValueError(f"unknown format {fmt!r}")
    return s.encode("utf-8")
