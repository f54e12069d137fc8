"""Report rows, rendering and emission (json, csv, markdown).

Rows hold only JSON-ready data.  Exact values carry their rational
coordinates in R (lossless) next to a 15-significant-digit decimal; the
timing block is kept apart so reports can be compared byte for byte.
"""

from __future__ import annotations

import csv
import io
import json
import platform
from fractions import Fraction

import mpmath

from ..exact import CycInt, ExactNum, radical_field

DIGITS = 15
COLUMNS = ("case", "theorem", "params", "mode", "verdict", "brute", "formula",
           "difference", "margin", "work")


def _dec(x) -> str:
    """15 significant digits; the imaginary part only when it is not negligible."""
    if isinstance(x, (int, Fraction)):
        x = mpmath.mpf(x.numerator) / x.denominator if isinstance(x, Fraction) else mpmath.mpf(x)
    with mpmath.workdps(40):
        z = mpmath.mpc(x)
        re, im = z.real, z.imag
        if im == 0 or abs(im) <= mpmath.mpf(10) ** -30 * max(abs(re), 1):
            return mpmath.nstr(re, DIGITS)
        sign = "+" if im >= 0 else "-"
        return f"{mpmath.nstr(re, DIGITS)}{sign}{mpmath.nstr(abs(im), DIGITS)}j"


def _exact_decimal(v: ExactNum) -> str:
    z = v.to_complex(160)
    if v == v.conj():
        return _dec(z.real)
    return _dec(z)


def render(v):
    """JSON-ready form of a value produced by a verification run."""
    if v is None or isinstance(v, (bool, str)):
        return v
    if isinstance(v, int):
        return v
    if isinstance(v, Fraction):
        return {"fraction": str(v), "decimal": _dec(v)}
    if isinstance(v, ExactNum):
        return {"exact": v.to_json(), "p": v.R.p, "q": v.R.q, "decimal": _exact_decimal(v)}
    if isinstance(v, CycInt):
        return {"cyclotomic": list(v.c), "p": v.p, "decimal": _dec(v.to_complex(160))}
    if isinstance(v, (mpmath.mpf, mpmath.mpc, float, complex)):
        return {"decimal": _dec(v)}
    if isinstance(v, dict):
        return {str(k): render(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [render(x) for x in v]
    return str(v)


def parse_exact(obj) -> ExactNum:
    """Rebuild an ExactNum from its rendered form."""
    R = radical_field(obj["p"], obj["q"])
    rows = [[Fraction(s) for s in row] for row in obj["exact"]]
    acc = R.zero()
    for i, row in enumerate(rows):
        for j, c in enumerate(row):
            if c:
                acc = acc + R.t_pow(i) * R.zeta(j) * c
    return acc


def environment():
    from .. import __version__
    from ..kernels import BACKEND
    return {"package": "asmoments", "version": __version__, "python": platform.python_version(),
            "kernels": BACKEND, "mpmath": mpmath.__version__}


def make_report(rows, profile=None, timing=None):
    counts = {}
    for r in rows:
        counts[r["verdict"]] = counts.get(r["verdict"], 0) + 1
    return {
        "environment": environment(),
        "profile": profile,
        "summary": dict(sorted(counts.items())),
        "rows": list(rows),
        "timing": timing or {},
    }


def failed(report) -> bool:
    return any(r["verdict"] == "fail" for r in report["rows"])


def deterministic_part(report):
    """The report without its timing block."""
    return {k: v for k, v in report.items() if k != "timing"}


def to_json(report, include_timing: bool = True) -> str:
    data = report if include_timing else deterministic_part(report)
    return json.dumps(data, indent=1, sort_keys=True) + "\n"


def _cell(v):
    if v is None:
        return ""
    if isinstance(v, dict):
        if "decimal" in v:
            return v["decimal"]
        return json.dumps(v, sort_keys=True, separators=(",", ":"))
    if isinstance(v, list):
        return json.dumps(v, sort_keys=True, separators=(",", ":"))
    return str(v)


def _formula_cell(r):
    fs = r.get("formulas") or {}
    return "; ".join(f"{k}={_cell(v)}" for k, v in sorted(fs.items()))


def _flat(r):
    return [r["case"], r["theorem"], _cell(r["params"]), r["mode"], r["verdict"],
            _cell(r.get("brute")), _formula_cell(r), _cell(r.get("difference")),
            _cell(r.get("margin")), _cell(r.get("work"))]


def to_csv(report) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(COLUMNS)
    for r in report["rows"]:
        w.writerow(_flat(r))
    return buf.getvalue()


def to_markdown(report, include_timing: bool = True) -> str:
    def esc(s):
        return s.replace("|", "\\|").replace("\n", " ")

    lines = ["| " + " | ".join(COLUMNS) + " |", "|" + "---|" * len(COLUMNS)]
    for r in report["rows"]:
        lines.append("| " + " | ".join(esc(c) for c in _flat(r)) + " |")
    s = "\n".join(lines) + "\n"
    if include_timing and report.get("timing"):
        t = report["timing"]
        s += f"\nwall time {t.get('total', '')} s, jobs {t.get('jobs', '')}\n"
    return s


FORMATS = {"json": to_json, "csv": to_csv, "markdown": to_markdown}


def report_emit(report, fmt: str = "json", path=None, include_timing: bool = True) -> str:
    """Render ``report`` and write it to ``path`` (when given); returns the text."""
    if fmt not in FORMATS:
        raise ValueError(f"unknown format {fmt!r}")
    if fmt == "csv":
        text = to_csv(report)
    else:
        text = FORMATS[fmt](report, include_timing)
    if path is not None:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    return text
