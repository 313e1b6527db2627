"""CSV, SVG and JSON writers. All outputs are byte-deterministic."""
from __future__ import annotations

import json
from pathlib import Path
from typing import Mapping

import numpy as np

CSV_COLUMNS = ("t", "f_re", "f_im", "g_re", "g_im", "concurrence")

# line styles per bath family: blue solid, red dotted, yellow dashed
STYLES = {
    "mixed": ("#1f4fd8", None),
    "pure": ("#d62728", "2,3"),
    "ghz_pairs": ("#e6b400", "8,4"),
}


def _num(x) -> str:
    return format(float(x), ".17g")


def _rows(result):
    coeffs = result.coefficients
    t = np.asarray(coeffs.times, dtype=float)
    f = np.asarray(coeffs.f, dtype=complex)
    g = np.zeros_like(f) if coeffs.g is None else np.asarray(coeffs.g, dtype=complex)
    c = np.asarray(result.concurrence.c, dtype=float)
    for i in range(t.size):
        yield (t[i], f[i].real, f[i].imag, g[i].real, g[i].imag, c[i])


def _write(path: Path, text: str) -> Path:
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc.strerror or exc}") from exc
    return path


def write_csv(result, path) -> Path:
    """Columns t, f_re, f_im, g_re, g_im, concurrence (g zero for local baths)."""
    lines = [",".join(CSV_COLUMNS)]
    lines += [",".join(_num(v) for v in row) for row in _rows(result)]
    return _write(Path(path), "\n".join(lines) + "\n")


def write_figure_csv(results: Mapping[str, object], path) -> Path:
    """Long-format CSV: a leading ``family`` column, then the scenario columns."""
    lines = [",".join(("family",) + CSV_COLUMNS)]
    for family, result in results.items():
        lines += [",".join((family,) + tuple(_num(v) for v in row)) for row in _rows(result)]
    return _write(Path(path), "\n".join(lines) + "\n")


def write_svg(curves: Mapping[str, tuple], path, title: str = "", *,
              width: int = 640, height: int = 400, ylabel: str = "concurrence") -> Path:
    """Static line plot, one polyline per curve, y axis fixed to [0, 1]."""
    left, right, top, bottom = 60, 20, 40, 50
    pw, ph = width - left - right, height - top - bottom
    t_max = max(float(np.max(t)) for t, _ in curves.values()) or 1.0

    def xy(t, y):
        return left + pw * t / t_max, top + ph * (1.0 - y)

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f"<title>{_escape(title)}</title>",
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>',
        f'<rect x="{left}" y="{top}" width="{pw}" height="{ph}" fill="none" stroke="black"/>',
    ]
    for k in range(6):
        y = k / 5
        _, py = xy(0, y)
        out.append(f'<text x="{left - 8}" y="{py + 4:.2f}" font-size="11" '
                   f'text-anchor="end">{y:.1f}</text>')
    for k in range(5):
        tv = t_max * k / 4
        px, _ = xy(tv, 0)
        out.append(f'<text x="{px:.2f}" y="{top + ph + 16}" font-size="11" '
                   f'text-anchor="middle">{tv:g}</text>')
    out.append(f'<text x="{left + pw / 2:.1f}" y="{height - 12}" font-size="12" '
               f'text-anchor="middle">t</text>')
    out.append(f'<text x="16" y="{top + ph / 2:.1f}" font-size="12" text-anchor="middle" '
               f'transform="rotate(-90 16 {top + ph / 2:.1f})">{_escape(ylabel)}</text>')
    out.append(f'<text x="{left}" y="{top - 14}" font-size="13">{_escape(title)}</text>')
    for i, (label, (t, y)) in enumerate(curves.items()):
        color, dash = STYLES.get(label, ("#444444", None))
        pts = " ".join(f"{px:.3f},{py:.3f}" for px, py in
                       (xy(float(a), float(b)) for a, b in zip(t, y)))
        dash_attr = f' stroke-dasharray="{dash}"' if dash else ""
        out.append(f'<polyline fill="none" stroke="{color}" stroke-width="1.5"{dash_attr} '
                   f'points="{pts}"><title>{_escape(label)}</title></polyline>')
        lx, ly = left + pw - 120, top + 16 + 16 * i
        out.append(f'<line x1="{lx}" y1="{ly}" x2="{lx + 24}" y2="{ly}" stroke="{color}" '
                   f'stroke-width="1.5"{dash_attr}/>')
        out.append(f'<text x="{lx + 30}" y="{ly + 4}" font-size="11">{_escape(label)}</text>')
    out.append("</svg>")
    return _write(Path(path), "\n".join(out) + "\n")


def _escape(s: str) -> str:
    return s.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")


def write_metadata(meta, path) -> Path:
    return _write(Path(path), json.dumps(meta, indent=2, sort_keys=True) + "\n")


def emit_outputs(series, formats=("csv", "svg"), path="out/scenario", *, title: str = ""):
    """Write a scenario result, or a {family: result} mapping, to ``path`` + suffix.

    Returns the list of written paths.
    """
    stem = Path(path)
    single = not isinstance(series, Mapping)
    results = {series.metadata.get("family", "scenario"): series} if single else dict(series)
    if not results:
        raise ValueError("no series to emit")
    written = []
    for fmt in formats:
        target = stem.with_name(stem.name + "." + fmt)
        if fmt == "csv":
            written.append(write_csv(series, target) if single
                           else write_figure_csv(results, target))
        elif fmt == "svg":
            curves = {k: (r.concurrence.times, r.concurrence.c) for k, r in results.items()}
            written.append(write_svg(curves, target, title or stem.name))
        elif fmt == "json":
            meta = (series.metadata if single
                    else {k: r.metadata for k, r in results.items()})
            written.append(write_metadata(meta, target))
        else:
            raise ValueError(f"unknown output format {fmt!r}")
    return written
