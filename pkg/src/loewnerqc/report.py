"""Flat key-value report documents.

Every pipeline artifact is serialized as ``key = value`` lines with a fixed
field order and round-trip float formatting, so reruns of the same
configuration produce byte-identical files (golden-file friendly).
"""

from __future__ import annotations

import numpy as np

__all__ = ["format_value", "render_document", "write_document"]


def _fmt_float(x: float) -> str:
    return repr(float(x))


def format_value(v) -> str:
    if v is None:
        return "none"
    if isinstance(v, bool) or isinstance(v, np.bool_):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return _fmt_float(v)
    if isinstance(v, (complex, np.complexfloating)):
        v = complex(v)
        sign = "+" if v.imag >= 0 or np.isnan(v.imag) else "-"
        return f"{_fmt_float(v.real)}{sign}{_fmt_float(abs(v.imag))}j"
    if isinstance(v, (tuple, list)):
        return ", ".join(format_value(x) for x in v)
    return str(v)


def render_document(fields) -> str:
    lines = [f"{key} = {format_value(value)}" for key, value in fields]
    return "\n".join(lines) + "\n"


def write_document(path, fields) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(render_document(fields))
