"""Self-describing CSV / JSON tables written by the command line.

CSV layout: one ``# {json}`` metadata line, one header line, data rows.
Floats are written with 17 significant digits so they re-parse exactly.
"""

from __future__ import annotations

import csv
import io
import json
import math

def _finite(text, original):
    try:
        value = float(text)
    except ValueError:
        raise ValueError(f"not a complex literal of the form re+imi: {original!r}") from None
    if not math.isfinite(value):
        raise ValueError(f"non-finite component in {original!r}")
    return value


def parse_complex(text: str) -> complex:
    """Parse ``re+imi`` literals such as ``0.5``, ``0.2i``, ``0.5-0.2i``."""
    token = text.strip()
    if not token.endswith("i"):
        return complex(_finite(token, text), 0.0)
    body = token[:-1]
    # split at the last sign that is not an exponent sign
    split = 0
    for k in range(len(body) - 1, 0, -1):
        if body[k] in "+-" and body[k - 1] not in "eE":
            split = k
            break
    re_text, im_text = body[:split], body[split:]
    if im_text in ("", "+", "-"):
        im_text += "1"
    re_part = _finite(re_text, text) if re_text else 0.0
    return complex(re_part, _finite(im_text, text))


def format_complex(z) -> str:
    z = complex(z)
    sign = "-" if z.imag < 0 else "+"
    return f"{format_float(z.real)}{sign}{format_float(abs(z.imag))}i"


def format_float(x) -> str:
    return format(float(x), ".17g")


def _cell(value):
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, (int,)):
        return str(value)
    if isinstance(value, float):
        return format_float(value)
    return "" if value is None else str(value)


def _jsonable(value):
    if isinstance(value, complex):
        return format_complex(value)
    if isinstance(value, dict):
        return {k: _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, float) and not math.isfinite(value):
        return format_float(value)
    return value


def write_table(stream, meta: dict, columns, rows, fmt="csv"):
    """Write ``rows`` (sequences aligned with ``columns``) to ``stream``."""
    if fmt == "json":
        doc = {"meta": _jsonable(meta), "columns": list(columns),
               "rows": [[_jsonable(v) for v in row] for row in rows]}
        json.dump(doc, stream, indent=1)
        stream.write("\n")
        return
    stream.write("# " + json.dumps(_jsonable(meta), sort_keys=True) + "\n")
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_cell(v) for v in row])


def _parse_cell(text):
    if text == "":
        return None
    if text in ("true", "false"):
        return text == "true"
    try:
        return int(text)
    except ValueError:
        pass
    try:
        return float(text)
    except ValueError:
        return text


def read_table(source):
    """Parse a table written by :func:`write_table`.

    Returns ``(meta, columns, rows)`` where each row is a dict.
    """
    text = source if isinstance(source, str) else source.read()
    stripped = text.lstrip()
    if stripped.startswith("{"):
        doc = json.loads(text)
        cols = doc["columns"]
        return doc["meta"], cols, [dict(zip(cols, r)) for r in doc["rows"]]
    first, _, body = text.partition("\n")
    if not first.startswith("# "):
        raise ValueError("missing '#' metadata line")
    meta = json.loads(first[2:])
    reader = csv.reader(io.StringIO(body))
    cols = next(reader)
    rows = [dict(zip(cols, (_parse_cell(c) for c in r))) for r in reader if r]
    return meta, cols, rows
