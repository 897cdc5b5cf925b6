"""Deterministic JSON encoding of the package's values.

Exact rationals become "p/q" strings, complex numbers become [re, im]
decimal strings, and every document carries the working precision.  Keys are
sorted on output so identical inputs give byte-identical files.
"""
import dataclasses
import json
from fractions import Fraction

from mpmath import mp, mpc, mpf

from .errors import ParseError

DIGITS = 30


def _num(x, digits):
    return mp.nstr(x, digits) if x != 0 else "0"


def encode(x, digits=DIGITS):
    """Plain JSON-ready structure for package values."""
    if isinstance(x, bool) or x is None or isinstance(x, str):
        return x
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    if isinstance(x, float):
        x = mpf(x)
    if isinstance(x, mpf):
        return [_num(x, digits), "0"]
    if isinstance(x, mpc):
        return [_num(x.real, digits), _num(x.imag, digits)]
    if hasattr(x, "to_mpc") and hasattr(x, "D"):
        return {"a": encode(x.a), "b": encode(x.b), "D": x.D}
    if hasattr(x, "as_dict"):
        return encode(x.as_dict(), digits)
    if dataclasses.is_dataclass(x):
        return {f.name: encode(getattr(x, f.name), digits) for f in dataclasses.fields(x)}
    if isinstance(x, dict):
        return {str(k): encode(v, digits) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [encode(v, digits) for v in x]
    if hasattr(x, "tolist"):
        return encode(x.tolist(), digits)
    raise TypeError(f"cannot encode {type(x).__name__}")


def dumps(doc, digits=DIGITS):
    body = encode(doc, digits)
    if isinstance(body, dict):
        body = dict(body)
        body.setdefault("precision_bits", mp.prec)
    return json.dumps(body, sort_keys=True, indent=2) + "\n"


def decode_number(v):
    """Inverse of encode for scalars: int, "p/q", "decimal" or [re, im]."""
    if isinstance(v, bool):
        raise ParseError("booleans are not numbers")
    if isinstance(v, int):
        return Fraction(v)
    if isinstance(v, float):
        return mpc(v)
    if isinstance(v, str):
        try:
            return Fraction(v) if ("/" in v or v.lstrip("-").isdigit()) else mpc(mpf(v))
        except (ValueError, ZeroDivisionError) as e:
            raise ParseError(f"bad number {v!r}") from e
    if isinstance(v, (list, tuple)) and len(v) == 2 and all(isinstance(p, (str, int, float)) for p in v):
        re, im = (decode_number(p) for p in v)
        if isinstance(re, Fraction) and isinstance(im, Fraction) and im == 0:
            return re
        return mpc(_as_real(re), _as_real(im))
    raise ParseError(f"bad number {v!r}")


def _as_real(x):
    if isinstance(x, Fraction):
        return mpf(x.numerator) / x.denominator
    return x.real


def decode_matrix(rows):
    if not isinstance(rows, list) or not rows or not all(isinstance(r, list) for r in rows):
        raise ParseError("a matrix is a non-empty list of rows")
    n = len(rows[0])
    if any(len(r) != n for r in rows):
        raise ParseError("matrix rows differ in length")
    return [[decode_number(v) for v in r] for r in rows]


def load(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as e:
        raise ParseError(f"cannot read {path}: {e}") from e
    except json.JSONDecodeError as e:
        raise ParseError(f"{path} is not valid JSON: {e}") from e


def to_text(doc, indent=0):
    """Human-readable mirror of a JSON document."""
    body = encode(doc)
    lines = []
    pad = "  " * indent
    if isinstance(body, dict):
        for k in sorted(body):
            v = body[k]
            if isinstance(v, (dict, list)) and _nested(v):
                lines.append(f"{pad}{k}:")
                lines.append(to_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {_flat(v)}")
    elif isinstance(body, list):
        for v in body:
            lines.append(to_text(v, indent) if _nested(v) else f"{pad}- {_flat(v)}")
    else:
        lines.append(f"{pad}{body}")
    return "\n".join(lines)


def _pair(v):
    return isinstance(v, list) and len(v) == 2 and all(isinstance(x, str) for x in v)


def _nested(v):
    if isinstance(v, dict):
        return True
    return isinstance(v, list) and any(isinstance(x, dict) or (isinstance(x, list) and not _pair(x)) for x in v)


def _flat(v):
    if isinstance(v, list):
        if _pair(v) and v[1] != "0" and _numeric(v[0]):
            return f"{v[0]} + {v[1]}i"
        if len(v) == 2 and v[1] == "0" and isinstance(v[0], str) and _numeric(v[0]):
            return v[0]
        return "[" + ", ".join(_flat(x) for x in v) + "]"
    return str(v)


def _numeric(s):
    try:
        float(s.split("/")[0])
        return True
    except ValueError:
        return False
