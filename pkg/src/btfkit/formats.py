"""FRAME and FUSION text formats.

FRAME: ``FRAME <m> <n> <REAL|COMPLEX>`` then m lines of n ``re:im`` entries.
FUSION: ``FUSION <n> <l> <m>`` then n blocks of m lines of m entries.
Entries carry 17 significant digits so files round-trip exactly.
"""

import numpy as np

from .frames import Frame
from .fusion import FusionFrame, Projection
from .numerics import DEFAULT_TOL


class FormatError(ValueError):
    pass


def _fmt(x):
    x = float(x) + 0.0  # no negative zero
    return format(x, ".17g")


def _entry(z):
    return f"{_fmt(z.real)}:{_fmt(z.imag)}"


def _parse_entry(tok):
    try:
        re_, im = tok.split(":")
        return complex(float(re_), float(im))
    except ValueError:
        raise FormatError(f"bad entry {tok!r}") from None


def _rows(M):
    return [" ".join(_entry(z) for z in row) for row in M]


def dump_frame(F):
    tag = "REAL" if F.field_tag == "real" else "COMPLEX"
    return "\n".join([f"FRAME {F.m} {F.n} {tag}"] + _rows(F.synthesis)) + "\n"


def _read_matrix(lines, rows, cols, start):
    if len(lines) < start + rows:
        raise FormatError(f"expected {rows} rows, file is truncated")
    out = []
    for i in range(start, start + rows):
        toks = lines[i].split()
        if len(toks) != cols:
            raise FormatError(f"line {i + 1}: expected {cols} entries, found {len(toks)}")
        out.append([_parse_entry(t) for t in toks])
    return np.array(out, dtype=complex)


def _lines(text):
    return [ln for ln in text.splitlines() if ln.strip()]


def _header(lines, word, count):
    if not lines:
        raise FormatError("empty file")
    head = lines[0].split()
    if len(head) != count + 1 or head[0] != word:
        raise FormatError(f"bad {word} header {lines[0]!r}")
    return head[1:]


def load_frame(text, tol=DEFAULT_TOL):
    lines = _lines(text)
    m, n, tag = _header(lines, "FRAME", 3)
    try:
        m, n = int(m), int(n)
    except ValueError:
        raise FormatError(f"bad FRAME header {lines[0]!r}") from None
    if tag not in ("REAL", "COMPLEX"):
        raise FormatError(f"unknown field tag {tag!r}")
    M = _read_matrix(lines, m, n, 1)
    if len(lines) != m + 1:
        raise FormatError("trailing content after frame rows")
    try:
        return Frame(M, tag.lower(), tol)
    except ValueError as exc:
        raise FormatError(str(exc)) from None


def dump_fusion(FF):
    out = [f"FUSION {FF.n} {FF.l} {FF.m}"]
    for P in FF.projections:
        out += _rows(P.matrix)
    return "\n".join(out) + "\n"


def load_fusion_matrices(text):
    """Parse a FUSION file into (n, l, m, list of m x m arrays) without validation."""
    lines = _lines(text)
    n, l, m = _header(lines, "FUSION", 3)
    try:
        n, l, m = int(n), int(l), int(m)
    except ValueError:
        raise FormatError(f"bad FUSION header {lines[0]!r}") from None
    mats = [_read_matrix(lines, m, m, 1 + i * m) for i in range(n)]
    if len(lines) != 1 + n * m:
        raise FormatError("trailing content after fusion blocks")
    return n, l, m, mats


def load_fusion(text, tol=DEFAULT_TOL):
    n, l, m, mats = load_fusion_matrices(text)
    Ps = tuple(Projection.of(M, tol) for M in mats)
    FF = FusionFrame(Ps, tol)
    if FF.l != l:
        raise ValueError(f"header rank {l} disagrees with projection rank {FF.l}")
    return FF
