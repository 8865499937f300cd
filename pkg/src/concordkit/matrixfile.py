"""Plain-text Seifert matrix files.

Format: the first nonblank, non-comment line holds the size n; the next n
such lines hold n whitespace-separated integers each.  Lines whose first
nonblank character is '#' are comments.
"""
from __future__ import annotations

from importlib import resources
from pathlib import Path

from .errors import MatrixFileError, SeifertError
from .seifert import SeifertMatrix, validate_seifert

__all__ = ["parse_matrix_text", "parse_matrix_file", "format_matrix", "bundled_names", "load_matrix"]


def parse_matrix_text(text: str, label: str | None = None) -> SeifertMatrix:
    lines = [
        (num, raw.strip())
        for num, raw in enumerate(text.splitlines(), start=1)
        if raw.strip() and not raw.strip().startswith("#")
    ]
    if not lines:
        raise MatrixFileError("empty input: expected the matrix size on the first line")
    num, head = lines[0]
    try:
        n = int(head)
    except ValueError:
        raise MatrixFileError(f"expected a single integer size, got {head!r}", num) from None
    if n < 0:
        raise MatrixFileError(f"negative size {n}", num)
    body = lines[1:]
    if len(body) < n:
        last = body[-1][0] if body else num
        raise MatrixFileError(f"expected {n} rows, found {len(body)}", last)
    if len(body) > n:
        raise MatrixFileError(f"unexpected extra row (size is {n})", body[n][0])
    rows = []
    for num, line in body:
        try:
            row = [int(tok) for tok in line.split()]
        except ValueError:
            raise MatrixFileError(f"non-integer entry in {line!r}", num) from None
        if len(row) != n:
            raise MatrixFileError(f"expected {n} entries, found {len(row)}", num)
        rows.append(row)
    try:
        return validate_seifert(rows, label=label)
    except SeifertError as exc:
        raise MatrixFileError(f"not a Seifert matrix: {exc}") from exc


def bundled_names() -> list[str]:
    return sorted(p.name for p in resources.files("concordkit.data").iterdir() if p.name.endswith(".mat"))


def parse_matrix_file(path) -> SeifertMatrix:
    """Read a matrix file; a bare name of a bundled file (e.g. ``paper_C.mat``) also works."""
    p = Path(path)
    label = p.stem
    if p.exists():
        text = p.read_text()
    elif p.name in bundled_names() and p.parent == Path("."):
        text = resources.files("concordkit.data").joinpath(p.name).read_text()
    else:
        raise MatrixFileError(f"no such file: {path}")
    return parse_matrix_text(text, label=label)


load_matrix = parse_matrix_file


def format_matrix(s: SeifertMatrix, comment: str | None = None) -> str:
    """Canonical text: optional comment lines, the size, then right-aligned rows."""
    out = []
    if comment:
        out.extend("# " + line if line else "#" for line in comment.splitlines())
    out.append(str(s.size))
    width = max((len(str(x)) for row in s.entries for x in row), default=1)
    for row in s.entries:
        out.append(" ".join(f"{x:>{width}d}" for x in row))
    return "\n".join(out) + "\n"
