"""Reader/writer for the plain-text group file format.

::

    # name: S4
    degree 4
    gen (1 2)
    gen (1 2 3 4)

Cycles are 1-based with whitespace-separated points; fixed points are
omitted.  Blank lines and ``#`` comments are ignored; an optional
``# name: <string>`` comment names the group.
"""

from __future__ import annotations

from .errors import ParseError
from .groups import DEFAULT_MAX_ORDER, Group, closure
from .perms import Perm, cycle_text, parse_cycle_text


def parse_group_file(text: str) -> tuple[str, int, list[Perm]]:
    """Parse file text into (name, degree, generators)."""
    name = ""
    degree = None
    gens: list[Perm] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            body = line[1:].strip()
            if body.lower().startswith("name:") and not name:
                name = body[5:].strip()
            continue
        field, _, rest = line.partition(" ")
        rest = rest.strip()
        if field == "degree":
            if degree is not None:
                raise ParseError("duplicate degree line", line=lineno)
            if not rest.isdigit() or int(rest) < 1:
                raise ParseError(
                    "degree must be a positive integer", line=lineno,
                    column=raw.index(rest) + 1 if rest else len(raw),
                )
            degree = int(rest)
        elif field == "gen":
            if degree is None:
                raise ParseError("gen line before degree", line=lineno)
            offset = raw.index(rest) if rest else len(raw)
            gens.append(parse_cycle_text(rest, degree, line=lineno, offset=offset))
        else:
            raise ParseError(f"unknown directive {field!r}", line=lineno, column=1)
    if degree is None:
        raise ParseError("missing degree line", line=len(text.splitlines()) or 1)
    return name, degree, gens


def format_group_file(name: str, degree: int, gens) -> str:
    lines = []
    if name:
        lines.append(f"# name: {name}")
    lines.append(f"degree {degree}")
    for g in gens:
        lines.append(f"gen {cycle_text(g)}")
    return "\n".join(lines) + "\n"


def load_group_text(text: str, fallback_name: str = "", max_order: int = DEFAULT_MAX_ORDER) -> Group:
    name, degree, gens = parse_group_file(text)
    return closure(degree, gens, max_order=max_order, name=name or fallback_name)


def load_group_file(path, max_order: int = DEFAULT_MAX_ORDER) -> Group:
    from pathlib import Path

    path = Path(path)
    return load_group_text(
        path.read_text(encoding="utf-8"), fallback_name=path.stem, max_order=max_order
    )
