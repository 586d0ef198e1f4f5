"""Plain-text complex files.

::

    # comment
    vertex a 1
    vertex b 3
    simplex a b
    weight a b = 6      # optional explicit simplex weight

Vertex names become dense ids in order of first appearance.
"""

from __future__ import annotations

from pathlib import Path

from .complex import WeightedComplex, build_complex, is_divisibility_chain
from .errors import ParseError


def parse_complex(text: str) -> WeightedComplex:
    names: list[str] = []
    weights: dict[str, int] = {}
    maximal: list[list[str]] = []
    explicit: dict[tuple[str, ...], int] = {}
    seen_any = False

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        seen_any = True
        toks = line.split()
        kw, args = toks[0], toks[1:]
        if kw == "vertex":
            if len(args) != 2:
                raise ParseError("expected 'vertex <name> <weight>'", lineno)
            name, w = args
            if name in weights:
                raise ParseError(f"vertex {name!r} declared twice", lineno)
            weights[name] = _positive_int(w, lineno)
            names.append(name)
        elif kw == "simplex":
            if not args:
                raise ParseError("simplex needs at least one vertex", lineno)
            for a in args:
                if a not in weights:
                    raise ParseError(f"unknown vertex {a!r}", lineno)
            maximal.append(args)
        elif kw == "weight":
            if "=" not in args or args.index("=") != len(args) - 2 or len(args) < 3:
                raise ParseError("expected 'weight <name>... = <int>'", lineno)
            verts = args[:-2]
            for a in verts:
                if a not in weights:
                    raise ParseError(f"unknown vertex {a!r}", lineno)
            explicit[tuple(verts)] = _positive_int(args[-1], lineno)
        else:
            raise ParseError(f"unknown directive {kw!r}", lineno)

    if not seen_any or not names:
        raise ParseError("no vertices declared")
    return build_complex(dict(zip(names, (weights[n] for n in names))), maximal, explicit or None)


def _positive_int(tok: str, lineno: int) -> int:
    try:
        v = int(tok)
    except ValueError:
        raise ParseError(f"expected an integer, got {tok!r}", lineno) from None
    if v < 1:
        raise ParseError(f"weights must be positive, got {v}", lineno)
    return v


def read_complex(path) -> WeightedComplex:
    return parse_complex(Path(path).read_text())


def format_complex(K: WeightedComplex, header: str | None = None) -> str:
    """Serialise ``K``; explicit weights are written only where the lcm rule would differ."""
    lines = []
    if header:
        lines.extend(f"# {h}" for h in header.splitlines())
    for name, w in zip(K.names, K.vertex_weights):
        lines.append(f"vertex {name} {w}")
    for s in K.maximal_simplices():
        if len(s) > 1:
            lines.append("simplex " + " ".join(K.label(s)))
    for s in K.simplices():
        if len(s) > 1 and not _lcm_rule_holds(K, s):
            lines.append("weight " + " ".join(K.label(s)) + f" = {K.weight(s)}")
    return "\n".join(lines) + "\n"


def _lcm_rule_holds(K: WeightedComplex, s) -> bool:
    vw = [K.vertex_weights[v] for v in s]
    return is_divisibility_chain(vw) and max(vw) == K.weight(s)


def write_complex(K: WeightedComplex, path, header: str | None = None) -> None:
    Path(path).write_text(format_complex(K, header))

