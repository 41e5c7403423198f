"""Reading, writing and expanding system description files.

A .spec file is UTF-8 JSON with fixed keys: dimension, matrix (row-major),
vertices, then either an ordered `edges` list (whose order per source
defines the ranks) or a `substitution` table plus a `digits` table from
which the edges are expanded. `assert_osc` is an optional flag the user
asserts; it is carried through, never checked.
"""

from __future__ import annotations

import json
from pathlib import Path

from .errors import EmptyRule, GifsError, ParseError, UnknownSymbol, ValidationError
from .system import OrderedGifs, build_gifs


def expand_substitution(rules: list, digits: list, *, dimension: int,
                        matrix, vertices: int) -> OrderedGifs:
    """Turn per-vertex replacement rules into an ordered edge list.

    Each rule `lhs -> [(map, target), ...]` emits the listed edges from
    `lhs` in order, the k-th one getting rank k and the digit of its map.
    """
    if len(rules) != vertices:
        missing = set(range(1, vertices + 1)) - {int(r["lhs"]) for r in rules}
        raise UnknownSymbol(f"vertices without a rule: {sorted(missing)}")
    edges = []
    for rule in sorted(rules, key=lambda r: int(r["lhs"])):
        lhs = int(rule["lhs"])
        if not 1 <= lhs <= vertices:
            raise UnknownSymbol(f"rule left side {lhs} outside 1..{vertices}")
        rhs = rule.get("rhs", [])
        if not rhs:
            raise EmptyRule(f"rule for vertex {lhs} has an empty right side")
        for item in rhs:
            target = int(item["target"])
            if not 1 <= target <= vertices:
                raise UnknownSymbol(f"rule for {lhs} targets unknown vertex {target}")
            if "digit" in item:
                digit = [float(x) for x in item["digit"]]
            else:
                index = int(item["map"])
                if not 1 <= index <= len(digits):
                    raise UnknownSymbol(f"rule for {lhs} uses unknown map {index}")
                digit = [float(x) for x in digits[index - 1]]
            edges.append({"from": lhs, "to": target, "digit": digit})
    return build_gifs({
        "dimension": dimension,
        "matrix": matrix,
        "vertices": vertices,
        "edges": edges,
    })


def load_spec_dict(doc: dict) -> OrderedGifs:
    """Validate a decoded description and build the system."""
    for key in ("dimension", "matrix", "vertices"):
        if key not in doc:
            raise ParseError(f"missing required key {key!r}")
    has_edges = "edges" in doc
    has_rules = "substitution" in doc
    if has_edges == has_rules:
        raise ParseError("exactly one of 'edges' and 'substitution' must be present")
    try:
        if has_rules:
            return expand_substitution(
                doc["substitution"], doc.get("digits", []),
                dimension=doc["dimension"], matrix=doc["matrix"],
                vertices=doc["vertices"],
            )
        return build_gifs(doc)
    except (ParseError, UnknownSymbol, EmptyRule):
        raise
    except GifsError as exc:
        raise ValidationError(str(exc)) from exc
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed system description: {exc}") from exc


def parse_spec(path) -> OrderedGifs:
    """Read and build a system from a .spec file."""
    text = Path(path).read_text(encoding="utf-8")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") \
            from exc
    if not isinstance(doc, dict):
        raise ParseError(f"{path}: top level must be an object")
    return load_spec_dict(doc)


def _plain_number(x: float):
    return int(x) if float(x).is_integer() else float(x)


def spec_dict(g: OrderedGifs) -> dict:
    """Canonical explicit-edge description of a system."""
    return {
        "dimension": g.dimension,
        "matrix": [_plain_number(x) for x in g.matrix.reshape(-1)],
        "vertices": g.vertex_count,
        "edges": [
            {"from": e.source, "to": e.target,
             "digit": [_plain_number(x) for x in e.digit]}
            for i in range(1, g.vertex_count + 1)
            for e in g.outgoing(i)
        ],
    }


def write_spec(g: OrderedGifs, path) -> None:
    """Serialize canonically: newline-terminated, two-space indent."""
    Path(path).write_text(canonical_text(g), encoding="utf-8")


def canonical_text(g: OrderedGifs) -> str:
    return json.dumps(spec_dict(g), indent=2) + "\n"
