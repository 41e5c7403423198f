"""Built-in example systems.

Three classics ship with the library, both as plain dictionaries (the same
schema the file parser accepts) and as bundled .spec files:

  square   - the unit square filled through a 3-vertex system over the
             3x2 grid of digit translates, base matrix diag(3, 2);
  dekking   - the 4-vertex plane-filling system over diag(4, 2);
  mcmullen - a 4-vertex trail system whose invariant sets unite to the
             carpet with digits {0, e1, 2e1, e2, e1+e2} over diag(3, 2).
"""

from __future__ import annotations

from importlib import resources

from .system import OrderedGifs, build_gifs

_SQUARE_DIGITS = [[0, 0], [0, 1], [1, 1], [1, 0], [2, 0], [2, 1]]

SQUARE_RULES = {
    "dimension": 2,
    "matrix": [3, 0, 0, 2],
    "vertices": 3,
    "digits": _SQUARE_DIGITS,
    "substitution": [
        {"lhs": 1, "rhs": [{"map": 1, "target": 1}, {"map": 1, "target": 2},
                           {"map": 3, "target": 1}, {"map": 4, "target": 3},
                           {"map": 4, "target": 1}, {"map": 5, "target": 1}]},
        {"lhs": 2, "rhs": [{"map": 5, "target": 2}, {"map": 5, "target": 3},
                           {"map": 4, "target": 2}, {"map": 6, "target": 1},
                           {"map": 6, "target": 2}]},
        {"lhs": 3, "rhs": [{"map": 6, "target": 3}, {"map": 3, "target": 2},
                           {"map": 3, "target": 3}, {"map": 2, "target": 2},
                           {"map": 2, "target": 3}, {"map": 2, "target": 1},
                           {"map": 1, "target": 3}]},
    ],
    "assert_osc": True,
}

_MCMULLEN_DIGITS = [[0, 0], [1, 0], [2, 0], [0, 1], [1, 1]]

MCMULLEN_RULES = {
    "dimension": 2,
    "matrix": [3, 0, 0, 2],
    "vertices": 4,
    "digits": _MCMULLEN_DIGITS,
    "substitution": [
        {"lhs": 1, "rhs": [{"map": 1, "target": 1}, {"map": 1, "target": 2},
                           {"map": 1, "target": 3}, {"map": 2, "target": 1},
                           {"map": 4, "target": 4}, {"map": 4, "target": 1}]},
        {"lhs": 2, "rhs": [{"map": 4, "target": 2}, {"map": 4, "target": 3},
                           {"map": 5, "target": 1}, {"map": 5, "target": 2}]},
        {"lhs": 3, "rhs": [{"map": 5, "target": 3}, {"map": 3, "target": 2},
                           {"map": 3, "target": 3}]},
        {"lhs": 4, "rhs": [{"map": 3, "target": 4}, {"map": 3, "target": 1},
                           {"map": 5, "target": 4}, {"map": 2, "target": 2},
                           {"map": 2, "target": 3}, {"map": 2, "target": 4},
                           {"map": 1, "target": 4}]},
    ],
    "assert_osc": True,
}


def _edges(rows):
    return [{"from": s, "to": t, "digit": d} for s, t, d in rows]


SQUARE_SPEC = {
    "dimension": 2,
    "matrix": [3, 0, 0, 2],
    "vertices": 3,
    "edges": _edges([
        (1, 1, [0, 0]), (1, 2, [0, 0]), (1, 1, [1, 1]),
        (1, 3, [1, 0]), (1, 1, [1, 0]), (1, 1, [2, 0]),
        (2, 2, [2, 0]), (2, 3, [2, 0]), (2, 2, [1, 0]),
        (2, 1, [2, 1]), (2, 2, [2, 1]),
        (3, 3, [2, 1]), (3, 2, [1, 1]), (3, 3, [1, 1]),
        (3, 2, [0, 1]), (3, 3, [0, 1]), (3, 1, [0, 1]), (3, 3, [0, 0]),
    ]),
    "assert_osc": True,
}

DEKKING_SPEC = {
    "dimension": 2,
    "matrix": [4, 0, 0, 2],
    "vertices": 4,
    "edges": _edges([
        (1, 1, [0, 0]), (1, 2, [1, 0]), (1, 1, [1, 1]), (1, 4, [2, 1]),
        (1, 1, [2, 0]), (1, 4, [3, 0]), (1, 1, [3, -1]), (1, 2, [4, -1]),
        (2, 3, [0, 0]), (2, 2, [-1, 0]), (2, 3, [-1, 1]), (2, 2, [-2, 1]),
        (2, 1, [-2, 2]), (2, 4, [-1, 2]), (2, 1, [-1, 1]), (2, 2, [0, 1]),
        (3, 3, [0, 0]), (3, 2, [-1, 0]), (3, 3, [-1, 1]), (3, 2, [-2, 1]),
        (3, 3, [-2, 2]), (3, 4, [-3, 2]), (3, 1, [-3, 1]), (3, 4, [-2, 1]),
        (3, 3, [-2, 0]), (3, 2, [-3, 0]), (3, 3, [-3, 1]), (3, 4, [-4, 1]),
        (4, 1, [0, 0]), (4, 4, [1, 0]), (4, 3, [1, -1]), (4, 4, [0, -1]),
    ]),
    "assert_osc": True,
}

MCMULLEN_SPEC = {
    "dimension": 2,
    "matrix": [3, 0, 0, 2],
    "vertices": 4,
    "edges": _edges([
        (1, 1, [0, 0]), (1, 2, [0, 0]), (1, 3, [0, 0]),
        (1, 1, [1, 0]), (1, 4, [0, 1]), (1, 1, [0, 1]),
        (2, 2, [0, 1]), (2, 3, [0, 1]), (2, 1, [1, 1]), (2, 2, [1, 1]),
        (3, 3, [1, 1]), (3, 2, [2, 0]), (3, 3, [2, 0]),
        (4, 4, [2, 0]), (4, 1, [2, 0]), (4, 4, [1, 1]), (4, 2, [1, 0]),
        (4, 3, [1, 0]), (4, 4, [1, 0]), (4, 4, [0, 0]),
    ]),
    "assert_osc": True,
}

BUILTIN_SPECS = {
    "square": SQUARE_SPEC,
    "dekking": DEKKING_SPEC,
    "mcmullen": MCMULLEN_SPEC,
}

BUILTIN_RULES = {
    "square": SQUARE_RULES,
    "mcmullen": MCMULLEN_RULES,
}


def builtin(name: str) -> OrderedGifs:
    """Build one of the bundled example systems by name."""
    try:
        return build_gifs(BUILTIN_SPECS[name])
    except KeyError:
        raise KeyError(f"unknown builtin {name!r}; "
                       f"choose from {sorted(BUILTIN_SPECS)}") from None


def builtin_path(name: str) -> str:
    """Filesystem path of a bundled .spec file ('square', 'square_rules', ...)."""
    ref = resources.files("gifscurve").joinpath("data", f"{name}.spec")
    with resources.as_file(ref) as p:
        return str(p)
