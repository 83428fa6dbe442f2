"""Graph files and JSON reports.

Graph files use 1-based ids::

    c optional comment
    p iset <n> <m>
    e <u> <v>
    w <v> <weight>

Vertices without a ``w`` line weigh 1. Reports are JSON objects tagged
``"schema": "mwis-structure/1"`` and validated against a strict schema.
Conversion between 1-based file ids and 0-based internal ids happens only
in this module.
"""

from __future__ import annotations

import json
from hashlib import sha256

import jsonschema

from .graph import Graph, GraphError, WeightedGraph, build_graph, INT64_MAX, INT64_MIN

SCHEMA_ID = "mwis-structure/1"
TOOL = "mwistruct"


class ParseError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        super().__init__(f"line {line}: {message}" if line else message)
        self.line = line


def parse_graph(text: str) -> WeightedGraph:
    header = None
    edges: list[tuple[int, int]] = []
    seen_edges = set()
    weights: dict[int, int] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        parts = raw.split()
        if not parts or parts[0] == "c":
            continue
        kind = parts[0]
        if kind == "p":
            if header is not None:
                raise ParseError("second header line", lineno)
            if len(parts) != 4 or parts[1] != "iset":
                raise ParseError("header must be 'p iset <n> <m>'", lineno)
            header = (_int(parts[2], lineno, "n"), _int(parts[3], lineno, "m"))
            if header[0] < 0 or header[1] < 0:
                raise ParseError("negative size in header", lineno)
            continue
        if header is None:
            raise ParseError(f"'{kind}' line before the header", lineno)
        n = header[0]
        if kind == "e":
            if len(parts) != 3:
                raise ParseError("edge line must be 'e <u> <v>'", lineno)
            u, v = (_vertex(x, n, lineno) for x in parts[1:])
            if u == v:
                raise ParseError(f"self-loop at vertex {u + 1}", lineno)
            key = (min(u, v), max(u, v))
            if key in seen_edges:
                raise ParseError(f"duplicate edge {u + 1} {v + 1}", lineno)
            seen_edges.add(key)
            edges.append(key)
        elif kind == "w":
            if len(parts) != 3:
                raise ParseError("weight line must be 'w <v> <weight>'", lineno)
            v = _vertex(parts[1], n, lineno)
            if v in weights:
                raise ParseError(f"second weight for vertex {v + 1}", lineno)
            w = _int(parts[2], lineno, "weight")
            if not INT64_MIN <= w <= INT64_MAX:
                raise ParseError("weight outside the 64-bit signed range", lineno)
            weights[v] = w
        else:
            raise ParseError(f"unknown line kind {kind!r}", lineno)
    if header is None:
        raise ParseError("missing 'p iset <n> <m>' header")
    n, m = header
    if len(edges) != m:
        raise ParseError(f"header announces {m} edges, body has {len(edges)}")
    try:
        g = build_graph(n, edges)
    except GraphError as exc:
        raise ParseError(str(exc)) from exc
    return WeightedGraph(g, tuple(weights.get(v, 1) for v in range(n)))


def _int(token: str, lineno: int, what: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise ParseError(f"{what} {token!r} is not an integer", lineno) from None


def _vertex(token: str, n: int, lineno: int) -> int:
    v = _int(token, lineno, "vertex")
    if not 1 <= v <= n:
        raise ParseError(f"vertex {v} outside 1..{n}", lineno)
    return v - 1


def read_graph(path: str) -> WeightedGraph:
    try:
        with open(path) as fh:
            return parse_graph(fh.read())
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from exc


def format_graph(wg: WeightedGraph | Graph, comment: str | None = None) -> str:
    if isinstance(wg, Graph):
        wg = WeightedGraph.unit(wg)
    g = wg.graph
    lines = [f"c {comment}"] if comment else []
    lines.append(f"p iset {g.n} {g.m}")
    lines += [f"e {u + 1} {v + 1}" for u, v in g.edges()]
    lines += [f"w {v + 1} {w}" for v, w in enumerate(wg.weights) if w != 1]
    return "\n".join(lines) + "\n"


def graph_digest(wg: WeightedGraph) -> str:
    return sha256(format_graph(wg).encode()).hexdigest()


def to_file_ids(vertices) -> list[int]:
    return [v + 1 for v in sorted(vertices)]


def witness_to_file_ids(w: dict | None) -> dict | None:
    if w is None:
        return None
    return {"kind": w["kind"], "vertices": [v + 1 for v in w["vertices"]]}


# -- reports -----------------------------------------------------------------------

_COUNT = {"type": "integer", "minimum": 0}
_IDS = {"type": "array", "items": {"type": "integer", "minimum": 1}}
_WITNESS = {
    "type": "object",
    "additionalProperties": False,
    "required": ["kind", "vertices"],
    "properties": {"kind": {"type": "string"}, "vertices": _IDS},
}
_CHECK = {
    "type": "object",
    "additionalProperties": False,
    "required": ["checked", "violations", "passed", "witnesses"],
    "properties": {
        "checked": _COUNT,
        "violations": _COUNT,
        "passed": {"type": "boolean"},
        "witnesses": {"type": "array", "items": _WITNESS},
    },
}
_SOLVE = {
    "type": "object",
    "additionalProperties": False,
    "required": [
        "value", "set", "class_used", "md_stats", "atom_stats",
        "reduction_stats", "structure_checks", "fallback_count",
    ],
    "properties": {
        "value": {"type": "integer"},
        "set": _IDS,
        "class_used": {"type": "string"},
        "md_stats": {
            "type": "object",
            "additionalProperties": False,
            "required": ["leaf", "parallel", "series", "prime", "max_prime_quotient"],
            "properties": {k: _COUNT for k in ("leaf", "parallel", "series", "prime", "max_prime_quotient")},
        },
        "atom_stats": {
            "type": "object",
            "additionalProperties": False,
            "required": ["atoms", "separators", "max_atom_size"],
            "properties": {k: _COUNT for k in ("atoms", "separators", "max_atom_size")},
        },
        "reduction_stats": {
            "type": "object",
            "additionalProperties": False,
            "required": ["branches", "base_calls", "max_base_size"],
            "properties": {
                "branches": _COUNT,
                "base_calls": {"type": "object", "additionalProperties": _COUNT},
                "max_base_size": _COUNT,
            },
        },
        "structure_checks": {"type": "object", "additionalProperties": _CHECK},
        "fallback_count": _COUNT,
    },
}
_ORACLE = {
    "type": "object",
    "additionalProperties": False,
    "required": ["value", "set"],
    "properties": {"value": {"type": "integer"}, "set": _IDS},
}
_RECOGNIZE = {
    "type": "object",
    "additionalProperties": False,
    "required": ["class", "verdict", "witness"],
    "properties": {
        "class": {"type": "string"},
        "verdict": {"enum": ["satisfied", "violated"]},
        "witness": {"oneOf": [{"type": "null"}, _WITNESS]},
    },
}
_DECOMPOSE = {
    "type": "object",
    "additionalProperties": False,
    "required": ["method", "tree"],
    "properties": {"method": {"enum": ["cliquesep", "modular"]}, "tree": {"type": "object"}},
}
_LEMMA = {
    "type": "object",
    "additionalProperties": False,
    "required": ["lemma", "corpus", "checked", "skipped", "violations", "skips", "notes", "verdict"],
    "properties": {
        "lemma": {"type": "string"},
        "corpus": {"type": "object"},
        "checked": _COUNT,
        "skipped": _COUNT,
        "violations": {"type": "array", "items": {"type": "object"}},
        "skips": {"type": "array", "items": {"type": "object"}},
        "notes": {"type": "object", "additionalProperties": {"type": "integer"}},
        "verdict": {"enum": ["pass", "fail"]},
    },
}
_VERIFY = {
    "type": "object",
    "additionalProperties": False,
    "required": ["suites", "passed"],
    "properties": {"suites": {"type": "array", "items": _LEMMA}, "passed": {"type": "boolean"}},
}
_ERROR = {
    "type": "object",
    "additionalProperties": False,
    "required": ["kind", "message", "witness"],
    "properties": {
        "kind": {"enum": ["parse", "class-violation", "budget-exhausted"]},
        "message": {"type": "string"},
        "witness": {"oneOf": [{"type": "null"}, _WITNESS]},
        "branch_vertex": {"oneOf": [{"type": "null"}, {"type": "integer", "minimum": 1}]},
    },
}

RESULT_SCHEMAS = {
    "solve": _SOLVE,
    "oracle": _ORACLE,
    "recognize": _RECOGNIZE,
    "decompose": _DECOMPOSE,
    "verify": _VERIFY,
}

REPORT_SCHEMA = {
    "type": "object",
    "additionalProperties": False,
    "required": ["schema", "tool", "version", "command", "input", "seed", "wall_time_s", "result", "error"],
    "properties": {
        "schema": {"const": SCHEMA_ID},
        "tool": {"const": TOOL},
        "version": {"type": "string"},
        "command": {"enum": sorted(RESULT_SCHEMAS)},
        "input": {
            "oneOf": [
                {"type": "null"},
                {
                    "type": "object",
                    "additionalProperties": False,
                    "required": ["n", "m", "sha256"],
                    "properties": {"n": _COUNT, "m": _COUNT, "sha256": {"type": "string"}},
                },
            ]
        },
        "seed": {"oneOf": [{"type": "null"}, {"type": "integer"}]},
        "wall_time_s": {"oneOf": [{"type": "null"}, {"type": "number", "minimum": 0}]},
        "result": {"oneOf": [{"type": "null"}, {"type": "object"}]},
        "error": {"oneOf": [{"type": "null"}, _ERROR]},
    },
}


def make_report(
    command: str,
    result: dict | None,
    wg: WeightedGraph | None = None,
    seed: int | None = None,
    wall_time: float | None = None,
    error: dict | None = None,
) -> dict:
    from . import __version__

    return {
        "schema": SCHEMA_ID,
        "tool": TOOL,
        "version": __version__,
        "command": command,
        "input": None if wg is None else {"n": wg.graph.n, "m": wg.graph.m, "sha256": graph_digest(wg)},
        "seed": seed,
        "wall_time_s": None if wall_time is None else round(wall_time, 6),
        "result": result,
        "error": error,
    }


def validate_report(report: dict) -> None:
    """Raise ``jsonschema.ValidationError`` unless ``report`` matches the schema."""
    jsonschema.validate(report, REPORT_SCHEMA)
    if report["result"] is not None:
        jsonschema.validate(report["result"], RESULT_SCHEMAS[report["command"]])


def dump_report(report: dict) -> str:
    validate_report(report)
    return json.dumps(report, indent=2, sort_keys=True) + "\n"


def write_report(report: dict, path: str) -> None:
    text = dump_report(report)
    with open(path, "w") as fh:
        fh.write(text)
