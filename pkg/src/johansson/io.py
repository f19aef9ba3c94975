"""``jdiag`` / ``hpres`` text formats, JSON reports and DOT output.

``jdiag 1`` files::

    jdiag 1
    pairs: a/a*
    word a: 1.0 2.0 3.0 4.0 5.0 6.0
    word a*: 1.1 2.1 3.1 4.1 5.1 6.1
    cross 1: +
    ...
    triplet (a,a,a) points 1 3 5

``hpres 1`` files carry only the ``pairs:`` line and bare ``triplet (a,c,g)``
lines.  ``#`` starts a comment; sections may come in any order.
"""

from __future__ import annotations

import hashlib
import json
import re
from dataclasses import dataclass
from typing import Union

from . import __version__
from .diagram import (
    HakenPresentation,
    JohanssonDiagram,
    SisterPairing,
    Triplet,
    ValidationReport,
    classify_triplet,
    curve_crossing_graph,
    validate_diagram,
    validate_presentation,
)
from .group import h1, presentation_from, recognize

__all__ = [
    "ParseError",
    "parse",
    "parse_diagram",
    "parse_presentation",
    "serialize_diagram",
    "serialize_presentation",
    "report_document",
    "render_dot",
]

NAME = r"[A-Za-z_][A-Za-z0-9_*']*"
_NAME_RE = re.compile(rf"^{NAME}$")
_PAIR_RE = re.compile(rf"^({NAME})/({NAME})$")
_PASSAGE_RE = re.compile(r"^([A-Za-z0-9_]+)\.(\d+)$")
_POINT_RE = re.compile(r"^[A-Za-z0-9_]+$")
_TRIPLET_RE = re.compile(r"^triplet\s*\(([^()]*)\)\s*(.*)$")

# error codes
E_HEADER = "E_HEADER"
E_LEX = "E_LEX"
E_DUPLICATE = "E_DUPLICATE"
E_UNKNOWN_CURVE = "E_UNKNOWN_CURVE"
E_UNKNOWN_POINT = "E_UNKNOWN_POINT"
E_SLOT_REUSED = "E_SLOT_REUSED"
E_SIGN_MISSING = "E_SIGN_MISSING"
E_ARITY = "E_ARITY"
E_MISSING = "E_MISSING"


class ParseError(ValueError):
    def __init__(self, code: str, message: str, line: int = 0, column: int = 0):
        super().__init__(f"{line}:{column}: {code}: {message}")
        self.code = code
        self.message = message
        self.line = line
        self.column = column


def _lines(text: str):
    for n, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if line.strip():
            col = len(line) - len(line.lstrip()) + 1
            yield n, col, line.strip()


def _natural(name: str):
    return (0, int(name), name) if name.isdigit() else (1, 0, name)


def _parse_pairs(rest, n, col):
    names, tau = [], []
    seen = set()
    for tok in rest.split():
        m = _PAIR_RE.match(tok)
        if not m:
            raise ParseError(E_LEX, f"bad pair token {tok!r}", n, col)
        x, y = m.groups()
        if x == y:
            # a curve paired with itself; kept so validation can report it
            if x in seen:
                raise ParseError(E_DUPLICATE, f"curve {x} declared twice", n, col)
            seen.add(x)
            names.append(x)
            tau.append(len(names) - 1)
            continue
        for z in (x, y):
            if z in seen:
                raise ParseError(E_DUPLICATE, f"curve {z} declared twice", n, col)
            seen.add(z)
        i = len(names)
        names += [x, y]
        tau += [i + 1, i]
    return SisterPairing(tuple(names), tuple(tau))


def _parse_triplet(line, n, col, curve_index):
    m = _TRIPLET_RE.match(line)
    if not m:
        raise ParseError(E_LEX, "malformed triplet line", n, col)
    inner, tail = m.groups()
    letters = [s.strip() for s in inner.split(",")] if inner.strip() else []
    if len(letters) != 3:
        raise ParseError(E_ARITY, f"triplet has {len(letters)} curves, expected 3", n, col)
    ids = []
    for name in letters:
        if name not in curve_index:
            if not _NAME_RE.match(name):
                raise ParseError(E_LEX, f"bad curve name {name!r}", n, col)
            raise ParseError(E_UNKNOWN_CURVE, f"unknown curve {name}", n, col)
        ids.append(curve_index[name])
    points = None
    tail = tail.strip()
    if tail:
        parts = tail.split()
        if parts[0] != "points":
            raise ParseError(E_LEX, f"unexpected {parts[0]!r} after triplet", n, col)
        if len(parts) != 4:
            raise ParseError(E_ARITY, f"triplet lists {len(parts) - 1} points, expected 3", n, col)
        for p in parts[1:]:
            if not _POINT_RE.match(p):
                raise ParseError(E_LEX, f"bad point id {p!r}", n, col)
        points = tuple(parts[1:])
    return ids, points


def _scan(text: str, kind: str):
    it = list(_lines(text))
    if not it:
        raise ParseError(E_HEADER, "empty input", 1, 1)
    n, col, first = it[0]
    if first.split() != [kind, "1"]:
        raise ParseError(E_HEADER, f"expected header '{kind} 1'", n, col)
    pairing = None
    body = []
    for n, col, line in it[1:]:
        if line.startswith("pairs:"):
            if pairing is not None:
                raise ParseError(E_DUPLICATE, "second pairs: line", n, col)
            pairing = _parse_pairs(line[len("pairs:"):], n, col)
        else:
            body.append((n, col, line))
    if pairing is None:
        raise ParseError(E_MISSING, "no pairs: line", n, col)
    return pairing, body


def parse_presentation(text: str) -> HakenPresentation:
    pairing, body = _scan(text, "hpres")
    curve_index = {name: i for i, name in enumerate(pairing.names)}
    triplets = []
    for n, col, line in body:
        if not line.startswith("triplet"):
            raise ParseError(E_LEX, f"unexpected line {line.split()[0]!r}", n, col)
        ids, points = _parse_triplet(line, n, col, curve_index)
        if points is not None:
            raise ParseError(E_LEX, "hpres triplets carry no points", n, col)
        triplets.append(Triplet(*ids))
    return HakenPresentation(pairing, tuple(triplets))


def parse_diagram(text: str) -> JohanssonDiagram:
    pairing, body = _scan(text, "jdiag")
    curve_index = {name: i for i, name in enumerate(pairing.names)}
    words: dict[int, list] = {}
    word_lines: dict[int, tuple] = {}
    signs: dict[str, int] = {}
    raw_triplets = []
    passages_seen: dict[tuple, tuple] = {}
    for n, col, line in body:
        head = line.split(None, 1)[0]
        if head == "word":
            m = re.match(rf"^word\s+({NAME})\s*:(.*)$", line)
            if not m:
                raise ParseError(E_LEX, "malformed word line", n, col)
            name, rest = m.groups()
            if name not in curve_index:
                raise ParseError(E_UNKNOWN_CURVE, f"unknown curve {name}", n, col)
            c = curve_index[name]
            if c in words:
                raise ParseError(E_DUPLICATE, f"second word for {name}", n, col)
            seq = []
            for tok in rest.split():
                pm = _PASSAGE_RE.match(tok)
                if not pm:
                    raise ParseError(E_LEX, f"bad passage token {tok!r}", n, col)
                point, slot = pm.group(1), int(pm.group(2))
                if slot not in (0, 1):
                    raise ParseError(E_LEX, f"slot {slot} not in {{0,1}}", n, col)
                if (point, slot) in passages_seen:
                    raise ParseError(E_SLOT_REUSED, f"passage {tok} used twice", n, col)
                passages_seen[(point, slot)] = (n, col)
                seq.append((point, slot))
            words[c] = seq
            word_lines[c] = (n, col)
        elif head == "cross":
            m = re.match(r"^cross\s+([A-Za-z0-9_]+)\s*:\s*(\S*)\s*$", line)
            if not m:
                raise ParseError(E_LEX, "malformed cross line", n, col)
            point, sign = m.groups()
            if sign == "":
                raise ParseError(E_SIGN_MISSING, f"point {point} has no sign", n, col)
            if sign not in ("+", "-"):
                raise ParseError(E_LEX, f"sign must be + or -, got {sign!r}", n, col)
            if point in signs:
                raise ParseError(E_DUPLICATE, f"second cross line for {point}", n, col)
            signs[point] = 1 if sign == "+" else -1
        elif head.startswith("triplet"):
            ids, points = _parse_triplet(line, n, col, curve_index)
            if points is None:
                raise ParseError(E_MISSING, "jdiag triplet needs 'points p1 p2 p3'", n, col)
            raw_triplets.append((ids, points, n, col))
        else:
            raise ParseError(E_LEX, f"unknown directive {head!r}", n, col)

    for c, name in enumerate(pairing.names):
        if c not in words:
            raise ParseError(E_MISSING, f"no word for curve {name}", 0, 0)
    point_names = sorted({p for p, _ in passages_seen} | set(signs), key=_natural)
    index = {p: i for i, p in enumerate(point_names)}
    for p in point_names:
        if p not in signs:
            n, col = passages_seen.get((p, 0)) or passages_seen.get((p, 1))
            raise ParseError(E_SIGN_MISSING, f"point {p} has no cross line", n, col)
        for s in (0, 1):
            if (p, s) not in passages_seen:
                raise ParseError(E_MISSING, f"point {p} slot {s} is never traversed", 0, 0)
    triplets = []
    for ids, points, n, col in raw_triplets:
        for p in points:
            if p not in index:
                raise ParseError(E_UNKNOWN_POINT, f"unknown point {p}", n, col)
        triplets.append(Triplet(*ids, tuple(index[p] for p in points)))
    h = HakenPresentation(pairing, tuple(triplets))
    word_tuple = tuple(tuple((index[p], s) for p, s in words[c]) for c in range(len(pairing.names)))
    return JohanssonDiagram(h, word_tuple, tuple(signs[p] for p in point_names), tuple(point_names))


def parse(text: str) -> Union[JohanssonDiagram, HakenPresentation]:
    """Dispatch on the header line."""
    for _, _, line in _lines(text):
        if line.startswith("jdiag"):
            return parse_diagram(text)
        if line.startswith("hpres"):
            return parse_presentation(text)
        break
    raise ParseError(E_HEADER, "expected 'jdiag 1' or 'hpres 1' header", 1, 1)


def _pairs_line(pairing: SisterPairing) -> str:
    toks = []
    for c, t in enumerate(pairing.tau):
        if c <= t:
            toks.append(f"{pairing.names[c]}/{pairing.names[t]}")
    return "pairs: " + " ".join(toks)


def _letters(h, t):
    return ",".join(h.names[x] for x in t.letters)


def serialize_presentation(h: HakenPresentation) -> str:
    lines = ["hpres 1", _pairs_line(h.pairing)]
    lines += [f"triplet ({_letters(h, t)})" for t in h.triplets]
    return "\n".join(lines) + "\n"


def serialize_diagram(d: JohanssonDiagram) -> str:
    h = d.presentation
    pn = d.point_names
    lines = ["jdiag 1", _pairs_line(h.pairing)]
    for c, word in enumerate(d.words):
        lines.append(f"word {h.names[c]}: " + " ".join(f"{pn[q]}.{s}" for q, s in word))
    for q, sign in enumerate(d.signs):
        lines.append(f"cross {pn[q]}: {'+' if sign > 0 else '-'}")
    for t in h.triplets:
        pts = " ".join(pn[q] for q in t.points) if t.points else ""
        lines.append(f"triplet ({_letters(h, t)}) points {pts}".rstrip())
    return "\n".join(lines) + "\n"


def _findings(report: ValidationReport):
    return [
        {"constraint": f.constraint, "severity": f.severity, "detail": f.detail,
         "ids": [str(x) for x in f.ids]}
        for f in report.findings
    ]


def report_document(obj: Union[JohanssonDiagram, HakenPresentation], text: str = "") -> dict:
    """JSON-ready report; key order is fixed."""
    is_diagram = isinstance(obj, JohanssonDiagram)
    h = obj.presentation if is_diagram else obj
    report = validate_diagram(obj) if is_diagram else validate_presentation(h)
    doc = {
        "tool": "johansson",
        "version": __version__,
        "input_sha256": hashlib.sha256(text.encode()).hexdigest(),
        "kind": "jdiag" if is_diagram else "hpres",
        "triple_points": h.p,
        "double_curves": h.k,
        "validation": {
            "verdict": report.verdict,
            "summary": report.summary(),
            "findings": _findings(report),
        },
        "triplets": [],
        "presentation": None,
        "h1": None,
        "faces": report.face_count,
    }
    if h.pairing.is_valid():
        for t in h.triplets:
            doc["triplets"].append({"curves": [h.names[x] for x in t.letters],
                                    "type": classify_triplet(t, h.pairing)})
    if report.ok:
        g = presentation_from(h)
        doc["presentation"] = {"generators": list(g.generators),
                               "relators": [g.word_str(r) for r in g.relators]}
        for entry, r in zip(doc["triplets"], g.relators):
            entry["relator"] = g.word_str(r)
        a = h1(h)
        doc["h1"] = {"free_rank": a.free_rank, "torsion": list(a.torsion),
                     "name": recognize(a), "view": "abelianized"}
    return doc


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def _dot_id(name: str) -> str:
    return '"' + name.replace('"', r'\"') + '"'


def render_dot(obj: Union[JohanssonDiagram, HakenPresentation]) -> str:
    """Curve crossing graph in DOT; sister pairs share a cluster."""
    h = obj.presentation if isinstance(obj, JohanssonDiagram) else obj
    _, edges, loops = curve_crossing_graph(h)
    lines = ["graph crossings {"]
    for i, (c, t) in enumerate(h.pairing.pairs()):
        lines.append(f"  subgraph cluster_{i} {{")
        lines.append(f"    label={_dot_id(h.names[c] + '/' + h.names[t])};")
        lines.append(f"    {_dot_id(h.names[c])}; {_dot_id(h.names[t])};")
        lines.append("  }")
    for x, y, i, role in sorted(edges + loops, key=lambda e: (e[2], e[3])):
        lines.append(f"  {_dot_id(h.names[x])} -- {_dot_id(h.names[y])} "
                     f"[label={_dot_id(f'T{i + 1}.{role}')}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
