"""Command line front end.

Exit codes: 0 success, 1 validation failure, 2 usage or parse error,
3 internal invariant breach.
"""

from __future__ import annotations

import argparse
import sys
from typing import Optional, Sequence

from . import __version__
from .census import CensusLimitError, CensusQuery, census_h1, enumerate_presentations
from .diagram import (
    HakenPresentation,
    JohanssonDiagram,
    classify_triplet,
    dart_info,
    faces,
    validate_diagram,
    validate_presentation,
)
from .group import PreconditionError, h1, presentation_from, recognize
from .io import (
    ParseError,
    dumps,
    parse,
    parse_diagram,
    render_dot,
    report_document,
    serialize_diagram,
    serialize_presentation,
)
from .surgery import SurgerySite, connected_sum

OK, INVALID, USAGE, INTERNAL = 0, 1, 2, 3


class _Usage(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _Usage(f"{self.prog}: {message}")


def _read(path: str) -> str:
    try:
        if path == "-":
            return sys.stdin.read()
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise _Usage(f"cannot read {path}: {exc.strerror}") from exc


def _write(path: str, text: str) -> None:
    if path == "-":
        sys.stdout.write(text)
        return
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as exc:
        raise _Usage(f"cannot write {path}: {exc.strerror}") from exc


def _load(path: str):
    text = _read(path)
    return parse(text), text


def _presentation(obj) -> HakenPresentation:
    return obj.presentation if isinstance(obj, JohanssonDiagram) else obj


def _report(obj):
    if isinstance(obj, JohanssonDiagram):
        return validate_diagram(obj)
    return validate_presentation(obj)


def _require_valid(obj, path: str) -> bool:
    report = _report(obj)
    if not report.ok:
        print(f"{path}: {report.summary()}", file=sys.stderr)
        for f in report.errors():
            print(f"  [{f.constraint}] {f.detail}", file=sys.stderr)
    return report.ok


def _site(text: Optional[str]) -> Optional[SurgerySite]:
    if text is None:
        return None
    face, _, pos = text.partition(":")
    try:
        return SurgerySite(int(face), int(pos) if pos else 0)
    except ValueError as exc:
        raise _Usage(f"bad site {text!r}; expected FACE or FACE:POSITION") from exc


def cmd_validate(args) -> int:
    obj, text = _load(args.file)
    report = _report(obj)
    if args.json:
        _write(args.json, dumps(report_document(obj, text)))
    print(f"{args.file}: {report.summary()}")
    for f in report.findings:
        ids = f" ({', '.join(str(x) for x in f.ids)})" if f.ids else ""
        print(f"  {f.severity} [{f.constraint}] {f.detail}{ids}")
    if report.face_count is not None:
        print(f"  faces: {report.face_count}")
    return OK if report.ok else INVALID


def cmd_classify(args) -> int:
    obj, _ = _load(args.file)
    if not _require_valid(obj, args.file):
        return INVALID
    h = _presentation(obj)
    g = presentation_from(h)
    for i, (t, r) in enumerate(zip(h.triplets, g.relators), start=1):
        letters = ",".join(h.names[x] for x in t.letters)
        print(f"T{i}  ({letters})  {classify_triplet(t, h.pairing):<5} {g.word_str(r)}")
    return OK


def cmd_group(args) -> int:
    obj, _ = _load(args.file)
    if not _require_valid(obj, args.file):
        return INVALID
    print(presentation_from(_presentation(obj)))
    return OK


def cmd_h1(args) -> int:
    obj, _ = _load(args.file)
    if not _require_valid(obj, args.file):
        return INVALID
    print(recognize(h1(_presentation(obj))))
    return OK


def cmd_faces(args) -> int:
    text = _read(args.file)
    d = parse_diagram(text)
    if not _require_valid(d, args.file):
        return INVALID
    names = d.names
    for i, face in enumerate(faces(d)):
        parts = []
        for dart in face:
            c, arc, forward = dart_info(d, dart)
            parts.append(f"{names[c]}[{arc}]{'>' if forward else '<'}")
        print(f"face {i} ({len(face)}): " + " ".join(parts))
    return OK


def cmd_sum(args) -> int:
    d1 = parse_diagram(_read(args.file1))
    d2 = parse_diagram(_read(args.file2))
    ok = _require_valid(d1, args.file1) & _require_valid(d2, args.file2)
    if not ok:
        return INVALID
    out = connected_sum(d1, d2, _site(args.site1), _site(args.site2))
    _write(args.output, serialize_diagram(out))
    if args.output != "-":
        print(f"{args.output}: p={out.p} k={out.k} H1={recognize(h1(out.presentation))}")
    return OK


def cmd_census(args) -> int:
    try:
        q = CensusQuery(args.triple_points, max_pairs=args.max_pairs,
                        allow_over_bound=args.allow_over_bound)
    except ValueError as exc:
        raise _Usage(str(exc)) from exc
    try:
        result = census_h1(q, workers=args.workers)
    except CensusLimitError as exc:
        print(f"census stopped early: {exc}", file=sys.stderr)
        return INTERNAL
    sys.stdout.write(result.table())
    if args.json:
        _write(args.json, result.to_json())
    if args.dump:
        chunks = [serialize_presentation(cp.presentation())
                  for cp in enumerate_presentations(q, workers=args.workers)]
        _write(args.dump, "\n".join(chunks))
    return OK


def cmd_render(args) -> int:
    obj, _ = _load(args.file)
    _write(args.dot, render_dot(obj))
    return OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="johansson", description="Johansson diagrams of filling Dehn spheres.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("validate", help="check a jdiag or hpres file")
    s.add_argument("file")
    s.add_argument("--json", metavar="OUT", help="also write the JSON report ('-' for stdout)")
    s.set_defaults(func=cmd_validate)

    for name, func, text in (("classify", cmd_classify, "triplet types and relators"),
                             ("group", cmd_group, "diagram group presentation"),
                             ("h1", cmd_h1, "first homology")):
        s = sub.add_parser(name, help=text)
        s.add_argument("file")
        s.set_defaults(func=func)

    s = sub.add_parser("faces", help="faces of an embedded diagram")
    s.add_argument("file")
    s.set_defaults(func=cmd_faces)

    s = sub.add_parser("sum", help="connected sum of two diagrams")
    s.add_argument("file1")
    s.add_argument("file2")
    s.add_argument("--site1", metavar="F[:POS]", help="finger site on the first diagram")
    s.add_argument("--site2", metavar="F[:POS]", help="pierced site on the second diagram")
    s.add_argument("-o", "--output", required=True)
    s.set_defaults(func=cmd_sum)

    s = sub.add_parser("census", help="enumerate Haken presentations and their H1")
    s.add_argument("--triple-points", type=int, required=True, metavar="P")
    s.add_argument("--max-pairs", type=int, metavar="K")
    s.add_argument("--allow-over-bound", action="store_true",
                   help="permit --max-pairs above the double curve bound")
    s.add_argument("--workers", type=int, default=1)
    s.add_argument("--json", metavar="OUT")
    s.add_argument("--dump", metavar="OUT", help="write every presentation in hpres format")
    s.set_defaults(func=cmd_census)

    s = sub.add_parser("render", help="curve crossing graph as DOT")
    s.add_argument("file")
    s.add_argument("--dot", required=True, metavar="OUT")
    s.set_defaults(func=cmd_render)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except _Usage as exc:
        print(exc, file=sys.stderr)
        return USAGE
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return USAGE
    except PreconditionError as exc:
        print(f"precondition failed: {exc}", file=sys.stderr)
        return INVALID
    except SystemExit as exc:  # --help / --version
        return int(exc.code or 0)
    except Exception as exc:  # SurgeryError and anything unforeseen
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return INTERNAL


if __name__ == "__main__":
    sys.exit(main())
