"""Text formats, the JSON report and the crossing graph."""

from johansson import fixtures
from johansson.diagram import forget_embedding
from johansson.io import (
    ParseError,
    dumps,
    parse,
    render_dot,
    report_document,
    serialize_presentation,
)

text = fixtures.text("audi")
d = parse(text)
print(serialize_presentation(forget_embedding(d)))
print(dumps(report_document(d, text)))
print(render_dot(d))

try:
    parse("jdiag 1\npairs: a/a*\ntriplet (a,a) points 1 2 3\n")
except ParseError as exc:
    print("rejected:", exc)
