"""Load the shipped diagrams, check them and read off H1."""

from johansson import classify_triplet, fixtures, forget_embedding, h1, recognize, validate_diagram
from johansson.group import coset_enumeration, presentation_from

for name in fixtures.names():
    d = fixtures.load(name)
    report = validate_diagram(d)
    h = forget_embedding(d)
    kinds = [classify_triplet(t, h.pairing) for t in h.triplets]
    manifold, _ = fixtures.CATALOG[name]
    print(f"{name:<9} {manifold:<10} p={d.p} k={d.k} F={report.face_count} "
          f"types={kinds} H1={recognize(h1(h))}")

# the whole group, not just its abelianization, for the finite cases
for name in ("shima_a", "star_L31"):
    g = presentation_from(fixtures.load(name).presentation)
    print(name, g, "order", coset_enumeration(g).order)
