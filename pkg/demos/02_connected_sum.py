"""Connected sum at the diagram level: two more triple points, additive H1."""

from johansson import fixtures, h1, recognize, validate_diagram
from johansson.diagram import faces
from johansson.io import serialize_diagram
from johansson.surgery import SurgerySite, connected_sum

star = fixtures.load("star_L31")
twice = connected_sum(star, star)
print(f"L(3,1) # L(3,1): p={twice.p} k={twice.k} H1={recognize(h1(twice.presentation))}")
print(validate_diagram(twice).summary())
print(serialize_diagram(twice))

# every site gives the same homology
audi = fixtures.load("audi")
seen = set()
for f, face in enumerate(faces(audi)):
    for pos in range(len(face)):
        out = connected_sum(audi, star, SurgerySite(f, pos))
        seen.add((out.p, recognize(h1(out.presentation))))
print("audi # star over all sites:", seen)
