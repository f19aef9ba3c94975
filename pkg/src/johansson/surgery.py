"""Connected sum of two diagrams: piping plus two fingers.

The second diagram is mirrored, then both are placed side by side.  A
finger pushed from an arc of one curve ``v1`` through an arc of ``v2`` on
the other side creates two double points, and a new sister pair ``x``,
``x*`` closes them into two triple points ``(x, w, v1)`` with
``w = tau v2``.  Its relator ``x w v1`` only eliminates ``x``, so the group
is the free product of the two input groups.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Optional

from .diagram import (
    HakenPresentation,
    JohanssonDiagram,
    SisterPairing,
    Triplet,
    dart_info,
    faces,
    sister_identification,
    validate_diagram,
)
from .group import PreconditionError

__all__ = [
    "SurgerySite",
    "PipingTemplate",
    "TEMPLATE",
    "SurgeryError",
    "mirror",
    "connected_sum",
]


class SurgeryError(RuntimeError):
    """The spliced diagram broke an invariant the template should guarantee."""


@dataclass(frozen=True)
class SurgerySite:
    face: int = 0
    position: int = 0  # index of the boundary dart within the face


@dataclass(frozen=True)
class PipingTemplate:
    """The fragment glued in by :func:`connected_sum`.

    Each copy of the triplet ``(x, w, tau u)`` has its role-1 point on an arc
    of ``u``, its role-2 point on an arc of ``w`` and its role-3 point where
    the finger arc of ``tau u`` meets the arc of ``tau w``.
    """

    new_pairs: int = 1
    letters: tuple[str, str, str] = ("x", "w", "tau u")
    copies: int = 2

    @property
    def new_points(self) -> int:
        return 3 * self.copies


TEMPLATE = PipingTemplate()


def mirror(d: JohanssonDiagram) -> JohanssonDiagram:
    """Orientation-reversed copy: every word reversed, every sign flipped."""
    return JohanssonDiagram(
        d.presentation,
        tuple(tuple(reversed(w)) for w in d.words),
        tuple(-s for s in d.signs),
        d.point_names,
    )


def _site_arc(d: JohanssonDiagram, site: SurgerySite, label: str):
    fs = faces(d)
    if not 0 <= site.face < len(fs):
        raise PreconditionError(f"{label}: face {site.face} out of range 0..{len(fs) - 1}")
    face = fs[site.face]
    if not 0 <= site.position < len(face):
        raise PreconditionError(
            f"{label}: position {site.position} out of range 0..{len(face) - 1}")
    return dart_info(d, face[site.position])


def _mirrored_arc(d: JohanssonDiagram, arc):
    # the same arc side, read in the reversed words of mirror(d)
    c, i, forward = arc
    n = len(d.words[c])
    return c, (n - 2 - i) % n, not forward


def _sister_slot(d: JohanssonDiagram, ident, curve: int, arc: int):
    """Where the sister image of ``arc`` of ``curve`` sits on ``tau curve``.

    Returns (index to insert after, reversed) on the sister's word.
    """
    sister = d.tau[curve]
    if ident is None:
        return 0, False
    pos = {x: i for i, x in enumerate(d.words[sister])}
    word = d.words[curve]
    n = len(word)
    j0 = pos[ident[word[arc]]]
    j1 = pos[ident[word[(arc + 1) % n]]]
    if n == 2 or j1 == (j0 + 1) % n:
        return j0, False
    return j1, True


def _rename(names, tag: str):
    out = []
    for name in names:
        base, stars = re.match(r"^(.*?)(\**)$", name).groups()
        out.append(f"{base}{tag}{stars}")
    return out


def _insert(word, after: int, items):
    return word[: after + 1] + list(items) + word[after + 1:]


def connected_sum(d1: JohanssonDiagram, d2: JohanssonDiagram,
                  s1: Optional[SurgerySite] = None,
                  s2: Optional[SurgerySite] = None) -> JohanssonDiagram:
    """Diagram of the connected sum, with ``p1 + p2 + 2`` triple points.

    ``s1`` picks the finger arc on ``d1`` and ``s2`` the arc it pierces on
    ``d2``, both as (face, boundary position) in the faces of the given
    diagrams.  Original triplets of ``d1`` and of the mirrored ``d2``
    survive with renamed curves and points.
    """
    for label, d in (("first", d1), ("second", d2)):
        report = validate_diagram(d)
        if not report.ok:
            raise PreconditionError(f"{label} diagram is invalid: {report.summary()}")
    s1 = s1 or SurgerySite()
    s2 = s2 or SurgerySite()
    v1, i1, f1 = _site_arc(d1, s1, "site1")
    c2, i2, f2 = _mirrored_arc(d2, _site_arc(d2, s2, "site2"))
    m2 = mirror(d2)

    n1, m1 = len(d1.tau), len(d1.signs)
    n2, m2pts = len(m2.tau), len(m2.signs)
    x, tx = n1 + n2, n1 + n2 + 1
    v2 = n1 + c2
    u, w = d1.tau[v1], n1 + m2.tau[c2]

    words = [list(wd) for wd in d1.words]
    words += [[(q + m1, s) for q, s in wd] for wd in m2.words]
    words += [[], []]
    signs = list(d1.signs) + list(m2.signs)

    base = m1 + m2pts
    F = (base, base + 1)      # finger crossings, in order along v1
    B = (base + 2, base + 3)  # on u, matched with F
    C = (base + 4, base + 5)  # on w, matched with F

    # finger: v1 runs east when its face lies on its left, v2 runs west
    # when its face lies on its left; F[0] sits at x=1 iff v1 runs east
    e2 = 1 if f2 else -1
    signs += [-e2, e2]
    words[v1] = _insert(words[v1], i1, [(F[0], 0), (F[1], 0)])
    at_one = F[0] if f1 else F[1]
    at_two = F[1] if f1 else F[0]
    met = [at_two, at_one] if f2 else [at_one, at_two]
    words[v2] = _insert(words[v2], i2, [(met[0], 1), (met[1], 1)])

    # x straddles the sister image of the finger arc on u
    j, rev = _sister_slot(d1, sister_identification(d1), v1, i1)
    along_u = [B[1], B[0]] if rev else [B[0], B[1]]
    words[u] = _insert(words[u], j, [(along_u[0], 0), (along_u[1], 0)])
    words[x] = [(along_u[0], 1), (along_u[1], 1)]

    # x* straddles the sister image of the pierced arc on w
    ident2 = sister_identification(m2)
    j, rev = _sister_slot(m2, ident2, c2, i2)
    matched = {F[0]: C[0], F[1]: C[1]}
    along_w = [matched[met[1]], matched[met[0]]] if rev else [matched[met[0]], matched[met[1]]]
    words[w] = _insert(words[w], j, [(along_w[0], 0), (along_w[1], 0)])
    words[tx] = [(along_w[0], 1), (along_w[1], 1)]

    sign_of = {along_u[0]: 1, along_u[1]: -1, along_w[0]: 1, along_w[1]: -1}
    signs += [sign_of[q] for q in (*B, *C)]

    names = (_rename(d1.names, "1") + _rename(d2.names, "2") + ["x", "x*"])
    tau = list(d1.tau) + [n1 + t for t in m2.tau] + [tx, x]
    triplets = [Triplet(t.a, t.c, t.g, t.points) for t in d1.presentation.triplets]
    triplets += [
        Triplet(n1 + t.a, n1 + t.c, n1 + t.g, tuple(q + m1 for q in t.points))
        for t in m2.presentation.triplets
    ]
    triplets += [Triplet(x, w, v1, (B[i], C[i], F[i])) for i in range(TEMPLATE.copies)]
    h = HakenPresentation(SisterPairing(tuple(names), tuple(tau)), tuple(triplets))
    out = JohanssonDiagram(h, tuple(tuple(wd) for wd in words), tuple(signs))

    report = validate_diagram(out)
    if not report.ok:
        raise SurgeryError(f"spliced diagram is invalid: {report.summary()}")
    if out.p != d1.p + d2.p + TEMPLATE.copies or out.k != d1.k + d2.k + TEMPLATE.new_pairs:
        raise SurgeryError("spliced diagram has the wrong number of triplets or pairs")
    return out
