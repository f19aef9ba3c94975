"""Abstract Johansson diagrams and embedding-free Haken presentations.

Curves are integers ``0 .. n-1``; ``tau[c]`` is the sister of curve ``c``.
A triplet ``(a, c, g)`` stands for one triple point.  Its three double points
cross the curve pairs

    role 1: {a, tau g}    role 2: {tau a, c}    role 3: {g, tau c}

and its relator is the word ``a c g``.  The six forms obtained by cyclic
rotation and by ``(a, c, g) -> (tau g, tau c, tau a)`` describe the same
triple point; the lexicographically least one is the stored form.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional, Sequence

__all__ = [
    "SisterPairing",
    "Triplet",
    "HakenPresentation",
    "JohanssonDiagram",
    "DoublePoint",
    "Finding",
    "ValidationReport",
    "StructureError",
    "TRIPLET_TYPES",
    "validate_presentation",
    "validate_diagram",
    "classify_triplet",
    "curve_crossing_graph",
    "is_connected",
    "faces",
    "dart_info",
    "forget_embedding",
    "double_curve_count",
    "double_curve_bound",
    "bound_check",
    "sister_identification",
]

TRIPLET_TYPES = ("I.1", "I.2", "II.1", "II.2", "III")

PASS_MESSAGE = "passes all checked necessary conditions"


class StructureError(ValueError):
    """Words, points and triplets of a diagram do not reference each other consistently."""


@dataclass(frozen=True)
class SisterPairing:
    names: tuple[str, ...]
    tau: tuple[int, ...]

    @classmethod
    def standard(cls, k: int, names: Optional[Sequence[str]] = None) -> "SisterPairing":
        """``k`` pairs laid out as curves ``2i`` and ``2i+1``."""
        if names is None:
            names = [n for i in range(k) for n in (f"x{i}", f"x{i}*")]
        return cls(tuple(names), tuple(c ^ 1 for c in range(2 * k)))

    def __len__(self) -> int:
        return len(self.tau)

    @property
    def k(self) -> int:
        return len(self.tau) // 2

    def is_involution(self) -> bool:
        n = len(self.tau)
        return all(0 <= t < n for t in self.tau) and all(
            self.tau[self.tau[c]] == c for c in range(n)
        )

    def fixed_points(self) -> list[int]:
        return [c for c, t in enumerate(self.tau) if t == c]

    def is_valid(self) -> bool:
        return (
            len(self.names) == len(self.tau)
            and self.is_involution()
            and not self.fixed_points()
        )

    def pairs(self) -> list[tuple[int, int]]:
        """Sister pairs ``(c, tau c)`` with ``c < tau c``, in curve order."""
        return [(c, t) for c, t in enumerate(self.tau) if c < t]

    def pair_index(self) -> dict[int, int]:
        """Curve -> index of its sister pair (one generator per pair)."""
        index = {}
        for i, (c, t) in enumerate(self.pairs()):
            index[c] = index[t] = i
        return index


@dataclass(frozen=True)
class Triplet:
    a: int
    c: int
    g: int
    # double point ids for roles 1, 2, 3; None at the presentation level
    points: Optional[tuple[int, int, int]] = None

    @property
    def letters(self) -> tuple[int, int, int]:
        return (self.a, self.c, self.g)

    def crossings(self, tau: Sequence[int]) -> tuple[tuple[int, int], ...]:
        a, c, g = self.a, self.c, self.g
        return ((a, tau[g]), (tau[a], c), (g, tau[c]))

    def forms(self, tau: Sequence[int]) -> Iterator["Triplet"]:
        """The six labellings of the same triple point (points permuted along)."""
        a, c, g = self.a, self.c, self.g
        p = self.points
        ta, tc, tg = tau[a], tau[c], tau[g]

        def perm(i, j, k):
            return None if p is None else (p[i], p[j], p[k])

        yield Triplet(a, c, g, p)
        yield Triplet(c, g, a, perm(1, 2, 0))
        yield Triplet(g, a, c, perm(2, 0, 1))
        yield Triplet(tg, tc, ta, perm(0, 2, 1))
        yield Triplet(tc, ta, tg, perm(2, 1, 0))
        yield Triplet(ta, tg, tc, perm(1, 0, 2))

    def normalized(self, tau: Sequence[int]) -> "Triplet":
        return min(self.forms(tau), key=lambda t: t.letters)

    def without_points(self) -> "Triplet":
        return Triplet(self.a, self.c, self.g)


@dataclass(frozen=True)
class HakenPresentation:
    pairing: SisterPairing
    triplets: tuple[Triplet, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "triplets", tuple(self.triplets))
        tau = self.pairing.tau
        n = len(tau)
        in_range = all(0 <= x < n for t in self.triplets for x in t.letters)
        if self.pairing.is_involution() and in_range:
            object.__setattr__(
                self, "triplets", tuple(t.normalized(tau) for t in self.triplets)
            )

    @classmethod
    def standard(cls, k: int, triplets: Iterable[Sequence[int]],
                 names: Optional[Sequence[str]] = None) -> "HakenPresentation":
        return cls(SisterPairing.standard(k, names), tuple(Triplet(*t) for t in triplets))

    @property
    def tau(self) -> tuple[int, ...]:
        return self.pairing.tau

    @property
    def names(self) -> tuple[str, ...]:
        return self.pairing.names

    @property
    def k(self) -> int:
        return self.pairing.k

    @property
    def p(self) -> int:
        return len(self.triplets)

    def crossing_pairs(self) -> list[tuple[int, int]]:
        """Every induced crossing as a sorted curve pair (self-crossings included)."""
        out = []
        for t in self.triplets:
            for x, y in t.crossings(self.tau):
                out.append((min(x, y), max(x, y)))
        return out

    def passages(self) -> Counter:
        count: Counter = Counter()
        for x, y in self.crossing_pairs():
            count[x] += 1
            count[y] += 1
        return count

    def key(self) -> tuple:
        """Order-insensitive comparison key (triplet multiset, no points)."""
        return (self.pairing, tuple(sorted(t.letters for t in self.triplets)))


@dataclass(frozen=True)
class DoublePoint:
    id: int
    slot0: tuple[int, int]  # (curve, position in its word)
    slot1: tuple[int, int]
    sign: int


@dataclass(frozen=True)
class JohanssonDiagram:
    """A presentation together with its embedding in the sphere.

    ``words[c]`` is the cyclic sequence of passages ``(point, slot)`` along
    curve ``c``.  ``signs[point]`` is +1 when the slot-1 strand crosses the
    slot-0 strand from left to right, seen along the slot-0 strand.
    """

    presentation: HakenPresentation
    words: tuple[tuple[tuple[int, int], ...], ...]
    signs: tuple[int, ...]
    point_names: tuple[str, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "words", tuple(tuple(tuple(x) for x in w) for w in self.words))
        object.__setattr__(self, "signs", tuple(self.signs))
        if not self.point_names:
            object.__setattr__(self, "point_names", tuple(str(i + 1) for i in range(len(self.signs))))

    @property
    def p(self) -> int:
        return self.presentation.p

    @property
    def k(self) -> int:
        return self.presentation.k

    @property
    def tau(self) -> tuple[int, ...]:
        return self.presentation.tau

    @property
    def names(self) -> tuple[str, ...]:
        return self.presentation.names

    @property
    def n_points(self) -> int:
        return len(self.signs)

    def locate(self) -> dict[tuple[int, int], tuple[int, int]]:
        """(point, slot) -> (curve, index in word)."""
        where = {}
        for c, word in enumerate(self.words):
            for i, passage in enumerate(word):
                where[passage] = (c, i)
        return where

    def double_points(self) -> list[DoublePoint]:
        where = self.locate()
        return [
            DoublePoint(q, where[(q, 0)], where[(q, 1)], self.signs[q])
            for q in range(self.n_points)
        ]

    def point_curves(self, q: int) -> tuple[int, int]:
        where = self.locate()
        return (where[(q, 0)][0], where[(q, 1)][0])


@dataclass(frozen=True)
class Finding:
    constraint: str
    severity: str  # "error" | "warning" | "info"
    detail: str
    ids: tuple = ()


@dataclass
class ValidationReport:
    findings: list[Finding] = field(default_factory=list)
    face_count: Optional[int] = None

    @property
    def ok(self) -> bool:
        return not any(f.severity == "error" for f in self.findings)

    @property
    def verdict(self) -> str:
        return "pass" if self.ok else "fail"

    def errors(self) -> list[Finding]:
        return [f for f in self.findings if f.severity == "error"]

    def constraints(self) -> set[str]:
        return {f.constraint for f in self.errors()}

    def add(self, constraint, detail, ids=(), severity="error"):
        self.findings.append(Finding(constraint, severity, detail, tuple(ids)))

    def summary(self) -> str:
        if self.ok:
            return PASS_MESSAGE
        return f"{len(self.errors())} violated constraint(s): " + ", ".join(sorted(self.constraints()))


# ---------------------------------------------------------------------------
# presentation-level checks


def curve_crossing_graph(h: HakenPresentation):
    """Multigraph on curves; one edge per induced crossing, self-crossings as loops.

    Returns ``(vertices, edges, loops)`` where edges and loops are lists of
    ``(x, y, triplet index, role)``.
    """
    edges, loops = [], []
    for i, t in enumerate(h.triplets):
        for role, (x, y) in enumerate(t.crossings(h.tau), start=1):
            x, y = min(x, y), max(x, y)
            (loops if x == y else edges).append((x, y, i, role))
    return list(range(len(h.tau))), edges, loops


def is_connected(n: int, edges: Iterable[tuple]) -> bool:
    if n == 0:
        return True
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in edges:
        rx, ry = find(e[0]), find(e[1])
        if rx != ry:
            parent[rx] = ry
    root = find(0)
    return all(find(x) == root for x in range(n))


def _check_presentation(h: HakenPresentation, report: ValidationReport) -> bool:
    """Append presentation findings; False when the pairing is unusable."""
    pairing = h.pairing
    n = len(pairing.tau)
    if len(pairing.names) != n:
        report.add("structure", "pairing names and tau differ in length")
        return False
    if not all(0 <= t < n for t in pairing.tau):
        report.add("tau.range", "tau maps outside the curve set")
        return False
    bad = [c for c in range(n) if pairing.tau[pairing.tau[c]] != c]
    if bad:
        report.add("tau.involution", "tau is not an involution",
                   [pairing.names[c] for c in bad])
        return False
    fixed = pairing.fixed_points()
    if fixed:
        report.add("tau.fixed-point", "curve is its own sister",
                   [pairing.names[c] for c in fixed])
        return False

    for i, t in enumerate(h.triplets):
        if not all(0 <= x < n for x in t.letters):
            report.add("curve.unknown", f"triplet {i} names an unknown curve", [i])
            return False

    if n and not h.triplets:
        report.add("nonempty", "curves present but no triplets")

    tau, names = pairing.tau, pairing.names
    pair_counts = Counter((x, y) for x, y in h.crossing_pairs() if x != y)
    for (x, y), m in sorted(pair_counts.items()):
        if m % 2:
            report.add("parity", f"curves {names[x]} and {names[y]} cross {m} times",
                       [names[x], names[y]])

    passes = h.passages()
    for c in range(n):
        if c < tau[c] and passes[c] != passes[tau[c]]:
            report.add("symmetry", f"{names[c]} has {passes[c]} passages, "
                       f"{names[tau[c]]} has {passes[tau[c]]}", [names[c], names[tau[c]]])

    _, edges, _ = curve_crossing_graph(h)
    if n and not is_connected(n, edges):
        report.add("connectivity", "curve crossing graph is disconnected")

    if h.triplets and not bound_check(h):
        report.add("curve-bound", f"{h.k} double curves exceed (2+3p)/4 with p={h.p}")
    return True


def validate_presentation(h: HakenPresentation) -> ValidationReport:
    report = ValidationReport()
    _check_presentation(h, report)
    return report


def classify_triplet(t: Triplet, pairing: SisterPairing | Sequence[int]) -> str:
    tau = pairing.tau if isinstance(pairing, SisterPairing) else pairing
    distinct = {min(x, tau[x]) for x in t.letters}
    self_cross = any(x == y for x, y in t.crossings(tau))
    if len(distinct) == 1:
        return "I.1" if self_cross else "I.2"
    if len(distinct) == 2:
        return "II.1" if self_cross else "II.2"
    return "III"


def double_curve_count(h: HakenPresentation) -> int:
    return h.k


def double_curve_bound(p: int) -> int:
    """Largest k with k <= (2+3p)/4."""
    return (2 + 3 * p) // 4


def bound_check(h: HakenPresentation) -> bool:
    return 4 * h.k <= 2 + 3 * h.p


# ---------------------------------------------------------------------------
# diagrams

# clockwise order of half-edges around a double point; half-edge code
# is 4*point + 2*slot + dir with dir 0 = incoming, 1 = outgoing
_ROTATION = {
    1: ((0, 0), (1, 0), (0, 1), (1, 1)),
    -1: ((0, 0), (1, 1), (0, 1), (1, 0)),
}


def _structure_problems(d: JohanssonDiagram) -> list[Finding]:
    out = []
    n_curves = len(d.presentation.tau)
    if len(d.words) != n_curves:
        out.append(Finding("structure", "error", f"{len(d.words)} words for {n_curves} curves"))
        return out
    m = d.n_points
    seen = Counter()
    for c, word in enumerate(d.words):
        for q, s in word:
            if not (0 <= q < m) or s not in (0, 1):
                out.append(Finding("structure", "error", f"bad passage {q}.{s} on curve {c}", (c,)))
            else:
                seen[(q, s)] += 1
    for q in range(m):
        for s in (0, 1):
            if seen[(q, s)] != 1:
                name = d.point_names[q] if q < len(d.point_names) else str(q)
                out.append(Finding("structure", "error",
                                   f"point {name} slot {s} referenced {seen[(q, s)]} times", (name,)))
    for q, sign in enumerate(d.signs):
        if sign not in (1, -1):
            out.append(Finding("structure", "error", f"point {q} has sign {sign}", (q,)))
    return out


def faces(d: JohanssonDiagram) -> list[tuple[int, ...]]:
    """Boundary cycles of the complementary regions, as lists of darts.

    A dart is a half-edge code ``4*point + 2*slot + dir``: it leaves its
    point along the adjacent arc, forwards when ``dir`` is 1.  The region
    lies on the left of the walk.
    """
    problems = _structure_problems(d)
    if problems:
        raise StructureError("; ".join(f.detail for f in problems))
    m = d.n_points
    alpha = [0] * (4 * m)
    for word in d.words:
        n = len(word)
        for i in range(n):
            (q0, s0), (q1, s1) = word[i], word[(i + 1) % n]
            out_h = 4 * q0 + 2 * s0 + 1
            in_h = 4 * q1 + 2 * s1
            alpha[out_h] = in_h
            alpha[in_h] = out_h
    sigma = [0] * (4 * m)
    for q in range(m):
        rot = [4 * q + 2 * s + e for s, e in _ROTATION[d.signs[q]]]
        for i in range(4):
            sigma[rot[i]] = rot[(i + 1) % 4]
    seen = [False] * (4 * m)
    cycles = []
    for h0 in range(4 * m):
        if seen[h0]:
            continue
        cycle = []
        h = h0
        while not seen[h]:
            seen[h] = True
            cycle.append(h)
            h = sigma[alpha[h]]
        cycles.append(tuple(cycle))
    return cycles


def dart_info(d: JohanssonDiagram, dart: int) -> tuple[int, int, bool]:
    """(curve, arc index, forward) of a dart; arc i joins passages i and i+1."""
    q, rest = divmod(dart, 4)
    s, e = divmod(rest, 2)
    c, i = d.locate()[(q, s)]
    if e == 1:
        return c, i, True
    return c, (i - 1) % len(d.words[c]), False


def _letter_occurrences(t: Triplet, tau):
    """(point, curve, tag) per passage; equal tags up to case are identified."""
    a, c, g = t.letters
    p1, p2, p3 = t.points
    return [(p1, a, "A"), (p1, tau[g], "g"), (p2, tau[a], "a"),
            (p2, c, "C"), (p3, g, "G"), (p3, tau[c], "c")]


def sister_identification(d: JohanssonDiagram, max_choices: int = 1 << 12):
    """Passage -> passage map identifying each curve with its sister.

    Each triple point identifies one passage of ``x`` with one passage of
    ``tau x`` for every letter.  At a self-crossing the two passages carry
    two letters and either assignment is tried.  Returns None when some
    sister pair admits no assignment under which the two words agree up to
    rotation and reversal, or when the search exceeds ``max_choices``.
    """
    h = d.presentation
    tau = h.tau
    where = d.locate()
    occ_by_point: dict[int, list] = {}
    for t in h.triplets:
        for q, curve, tag in _letter_occurrences(t, tau):
            occ_by_point.setdefault(q, []).append((curve, tag, id(t)))
    partner = {}
    pair_of = h.pairing.pair_index()
    for i, (c0, c1) in enumerate(h.pairing.pairs()):
        points = sorted({q for q, _ in d.words[c0]} | {q for q, _ in d.words[c1]})
        fixed, ambiguous = {}, []
        for q in points:
            (x0, _), (x1, _) = where[(q, 0)], where[(q, 1)]
            occs = [o for o in occ_by_point[q] if pair_of[o[0]] == i]
            if x0 == x1:
                ambiguous.append((q, occs))
            else:
                for curve, tag, tid in occs:
                    fixed[(tid, tag)] = (q, 0 if curve == x0 else 1)
        if 1 << len(ambiguous) > max_choices:
            return None
        found = None
        for choice in itertools.product((0, 1), repeat=len(ambiguous)):
            slots = dict(fixed)
            for (q, occs), s in zip(ambiguous, choice):
                slots[(occs[0][2], occs[0][1])] = (q, s)
                slots[(occs[1][2], occs[1][1])] = (q, 1 - s)
            local = {}
            for (tid, tag), passage in slots.items():
                if tag.isupper():
                    other = slots[(tid, tag.lower())]
                    local[passage] = other
                    local[other] = passage
            img = [local[x] for x in d.words[c0]]
            target = list(d.words[c1])
            if _cyclic_match(img, target):
                found = local
                break
        if found is None:
            return None
        partner.update(found)
    return partner


def _cyclic_match(img, target) -> bool:
    n = len(target)
    if len(img) != n:
        return False
    if n == 0:
        return True
    for seq in (img, img[::-1]):
        for s in range(n):
            if seq[s:] + seq[:s] == target:
                return True
    return False


def validate_diagram(d: JohanssonDiagram) -> ValidationReport:
    report = ValidationReport()
    h = d.presentation
    if not _check_presentation(h, report):
        return report
    problems = _structure_problems(d)
    report.findings.extend(problems)
    if problems:
        return report

    names = h.names
    owner = Counter()
    for i, t in enumerate(h.triplets):
        if t.points is None:
            report.add("partition", f"triplet {i} has no points", [i])
            continue
        for q in t.points:
            owner[q] += 1
    for q in range(d.n_points):
        if owner[q] != 1:
            report.add("partition", f"point {d.point_names[q]} belongs to {owner[q]} triplets",
                       [d.point_names[q]])
    if not report.ok:
        return report

    for i, t in enumerate(h.triplets):
        for role, ((x, y), q) in enumerate(zip(t.crossings(h.tau), t.points), start=1):
            got = sorted(d.point_curves(q))
            if got != sorted((x, y)):
                report.add("role", f"point {d.point_names[q]} (role {role} of triplet {i}) "
                           f"crosses {names[got[0]]},{names[got[1]]}; pattern wants "
                           f"{names[x]},{names[y]}", [d.point_names[q]])

    for c, t in enumerate(h.tau):
        if c < t and len(d.words[c]) != len(d.words[t]):
            report.add("symmetry", f"word lengths of {names[c]} and {names[t]} differ",
                       [names[c], names[t]])

    if not report.ok:
        return report
    p = h.p
    found = faces(d)
    report.face_count = len(found)
    if d.n_points != 3 * p:
        report.add("euler", f"{d.n_points} double points, expected {3 * p}")
    if len(found) != 3 * p + 2:
        report.add("euler", f"face tracing gives F={len(found)}, expected {3 * p + 2}",
                   [len(found)])
    if sister_identification(d) is None:
        report.add("identification", "sister words do not correspond under the triplet "
                   "identification", severity="warning")
    return report


def forget_embedding(d: JohanssonDiagram) -> HakenPresentation:
    h = d.presentation
    return HakenPresentation(h.pairing, tuple(t.without_points() for t in h.triplets))
