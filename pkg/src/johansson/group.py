"""Diagram group presentations and first homology.

One generator per sister pair: the lower-numbered curve of a pair is the
generator, its sister is the inverse.  Letters are nonzero integers,
``+(i+1)`` for generator ``i`` and ``-(i+1)`` for its inverse.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Optional, Sequence

from .diagram import HakenPresentation, Triplet, validate_presentation

__all__ = [
    "GroupPresentation",
    "AbelianGroup",
    "CosetResult",
    "PreconditionError",
    "relator_of_triplet",
    "presentation_from",
    "abelianize",
    "smith_normal_form",
    "h1",
    "recognize",
    "coset_enumeration",
]


class PreconditionError(ValueError):
    pass


@dataclass(frozen=True)
class GroupPresentation:
    generators: tuple[str, ...]
    relators: tuple[tuple[int, ...], ...]

    @property
    def ngens(self) -> int:
        return len(self.generators)

    def word_str(self, word: Sequence[int]) -> str:
        parts = []
        for x in word:
            name = self.generators[abs(x) - 1]
            parts.append(name if x > 0 else f"{name}^-1")
        return " ".join(parts) if parts else "1"

    def __str__(self) -> str:
        rels = ", ".join(self.word_str(r) for r in self.relators)
        return f"< {', '.join(self.generators)} | {rels} >"


@dataclass(frozen=True, order=True)
class AbelianGroup:
    free_rank: int
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        t = tuple(int(d) for d in self.torsion)
        if any(d <= 1 for d in t) or any(t[i + 1] % t[i] for i in range(len(t) - 1)):
            raise ValueError(f"not an invariant factor chain: {t}")
        object.__setattr__(self, "torsion", t)

    def __add__(self, other: "AbelianGroup") -> "AbelianGroup":
        return AbelianGroup.from_orders(self.free_rank + other.free_rank,
                                        self.torsion + other.torsion)

    @classmethod
    def from_orders(cls, free_rank: int, orders: Sequence[int]) -> "AbelianGroup":
        """Normalize an arbitrary list of cyclic orders into invariant factors."""
        diag = [[int(x)] for x in orders if abs(int(x)) != 1]
        if not diag:
            return cls(free_rank)
        m = [[x[0] if i == j else 0 for j in range(len(diag))] for i, x in enumerate(diag)]
        factors, _ = smith_normal_form(m)
        return cls(free_rank, tuple(f for f in factors if f > 1))

    @property
    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion


def _pair_generators(h: HakenPresentation):
    pairs = h.pairing.pairs()
    letter = {}
    for i, (c, t) in enumerate(pairs):
        letter[c] = i + 1
        letter[t] = -(i + 1)
    return pairs, letter


def relator_of_triplet(t: Triplet, h: HakenPresentation) -> tuple[int, int, int]:
    _, letter = _pair_generators(h)
    return tuple(letter[x] for x in t.letters)


def presentation_from(h: HakenPresentation) -> GroupPresentation:
    if not validate_presentation(h).ok:
        raise PreconditionError("presentation fails validation")
    pairs, letter = _pair_generators(h)
    gens = tuple(h.names[c] for c, _ in pairs)
    rels = tuple(tuple(letter[x] for x in t.letters) for t in h.triplets)
    return GroupPresentation(gens, rels)


def abelianize(g: GroupPresentation) -> list[list[int]]:
    """Exponent-sum matrix, one row per relator."""
    rows = []
    for r in g.relators:
        row = [0] * g.ngens
        for x in r:
            row[abs(x) - 1] += 1 if x > 0 else -1
        rows.append(row)
    return rows


def smith_normal_form(m: Sequence[Sequence[int]]) -> tuple[list[int], int]:
    """Nonzero invariant factors d1 | d2 | ... and the rank of an integer matrix."""
    a = [[int(x) for x in row] for row in m]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    factors = []
    t = 0
    while t < min(rows, cols):
        # smallest nonzero |entry| in the remaining block
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                if a[i][j] and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        i, j = best
        a[t], a[i] = a[i], a[t]
        for row in a:
            row[t], row[j] = row[j], row[t]
        while True:
            piv = a[t][t]
            done = True
            for i in range(t + 1, rows):
                q = a[i][t] // piv
                if q:
                    a[i] = [x - q * y for x, y in zip(a[i], a[t])]
                if a[i][t]:
                    done = False
            for j in range(t + 1, cols):
                q = a[t][j] // piv
                if q:
                    for row in a:
                        row[j] -= q * row[t]
                if a[t][j]:
                    done = False
            if done:
                # pivot must divide the rest of the block
                bad = next(((i, j) for i in range(t + 1, rows) for j in range(t + 1, cols)
                            if a[i][j] % piv), None)
                if bad is None:
                    break
                a[t] = [x + y for x, y in zip(a[t], a[bad[0]])]
                continue
            # move the smallest remainder into the pivot slot
            best = (t, t)
            for i in range(t, rows):
                if a[i][t] and abs(a[i][t]) < abs(a[best[0]][best[1]]):
                    best = (i, t)
            for j in range(t, cols):
                if a[t][j] and abs(a[t][j]) < abs(a[best[0]][best[1]]):
                    best = (t, j)
            i, j = best
            a[t], a[i] = a[i], a[t]
            for row in a:
                row[t], row[j] = row[j], row[t]
        factors.append(abs(a[t][t]))
        t += 1
    return factors, len(factors)


def h1(h: HakenPresentation) -> AbelianGroup:
    g = presentation_from(h)
    m = abelianize(g)
    factors, rank = smith_normal_form(m) if m else ([], 0)
    return AbelianGroup(g.ngens - rank, tuple(f for f in factors if f > 1))


def recognize(a: AbelianGroup) -> str:
    parts = []
    if a.free_rank == 1:
        parts.append("Z")
    elif a.free_rank > 1:
        parts.append(f"Z^{a.free_rank}")
    parts.extend(f"Z_{d}" for d in a.torsion)
    return "⊕".join(parts) if parts else "0"


@dataclass(frozen=True)
class CosetResult:
    order: Optional[int]  # None when the enumeration did not close

    @property
    def conclusive(self) -> bool:
        return self.order is not None


def coset_enumeration(g: GroupPresentation, max_cosets: int = 10_000) -> CosetResult:
    """Order of the group by Todd-Coxeter over the trivial subgroup, if it closes."""
    from sympy.combinatorics.coset_table import coset_enumeration_r
    from sympy.combinatorics.fp_groups import FpGroup
    from sympy.combinatorics.free_groups import free_group

    if g.ngens == 0:
        return CosetResult(1)
    F, *gens = free_group(",".join(f"g{i}" for i in range(g.ngens)))
    rels = []
    for r in g.relators:
        w = F.identity
        for x in r:
            w = w * (gens[abs(x) - 1] if x > 0 else gens[abs(x) - 1] ** -1)
        rels.append(w)
    try:
        table = coset_enumeration_r(FpGroup(F, rels), [], max_cosets=max_cosets)
    except ValueError:
        return CosetResult(None)
    table.compress()
    return CosetResult(len(table.table))
