"""Exhaustive enumeration of Haken presentations up to relabelling.

Two presentations are equivalent when they differ by a permutation of the
sister pairs, by swapping the two curves of some pairs, by reordering the
triplets or by relabelling a triplet within its six forms.  The census
emits exactly one canonical representative (the lexicographic minimum) per
class, generated in non-decreasing triplet order with parity pruning.
"""

from __future__ import annotations

import itertools
import json
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator, Optional

from .diagram import (
    TRIPLET_TYPES,
    HakenPresentation,
    SisterPairing,
    Triplet,
    classify_triplet,
    double_curve_bound,
    is_connected,
)
from .group import h1, recognize

__all__ = [
    "CensusQuery",
    "CanonicalPresentation",
    "CensusResult",
    "CensusLimitError",
    "canonical_form",
    "enumerate_presentations",
    "naive_enumerate",
    "census_h1",
    "verify_lemma_no_type_I",
    "CYCLIC_NAMES",
    "CANDIDATE_NAMES",
]

CYCLIC_NAMES = frozenset({"0", "Z", "Z_2", "Z_3", "Z_4", "Z_5", "Z_6"})
# abelianizations of the candidate fundamental groups at complexity <= 4;
# both <a,b | ab^-1 = ba> and <a,b | a^2 = b^2> abelianize to Z + Z_2
CANDIDATE_NAMES = CYCLIC_NAMES | {"Z^2", "Z⊕Z_2"}


class CensusLimitError(RuntimeError):
    """The candidate cap was hit; ``partial`` holds what was found so far."""

    def __init__(self, message, partial):
        super().__init__(message)
        self.partial = partial


@dataclass(frozen=True)
class CensusQuery:
    p: int
    max_pairs: Optional[int] = None
    pairs: Optional[int] = None  # fix k exactly
    require_types: frozenset = frozenset()
    forbid_types: frozenset = frozenset()
    check_parity: bool = True
    allow_over_bound: bool = False
    max_candidates: Optional[int] = None

    def __post_init__(self):
        if self.p < 0 or self.p % 2:
            raise ValueError("the number of triple points must be even and non-negative")
        bound = double_curve_bound(self.p)
        if self.max_pairs is None:
            object.__setattr__(self, "max_pairs", bound)
        elif self.max_pairs > bound and not self.allow_over_bound:
            raise ValueError(f"max_pairs {self.max_pairs} exceeds the bound {bound}; "
                             "pass allow_over_bound to override")
        if self.p >= 2 and self.max_pairs < 1:
            raise ValueError("max_pairs must be at least 1")
        for t in self.require_types | self.forbid_types:
            if t not in TRIPLET_TYPES:
                raise ValueError(f"unknown triplet type {t!r}")
        object.__setattr__(self, "require_types", frozenset(self.require_types))
        object.__setattr__(self, "forbid_types", frozenset(self.forbid_types))

    def pair_counts(self) -> list[int]:
        if self.pairs is not None:
            return [self.pairs] if self.pairs <= self.max_pairs else []
        return list(range(1, self.max_pairs + 1))


@dataclass(frozen=True, order=True)
class CanonicalPresentation:
    """Canonical representative over the standard pairing (curves 2i, 2i+1)."""

    k: int
    triplets: tuple[tuple[int, int, int], ...]

    @property
    def p(self) -> int:
        return len(self.triplets)

    def presentation(self, names=None) -> HakenPresentation:
        return HakenPresentation.standard(self.k, self.triplets, names)


# ---------------------------------------------------------------------------
# canonical forms


def _normal_letters(t, tau):
    return Triplet(*t).normalized(tau).letters


def _relabellings(k):
    """All maps curve -> curve from pair permutations and sister swaps."""
    for perm in itertools.permutations(range(k)):
        for swaps in itertools.product((0, 1), repeat=k):
            yield tuple(2 * perm[c >> 1] + ((c & 1) ^ swaps[c >> 1]) for c in range(2 * k))


def _standardize(h: HakenPresentation) -> tuple[int, list[tuple[int, int, int]]]:
    pairing = h.pairing
    if not pairing.is_valid():
        raise ValueError("canonical_form needs a fixed-point-free involution")
    relabel = {}
    for i, (c, t) in enumerate(pairing.pairs()):
        relabel[c], relabel[t] = 2 * i, 2 * i + 1
    return pairing.k, [tuple(relabel[x] for x in t.letters) for t in h.triplets]


def canonical_form(h: HakenPresentation) -> CanonicalPresentation:
    k, triplets = _standardize(h)
    tau = [c ^ 1 for c in range(2 * k)]
    best = None
    for m in _relabellings(k):
        image = tuple(sorted(_normal_letters(tuple(m[x] for x in t), tau) for t in triplets))
        if best is None or image < best:
            best = image
    return CanonicalPresentation(k, best if best is not None else ())


# ---------------------------------------------------------------------------
# constraint checks on standard triplet tuples


def _crossings(t):
    a, c, g = t
    return ((a, g ^ 1), (a ^ 1, c), (g, c ^ 1))


def _odd_pairs(triplets):
    count = Counter()
    for t in triplets:
        for x, y in _crossings(t):
            if x != y:
                count[(min(x, y), max(x, y))] += 1
    return {e for e, m in count.items() if m % 2}


def _connected(k, triplets):
    edges = [e for t in triplets for e in _crossings(t) if e[0] != e[1]]
    return is_connected(2 * k, edges)


def _valid(k, triplets, check_parity=True):
    if not triplets:
        return k == 0
    used = {x >> 1 for t in triplets for x in t}
    if len(used) != k:
        return False
    if check_parity and _odd_pairs(triplets):
        return False
    return _connected(k, triplets)


# ---------------------------------------------------------------------------
# enumeration


@lru_cache(maxsize=None)
def _tables(k):
    """Sorted triplet representatives and their images under every relabelling."""
    tau = [c ^ 1 for c in range(2 * k)]
    reps = sorted({_normal_letters(t, tau) for t in itertools.product(range(2 * k), repeat=3)})
    index = {r: i for i, r in enumerate(reps)}
    images = []
    for m in _relabellings(k):
        row = tuple(index[_normal_letters(tuple(m[x] for x in r), tau)] for r in reps)
        images.append(row)
    types = tuple(classify_triplet(Triplet(*r), tau) for r in reps)
    return tuple(reps), tuple(images), types


def _is_minimal(chosen, images):
    for row in images:
        image = sorted(row[i] for i in chosen)
        if tuple(image) < chosen:
            return False
    return True


def _search_partition(args):
    """All canonical representatives of one (k, first triplet) partition."""
    q, k, first = args
    reps, images, types = _tables(k)
    p = q.p
    out = []
    visited = 0

    def extend(chosen, odd):
        nonlocal visited
        depth = len(chosen)
        remaining = p - depth
        if q.check_parity and len(odd) > 3 * remaining:
            return
        if remaining == 0:
            visited += 1
            if q.max_candidates is not None and visited > q.max_candidates:
                raise CensusLimitError("candidate cap exceeded", list(out))
            trip = [reps[i] for i in chosen]
            kinds = {types[i] for i in chosen}
            if q.require_types and not q.require_types <= kinds:
                return
            if kinds & q.forbid_types:
                return
            if not _valid(k, trip, q.check_parity):
                return
            if _is_minimal(tuple(chosen), images):
                out.append(CanonicalPresentation(k, tuple(trip)))
            return
        for i in range(chosen[-1], len(reps)):
            nxt = odd
            if q.check_parity:
                nxt = set(odd)
                for x, y in _crossings(reps[i]):
                    if x != y:
                        nxt ^= {(min(x, y), max(x, y))}
            extend(chosen + [i], nxt)

    odd0 = _odd_pairs([reps[first]]) if q.check_parity else set()
    extend([first], odd0)
    return out


def _partitions(q: CensusQuery):
    if q.p == 0:
        return []
    jobs = []
    for k in q.pair_counts():
        reps, images, _ = _tables(k)
        for first in range(len(reps)):
            # the first triplet of a canonical form is minimal in its orbit
            if all(row[first] >= first for row in images):
                jobs.append((q, k, first))
    return jobs


def enumerate_presentations(q: CensusQuery, workers: int = 1) -> Iterator[CanonicalPresentation]:
    """Canonical representatives of every valid presentation, sorted by (k, triplets)."""
    jobs = _partitions(q)
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_search_partition, jobs, chunksize=4))
    else:
        parts = [_search_partition(job) for job in jobs]
    # partitions are disjoint and each is internally sorted; a global sort
    # keeps the merge independent of scheduling
    yield from sorted(itertools.chain.from_iterable(parts))


def naive_enumerate(q: CensusQuery) -> list[CanonicalPresentation]:
    """Generate every ordered triplet tuple, validate, canonicalize, deduplicate."""
    found = set()
    for k in q.pair_counts():
        tau = tuple(c ^ 1 for c in range(2 * k))
        pairing = SisterPairing.standard(k)
        raw = list(itertools.product(range(2 * k), repeat=3))
        for combo in itertools.product(raw, repeat=q.p):
            if not _valid(k, list(combo), q.check_parity):
                continue
            kinds = {classify_triplet(Triplet(*t), tau) for t in combo}
            if q.require_types and not q.require_types <= kinds:
                continue
            if kinds & q.forbid_types:
                continue
            h = HakenPresentation(pairing, tuple(Triplet(*t) for t in combo))
            found.add(canonical_form(h))
    return sorted(found)


# ---------------------------------------------------------------------------
# homology census


@dataclass
class CensusResult:
    p: int
    max_pairs: int
    counts: dict = field(default_factory=dict)  # k -> number of presentations
    histogram: dict = field(default_factory=dict)  # k -> {name: count}
    verdicts: dict = field(default_factory=dict)
    examples: dict = field(default_factory=dict)  # name -> first presentation

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def names(self) -> set[str]:
        return {n for hist in self.histogram.values() for n in hist}

    def combined_histogram(self) -> Counter:
        out = Counter()
        for hist in self.histogram.values():
            out.update(hist)
        return out

    def to_dict(self) -> dict:
        return {
            "triple_points": self.p,
            "max_pairs": self.max_pairs,
            "total": self.total,
            "counts": {str(k): self.counts[k] for k in sorted(self.counts)},
            "histogram": {
                str(k): {n: self.histogram[k][n] for n in sorted(self.histogram[k])}
                for k in sorted(self.histogram)
            },
            "verdicts": dict(sorted(self.verdicts.items())),
            "examples": {n: [list(t) for t in self.examples[n]] for n in sorted(self.examples)},
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, ensure_ascii=False) + "\n"

    def table(self) -> str:
        lines = [f"census p={self.p} k<={self.max_pairs}: {self.total} presentations"]
        for k in sorted(self.histogram):
            lines.append(f"  k={k}: {self.counts[k]}")
            for name in sorted(self.histogram[k], key=lambda n: (-self.histogram[k][n], n)):
                lines.append(f"    {name:<12} {self.histogram[k][name]}")
        for key, value in sorted(self.verdicts.items()):
            lines.append(f"  {key}: {'yes' if value else 'NO'}")
        return "\n".join(lines) + "\n"


def census_h1(q: CensusQuery, workers: int = 1) -> CensusResult:
    result = CensusResult(q.p, q.max_pairs)
    for k in q.pair_counts():
        result.counts[k] = 0
        result.histogram[k] = {}
    bound_ok = True
    for cp in enumerate_presentations(q, workers=workers):
        name = recognize(h1(cp.presentation()))
        result.counts[cp.k] += 1
        hist = result.histogram[cp.k]
        hist[name] = hist.get(name, 0) + 1
        result.examples.setdefault(name, cp.triplets)
        bound_ok &= 4 * cp.k <= 2 + 3 * q.p
    names = result.names()
    low = {n for k, hist in result.histogram.items() if k <= 2 for n in hist}
    result.verdicts = {
        "no_Z3+Z3": "Z_3⊕Z_3" not in names,
        "k<=2_cyclic": low <= CYCLIC_NAMES,
        "candidate_list": names <= CANDIDATE_NAMES,
        "curve_bound": bound_ok,
    }
    return result


def verify_lemma_no_type_I(p: int = 4, k: int = 3, check_parity: bool = True) -> bool:
    """True iff no valid presentation with k pairs and p triplets has a type I triplet."""
    q = CensusQuery(p, max_pairs=max(k, 1), pairs=k, check_parity=check_parity,
                    require_types=frozenset(), allow_over_bound=True)
    for cp in enumerate_presentations(q):
        tau = [c ^ 1 for c in range(2 * cp.k)]
        if any(classify_triplet(Triplet(*t), tau).startswith("I.") for t in cp.triplets):
            return False
    return True
