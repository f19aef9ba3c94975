import itertools

import pytest

from johansson import fixtures
from johansson.census import (
    CANDIDATE_NAMES,
    CensusLimitError,
    CensusQuery,
    CanonicalPresentation,
    canonical_form,
    census_h1,
    enumerate_presentations,
    naive_enumerate,
    verify_lemma_no_type_I,
)
from johansson.diagram import (
    HakenPresentation,
    SisterPairing,
    Triplet,
    double_curve_bound,
    forget_embedding,
    validate_presentation,
)

from conftest import standard
from oracles import orbit_minimum

# frozen after cross-checking against the brute-force oracle below
GOLDEN = {2: {1: 3, 2: 1}, 4: {1: 5, 2: 26, 3: 10}}


def brute_force(p, ks):
    """Every multiset of raw triplets, validated by the public validator."""
    found = set()
    for k in ks:
        pairing = SisterPairing.standard(k)
        raw = list(itertools.product(range(2 * k), repeat=3))
        for combo in itertools.combinations_with_replacement(raw, p):
            h = HakenPresentation(pairing, tuple(Triplet(*t) for t in combo))
            if not validate_presentation(h).ok:
                continue
            if {x // 2 for t in combo for x in t} != set(range(k)):
                continue
            found.add((k, orbit_minimum(k, combo)))
    return sorted(found)


def stream(q, workers=1):
    return [(cp.k, cp.triplets) for cp in enumerate_presentations(q, workers)]


def test_query_defaults():
    assert CensusQuery(4).max_pairs == double_curve_bound(4) == 3
    assert CensusQuery(2, max_pairs=1).pair_counts() == [1]
    assert CensusQuery(4, pairs=2).pair_counts() == [2]


@pytest.mark.parametrize("kwargs", [dict(p=3), dict(p=-2), dict(p=2, max_pairs=5),
                                    dict(p=2, max_pairs=0), dict(p=2, forbid_types={"IV"})])
def test_query_rejects(kwargs):
    with pytest.raises(ValueError):
        CensusQuery(**kwargs)


def test_over_bound_needs_flag():
    assert CensusQuery(2, max_pairs=3, allow_over_bound=True).max_pairs == 3


def test_empty_census():
    assert list(enumerate_presentations(CensusQuery(0))) == []


def test_golden_counts():
    for p, counts in GOLDEN.items():
        assert census_h1(CensusQuery(p)).counts == counts


def test_p2_matches_brute_force():
    assert stream(CensusQuery(2)) == brute_force(2, [1, 2])


def test_p4_single_pair_matches_brute_force():
    assert stream(CensusQuery(4, pairs=1)) == brute_force(4, [1])


def test_p2_matches_naive_enumerator():
    q = CensusQuery(2)
    assert list(enumerate_presentations(q)) == naive_enumerate(q)


def test_stream_is_sorted_unique_and_valid():
    out = list(enumerate_presentations(CensusQuery(4)))
    assert out == sorted(set(out))
    for cp in out:
        assert validate_presentation(cp.presentation()).ok
        assert canonical_form(cp.presentation()) == cp


def test_star_presentation_in_census():
    star = CanonicalPresentation(1, ((0, 0, 0), (0, 0, 0)))
    assert star in list(enumerate_presentations(CensusQuery(2, pairs=1)))


@pytest.mark.parametrize("name", fixtures.names())
def test_fixtures_appear_in_census(diagrams, name):
    h = forget_embedding(diagrams[name])
    q = CensusQuery(h.p, pairs=h.k)
    assert canonical_form(h) in list(enumerate_presentations(q))


def test_canonical_form_orbit():
    a = standard(3, (0, 2, 4))
    b = standard(3, (4, 0, 2))
    c = standard(3, (5, 3, 1))  # the reversed form
    assert canonical_form(a) == canonical_form(b) == canonical_form(c)


def test_canonical_form_relabelling():
    h = HakenPresentation(SisterPairing(("p*", "p"), (1, 0)), (Triplet(0, 0, 0), Triplet(0, 0, 0)))
    assert canonical_form(h) == CanonicalPresentation(1, ((0, 0, 0), (0, 0, 0)))


def test_determinism_across_workers():
    q = CensusQuery(4)
    assert stream(q, 1) == stream(q, 2)
    assert census_h1(q, 1).to_json() == census_h1(q, 2).to_json()


def test_candidate_cap_is_explicit():
    with pytest.raises(CensusLimitError) as exc:
        list(enumerate_presentations(CensusQuery(4, pairs=2, max_candidates=10)))
    assert isinstance(exc.value.partial, list)


def test_type_filters():
    q = CensusQuery(2, require_types={"I.2"})
    assert stream(q) == [(1, ((0, 0, 0), (0, 0, 0))), (1, ((0, 0, 0), (0, 0, 1)))]
    q = CensusQuery(2, forbid_types={"I.1", "I.2"})
    assert stream(q) == [(2, ((0, 0, 2), (0, 0, 2)))]


def test_homology_histogram_p4():
    r = census_h1(CensusQuery(4))
    assert r.total == sum(r.combined_histogram().values()) == 41
    assert "Z_3⊕Z_3" not in r.names()
    assert r.names() <= CANDIDATE_NAMES
    assert all(r.verdicts.values())


def test_lemma_no_type_i():
    assert verify_lemma_no_type_I(4, 3)
    assert not verify_lemma_no_type_I(4, 3, check_parity=False)
    # at p=2 type I presentations do exist
    assert not verify_lemma_no_type_I(2, 1)


def test_table_and_json_agree():
    r = census_h1(CensusQuery(2))
    assert "k=1: 3" in r.table()
    assert r.to_dict()["total"] == 4


def test_p4_matches_brute_force_over_normal_forms():
    # every multiset of triplets is a multiset of normalized representatives,
    # so this covers all of p=4 without the 10^8 ordered tuples
    from oracles import forms

    for k in (2, 3):
        tau = [c ^ 1 for c in range(2 * k)]
        reps = sorted({min(forms(t, tau)) for t in itertools.product(range(2 * k), repeat=3)})
        pairing = SisterPairing.standard(k)
        found = set()
        for combo in itertools.combinations_with_replacement(reps, 4):
            if {x // 2 for t in combo for x in t} != set(range(k)):
                continue
            h = HakenPresentation(pairing, tuple(Triplet(*t) for t in combo))
            if validate_presentation(h).ok:
                found.add((k, orbit_minimum(k, combo)))
        assert stream(CensusQuery(4, pairs=k)) == sorted(found)
