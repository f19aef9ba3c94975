"""Enumerate Haken presentations with up to four triple points."""

from johansson.census import CensusQuery, census_h1, verify_lemma_no_type_I

for p in (2, 4):
    result = census_h1(CensusQuery(p))
    print(result.table())

print("no type I triplet at p=4, k=3:", verify_lemma_no_type_I(4, 3))
print("same check with parity switched off:", verify_lemma_no_type_I(4, 3, check_parity=False))
