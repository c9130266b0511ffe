import random

import pytest

from permavoid.alphas import INFINITY, REPRESENTATIONS, PatternExponents, profile
from permavoid.families import (
    FAMILY_IDS,
    all_unavoidable_sets,
    classify,
    enumerate_family,
    family_rule,
    set_max,
    sigma,
)

#: The worked example set of each family.
KNOWN_MEMBERS = {
    1: {1, 2, 4, 6, 7},
    2: {1, 2, 7, 12, 13},
    3: {1, 2, 4, 7, 10},
    4: {1, 2, 7, 10, 14},
    5: {1, 9, 12, 13, 14},
    6: {1, 4, 6, 7, 9, 10, 13, 14},
    7: {1, 3, 5, 8, 12, 13},
    8: {1, 3, 5, 7, 9, 14},
    9: {1, 2, 3, 6, 10, 11, 13},
    10: {1, 3, 5, 6, 10, 11, 13, 14},
}

#: Sets explicitly barred from family 9.
FAMILY9_EXCEPTIONS = [
    {1, 3, 6, 8, 10, 11, 14},
    {1, 4, 5, 6, 10, 12, 14},
    {1, 4, 6, 7, 10, 11, 14},
]


def oracle_alpha(a, e, limit=200):
    i, j, k = e
    for t in range(1, limit + 1):
        residues = (0, i % t, j % t, k % t)
        labels = {}
        pattern = ""
        for r in residues:
            labels.setdefault(r, str(len(labels)))
            pattern += labels[r]
        if pattern == REPRESENTATIONS[a]:
            return t
    return INFINITY


def oracle_sigma(e):
    """Independent min-max pass: recompute every alpha by definition scan."""
    best = INFINITY
    for s in all_unavoidable_sets():
        value = max(oracle_alpha(a, e) for a in s)
        best = min(best, value)
    return best


class TestEnumeration:
    @pytest.mark.parametrize("family_id", list(FAMILY_IDS))
    def test_known_member_present(self, family_id):
        assert frozenset(KNOWN_MEMBERS[family_id]) in enumerate_family(family_id)

    @pytest.mark.parametrize("exception", FAMILY9_EXCEPTIONS)
    def test_family9_exceptions_absent(self, exception):
        assert frozenset(exception) not in enumerate_family(9)
        assert frozenset(exception) not in all_unavoidable_sets()

    def test_stated_cardinalities(self):
        for family_id, size in [(1, 5), (2, 5), (3, 5), (8, 6), (9, 7), (10, 8)]:
            assert all(len(s) == size for s in enumerate_family(family_id))

    def test_every_set_contains_alpha1_and_five_members(self):
        for family_id in FAMILY_IDS:
            for s in enumerate_family(family_id):
                assert 1 in s
                assert len(s) >= 5

    def test_antichain_within_family(self):
        for family_id in FAMILY_IDS:
            sets = enumerate_family(family_id)
            for a in sets:
                for b in sets:
                    assert not (a < b)

    def test_family_counts(self):
        counts = {fid: len(enumerate_family(fid)) for fid in FAMILY_IDS}
        assert counts == {1: 12, 2: 7, 3: 4, 4: 3, 5: 2, 6: 2, 7: 2, 8: 2, 9: 13, 10: 4}
        assert len(out := all_unavoidable_sets()) == 47
        assert len(set(out)) == len(out)

    def test_invalid_family_id(self):
        with pytest.raises(ValueError):
            enumerate_family(0)
        with pytest.raises(ValueError):
            family_rule(11)

    def test_family2_prefix_square_forces_first_gapped_cube(self):
        for s in enumerate_family(2):
            if 2 in s:
                assert 7 in s

    def test_family6_pairings(self):
        for s in enumerate_family(6):
            if 7 in s:
                assert 4 in s
            assert not {4, 8} <= s

    def test_family7_excluded_pairs(self):
        for s in enumerate_family(7):
            assert not {2, 4} <= s
            assert not {2, 7} <= s

    def test_digit_agreement_restriction(self):
        # without swapped-form square/gapped-square pairs the gapped cube is pinned:
        # prefix square with 0121 forces 0010; suffix square with 0102 forces 0100
        for family_id in (1, 3, 7):
            for s in enumerate_family(family_id):
                if {2, 4} <= s:
                    assert 7 in s and 8 not in s
                if {5, 3} <= s:
                    assert 8 in s and 7 not in s
                assert not {5, 4} <= s


class TestSigma:
    def test_degenerate_rejected(self):
        for e in [(1, 1, 2), (2, 3, 3), (2, 3, 2), (0, 1, 2)]:
            with pytest.raises(ValueError):
                sigma(e)

    def test_frozen_finite_value(self):
        value, witness = sigma((3, 7, 6))
        assert value == 7
        assert witness == frozenset({1, 3, 7, 12, 13})

    def test_frozen_infinite_value(self):
        value, _ = sigma((1, 2, 3))
        assert value == INFINITY

    @pytest.mark.parametrize("e", [(1, 2, 3), (3, 7, 6), (6, 3, 2), (2, 4, 5), (5, 9, 14)])
    def test_matches_independent_minmax(self, e):
        assert sigma(e)[0] == oracle_sigma(e)

    def test_witness_attains_minimum(self):
        for e in [(3, 7, 6), (6, 3, 2), (4, 7, 9)]:
            value, witness = sigma(e)
            assert set_max(witness, e) == value
            assert all(set_max(s, e) >= value for s in all_unavoidable_sets())

    def test_superset_growth_never_lowers_minimum(self):
        rng = random.Random(11)
        e = PatternExponents(3, 7, 6)
        base_min = sigma(e)[0]
        for s in all_unavoidable_sets():
            extra = rng.sample([a for a in range(1, 15) if a not in s], 2)
            assert set_max(s | set(extra), e) >= base_min

    def test_minimum_at_least_four_sample(self):
        for e in [(3, 7, 6), (6, 3, 2), (1, 7, 4), (2, 9, 4)]:
            value, _ = sigma(e)
            if value != INFINITY:
                assert value >= 4


class TestClassify:
    def test_adjacent_degenerate(self):
        report = classify((2, 2, 5))
        assert report.degenerate_case == "i=j or j=k"
        assert report.sigma is None
        assert report.avoidable_min == 2
        assert report.avoidable_max == INFINITY

    def test_outer_degenerate(self):
        report = classify((3, 5, 3))
        assert report.degenerate_case == "i=k"
        assert report.avoidable_min == 2
        assert report.avoidable_max == INFINITY

    def test_zero_exponents_are_degenerate(self):
        assert classify((0, 2, 3)).degenerate_case == "i=j or j=k"
        assert classify((2, 0, 3)).degenerate_case == "i=k"
        assert classify((2, 3, 0)).degenerate_case == "i=k"

    def test_degenerate_never_calls_sigma(self, monkeypatch):
        import permavoid.families as families_module

        def explode(e):
            raise AssertionError("sigma must not run for degenerate exponents")

        monkeypatch.setattr(families_module, "sigma", explode)
        report = families_module.classify((4, 4, 9))
        assert report.degenerate_case == "i=j or j=k"

    def test_finite_sigma_report(self):
        report = classify((3, 7, 6))
        assert report.degenerate_case == "none"
        assert report.sigma == 7
        assert report.witness_set == (1, 3, 7, 12, 13)
        assert (report.avoidable_min, report.avoidable_max) == (2, 6)
        assert report.unavoidable_from == 8
        assert report.boundary == 7
        assert "individually" in report.boundary_status

    def test_infinite_sigma_report(self):
        report = classify((1, 2, 3))
        assert report.sigma == INFINITY
        assert report.unavoidable_from is None
        assert report.avoidable_max == INFINITY
        assert "manual review" in report.note

    def test_json_rendering(self):
        data = classify((3, 7, 6)).as_json()
        assert data["sigma"] == 7
        assert data["avoidable_interval"] == [2, 6]
        assert data["witness_set"] == [1, 3, 7, 12, 13]
        data = classify((1, 2, 3)).as_json()
        assert data["sigma"] == "inf"

    def test_consistency_with_profile(self):
        # sigma is bounded below by alpha_1 for valid triples
        for e in [(3, 7, 6), (6, 3, 2), (1, 7, 4)]:
            report = classify(e)
            assert report.sigma >= profile(e).value(1)
