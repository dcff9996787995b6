from fractions import Fraction
from itertools import combinations
from math import comb

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import brute_subset_entropy, seeded_state
from gge.measures import (GapVector, MeasureReport, block_entanglement,
                          closed_form_measures, compute_report, gap_classes,
                          gap_entanglement, global_entanglement,
                          mes_check_def1, mes_check_def2,
                          uniform_global_entanglement)
from gge.states import (SitePermutation, apply_local_unitary, basis_state,
                        haar_unitary, make_named_state, permute_sites,
                        random_state, tensor_product)

seeds = st.integers(0, 2**32 - 1)


def test_gap_classes_five_sites():
    assert [gv.gaps for gv in gap_classes(5, 2)] == [(1,), (2,), (3,), (4,)]
    assert [gv.gaps for gv in gap_classes(5, 3)] == [
        (1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]
    assert [gv.gaps for gv in gap_classes(7, 1)] == [()]


def test_gap_classes_counts_and_errors():
    for n_sites in range(2, 11):
        for n in range(1, n_sites):
            assert len(gap_classes(n_sites, n)) == comb(n_sites - 1, n - 1)
    with pytest.raises(ValueError):
        gap_classes(4, 4)
    with pytest.raises(ValueError):
        gap_classes(4, 0)


@settings(max_examples=30, deadline=None)
@given(n_sites=st.integers(2, 9), n=st.integers(1, 8))
def test_gap_classes_cover_every_subset_once(n_sites, n):
    if n >= n_sites:
        n = n_sites - 1
    visited = []
    for gv in gap_classes(n_sites, n):
        visited.extend(gv.subsets(n_sites))
    assert sorted(visited) == sorted(combinations(range(1, n_sites + 1), n))
    assert len(set(visited)) == len(visited)


def test_gap_vector_validation():
    with pytest.raises(ValueError):
        GapVector((2, 2))
    with pytest.raises(ValueError):
        GapVector((0,))
    with pytest.raises(ValueError):
        gap_entanglement(make_named_state("GHZ", 4), (5,))


def test_gap_entanglement_reference_values():
    assert gap_entanglement(make_named_state("GHZ", 4), (1,)) == \
        pytest.approx(2 / 3, abs=1e-12)
    assert gap_entanglement(make_named_state("EPR2"), (1,)) == \
        pytest.approx(1 / 3, abs=1e-12)
    assert gap_entanglement(make_named_state("CHI"), (3,)) == \
        pytest.approx(2 / 3, abs=1e-12)


def test_global_entanglement_reference_values():
    for n_sites in range(4, 9):
        assert global_entanglement(make_named_state("GHZ", n_sites), 2) == \
            pytest.approx(2 / 3, abs=1e-12)
    assert global_entanglement(make_named_state("PHI3"), 2) == \
        pytest.approx(25 / 27, abs=1e-12)
    assert global_entanglement(make_named_state("W", 4), 1) == \
        pytest.approx(3 / 4, abs=1e-12)


def test_closed_forms_match_brute_force():
    for family in ("GHZ", "EPR", "W"):
        for n_sites in (4, 6, 8):
            s = make_named_state(family, n_sites)
            e1, g21, e2 = closed_form_measures(family, n_sites)
            assert global_entanglement(s, 1) == pytest.approx(e1, abs=1e-12)
            assert gap_entanglement(s, (1,)) == pytest.approx(g21, abs=1e-12)
            assert global_entanglement(s, 2) == pytest.approx(e2, abs=1e-12)


def test_uniform_variant_values():
    epr2 = make_named_state("EPR2")
    g1 = make_named_state("G1")
    # brute force over the six pairs: EPR pairs give 0, the rest give 1
    expected = np.mean([brute_subset_entropy(epr2, c)
                        for c in combinations(range(1, 5), 2)])
    assert expected == pytest.approx(2 / 3, abs=1e-12)
    assert uniform_global_entanglement(epr2, 2) == pytest.approx(2 / 3, abs=1e-12)
    assert uniform_global_entanglement(g1, 2) == pytest.approx(2 / 3, abs=1e-12)
    product = basis_state(4, 0b0101)
    for n in (1, 2, 3):
        assert uniform_global_entanglement(product, n) == pytest.approx(0, abs=1e-12)


def test_g1_literal_row_differs_from_relabeled_values():
    g1 = make_named_state("G1")
    assert gap_entanglement(g1, (1,)) == pytest.approx(1.0, abs=1e-12)
    assert global_entanglement(g1, 2) == pytest.approx(2 / 3, abs=1e-12)


def test_block_entanglement_values():
    assert block_entanglement(make_named_state("EPR2"), 2) == \
        pytest.approx(0, abs=1e-12)
    assert block_entanglement(make_named_state("G1"), 2) == \
        pytest.approx(1, abs=1e-12)
    assert block_entanglement(make_named_state("ZHG"), 3) == \
        pytest.approx(6 / 7, abs=1e-12)
    assert block_entanglement(make_named_state("GHZ_POWER", 3, 2), 3) == \
        pytest.approx(0, abs=1e-12)


def test_mes_def1_reference_verdicts():
    chi = mes_check_def1(make_named_state("CHI"))
    assert chi.genuine
    assert chi.g1 == pytest.approx(1, abs=1e-12)
    assert chi.g2 == pytest.approx((8 / 9, 1, 2 / 3), abs=1e-12)
    assert not mes_check_def1(make_named_state("EPR2")).genuine
    # boundary case: the threshold state itself passes with equality
    assert mes_check_def1(make_named_state("GHZ", 4)).genuine
    with pytest.raises(ValueError):
        mes_check_def1(make_named_state("GHZ", 5))


def test_mes_def2_reference_verdicts():
    verdict = mes_check_def2(make_named_state("GHZ_POWER", 3, 2), 3)
    assert not verdict.genuine
    witnesses = dict(verdict.witnesses)
    assert witnesses[(1, 2, 3)] == pytest.approx(1.0, abs=1e-12)
    assert witnesses[(4, 5, 6)] == pytest.approx(1.0, abs=1e-12)
    assert set(witnesses) == {(1, 2, 3), (4, 5, 6)}

    assert mes_check_def2(make_named_state("GHZ", 6), 3).genuine

    w4 = mes_check_def2(make_named_state("W", 4), 1)
    assert not w4.genuine
    assert dict(w4.witnesses)[(1,)] == pytest.approx(5 / 8, abs=1e-12)


@settings(max_examples=15, deadline=None)
@given(seed=seeds, n_sites=st.integers(3, 6))
def test_mean_consistency(seed, n_sites):
    s = seeded_state(n_sites, seed)
    for n in range(1, n_sites):
        values = [gap_entanglement(s, gv) for gv in gap_classes(n_sites, n)]
        assert global_entanglement(s, n) == pytest.approx(np.mean(values),
                                                          abs=1e-12)


@settings(max_examples=15, deadline=None)
@given(seed=seeds)
def test_values_in_range(seed):
    s = seeded_state(5, seed)
    for n in range(1, 5):
        for gv in gap_classes(5, n):
            assert -1e-12 <= gap_entanglement(s, gv) <= 1 + 1e-12
        assert -1e-12 <= global_entanglement(s, n) <= 1 + 1e-12


@settings(max_examples=15, deadline=None)
@given(seed=seeds, n=st.integers(1, 4))
def test_uniform_variant_permutation_invariant(seed, n):
    s = seeded_state(5, seed)
    rng = np.random.default_rng(seed + 7)
    p = SitePermutation(tuple(int(x) for x in rng.permutation(5) + 1))
    assert uniform_global_entanglement(permute_sites(s, p), n) == \
        pytest.approx(uniform_global_entanglement(s, n), abs=1e-12)


def test_two_level_average_is_not_permutation_invariant():
    # the documented contrast with the uniform variant, on exact rationals
    ghz23 = make_named_state("GHZ_POWER", 3, 2)
    zhg = make_named_state("ZHG")
    assert global_entanglement(ghz23, 2) == \
        pytest.approx(float(Fraction(137, 150)), abs=1e-12)
    assert global_entanglement(zhg, 2) == \
        pytest.approx(float(Fraction(13, 15)), abs=1e-12)
    for n in (1, 2, 3):
        assert uniform_global_entanglement(ghz23, n) == \
            pytest.approx(uniform_global_entanglement(zhg, n), abs=1e-12)


def test_product_state_measures_vanish(rng):
    parts = [random_state(1, rng=rng) for _ in range(5)]
    s = parts[0]
    for p in parts[1:]:
        s = tensor_product(s, p)
    for n in range(1, 5):
        assert global_entanglement(s, n) == pytest.approx(0, abs=1e-12)


def test_local_unitary_invariance(rng):
    s = random_state(5, rng=rng)
    t = s
    for site in range(1, 6):
        t = apply_local_unitary(t, site, haar_unitary(2, rng))
    for n in range(1, 5):
        for gv in gap_classes(5, n):
            assert abs(gap_entanglement(t, gv) - gap_entanglement(s, gv)) < 1e-9
        assert abs(global_entanglement(t, n) - global_entanglement(s, n)) < 1e-9


def test_measure_report():
    report = compute_report(make_named_state("CHI"), 2, "chi", def2_n_max=2)
    assert report.mean_value == pytest.approx(23 / 27, abs=1e-12)
    assert [v for _, v in report.gap_values] == \
        pytest.approx([8 / 9, 1, 2 / 3], abs=1e-12)
    assert report.def1 is not None and report.def1.genuine
    assert report.def2 is not None and report.def2.genuine
    with pytest.raises(ValueError):
        MeasureReport("x", 2, ((GapVector((1,)), 0.5),), 0.9, 0.5, 0.5)


def test_matches_independent_brute_force(rng):
    s = random_state(6, rng=rng)
    for n in (1, 2, 3):
        expected = []
        for gv in gap_classes(6, n):
            expected.append(np.mean([brute_subset_entropy(s, sub)
                                     for sub in gv.subsets(6)]))
        assert global_entanglement(s, n) == pytest.approx(np.mean(expected),
                                                          abs=1e-12)
