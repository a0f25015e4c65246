"""Symbols, prolongations, delta complexes, and the two resolutions."""

import random
from fractions import Fraction
from math import comb

import pytest

from diffseq import spencer
from diffseq.bundles import riemann_candidate_space, sym_tuples
from diffseq.poly import Poly
from diffseq.sequences import conformal_killing, exterior_derivative, killing


def test_symbol_dimensions_of_the_classical_systems():
    assert spencer.symbol_of(killing(4)).dim == 6
    assert spencer.symbol_of(conformal_killing(4)).dim == 7
    assert spencer.symbol_of(exterior_derivative(3, 0)).dim == 0


def test_prolongation_chains_terminate():
    g = spencer.symbol_of(killing(4))
    assert [g.dim, spencer.prolong(g).dim] == [6, 0]
    h = spencer.symbol_of(conformal_killing(4))
    h2 = spencer.prolong(h)
    h3 = spencer.prolong(h2)
    assert [h.dim, h2.dim, h3.dim] == [7, 4, 0]


def test_symbol_requires_an_actual_operator():
    from diffseq.operators import zero_operator
    src = killing(2).source
    with pytest.raises(ValueError):
        spencer.symbol_of(zero_operator("zero", 2, src, src))


def test_delta_squared_vanishes_on_full_spaces():
    for n in (2, 3):
        for q in (2, 3):
            for r in range(n - 1):
                a = spencer.delta_ambient(n, r, q, 2)
                b = spencer.delta_ambient(n, r + 1, q - 1, 2)
                for brow in b:
                    acc = {}
                    for j, coef in brow.items():
                        for c, v in a[j].items():
                            acc[c] = acc.get(c, Fraction(0)) + coef * v
                    assert not any(acc.values())


def test_delta_cohomology_closed_forms():
    for n in range(2, 6):
        dims = spencer.delta_cohomology_dims(killing(n), min(n, 3))
        assert dims[0] == 0 and dims[1] == 0
        assert dims[2] == n * n * (n * n - 1) // 12
        if n >= 3:
            assert dims[3] == n * n * (n * n - 1) * (n - 2) // 24


def test_cohomology_matches_candidate_space_dimension():
    for n in range(2, 6):
        dims = spencer.delta_cohomology_dims(killing(n), 2)
        assert dims[2] == riemann_candidate_space(n).dim


def test_witness_ranks_at_dimension_four():
    detail = spencer.delta_cohomology_detail(killing(4), 4)
    assert (detail[2].dim, detail[2].rank_out, detail[2].h) == (36, 16, 20)
    assert (detail[3].dim, detail[3].rank_out, detail[3].h) == (24, 4, 20)
    assert detail[4].h == 6
    conf = spencer.delta_cohomology_detail(conformal_killing(4), 3, q=2)
    assert (conf[3].dim, conf[3].rank_out, conf[3].h) == (16, 7, 9)


def test_full_jet_columns_are_exact():
    col1 = spencer.full_jet_column(4, 3, 4)
    assert col1.node_dims == (80, 160, 96, 16)
    assert col1.exact
    col2 = spencer.full_jet_column(4, 4, 4)
    assert col2.node_dims == (140, 320, 240, 64, 4)
    assert col2.exact


def test_janet_and_spencer_bundle_dimensions():
    kil = [spencer.janet_spencer_bundle_dims("killing", r, 4) for r in range(5)]
    assert [p[1] for p in kil] == [comb(4, r) * 10 for r in range(5)]
    assert [p[0] for p in kil] == [50, 120, 120, 56, 10]
    con = [spencer.janet_spencer_bundle_dims("conformal_killing", r, 4)
           for r in range(5)]
    assert [p[1] for p in con] == [comb(4, r) * 15 for r in range(5)]
    assert [p[0] for p in con] == [125, 360, 414, 220, 45]


def test_bundles_fit_the_jet_quotient_exact_sequence():
    """The two resolutions sit in one short exact sequence per degree."""
    full = [spencer.janet_spencer_bundle_dims("jet", r, 4, m=4, q=2)
            for r in range(5)]
    kil = [spencer.janet_spencer_bundle_dims("killing", r, 4) for r in range(5)]
    for r in range(5):
        assert kil[r][0] + kil[r][1] == full[r][1]


def test_jet_system_resolutions_coincide():
    for r in range(4):
        f, c = spencer.janet_spencer_bundle_dims("jet", r, 3, m=1, q=2)
        assert f == c
    assert [spencer.janet_spencer_bundle_dims("jet", r, 3, m=1, q=2)[0]
            for r in range(4)] == [10, 20, 15, 4]


def test_alternating_sums_of_both_resolutions():
    kil = [spencer.janet_spencer_bundle_dims("killing", r, 4) for r in range(5)]
    assert sum((-1) ** r * p[1] for r, p in enumerate(kil)) == 0
    assert sum((-1) ** r * p[0] for r, p in enumerate(kil)) == 4
    con = [spencer.janet_spencer_bundle_dims("conformal_killing", r, 4)
           for r in range(5)]
    assert sum((-1) ** r * p[1] for r, p in enumerate(con)) == 0
    assert sum((-1) ** r * p[0] for r, p in enumerate(con)) == 4


def _rand_poly(rng, n, deg):
    p = Poly.zero(n)
    for _ in range(5):
        mono = tuple(rng.randint(0, deg) for _ in range(n))
        if sum(mono) > deg:
            continue
        p = p + Poly.monomial(n, mono, Fraction(rng.randint(-9, 9)))
    return p


def test_jet_comparison_operator_squares_to_zero():
    rng = random.Random(31)
    n, m, q = 3, 2, 2
    section = {}
    for qq in range(q + 2):
        for mu in sym_tuples(n, qq):
            for k in range(m):
                section[(mu, k)] = _rand_poly(rng, n, 3)
    d1 = spencer.spencer_derivative(n, m, q + 1, 0, section)
    assert any(not p.is_zero() for p in d1.values())
    d2 = spencer.spencer_derivative(n, m, q, 1, d1)
    assert all(p.is_zero() for p in d2.values())


def test_jet_comparison_operator_kills_true_jets():
    rng = random.Random(32)
    n, m, q = 2, 2, 3
    fs = [_rand_poly(rng, n, 4) for _ in range(m)]
    jet = spencer.jet_section_prolongation(n, m, q, fs)
    dj = spencer.spencer_derivative(n, m, q, 0, jet)
    assert all(p.is_zero() for p in dj.values())
