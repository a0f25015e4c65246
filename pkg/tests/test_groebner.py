"""Module bases, syzygies, and ranks, cross-checked degree by degree.

The syzygy oracle here is independent of the basis machinery: for graded
input it enumerates each degree slice as a plain linear system and
compares dimensions against the span of the computed generators.
"""

from fractions import Fraction
from itertools import product

import pytest

from diffseq import linalg
from diffseq.config import DegreeCapExceeded
from diffseq.groebner import (
    GradedPresentation,
    generic_rank,
    minimal_graded_generators,
    module_equality,
    normal_form,
    reduced_groebner,
    syzygies,
)
from diffseq.poly import Poly, poly_mul
from diffseq.sequences import killing

ZERO = Fraction(0)


def monomials_of_degree(n, d):
    return [m for m in product(range(d + 1), repeat=n) if sum(m) == d]


def generator_degrees(pres):
    """Graded degree of each generator: entry degree plus component shift."""
    degs = []
    for g in pres.generators:
        vals = {p.degree() + pres.shifts[c]
                for c, p in enumerate(g) if not p.is_zero()}
        assert len(vals) == 1, "generator is not graded"
        degs.append(vals.pop())
    return degs


def syzygy_slice_dim(pres, gendegs, d):
    """dim of graded syzygies of degree d, by brute-force linear algebra.

    Unknowns are the coefficients of a_i with deg(a_i) = d - gendegs[i];
    constraints come from the monomial coefficients of sum a_i g_i.
    """
    n = pres.n
    unknowns = []
    for i, s in enumerate(gendegs):
        if d - s < 0:
            continue
        for m in monomials_of_degree(n, d - s):
            unknowns.append((i, m))
    col_of = {u: c for c, u in enumerate(unknowns)}
    rows = {}
    for (i, m), c in col_of.items():
        for comp, p in enumerate(pres.generators[i]):
            shifted = poly_mul(Poly.monomial(n, m), p)
            for mono, coef in shifted.terms.items():
                rows.setdefault((comp, mono), {})[c] = coef
    sparse = [r for r in rows.values() if r]
    return len(unknowns) - linalg.rank(sparse, len(unknowns))


def span_slice_dim(syz, gendegs, d):
    """dim of the degree-d slice of the module spanned by computed syzygies."""
    n = syz.n
    k = syz.ambient_rank
    vectors = []
    for g, s in zip(syz.generators, generator_degrees(syz)):
        if d - s < 0:
            continue
        for m in monomials_of_degree(n, d - s):
            vec = {}
            for i in range(k):
                p = poly_mul(Poly.monomial(n, m), g[i])
                for mono, coef in p.terms.items():
                    vec[(i, mono)] = coef
            vectors.append(vec)
    cols = sorted({c for v in vectors for c in v})
    col_of = {c: j for j, c in enumerate(cols)}
    sparse = [{col_of[c]: v for c, v in vec.items()} for vec in vectors]
    return linalg.rank(sparse, len(cols))


def assert_syzygies_complete(pres, max_degree):
    syz = syzygies(pres)
    for g in syz.generators:
        total = [Poly.zero(pres.n) for _ in range(pres.ambient_rank)]
        for i, p in enumerate(g):
            for comp in range(pres.ambient_rank):
                total[comp] = total[comp] + poly_mul(p, pres.generators[i][comp])
        assert all(t.is_zero() for t in total), "computed syzygy is not a relation"
    gendegs = generator_degrees(pres)
    assert tuple(syz.shifts) == tuple(gendegs)
    for d in range(max_degree + 1):
        want = syzygy_slice_dim(pres, gendegs, d)
        got = span_slice_dim(syz, gendegs, d)
        assert got == want, f"degree {d}: span {got} != oracle {want}"


def _vars(n):
    return [Poly.variable(n, i) for i in range(1, n + 1)]


def test_syzygy_of_two_variables_is_the_koszul_relation():
    x1, x2 = _vars(2)
    pres = GradedPresentation(n=2, ambient_rank=1, generators=((x1,), (x2,)))
    syz = syzygies(pres)
    assert len(syz.generators) == 1
    assert_syzygies_complete(pres, 5)


def test_syzygies_of_killing_rows_match_the_degree_oracle():
    for n in (2, 3):
        op = killing(n)
        pres = GradedPresentation(
            n=n, ambient_rank=op.source.dim,
            generators=tuple(tuple(r) for r in op.rows))
        assert_syzygies_complete(pres, 5)


def test_second_level_syzygies_match_the_degree_oracle():
    op = killing(3)
    pres = GradedPresentation(
        n=3, ambient_rank=op.source.dim,
        generators=tuple(tuple(r) for r in op.rows))
    level1 = syzygies(pres)
    assert_syzygies_complete(level1, 5)


def test_free_rows_have_no_relations():
    n = 2
    e1 = (Poly.one(n), Poly.zero(n))
    e2 = (Poly.zero(n), Poly.one(n))
    pres = GradedPresentation(n=n, ambient_rank=2, generators=(e1, e2),
                              shifts=(0, 0))
    assert syzygies(pres).generators == ()


def test_groebner_membership_of_original_generators():
    x1, x2, x3 = _vars(3)
    gens = ((poly_mul(x1, x2) + poly_mul(x3, x3),), (poly_mul(x2, x3),),
            (x1 + x2,))
    pres = GradedPresentation(n=3, ambient_rank=1, generators=gens)
    gb = reduced_groebner(pres)
    for g in gens:
        assert all(p.is_zero() for p in normal_form(list(g), gb))


def test_normal_form_is_idempotent_and_linear():
    x1, x2 = _vars(2)
    pres = GradedPresentation(n=2, ambient_rank=1,
                              generators=((poly_mul(x1, x1),), (poly_mul(x1, x2),)))
    gb = reduced_groebner(pres)
    u = [poly_mul(poly_mul(x1, x1), x2) + x2]
    v = [poly_mul(x2, x2) + x1]
    nf_u = normal_form(u, gb)
    assert normal_form(list(nf_u), gb) == nf_u
    sum_nf = normal_form([u[0] + v[0]], gb)
    assert list(sum_nf) == [normal_form(u, gb)[0] + normal_form(v, gb)[0]]


def test_module_equality_distinguishes_modules():
    x1, x2 = _vars(2)
    a = GradedPresentation(n=2, ambient_rank=1, generators=((x1,), (x2,)))
    b = GradedPresentation(n=2, ambient_rank=1,
                           generators=((x1 + x2,), (x1,), (x2,)))
    c = GradedPresentation(n=2, ambient_rank=1, generators=((x1,),))
    assert module_equality(a, b)
    assert not module_equality(a, c)
    assert not module_equality(c, a)


def test_minimal_generators_drop_redundant_ones():
    x1, x2 = _vars(2)
    g1 = (poly_mul(x1, x1),)
    g2 = (x2,)
    g3 = (poly_mul(x1, x1) + poly_mul(x1, x2),)   # g1 + x1*g2
    pres = GradedPresentation(n=2, ambient_rank=1, generators=(g1, g2, g3))
    minimal = minimal_graded_generators(pres)
    assert len(minimal.generators) == 2
    assert module_equality(minimal, pres)


def test_generic_rank_detects_dependent_rows():
    x1, x2 = _vars(2)
    rows = [[x1, x2], [poly_mul(x1, x2), poly_mul(x2, x2)]]
    assert generic_rank(rows, 2) == 1
    rows2 = [[x1, x2], [x2, x1]]
    assert generic_rank(rows2, 2) == 2


def test_generic_rank_matches_evaluation_at_a_generic_point():
    op = killing(3)
    rows = [list(r) for r in op.rows]
    pt = [Fraction(3), Fraction(-7), Fraction(11)]
    dense = [[p.evaluate(pt) for p in row] for row in rows]
    assert generic_rank(rows, 3) == linalg.dense_rank(dense)


def test_degree_cap_is_a_loud_error():
    op = killing(2)
    pres = GradedPresentation(
        n=2, ambient_rank=op.source.dim,
        generators=tuple(tuple(r) for r in op.rows))
    with pytest.raises(DegreeCapExceeded):
        syzygies(pres, cap=1)
