import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qdeform.arrangement import (
    Arrangement,
    boolean_arrangement,
    build_graphic,
    build_monomial,
    build_qdef_graph,
    defining_poly,
    full_arrangement,
)
from qdeform.combinat import (
    Graph,
    NotChordal,
    Peo,
    complete_graph,
    cycle_graph,
    empty_graph,
    graphs_up_to_iso,
    mcs_peo,
    path_graph,
)
from qdeform.freeness import (
    Derivation,
    Filtration,
    basis_graphic,
    basis_monomial,
    basis_qdef,
    chordal_filtration,
    delta_r1,
    euler_derivation,
    inductive_free,
    is_derivation,
    is_upper_triangular,
    moore,
    saito_certify,
    saito_check,
    subspace_polynomial,
    supersolvable_search,
    supersolvable_verify,
    terao_factor_check,
    vandermonde,
)
from qdeform.gf import FieldError, field_make, field_of_order
from qdeform.polyalg import IntPoly, MPoly, equal_up_to_scalar, mpoly_det, mpoly_subst_linear

t = IntPoly.t()
GF2, GF3, GF5, GF7 = (field_make(p) for p in (2, 3, 5, 7))


def x(spec, n, i, power=1):
    return MPoly.var(spec, n, i, power)


# -- determinant identities


def test_vandermonde_example():
    v = vandermonde([0, 1, 2], GF5, 3)
    x1, x2, x3 = (x(GF5, 3, i) for i in range(3))
    assert v == (x2 - x1) * (x3 - x1) * (x3 - x2)


def test_moore_example():
    x1, x2 = x(GF2, 2, 0), x(GF2, 2, 1)
    assert moore([0, 1], GF2, 2) == x1 * x2 * (x1 + x2)


def test_delta_r1_example():
    x1, x2 = x(GF5, 2, 0), x(GF5, 2, 1)
    assert delta_r1([0, 1], 2, GF5, 2) == x1 * x2 * (x2 * x2 - x1 * x1)


@pytest.mark.parametrize("q", [2, 3, 4, 5])
def test_moore_identity_in_each_field(q):
    spec = field_of_order(q)
    for k in (1, 2, 3) if q <= 3 else (1, 2):
        moore(list(range(k)), spec, k)  # raises on mismatch


@pytest.mark.parametrize("p,r", [(3, 2), (7, 3), (5, 4), (7, 6)])
def test_delta_r1_identity(p, r):
    delta_r1([0, 1, 2], r, field_make(p), 3)


@pytest.mark.parametrize("q", [2, 3, 4])
def test_subspace_polynomial_roots(q):
    spec = field_of_order(q)
    # the polynomial in y vanishes at every element of span{x1}, i.e. at y = c*x1
    P = subspace_polynomial([0], 1, spec, 2)
    assert P.degree() == q
    for c in range(q):
        assert mpoly_subst_linear(P, 1, MPoly.linear(spec, [c, 0])).is_zero()


# -- explicit bases


def test_graphic_k3_basis():
    g = complete_graph(3)
    th = basis_graphic(g, Peo((1, 2, 3)), GF5)
    x1, x2, x3 = (x(GF5, 3, i) for i in range(3))
    one = MPoly.const(GF5, 3, 1)
    zero = MPoly.zero(GF5, 3)
    assert th[0].comps == [one, one, one]
    assert th[1].comps == [zero, x2 - x1, x3 - x1]
    assert th[2].comps == [zero, zero, (x3 - x1) * (x3 - x2)]
    det = mpoly_det([tt.comps for tt in th])
    assert equal_up_to_scalar(det, defining_poly(build_graphic(g, GF5))) is not None
    assert saito_check(th, build_graphic(g, GF5)) == (0, 1, 2)


def test_graphic_basis_degrees_and_empty():
    assert [tt.degree() for tt in basis_graphic(path_graph(3), mcs_peo(path_graph(3)), GF7)] == [0, 1, 1]
    th = basis_graphic(empty_graph(3), Peo((1, 2, 3)), GF7)
    for k, tt in enumerate(th):
        assert tt.comps == [MPoly.const(GF7, 3, 1) if i == k else MPoly.zero(GF7, 3) for i in range(3)]
    with pytest.raises(FieldError):
        basis_graphic(complete_graph(3), Peo((1, 2, 3)), GF3)


def test_qdef_k2_basis():
    th = basis_qdef(complete_graph(2), Peo((1, 2)), GF2)
    x1, x2 = x(GF2, 2, 0), x(GF2, 2, 1)
    assert th[0].comps == [x1, x2]
    assert th[1].comps == [MPoly.zero(GF2, 2), x2 * (x2 + x1)]
    det = mpoly_det([tt.comps for tt in th])
    assert det == x1 * x2 * (x1 + x2) == defining_poly(build_qdef_graph(complete_graph(2), GF2))


def test_qdef_degrees_and_empty():
    th = basis_qdef(complete_graph(3), Peo((1, 2, 3)), GF2)
    assert [tt.degree() for tt in th] == [1, 2, 4]
    th = basis_qdef(empty_graph(3), Peo((1, 2, 3)), GF3)
    for k, tt in enumerate(th):
        assert tt.comps == [x(GF3, 3, i) if i == k else MPoly.zero(GF3, 3) for i in range(3)]


def test_monomial_k2_basis():
    th = basis_monomial(complete_graph(2), Peo((1, 2)), 2, GF3)
    x1, x2 = x(GF3, 2, 0), x(GF3, 2, 1)
    assert th[0].comps == [x1, x2]
    assert th[1].comps == [MPoly.zero(GF3, 2), x2 * (x2 * x2 - x1 * x1)]
    assert saito_check(th, build_monomial(complete_graph(2), 2, GF3)) == (1, 3)


def test_monomial_k3_exponents():
    g = complete_graph(3)
    th = basis_monomial(g, mcs_peo(g), 2, GF3)
    assert saito_check(th, build_monomial(g, 2, GF3)) == (1, 3, 5)


def test_monomial_r1_shifts_graphic_degrees():
    for g in graphs_up_to_iso(4):
        peo = mcs_peo(g)
        if peo is None:
            continue
        dg = [tt.degree() for tt in basis_graphic(g, peo, GF5)]
        dm = [tt.degree() for tt in basis_monomial(g, peo, 1, GF5)]
        assert dm == [d + 1 for d in dg]


def test_basis_needs_peo():
    with pytest.raises(NotChordal):
        basis_graphic(cycle_graph(4), Peo((1, 2, 3, 4)), GF7)


# -- membership and Saito


def test_is_derivation_examples():
    arr = build_qdef_graph(complete_graph(3), GF3)
    assert is_derivation(euler_derivation(GF3, 3), arr)
    single = Arrangement.from_normals(GF3, 2, [(1, 0)])
    d1 = Derivation([MPoly.const(GF3, 2, 1), MPoly.zero(GF3, 2)])
    assert not is_derivation(d1, single)


def test_saito_rejects_dependent_rows():
    arr = boolean_arrangement(2, GF3)
    e = euler_derivation(GF3, 2)
    res = saito_certify([e, e], arr)
    assert res.exponents is None and "zero" in res.reason
    assert saito_check([e], arr) is None


def test_saito_rejects_non_derivation():
    arr = boolean_arrangement(2, GF3)
    d1 = Derivation([MPoly.const(GF3, 2, 1), MPoly.zero(GF3, 2)])
    assert saito_check([d1, euler_derivation(GF3, 2)], arr) is None


def test_saito_factored_agrees_with_expansion():
    g = complete_graph(4)
    for arr, th in [
        (build_qdef_graph(g, GF2), basis_qdef(g, mcs_peo(g), GF2)),
        (build_monomial(g, 2, GF3), basis_monomial(g, mcs_peo(g), 2, GF3)),
    ]:
        assert len(arr) <= 24
        res = saito_certify(th, arr, expand=True)
        assert res.expanded_check and res.scalar is not None


def test_terao_examples():
    assert terao_factor_check(build_graphic(complete_graph(3), GF7), (0, 1, 2))
    assert terao_factor_check(build_monomial(complete_graph(2), 2, GF3), (1, 3))
    assert terao_factor_check(boolean_arrangement(3, GF3), (1, 1, 1))
    assert not terao_factor_check(boolean_arrangement(3, GF3), (0, 1, 2))


def test_triangular_in_peo_coordinates():
    g = Graph.make(4, [(1, 2), (2, 3), (1, 3), (3, 4)])
    peo = mcs_peo(g)
    for th in (basis_graphic(g, peo, GF5), basis_qdef(g, peo, GF3), basis_monomial(g, peo, 2, GF5)):
        assert is_upper_triangular(th, peo)


# -- inductive freeness


def test_inductive_free_examples():
    assert inductive_free(boolean_arrangement(2, GF3)) == (1, 1)
    assert inductive_free(build_graphic(complete_graph(3), GF7)) == (0, 1, 2)
    assert inductive_free(build_monomial(complete_graph(2), 2, GF3)) == (1, 3)


def test_inductive_free_rejects_cycle():
    # C4 graphic arrangement is not free, so not inductively free
    assert inductive_free(build_graphic(cycle_graph(4), GF7)) is None


def test_inductive_free_agrees_with_saito():
    for g in graphs_up_to_iso(4):
        peo = mcs_peo(g)
        if peo is None:
            continue
        arr = build_graphic(g, GF7)
        assert inductive_free(arr) == saito_check(basis_graphic(g, peo, GF7), arr)


# -- supersolvability


def test_boolean_filtration():
    arr = boolean_arrangement(2, GF3)
    i = arr.index_of[(1, 0)]
    res = supersolvable_verify(arr, Filtration([frozenset({i}), frozenset({0, 1})]))
    assert res.ok and res.product == (t - 1) ** 2


def test_chordal_filtration_examples():
    k3 = complete_graph(3)
    arr = build_graphic(k3, GF7)
    res = supersolvable_verify(arr, chordal_filtration(k3, mcs_peo(k3), arr))
    assert res.ok and res.product == t * (t - 1) * (t - 2)

    arr = build_qdef_graph(k3, GF2)
    filt = chordal_filtration(k3, mcs_peo(k3), arr)
    assert filt.sizes() == [1, 2, 4]
    res = supersolvable_verify(arr, filt)
    assert res.ok and res.product == (t - 1) * (t - 2) * (t - 4)

    p3 = path_graph(3)
    arr = build_graphic(p3, GF7)
    filt = chordal_filtration(p3, mcs_peo(p3), arr)
    assert sorted(filt.sizes()) == [0, 1, 1]
    assert supersolvable_verify(arr, filt).product == t * (t - 1) ** 2

    k2 = complete_graph(2)
    arr = build_monomial(k2, 2, GF3)
    filt = chordal_filtration(k2, mcs_peo(k2), arr)
    assert filt.sizes() == [1, 3]
    assert supersolvable_verify(arr, filt).ok


def test_filtration_violations():
    # three generic lines in a plane at level 2 with nothing below them to contain their meets
    arr = full_arrangement(2, GF2)
    assert not supersolvable_verify(arr, Filtration([frozenset(), frozenset(range(3))])).ok
    # x3 and x1+x2+x3 enter together; their meet lies in neither x1 nor x2
    arr = Arrangement.from_normals(GF3, 3, [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1)])
    idx = arr.index_of
    bad = Filtration(
        [frozenset({idx[(1, 0, 0)]}), frozenset({idx[(1, 0, 0)], idx[(0, 1, 0)]}), frozenset(range(4))]
    )
    res = supersolvable_verify(arr, bad)
    assert not res.ok
    with pytest.raises(ValueError):
        supersolvable_verify(arr, Filtration([frozenset({0})]))


def test_supersolvable_search_examples():
    assert supersolvable_search(build_graphic(cycle_graph(4), GF7)) is None
    k3 = build_graphic(complete_graph(3), GF7)
    assert supersolvable_verify(k3, supersolvable_search(k3)).ok
    b3 = boolean_arrangement(3, GF3)
    assert supersolvable_verify(b3, supersolvable_search(b3)).ok


def test_supersolvable_search_agrees_with_chordality():
    for g in graphs_up_to_iso(4):
        found = supersolvable_search(build_graphic(g, GF7))
        assert (found is not None) == (mcs_peo(g) is not None)


@given(st.integers(1, 4), st.data())
def test_random_chordal_bases(n, data):
    pairs = list(itertools.combinations(range(1, n + 1), 2))
    g = Graph.make(n, data.draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else [])
    peo = mcs_peo(g)
    if peo is None:
        return
    arr = build_qdef_graph(g, GF3)
    ex = saito_check(basis_qdef(g, peo, GF3), arr)
    assert ex is not None and sum(ex) == len(arr)
    assert terao_factor_check(arr, ex)
