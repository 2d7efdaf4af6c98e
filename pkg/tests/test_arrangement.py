import itertools
import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qdeform.arrangement import (
    Arrangement,
    Hyperplane,
    boolean_arrangement,
    build_graphic,
    build_monomial,
    build_qdef_complex,
    build_qdef_graph,
    build_sgq,
    defining_poly,
    delete,
    empty_arrangement,
    full_arrangement,
    normalize,
    rank_of,
    restrict,
    span_points,
    rref_insert,
)
from qdeform.combinat import (
    Graph,
    all_graphs,
    complete_graph,
    complex_from_facets,
    cycle_graph,
    empty_graph,
    path_graph,
    skeleton_complex,
)
from qdeform.gf import field_make, field_of_order, smallest_field_with_root, units
from qdeform.polyalg import MPoly

GF2, GF3, GF5, GF7 = (field_make(p) for p in (2, 3, 5, 7))


@st.composite
def graphs(draw, max_n=5):
    n = draw(st.integers(1, max_n))
    pairs = list(itertools.combinations(range(1, n + 1), 2))
    picked = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return Graph.make(n, picked)


def test_hyperplane_normalisation():
    spec = field_of_order(5)
    assert normalize(spec, (0, 2, 4)) == (0, 1, 2)
    with pytest.raises(ValueError):
        normalize(spec, (0, 0))
    h = Hyperplane.from_elements([spec(0), spec(3), spec(1)])
    assert h.normal == (0, 1, 2)
    assert h.support() == [2, 3]


@given(st.sampled_from([2, 3, 4, 5, 7, 9]), st.data())
def test_normalisation_idempotent_and_scale_invariant(q, data):
    spec = field_of_order(q)
    v = data.draw(st.lists(st.integers(0, q - 1), min_size=3, max_size=3).filter(any))
    n = normalize(spec, v)
    assert normalize(spec, n) == n
    for u in units(spec):
        scaled = [spec.mul_table[u.index][c] for c in v]
        assert normalize(spec, scaled) == n


def test_rref_and_span():
    spec = GF3
    rows = rref_insert(spec, (), (1, 1, 0))
    rows = rref_insert(spec, rows, (0, 1, 1))
    assert rref_insert(spec, rows, (1, 2, 1)) is None
    assert rref_insert(spec, rows, (1, 2, 2)) is not None
    assert len(span_points(spec, rows)) == (9 - 1) // 2
    assert rank_of(spec, [(1, 0, 0), (0, 1, 0), (1, 1, 0)]) == 2


# -- builders


def test_graphic_examples():
    assert len(build_graphic(complete_graph(3), GF5)) == 3
    assert len(build_graphic(empty_graph(4), GF5)) == 0
    assert len(build_graphic(path_graph(3), GF5)) == 2


def test_qdef_complex_examples():
    full = complex_from_facets(3, [[1, 2, 3]])
    arr = build_qdef_complex(full, GF3)
    assert sum(1 for v in arr.normals if all(v)) == 4
    assert build_qdef_complex(skeleton_complex(4, 1), GF3).same_set(boolean_arrangement(4, GF3))
    assert len(build_qdef_complex(skeleton_complex(5, 3), GF2)) == 25


def test_qdef_graph_examples():
    assert len(build_qdef_graph(complete_graph(3), GF2)) == 7
    assert len(build_qdef_graph(empty_graph(3), GF5)) == 3


def test_qdef_graph_equals_sgq_iff_triangle_free():
    for q in (3, 4):
        spec = field_of_order(q)
        for g in all_graphs(5):
            same = build_qdef_graph(g, spec).same_set(build_sgq(g, spec))
            assert same == g.is_triangle_free()


def test_sgq_examples():
    arr = build_sgq(complete_graph(2), GF3)
    assert sorted(arr.normals) == sorted([(1, 0), (0, 1), (1, 2), (1, 1)])
    assert build_sgq(empty_graph(3), GF5).same_set(boolean_arrangement(3, GF5))
    assert build_sgq(complete_graph(2), GF2).normals == ((0, 1), (1, 0), (1, 1))


def test_monomial_examples():
    m = build_monomial(complete_graph(2), 2, GF3)
    assert set(m.normals) == {(1, 0), (0, 1), (1, 2), (1, 1)}
    assert build_monomial(complete_graph(3), 1, GF2, simplified=True).same_set(build_graphic(complete_graph(3), GF2))
    assert build_monomial(empty_graph(4), 3, GF7).same_set(boolean_arrangement(4, GF7))
    assert len(build_monomial(empty_graph(4), 3, GF7, simplified=True)) == 0


@given(graphs(), st.sampled_from([2, 3, 4, 5]))
def test_sgq_is_monomial_with_r_q_minus_one(g, q):
    spec = field_of_order(q)
    assert build_sgq(g, spec).same_set(build_monomial(g, q - 1, spec))


@given(graphs())
def test_simplified_r1_is_graphic(g):
    spec = smallest_field_with_root(1)
    assert build_monomial(g, 1, spec, simplified=True).same_set(build_graphic(g, spec))


@pytest.mark.parametrize("l,k,q", [(4, 2, 3), (5, 3, 3), (4, 3, 4)])
def test_face_count_law_on_skeleta(l, k, q):
    cx = skeleton_complex(l, k)
    expected = sum(itertools.starmap(lambda i, _: (q - 1) ** (i - 1), ((len(f), f) for f in cx.sorted_faces())))
    assert len(build_qdef_complex(cx, field_of_order(q))) == expected


def test_full_arrangement_examples():
    assert len(full_arrangement(2, GF2)) == 3
    assert len(full_arrangement(2, GF3)) == 4
    assert len(full_arrangement(3, GF2)) == 7
    with pytest.raises(ValueError):
        full_arrangement(6, GF2)


# -- deletion and restriction


def test_restrict_examples():
    b2 = boolean_arrangement(2, GF3)
    r = restrict(b2, (1, 0))
    assert r.dim == 1 and r.normals == ((1,),)
    full = full_arrangement(2, GF2)
    for i in range(len(full)):
        assert len(restrict(full, i)) == 1


def test_delete_then_readd():
    arr = build_sgq(cycle_graph(4), GF3)
    for v in arr.normals:
        d = delete(arr, v)
        assert len(d) == len(arr) - 1
        back = Arrangement.from_normals(GF3, arr.dim, d.normals + (v,))
        assert back.same_set(arr)
    with pytest.raises(ValueError):
        delete(delete(arr, 0), arr.normals[0])


def test_restrict_keeps_central_and_normalised():
    arr = build_qdef_graph(complete_graph(3), field_of_order(4))
    for i in range(len(arr)):
        r = restrict(arr, i)
        assert r.dim == 2
        for v in r.normals:
            assert normalize(r.spec, v) == v


# -- defining polynomial and serialisation


def test_defining_poly_examples():
    x1, x2 = (MPoly.var(GF2, 2, i) for i in range(2))
    assert defining_poly(build_sgq(complete_graph(2), GF2)) == x1 * x2 * (x1 + x2)
    q_graphic = defining_poly(build_graphic(complete_graph(2), GF5))
    y1, y2 = (MPoly.var(GF5, 2, i) for i in range(2))
    assert q_graphic == y1 - y2
    assert defining_poly(empty_arrangement(3, GF5)) == MPoly.const(GF5, 3, 1)


@given(graphs(max_n=4), st.sampled_from([2, 3, 4]))
def test_defining_poly_degree(g, q):
    arr = build_qdef_graph(g, field_of_order(q))
    assert defining_poly(arr).degree() == len(arr)


@pytest.mark.parametrize("q", [2, 4, 9])
def test_json_round_trip(q):
    arr = build_qdef_graph(complete_graph(3), field_of_order(q))
    text = json.dumps(arr.to_json())
    assert Arrangement.from_json(text).same_set(arr)


def test_from_normals_validates_length():
    with pytest.raises(ValueError):
        Arrangement.from_normals(GF3, 2, [(1, 0, 0)])
