import random
from fractions import Fraction as F

import pytest

from conftest import framework_for
from lamanmv.errors import InputError
from lamanmv.graphs import (
    Framework,
    desargues_graph,
    henneberg_apply,
    k33_graph,
    random_henneberg_sequence,
    triangle,
)
from lamanmv.polysys import (
    FORM_SOE,
    FORM_SUBSOE,
    Constants,
    GaussianRational,
    GR_I,
    GR_ONE,
    Polynomial,
    bezout,
    build_soe,
    build_subsoe,
    degeneracy_direction,
    degeneracy_witness_point,
    evaluate,
    face_system,
    newton_polytopes,
    witness_check,
)


def triangle_framework():
    return Framework.make(triangle(), {(1, 2): 3, (1, 3): 4, (2, 3): 5})


def test_soe_shape_and_pinning():
    soe = build_soe(triangle_framework())
    assert soe.form == FORM_SOE
    assert len(soe.polys) == 6
    assert soe.variables == ("x1", "y1", "x2", "y2", "x3", "y3")
    consts = Constants.default()
    # h1 = x1 - c1, h3 = x2 - (l12 - c1)
    assert soe.polys[0].coefficient((0, 0, 0, 0, 0, 0)) == -consts.c1
    assert soe.polys[2].coefficient((0, 0, 0, 0, 0, 0)) == -(3 - consts.c1)


def test_soe_edge_polynomial_expansion():
    soe = build_soe(triangle_framework())
    h5 = soe.polys[4]
    # (x1-x3)^2 + (y1-y3)^2 - 16 in the in-edge ordering
    assert h5.coefficient((2, 0, 0, 0, 0, 0)) == 1
    assert h5.coefficient((0, 0, 0, 0, 2, 0)) == 1
    assert h5.coefficient((1, 0, 0, 0, 1, 0)) == -2
    assert h5.coefficient((0, 0, 0, 0, 0, 0)) == -16


def test_soe_counts_on_any_laman_graph():
    seq = random_henneberg_sequence(6, seed=2, step2_probability=0.5)
    fw = framework_for(henneberg_apply(seq))
    soe = build_soe(fw)
    n = fw.graph.n
    assert len(soe.polys) == 2 * n
    assert sum(1 for p in soe.polys if p.total_degree() == 2) == 2 * n - 4


def test_soe_desargues_degrees():
    soe = build_soe(framework_for(desargues_graph()))
    assert tuple(p.total_degree() for p in soe.polys) == (1,) * 4 + (2,) * 8


def test_soe_requires_base_edge():
    g = henneberg_apply(random_henneberg_sequence(4, seed=0))
    fw = framework_for(g)
    edges = dict(fw.lengths)
    # strip the base edge by relabeling vertex 2 out of edge (1,2)
    from lamanmv.graphs import Graph

    g2 = Graph.make(4, [(1, 3), (1, 4), (2, 3), (2, 4), (3, 4)])
    fw2 = framework_for(g2)
    with pytest.raises(InputError):
        build_soe(fw2)


def test_subsoe_shape():
    sub = build_subsoe(triangle_framework())
    assert sub.form == FORM_SUBSOE
    assert len(sub.polys) == 9
    assert len(sub.variables) == 9


def test_subsoe_edge_polynomial_support():
    sub = build_subsoe(triangle_framework())
    edge13 = sub.polys[4]
    support = set(edge13.support())
    # s1 + s3 - 2 x1 x3 - 2 y1 y3 - l^2
    assert (0, 0, 0, 0, 0, 0, 1, 0, 0) in support  # s1
    assert (0, 0, 0, 0, 0, 0, 0, 0, 1) in support  # s3
    assert (1, 0, 0, 0, 1, 0, 0, 0, 0) in support  # x1 x3
    assert (0, 1, 0, 0, 0, 1, 0, 0, 0) in support  # y1 y3
    assert (0, 0, 0, 0, 0, 0, 0, 0, 0) in support  # constant
    assert len(support) == 5


def test_subsoe_circle_polynomial_no_constant():
    sub = build_subsoe(triangle_framework())
    circle3 = sub.polys[-1]
    support = set(circle3.support())
    assert support == {
        (0, 0, 0, 0, 0, 0, 0, 0, 1),
        (0, 0, 0, 0, 2, 0, 0, 0, 0),
        (0, 0, 0, 0, 0, 2, 0, 0, 0),
    }


def test_zero_in_every_newton_polytope_except_circles():
    fw = framework_for(k33_graph())
    from lamanmv.mixedvol import _base_framework

    fwb = _base_framework(fw)
    n = fwb.graph.n
    soe = build_soe(fwb)
    for p in soe.polys:
        assert (0,) * p.nvars in p.support()
    sub = build_subsoe(fwb)
    for i, p in enumerate(sub.polys):
        has_zero = (0,) * p.nvars in p.support()
        is_circle = i >= len(sub.polys) - n
        assert has_zero != is_circle


def test_ordering_invariant_for_certificate():
    for seed in (0, 1):
        seq = random_henneberg_sequence(6, seed=seed, step2_probability=0.5)
        fw = framework_for(henneberg_apply(seq))
        soe = build_soe(fw)
        n = fw.graph.n
        for i in range(3, n + 1):
            for col in (2 * i - 2, 2 * i - 1):  # 0-based x_i, y_i
                expo = [0] * (2 * n)
                expo[col] = 2
                assert soe.polys[col].coefficient(tuple(expo)) != 0


def test_newton_polytopes_vertex_reduction():
    soe = build_soe(triangle_framework())
    nps = newton_polytopes(soe)
    assert [p.nvertices for p in nps] == [2, 2, 2, 2, 5, 5]


def test_face_system_minimality():
    soe = build_soe(triangle_framework())
    rng = random.Random(5)
    for _ in range(10):
        w = tuple(F(rng.randint(-3, 3)) for _ in range(6))
        if all(x == 0 for x in w):
            continue
        faces = face_system(soe, w)
        for orig, f in zip(soe.polys, faces.polys):
            vals = {e: sum(wc * x for wc, x in zip(w, e)) for e in orig.support()}
            lo = min(vals.values())
            kept = set(f.support())
            for e, v in vals.items():
                assert (v == lo) == (e in kept)


def test_face_system_pinned_examples():
    soe = build_soe(triangle_framework())
    # All-positive direction: the constant term is the unique minimizer.
    all_pos = face_system(soe, (1, 1, 1, 1, 1, 1))
    for p in all_pos.polys:
        assert p.support() == [(0,) * 6]
    # Direction e1 on h1 = x1 - c1 keeps the constant alone.
    e1 = face_system(soe, (1, 0, 0, 0, 0, 0))
    assert e1.polys[0].terms == (((0, 0, 0, 0, 0, 0), F(-1)),)


def test_circle_newton_polytope_is_triangle():
    sub = build_subsoe(triangle_framework())
    nps = newton_polytopes(sub)
    for circle_np in nps[-3:]:
        assert circle_np.nvertices == 3


def test_face_system_rejects_zero_direction():
    soe = build_soe(triangle_framework())
    with pytest.raises(InputError):
        face_system(soe, (0,) * 6)


def test_degeneracy_face_system_shape():
    soe = build_soe(triangle_framework())
    faces = face_system(soe, degeneracy_direction(3))
    # pinning equations survive whole, edge equations lose the constant
    for i in range(4):
        assert faces.polys[i].terms == soe.polys[i].terms
    for p in faces.polys[4:]:
        assert (0, 0, 0, 0, 0, 0) not in p.support()


def test_evaluate_exact():
    p = Polynomial.make(2, {(2, 0): 1, (0, 2): 1})
    val = p.evaluate((GR_ONE, GR_I))
    assert val.is_zero()
    diff = Polynomial.make(2, {(2, 0): 0})
    assert diff.evaluate((GR_ONE, GR_I)).is_zero()


def test_evaluate_poly_minus_itself():
    rng = random.Random(7)
    soe = build_soe(triangle_framework())
    pt = tuple(
        GaussianRational.of(F(rng.randint(-5, 5), rng.randint(1, 4)),
                            F(rng.randint(-5, 5), rng.randint(1, 4)))
        for _ in range(6)
    )
    for p in soe.polys:
        v = p.evaluate(pt)
        assert (v - v).is_zero()


def test_witness_check_triangle_and_k33():
    assert witness_check(triangle_framework())
    assert witness_check(framework_for(k33_graph()))


def test_witness_original_system_nonzero():
    fw = triangle_framework()
    soe = build_soe(fw)
    pt = degeneracy_witness_point(3, Constants.default(), fw.lengths[(1, 2)])
    vals = evaluate(soe, pt)
    assert any(not v.is_zero() for v in vals)


def test_bezout_values():
    fw = triangle_framework()
    assert bezout(build_soe(fw)) == 4
    assert bezout(build_subsoe(fw)) == 32
    for n, seed in ((4, 0), (5, 1), (6, 2)):
        g = henneberg_apply(random_henneberg_sequence(n, seed=seed, step2_probability=0.3))
        fw = framework_for(g)
        assert bezout(build_soe(fw)) == 4 ** (n - 2)
        assert bezout(build_subsoe(fw)) == 2 ** (3 * n - 4)


def test_constants_validation():
    with pytest.raises(InputError):
        Constants(c1=F(0)).validate(F(5))
    with pytest.raises(InputError):
        Constants(c1=F(5)).validate(F(5))
    assert Constants.generic_for(F(1)).c1 != F(1)
