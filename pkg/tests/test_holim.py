import random

import pytest

from grpdlim.core import (
    Budget,
    CatFunctor,
    FiniteGroup,
    delooping,
    make_category,
    terminal_groupoid,
    translation_groupoid,
    validate_functor,
    validate_groupoid,
)
from grpdlim.equiv import are_equivalent, is_equivalence, skeleton
from grpdlim.holim import (
    DiagramFunctor,
    GroupAction,
    fubini,
    hfp_via_holim,
    holim,
    homotopy_fixed_points,
    homotopy_pullback,
    homotopy_pullback_reduced,
    homotopy_pullback_via_holim,
    lim_to_holim,
    loop_groupoid,
    loop_vs_pullback,
    pullback_comparison,
    validate_action,
)

from oracles import centralizer, conjugacy_classes


def is_isomorphism(f):
    ok, _ = is_equivalence(f)
    return (
        ok
        and f.source.n_objects == f.target.n_objects
        and f.source.n_morphisms == f.target.n_morphisms
        and len(set(f.obj_map)) == f.source.n_objects
    )


def test_holim_of_point_diagram_recovers_vertex():
    idx = make_category(1, [])
    b = delooping(FiniteGroup.symmetric(3))
    h = holim(DiagramFunctor(idx, [b], [CatFunctor.identity(b)]))
    assert validate_groupoid(h.groupoid) == []
    assert are_equivalent(h.groupoid, b)


def test_lim_to_holim_is_functor_and_equivalence_for_identity_span():
    idx = make_category(2, [(0, 1)])
    e = translation_groupoid(FiniteGroup.cyclic(2))
    d = DiagramFunctor.constant(idx, e)
    cmp, lim, projs, h = lim_to_holim(d)
    assert validate_functor(cmp) == []
    ok, _ = is_equivalence(cmp)
    assert ok


def test_homotopy_pullback_of_points_over_delooping_is_the_group():
    # pt -> BG <- pt has homotopy fiber product a discrete groupoid on |G|
    b = delooping(FiniteGroup.symmetric(3))
    t = terminal_groupoid()
    f = CatFunctor(t, b, [0], [0])
    model = homotopy_pullback_reduced(f, f)
    assert model.groupoid.n_objects == 6
    assert model.groupoid.n_morphisms == 6  # identities only
    assert validate_groupoid(model.groupoid) == []


def test_five_tuple_and_reduced_models_compare():
    c2 = FiniteGroup.cyclic(2)
    e = translation_groupoid(c2)
    b = delooping(c2)
    f = CatFunctor(e, b, [0, 0], [0, 1, 0, 1])
    g = CatFunctor(terminal_groupoid(), b, [0], [0])
    five = homotopy_pullback(f, g)
    reduced = homotopy_pullback_reduced(f, g)
    assert validate_groupoid(five.groupoid) == []
    assert validate_groupoid(reduced.groupoid) == []
    cmp = pullback_comparison(f, g, five, reduced)
    assert validate_functor(cmp) == []
    ok, _ = is_equivalence(cmp)
    assert ok


def test_equalizer_formula_pullback_matches_explicit_model():
    c2 = FiniteGroup.cyclic(2)
    e = translation_groupoid(c2)
    b = delooping(c2)
    f = CatFunctor(e, b, [0, 0], [0, 1, 0, 1])
    g = CatFunctor(terminal_groupoid(), b, [0], [0])
    h, five, cmp = homotopy_pullback_via_holim(f, g)
    assert validate_functor(cmp) == []
    assert is_isomorphism(cmp)


def test_hfp_trivial_action_counts():
    # trivial C2 on BC3: one fixed point with automorphism group C3
    a = GroupAction.trivial(FiniteGroup.cyclic(2), delooping(FiniteGroup.cyclic(3)))
    assert validate_action(a) == []
    model = homotopy_fixed_points(a)
    rep = skeleton(model.groupoid)
    assert len(rep.iso_classes) == 1
    assert rep.automorphism_groups[0].order == 3


def test_hfp_inversion_action_counts():
    # C2 inverting C3: three cocycles, all cohomologous, trivial stabilizer
    b3 = delooping(FiniteGroup.cyclic(3))
    inv = CatFunctor(b3, b3, [0], [0, 2, 1])
    a = GroupAction(FiniteGroup.cyclic(2), b3, [CatFunctor.identity(b3), inv])
    assert validate_action(a) == []
    model = homotopy_fixed_points(a)
    assert model.groupoid.n_objects == 3
    rep = skeleton(model.groupoid)
    assert len(rep.iso_classes) == 1
    assert rep.automorphism_groups[0].order == 1


def test_hfp_equalizer_formula_matches_model():
    b3 = delooping(FiniteGroup.cyclic(3))
    inv = CatFunctor(b3, b3, [0], [0, 2, 1])
    a = GroupAction(FiniteGroup.cyclic(2), b3, [CatFunctor.identity(b3), inv])
    h, model, cmp = hfp_via_holim(a)
    assert validate_functor(cmp) == []
    assert is_isomorphism(cmp)


def test_free_action_has_contractible_hfp_but_empty_fixed_points():
    from grpdlim.corpus import free_translation_action

    a = free_translation_action()
    e = a.space
    assert validate_action(a) == []
    # no strictly fixed object, but the homotopy fixed points are a point
    assert all(a.act[1].obj_map[x] != x for x in range(e.n_objects))
    model = homotopy_fixed_points(a)
    assert model.groupoid.n_objects > 0
    assert are_equivalent(model.groupoid, terminal_groupoid())


def test_loop_groupoid_of_bs3_matches_conjugacy_oracle():
    s3 = FiniteGroup.symmetric(3)
    lx = loop_groupoid(delooping(s3))
    assert lx.groupoid.n_objects == 6
    rep = skeleton(lx.groupoid)
    classes = conjugacy_classes([list(r) for r in s3.mul])
    assert len(rep.iso_classes) == len(classes) == 3
    assert sorted(len(c) for c in rep.iso_classes) == sorted(len(c) for c in classes)
    # automorphisms of (pt, g) are the centralizer of g
    got = sorted(g.order for g in rep.automorphism_groups)
    want = sorted(len(centralizer([list(r) for r in s3.mul], c[0])) for c in classes)
    assert got == want


def test_loop_vs_pullback_is_equivalence():
    for g in (FiniteGroup.cyclic(3), FiniteGroup.symmetric(3)):
        lx, reduced, cmp = loop_vs_pullback(delooping(g))
        assert validate_functor(cmp) == []
        ok, _ = is_equivalence(cmp)
        assert ok


def test_fubini_on_random_instances():
    from grpdlim.corpus import fubini_instance

    rng = random.Random(7)
    for _ in range(5):
        prod, d = fubini_instance(rng)
        h_full, out = fubini(prod, d)
        for outer in (0, 1):
            h_iter, cmp = out[outer]
            assert validate_functor(cmp) == []
            assert is_isomorphism(cmp)


def test_holim_respects_budget():
    from grpdlim.core import BudgetExceeded

    b = delooping(FiniteGroup.symmetric(3))
    idx = make_category(1, [])
    with pytest.raises(BudgetExceeded):
        holim(DiagramFunctor(idx, [b], [CatFunctor.identity(b)]), Budget(3))
