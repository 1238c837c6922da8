import pytest

from grpdlim.core import (
    CatFunctor,
    FiniteGroup,
    delooping,
    discrete_groupoid,
    make_category,
    terminal_category,
    translation_groupoid,
    validate_groupoid,
)
from grpdlim.functorcat import exponential_iso, map_category, postcompose, precompose


def test_map_from_point_recovers_target():
    g = translation_groupoid(FiniteGroup.cyclic(2))
    fg = map_category(terminal_category(), g)
    assert fg.n_functors == g.n_objects
    assert fg.groupoid().n_morphisms == g.n_morphisms
    assert validate_groupoid(fg.groupoid()) == []


def test_map_between_deloopings_counts_homomorphisms():
    bc2 = delooping(FiniteGroup.cyclic(2))
    fg = map_category(bc2, bc2)
    # two homomorphisms C2 -> C2
    assert fg.n_functors == 2
    # natural transformations delooped: conjugation relations
    assert validate_groupoid(fg.groupoid()) == []


def test_map_into_bs3_counts_homomorphisms():
    bc2 = delooping(FiniteGroup.cyclic(2))
    bs3 = delooping(FiniteGroup.symmetric(3))
    fg = map_category(bc2, bs3)
    # homs C2 -> S3: trivial + one per transposition
    assert fg.n_functors == 4


def test_enumeration_order_is_canonical():
    bc2 = delooping(FiniteGroup.cyclic(2))
    a = map_category(bc2, bc2)
    b = map_category(bc2, bc2)
    assert [f.mor_map for f in a.functors] == [f.mor_map for f in b.functors]
    assert a.nats == b.nats


def test_nt_composition_tables():
    g = delooping(FiniteGroup.cyclic(3))
    fg = map_category(delooping(FiniteGroup.trivial()), g)
    grpd = fg.groupoid()
    assert validate_groupoid(grpd) == []
    assert grpd.n_morphisms == 3


def test_pre_and_postcompose_are_functors():
    from grpdlim.core import validate_functor

    arrow = make_category(2, [(0, 1)])
    term = terminal_category()
    bc2 = delooping(FiniteGroup.cyclic(2))
    d2 = discrete_groupoid(2)
    to_point = CatFunctor(arrow, term, [0, 0], [0, 0, 0])
    mk = map_category(term, bc2)
    mk2 = map_category(arrow, bc2)
    pre = precompose(to_point, mk, mk2)
    assert validate_functor(pre) == []

    incl = CatFunctor(d2, bc2, [0, 0], [0, 0])
    ma = map_category(arrow, d2)
    mb = map_category(arrow, bc2)
    post = postcompose(incl, ma, mb)
    assert validate_functor(post) == []


@pytest.mark.parametrize("k,h", [
    ("terminal", "arrow"),
    ("arrow", "terminal"),
    ("bc2", "arrow"),
])
def test_exponential_law(k, h):
    from grpdlim.core import validate_functor

    shapes = {
        "terminal": terminal_category(),
        "arrow": make_category(2, [(0, 1)]),
        "bc2": delooping(FiniteGroup.cyclic(2)),
    }
    g = delooping(FiniteGroup.cyclic(2))
    fwd, bwd = exponential_iso(shapes[k], shapes[h], g)
    assert validate_functor(fwd) == []
    assert validate_functor(bwd) == []
    assert fwd.then(bwd).same_maps(CatFunctor.identity(fwd.source))
    assert bwd.then(fwd).same_maps(CatFunctor.identity(bwd.source))


def test_budget_is_enforced():
    from grpdlim.core import Budget, BudgetExceeded

    bs3 = delooping(FiniteGroup.symmetric(3))
    with pytest.raises(BudgetExceeded):
        map_category(bs3, bs3, Budget(5))
