import pytest

from grpdlim.core import FiniteGroup, validate_functor, validate_groupoid
from grpdlim.cohomology import (
    ActionOnGroup,
    cocycle_groupoid,
    cocycles,
    decompose_hfp,
    h1,
    hfp_to_cocycles,
    stabilizer,
    validate_action_on_group,
)
from grpdlim.equiv import is_equivalence

from oracles import brute_cocycles, brute_h1_classes


def inversion_c2_on(g):
    return ActionOnGroup.inversion(FiniteGroup.cyclic(2), g)


ACTIONS = [
    ("trivial C2 on C2", ActionOnGroup.trivial(FiniteGroup.cyclic(2), FiniteGroup.cyclic(2))),
    ("trivial C2 on C3", ActionOnGroup.trivial(FiniteGroup.cyclic(2), FiniteGroup.cyclic(3))),
    ("C2 inverting C3", inversion_c2_on(FiniteGroup.cyclic(3))),
    ("C2 inverting C4", inversion_c2_on(FiniteGroup.cyclic(4))),
    ("trivial C3 on C3", ActionOnGroup.trivial(FiniteGroup.cyclic(3), FiniteGroup.cyclic(3))),
    ("trivial C2 on K4", ActionOnGroup.trivial(FiniteGroup.cyclic(2), FiniteGroup.klein())),
    ("trivial C2 on S3", ActionOnGroup.trivial(FiniteGroup.cyclic(2), FiniteGroup.symmetric(3))),
]


@pytest.mark.parametrize("name,a", ACTIONS)
def test_actions_are_valid(name, a):
    assert validate_action_on_group(a) == []


@pytest.mark.parametrize("name,a", ACTIONS)
def test_cocycles_match_brute_force(name, a):
    gm = [list(r) for r in a.gamma.mul]
    gg = [list(r) for r in a.g.mul]
    act = [list(r) for r in a.act]
    assert sorted(cocycles(a)) == sorted(brute_cocycles(gm, gg, act))


@pytest.mark.parametrize("name,a", ACTIONS)
def test_h1_classes_match_brute_force(name, a):
    gm = [list(r) for r in a.gamma.mul]
    gg = [list(r) for r in a.g.mul]
    act = [list(r) for r in a.act]
    _, classes = brute_h1_classes(gm, gg, act)
    reps, model, rep = h1(a)
    assert len(reps) == len(classes)
    assert validate_groupoid(model.groupoid) == []


@pytest.mark.parametrize("name,a", ACTIONS)
def test_orbit_stabilizer_partition(name, a):
    # |Z^1| equals the sum of the orbit sizes [G : K_sigma]
    zs = cocycles(a)
    reps, _, _ = h1(a)
    total = 0
    for sigma in reps:
        k, members = stabilizer(a, sigma)
        assert a.g.order % k.order == 0
        total += a.g.order // k.order
    assert total == len(zs)


def test_known_ground_truths():
    # H^1(C2; C2 trivial) = Hom(C2, C2): two classes, full stabilizers
    a = ActionOnGroup.trivial(FiniteGroup.cyclic(2), FiniteGroup.cyclic(2))
    reps, _, _ = h1(a)
    assert len(reps) == 2
    assert all(stabilizer(a, s)[0].order == 2 for s in reps)

    # H^1(C2; C3 inversion): three cocycles, one class, trivial stabilizer
    a = inversion_c2_on(FiniteGroup.cyclic(3))
    zs = cocycles(a)
    assert len(zs) == 3
    reps, _, _ = h1(a)
    assert len(reps) == 1
    assert stabilizer(a, reps[0])[0].order == 1

    # H^1(C2; C4 inversion): every value of sigma(1) works, classes by parity
    a = inversion_c2_on(FiniteGroup.cyclic(4))
    assert len(cocycles(a)) == 4
    reps, _, _ = h1(a)
    assert len(reps) == 2


def test_stabilizer_rejects_non_cocycle():
    a = ActionOnGroup.trivial(FiniteGroup.cyclic(2), FiniteGroup.cyclic(3))
    with pytest.raises(ValueError):
        stabilizer(a, (0, 1))  # sigma(1) = 1 does not square to the identity


@pytest.mark.parametrize("name,a", ACTIONS[:5])
def test_hfp_to_cocycles_is_isomorphism(name, a):
    hfp, model, fun = hfp_to_cocycles(a)
    assert validate_functor(fun) == []
    ok, _ = is_equivalence(fun)
    assert ok
    assert hfp.groupoid.n_objects == model.groupoid.n_objects
    assert hfp.groupoid.n_morphisms == model.groupoid.n_morphisms


@pytest.mark.parametrize("name,a", ACTIONS[:5])
def test_decompose_hfp_certified(name, a):
    hfp, rep, fun, ok, cert = decompose_hfp(a)
    assert ok
    gm = [list(r) for r in a.gamma.mul]
    gg = [list(r) for r in a.g.mul]
    act = [list(r) for r in a.act]
    _, classes = brute_h1_classes(gm, gg, act)
    assert len(rep.iso_classes) == len(classes)


def test_cocycle_groupoid_axioms():
    a = ActionOnGroup.trivial(FiniteGroup.cyclic(2), FiniteGroup.symmetric(3))
    model = cocycle_groupoid(a)
    assert validate_groupoid(model.groupoid) == []
