import random

import pytest

from grpdlim.core import (
    CatFunctor,
    FiniteGroup,
    delooping,
    make_category,
    terminal_groupoid,
    validate_functor,
    validate_groupoid,
)
from grpdlim.equiv import are_equivalent, is_equivalence, skeleton
from grpdlim.site import (
    FiniteSite,
    PresheafDiagram,
    PresheafMap,
    SitePresheaf,
    holim_stalk_compare,
    is_local_fibration,
    is_local_weak_equivalence,
    is_sectionwise_weak_equivalence,
    presheaf_holim,
    presheaf_holim_map,
    stalk,
    stalk_map,
    validate_presheaf,
    validate_presheaf_map,
    validate_site,
)
from grpdlim.corpus import (
    identity_presheaf_map,
    local_fib_instance,
    local_we_instance,
    random_presheaf,
    random_presheaf_diagram,
    random_presheaf_map,
    separation_witness,
    two_open_site,
)


def test_two_open_site_is_valid():
    site = two_open_site()
    assert validate_site(site) == []


def test_random_presheaves_are_valid():
    rng = random.Random(3)
    site = two_open_site()
    for _ in range(10):
        x = random_presheaf(rng, site)
        assert validate_presheaf(x) == []


def test_stalks_pick_out_the_right_sections():
    rng = random.Random(4)
    site = two_open_site()
    x = random_presheaf(rng, site)
    # p0 sits inside U: the stalk is the U-section
    s0 = stalk(x, site.points[0])
    assert are_equivalent(s0.groupoid, x.sections[0])
    # p1 only sees V
    s1 = stalk(x, site.points[1])
    assert s1.groupoid.n_objects == x.sections[1].n_objects
    assert s1.groupoid.n_morphisms == x.sections[1].n_morphisms


def test_validate_presheaf_catches_broken_functoriality():
    shape = make_category(3, [(0, 1), (1, 2), (0, 2)], {(0, 1): 2})
    site = FiniteSite(shape, [])
    b3 = delooping(FiniteGroup.cyclic(3))
    ident = CatFunctor.identity(b3)
    inversion = CatFunctor(b3, b3, [0], [0, 2, 1])
    # composite restriction disagrees with the two steps
    x = SitePresheaf(site, [b3, b3, b3],
                    [ident, ident, ident, ident, ident, inversion])
    assert validate_presheaf(x) != []


def test_validate_presheaf_map_catches_non_naturality():
    site = two_open_site()
    b = delooping(FiniteGroup.cyclic(2))
    ident = CatFunctor.identity(b)
    x = SitePresheaf(site, [b, b], [ident, ident, ident])
    trivial = CatFunctor(b, b, [0], [0, 0])
    bad = PresheafMap(x, x, [ident, trivial])
    assert validate_presheaf_map(bad) != []
    assert validate_presheaf_map(identity_presheaf_map(x)) == []


def test_separation_witness_is_local_but_not_sectionwise():
    f = separation_witness()
    assert validate_presheaf(f.source) == []
    assert validate_presheaf(f.target) == []
    assert validate_presheaf_map(f) == []
    sw, certs = is_sectionwise_weak_equivalence(f)
    assert not sw
    assert certs[1].get("full") is False
    lw, _ = is_local_weak_equivalence(f)
    assert lw


def test_random_decorated_maps_are_local_fibrations():
    rng = random.Random(6)
    site = two_open_site()
    for _ in range(5):
        f = random_presheaf_map(rng, site)
        assert validate_presheaf_map(f) == []
        # product projections always lift isomorphisms
        fib, _ = is_local_fibration(f)
        assert fib


def test_stalk_map_components():
    f = separation_witness()
    p = f.source.site.points[0]
    fun, cs, ct = stalk_map(f, p)
    assert validate_functor(fun) == []
    ok, _ = is_equivalence(fun)
    assert ok


def test_presheaf_holim_of_inversion_action_presheaf():
    # sectionwise holim over B C2 acting on B C3 by inversion: each
    # section collapses to a point
    site = two_open_site()
    b3 = delooping(FiniteGroup.cyclic(3))
    ident = CatFunctor.identity(b3)
    x = SitePresheaf(site, [b3, b3], [ident, ident, ident])
    inversion = CatFunctor(b3, b3, [0], [0, 2, 1])
    idx = delooping(FiniteGroup.cyclic(2))
    d = PresheafDiagram(
        idx,
        [x],
        [identity_presheaf_map(x),
         PresheafMap(x, x, [inversion, inversion])],
    )
    sheaf, holims = presheaf_holim(d)
    assert validate_presheaf(sheaf) == []
    for o in range(2):
        rep = skeleton(sheaf.sections[o])
        assert len(rep.iso_classes) == 1
        assert rep.automorphism_groups[0].order == 1


def test_presheaf_holim_map_preserves_local_weak_equivalence():
    rng = random.Random(8)
    site = two_open_site()
    source, target, comps = local_we_instance(rng, site)
    f, sh_src, sh_dst = presheaf_holim_map(source, target, comps)
    assert validate_presheaf(sh_src) == []
    assert validate_presheaf(sh_dst) == []
    assert validate_presheaf_map(f) == []
    lw, _ = is_local_weak_equivalence(f)
    assert lw


def test_presheaf_holim_map_preserves_local_fibration():
    rng = random.Random(10)
    site = two_open_site()
    source, target, comps = local_fib_instance(rng, site)
    f, _, _ = presheaf_holim_map(source, target, comps)
    assert validate_presheaf_map(f) == []
    fib, _ = is_local_fibration(f)
    assert fib


def test_stalk_of_holim_is_holim_of_stalks():
    rng = random.Random(12)
    site = two_open_site()
    for _ in range(3):
        d = random_presheaf_diagram(rng, site)
        for p in site.points:
            lhs, rhs, cmp = holim_stalk_compare(d, p)
            assert validate_functor(cmp) == []
            ok, _ = is_equivalence(cmp)
            assert ok
            assert cmp.source.n_objects == cmp.target.n_objects
            assert cmp.source.n_morphisms == cmp.target.n_morphisms
