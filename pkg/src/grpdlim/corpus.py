"""Seeded random instance generators for the property-test corpora.

Everything is driven by a ``random.Random`` instance, so a fixed seed
reproduces the exact corpus.  Index shapes are drawn from a pool of
small categories whose non-identity morphisms are composition-free
(any edge assignment is functorial), plus a few shapes with relations
(group delooping, idempotent) whose edges are drawn from compatible
endofunctor pools.
"""

from __future__ import annotations

import random

from .core import (
    CatFunctor,
    FiniteGroup,
    ProductCat,
    delooping,
    discrete_category,
    discrete_groupoid,
    disjoint_union,
    make_category,
    pullback_index,
    terminal_category,
    terminal_groupoid,
    translation_groupoid,
)
from .holim import GroupAction
from .limits import DiagramFunctor, DiagramMap
from .site import FiniteSite, PresheafDiagram, PresheafMap, SitePoint, SitePresheaf

C2 = FiniteGroup.cyclic(2)
C3 = FiniteGroup.cyclic(3)
S3 = FiniteGroup.symmetric(3)
K4 = FiniteGroup.klein()


def arrow_category():
    return make_category(2, [(0, 1)])


def span_index():
    return make_category(3, [(2, 0), (2, 1)])


def idempotent_index():
    """One object, one non-identity arrow e with e;e = e."""
    return make_category(1, [(0, 0)], {(0, 0): 0})


def parallel_pair_index():
    return make_category(2, [(0, 1), (0, 1)])


def vee_index():
    return make_category(3, [(0, 2), (1, 2)])


# shapes whose only composable non-identity pairs are absent: any edge
# assignment extends to a functor
FREE_SHAPES = [
    terminal_category,
    lambda: discrete_category(2),
    arrow_category,
    span_index,
    pullback_index,
    parallel_pair_index,
]


def small_groupoid_pool():
    pool = [
        terminal_groupoid(),
        discrete_groupoid(2),
        delooping(C2),
        delooping(C3),
        translation_groupoid(C2),
    ]
    pool.append(disjoint_union([delooping(C2), terminal_groupoid()])[0])
    return pool


def big_groupoid_pool():
    return small_groupoid_pool() + [delooping(S3), delooping(K4),
                                    translation_groupoid(C3)]


_functor_cache = {}


def functors_between(a, b):
    """All functors a -> b, memoized by object identity of the pair."""
    key = (id(a), id(b))
    if key not in _functor_cache:
        from .core import Budget
        from .functorcat import _enumerate_functors

        _functor_cache[key] = _enumerate_functors(a, b, Budget())
    return _functor_cache[key]


def random_functor(rng, a, b):
    return rng.choice(functors_between(a, b))


def random_free_diagram(rng, pool, shapes=None):
    """A diagram over a composition-free shape with random vertices/edges."""
    idx = rng.choice(shapes or FREE_SHAPES)()
    vertices = [rng.choice(pool) for _ in range(idx.n_objects)]
    edges = []
    for e in range(idx.n_morphisms):
        if idx.is_identity(e):
            edges.append(CatFunctor.identity(vertices[idx.src[e]]))
        else:
            edges.append(random_functor(rng, vertices[idx.src[e]], vertices[idx.dst[e]]))
    return DiagramFunctor(idx, vertices, edges)


def involutions_of(g):
    """Endofunctors f with f;f = id, for C2-delooping index edges."""
    ident = CatFunctor.identity(g)
    out = [ident]
    for f in functors_between(g, g):
        if not f.same_maps(ident) and f.then(f).same_maps(ident):
            out.append(f)
    return out


def idempotents_of(g):
    """Endofunctors f with f;f = f, for idempotent index edges."""
    return [f for f in functors_between(g, g) if f.then(f).same_maps(f)]


def random_c2_diagram(rng, pool):
    """A C2-action diagram: index is the delooping of Z/2."""
    idx = delooping(C2)
    v = rng.choice(pool)
    inv = rng.choice(involutions_of(v))
    return DiagramFunctor(idx, [v], [CatFunctor.identity(v), inv])


def random_diagram(rng, pool=None):
    pool = pool or small_groupoid_pool()
    if rng.random() < 0.2:
        return random_c2_diagram(rng, pool)
    return random_free_diagram(rng, pool)


def product_decoration(d, factor, inclusion_object=None):
    """Decorate each vertex with a product by a fixed groupoid.

    Returns (decorated diagram, DiagramMap of projections onto d).
    If ``inclusion_object`` is given, additionally returns the strict
    section d -> decorated at that object of the factor.
    """
    prods = [ProductCat([v, factor]) for v in d.vertices]
    edges = []
    for e in range(d.index.n_morphisms):
        a, b = d.index.src[e], d.index.dst[e]
        edges.append(
            prods[b].pair_functors(
                prods[a].cat,
                [prods[a].projections[0].then(d.edges[e]), prods[a].projections[1]],
            )
        )
    decorated = DiagramFunctor(d.index, [p.cat for p in prods], edges)
    proj = DiagramMap(decorated, d, [p.projections[0] for p in prods])
    if inclusion_object is None:
        return decorated, proj
    incl_comps = []
    for a, v in enumerate(d.vertices):
        obj_map = [prods[a].obj_index[(x, inclusion_object)] for x in range(v.n_objects)]
        ident = factor.identity[inclusion_object]
        mor_map = [prods[a].mor_index[(m, ident)] for m in range(v.n_morphisms)]
        incl_comps.append(CatFunctor(v, prods[a].cat, obj_map, mor_map))
    incl = DiagramMap(d, decorated, incl_comps)
    return decorated, proj, incl


def equivalence_instance(rng):
    """A diagram map whose components are all equivalences.

    Decorating with a contractible factor (the translation groupoid of
    Z/2) and projecting is componentwise an equivalence.
    """
    base = random_diagram(rng)
    factor = translation_groupoid(C2)
    if rng.random() < 0.5:
        decorated, proj = product_decoration(base, factor)
        return proj
    decorated, proj, incl = product_decoration(base, factor, inclusion_object=rng.randrange(2))
    return incl


def fibration_instance(rng):
    """A diagram map whose components are all fibrations: projection off
    a delooping factor (or off the contractible factor)."""
    base = random_diagram(rng)
    factor = delooping(C2) if rng.random() < 0.7 else translation_groupoid(C2)
    decorated, proj = product_decoration(base, factor)
    return proj


# ---------------------------------------------------------------------------
# product-index diagrams (Fubini, colim/holim commutation)

def product_of_diagrams(prod, d0, d1):
    """The external product diagram over an already-built product index."""
    c0, c1 = prod.factors
    vprods = {}
    for a in range(c0.n_objects):
        for b in range(c1.n_objects):
            vprods[(a, b)] = ProductCat([d0.vertices[a], d1.vertices[b]])
    vertices = [vprods[t] for t in prod.obj_tuples]
    edges = []
    for (u, v) in prod.mor_tuples:
        sa, sb = c0.src[u], c1.src[v]
        ta, tb = c0.dst[u], c1.dst[v]
        src_pc = vprods[(sa, sb)]
        dst_pc = vprods[(ta, tb)]
        edges.append(
            dst_pc.pair_functors(
                src_pc.cat,
                [src_pc.projections[0].then(d0.edges[u]),
                 src_pc.projections[1].then(d1.edges[v])],
            )
        )
    return DiagramFunctor(prod.cat, [p.cat for p in vertices], edges)


def pulled_back_diagram(prod, d, position):
    """The diagram on a product index that only depends on one factor."""
    vertices = [d.vertices[t[position]] for t in prod.obj_tuples]
    edges = [d.edges[t[position]] for t in prod.mor_tuples]
    return DiagramFunctor(prod.cat, vertices, edges)


TINY_SHAPES = [terminal_category, lambda: discrete_category(2), arrow_category]
TINY_POOL_NAMES = None


def tiny_groupoid_pool():
    return [
        terminal_groupoid(),
        discrete_groupoid(2),
        delooping(C2),
        translation_groupoid(C2),
    ]


def fubini_instance(rng):
    """(ProductCat, diagram over it) with both factors tiny."""
    pool = tiny_groupoid_pool()
    shapes = TINY_SHAPES + [lambda: delooping(C2)]
    c0 = rng.choice(shapes)()
    c1 = rng.choice(shapes)()
    d0 = _diagram_on(rng, c0, pool)
    d1 = _diagram_on(rng, c1, pool)
    prod = ProductCat([c0, c1])
    r = rng.random()
    if r < 0.5:
        return prod, product_of_diagrams(prod, d0, d1)
    return prod, pulled_back_diagram(prod, d0 if r < 0.75 else d1, 0 if r < 0.75 else 1)


def _diagram_on(rng, idx, pool):
    """Random diagram on a given shape (free, C2-delooping or idempotent)."""
    if idx.n_objects == 1 and idx.n_morphisms == 2 and not idx.is_identity(1):
        v = rng.choice(pool)
        if idx.comp[(1, 1)] == 0:  # the non-identity arrow squares to id
            return DiagramFunctor(idx, [v], [CatFunctor.identity(v),
                                             rng.choice(involutions_of(v))])
        e = rng.choice(idempotents_of(v))
        return DiagramFunctor(idx, [v], [CatFunctor.identity(v), e])
    vertices = [rng.choice(pool) for _ in range(idx.n_objects)]
    edges = []
    for e in range(idx.n_morphisms):
        if idx.is_identity(e):
            edges.append(CatFunctor.identity(vertices[idx.src[e]]))
        else:
            edges.append(random_functor(rng, vertices[idx.src[e]], vertices[idx.dst[e]]))
    return DiagramFunctor(idx, vertices, edges)


# ---------------------------------------------------------------------------
# filtered diagrams

FILTERED_SHAPES = [terminal_category, arrow_category, vee_index, idempotent_index]


def random_filtered_diagram(rng, pool=None):
    pool = pool or tiny_groupoid_pool()
    idx = rng.choice(FILTERED_SHAPES)()
    return _diagram_on(rng, idx, pool)


def key_lemma_instance(rng):
    """(K, filtered diagram) pair for the Map(K, -) compactness test."""
    ks = [terminal_category(), discrete_category(2), arrow_category(),
          delooping(C2), pullback_index()]
    return rng.choice(ks), random_filtered_diagram(rng)


def commutation_instance(rng):
    """(ProductCat over I x Gamma, diagram) with I filtered, Gamma finite."""
    pool = tiny_groupoid_pool()
    icat = rng.choice(FILTERED_SHAPES)()
    gcat = rng.choice(TINY_SHAPES + [lambda: delooping(C2)])()
    di = _diagram_on(rng, icat, pool)
    dg = _diagram_on(rng, gcat, pool)
    prod = ProductCat([icat, gcat])
    r = rng.random()
    if r < 0.5:
        return prod, product_of_diagrams(prod, di, dg)
    return prod, pulled_back_diagram(prod, di if r < 0.75 else dg, 0 if r < 0.75 else 1)


# ---------------------------------------------------------------------------
# group actions (model comparisons)

def action_pool():
    """Strict group actions on groupoids, for the fixed-point suites."""
    from .cohomology import ActionOnGroup, delooping_action

    out = []
    out.append(GroupAction.trivial(C2, delooping(C2)))
    out.append(GroupAction.trivial(C2, discrete_groupoid(2)))
    out.append(GroupAction.trivial(C3, delooping(C2)))
    out.append(delooping_action(ActionOnGroup.inversion(C2, C3)))
    out.append(delooping_action(ActionOnGroup.trivial(C2, C2)))
    out.append(delooping_action(ActionOnGroup.trivial(C2, C3)))
    out.append(delooping_action(ActionOnGroup.inversion(C2, K4)))
    # swap on two discrete points
    d2 = discrete_groupoid(2)
    swap = CatFunctor(d2, d2, [1, 0], [1, 0])
    out.append(GroupAction(C2, d2, [CatFunctor.identity(d2), swap]))
    out.append(free_translation_action())
    return out


def free_translation_action():
    """Z/2 acting freely on its own translation groupoid by translation."""
    e2 = translation_groupoid(C2)

    def shift(g):
        obj = [C2.mul[x][g] for x in range(2)]
        mor = [obj[x] * 2 + h for x in range(2) for h in range(2)]
        return CatFunctor(e2, e2, obj, mor)

    return GroupAction(C2, e2, [shift(0), shift(1)])


def pullback_instance(rng):
    """A cospan f: X -> Z <- Y: g of random groupoid functors."""
    pool = small_groupoid_pool()
    z = rng.choice(pool)
    x = rng.choice(pool)
    y = rng.choice(pool)
    return random_functor(rng, x, z), random_functor(rng, y, z)


# ---------------------------------------------------------------------------
# sites and presheaves

def two_open_site(include_v_point=True):
    """The poset U <= V as a site: shape is the arrow category U -> V.

    Point p0 sits inside U and sees both opens (so its stalk is the
    U-section); point p1 sees only V.
    """
    shape = arrow_category()
    op = shape.opposite()
    idx = arrow_category()
    p0 = SitePoint("p0", idx, CatFunctor(idx, op, [1, 0], [1, 0, 2]))
    points = [p0]
    if include_v_point:
        term = terminal_category()
        points.append(SitePoint("p1", term, CatFunctor(term, op, [1], [1])))
    return FiniteSite(shape, points)


def random_presheaf(rng, site, pool=None):
    pool = pool or tiny_groupoid_pool()
    shape = site.shape
    sections = [rng.choice(pool) for _ in range(shape.n_objects)]
    restrictions = []
    for u in range(shape.n_morphisms):
        if shape.is_identity(u):
            restrictions.append(CatFunctor.identity(sections[shape.src[u]]))
        else:
            restrictions.append(
                random_functor(rng, sections[shape.dst[u]], sections[shape.src[u]])
            )
    return SitePresheaf(site, sections, restrictions)


def presheaf_product_decoration(x, factor):
    """(x * factor, projection map) — the sectionwise product presheaf."""
    shape = x.site.shape
    prods = [ProductCat([s, factor]) for s in x.sections]
    restrictions = []
    for u in range(shape.n_morphisms):
        a, b = shape.src[u], shape.dst[u]
        restrictions.append(
            prods[a].pair_functors(
                prods[b].cat,
                [prods[b].projections[0].then(x.restrictions[u]),
                 prods[b].projections[1]],
            )
        )
    decorated = SitePresheaf(x.site, [p.cat for p in prods], restrictions)
    decorated.section_products = prods
    proj = PresheafMap(decorated, x, [p.projections[0] for p in prods])
    return decorated, proj


def separation_witness():
    """A presheaf map on the two-open site (point p0 only) that is a
    local weak equivalence but not a sectionwise one: the U-section is
    an identity while the V-section collapses to a point."""
    site = two_open_site(include_v_point=False)
    bc2 = delooping(C2)
    star = terminal_groupoid()
    to_bc2 = CatFunctor(star, bc2, [0], [0])
    x = SitePresheaf(site, [bc2, star],
                     [CatFunctor.identity(bc2), CatFunctor.identity(star), to_bc2])
    y = SitePresheaf(site, [bc2, bc2],
                     [CatFunctor.identity(bc2), CatFunctor.identity(bc2),
                      CatFunctor.identity(bc2)])
    f = PresheafMap(x, y, [CatFunctor.identity(bc2), to_bc2])
    return f


def identity_presheaf_map(x):
    return PresheafMap(x, x, [CatFunctor.identity(s) for s in x.sections])


def random_presheaf_map(rng, site, pool=None):
    """A random strictly natural map between random presheaves.

    Built by decorating a random base presheaf, so naturality is strict
    by construction."""
    base = random_presheaf(rng, site, pool)
    factor = rng.choice([translation_groupoid(C2), delooping(C2),
                         discrete_groupoid(2)])
    decorated, proj = presheaf_product_decoration(base, factor)
    return proj


def random_presheaf_diagram(rng, site, pool=None):
    """A presheaf diagram over a composition-free shape."""
    pool = pool or tiny_groupoid_pool()
    idx = rng.choice(TINY_SHAPES + [span_index, pullback_index])()
    vertices = []
    edge_data = {}
    # build vertices first, then edges from presheaf-level random maps:
    # to get strict naturality we draw each edge as a decoration
    # projection or an identity, arranged so endpoints line up.
    base = [random_presheaf(rng, site, pool) for _ in range(idx.n_objects)]
    edges = []
    for e in range(idx.n_morphisms):
        if idx.is_identity(e):
            edges.append(identity_presheaf_map(base[idx.src[e]]))
        else:
            a, b = idx.src[e], idx.dst[e]
            comps = []
            ok = True
            for o in range(site.shape.n_objects):
                funs = functors_between(base[a].sections[o], base[b].sections[o])
                if not funs:
                    ok = False
                    break
                comps.append(rng.choice(funs))
            cand = PresheafMap(base[a], base[b], comps) if ok else None
            from .site import validate_presheaf_map

            if cand is not None and not validate_presheaf_map(cand):
                edges.append(cand)
            else:
                # fall back: make the target equal to the source
                base[b] = base[a]
                edges.append(identity_presheaf_map(base[a]))
    # re-resolve identity edges in case a vertex was replaced
    for e in range(idx.n_morphisms):
        if idx.is_identity(e):
            edges[e] = identity_presheaf_map(base[idx.src[e]])
    return PresheafDiagram(idx, base, edges)


def local_we_instance(rng, site):
    """A map of presheaf diagrams, componentwise local weak equivalences.

    Returns (source diagram, target diagram, components list).
    """
    target = random_presheaf_diagram(rng, site)
    factor = translation_groupoid(C2)
    dec_vertices, dec_projs = [], []
    for x in target.vertices:
        dx, px = presheaf_product_decoration(x, factor)
        dec_vertices.append(dx)
        dec_projs.append(px)
    edges = []
    shape = site.shape
    for e in range(target.index.n_morphisms):
        a, b = target.index.src[e], target.index.dst[e]
        comps = []
        for o in range(shape.n_objects):
            src_pc = _pc_of(dec_vertices[a], o)
            dst_pc = _pc_of(dec_vertices[b], o)
            comps.append(
                dst_pc.pair_functors(
                    src_pc.cat,
                    [src_pc.projections[0].then(target.edges[e].components[o]),
                     src_pc.projections[1]],
                )
            )
        edges.append(PresheafMap(dec_vertices[a], dec_vertices[b], comps))
    source = PresheafDiagram(target.index, dec_vertices, edges)
    return source, target, dec_projs


def local_fib_instance(rng, site):
    """Same shape as local_we_instance but decorated by a delooping, so
    components are local fibrations (not equivalences)."""
    target = random_presheaf_diagram(rng, site)
    factor = delooping(C2)
    dec_vertices, dec_projs = [], []
    for x in target.vertices:
        dx, px = presheaf_product_decoration(x, factor)
        dec_vertices.append(dx)
        dec_projs.append(px)
    edges = []
    shape = site.shape
    for e in range(target.index.n_morphisms):
        a, b = target.index.src[e], target.index.dst[e]
        comps = []
        for o in range(shape.n_objects):
            src_pc = _pc_of(dec_vertices[a], o)
            dst_pc = _pc_of(dec_vertices[b], o)
            comps.append(
                dst_pc.pair_functors(
                    src_pc.cat,
                    [src_pc.projections[0].then(target.edges[e].components[o]),
                     src_pc.projections[1]],
                )
            )
        edges.append(PresheafMap(dec_vertices[a], dec_vertices[b], comps))
    source = PresheafDiagram(target.index, dec_vertices, edges)
    return source, target, dec_projs


def _pc_of(presheaf, o):
    """The ProductCat of a section of a decorated presheaf."""
    return presheaf.section_products[o]
