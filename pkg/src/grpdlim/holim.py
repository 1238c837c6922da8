"""Homotopy limits of groupoid diagrams via the equalizer formula, the
explicit closed-form models (homotopy pullback, homotopy fixed points,
loop groupoid) and the canonical comparison maps between them.

The homotopy limit of a diagram X over an index category C is the
equalizer of the two canonical maps between products of functor
groupoids Map((C over a), X(a)).  The equalizer is computed by directly
comparing the two images of each candidate; the ambient products are
never materialized, which keeps the construction at the size of the
answer rather than the size of the formula.
"""

from __future__ import annotations

import itertools

from .core import (
    Budget,
    CatFunctor,
    Groupoid,
    ProductCat,
    delooping,
    overcategory,
    overcategory_map,
    pullback_index,
)
from .functorcat import map_category
from .limits import DiagramFunctor, DiagramMap, product_groupoid, strict_limit


class Holim:
    """A computed homotopy limit with its enumeration bookkeeping.

    ``objects`` / ``morphisms`` are tuples of indices into the per-vertex
    functor groupoids ``maps``; ``groupoid`` is the dense result.
    """

    def __init__(self, diagram, overcats, maps, objects, morphisms, groupoid):
        self.diagram = diagram
        self.overcats = overcats
        self.maps = maps
        self.objects = objects
        self.morphisms = morphisms
        self.groupoid = groupoid
        self.obj_index = {t: i for i, t in enumerate(objects)}
        self.mor_index = {t: i for i, t in enumerate(morphisms)}


def holim(d, budget=None):
    """Homotopy limit of a groupoid diagram over a finite index category."""
    if budget is None:
        budget = Budget()
    idx = d.index
    n = idx.n_objects
    overcats = [overcategory(idx, a) for a in range(n)]
    maps = [map_category(overcats[a].cat, d.vertices[a], budget) for a in range(n)]
    edges = [e for e in range(idx.n_morphisms) if not idx.is_identity(e)]
    ocms = {
        e: overcategory_map(idx, e, overcats[idx.src[e]], overcats[idx.dst[e]])
        for e in edges
    }
    # conditions at identity edges hold automatically and are skipped

    post_obj_cache, pre_obj_cache = {}, {}

    def post_obj(e, i):
        # the functor i at src(e), pushed into the vertex at dst(e)
        key = (e, i)
        if key not in post_obj_cache:
            fun = maps[idx.src[e]].functors[i]
            ed = d.edges[e]
            post_obj_cache[key] = (
                tuple(ed.obj_map[x] for x in fun.obj_map),
                tuple(ed.mor_map[m] for m in fun.mor_map),
            )
        return post_obj_cache[key]

    def pre_obj(e, j):
        # the functor j at dst(e), restricted along the overcategory map
        key = (e, j)
        if key not in pre_obj_cache:
            fun = maps[idx.dst[e]].functors[j]
            ocm = ocms[e]
            pre_obj_cache[key] = (
                tuple(fun.obj_map[x] for x in ocm.obj_map),
                tuple(fun.mor_map[m] for m in ocm.mor_map),
            )
        return pre_obj_cache[key]

    edges_by_last = [[] for _ in range(n)]
    for e in edges:
        edges_by_last[max(idx.src[e], idx.dst[e])].append(e)

    objects = []
    choice = [0] * n

    def backtrack_obj(a):
        if a == n:
            objects.append(tuple(choice))
            return
        for i in range(maps[a].n_functors):
            budget.spend()
            choice[a] = i
            if all(
                post_obj(e, choice[idx.src[e]]) == pre_obj(e, choice[idx.dst[e]])
                for e in edges_by_last[a]
            ):
                backtrack_obj(a + 1)

    backtrack_obj(0)

    post_nt_cache, pre_nt_cache = {}, {}

    def post_nt(e, t):
        key = (e, t)
        if key not in post_nt_cache:
            comps = maps[idx.src[e]].nats[t][2]
            ed = d.edges[e]
            post_nt_cache[key] = tuple(ed.mor_map[c] for c in comps)
        return post_nt_cache[key]

    def pre_nt(e, t):
        key = (e, t)
        if key not in pre_nt_cache:
            comps = maps[idx.dst[e]].nats[t][2]
            ocm = ocms[e]
            pre_nt_cache[key] = tuple(comps[x] for x in ocm.obj_map)
        return pre_nt_cache[key]

    morphisms = []
    for s in objects:
        for t in objects:
            cand = [maps[a].hom_map.get((s[a], t[a]), []) for a in range(n)]
            if any(not c for c in cand):
                continue
            pick = [0] * n

            def backtrack_mor(a):
                if a == n:
                    morphisms.append(tuple(pick))
                    return
                for nt in cand[a]:
                    budget.spend()
                    pick[a] = nt
                    if all(
                        post_nt(e, pick[idx.src[e]]) == pre_nt(e, pick[idx.dst[e]])
                        for e in edges_by_last[a]
                    ):
                        backtrack_mor(a + 1)

            backtrack_mor(0)

    obj_index = {t: i for i, t in enumerate(objects)}
    mor_index = {t: i for i, t in enumerate(morphisms)}
    src = [obj_index[tuple(maps[a].nats[t[a]][0] for a in range(n))] for t in morphisms]
    dst = [obj_index[tuple(maps[a].nats[t[a]][1] for a in range(n))] for t in morphisms]
    identity = [
        mor_index[tuple(maps[a].identity_nt(t[a]) for a in range(n))] for t in objects
    ]
    by_src = {}
    for m2, o in enumerate(src):
        by_src.setdefault(o, []).append(m2)
    comp = {}
    for m1, t1 in enumerate(morphisms):
        for m2 in by_src.get(dst[m1], ()):
            t2 = morphisms[m2]
            comp[(m1, m2)] = mor_index[
                tuple(maps[a].compose_nt(t1[a], t2[a]) for a in range(n))
            ]
    inverse = [
        mor_index[tuple(maps[a].inverse_nt(t[a]) for a in range(n))] for t in morphisms
    ]
    grpd = Groupoid(len(objects), src, dst, identity, comp, inverse)
    return Holim(d, overcats, maps, objects, morphisms, grpd)


def induced_map(f, source_holim=None, target_holim=None, budget=None):
    """The functor on homotopy limits induced by a diagram map."""
    if budget is None:
        budget = Budget()
    hs = source_holim if source_holim is not None else holim(f.source, budget)
    ht = target_holim if target_holim is not None else holim(f.target, budget)
    n = f.source.index.n_objects
    obj_map = []
    for t in hs.objects:
        images = []
        for a in range(n):
            fun = hs.maps[a].functors[t[a]].then(f.components[a])
            images.append(ht.maps[a].functor_index[(fun.obj_map, fun.mor_map)])
        obj_map.append(ht.obj_index[tuple(images)])
    mor_map = []
    for t in hs.morphisms:
        images = []
        for a in range(n):
            i, j, comps = hs.maps[a].nats[t[a]]
            fun_i = hs.maps[a].functors[i].then(f.components[a])
            fun_j = hs.maps[a].functors[j].then(f.components[a])
            ii = ht.maps[a].functor_index[(fun_i.obj_map, fun_i.mor_map)]
            jj = ht.maps[a].functor_index[(fun_j.obj_map, fun_j.mor_map)]
            new = tuple(f.components[a].mor_map[c] for c in comps)
            images.append(ht.maps[a].nt_index[(ii, jj, new)])
        mor_map.append(ht.mor_index[tuple(images)])
    return CatFunctor(hs.groupoid, ht.groupoid, obj_map, mor_map), hs, ht


def lim_to_holim(d, h=None, budget=None):
    """The canonical comparison from the strict limit into the holim."""
    if budget is None:
        budget = Budget()
    if h is None:
        h = holim(d, budget)
    lim, projections = strict_limit(d)
    n = d.index.n_objects
    obj_map = []
    for x in range(lim.n_objects):
        images = []
        for a in range(n):
            v = projections[a].obj_map[x]
            oc = h.overcats[a]
            const_obj = tuple([v] * oc.cat.n_objects)
            const_mor = tuple([d.vertices[a].identity[v]] * oc.cat.n_morphisms)
            images.append(h.maps[a].functor_index[(const_obj, const_mor)])
        obj_map.append(h.obj_index[tuple(images)])
    mor_map = []
    for m in range(lim.n_morphisms):
        images = []
        for a in range(n):
            w = projections[a].mor_map[m]
            oc = h.overcats[a]
            i = h.objects[obj_map[lim.src[m]]][a]
            j = h.objects[obj_map[lim.dst[m]]][a]
            comps = tuple([w] * oc.cat.n_objects)
            images.append(h.maps[a].nt_index[(i, j, comps)])
        mor_map.append(h.mor_index[tuple(images)])
    return CatFunctor(lim, h.groupoid, obj_map, mor_map), lim, projections, h


# ---------------------------------------------------------------------------
# homotopy pullback

class ExplicitModel:
    """A groupoid whose objects/morphisms are decoded tuples."""

    def __init__(self, groupoid, objects, morphisms):
        self.groupoid = groupoid
        self.objects = objects
        self.morphisms = morphisms
        self.obj_index = {t: i for i, t in enumerate(objects)}
        self.mor_index = {t: i for i, t in enumerate(morphisms)}


def homotopy_pullback(f, g):
    """The five-tuple model (x, y, z, alpha, beta) of the homotopy pullback."""
    x, y, z = f.source, g.source, f.target
    objects = []
    for xo in range(x.n_objects):
        for yo in range(y.n_objects):
            for zo in range(z.n_objects):
                for al in z.hom(f.obj_map[xo], zo):
                    for be in z.hom(g.obj_map[yo], zo):
                        objects.append((xo, yo, zo, al, be))
    obj_index = {t: i for i, t in enumerate(objects)}
    morphisms = []
    for o1, t1 in enumerate(objects):
        for o2, t2 in enumerate(objects):
            x1, y1, z1, a1, b1 = t1
            x2, y2, z2, a2, b2 = t2
            for u in x.hom(x1, x2):
                # the square forces w = a1^-1 ; f(u) ; a2
                w = z.compose_many(z.inverse[a1], f.mor_map[u], a2)
                if z.dst[w] != z2:
                    continue
                for v in y.hom(y1, y2):
                    if z.comp[(g.mor_map[v], b2)] == z.comp[(b1, w)]:
                        morphisms.append((o1, o2, u, v, w))
    mor_index = {(t[0], t[1], t[2], t[3]): i for i, t in enumerate(morphisms)}
    src = [t[0] for t in morphisms]
    dst = [t[1] for t in morphisms]
    identity = [
        mor_index[(o, o, x.identity[t[0]], y.identity[t[1]])]
        for o, t in enumerate(objects)
    ]
    comp = {}
    by_src = {}
    for m2, t2 in enumerate(morphisms):
        by_src.setdefault(t2[0], []).append(m2)
    for m1, t1 in enumerate(morphisms):
        for m2 in by_src.get(t1[1], ()):
            t2 = morphisms[m2]
            comp[(m1, m2)] = mor_index[
                (t1[0], t2[1], x.comp[(t1[2], t2[2])], y.comp[(t1[3], t2[3])])
            ]
    inverse = [
        mor_index[(t[1], t[0], x.inverse[t[2]], y.inverse[t[3]])] for t in morphisms
    ]
    grpd = Groupoid(len(objects), src, dst, identity, comp, inverse)
    model = ExplicitModel(grpd, objects, [(t[0], t[1], t[2], t[3]) for t in morphisms])
    return model


def homotopy_pullback_reduced(f, g):
    """The three-tuple model (x, y, phi: f(x) -> g(y)), with the canonical
    comparison functor from the five-tuple model."""
    x, y, z = f.source, g.source, f.target
    objects = []
    for xo in range(x.n_objects):
        for yo in range(y.n_objects):
            for phi in z.hom(f.obj_map[xo], g.obj_map[yo]):
                objects.append((xo, yo, phi))
    obj_index = {t: i for i, t in enumerate(objects)}
    morphisms = []
    for o1, t1 in enumerate(objects):
        for o2, t2 in enumerate(objects):
            x1, y1, p1 = t1
            x2, y2, p2 = t2
            for u in x.hom(x1, x2):
                for v in y.hom(y1, y2):
                    if z.comp[(f.mor_map[u], p2)] == z.comp[(p1, g.mor_map[v])]:
                        morphisms.append((o1, o2, u, v))
    mor_index = {t: i for i, t in enumerate(morphisms)}
    src = [t[0] for t in morphisms]
    dst = [t[1] for t in morphisms]
    identity = [
        mor_index[(o, o, x.identity[t[0]], y.identity[t[1]])]
        for o, t in enumerate(objects)
    ]
    comp = {}
    by_src = {}
    for m2, t2 in enumerate(morphisms):
        by_src.setdefault(t2[0], []).append(m2)
    for m1, t1 in enumerate(morphisms):
        for m2 in by_src.get(t1[1], ()):
            t2 = morphisms[m2]
            comp[(m1, m2)] = mor_index[
                (t1[0], t2[1], x.comp[(t1[2], t2[2])], y.comp[(t1[3], t2[3])])
            ]
    inverse = [
        mor_index[(t[1], t[0], x.inverse[t[2]], y.inverse[t[3]])] for t in morphisms
    ]
    grpd = Groupoid(len(objects), src, dst, identity, comp, inverse)
    model = ExplicitModel(grpd, objects, morphisms)
    return model


def pullback_comparison(f, g, five=None, reduced=None):
    """The equivalence (x,y,z,alpha,beta) -> (x,y, alpha;beta^-1)."""
    z = f.target
    if five is None:
        five = homotopy_pullback(f, g)
    if reduced is None:
        reduced = homotopy_pullback_reduced(f, g)
    obj_map = [
        reduced.obj_index[(xo, yo, z.comp[(al, z.inverse[be])])]
        for (xo, yo, zo, al, be) in five.objects
    ]
    mor_map = [
        reduced.mor_index[(obj_map[o1], obj_map[o2], u, v)]
        for (o1, o2, u, v) in five.morphisms
    ]
    return CatFunctor(five.groupoid, reduced.groupoid, obj_map, mor_map)


def homotopy_pullback_via_holim(f, g, budget=None):
    """The equalizer-formula homotopy pullback, with the comparison
    isomorphism onto the five-tuple model."""
    if budget is None:
        budget = Budget()
    idx = pullback_index()
    x, y, z = f.source, g.source, f.target
    d = DiagramFunctor(
        idx,
        [x, y, z],
        [
            CatFunctor.identity(x),
            CatFunctor.identity(y),
            CatFunctor.identity(z),
            f,
            g,
        ],
    )
    h = holim(d, budget)
    five = homotopy_pullback(f, g)
    oc2 = h.overcats[2]
    p_id = oc2.obj_index[2]   # id of the middle object, as an arrow into it
    p_f = oc2.obj_index[3]
    p_g = oc2.obj_index[4]
    a_f = oc2.arr_index[(p_f, p_id, 3)]
    a_g = oc2.arr_index[(p_g, p_id, 4)]
    obj_map = []
    for t in h.objects:
        xo = h.maps[0].functors[t[0]].obj_map[0]
        yo = h.maps[1].functors[t[1]].obj_map[0]
        f2 = h.maps[2].functors[t[2]]
        obj_map.append(
            five.obj_index[(xo, yo, f2.obj_map[p_id], f2.mor_map[a_f], f2.mor_map[a_g])]
        )
    mor_map = []
    for m, t in enumerate(h.morphisms):
        u = h.maps[0].nats[t[0]][2][0]
        v = h.maps[1].nats[t[1]][2][0]
        o1 = obj_map[h.groupoid.src[m]]
        o2 = obj_map[h.groupoid.dst[m]]
        mor_map.append(five.mor_index[(o1, o2, u, v)])
    return h, five, CatFunctor(h.groupoid, five.groupoid, obj_map, mor_map)


# ---------------------------------------------------------------------------
# group actions and homotopy fixed points

class GroupAction:
    """A finite group acting strictly on a groupoid, by functors.

    Left-action convention: act[g*h] equals "act[h] then act[g]".
    """

    def __init__(self, group, space, act):
        self.group = group
        self.space = space
        self.act = list(act)

    @staticmethod
    def trivial(group, space):
        ident = CatFunctor.identity(space)
        return GroupAction(group, space, [ident] * group.order)


def validate_action(a):
    report = []
    g = a.group
    if len(a.act) != g.order:
        return ["action table has wrong length"]
    if not a.act[g.identity].same_maps(CatFunctor.identity(a.space)):
        report.append("identity element does not act as the identity functor")
    for x in range(g.order):
        for y in range(g.order):
            if not a.act[g.mul[x][y]].same_maps(a.act[y].then(a.act[x])):
                report.append(f"action not functorial at ({x},{y})")
    return report


def action_diagram(a):
    """The one-vertex diagram over the delooping of the group."""
    return DiagramFunctor(delooping(a.group), [a.space], list(a.act))


def _cocycle_ok(a, x, phi, g, h):
    """Transcription of the homotopy-fixed-point cocycle law.

    Classically phi(g*h) = (g.phi(h)) o phi(g); in diagrammatic order the
    composite runs phi(g) first, then the g-translate of phi(h).
    """
    sp = a.space
    return phi[a.group.mul[g][h]] == sp.comp[(phi[g], a.act[g].mor_map[phi[h]])]


def homotopy_fixed_points(a):
    """The explicit (x, phi) model of the homotopy fixed points."""
    g, sp = a.group, a.space
    n = g.order
    objects = []
    for x in range(sp.n_objects):
        slots = []
        for e in range(n):
            if e == g.identity:
                slots.append([sp.identity[x]])
            else:
                slots.append(sp.hom(x, a.act[e].obj_map[x]))
        for phi in itertools.product(*slots):
            if all(_cocycle_ok(a, x, phi, p, q) for p in range(n) for q in range(n)):
                objects.append((x, phi))
    obj_index = {t: i for i, t in enumerate(objects)}
    morphisms = []
    for o1, (x1, p1) in enumerate(objects):
        for o2, (x2, p2) in enumerate(objects):
            for al in sp.hom(x1, x2):
                # classically phi1(g) o alpha = (g.alpha) o phi(g)
                if all(
                    sp.comp[(al, p2[e])] == sp.comp[(p1[e], a.act[e].mor_map[al])]
                    for e in range(n)
                ):
                    morphisms.append((o1, o2, al))
    mor_index = {t: i for i, t in enumerate(morphisms)}
    src = [t[0] for t in morphisms]
    dst = [t[1] for t in morphisms]
    identity = [
        mor_index[(o, o, sp.identity[t[0]])] for o, t in enumerate(objects)
    ]
    comp = {}
    by_src = {}
    for m2, t2 in enumerate(morphisms):
        by_src.setdefault(t2[0], []).append(m2)
    for m1, t1 in enumerate(morphisms):
        for m2 in by_src.get(t1[1], ()):
            t2 = morphisms[m2]
            comp[(m1, m2)] = mor_index[(t1[0], t2[1], sp.comp[(t1[2], t2[2])])]
    inverse = [mor_index[(t[1], t[0], sp.inverse[t[2]])] for t in morphisms]
    grpd = Groupoid(len(objects), src, dst, identity, comp, inverse)
    return ExplicitModel(grpd, objects, morphisms)


def hfp_via_holim(a, budget=None):
    """Holim over the delooped group, with the isomorphism onto the
    explicit (x, phi) model (evaluation at the identity arrow)."""
    if budget is None:
        budget = Budget()
    d = action_diagram(a)
    h = holim(d, budget)
    model = homotopy_fixed_points(a)
    sp = a.space
    oc = h.overcats[0]
    # overcategory objects are the group elements, in index order
    n = a.group.order
    obj_map = []
    fun_of_obj = []
    for (x, phi) in model.objects:
        f_obj = tuple(a.act[oc.objects[i]].obj_map[x] for i in range(n))
        f_mor = []
        for (i, j, u) in oc.arrows:
            p, q = oc.objects[i], oc.objects[j]
            f_mor.append(sp.comp[(sp.inverse[phi[p]], phi[q])])
        fidx = h.maps[0].functor_index[(f_obj, tuple(f_mor))]
        fun_of_obj.append(fidx)
        obj_map.append(h.obj_index[(fidx,)])
    mor_map = []
    for (o1, o2, al) in model.morphisms:
        comps = tuple(a.act[oc.objects[i]].mor_map[al] for i in range(n))
        nt = h.maps[0].nt_index[(fun_of_obj[o1], fun_of_obj[o2], comps)]
        mor_map.append(h.mor_index[(nt,)])
    cmp = CatFunctor(model.groupoid, h.groupoid, obj_map, mor_map)
    return h, model, cmp


# ---------------------------------------------------------------------------
# loop groupoid

def loop_groupoid(x):
    """Pairs (object, automorphism) with conjugation morphisms."""
    objects = []
    for o in range(x.n_objects):
        for phi in x.hom(o, o):
            objects.append((o, phi))
    obj_index = {t: i for i, t in enumerate(objects)}
    morphisms = []
    for o1, (x1, p1) in enumerate(objects):
        for o2, (x2, p2) in enumerate(objects):
            for al in x.hom(x1, x2):
                if x.comp[(al, p2)] == x.comp[(p1, al)]:
                    morphisms.append((o1, o2, al))
    mor_index = {t: i for i, t in enumerate(morphisms)}
    src = [t[0] for t in morphisms]
    dst = [t[1] for t in morphisms]
    identity = [mor_index[(o, o, x.identity[t[0]])] for o, t in enumerate(objects)]
    comp = {}
    by_src = {}
    for m2, t2 in enumerate(morphisms):
        by_src.setdefault(t2[0], []).append(m2)
    for m1, t1 in enumerate(morphisms):
        for m2 in by_src.get(t1[1], ()):
            t2 = morphisms[m2]
            comp[(m1, m2)] = mor_index[(t1[0], t2[1], x.comp[(t1[2], t2[2])])]
    inverse = [mor_index[(t[1], t[0], x.inverse[t[2]])] for t in morphisms]
    grpd = Groupoid(len(objects), src, dst, identity, comp, inverse)
    return ExplicitModel(grpd, objects, morphisms)


def loop_vs_pullback(x):
    """The canonical functor LX -> X x^h_{X x X} X over the diagonal,
    into the reduced pullback model; an equivalence."""
    prod = product_groupoid([x, x])
    ident = CatFunctor.identity(x)
    diag = prod.pair_functors(x, [ident, ident])
    reduced = homotopy_pullback_reduced(diag, diag)
    lx = loop_groupoid(x)
    obj_map = [
        reduced.obj_index[(o, o, prod.mor_index[(phi, x.identity[o])])]
        for (o, phi) in lx.objects
    ]
    mor_map = [
        reduced.mor_index[(obj_map[o1], obj_map[o2], al, al)]
        for (o1, o2, al) in lx.morphisms
    ]
    return lx, reduced, CatFunctor(lx.groupoid, reduced.groupoid, obj_map, mor_map)


# ---------------------------------------------------------------------------
# Fubini

def iterated_holim(prod, d, outer, budget=None):
    """holim over one factor of a product index, then over the other.

    ``outer`` is the position (0 or 1) of the factor taken last.
    """
    if budget is None:
        budget = Budget()
    inner = 1 - outer
    outer_cat = prod.factors[outer]
    inner_cat = prod.factors[inner]

    def pair_obj(po, pi):
        t = [0, 0]
        t[outer], t[inner] = po, pi
        return prod.obj_index[tuple(t)]

    def pair_mor(mo, mi):
        t = [0, 0]
        t[outer], t[inner] = mo, mi
        return prod.mor_index[tuple(t)]

    inners = []
    for go in range(outer_cat.n_objects):
        sub = DiagramFunctor(
            inner_cat,
            [d.vertices[pair_obj(go, gi)] for gi in range(inner_cat.n_objects)],
            [
                d.edges[pair_mor(outer_cat.identity[go], v)]
                for v in range(inner_cat.n_morphisms)
            ],
        )
        inners.append(holim(sub, budget))
    vertices = [h.groupoid for h in inners]
    edge_funs = []
    for u in range(outer_cat.n_morphisms):
        a, b = outer_cat.src[u], outer_cat.dst[u]
        dm = DiagramMap(
            inners[a].diagram,
            inners[b].diagram,
            [
                d.edges[pair_mor(u, inner_cat.identity[gi])]
                for gi in range(inner_cat.n_objects)
            ],
        )
        fun, _, _ = induced_map(dm, inners[a], inners[b], budget)
        edge_funs.append(fun)
    outer_diag = DiagramFunctor(outer_cat, vertices, edge_funs)
    return holim(outer_diag, budget), inners, (pair_obj, pair_mor)


def fubini_comparison(prod, d, h_full, outer, h_iter, inners, pairers):
    """The canonical functor holim over the product index into the
    iterated holim; bijective on objects and morphisms."""
    pair_obj, pair_mor = pairers
    outer_cat = prod.factors[outer]
    inner = 1 - outer
    inner_cat = prod.factors[inner]

    def slice_functor(t, go, ip):
        """The inner-holim object carved out at outer overcat object ip."""
        ocg = h_iter.overcats[go]
        p = ocg.objects[ip]
        id_sp = outer_cat.identity[outer_cat.src[p]]
        comps = []
        for gi in range(inner_cat.n_objects):
            o = pair_obj(go, gi)
            full_fun = h_full.maps[o].functors[t[o]]
            oc_full = h_full.overcats[o]
            ovd = inners[go].overcats[gi]
            f_obj = tuple(
                full_fun.obj_map[oc_full.obj_index[pair_mor(p, q)]]
                for q in ovd.objects
            )
            f_mor = tuple(
                full_fun.mor_map[
                    oc_full.arr_index[(
                        oc_full.obj_index[pair_mor(p, ovd.objects[iq])],
                        oc_full.obj_index[pair_mor(p, ovd.objects[iq2])],
                        pair_mor(id_sp, v),
                    )]
                ]
                for (iq, iq2, v) in ovd.arrows
            )
            comps.append(inners[go].maps[gi].functor_index[(f_obj, f_mor)])
        return inners[go].obj_index[tuple(comps)]

    obj_map = []
    outer_fun_of = []
    for t in h_full.objects:
        per_outer = []
        for go in range(outer_cat.n_objects):
            ocg = h_iter.overcats[go]
            g_obj = tuple(slice_functor(t, go, ip) for ip in range(len(ocg.objects)))
            g_mor = []
            for (ip, ip2, u) in ocg.arrows:
                p, p2 = ocg.objects[ip], ocg.objects[ip2]
                mor_comps = []
                for gi in range(inner_cat.n_objects):
                    o = pair_obj(go, gi)
                    full_fun = h_full.maps[o].functors[t[o]]
                    oc_full = h_full.overcats[o]
                    ovd = inners[go].overcats[gi]
                    id_q = lambda q: inner_cat.identity[inner_cat.src[q]]
                    comps = tuple(
                        full_fun.mor_map[
                            oc_full.arr_index[(
                                oc_full.obj_index[pair_mor(p, q)],
                                oc_full.obj_index[pair_mor(p2, q)],
                                pair_mor(u, id_q(q)),
                            )]
                        ]
                        for q in ovd.objects
                    )
                    si = inners[go].objects[g_obj[ip]][gi]
                    ti = inners[go].objects[g_obj[ip2]][gi]
                    mor_comps.append(inners[go].maps[gi].nt_index[(si, ti, comps)])
                g_mor.append(inners[go].mor_index[tuple(mor_comps)])
            fidx = h_iter.maps[go].functor_index[(g_obj, tuple(g_mor))]
            per_outer.append(fidx)
        outer_fun_of.append(per_outer)
        obj_map.append(h_iter.obj_index[tuple(per_outer)])

    mor_map = []
    for mi, t in enumerate(h_full.morphisms):
        s_full = h_full.groupoid.src[mi]
        d_full = h_full.groupoid.dst[mi]
        per_outer = []
        for go in range(outer_cat.n_objects):
            ocg = h_iter.overcats[go]
            comps_outer = []
            for ip in range(len(ocg.objects)):
                p = ocg.objects[ip]
                mor_comps = []
                for gi in range(inner_cat.n_objects):
                    o = pair_obj(go, gi)
                    oc_full = h_full.overcats[o]
                    ovd = inners[go].overcats[gi]
                    full_comps = h_full.maps[o].nats[t[o]][2]
                    comps = tuple(
                        full_comps[oc_full.obj_index[pair_mor(p, q)]]
                        for q in ovd.objects
                    )
                    si = inners[go].objects[
                        slice_functor(h_full.objects[s_full], go, ip)
                    ][gi]
                    ti = inners[go].objects[
                        slice_functor(h_full.objects[d_full], go, ip)
                    ][gi]
                    mor_comps.append(inners[go].maps[gi].nt_index[(si, ti, comps)])
                comps_outer.append(inners[go].mor_index[tuple(mor_comps)])
            fs = outer_fun_of[s_full][go]
            ft = outer_fun_of[d_full][go]
            per_outer.append(h_iter.maps[go].nt_index[(fs, ft, tuple(comps_outer))])
        mor_map.append(h_iter.mor_index[tuple(per_outer)])
    return CatFunctor(h_full.groupoid, h_iter.groupoid, obj_map, mor_map)


def fubini(prod, d, budget=None):
    """Both canonical comparisons holim(product) -> iterated holim.

    Returns (full holim, {outer position: (iterated holim, comparison)}).
    """
    if budget is None:
        budget = Budget()
    h_full = holim(d, budget)
    out = {}
    for outer in (0, 1):
        h_iter, inners, pairers = iterated_holim(prod, d, outer, budget)
        cmp = fubini_comparison(prod, d, h_full, outer, h_iter, inners, pairers)
        out[outer] = (h_iter, cmp)
    return h_full, out
