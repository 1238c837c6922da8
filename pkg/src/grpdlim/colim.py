"""Filtered colimits of groupoid diagrams over finite filtered index
categories, the compactness comparison for Map(K, -), and commutation of
filtered colimits with homotopy limits and finite products.

Colimits are computed objectwise and morphismwise: elements are pairs
(stage, item) identified by union-find over all edge images; in a
filtered category this closure coincides with "equal at some common
later stage".  Class representatives are the least (stage, item) pair.
"""

from __future__ import annotations

from .core import Budget, CatFunctor, Groupoid, ProductCat
from .functorcat import map_category
from .limits import DiagramFunctor, DiagramMap, product_groupoid
from .holim import holim, induced_map


def is_filtered(c):
    """The three filtering conditions, checked exhaustively."""
    if c.n_objects == 0:
        return False, {"reason": "empty"}
    for i in range(c.n_objects):
        for j in range(c.n_objects):
            if not any(
                c.hom(i, k) and c.hom(j, k) for k in range(c.n_objects)
            ):
                return False, {"reason": "no cocone", "objects": (i, j)}
    for u in range(c.n_morphisms):
        for v in range(c.n_morphisms):
            if c.src[u] != c.src[v] or c.dst[u] != c.dst[v]:
                continue
            if not any(
                c.comp[(u, w)] == c.comp[(v, w)]
                for w in range(c.n_morphisms)
                if c.src[w] == c.dst[u]
            ):
                return False, {"reason": "parallel pair not coequalized", "morphisms": (u, v)}
    return True, {}


class _UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, x, y):
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            # smaller representative wins, for deterministic classes
            self.parent[max(rx, ry)] = min(rx, ry)


class FilteredColimit:
    """The colimit groupoid plus stage-to-class lookups and cocones."""

    def __init__(self, diagram, groupoid, obj_class, mor_class, cocones):
        self.diagram = diagram
        self.groupoid = groupoid
        self.obj_class = obj_class    # (stage, object) -> colimit object
        self.mor_class = mor_class    # (stage, morphism) -> colimit morphism
        self.cocones = cocones        # one functor per stage


def filtered_colimit(d):
    """Colimit of a diagram over a finite filtered index category."""
    idx = d.index
    filtered, cert = is_filtered(idx)
    if not filtered:
        raise ValueError(f"index category is not filtered: {cert}")

    obj_items = [
        (i, x) for i in range(idx.n_objects) for x in range(d.vertices[i].n_objects)
    ]
    uf_obj = _UnionFind(obj_items)
    for u in range(idx.n_morphisms):
        i, j = idx.src[u], idx.dst[u]
        for x in range(d.vertices[i].n_objects):
            uf_obj.union((i, x), (j, d.edges[u].obj_map[x]))
    obj_reps = sorted({uf_obj.find(it) for it in obj_items})
    obj_class = {it: obj_reps.index(uf_obj.find(it)) for it in obj_items}

    mor_items = [
        (i, m) for i in range(idx.n_objects) for m in range(d.vertices[i].n_morphisms)
    ]
    uf_mor = _UnionFind(mor_items)
    for u in range(idx.n_morphisms):
        i, j = idx.src[u], idx.dst[u]
        for m in range(d.vertices[i].n_morphisms):
            uf_mor.union((i, m), (j, d.edges[u].mor_map[m]))
    mor_reps = sorted({uf_mor.find(it) for it in mor_items})
    mor_class = {it: mor_reps.index(uf_mor.find(it)) for it in mor_items}

    src = [obj_class[(i, d.vertices[i].src[m])] for (i, m) in mor_reps]
    dst = [obj_class[(i, d.vertices[i].dst[m])] for (i, m) in mor_reps]
    identity = [mor_class[(i, d.vertices[i].identity[x])] for (i, x) in obj_reps]
    inverse = [mor_class[(i, d.vertices[i].inverse[m])] for (i, m) in mor_reps]

    comp = {}
    for a, (i, m) in enumerate(mor_reps):
        for b, (j, nmor) in enumerate(mor_reps):
            if dst[a] != src[b]:
                continue
            comp[(a, b)] = _compose_classes(d, mor_class, (i, m), (j, nmor))
    grpd = Groupoid(len(obj_reps), src, dst, identity, comp, inverse)
    cocones = [
        CatFunctor(
            d.vertices[i],
            grpd,
            [obj_class[(i, x)] for x in range(d.vertices[i].n_objects)],
            [mor_class[(i, m)] for m in range(d.vertices[i].n_morphisms)],
        )
        for i in range(idx.n_objects)
    ]
    return FilteredColimit(d, grpd, obj_class, mor_class, cocones)


def _compose_classes(d, mor_class, a, b):
    """Push two composable classes to a common stage and compose there."""
    idx = d.index
    (i, m), (j, nmor) = a, b
    for u in range(idx.n_morphisms):
        if idx.src[u] != i:
            continue
        for v in range(idx.n_morphisms):
            if idx.src[v] != j or idx.dst[v] != idx.dst[u]:
                continue
            k = idx.dst[u]
            m1 = d.edges[u].mor_map[m]
            n1 = d.edges[v].mor_map[nmor]
            vk = d.vertices[k]
            if vk.dst[m1] == vk.src[n1]:
                return mor_class[(k, vk.comp[(m1, n1)])]
    raise AssertionError("filtered index admitted no composition stage")


def colimit_functor(col_src, col_dst, stage_maps):
    """The functor on colimits induced by compatible stagewise functors.

    ``stage_maps[i]`` maps stage i of the source diagram into stage i of
    the target diagram; well-definedness across representatives is
    asserted.
    """
    d = col_src.diagram
    obj_map = [None] * col_src.groupoid.n_objects
    for (i, x), cls in col_src.obj_class.items():
        img = col_dst.obj_class[(i, stage_maps[i].obj_map[x])]
        if obj_map[cls] is None:
            obj_map[cls] = img
        elif obj_map[cls] != img:
            raise AssertionError("stagewise maps are not compatible on objects")
    mor_map = [None] * col_src.groupoid.n_morphisms
    for (i, m), cls in col_src.mor_class.items():
        img = col_dst.mor_class[(i, stage_maps[i].mor_map[m])]
        if mor_map[cls] is None:
            mor_map[cls] = img
        elif mor_map[cls] != img:
            raise AssertionError("stagewise maps are not compatible on morphisms")
    return CatFunctor(col_src.groupoid, col_dst.groupoid, obj_map, mor_map)


def map_colim_compare(k, d, budget=None):
    """colim Map(K, X(i)) -> Map(K, colim X(i)): the compactness
    comparison for a finite category K; an isomorphism of groupoids."""
    if budget is None:
        budget = Budget()
    idx = d.index
    stage_fgs = [map_category(k, d.vertices[i], budget) for i in range(idx.n_objects)]
    from .functorcat import postcompose

    lhs_diag = DiagramFunctor(
        idx,
        [fg.groupoid() for fg in stage_fgs],
        [
            postcompose(d.edges[u], stage_fgs[idx.src[u]], stage_fgs[idx.dst[u]])
            for u in range(idx.n_morphisms)
        ],
    )
    lhs = filtered_colimit(lhs_diag)
    col = filtered_colimit(d)
    rhs = map_category(k, col.groupoid, budget)

    obj_map = [None] * lhs.groupoid.n_objects
    for (i, fi), cls in lhs.obj_class.items():
        fun = stage_fgs[i].functors[fi].then(col.cocones[i])
        img = rhs.functor_index[(fun.obj_map, fun.mor_map)]
        if obj_map[cls] is None:
            obj_map[cls] = img
        elif obj_map[cls] != img:
            raise AssertionError("comparison ill-defined on objects")
    mor_map = [None] * lhs.groupoid.n_morphisms
    for (i, nt), cls in lhs.mor_class.items():
        fi, fj, comps = stage_fgs[i].nats[nt]
        new = tuple(col.cocones[i].mor_map[c] for c in comps)
        si = obj_map[lhs.obj_class[(i, fi)]]
        ti = obj_map[lhs.obj_class[(i, fj)]]
        img = rhs.nt_index[(si, ti, new)]
        if mor_map[cls] is None:
            mor_map[cls] = img
        elif mor_map[cls] != img:
            raise AssertionError("comparison ill-defined on morphisms")
    cmp = CatFunctor(lhs.groupoid, rhs.groupoid(), obj_map, mor_map)
    return lhs, rhs, cmp


def colim_holim_compare(prod, d, budget=None):
    """colim_I holim_Gamma X -> holim_Gamma colim_I X for a diagram over
    a product index with I (position 0) filtered and Gamma (position 1)
    finite; an isomorphism of groupoids."""
    if budget is None:
        budget = Budget()
    icat, gcat = prod.factors

    def pair_obj(i, g):
        return prod.obj_index[(i, g)]

    def pair_mor(u, v):
        return prod.mor_index[(u, v)]

    holims = []
    for i in range(icat.n_objects):
        sub = DiagramFunctor(
            gcat,
            [d.vertices[pair_obj(i, g)] for g in range(gcat.n_objects)],
            [d.edges[pair_mor(icat.identity[i], v)] for v in range(gcat.n_morphisms)],
        )
        holims.append(holim(sub, budget))
    lhs_edges = []
    for u in range(icat.n_morphisms):
        a, b = icat.src[u], icat.dst[u]
        dm = DiagramMap(
            holims[a].diagram,
            holims[b].diagram,
            [d.edges[pair_mor(u, gcat.identity[g])] for g in range(gcat.n_objects)],
        )
        fun, _, _ = induced_map(dm, holims[a], holims[b], budget)
        lhs_edges.append(fun)
    lhs_diag = DiagramFunctor(icat, [h.groupoid for h in holims], lhs_edges)
    lhs = filtered_colimit(lhs_diag)

    colims = []
    for g in range(gcat.n_objects):
        sub = DiagramFunctor(
            icat,
            [d.vertices[pair_obj(i, g)] for i in range(icat.n_objects)],
            [d.edges[pair_mor(u, gcat.identity[g])] for u in range(icat.n_morphisms)],
        )
        colims.append(filtered_colimit(sub))
    rhs_edges = []
    for v in range(gcat.n_morphisms):
        a, b = gcat.src[v], gcat.dst[v]
        rhs_edges.append(
            colimit_functor(
                colims[a],
                colims[b],
                [d.edges[pair_mor(icat.identity[i], v)] for i in range(icat.n_objects)],
            )
        )
    rhs_diag = DiagramFunctor(gcat, [c.groupoid for c in colims], rhs_edges)
    rhs = holim(rhs_diag, budget)

    obj_map = [None] * lhs.groupoid.n_objects
    for (i, hobj), cls in lhs.obj_class.items():
        per_g = []
        for g in range(gcat.n_objects):
            fun = holims[i].maps[g].functors[holims[i].objects[hobj][g]]
            pushed = fun.then(colims[g].cocones[i])
            per_g.append(rhs.maps[g].functor_index[(pushed.obj_map, pushed.mor_map)])
        img = rhs.obj_index[tuple(per_g)]
        if obj_map[cls] is None:
            obj_map[cls] = img
        elif obj_map[cls] != img:
            raise AssertionError("comparison ill-defined on objects")
    mor_map = [None] * lhs.groupoid.n_morphisms
    for (i, hmor), cls in lhs.mor_class.items():
        per_g = []
        for g in range(gcat.n_objects):
            fi, fj, comps = holims[i].maps[g].nats[holims[i].morphisms[hmor][g]]
            fun_i = holims[i].maps[g].functors[fi].then(colims[g].cocones[i])
            fun_j = holims[i].maps[g].functors[fj].then(colims[g].cocones[i])
            si = rhs.maps[g].functor_index[(fun_i.obj_map, fun_i.mor_map)]
            ti = rhs.maps[g].functor_index[(fun_j.obj_map, fun_j.mor_map)]
            new = tuple(colims[g].cocones[i].mor_map[c] for c in comps)
            per_g.append(rhs.maps[g].nt_index[(si, ti, new)])
        img = rhs.mor_index[tuple(per_g)]
        if mor_map[cls] is None:
            mor_map[cls] = img
        elif mor_map[cls] != img:
            raise AssertionError("comparison ill-defined on morphisms")
    cmp = CatFunctor(lhs.groupoid, rhs.groupoid, obj_map, mor_map)
    return lhs, rhs, cmp


def colim_product_compare(ds):
    """colim of a pointwise product -> product of colims; an isomorphism."""
    idx = ds[0].index
    stage_prods = [
        product_groupoid([d.vertices[i] for d in ds]) for i in range(idx.n_objects)
    ]
    edges = []
    for u in range(idx.n_morphisms):
        a, b = idx.src[u], idx.dst[u]
        edges.append(
            stage_prods[b].pair_functors(
                stage_prods[a].cat,
                [
                    stage_prods[a].projections[t].then(ds[t].edges[u])
                    for t in range(len(ds))
                ],
            )
        )
    prod_diag = DiagramFunctor(idx, [p.cat for p in stage_prods], edges)
    lhs = filtered_colimit(prod_diag)
    colims = [filtered_colimit(d) for d in ds]
    rhs = product_groupoid([c.groupoid for c in colims])

    obj_map = [None] * lhs.groupoid.n_objects
    for (i, x), cls in lhs.obj_class.items():
        parts = stage_prods[i].obj_tuples[x]
        img = rhs.obj_index[
            tuple(colims[t].obj_class[(i, parts[t])] for t in range(len(ds)))
        ]
        if obj_map[cls] is None:
            obj_map[cls] = img
        elif obj_map[cls] != img:
            raise AssertionError("comparison ill-defined on objects")
    mor_map = [None] * lhs.groupoid.n_morphisms
    for (i, m), cls in lhs.mor_class.items():
        parts = stage_prods[i].mor_tuples[m]
        img = rhs.mor_index[
            tuple(colims[t].mor_class[(i, parts[t])] for t in range(len(ds)))
        ]
        if mor_map[cls] is None:
            mor_map[cls] = img
        elif mor_map[cls] != img:
            raise AssertionError("comparison ill-defined on morphisms")
    cmp = CatFunctor(lhs.groupoid, rhs.cat, obj_map, mor_map)
    return lhs, rhs, cmp
