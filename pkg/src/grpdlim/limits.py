"""Strict limits of groupoid diagrams: products, equalizers, the limit
formula and the canonical comparison into the homotopy limit."""

from __future__ import annotations

from .core import (
    CatFunctor,
    FiniteCategory,
    Groupoid,
    ProductCat,
    validate_functor,
)


class DiagramFunctor:
    """A strict functor from a finite index category into groupoids."""

    def __init__(self, index, vertices, edges):
        self.index = index
        self.vertices = list(vertices)
        self.edges = list(edges)

    def vertex(self, a):
        return self.vertices[a]

    def edge(self, e):
        return self.edges[e]

    @staticmethod
    def constant(index, g):
        ident = CatFunctor.identity(g)
        return DiagramFunctor(index, [g] * index.n_objects, [ident] * index.n_morphisms)


class DiagramMap:
    """A strict natural transformation of groupoid diagrams."""

    def __init__(self, source, target, components):
        self.source = source
        self.target = target
        self.components = list(components)

    @staticmethod
    def identity(d):
        return DiagramMap(d, d, [CatFunctor.identity(v) for v in d.vertices])

    def then(self, other):
        return DiagramMap(
            self.source,
            other.target,
            [c.then(d) for c, d in zip(self.components, other.components)],
        )


def validate_diagram(d):
    report = []
    idx = d.index
    if len(d.vertices) != idx.n_objects or len(d.edges) != idx.n_morphisms:
        return ["vertex/edge lists have wrong length"]
    for e in range(idx.n_morphisms):
        fun = d.edges[e]
        if fun.source is not d.vertices[idx.src[e]] and not fun.source.same_as(d.vertices[idx.src[e]]):
            report.append(f"edge {e} has wrong source groupoid")
        if fun.target is not d.vertices[idx.dst[e]] and not fun.target.same_as(d.vertices[idx.dst[e]]):
            report.append(f"edge {e} has wrong target groupoid")
        report.extend(f"edge {e}: {v}" for v in validate_functor(fun))
    for x in range(idx.n_objects):
        if not d.edges[idx.identity[x]].same_maps(CatFunctor.identity(d.vertices[x])):
            report.append(f"edge at identity of {x} is not the identity functor")
    for (f, g), h in idx.comp.items():
        if not d.edges[f].then(d.edges[g]).same_maps(d.edges[h]):
            report.append(f"functoriality fails at index composition ({f},{g})")
    return report


def validate_diagram_map(m):
    report = []
    idx = m.source.index
    for e in range(idx.n_morphisms):
        a, b = idx.src[e], idx.dst[e]
        lhs = m.source.edges[e].then(m.components[b])
        rhs = m.components[a].then(m.target.edges[e])
        if not lhs.same_maps(rhs):
            report.append(f"naturality fails at index morphism {e}")
    return report


def product_groupoid(groupoids):
    """Finite product with projections; empty product is the terminal groupoid."""
    return ProductCat(groupoids, groupoid=True)


def equalizer(f, g):
    """Strict equalizer of parallel functors, with its inclusion.

    Objects/morphisms of the source on which f and g agree (index
    equality); closed under composition and inverses automatically.
    """
    cat = f.source
    objs = [x for x in range(cat.n_objects) if f.obj_map[x] == g.obj_map[x]]
    obj_new = {x: i for i, x in enumerate(objs)}
    mors = [m for m in range(cat.n_morphisms) if f.mor_map[m] == g.mor_map[m]]
    mor_new = {m: i for i, m in enumerate(mors)}
    src = [obj_new[cat.src[m]] for m in mors]
    dst = [obj_new[cat.dst[m]] for m in mors]
    identity = [mor_new[cat.identity[x]] for x in objs]
    comp = {
        (mor_new[a], mor_new[b]): mor_new[h]
        for (a, b), h in cat.comp.items()
        if a in mor_new and b in mor_new
    }
    if isinstance(cat, Groupoid):
        inverse = [mor_new[cat.inverse[m]] for m in mors]
        sub = Groupoid(len(objs), src, dst, identity, comp, inverse)
    else:
        sub = FiniteCategory(len(objs), src, dst, identity, comp)
    inclusion = CatFunctor(sub, cat, objs, mors)
    return sub, inclusion


def strict_limit(d):
    """The 1-categorical limit, as the equalizer of the two product maps.

    Returns (limit groupoid, projections to each vertex).
    """
    idx = d.index
    prod = product_groupoid(d.vertices)
    edges = [e for e in range(idx.n_morphisms) if not idx.is_identity(e)]
    codomain = ProductCat([d.vertices[idx.dst[e]] for e in edges], groupoid=True)
    phi = codomain.pair_functors(
        prod.cat,
        [prod.projections[idx.src[e]].then(d.edges[e]) for e in edges],
    )
    psi = codomain.pair_functors(
        prod.cat,
        [prod.projections[idx.dst[e]] for e in edges],
    )
    lim, inclusion = equalizer(phi, psi)
    projections = [inclusion.then(p) for p in prod.projections]
    return lim, projections
