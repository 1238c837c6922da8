"""Presheaves of groupoids on finite sites with declared points.

A site here is a finite shape category plus a list of points, each given
by a filtered index category and a neighborhood functor into the
opposite of the shape.  Stalks are filtered colimits over neighborhood
systems; local notions (weak equivalence, fibration) are stalkwise,
sectionwise notions are per-section.  Homotopy limits of presheaf
diagrams are computed sectionwise.
"""

from __future__ import annotations

from .core import Budget, CatFunctor, validate_functor
from .colim import colim_holim_compare, colimit_functor, filtered_colimit, is_filtered
from .equiv import is_equivalence, is_fibration
from .holim import holim, induced_map
from .limits import DiagramFunctor, DiagramMap, validate_diagram


class SitePoint:
    """A point of a site: a filtered index of neighborhoods and a
    functor sending them (contravariantly) into the shape."""

    def __init__(self, name, index, nbhd):
        self.name = name
        self.index = index
        self.nbhd = nbhd  # CatFunctor index -> opposite(shape)


class FiniteSite:
    def __init__(self, shape, points):
        self.shape = shape
        self.points = list(points)


def validate_site(site):
    report = []
    op = site.shape.opposite()
    for p in site.points:
        ok, cert = is_filtered(p.index)
        if not ok:
            report.append(f"point {p.name}: index not filtered: {cert}")
        if p.nbhd.source is not p.index and not p.nbhd.source.same_as(p.index):
            report.append(f"point {p.name}: neighborhood functor has wrong source")
        if not p.nbhd.target.same_as(op):
            report.append(f"point {p.name}: neighborhood functor does not land in the opposite shape")
        report.extend(
            f"point {p.name}: {v}" for v in validate_functor(
                CatFunctor(p.index, op, p.nbhd.obj_map, p.nbhd.mor_map)
            )
        )
    return report


class SitePresheaf:
    """sections[U] is a groupoid per shape object; restrictions[u] is a
    functor sections[dst(u)] -> sections[src(u)] per shape morphism."""

    def __init__(self, site, sections, restrictions):
        self.site = site
        self.sections = list(sections)
        self.restrictions = list(restrictions)


def validate_presheaf(x):
    report = []
    shape = x.site.shape
    if len(x.sections) != shape.n_objects:
        return ["wrong number of sections"]
    if len(x.restrictions) != shape.n_morphisms:
        return ["wrong number of restrictions"]
    for u in range(shape.n_morphisms):
        r = x.restrictions[u]
        if not (r.source.same_as(x.sections[shape.dst[u]])
                and r.target.same_as(x.sections[shape.src[u]])):
            report.append(f"restriction along morphism {u} has wrong endpoints")
            continue
        report.extend(f"restriction {u}: {v}" for v in validate_functor(r))
    for o in range(shape.n_objects):
        r = x.restrictions[shape.identity[o]]
        if r.obj_map != tuple(range(x.sections[o].n_objects)) or r.mor_map != tuple(
            range(x.sections[o].n_morphisms)
        ):
            report.append(f"restriction along identity of object {o} is not the identity")
    for u in range(shape.n_morphisms):
        for v in range(shape.n_morphisms):
            if shape.dst[u] != shape.src[v]:
                continue
            w = shape.comp[(u, v)]
            chained = x.restrictions[v].then(x.restrictions[u])
            if not x.restrictions[w].same_maps(chained):
                report.append(f"restrictions not contravariantly functorial at ({u},{v})")
    return report


class PresheafMap:
    def __init__(self, source, target, components):
        self.source = source
        self.target = target
        self.components = list(components)


def validate_presheaf_map(f):
    report = []
    shape = f.source.site.shape
    for o in range(shape.n_objects):
        c = f.components[o]
        if not (c.source.same_as(f.source.sections[o])
                and c.target.same_as(f.target.sections[o])):
            report.append(f"component at object {o} has wrong endpoints")
            continue
        report.extend(f"component {o}: {v}" for v in validate_functor(c))
    for u in range(shape.n_morphisms):
        left = f.source.restrictions[u].then(f.components[shape.src[u]])
        right = f.components[shape.dst[u]].then(f.target.restrictions[u])
        if not left.same_maps(right):
            report.append(f"naturality fails at shape morphism {u}")
    return report


def _nbhd_diagram(x, p):
    """The covariant diagram of sections over a point's index category."""
    idx = p.index
    vertices = [x.sections[p.nbhd.obj_map[i]] for i in range(idx.n_objects)]
    # an index morphism m: i -> j maps to a shape morphism nbhd(j) -> nbhd(i),
    # whose restriction goes the covariant way sections(i) -> sections(j)
    edges = [x.restrictions[p.nbhd.mor_map[m]] for m in range(idx.n_morphisms)]
    return DiagramFunctor(idx, vertices, edges)


def stalk(x, p):
    """The filtered colimit of sections over the point's neighborhoods."""
    return filtered_colimit(_nbhd_diagram(x, p))


def stalk_map(f, p):
    """The functor on stalks induced by a presheaf map."""
    cs = stalk(f.source, p)
    ct = stalk(f.target, p)
    stage_maps = [f.components[p.nbhd.obj_map[i]] for i in range(p.index.n_objects)]
    return colimit_functor(cs, ct, stage_maps), cs, ct


def is_sectionwise_weak_equivalence(f):
    certs = {}
    ok = True
    for o in range(f.source.site.shape.n_objects):
        good, cert = is_equivalence(f.components[o])
        certs[o] = cert
        ok = ok and good
    return ok, certs


def is_local_weak_equivalence(f):
    certs = {}
    ok = True
    for p in f.source.site.points:
        fun, _, _ = stalk_map(f, p)
        good, cert = is_equivalence(fun)
        certs[p.name] = cert
        ok = ok and good
    return ok, certs


def is_local_fibration(f):
    certs = {}
    ok = True
    for p in f.source.site.points:
        fun, _, _ = stalk_map(f, p)
        good, cert = is_fibration(fun)
        certs[p.name] = cert
        ok = ok and good
    return ok, certs


class PresheafDiagram:
    """A diagram of presheaves over one site: vertices are presheaves
    indexed by the objects of a finite shape, edges are presheaf maps."""

    def __init__(self, index, vertices, edges):
        self.index = index
        self.vertices = list(vertices)
        self.edges = list(edges)

    def section_diagram(self, o):
        return DiagramFunctor(
            self.index,
            [x.sections[o] for x in self.vertices],
            [e.components[o] for e in self.edges],
        )


def presheaf_holim(d, budget=None):
    """The sectionwise homotopy limit of a presheaf diagram, with the
    induced restriction functors; returns (presheaf, section holims)."""
    if budget is None:
        budget = Budget()
    site = d.vertices[0].site
    shape = site.shape
    holims = [holim(d.section_diagram(o), budget) for o in range(shape.n_objects)]
    restrictions = []
    for u in range(shape.n_morphisms):
        a, b = shape.src[u], shape.dst[u]
        dm = DiagramMap(
            holims[b].diagram,
            holims[a].diagram,
            [x.restrictions[u] for x in d.vertices],
        )
        fun, _, _ = induced_map(dm, holims[b], holims[a], budget)
        restrictions.append(fun)
    sheaf = SitePresheaf(site, [h.groupoid for h in holims], restrictions)
    return sheaf, holims


def presheaf_holim_map(d_src, d_dst, components, budget=None):
    """The presheaf map on sectionwise holims induced by a map of
    presheaf diagrams given by ``components`` (a PresheafMap per index
    object)."""
    if budget is None:
        budget = Budget()
    sh_src, hs = presheaf_holim(d_src, budget)
    sh_dst, ht = presheaf_holim(d_dst, budget)
    shape = sh_src.site.shape
    comps = []
    for o in range(shape.n_objects):
        dm = DiagramMap(
            hs[o].diagram,
            ht[o].diagram,
            [c.components[o] for c in components],
        )
        fun, _, _ = induced_map(dm, hs[o], ht[o], budget)
        comps.append(fun)
    return PresheafMap(sh_src, sh_dst, comps), sh_src, sh_dst


def holim_stalk_compare(d, p, budget=None):
    """The certified isomorphism stalk(holim X) -> holim(stalk X) at a
    point p, via the filtered-colimit/holim commutation comparison."""
    if budget is None:
        budget = Budget()
    from .core import ProductCat

    gcat = d.index
    icat = p.index
    prod = ProductCat([icat, gcat])
    vertices = [None] * prod.cat.n_objects
    for i in range(icat.n_objects):
        for g in range(gcat.n_objects):
            vertices[prod.obj_index[(i, g)]] = d.vertices[g].sections[p.nbhd.obj_map[i]]
    edges = [None] * prod.cat.n_morphisms
    for u in range(icat.n_morphisms):
        for v in range(gcat.n_morphisms):
            g = gcat.src[v]
            # restrict along the neighborhood inclusion, then apply the
            # diagram edge at the smaller neighborhood
            res = d.vertices[g].restrictions[p.nbhd.mor_map[u]]
            comp = d.edges[v].components[p.nbhd.obj_map[icat.dst[u]]]
            edges[prod.mor_index[(u, v)]] = res.then(comp)
    full = DiagramFunctor(prod.cat, vertices, edges)
    return colim_holim_compare(prod, full, budget)
