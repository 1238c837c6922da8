"""Decision procedures for groupoid functors: equivalence, fibration,
acyclic fibration, skeletal decomposition, and abstract equivalence of
groupoids.  Every decision comes with a machine-checkable certificate."""

from __future__ import annotations

import itertools

from .core import (
    Budget,
    CatFunctor,
    FiniteGroup,
    delooping,
    disjoint_union,
)


def is_equivalence(f):
    """Essential surjectivity + full faithfulness, checked exhaustively.

    Returns (bool, certificate).  On success the certificate holds an
    essential-surjectivity witness per target object; on failure it names
    a concrete violation.
    """
    x, y = f.source, f.target
    witnesses = {}
    for t in range(y.n_objects):
        found = None
        for s in range(x.n_objects):
            hom = y.hom(f.obj_map[s], t)
            if hom:
                found = (s, hom[0])
                break
        if found is None:
            return False, {"essentially_surjective": False, "target_object": t}
        witnesses[t] = found
    for a in range(x.n_objects):
        for b in range(x.n_objects):
            dom = x.hom(a, b)
            cod = y.hom(f.obj_map[a], f.obj_map[b])
            images = [f.mor_map[m] for m in dom]
            if len(set(images)) != len(images):
                dup = next(
                    (m1, m2)
                    for i, m1 in enumerate(dom)
                    for m2 in dom[i + 1:]
                    if f.mor_map[m1] == f.mor_map[m2]
                )
                return False, {
                    "faithful": False,
                    "objects": (a, b),
                    "morphisms": dup,
                }
            missing = set(cod) - set(images)
            if missing:
                return False, {
                    "full": False,
                    "objects": (a, b),
                    "target_morphism": min(missing),
                }
    return True, {"essential_surjectivity_witnesses": witnesses}


def is_fibration(f):
    """Isomorphism lifting along f, checked for every (x, alpha)."""
    x, y = f.source, f.target
    images_out = [set() for _ in range(x.n_objects)]
    for beta in range(x.n_morphisms):
        images_out[x.src[beta]].add(f.mor_map[beta])
    out_of = [[] for _ in range(y.n_objects)]
    for alpha in range(y.n_morphisms):
        out_of[y.src[alpha]].append(alpha)
    for s in range(x.n_objects):
        for alpha in out_of[f.obj_map[s]]:
            if alpha not in images_out[s]:
                return False, {"object": s, "target_morphism": alpha}
    return True, {}


def is_acyclic_fibration(f):
    fib, cert_f = is_fibration(f)
    eq, cert_e = is_equivalence(f)
    return fib and eq, {"fibration": cert_f, "equivalence": cert_e}


class SkeletonReport:
    """Isomorphism classes, representatives and automorphism groups."""

    def __init__(self, iso_classes, representatives, automorphism_groups,
                 aut_morphisms, skeleton_groupoid, injections, equivalence):
        self.iso_classes = iso_classes
        self.representatives = representatives
        self.automorphism_groups = automorphism_groups
        self.aut_morphisms = aut_morphisms
        self.skeleton_groupoid = skeleton_groupoid
        self.injections = injections
        self.equivalence = equivalence


def skeleton(x):
    """Decompose a groupoid into B(aut) blocks, one per isomorphism class.

    Representatives are the lowest-index object of each class; the
    returned functor x -> sqcup_i B(G_i) is a certified equivalence.
    """
    parent = list(range(x.n_objects))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for m in range(x.n_morphisms):
        a, b = find(x.src[m]), find(x.dst[m])
        if a != b:
            parent[max(a, b)] = min(a, b)
    classes = {}
    for o in range(x.n_objects):
        classes.setdefault(find(o), []).append(o)
    reps = sorted(classes)
    iso_classes = [classes[r] for r in reps]

    groups, aut_lists, blocks = [], [], []
    # a path to the representative, per object, for transporting morphisms
    to_rep = {}
    for r, members in zip(reps, iso_classes):
        to_rep[r] = x.identity[r]
        frontier = [r]
        seen = {r}
        while frontier:
            nxt = []
            for a in frontier:
                for m in range(x.n_morphisms):
                    if x.src[m] == a and x.dst[m] not in seen:
                        b = x.dst[m]
                        to_rep[b] = x.comp[(to_rep[a], m)]  # rep -> b
                        seen.add(b)
                        nxt.append(b)
            frontier = nxt
        aut = x.hom(r, r)
        aut_pos = {m: i for i, m in enumerate(aut)}
        # group product a*b is the classical composite: "b then a"
        mul = [[aut_pos[x.comp[(aut[b], aut[a])]] for b in range(len(aut))]
               for a in range(len(aut))]
        group = FiniteGroup(mul)
        groups.append(group)
        aut_lists.append(aut)
        blocks.append(delooping(group))

    skel, injections = disjoint_union(blocks)
    cls_of = {o: k for k, members in enumerate(iso_classes) for o in members}
    obj_map = [injections[cls_of[o]].obj_map[0] for o in range(x.n_objects)]
    mor_map = []
    for m in range(x.n_morphisms):
        a, b = x.src[m], x.dst[m]
        k = cls_of[a]
        r = reps[k]
        # transport to an automorphism of the representative
        loop = x.compose_many(to_rep[a], m, x.inverse[to_rep[b]])
        g = aut_lists[k].index(loop)
        mor_map.append(injections[k].mor_map[g])
    fun = CatFunctor(x, skel, obj_map, mor_map)
    return SkeletonReport(iso_classes, reps, groups, aut_lists, skel, injections, fun)


def _close(g, gens):
    closure = {g.identity}
    frontier = [g.identity]
    while frontier:
        new = []
        for x in frontier:
            for gen in gens:
                y = g.mul[x][gen]
                if y not in closure:
                    closure.add(y)
                    new.append(y)
        frontier = new
    return closure


def _generators(g):
    gens = []
    closure = {g.identity}
    for a in range(g.order):
        if a not in closure:
            gens.append(a)
            closure = _close(g, gens)
    return gens


def group_isomorphic(a, b):
    """Brute-force isomorphism test with generator pruning; desk-scale only."""
    if a.order != b.order:
        return False
    if sorted(map(a.element_order, range(a.order))) != sorted(
        map(b.element_order, range(b.order))
    ):
        return False
    gens = _generators(a)
    if not gens:
        return True
    by_order = {}
    for x in range(b.order):
        by_order.setdefault(b.element_order(x), []).append(x)

    def extend(mapping, images):
        # close the partial map generated by gens -> images
        table = {a.identity: b.identity}
        frontier = [a.identity]
        while frontier:
            new = []
            for x in frontier:
                for gen, img in zip(gens, images):
                    y = a.mul[x][gen]
                    fy = b.mul[table[x]][img]
                    if y in table:
                        if table[y] != fy:
                            return None
                    else:
                        table[y] = fy
                        new.append(y)
            frontier = new
        if len(table) != a.order or len(set(table.values())) != a.order:
            return None
        for x in range(a.order):
            for y in range(a.order):
                if table[a.mul[x][y]] != b.mul[table[x]][table[y]]:
                    return None
        return table

    candidates = [by_order[a.element_order(gen)] for gen in gens]
    for images in itertools.product(*candidates):
        if extend({}, images) is not None:
            return True
    return False


def are_equivalent(x, y):
    """Abstract equivalence of groupoids, decided via skeletons."""
    sx, sy = skeleton(x), skeleton(y)
    if len(sx.iso_classes) != len(sy.iso_classes):
        return False
    remaining = list(range(len(sy.iso_classes)))

    def match(i):
        if i == len(sx.automorphism_groups):
            return True
        for j in list(remaining):
            if group_isomorphic(sx.automorphism_groups[i], sy.automorphism_groups[j]):
                remaining.remove(j)
                if match(i + 1):
                    return True
                remaining.append(j)
        return False

    return match(0)


def find_equivalence(x, y, budget=None):
    """Search all functors x -> y for an equivalence; oracle for tests."""
    if budget is None:
        budget = Budget()
    from .functorcat import _enumerate_functors

    for fun in _enumerate_functors(x, y, budget):
        ok, _ = is_equivalence(fun)
        if ok:
            return fun
    return None
