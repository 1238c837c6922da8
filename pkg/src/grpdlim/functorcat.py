"""Exhaustive enumeration of functor categories Map(K, G).

The enumeration is the workhorse under every homotopy limit: functors are
listed by backtracking over object assignments and then over morphism
assignments (identities are forced), pruning as soon as a composition
constraint involving only assigned morphisms fails.  Natural
transformations are listed per ordered functor pair by component
backtracking with naturality pruning.  Output order is canonical:
lexicographic on (object map, morphism map), resp. on components.
"""

from __future__ import annotations

import itertools

from .core import (
    Budget,
    CatFunctor,
    Groupoid,
    NatTransformation,
    ProductCat,
)


class FunctorGroupoid:
    """The groupoid of functors K -> G and natural transformations.

    Composition/inverse tables are built lazily via :meth:`groupoid`;
    callers that only need the enumerated data (holim does) work with the
    index structures directly.
    """

    def __init__(self, source, target, functors):
        self.source = source
        self.target = target
        self.functors = functors
        self.functor_index = {(f.obj_map, f.mor_map): i for i, f in enumerate(functors)}
        self.nats = []          # (src functor idx, dst functor idx, components)
        self.hom_map = {}       # (i, j) -> [nt index]
        self.nt_index = {}      # (i, j, components) -> nt index
        self._groupoid = None
        self._comp_cache = {}

    def add_nat(self, i, j, components):
        k = len(self.nats)
        self.nats.append((i, j, components))
        self.hom_map.setdefault((i, j), []).append(k)
        self.nt_index[(i, j, components)] = k
        return k

    @property
    def n_functors(self):
        return len(self.functors)

    def identity_nt(self, i):
        f = self.functors[i]
        comps = tuple(self.target.identity[x] for x in f.obj_map)
        return self.nt_index[(i, i, comps)]

    def compose_nt(self, a, b):
        out = self._comp_cache.get((a, b))
        if out is not None:
            return out
        i, j, ca = self.nats[a]
        j2, k, cb = self.nats[b]
        if j2 != j:
            raise ValueError("natural transformations not composable")
        comps = tuple(self.target.comp[(x, y)] for x, y in zip(ca, cb))
        out = self.nt_index[(i, k, comps)]
        self._comp_cache[(a, b)] = out
        return out

    def inverse_nt(self, a):
        i, j, ca = self.nats[a]
        comps = tuple(self.target.inverse[x] for x in ca)
        return self.nt_index[(j, i, comps)]

    def nat_object(self, a):
        i, j, comps = self.nats[a]
        return NatTransformation(self.functors[i], self.functors[j], comps)

    def groupoid(self):
        if self._groupoid is None:
            src = [n[0] for n in self.nats]
            dst = [n[1] for n in self.nats]
            identity = [self.identity_nt(i) for i in range(self.n_functors)]
            comp = {}
            for a, (_, ja, _) in enumerate(self.nats):
                for k in range(self.n_functors):
                    for b in self.hom_map.get((ja, k), []):
                        comp[(a, b)] = self.compose_nt(a, b)
            inverse = [self.inverse_nt(a) for a in range(len(self.nats))]
            self._groupoid = Groupoid(
                self.n_functors, src, dst, identity, comp, inverse
            )
        return self._groupoid


def _enumerate_functors(k, g, budget):
    """All functors k -> g in lexicographic (obj_map, mor_map) order."""
    n_obj = k.n_objects
    slots = [m for m in range(k.n_morphisms) if not k.is_identity(m)]
    slot_pos = {m: s for s, m in enumerate(slots)}
    # constraints checked once their last-assigned participant is known
    by_last = [[] for _ in slots]
    deferred = []  # constraints among identities only resolve immediately
    for (f, gg), h in k.comp.items():
        members = [m for m in (f, gg, h) if m in slot_pos]
        if not members:
            continue
        last = max(slot_pos[m] for m in members)
        by_last[last].append((f, gg, h))
    functors = []
    for obj_map in itertools.product(*(range(g.n_objects) for _ in range(n_obj))):
        budget.spend()
        mor_map = [0] * k.n_morphisms
        for x in range(n_obj):
            mor_map[k.identity[x]] = g.identity[obj_map[x]]

        def ok(s):
            for (f, gg, h) in by_last[s]:
                a, b, c = mor_map[f], mor_map[gg], mor_map[h]
                if g.comp.get((a, b)) != c:
                    return False
            return True

        def backtrack(s):
            if s == len(slots):
                functors.append(
                    CatFunctor(k, g, obj_map, tuple(mor_map))
                )
                return
            m = slots[s]
            for cand in g.hom(obj_map[k.src[m]], obj_map[k.dst[m]]):
                budget.spend()
                mor_map[m] = cand
                if ok(s):
                    backtrack(s + 1)

        backtrack(0)
    return functors


def _enumerate_nats(fg, budget):
    """Fill fg.nats for every ordered functor pair, components lexicographic."""
    k, g = fg.source, fg.target
    mors = list(range(k.n_morphisms))
    for i, fun in enumerate(fg.functors):
        for j, gun in enumerate(fg.functors):
            comps = [0] * k.n_objects

            def backtrack(x):
                if x == k.n_objects:
                    fg.add_nat(i, j, tuple(comps))
                    return
                for cand in g.hom(fun.obj_map[x], gun.obj_map[x]):
                    budget.spend()
                    comps[x] = cand
                    good = True
                    for u in mors:
                        a, b = k.src[u], k.dst[u]
                        if a > x or b > x:
                            continue
                        if g.comp[(fun.mor_map[u], comps[b])] != g.comp[(comps[a], gun.mor_map[u])]:
                            good = False
                            break
                    if good:
                        backtrack(x + 1)

            backtrack(0)


def map_category(k, g, budget=None):
    """Enumerate the functor groupoid Map(k, g)."""
    if budget is None:
        budget = Budget()
    fg = FunctorGroupoid(k, g, _enumerate_functors(k, g, budget))
    _enumerate_nats(fg, budget)
    return fg


def precompose(f, mk, mk2):
    """Map(K, G) -> Map(K', G) induced by f: K' -> K.

    mk enumerates Map(K, G), mk2 enumerates Map(K', G); returns the
    functor between their groupoids.
    """
    obj_map = []
    for fun in mk.functors:
        composed = f.then(fun)
        obj_map.append(mk2.functor_index[(composed.obj_map, composed.mor_map)])
    mor_map = []
    for (i, j, comps) in mk.nats:
        new = tuple(comps[x] for x in f.obj_map)
        mor_map.append(mk2.nt_index[(obj_map[i], obj_map[j], new)])
    return CatFunctor(mk.groupoid(), mk2.groupoid(), obj_map, mor_map)


def postcompose(f, mk, mk2):
    """Map(K, G) -> Map(K, G') induced by f: G -> G'."""
    obj_map = []
    for fun in mk.functors:
        composed = fun.then(f)
        obj_map.append(mk2.functor_index[(composed.obj_map, composed.mor_map)])
    mor_map = []
    for (i, j, comps) in mk.nats:
        new = tuple(f.mor_map[c] for c in comps)
        mor_map.append(mk2.nt_index[(obj_map[i], obj_map[j], new)])
    return CatFunctor(mk.groupoid(), mk2.groupoid(), obj_map, mor_map)


def exponential_iso(k, h, g, budget=None):
    """The exponential-law isomorphism Map(K x H, G) ~ Map(K, Map(H, G)).

    Returns (forward, backward) functors that are strictly inverse.
    """
    if budget is None:
        budget = Budget()
    prod = ProductCat([k, h], groupoid=False)
    m_prod = map_category(prod.cat, g, budget)
    m_hg = map_category(h, g, budget)
    m_hg_grpd = m_hg.groupoid()
    m_nested = map_category(k, m_hg_grpd, budget)

    def curry_functor(fun):
        """K x H -> G  to  K -> Map(H, G), as index data in m_nested."""
        obj_map = []
        for x in range(k.n_objects):
            inner_obj = tuple(
                fun.obj_map[prod.obj_index[(x, y)]] for y in range(h.n_objects)
            )
            inner_mor = tuple(
                fun.mor_map[prod.mor_index[(k.identity[x], v)]]
                for v in range(h.n_morphisms)
            )
            obj_map.append(m_hg.functor_index[(inner_obj, inner_mor)])
        mor_map = []
        for u in range(k.n_morphisms):
            a, b = k.src[u], k.dst[u]
            comps = tuple(
                fun.mor_map[prod.mor_index[(u, h.identity[y])]]
                for y in range(h.n_objects)
            )
            mor_map.append(m_hg.nt_index[(obj_map[a], obj_map[b], comps)])
        return m_nested.functor_index[(tuple(obj_map), tuple(mor_map))]

    fwd_obj = [curry_functor(fun) for fun in m_prod.functors]
    fwd_mor = []
    for (i, j, comps) in m_prod.nats:
        nested_comps = []
        for x in range(k.n_objects):
            inner = tuple(comps[prod.obj_index[(x, y)]] for y in range(h.n_objects))
            si = m_nested.functors[fwd_obj[i]].obj_map[x]
            ti = m_nested.functors[fwd_obj[j]].obj_map[x]
            nested_comps.append(m_hg.nt_index[(si, ti, inner)])
        fwd_mor.append(
            m_nested.nt_index[(fwd_obj[i], fwd_obj[j], tuple(nested_comps))]
        )
    forward = CatFunctor(m_prod.groupoid(), m_nested.groupoid(), fwd_obj, fwd_mor)

    def uncurry_functor(idx):
        outer = m_nested.functors[idx]
        obj_map = [0] * prod.cat.n_objects
        for (x, y), o in prod.obj_index.items():
            obj_map[o] = m_hg.functors[outer.obj_map[x]].obj_map[y]
        mor_map = [0] * prod.cat.n_morphisms
        for (u, v), mm in prod.mor_index.items():
            a = k.src[u]
            inner_src = m_hg.functors[outer.obj_map[a]]
            # F(u, v) = F(id_a, v) then F(u, id_dst(v))
            first = inner_src.mor_map[v]
            comps = m_hg.nats[outer.mor_map[u]][2]
            second = comps[h.dst[v]]
            mor_map[mm] = g.comp[(first, second)]
        return m_prod.functor_index[(tuple(obj_map), tuple(mor_map))]

    bwd_obj = [uncurry_functor(i) for i in range(m_nested.n_functors)]
    bwd_mor = []
    for (i, j, comps) in m_nested.nats:
        flat = [0] * prod.cat.n_objects
        for (x, y), o in prod.obj_index.items():
            flat[o] = m_hg.nats[comps[x]][2][y]
        bwd_mor.append(m_prod.nt_index[(bwd_obj[i], bwd_obj[j], tuple(flat))])
    backward = CatFunctor(m_nested.groupoid(), m_prod.groupoid(), bwd_obj, bwd_mor)
    return forward, backward
