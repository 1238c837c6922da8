"""Finite categories, groupoids and their basic constructors.

Everything is integer-indexed and fully tabulated: a category stores its
object count, per-morphism source/target arrays, an identity table and a
dense composition table.

Composition is written diagrammatically throughout the package:
``compose(f, g)`` means "f then g" and is defined exactly when
``dst(f) == src(g)``.  Formulas quoted from the classical convention
(``g . f`` meaning "f then g") are transcribed at their point of use.
One consequence worth keeping in mind: in the delooping of a group, the
composite of the arrow ``g`` followed by the arrow ``h`` is the group
element ``h * g``.
"""

from __future__ import annotations

import itertools

DEFAULT_BUDGET = 10_000_000


class BudgetExceeded(Exception):
    """Raised when an enumeration would exceed its node budget."""

    def __init__(self, estimate, limit):
        self.estimate = estimate
        self.limit = limit
        super().__init__(f"enumeration budget exceeded: ~{estimate} > {limit}")


class Budget:
    """Mutable counter shared across one top-level computation."""

    def __init__(self, limit=DEFAULT_BUDGET):
        self.limit = limit
        self.used = 0

    def spend(self, n=1):
        self.used += n
        if self.used > self.limit:
            raise BudgetExceeded(self.used, self.limit)

    def check_estimate(self, estimate):
        if self.used + estimate > self.limit:
            raise BudgetExceeded(self.used + estimate, self.limit)


class FiniteCategory:
    """A category with finitely many objects and morphisms.

    ``comp[(f, g)]`` is "f then g", defined iff ``dst[f] == src[g]``.
    """

    def __init__(self, n_objects, src, dst, identity, comp):
        self.n_objects = n_objects
        self.src = tuple(src)
        self.dst = tuple(dst)
        self.identity = tuple(identity)
        self.comp = dict(comp)
        self._hom = None

    @property
    def n_morphisms(self):
        return len(self.src)

    def compose(self, f, g):
        return self.comp[(f, g)]

    def compose_many(self, *fs):
        out = fs[0]
        for f in fs[1:]:
            out = self.comp[(out, f)]
        return out

    def hom(self, x, y):
        if self._hom is None:
            table = {}
            for m in range(self.n_morphisms):
                table.setdefault((self.src[m], self.dst[m]), []).append(m)
            self._hom = table
        return self._hom.get((x, y), [])

    def is_identity(self, f):
        return self.identity[self.src[f]] == f

    def opposite(self):
        comp = {(g, f): h for (f, g), h in self.comp.items()}
        return FiniteCategory(self.n_objects, self.dst, self.src, self.identity, comp)

    def same_as(self, other):
        return (
            self.n_objects == other.n_objects
            and self.src == other.src
            and self.dst == other.dst
            and self.identity == other.identity
            and self.comp == other.comp
        )

    def __repr__(self):
        return f"FiniteCategory({self.n_objects} objects, {self.n_morphisms} morphisms)"


class Groupoid(FiniteCategory):
    """A finite category together with an inverse table."""

    def __init__(self, n_objects, src, dst, identity, comp, inverse):
        super().__init__(n_objects, src, dst, identity, comp)
        self.inverse = tuple(inverse)

    def inv(self, f):
        return self.inverse[f]

    def same_as(self, other):
        return (
            isinstance(other, Groupoid)
            and super().same_as(other)
            and self.inverse == other.inverse
        )

    def __repr__(self):
        return f"Groupoid({self.n_objects} objects, {self.n_morphisms} morphisms)"


class FiniteGroup:
    """A finite group given by a dense multiplication table.

    ``mul[a][b]`` is the product ``a * b``.
    """

    def __init__(self, mul, names=None):
        self.mul = tuple(tuple(row) for row in mul)
        self.order = len(self.mul)
        self.names = list(names) if names is not None else [str(i) for i in range(self.order)]
        ident = None
        for e in range(self.order):
            if all(self.mul[e][x] == x and self.mul[x][e] == x for x in range(self.order)):
                ident = e
                break
        if ident is None:
            raise ValueError("multiplication table has no identity")
        self.identity = ident
        inverse = []
        for a in range(self.order):
            found = None
            for b in range(self.order):
                if self.mul[a][b] == ident and self.mul[b][a] == ident:
                    found = b
                    break
            if found is None:
                raise ValueError(f"element {a} has no inverse")
            inverse.append(found)
        self.inverse = tuple(inverse)

    def multiply(self, a, b):
        return self.mul[a][b]

    def inv(self, a):
        return self.inverse[a]

    def element_order(self, a):
        n, x = 1, a
        while x != self.identity:
            x = self.mul[x][a]
            n += 1
        return n

    @staticmethod
    def trivial():
        return FiniteGroup([[0]], names=["e"])

    @staticmethod
    def cyclic(n):
        return FiniteGroup([[(i + j) % n for j in range(n)] for i in range(n)])

    @staticmethod
    def klein():
        # C2 x C2 with elements indexed by bit pairs
        return FiniteGroup(
            [[i ^ j for j in range(4)] for i in range(4)],
            names=["e", "a", "b", "ab"],
        )

    @staticmethod
    def symmetric(n):
        perms = sorted(itertools.permutations(range(n)))
        index = {p: i for i, p in enumerate(perms)}
        # product = "apply q after p"?  We fix (p*q)(x) = p(q(x)).
        mul = [
            [index[tuple(p[q[x]] for x in range(n))] for q in perms]
            for p in perms
        ]
        names = ["".join(map(str, p)) for p in perms]
        return FiniteGroup(mul, names=names)

    @staticmethod
    def direct_product(a, b):
        n = a.order * b.order

        def pack(x, y):
            return x * b.order + y

        mul = [[0] * n for _ in range(n)]
        for x1 in range(a.order):
            for y1 in range(b.order):
                for x2 in range(a.order):
                    for y2 in range(b.order):
                        mul[pack(x1, y1)][pack(x2, y2)] = pack(
                            a.mul[x1][x2], b.mul[y1][y2]
                        )
        names = [f"({a.names[x]},{b.names[y]})" for x in range(a.order) for y in range(b.order)]
        return FiniteGroup(mul, names=names)

    def __repr__(self):
        return f"FiniteGroup(order {self.order})"


class CatFunctor:
    """A strict functor between finite categories, as index maps."""

    def __init__(self, source, target, obj_map, mor_map):
        self.source = source
        self.target = target
        self.obj_map = tuple(obj_map)
        self.mor_map = tuple(mor_map)

    def on_obj(self, x):
        return self.obj_map[x]

    def on_mor(self, f):
        return self.mor_map[f]

    def then(self, other):
        if other.source is not self.target and not other.source.same_as(self.target):
            raise ValueError("functors not composable")
        return CatFunctor(
            self.source,
            other.target,
            tuple(other.obj_map[x] for x in self.obj_map),
            tuple(other.mor_map[f] for f in self.mor_map),
        )

    @staticmethod
    def identity(cat):
        return CatFunctor(cat, cat, range(cat.n_objects), range(cat.n_morphisms))

    def is_bijective(self):
        return (
            self.source.n_objects == self.target.n_objects
            and self.source.n_morphisms == self.target.n_morphisms
            and len(set(self.obj_map)) == self.source.n_objects
            and len(set(self.mor_map)) == self.source.n_morphisms
        )

    def same_maps(self, other):
        return self.obj_map == other.obj_map and self.mor_map == other.mor_map

    def __repr__(self):
        return f"CatFunctor({self.source!r} -> {self.target!r})"


class NatTransformation:
    """A natural transformation given by its component morphisms."""

    def __init__(self, source_functor, target_functor, components):
        self.source_functor = source_functor
        self.target_functor = target_functor
        self.components = tuple(components)


# ---------------------------------------------------------------------------
# validation

def validate_category(c):
    """Exhaustive axiom check; returns a list of human-readable violations."""
    report = []
    n, m = c.n_objects, c.n_morphisms
    if len(c.identity) != n:
        report.append(f"identity table has {len(c.identity)} entries, expected {n}")
        return report
    if len(c.src) != m or len(c.dst) != m:
        report.append("src/dst tables have inconsistent lengths")
        return report
    for x in range(n):
        i = c.identity[x]
        if not (0 <= i < m):
            report.append(f"identity[{x}] = {i} out of range")
        elif c.src[i] != x or c.dst[i] != x:
            report.append(f"identity[{x}] = {i} is not an endomorphism of {x}")
    for (f, g), h in c.comp.items():
        if c.dst[f] != c.src[g]:
            report.append(f"compose({f},{g}) defined but dst({f}) != src({g})")
            continue
        if c.src[h] != c.src[f] or c.dst[h] != c.dst[g]:
            report.append(f"compose({f},{g}) = {h} has wrong endpoints")
    for f in range(m):
        for g in range(m):
            if c.dst[f] == c.src[g] and (f, g) not in c.comp:
                report.append(f"compose({f},{g}) undefined though dst({f}) = src({g})")
    for f in range(m):
        if (f, c.identity[c.dst[f]]) in c.comp and c.comp[(f, c.identity[c.dst[f]])] != f:
            report.append(f"right unit law fails at morphism {f}")
        if (c.identity[c.src[f]], f) in c.comp and c.comp[(c.identity[c.src[f]], f)] != f:
            report.append(f"left unit law fails at morphism {f}")
    for (f, g), fg in c.comp.items():
        for h in range(m):
            if c.dst[g] == c.src[h]:
                lhs = c.comp.get((fg, h))
                gh = c.comp.get((g, h))
                rhs = c.comp.get((f, gh)) if gh is not None else None
                if lhs is None or rhs is None or lhs != rhs:
                    report.append(f"associativity fails at ({f},{g},{h})")
    return report


def validate_groupoid(g):
    report = validate_category(g)
    if report:
        return report
    if len(g.inverse) != g.n_morphisms:
        return report + ["inverse table has wrong length"]
    for f in range(g.n_morphisms):
        i = g.inverse[f]
        if g.src[i] != g.dst[f] or g.dst[i] != g.src[f]:
            report.append(f"inverse[{f}] = {i} has wrong endpoints")
            continue
        if g.comp[(f, i)] != g.identity[g.src[f]]:
            report.append(f"f;inverse(f) != id at morphism {f}")
        if g.comp[(i, f)] != g.identity[g.dst[f]]:
            report.append(f"inverse(f);f != id at morphism {f}")
        if g.inverse[i] != f:
            report.append(f"inverse not involutive at morphism {f}")
    return report


def validate_group(g):
    report = []
    n = g.order
    for a in range(n):
        for b in range(n):
            for c in range(n):
                if g.mul[g.mul[a][b]][c] != g.mul[a][g.mul[b][c]]:
                    report.append(f"associativity fails at ({a},{b},{c})")
    return report


def validate_functor(fun):
    report = []
    s, t = fun.source, fun.target
    if len(fun.obj_map) != s.n_objects or len(fun.mor_map) != s.n_morphisms:
        return ["object/morphism map has wrong length"]
    for f in range(s.n_morphisms):
        mf = fun.mor_map[f]
        if t.src[mf] != fun.obj_map[s.src[f]] or t.dst[mf] != fun.obj_map[s.dst[f]]:
            report.append(f"morphism {f}: image has wrong endpoints")
    for x in range(s.n_objects):
        if fun.mor_map[s.identity[x]] != t.identity[fun.obj_map[x]]:
            report.append(f"identity of object {x} not preserved")
    for (f, g), h in s.comp.items():
        if t.comp.get((fun.mor_map[f], fun.mor_map[g])) != fun.mor_map[h]:
            report.append(f"composition not preserved at ({f},{g})")
    return report


def validate_nat(nat):
    report = []
    fun, gun = nat.source_functor, nat.target_functor
    s, t = fun.source, fun.target
    for x in range(s.n_objects):
        c = nat.components[x]
        if t.src[c] != fun.obj_map[x] or t.dst[c] != gun.obj_map[x]:
            report.append(f"component at object {x} has wrong endpoints")
            return report
    for u in range(s.n_morphisms):
        a, b = s.src[u], s.dst[u]
        # F(u);c_b == c_a;G(u)
        if t.comp[(fun.mor_map[u], nat.components[b])] != t.comp[(nat.components[a], gun.mor_map[u])]:
            report.append(f"naturality fails at morphism {u}")
    return report


# ---------------------------------------------------------------------------
# basic constructors

def terminal_category():
    return FiniteCategory(1, [0], [0], [0], {(0, 0): 0})


def terminal_groupoid():
    return Groupoid(1, [0], [0], [0], {(0, 0): 0}, [0])


def discrete_groupoid(n):
    ids = list(range(n))
    return Groupoid(n, ids, ids, ids, {(i, i): i for i in ids}, ids)


def discrete_category(n):
    ids = list(range(n))
    return FiniteCategory(n, ids, ids, ids, {(i, i): i for i in ids})


def delooping(group):
    """One-object groupoid on a group; arrow index = element index.

    Diagrammatic order makes compose(g, h) the element h*g.
    """
    n = group.order
    comp = {(g, h): group.mul[h][g] for g in range(n) for h in range(n)}
    return Groupoid(1, [0] * n, [0] * n, [group.identity], comp, group.inverse)


def action_groupoid(group, n_points, act):
    """Translation groupoid of a left group action on {0..n_points-1}.

    ``act[g][x]`` is g.x; an arrow per pair (x, g), indexed x-major.
    """
    act = [tuple(row) for row in act]
    if len(act) != group.order or any(len(row) != n_points for row in act):
        raise ValueError("action table has wrong shape")
    e = group.identity
    for x in range(n_points):
        if act[e][x] != x:
            raise ValueError(f"identity does not act trivially on point {x}")
    for g in range(group.order):
        for h in range(group.order):
            for x in range(n_points):
                if act[group.mul[g][h]][x] != act[g][act[h][x]]:
                    raise ValueError(f"action not compatible at ({g},{h},{x})")

    def arrow(x, g):
        return x * group.order + g

    src, dst = [], []
    for x in range(n_points):
        for g in range(group.order):
            src.append(x)
            dst.append(act[g][x])
    identity = [arrow(x, e) for x in range(n_points)]
    comp = {}
    for x in range(n_points):
        for g in range(group.order):
            for h in range(group.order):
                # x --g--> g.x --h--> (h*g).x
                comp[(arrow(x, g), arrow(act[g][x], h))] = arrow(x, group.mul[h][g])
    inverse = [
        arrow(act[g][x], group.inverse[g])
        for x in range(n_points)
        for g in range(group.order)
    ]
    return Groupoid(n_points, src, dst, identity, comp, inverse)


def translation_groupoid(group):
    """The group acting on itself by left multiplication."""
    return action_groupoid(group, group.order, group.mul)


class Overcat:
    """Overcategory at an object, with its forgetful functor and lookups.

    Objects are the ambient morphisms into ``alpha`` (in index order);
    arrows from p to q are ambient morphisms u with u;q = p.
    """

    def __init__(self, ambient, alpha):
        self.ambient = ambient
        self.alpha = alpha
        self.objects = [f for f in range(ambient.n_morphisms) if ambient.dst[f] == alpha]
        self.obj_index = {f: i for i, f in enumerate(self.objects)}
        arrows = []
        for i, p in enumerate(self.objects):
            for j, q in enumerate(self.objects):
                for u in ambient.hom(ambient.src[p], ambient.src[q]):
                    if ambient.comp[(u, q)] == p:
                        arrows.append((i, j, u))
        self.arrows = arrows
        self.arr_index = {a: k for k, a in enumerate(arrows)}
        src = [a[0] for a in arrows]
        dst = [a[1] for a in arrows]
        identity = [
            self.arr_index[(i, i, ambient.identity[ambient.src[p]])]
            for i, p in enumerate(self.objects)
        ]
        comp = {}
        for k1, (i, j, u) in enumerate(arrows):
            for k2, (j2, l, v) in enumerate(arrows):
                if j2 == j:
                    comp[(k1, k2)] = self.arr_index[(i, l, ambient.comp[(u, v)])]
        self.cat = FiniteCategory(len(self.objects), src, dst, identity, comp)
        self.forgetful = CatFunctor(
            self.cat,
            ambient,
            [ambient.src[p] for p in self.objects],
            [u for (_, _, u) in arrows],
        )


def overcategory(gamma, alpha):
    return Overcat(gamma, alpha)


def overcategory_map(gamma, e, over_src=None, over_dst=None):
    """Post-composition functor (gamma over src(e)) -> (gamma over dst(e))."""
    if over_src is None:
        over_src = Overcat(gamma, gamma.src[e])
    if over_dst is None:
        over_dst = Overcat(gamma, gamma.dst[e])
    obj_map = [over_dst.obj_index[gamma.comp[(p, e)]] for p in over_src.objects]
    mor_map = [
        over_dst.arr_index[(obj_map[i], obj_map[j], u)]
        for (i, j, u) in over_src.arrows
    ]
    return CatFunctor(over_src.cat, over_dst.cat, obj_map, mor_map)


class ProductCat:
    """Finite product of categories, with projections and pairing lookups."""

    def __init__(self, factors, groupoid=None):
        self.factors = list(factors)
        if groupoid is None:
            groupoid = all(isinstance(c, Groupoid) for c in self.factors)
        obj_tuples = list(itertools.product(*(range(c.n_objects) for c in self.factors)))
        mor_tuples = list(itertools.product(*(range(c.n_morphisms) for c in self.factors)))
        self.obj_tuples = obj_tuples
        self.mor_tuples = mor_tuples
        self.obj_index = {t: i for i, t in enumerate(obj_tuples)}
        self.mor_index = {t: i for i, t in enumerate(mor_tuples)}
        src = [self.obj_index[tuple(c.src[m] for c, m in zip(self.factors, t))] for t in mor_tuples]
        dst = [self.obj_index[tuple(c.dst[m] for c, m in zip(self.factors, t))] for t in mor_tuples]
        identity = [
            self.mor_index[tuple(c.identity[x] for c, x in zip(self.factors, t))]
            for t in obj_tuples
        ]
        comp = {}
        composable = [
            [(f, g) for (f, g) in c.comp] for c in self.factors
        ]
        for combo in itertools.product(*composable):
            fs = tuple(p[0] for p in combo)
            gs = tuple(p[1] for p in combo)
            hs = tuple(c.comp[p] for c, p in zip(self.factors, combo))
            comp[(self.mor_index[fs], self.mor_index[gs])] = self.mor_index[hs]
        if groupoid:
            inverse = [
                self.mor_index[tuple(c.inverse[m] for c, m in zip(self.factors, t))]
                for t in mor_tuples
            ]
            self.cat = Groupoid(len(obj_tuples), src, dst, identity, comp, inverse)
        else:
            self.cat = FiniteCategory(len(obj_tuples), src, dst, identity, comp)
        self.projections = [
            CatFunctor(
                self.cat,
                c,
                [t[k] for t in obj_tuples],
                [t[k] for t in mor_tuples],
            )
            for k, c in enumerate(self.factors)
        ]

    def pair_functors(self, source, funs):
        """The functor source -> product induced by one functor per factor."""
        obj_map = [
            self.obj_index[tuple(f.obj_map[x] for f in funs)]
            for x in range(source.n_objects)
        ]
        mor_map = [
            self.mor_index[tuple(f.mor_map[m] for f in funs)]
            for m in range(source.n_morphisms)
        ]
        return CatFunctor(source, self.cat, obj_map, mor_map)


def product_category(a, b):
    p = ProductCat([a, b])
    return p.cat, p.projections


def disjoint_union(groupoids):
    """Coproduct of groupoids, with injection functors."""
    src, dst, identity, inverse = [], [], [], []
    comp = {}
    injections = []
    obj_off = mor_off = 0
    origin = []
    for k, g in enumerate(groupoids):
        injections.append(
            CatFunctor(
                g,
                None,  # patched below
                [obj_off + x for x in range(g.n_objects)],
                [mor_off + m for m in range(g.n_morphisms)],
            )
        )
        src.extend(obj_off + s for s in g.src)
        dst.extend(obj_off + d for d in g.dst)
        identity.extend(mor_off + i for i in g.identity)
        inverse.extend(mor_off + i for i in g.inverse)
        for (f, gg), h in g.comp.items():
            comp[(mor_off + f, mor_off + gg)] = mor_off + h
        origin.extend([k] * g.n_objects)
        obj_off += g.n_objects
        mor_off += g.n_morphisms
    out = Groupoid(obj_off, src, dst, identity, comp, inverse)
    for inj in injections:
        inj.target = out
    out.component_of = tuple(origin)
    return out, injections


def make_category(n_objects, arrows, comp_rules=None):
    """Small hand-built category: identities 0..n-1, then the given arrows.

    ``arrows`` is a list of (src, dst); ``comp_rules`` maps pairs of
    non-identity arrow positions to the arrow position of their
    composite (identity composites are filled in automatically).
    """
    m = n_objects + len(arrows)
    src = list(range(n_objects)) + [a[0] for a in arrows]
    dst = list(range(n_objects)) + [a[1] for a in arrows]
    identity = list(range(n_objects))
    comp = {}
    for f in range(m):
        comp[(f, dst[f])] = f
        comp[(src[f], f)] = f
    if comp_rules:
        for (i, j), k in comp_rules.items():
            comp[(n_objects + i, n_objects + j)] = n_objects + k
    return FiniteCategory(n_objects, src, dst, identity, comp)


def pullback_index():
    """The shape of a pullback diagram: two feet mapping into a middle."""
    return make_category(3, [(0, 2), (1, 2)])


def groupoid_from_category(cat):
    """Promote a category to a groupoid; raises if some arrow lacks an inverse."""
    inverse = []
    for f in range(cat.n_morphisms):
        found = None
        for g in cat.hom(cat.dst[f], cat.src[f]):
            if (
                cat.comp[(f, g)] == cat.identity[cat.src[f]]
                and cat.comp[(g, f)] == cat.identity[cat.dst[f]]
            ):
                found = g
                break
        if found is None:
            raise ValueError(f"morphism {f} is not invertible")
        inverse.append(found)
    return Groupoid(cat.n_objects, cat.src, cat.dst, cat.identity, cat.comp, inverse)
