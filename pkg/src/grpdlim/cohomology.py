"""Nonabelian 1-cocycles, the twisted-conjugation groupoid, H^1,
stabilizer subgroups, and the identification with homotopy fixed points
of the delooped coefficient group."""

from __future__ import annotations

import itertools

from .core import Budget, CatFunctor, FiniteGroup, Groupoid, delooping
from .equiv import is_equivalence, skeleton
from .holim import ExplicitModel, GroupAction, homotopy_fixed_points


class ActionOnGroup:
    """A group Gamma acting on a group G by automorphisms.

    ``act[gamma][x]`` is the image of x under the automorphism of gamma.
    """

    def __init__(self, gamma, g, act):
        self.gamma = gamma
        self.g = g
        self.act = [tuple(row) for row in act]

    @staticmethod
    def trivial(gamma, g):
        return ActionOnGroup(gamma, g, [range(g.order)] * gamma.order)

    @staticmethod
    def inversion(gamma, g, generator=None):
        """Each non-identity element of a C2-like gamma inverts g (abelian g)."""
        rows = []
        for e in range(gamma.order):
            if e == gamma.identity:
                rows.append(tuple(range(g.order)))
            else:
                rows.append(g.inverse)
        return ActionOnGroup(gamma, g, rows)


def validate_action_on_group(a):
    report = []
    gam, g = a.gamma, a.g
    if len(a.act) != gam.order or any(len(r) != g.order for r in a.act):
        return ["action table has wrong shape"]
    for e in range(gam.order):
        row = a.act[e]
        if sorted(row) != list(range(g.order)):
            report.append(f"act[{e}] is not a bijection")
            continue
        for x in range(g.order):
            for y in range(g.order):
                if row[g.mul[x][y]] != g.mul[row[x]][row[y]]:
                    report.append(f"act[{e}] is not a homomorphism at ({x},{y})")
    if a.act[gam.identity] != tuple(range(g.order)):
        report.append("identity of gamma does not act trivially")
    for p in range(gam.order):
        for q in range(gam.order):
            fused = a.act[gam.mul[p][q]]
            step = tuple(a.act[p][a.act[q][x]] for x in range(g.order))
            if fused != step:
                report.append(f"act is not a homomorphism at ({p},{q})")
    return report


def _is_cocycle(a, sigma):
    gam, g = a.gamma, a.g
    for p in range(gam.order):
        for q in range(gam.order):
            # sigma(pq) = sigma(p) * (p.sigma(q))
            if sigma[gam.mul[p][q]] != g.mul[sigma[p]][a.act[p][sigma[q]]]:
                return False
    return True


def cocycles(a):
    """All G-valued 1-cocycles of Gamma, in lexicographic order."""
    gam, g = a.gamma, a.g
    out = []
    slots = [
        [g.identity] if e == gam.identity else range(g.order)
        for e in range(gam.order)
    ]
    for sigma in itertools.product(*slots):
        if _is_cocycle(a, sigma):
            out.append(sigma)
    return out


def cocycle_groupoid(a, zs=None):
    """Objects are cocycles; an arrow sigma -> sigma1 per alpha in G with
    sigma1(g) = alpha * sigma(g) * (g.alpha)^-1."""
    gam, g = a.gamma, a.g
    if zs is None:
        zs = cocycles(a)
    z_index = {s: i for i, s in enumerate(zs)}

    def twist(sigma, alpha):
        return tuple(
            g.mul[g.mul[alpha][sigma[e]]][g.inverse[a.act[e][alpha]]]
            for e in range(gam.order)
        )

    def arrow(si, alpha):
        return si * g.order + alpha

    src, dst = [], []
    for si, s in enumerate(zs):
        for alpha in range(g.order):
            src.append(si)
            dst.append(z_index[twist(s, alpha)])
    identity = [arrow(si, g.identity) for si in range(len(zs))]
    comp = {}
    for si in range(len(zs)):
        for alpha in range(g.order):
            mid = dst[arrow(si, alpha)]
            for beta in range(g.order):
                # label of "alpha then beta" is the product beta*alpha
                comp[(arrow(si, alpha), arrow(mid, beta))] = arrow(
                    si, g.mul[beta][alpha]
                )
    inverse = [
        arrow(dst[arrow(si, alpha)], g.inverse[alpha])
        for si in range(len(zs))
        for alpha in range(g.order)
    ]
    grpd = Groupoid(len(zs), src, dst, identity, comp, inverse)
    morphisms = [(si, alpha) for si in range(len(zs)) for alpha in range(g.order)]
    model = ExplicitModel(grpd, zs, morphisms)
    return model


def h1(a):
    """Class representatives of H^1: the lexicographically least cocycle
    per isomorphism class of the cocycle groupoid."""
    zs = cocycles(a)
    model = cocycle_groupoid(a, zs)
    rep = skeleton(model.groupoid)
    return [zs[r] for r in rep.representatives], model, rep


def stabilizer(a, sigma):
    """The subgroup K_sigma = {alpha | sigma(g)*(g.alpha)*sigma(g)^-1 = alpha}."""
    gam, g = a.gamma, a.g
    if not _is_cocycle(a, tuple(sigma)):
        raise ValueError("not a cocycle for the given action")
    members = [
        alpha
        for alpha in range(g.order)
        if all(
            g.mul[g.mul[sigma[e]][a.act[e][alpha]]][g.inverse[sigma[e]]] == alpha
            for e in range(gam.order)
        )
    ]
    pos = {m: i for i, m in enumerate(members)}
    mul = [[pos[g.mul[x][y]] for y in members] for x in members]
    return FiniteGroup(mul, names=[g.names[m] for m in members]), members


def delooping_action(a):
    """The Gamma-action on BG induced by the action on G."""
    bg = delooping(a.g)
    act = [
        CatFunctor(bg, bg, [0], a.act[e])
        for e in range(a.gamma.order)
    ]
    return GroupAction(a.gamma, bg, act)


def hfp_to_cocycles(a, budget=None):
    """The canonical isomorphism (BG)^{h Gamma} -> E_G Z^1(Gamma; G),
    sending (pt, phi) to the cocycle g -> phi(g)^-1."""
    if budget is None:
        budget = Budget()
    action = delooping_action(a)
    hfp = homotopy_fixed_points(action)
    model = cocycle_groupoid(a)
    g = a.g
    obj_map = []
    for (_, phi) in hfp.objects:
        sigma = tuple(g.inverse[phi[e]] for e in range(a.gamma.order))
        obj_map.append(model.obj_index[sigma])
    mor_map = []
    for (o1, o2, alpha) in hfp.morphisms:
        mor_map.append(model.mor_index[(obj_map[o1], alpha)])
    fun = CatFunctor(hfp.groupoid, model.groupoid, obj_map, mor_map)
    return hfp, model, fun


def decompose_hfp(a, budget=None):
    """The equivalence (BG)^{h Gamma} -> disjoint union of B(K_sigma)."""
    hfp, model, iso = hfp_to_cocycles(a, budget)
    rep = skeleton(model.groupoid)
    fun = iso.then(rep.equivalence)
    ok, cert = is_equivalence(fun)
    return hfp, rep, fun, ok, cert
