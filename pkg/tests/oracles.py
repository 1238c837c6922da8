"""Independent brute-force oracles, written against the definitions
rather than the library internals.  Everything here recomputes from
first principles so library results can be checked against them."""

import itertools


def s3_table():
    """Multiplication table of S3 from permutation composition,
    (p*q)(x) = p(q(x)), permutations in lexicographic order."""
    perms = sorted(itertools.permutations(range(3)))
    index = {p: i for i, p in enumerate(perms)}
    return [
        [index[tuple(p[q[x]] for x in range(3))] for q in perms]
        for p in perms
    ], perms


def conjugacy_classes(mul):
    """Conjugacy classes of a group given by its table."""
    n = len(mul)
    identity = next(
        e for e in range(n) if all(mul[e][x] == x == mul[x][e] for x in range(n))
    )
    inv = [next(b for b in range(n) if mul[a][b] == identity) for a in range(n)]
    seen = set()
    classes = []
    for a in range(n):
        if a in seen:
            continue
        cls = {mul[mul[g][a]][inv[g]] for g in range(n)}
        seen |= cls
        classes.append(sorted(cls))
    return classes


def centralizer(mul, a):
    n = len(mul)
    return [g for g in range(n) if mul[g][a] == mul[a][g]]


def brute_cocycles(gamma_mul, g_mul, act):
    """All maps sigma: Gamma -> G with sigma(pq) = sigma(p) * p.sigma(q),
    recomputed directly from the definition."""
    n, m = len(gamma_mul), len(g_mul)
    out = []
    for sigma in itertools.product(range(m), repeat=n):
        if all(
            sigma[gamma_mul[p][q]] == g_mul[sigma[p]][act[p][sigma[q]]]
            for p in range(n)
            for q in range(n)
        ):
            out.append(sigma)
    return out


def brute_h1_classes(gamma_mul, g_mul, act):
    """H^1 classes by brute twisted conjugation: sigma ~ sigma' iff some
    alpha has sigma'(p) = alpha * sigma(p) * (p.alpha)^-1 for all p."""
    n, m = len(gamma_mul), len(g_mul)
    identity = next(
        e for e in range(m) if all(g_mul[e][x] == x == g_mul[x][e] for x in range(m))
    )
    inv = [next(b for b in range(m) if g_mul[a][b] == identity) for a in range(m)]
    zs = brute_cocycles(gamma_mul, g_mul, act)
    classes = []
    seen = set()
    for s in zs:
        if s in seen:
            continue
        orbit = set()
        for alpha in range(m):
            twisted = tuple(
                g_mul[g_mul[alpha][s[p]]][inv[act[p][alpha]]] for p in range(n)
            )
            orbit.add(twisted)
        seen |= orbit
        classes.append(sorted(orbit))
    return zs, classes


def fiber_product_count(f_obj, g_obj, n_x, n_y):
    """Objects of the strict fiber product of two object maps."""
    return sum(
        1 for x in range(n_x) for y in range(n_y) if f_obj[x] == g_obj[y]
    )
