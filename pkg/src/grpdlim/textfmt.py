"""Line-oriented declaration format for workspaces.

Declarations are ``kind name { ... }`` blocks, one statement per line.
Composition tables are explicit triples ``f;g = h`` over declared arrow
names (identities are named ``id0``, ``id1``, ...).  Groups may be
declared by built-in presentation (``builtin cyclic 4``, ``builtin
symmetric 3``, ``builtin klein``, ``builtin trivial``) or by explicit
``row`` lines of the multiplication table.  Morphisms of constructed
objects (deloopings, products, ...) are referenced by integer index.

A parsed :class:`Workspace` holds fully validated objects; every parse
or validation failure carries a line number.
"""

from __future__ import annotations

from .core import (
    CatFunctor,
    FiniteCategory,
    FiniteGroup,
    ProductCat,
    delooping,
    discrete_groupoid,
    groupoid_from_category,
    terminal_groupoid,
    translation_groupoid,
    validate_category,
    validate_functor,
    validate_group,
    validate_groupoid,
)
from .holim import GroupAction, validate_action
from .cohomology import ActionOnGroup, validate_action_on_group
from .limits import DiagramFunctor, DiagramMap, validate_diagram, validate_diagram_map
from .site import (
    FiniteSite,
    PresheafDiagram,
    PresheafMap,
    SitePoint,
    SitePresheaf,
    validate_presheaf,
    validate_presheaf_map,
    validate_site,
)

KINDS = (
    "group", "category", "groupoid", "functor", "diagram", "dmap",
    "action", "gaction", "site", "presheaf", "pmap", "pdiagram",
)


class ParseError(Exception):
    def __init__(self, line, message):
        self.line = line
        self.message = message
        super().__init__(f"line {line}: {message}")


class UnresolvedReference(ParseError):
    pass


class ValidationFailure(ParseError):
    pass


class Declaration:
    """One named entry: the built value plus its canonical body lines."""

    def __init__(self, kind, name, value, body, meta=None):
        self.kind = kind
        self.name = name
        self.value = value
        self.body = body          # list of canonical statement strings
        self.meta = meta or {}    # extra structure (arrow names, ProductCat, ...)


class Workspace:
    def __init__(self):
        self.decls = {}
        self.order = []

    def add(self, decl, line=0):
        if decl.name in self.decls:
            raise ParseError(line, f"duplicate name {decl.name!r}")
        self.decls[decl.name] = decl
        self.order.append(decl.name)

    def get(self, name, kind=None, line=0):
        if name not in self.decls:
            raise UnresolvedReference(line, f"unknown name {name!r}")
        d = self.decls[name]
        if kind is not None and d.kind != kind:
            raise UnresolvedReference(
                line, f"{name!r} is a {d.kind}, expected {kind}"
            )
        return d


def _split_blocks(text):
    """Yield (kind, name, [(lineno, statement)]) per declaration block."""
    lines = text.splitlines()
    i = 0
    n = len(lines)
    while i < n:
        raw = lines[i]
        stripped = raw.split("#", 1)[0].strip()
        if not stripped:
            i += 1
            continue
        parts = stripped.split()
        if len(parts) >= 3 and parts[2] == "{" and stripped.endswith("}"):
            # inline form: kind name { single-statement }
            kind, name = parts[0], parts[1]
            if kind not in KINDS:
                raise ParseError(i + 1, f"unknown declaration kind {kind!r}")
            inner = stripped.split("{", 1)[1].rsplit("}", 1)[0].strip()
            yield kind, name, ([(i + 1, inner)] if inner else [])
            i += 1
            continue
        if len(parts) != 3 or parts[2] != "{":
            raise ParseError(i + 1, f"expected 'kind name {{', got {stripped!r}")
        kind, name = parts[0], parts[1]
        if kind not in KINDS:
            raise ParseError(i + 1, f"unknown declaration kind {kind!r}")
        body = []
        i += 1
        while True:
            if i >= n:
                raise ParseError(i, f"unterminated block for {name!r}")
            stmt = lines[i].split("#", 1)[0].strip()
            if stmt == "}":
                i += 1
                break
            if stmt:
                body.append((i + 1, stmt))
            i += 1
        yield kind, name, body


def _ints(words, line, what):
    try:
        return [int(w) for w in words]
    except ValueError:
        raise ParseError(line, f"expected integers for {what}: {' '.join(words)}")


# ---------------------------------------------------------------------------
# per-kind builders

def _build_group(name, body):
    rows = []
    for line, stmt in body:
        words = stmt.split()
        if words[0] == "builtin":
            if rows:
                raise ParseError(line, "builtin cannot be mixed with rows")
            if words[1] == "cyclic":
                g = FiniteGroup.cyclic(_ints(words[2:3], line, "cyclic order")[0])
            elif words[1] == "symmetric":
                k = _ints(words[2:3], line, "symmetric degree")[0]
                if k > 4:
                    raise ParseError(line, "symmetric builtin supports n <= 4")
                g = FiniteGroup.symmetric(k)
            elif words[1] == "klein":
                g = FiniteGroup.klein()
            elif words[1] == "trivial":
                g = FiniteGroup.trivial()
            else:
                raise ParseError(line, f"unknown builtin group {words[1]!r}")
            return g, [stmt]
        if words[0] == "row":
            rows.append(_ints(words[1:], line, "a table row"))
        else:
            raise ParseError(line, f"unexpected statement {stmt!r} in group")
    if not rows:
        raise ParseError(0, f"group {name!r} has no table")
    try:
        g = FiniteGroup(rows)
    except ValueError as e:
        raise ValidationFailure(body[0][0], str(e))
    errs = validate_group(g)
    if errs:
        raise ValidationFailure(body[0][0], errs[0])
    return g, [f"row {' '.join(map(str, r))}" for r in rows]


def _build_catlike(ws, name, body, want_groupoid):
    first_line = body[0][0] if body else 0
    head = body[0][1].split() if body else []
    constructors = {"delooping", "translation", "discrete", "terminal", "product"}
    if head and head[0] in constructors:
        if not want_groupoid and head[0] != "product":
            raise ParseError(first_line, f"{head[0]} is only available for groupoids")
        if head[0] == "delooping":
            g = ws.get(head[1], "group", first_line)
            return delooping(g.value), [body[0][1]], {}
        if head[0] == "translation":
            g = ws.get(head[1], "group", first_line)
            return translation_groupoid(g.value), [body[0][1]], {}
        if head[0] == "discrete":
            return discrete_groupoid(int(head[1])), [body[0][1]], {}
        if head[0] == "terminal":
            return terminal_groupoid(), [body[0][1]], {}
        if head[0] == "product":
            kind = "groupoid" if want_groupoid else "category"
            factors = [ws.get(w, kind, first_line).value for w in head[1:]]
            pc = ProductCat(factors, groupoid=want_groupoid)
            return pc.cat, [body[0][1]], {"product": pc, "factors": list(head[1:])}
    # explicit table
    n_objects = None
    arrows = []            # (name, src, dst)
    triples = []           # (line, f, g, h)
    for line, stmt in body:
        words = stmt.split()
        if words[0] == "objects":
            n_objects = int(words[1])
        elif words[0] == "arrow":
            if len(words) != 4:
                raise ParseError(line, "arrow needs: arrow name src dst")
            arrows.append((words[1], int(words[2]), int(words[3])))
        elif ";" in stmt and "=" in stmt:
            left, right = stmt.split("=")
            f, g = (w.strip() for w in left.split(";"))
            triples.append((line, f, g, right.strip()))
        else:
            raise ParseError(line, f"unexpected statement {stmt!r}")
    if n_objects is None:
        raise ParseError(first_line, "missing 'objects N'")
    mor_names = [f"id{o}" for o in range(n_objects)] + [a[0] for a in arrows]
    if len(set(mor_names)) != len(mor_names):
        raise ParseError(first_line, "duplicate morphism names")
    name_idx = {nm: i for i, nm in enumerate(mor_names)}
    src = list(range(n_objects)) + [a[1] for a in arrows]
    dst = list(range(n_objects)) + [a[2] for a in arrows]
    comp = {}
    for f in range(len(mor_names)):
        comp[(f, dst[f])] = f
        comp[(src[f], f)] = f
    for line, f, g, h in triples:
        for w in (f, g, h):
            if w not in name_idx:
                raise UnresolvedReference(line, f"unknown morphism name {w!r}")
        comp[(name_idx[f], name_idx[g])] = name_idx[h]
    cat = FiniteCategory(n_objects, src, dst, list(range(n_objects)), comp)
    errs = validate_category(cat)
    if errs:
        raise ValidationFailure(first_line, errs[0])
    if want_groupoid:
        try:
            cat = groupoid_from_category(cat)
        except ValueError as e:
            raise ValidationFailure(first_line, str(e))
    canon = [f"objects {n_objects}"]
    canon += [f"arrow {a} {s} {d}" for (a, s, d) in arrows]
    canon += [f"{f};{g} = {h}" for (_, f, g, h) in triples]
    return cat, canon, {"mor_names": mor_names, "name_idx": name_idx}


def _mor_ref(decl, word, line):
    """Resolve a morphism reference: a declared arrow name or an index."""
    idx = decl.meta.get("name_idx")
    if idx and word in idx:
        return idx[word]
    try:
        m = int(word)
    except ValueError:
        raise UnresolvedReference(line, f"unknown morphism {word!r} in {decl.name!r}")
    if not (0 <= m < decl.value.n_morphisms):
        raise ParseError(line, f"morphism index {m} out of range for {decl.name!r}")
    return m


def _catlike(ws, name, line):
    if name not in ws.decls:
        raise UnresolvedReference(line, f"unknown name {name!r}")
    d = ws.decls[name]
    if d.kind not in ("category", "groupoid"):
        raise UnresolvedReference(line, f"{name!r} is a {d.kind}, expected a category or groupoid")
    return d


def _build_functor(ws, name, body):
    src = dst = None
    obj = mor = None
    op_target = False
    first = body[0][0] if body else 0
    for line, stmt in body:
        words = stmt.split()
        if words[0] == "from":
            src = _catlike(ws, words[1], line)
        elif words[0] == "to":
            if words[1] == "op":
                op_target = True
                dst = _catlike(ws, words[2], line)
            else:
                dst = _catlike(ws, words[1], line)
        elif words[0] == "obj":
            obj = _ints(words[1:], line, "object map")
        elif words[0] == "mor":
            mor = _ints(words[1:], line, "morphism map")
        else:
            raise ParseError(line, f"unexpected statement {stmt!r}")
    if src is None or dst is None or obj is None or mor is None:
        raise ParseError(first, "functor needs from/to/obj/mor")
    target = dst.value.opposite() if op_target else dst.value
    fun = CatFunctor(src.value, target, obj, mor)
    errs = validate_functor(fun)
    if errs:
        raise ValidationFailure(first, errs[0])
    canon = [
        f"from {src.name}",
        f"to {'op ' + dst.name if op_target else dst.name}",
        f"obj {' '.join(map(str, obj))}",
        f"mor {' '.join(map(str, mor))}",
    ]
    return fun, canon, {"op_target": op_target, "src": src.name, "dst": dst.name}


def _build_diagram(ws, name, body):
    index = None
    vertices = {}
    edge_stmts = []
    first = body[0][0] if body else 0
    for line, stmt in body:
        words = stmt.split()
        if words[0] == "index":
            index = _catlike(ws, words[1], line)
        elif words[0] == "vertex":
            vertices[int(words[1])] = (line, words[2])
        elif words[0] == "edge":
            edge_stmts.append((line, words[1], words[2]))
        else:
            raise ParseError(line, f"unexpected statement {stmt!r}")
    if index is None:
        raise ParseError(first, "diagram needs an index category")
    idx = index.value
    vs = []
    for o in range(idx.n_objects):
        if o not in vertices:
            raise ParseError(first, f"missing vertex {o}")
        line, vname = vertices[o]
        vs.append(ws.get(vname, "groupoid", line).value)
    edges = [None] * idx.n_morphisms
    for o in range(idx.n_objects):
        edges[idx.identity[o]] = CatFunctor.identity(vs[o])
    for line, mref, fname in edge_stmts:
        m = _mor_ref(index, mref, line)
        edges[m] = ws.get(fname, "functor", line).value
    for m in range(idx.n_morphisms):
        if edges[m] is None:
            raise ParseError(first, f"missing edge for morphism {m}")
    d = DiagramFunctor(idx, vs, edges)
    errs = validate_diagram(d)
    if errs:
        raise ValidationFailure(first, errs[0])
    canon = [f"index {index.name}"]
    canon += [f"vertex {o} {vertices[o][1]}" for o in range(idx.n_objects)]
    canon += [f"edge {mref} {fname}" for (_, mref, fname) in edge_stmts]
    return d, canon, {"index": index.name}


def _build_components(ws, body, kind_from, kind_to, comp_kind, validator, ctor):
    """Shared shape of dmap/pmap: from/to plus per-object components."""
    src = dst = None
    comps = {}
    first = body[0][0] if body else 0
    for line, stmt in body:
        words = stmt.split()
        if words[0] == "from":
            src = ws.get(words[1], kind_from, line)
        elif words[0] == "to":
            dst = ws.get(words[1], kind_to, line)
        elif words[0] == "component":
            comps[int(words[1])] = (line, words[2])
        else:
            raise ParseError(line, f"unexpected statement {stmt!r}")
    if src is None or dst is None:
        raise ParseError(first, "map needs from/to")
    n = _n_components(src.value)
    ordered = []
    for o in range(n):
        if o not in comps:
            raise ParseError(first, f"missing component {o}")
        line, fname = comps[o]
        ordered.append(ws.get(fname, comp_kind, line).value)
    value = ctor(src.value, dst.value, ordered)
    errs = validator(value)
    if errs:
        raise ValidationFailure(first, errs[0])
    canon = [f"from {src.name}", f"to {dst.name}"]
    canon += [f"component {o} {comps[o][1]}" for o in range(n)]
    return value, canon, {"src": src.name, "dst": dst.name}


def _n_components(v):
    if isinstance(v, DiagramFunctor):
        return v.index.n_objects
    return v.site.shape.n_objects


def _build_action(ws, name, body):
    group = space = None
    acts = {}
    first = body[0][0] if body else 0
    for line, stmt in body:
        words = stmt.split()
        if words[0] == "group":
            group = ws.get(words[1], "group", line)
        elif words[0] == "space":
            space = ws.get(words[1], "groupoid", line)
        elif words[0] == "act":
            acts[int(words[1])] = (line, words[2])
        else:
            raise ParseError(line, f"unexpected statement {stmt!r}")
    if group is None or space is None:
        raise ParseError(first, "action needs group/space")
    ordered = []
    for e in range(group.value.order):
        if e not in acts:
            raise ParseError(first, f"missing act {e}")
        line, fname = acts[e]
        ordered.append(ws.get(fname, "functor", line).value)
    a = GroupAction(group.value, space.value, ordered)
    errs = validate_action(a)
    if errs:
        raise ValidationFailure(first, errs[0])
    canon = [f"group {group.name}", f"space {space.name}"]
    canon += [f"act {e} {acts[e][1]}" for e in range(group.value.order)]
    return a, canon, {"group": group.name, "space": space.name}


def _build_gaction(ws, name, body):
    gamma = group = None
    rows = {}
    first = body[0][0] if body else 0
    for line, stmt in body:
        words = stmt.split()
        if words[0] == "gamma":
            gamma = ws.get(words[1], "group", line)
        elif words[0] == "group":
            group = ws.get(words[1], "group", line)
        elif words[0] == "act":
            rows[int(words[1])] = _ints(words[2:], line, "an action row")
        else:
            raise ParseError(line, f"unexpected statement {stmt!r}")
    if gamma is None or group is None:
        raise ParseError(first, "gaction needs gamma/group")
    ordered = []
    for e in range(gamma.value.order):
        if e not in rows:
            raise ParseError(first, f"missing act row {e}")
        ordered.append(rows[e])
    a = ActionOnGroup(gamma.value, group.value, ordered)
    errs = validate_action_on_group(a)
    if errs:
        raise ValidationFailure(first, errs[0])
    canon = [f"gamma {gamma.name}", f"group {group.name}"]
    canon += [f"act {e} {' '.join(map(str, rows[e]))}" for e in range(gamma.value.order)]
    return a, canon, {"gamma": gamma.name, "group": group.name}


def _build_site(ws, name, body):
    shape = None
    points = []
    first = body[0][0] if body else 0
    for line, stmt in body:
        words = stmt.split()
        if words[0] == "shape":
            shape = _catlike(ws, words[1], line)
        elif words[0] == "point":
            if len(words) != 4:
                raise ParseError(line, "point needs: point name index functor")
            points.append((line, words[1], words[2], words[3]))
        else:
            raise ParseError(line, f"unexpected statement {stmt!r}")
    if shape is None:
        raise ParseError(first, "site needs a shape")
    pts = []
    for line, pname, iname, fname in points:
        idxd = _catlike(ws, iname, line)
        fund = ws.get(fname, "functor", line)
        pts.append(SitePoint(pname, idxd.value, fund.value))
    s = FiniteSite(shape.value, pts)
    errs = validate_site(s)
    if errs:
        raise ValidationFailure(first, errs[0])
    canon = [f"shape {shape.name}"]
    canon += [f"point {p[1]} {p[2]} {p[3]}" for p in points]
    return s, canon, {"shape": shape.name}


def _build_presheaf(ws, name, body):
    site = None
    sections = {}
    restr_stmts = []
    first = body[0][0] if body else 0
    for line, stmt in body:
        words = stmt.split()
        if words[0] == "site":
            site = ws.get(words[1], "site", line)
        elif words[0] == "section":
            sections[int(words[1])] = (line, words[2])
        elif words[0] == "restriction":
            restr_stmts.append((line, words[1], words[2]))
        else:
            raise ParseError(line, f"unexpected statement {stmt!r}")
    if site is None:
        raise ParseError(first, "presheaf needs a site")
    shape_decl = ws.decls[site.meta["shape"]]
    shape = site.value.shape
    secs = []
    for o in range(shape.n_objects):
        if o not in sections:
            raise ParseError(first, f"missing section {o}")
        line, gname = sections[o]
        secs.append(ws.get(gname, "groupoid", line).value)
    restrictions = [None] * shape.n_morphisms
    for o in range(shape.n_objects):
        restrictions[shape.identity[o]] = CatFunctor.identity(secs[o])
    for line, mref, fname in restr_stmts:
        m = _mor_ref(shape_decl, mref, line)
        restrictions[m] = ws.get(fname, "functor", line).value
    for m in range(shape.n_morphisms):
        if restrictions[m] is None:
            raise ParseError(first, f"missing restriction for morphism {m}")
    x = SitePresheaf(site.value, secs, restrictions)
    errs = validate_presheaf(x)
    if errs:
        raise ValidationFailure(first, errs[0])
    canon = [f"site {site.name}"]
    canon += [f"section {o} {sections[o][1]}" for o in range(shape.n_objects)]
    canon += [f"restriction {mref} {fname}" for (_, mref, fname) in restr_stmts]
    return x, canon, {"site": site.name}


def _build_pdiagram(ws, name, body):
    index = None
    vertices = {}
    edge_stmts = []
    first = body[0][0] if body else 0
    for line, stmt in body:
        words = stmt.split()
        if words[0] == "index":
            index = _catlike(ws, words[1], line)
        elif words[0] == "vertex":
            vertices[int(words[1])] = (line, words[2])
        elif words[0] == "edge":
            edge_stmts.append((line, words[1], words[2]))
        else:
            raise ParseError(line, f"unexpected statement {stmt!r}")
    if index is None:
        raise ParseError(first, "pdiagram needs an index category")
    idx = index.value
    vs = []
    for o in range(idx.n_objects):
        if o not in vertices:
            raise ParseError(first, f"missing vertex {o}")
        line, vname = vertices[o]
        vs.append(ws.get(vname, "presheaf", line).value)
    edges = [None] * idx.n_morphisms
    for o in range(idx.n_objects):
        x = vs[o]
        edges[idx.identity[o]] = PresheafMap(
            x, x, [CatFunctor.identity(s) for s in x.sections]
        )
    for line, mref, fname in edge_stmts:
        m = _mor_ref(index, mref, line)
        edges[m] = ws.get(fname, "pmap", line).value
    for m in range(idx.n_morphisms):
        if edges[m] is None:
            raise ParseError(first, f"missing edge for morphism {m}")
    d = PresheafDiagram(idx, vs, edges)
    for e in range(idx.n_morphisms):
        if edges[e].source is not vs[idx.src[e]] and edges[e].source != vs[idx.src[e]]:
            raise ValidationFailure(first, f"edge {e} has wrong source presheaf")
    canon = [f"index {index.name}"]
    canon += [f"vertex {o} {vertices[o][1]}" for o in range(idx.n_objects)]
    canon += [f"edge {mref} {fname}" for (_, mref, fname) in edge_stmts]
    return d, canon, {"index": index.name}


# ---------------------------------------------------------------------------
# top level

def parse(text):
    ws = Workspace()
    for kind, name, body in _split_blocks(text):
        line = body[0][0] if body else 0
        if kind == "group":
            value, canon = _build_group(name, body)
            meta = {}
        elif kind in ("category", "groupoid"):
            value, canon, meta = _build_catlike(ws, name, body, kind == "groupoid")
        elif kind == "functor":
            value, canon, meta = _build_functor(ws, name, body)
        elif kind == "diagram":
            value, canon, meta = _build_diagram(ws, name, body)
        elif kind == "dmap":
            value, canon, meta = _build_components(
                ws, body, "diagram", "diagram", "functor",
                validate_diagram_map, DiagramMap,
            )
        elif kind == "action":
            value, canon, meta = _build_action(ws, name, body)
        elif kind == "gaction":
            value, canon, meta = _build_gaction(ws, name, body)
        elif kind == "site":
            value, canon, meta = _build_site(ws, name, body)
        elif kind == "presheaf":
            value, canon, meta = _build_presheaf(ws, name, body)
        elif kind == "pmap":
            value, canon, meta = _build_components(
                ws, body, "presheaf", "presheaf", "functor",
                validate_presheaf_map, PresheafMap,
            )
        elif kind == "pdiagram":
            value, canon, meta = _build_pdiagram(ws, name, body)
        else:  # pragma: no cover - KINDS is checked in _split_blocks
            raise ParseError(line, f"unhandled kind {kind}")
        ws.add(Declaration(kind, name, value, canon, meta), line)
    return ws


def print_workspace(ws):
    out = []
    for name in ws.order:
        d = ws.decls[name]
        if len(d.body) == 1:
            out.append(f"{d.kind} {d.name} {{ {d.body[0]} }}")
        else:
            out.append(f"{d.kind} {d.name} {{")
            out.extend(f"  {stmt}" for stmt in d.body)
            out.append("}")
        out.append("")
    return "\n".join(out)
