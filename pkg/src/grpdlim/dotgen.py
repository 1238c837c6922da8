"""Deterministic DOT rendering of groupoids.

Identity morphisms are omitted.  Each inverse pair {f, f^-1} is drawn
once as a double-headed edge (labelled by the lower index); a morphism
equal to its own inverse is drawn the same way.
"""

from __future__ import annotations


def emit_dot(g, name="groupoid"):
    lines = [f"digraph {name} {{"]
    for o in range(g.n_objects):
        lines.append(f'  n{o} [label="{o}"];')
    drawn = set()
    for m in range(g.n_morphisms):
        if g.is_identity(m) or m in drawn:
            continue
        inv = g.inverse[m]
        drawn.add(m)
        drawn.add(inv)
        lines.append(
            f'  n{g.src[m]} -> n{g.dst[m]} [label="{m}", dir=both];'
        )
    lines.append("}")
    return "\n".join(lines) + "\n"
