"""Writers for the on-disk example corpus used by the CLI round-trip
tests and the documentation.  Every declaration kind appears at least
once across the generated files."""

from __future__ import annotations

import os
import random

BASICS = """\
group C2 { builtin cyclic 2 }
group V4 {
  row 0 1 2 3
  row 1 0 3 2
  row 2 3 0 1
  row 3 2 1 0
}
category I {
  objects 2
  arrow u 0 1
}
category I2 { product I I }
groupoid T { terminal }
groupoid D2 { discrete 2 }
groupoid BC2 { delooping C2 }
groupoid EC2 { translation C2 }
groupoid W {
  objects 2
  arrow f 0 1
  arrow g 1 0
  f;g = id0
  g;f = id1
}
functor idW {
  from W
  to W
  obj 0 1
  mor 0 1 2 3
}
functor idB {
  from BC2
  to BC2
  obj 0
  mor 0 1
}
functor idT {
  from T
  to T
  obj 0
  mor 0
}
functor idD2 {
  from D2
  to D2
  obj 0 1
  mor 0 1
}
functor collapse {
  from W
  to BC2
  obj 0 0
  mor 0 0 1 1
}
functor swap {
  from D2
  to D2
  obj 1 0
  mor 1 0
}
functor toB {
  from T
  to BC2
  obj 0
  mor 0
}
diagram DG {
  index I
  vertex 0 W
  vertex 1 BC2
  edge u collapse
}
dmap M {
  from DG
  to DG
  component 0 idW
  component 1 idB
}
action SWAP {
  group C2
  space D2
  act 0 idD2
  act 1 swap
}
gaction GA {
  gamma C2
  group V4
  act 0 0 1 2 3
  act 1 0 1 3 2
}
category J {
  objects 2
  arrow a 0 1
}
functor nb {
  from J
  to op I
  obj 1 0
  mor 1 0 2
}
site S {
  shape I
  point p J nb
}
presheaf X {
  site S
  section 0 BC2
  section 1 T
  restriction u toB
}
pmap PM {
  from X
  to X
  component 0 idB
  component 1 idT
}
pdiagram PD {
  index I
  vertex 0 X
  vertex 1 X
  edge u PM
}
"""

DEMO = """\
# finite Galois demo: Z/2 acting on Z/3 by inversion
group C2 { builtin cyclic 2 }
group C3 { builtin cyclic 3 }
groupoid BC3 { delooping C3 }
gaction demo {
  gamma C2
  group C3
  act 0 0 1 2
  act 1 0 2 1
}
"""

LOOP = """\
group S3 { builtin symmetric 3 }
groupoid B_S3 { delooping S3 }
"""

COLIM = """\
# idempotent-splitting index: one object, e with e;e = e
category E {
  objects 1
  arrow e 0 0
  e;e = e
}
group C2 { builtin cyclic 2 }
group C3 { builtin cyclic 3 }
groupoid K { delooping C2 }
groupoid D2 { discrete 2 }
groupoid BC3 { delooping C3 }
functor collapse {
  from D2
  to D2
  obj 0 0
  mor 0 0
}
diagram CD {
  index E
  vertex 0 D2
  edge e collapse
}
groupoid PB { product K K }
functor idB3 {
  from BC3
  to BC3
  obj 0
  mor 0 1 2
}
functor inv3 {
  from BC3
  to BC3
  obj 0
  mor 0 2 1
}
diagram FD {
  index PB
  vertex 0 BC3
  vertex 1 BC3
  vertex 2 BC3
  vertex 3 BC3
  edge 1 inv3
  edge 2 inv3
  edge 3 idB3
}
"""


def _random_file(seed):
    """Seeded random functors between fixed small groupoids."""
    from . import corpus
    from .core import delooping, translation_groupoid

    rng = random.Random(seed)
    ec2 = translation_groupoid(corpus.C2)
    bc2 = delooping(corpus.C2)
    lines = [
        "group C2 { builtin cyclic 2 }",
        "groupoid EC2 { translation C2 }",
        "groupoid BC2 { delooping C2 }",
    ]
    for i, (src, dst, sname, dname) in enumerate([
        (ec2, ec2, "EC2", "EC2"),
        (ec2, bc2, "EC2", "BC2"),
        (bc2, bc2, "BC2", "BC2"),
    ]):
        f = corpus.random_functor(rng, src, dst)
        lines.append(f"functor r{i} {{")
        lines.append(f"  from {sname}")
        lines.append(f"  to {dname}")
        lines.append(f"  obj {' '.join(map(str, f.obj_map))}")
        lines.append(f"  mor {' '.join(map(str, f.mor_map))}")
        lines.append("}")
    return "\n".join(lines) + "\n"


def write_example_corpus(out_dir, seed=0):
    os.makedirs(out_dir, exist_ok=True)
    files = {
        "basics.gpd": BASICS,
        "demo.gpd": DEMO,
        "loop.gpd": LOOP,
        "colim.gpd": COLIM,
        "random.gpd": _random_file(seed),
    }
    paths = []
    for fname, text in sorted(files.items()):
        path = os.path.join(out_dir, fname)
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
        paths.append(path)
    return paths
