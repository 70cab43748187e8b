"""Canonical labeling of the cube: corners, edges, faces, vertex vocabulary,
ownership of shared entries, and the 48-element spatial symmetry group.

Every other module refers to these tables; none hard-codes indices.

Conventions (documented once, here):

* Corner index ``c`` in 0..7 has cube-local coordinates
  ``(c & 1, c >> 1 & 1, c >> 2 & 1)`` -- x varies fastest.
* Edges are the 12 corner pairs differing in one bit, listed x-edges of the
  bottom ring first (classic ring order e1..e4, e5..e8, e9..e12 when 1-based).
  ``EDGE_OWNED`` marks the three edges anchored at corner 0; a cell of a grid
  code stores exactly those (x-, y-, z-edge leaving its own grid point).
* Faces are keyed (axis, side): index 0: z=0, 1: z=1, 2: y=0, 3: y=1,
  4: x=0, 5: x=1.  A cell owns its three low-side faces (indices 0, 2, 4).
* A face's in-plane frame uses the two remaining axes in ascending axis
  order (z-face: (x, y); y-face: (x, z); x-face: (y, z)); face-vertex slots
  are indexed ``du + 2*dw`` by the corner offsets along that frame, which is
  a property of the grid face itself, so the two cubes sharing a face agree.
* Vocabulary symbols are tuples: ``("e", edge)``, ``("f", face, corner)``
  (the face vertex associated with a cube corner lying on that face) and
  ``("c", corner)`` (interior vertex of a corner).  Text form is 1-based:
  ``e1``..``e12``, ``f1v1``..``f6v8`` (only corners on the face are legal),
  ``c1``..``c8``.
"""

from __future__ import annotations

import itertools

import numpy as np

CORNER_COORDS = tuple((c & 1, (c >> 1) & 1, (c >> 2) & 1) for c in range(8))
CORNER_INDEX = {xyz: c for c, xyz in enumerate(CORNER_COORDS)}

EDGES = (
    (0, 1), (1, 3), (2, 3), (0, 2),      # bottom ring (z=0)
    (4, 5), (5, 7), (6, 7), (4, 6),      # top ring (z=1)
    (0, 4), (1, 5), (3, 7), (2, 6),      # vertical
)
EDGE_INDEX = {e: i for i, e in enumerate(EDGES)}
EDGE_AXIS = tuple(
    (CORNER_COORDS[b][0] - CORNER_COORDS[a][0],
     CORNER_COORDS[b][1] - CORNER_COORDS[a][1],
     CORNER_COORDS[b][2] - CORNER_COORDS[a][2]).index(1)
    for a, b in EDGES
)
# the three edges leaving corner 0 along x, y, z; a grid cell owns these
EDGE_OWNED = (0, 3, 8)

FACE_KEYS = ((2, 0), (2, 1), (1, 0), (1, 1), (0, 0), (0, 1))
FACE_INDEX = {k: i for i, k in enumerate(FACE_KEYS)}
FACE_OWNED = (0, 2, 4)
# cyclic corner order around each face (consecutive pairs are cube edges)
FACE_CYCLES = (
    (0, 1, 3, 2), (4, 5, 7, 6),
    (0, 1, 5, 4), (2, 3, 7, 6),
    (0, 2, 6, 4), (1, 3, 7, 5),
)
# in-plane axes (u, w) per face: remaining axes in ascending order
FACE_UW = tuple(tuple(a for a in range(3) if a != axis)
                for axis, _ in FACE_KEYS)
# corners on each face sorted ascending == slot order du + 2*dw
FACE_CORNERS = tuple(tuple(sorted(cyc)) for cyc in FACE_CYCLES)

CORNER_ADJ = tuple(tuple(c ^ (1 << a) for a in range(3)) for c in range(8))


def face_of_corner_slot(face, corner):
    """Slot index (0..3) of a corner's face vertex on `face`."""
    u, w = FACE_UW[face]
    xyz = CORNER_COORDS[corner]
    return xyz[u] + 2 * xyz[w]


def corner_of_face_slot(face, slot):
    """Inverse of face_of_corner_slot."""
    return _FACE_SLOT_CORNER[face][slot]


def _build_slot_corner():
    out = []
    for f in range(6):
        row = [None] * 4
        for c in FACE_CORNERS[f]:
            row[face_of_corner_slot(f, c)] = c
        out.append(tuple(row))
    return tuple(out)


_FACE_SLOT_CORNER = _build_slot_corner()


def face_ambiguous(corner_signs, face):
    """Diagonally alternating corner signs make a face ambiguous."""
    cyc = FACE_CYCLES[face]
    b = [bool(corner_signs[c]) for c in cyc]
    return b[0] == b[2] and b[1] == b[3] and b[0] != b[1]


# ---------------------------------------------------------------------------
# vocabulary
# ---------------------------------------------------------------------------

def vocabulary():
    """All 44 symbolic vertices: 12 edge, 24 face, 8 interior."""
    syms = [("e", i) for i in range(12)]
    for f in range(6):
        for c in FACE_CORNERS[f]:
            syms.append(("f", f, c))
    syms += [("c", c) for c in range(8)]
    return tuple(syms)


VOCAB = vocabulary()
VOCAB_SET = frozenset(VOCAB)


def symbol_to_text(sym):
    kind = sym[0]
    if kind == "e":
        return f"e{sym[1] + 1}"
    if kind == "f":
        return f"f{sym[1] + 1}v{sym[2] + 1}"
    return f"c{sym[1] + 1}"


def symbol_from_text(txt):
    if txt.startswith("e"):
        sym = ("e", int(txt[1:]) - 1)
    elif txt.startswith("f"):
        f, v = txt[1:].split("v")
        sym = ("f", int(f) - 1, int(v) - 1)
    elif txt.startswith("c"):
        sym = ("c", int(txt[1:]) - 1)
    else:
        raise ValueError(f"unknown vertex symbol {txt!r}")
    if sym not in VOCAB_SET:
        raise ValueError(f"unknown vertex symbol {txt!r}")
    return sym


def default_position(sym):
    """Cube-local position with all stored floats at 0.5."""
    kind = sym[0]
    if kind == "e":
        a, b = EDGES[sym[1]]
        pa, pb = np.asarray(CORNER_COORDS[a], float), np.asarray(
            CORNER_COORDS[b], float)
        return 0.5 * (pa + pb)
    if kind == "f":
        axis, side = FACE_KEYS[sym[1]]
        p = np.full(3, 0.5)
        p[axis] = float(side)
        return p
    return np.full(3, 0.5)


def symbol_position(sym, floats):
    """Cube-local position of a symbol given the 84-float cube vector."""
    kind = sym[0]
    if kind == "e":
        e = sym[1]
        a, b = EDGES[e]
        pa = np.asarray(CORNER_COORDS[a], float)
        pb = np.asarray(CORNER_COORDS[b], float)
        return pa + floats[e] * (pb - pa)
    if kind == "f":
        _, f, c = sym
        axis, side = FACE_KEYS[f]
        slot = face_of_corner_slot(f, c)
        base = 12 + 8 * f + 2 * slot
        u, w = FACE_UW[f]
        p = np.empty(3)
        p[axis] = float(side)
        p[u] = floats[base]
        p[w] = floats[base + 1]
        return p
    c = sym[1]
    base = 60 + 3 * c
    return np.asarray(floats[base:base + 3], float)


def float_slice(sym):
    """(offset, length) of a symbol's floats inside the 84-float vector."""
    kind = sym[0]
    if kind == "e":
        return sym[1], 1
    if kind == "f":
        _, f, c = sym
        return 12 + 8 * f + 2 * face_of_corner_slot(f, c), 2
    return 60 + 3 * sym[1], 3


# ---------------------------------------------------------------------------
# spatial symmetry group (48 signed axis permutations)
# ---------------------------------------------------------------------------

class Transform:
    """One signed axis permutation of the cube.

    Maps cube-local point p to q with q[i] = p[perm[i]] mirrored where
    mirror[i] is set.  Provides the induced index maps on corners, edges
    and faces, plus the determinant sign (mirrors reverse orientation).
    """

    __slots__ = ("perm", "mirror", "corner_map", "edge_map", "face_map",
                 "det", "index")

    def __init__(self, perm, mirror, index):
        self.perm = perm
        self.mirror = mirror
        self.index = index
        cm = []
        for c in range(8):
            x = CORNER_COORDS[c]
            y = tuple(x[perm[i]] ^ mirror[i] for i in range(3))
            cm.append(CORNER_INDEX[y])
        self.corner_map = tuple(cm)
        self.edge_map = tuple(
            EDGE_INDEX[tuple(sorted((cm[a], cm[b])))] for a, b in EDGES)
        fm = []
        for axis, side in FACE_KEYS:
            i = perm.index(axis)
            fm.append(FACE_INDEX[(i, side ^ mirror[i])])
        self.face_map = tuple(fm)
        par = _parity(perm)
        self.det = par * (-1) ** sum(mirror)

    def apply_point(self, p):
        p = np.asarray(p, float)
        q = np.empty(3)
        for i in range(3):
            v = p[..., self.perm[i]] if p.ndim > 1 else p[self.perm[i]]
            q[i] = 1.0 - v if self.mirror[i] else v
        return q

    def apply_points(self, pts):
        pts = np.asarray(pts, float)
        q = np.empty_like(pts)
        for i in range(3):
            v = pts[..., self.perm[i]]
            q[..., i] = 1.0 - v if self.mirror[i] else v
        return q

    def apply_symbol(self, sym):
        kind = sym[0]
        if kind == "e":
            return ("e", self.edge_map[sym[1]])
        if kind == "f":
            return ("f", self.face_map[sym[1]], self.corner_map[sym[2]])
        return ("c", self.corner_map[sym[1]])

    def compose(self, other):
        """Transform equal to applying `other` first, then self."""
        perm = tuple(other.perm[self.perm[i]] for i in range(3))
        mirror = tuple(other.mirror[self.perm[i]] ^ self.mirror[i]
                       for i in range(3))
        return TRANSFORM_LOOKUP[(perm, mirror)]

    def inverse(self):
        inv_perm = tuple(self.perm.index(i) for i in range(3))
        inv_mirror = tuple(self.mirror[self.perm.index(i)] for i in range(3))
        return TRANSFORM_LOOKUP[(inv_perm, inv_mirror)]


def _parity(perm):
    p = list(perm)
    par = 1
    for i in range(len(p)):
        while p[i] != i:
            j = p[i]
            p[i], p[j] = p[j], p[i]
            par = -par
    return par


def _build_transforms():
    ts = []
    for perm in itertools.permutations(range(3)):
        for mirror in itertools.product((0, 1), repeat=3):
            ts.append(Transform(perm, mirror, len(ts)))
    return tuple(ts)


TRANSFORMS = _build_transforms()
TRANSFORM_LOOKUP = {(t.perm, t.mirror): t for t in TRANSFORMS}
IDENTITY = TRANSFORM_LOOKUP[((0, 1, 2), (0, 0, 0))]
ROTATIONS = tuple(t for t in TRANSFORMS if t.det == 1)
