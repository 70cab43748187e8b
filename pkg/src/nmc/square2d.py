"""The per-square 2D representation: boundary rule, case enumeration,
deduplicated grid storage and polyline extraction.

This is both a brute-forceable testbed and the actual face logic of the 3D
pipeline: every cube face is tessellated by exactly the rule implemented
here, so face boundaries of adjacent cubes agree by construction.

Square corners s in 0..3 sit at (s & 1, s >> 1 & 1).  Sides are corner
pairs: 0 bottom, 1 right, 2 top, 3 left.  Symbols: ("e", side) is the edge
vertex on a crossing side, ("v", corner) the face vertex associated with a
corner.  Signs: True = inside.  The face sign is True when the inside
diagonal pair of an ambiguous square is connected.

Boundary rule (inversion- and symmetry-equivariant, which is what makes
shared faces of adjacent cubes consistent):

* a corner isolated from both side-neighbours after resolving the
  ambiguity is wrapped by the two-segment path edge -> its face vertex
  -> edge;
* the remaining two crossing sides of a half/half split are joined by a
  straight segment.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

CORNER_XY = ((0, 0), (1, 0), (0, 1), (1, 1))
SIDES = ((0, 1), (1, 3), (2, 3), (0, 2))
SIDES_OF_CORNER = tuple(tuple(s for s, (a, b) in enumerate(SIDES)
                              if c in (a, b)) for c in range(4))
DIAGONALS = ((0, 3), (1, 2))


def square_ambiguous(corner_signs):
    s = [bool(b) for b in corner_signs]
    return s[0] == s[3] and s[1] == s[2] and s[0] != s[1]


def component_labels(corner_signs, face_sign):
    """Corner component labels: side adjacency plus the resolved diagonal."""
    parent = list(range(4))

    def find(x):
        while parent[x] != x:
            x = parent[x] = parent[parent[x]]
        return x

    def union(a, b):
        parent[find(a)] = find(b)

    for a, b in SIDES:
        if bool(corner_signs[a]) == bool(corner_signs[b]):
            union(a, b)
    if square_ambiguous(corner_signs):
        pair = DIAGONALS[0] if bool(corner_signs[0]) == bool(face_sign) \
            else DIAGONALS[1]
        union(*pair)
    return tuple(find(c) for c in range(4))


def boundary_paths(corner_signs, face_sign):
    """Boundary of the square as symbolic paths.

    Each path is a tuple of symbols starting and ending at edge vertices;
    interior symbols are face vertices.  Deterministic, and equivariant
    under the dihedral group and sign inversion.
    """
    labels = component_labels(corner_signs, face_sign)
    crossing = [s for s, (a, b) in enumerate(SIDES)
                if bool(corner_signs[a]) != bool(corner_signs[b])]
    paths = []
    used = set()
    for c in range(4):
        if sum(1 for d in range(4) if labels[d] == labels[c]) == 1:
            sa, sb = SIDES_OF_CORNER[c]
            paths.append((("e", sa), ("v", c), ("e", sb)))
            used.update((sa, sb))
    rest = [s for s in crossing if s not in used]
    if rest:
        if len(rest) != 2:
            raise AssertionError("unexpected crossing pattern")
        paths.append((("e", rest[0]), ("e", rest[1])))
    return tuple(paths)


def boundary_edge_set(corner_signs, face_sign):
    """Undirected segment set of the boundary, for comparisons."""
    out = set()
    for path in boundary_paths(corner_signs, face_sign):
        for a, b in zip(path[:-1], path[1:]):
            out.add(frozenset((a, b)))
    return frozenset(out)


# ---------------------------------------------------------------------------
# case enumeration under the dihedral group x inversion
# ---------------------------------------------------------------------------

def _dihedral_maps():
    """Corner maps of the 8 symmetries of the square."""
    maps = []
    for perm in ((0, 1), (1, 0)):
        for mx in (0, 1):
            for my in (0, 1):
                m = []
                for c in range(4):
                    xy = CORNER_XY[c]
                    xy2 = (xy[perm[0]] ^ mx, xy[perm[1]] ^ my)
                    m.append(CORNER_XY.index(xy2))
                maps.append(tuple(m))
    return tuple(maps)


DIHEDRAL = _dihedral_maps()


def mask_square_bits(corner_signs, face_sign):
    corner = tuple(bool(b) for b in corner_signs)
    fs = bool(face_sign) if square_ambiguous(corner) else False
    return corner + (fs,)


def _pack(bits):
    v = 0
    for b in bits:
        v = (v << 1) | int(bool(b))
    return v


def _apply(bits, cmap, invert):
    corner = bits[:4]
    out = [False] * 4
    for c in range(4):
        out[cmap[c]] = corner[c]
    fs = bits[4]
    if invert:
        out = [not b for b in out]
        fs = not fs
    return mask_square_bits(out, fs)


@dataclass(frozen=True)
class SquareCaseTable:
    reps: tuple
    orbit_sizes: tuple
    case_of_masked: dict
    witness_of_masked: dict   # masked -> (dihedral index, invert)


@lru_cache(maxsize=1)
def square_case_table():
    masked = set()
    for raw in range(32):
        bits = tuple((raw >> (4 - i)) & 1 for i in range(5))
        masked.add(mask_square_bits(bits[:4], bits[4]))
    canon = {}
    for cfg in masked:
        best = min(_pack(_apply(cfg, m, inv))
                   for m in DIHEDRAL for inv in (False, True))
        canon.setdefault(best, []).append(cfg)
    reps = tuple(sorted(canon))
    case_of, wit_of = {}, {}
    for ci, rep in enumerate(reps):
        rbits = tuple((rep >> (4 - i)) & 1 for i in range(5))
        rbits = mask_square_bits(rbits[:4], rbits[4])
        for inv in (False, True):
            for mi, m in enumerate(DIHEDRAL):
                img = _pack(_apply(rbits, m, inv))
                if img not in case_of:
                    case_of[img] = ci
                    wit_of[img] = (mi, inv)
    sizes = [0] * len(reps)
    for cfg in masked:
        sizes[case_of[_pack(cfg)]] += 1
    return SquareCaseTable(reps, tuple(sizes), case_of, wit_of)


def enumerate_square_cases():
    return square_case_table()


def face_case(corner_signs, face_sign):
    """Canonical 2D case id of a square configuration."""
    masked = mask_square_bits(corner_signs, face_sign)
    return square_case_table().case_of_masked[_pack(masked)]


# ---------------------------------------------------------------------------
# deduplicated grid storage and meshing
# ---------------------------------------------------------------------------

N_BOOLS_2D = 2   # corner sign, face sign
N_FLOATS_2D = 10  # bottom edge t, left edge t, 4 face vertices x (u, w)


@dataclass
class SquareGridCode:
    """Per-cell deduplicated 2D code over an (M, N) point grid."""

    bools: np.ndarray   # (M, N, 2) bool
    floats: np.ndarray  # (M, N, 10) float
    mask_b: np.ndarray  # (M, N, 2) uint8
    mask_f: np.ndarray  # (M, N, 10) uint8

    @classmethod
    def empty(cls, dims):
        m, n = dims
        return cls(np.zeros((m, n, N_BOOLS_2D), bool),
                   np.full((m, n, N_FLOATS_2D), 0.5),
                   np.zeros((m, n, N_BOOLS_2D), np.uint8),
                   np.zeros((m, n, N_FLOATS_2D), np.uint8))

    @property
    def dims(self):
        return self.bools.shape[:2]


def gather_square(code, i, j):
    """Full per-square view (4 corner signs, face sign, 4 edge t, 4 face
    vertices) of cell (i, j); out-of-range owners pad with outside/0.5."""
    m, n = code.dims

    def sign(ii, jj):
        if 0 <= ii < m and 0 <= jj < n:
            return bool(code.bools[ii, jj, 0])
        return False

    def flt(ii, jj, ch, count):
        if 0 <= ii < m and 0 <= jj < n:
            return np.asarray(code.floats[ii, jj, ch:ch + count], float)
        return np.full(count, 0.5)

    corner = tuple(sign(i + dx, j + dy) for dx, dy in CORNER_XY)
    face_sign = bool(code.bools[i, j, 1])
    edge_t = np.array([
        flt(i, j, 0, 1)[0],        # bottom
        flt(i + 1, j, 1, 1)[0],    # right  (left edge of the +x cell)
        flt(i, j + 1, 0, 1)[0],    # top
        flt(i, j, 1, 1)[0],        # left
    ])
    fv = flt(i, j, 2, 8).reshape(4, 2)
    return corner, face_sign, edge_t, fv


def symbol_position_2d(sym, edge_t, fv):
    if sym[0] == "e":
        s = sym[1]
        a, b = SIDES[s]
        pa = np.asarray(CORNER_XY[a], float)
        pb = np.asarray(CORNER_XY[b], float)
        return pa + edge_t[s] * (pb - pa)
    return np.asarray(fv[sym[1]], float)


def _owner_key_2d(i, j, sym):
    """Welding key: the owning (cell, channel) of a symbolic 2D vertex."""
    if sym[0] == "e":
        s = sym[1]
        if s == 0:
            return (i, j, "ex")
        if s == 1:
            return (i + 1, j, "ey")
        if s == 2:
            return (i, j + 1, "ex")
        return (i, j, "ey")
    return (i, j, "fv", sym[1])


def mesh_square_grid(grid2d, code, spacing=1.0, origin=(0.0, 0.0)):
    """Extract closed polylines from a 2D scalar grid plus its code.

    Segments are oriented with the inside region to their left; shared
    endpoints are welded through ownership so chains close exactly.
    Raises ValueError when code corner signs contradict the grid.
    """
    grid2d = np.asarray(grid2d, float)
    m, n = grid2d.shape
    if code.dims != (m, n):
        raise ValueError("code dims do not match grid dims")
    inside = grid2d < 0
    if not np.array_equal(code.bools[:, :, 0], inside):
        raise ValueError("code corner signs inconsistent with grid values")
    origin = np.asarray(origin, float)

    verts = {}
    vpos = []
    segments = []

    def vid(i, j, sym, pos):
        key = _owner_key_2d(i, j, sym)
        if key not in verts:
            verts[key] = len(vpos)
            vpos.append(origin + spacing * (np.array([i, j], float) + pos))
        return verts[key]

    for i in range(m - 1):
        for j in range(n - 1):
            corner, face_sign, edge_t, fv = gather_square(code, i, j)
            for path in boundary_paths(corner, face_sign):
                pts = [symbol_position_2d(s, edge_t, fv) for s in path]
                ids = [vid(i, j, s, p) for s, p in zip(path, pts)]
                for k in range(len(path) - 1):
                    a, b = ids[k], ids[k + 1]
                    pa, pb = pts[k], pts[k + 1]
                    ref = _segment_inside_ref(path[k], path[k + 1], corner)
                    d = pb - pa
                    left = np.array([-d[1], d[0]])
                    toward = np.asarray(CORNER_XY[ref], float) - 0.5 * (pa + pb)
                    if np.dot(left, toward) >= 0:
                        segments.append((a, b))
                    else:
                        segments.append((b, a))

    nxt = {}
    for a, b in segments:
        if a in nxt:
            raise AssertionError("non-manifold 2D boundary")
        nxt[a] = b
    polylines = []
    seen = set()
    for start in sorted(nxt):
        if start in seen:
            continue
        chain = [start]
        seen.add(start)
        cur = nxt[start]
        while cur != start:
            chain.append(cur)
            seen.add(cur)
            cur = nxt[cur]
        polylines.append(np.asarray([vpos[v] for v in chain]))
    return polylines


def _segment_inside_ref(sym_a, sym_b, corner_signs):
    """An inside corner adjacent to the segment (orientation reference)."""
    for sym in (sym_a, sym_b):
        if sym[0] == "e":
            a, b = SIDES[sym[1]]
            return a if corner_signs[a] else b
    raise AssertionError("segment without an edge-vertex endpoint")
