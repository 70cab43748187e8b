"""Triangle templates for the unique topology cases, in two styles.

Templates are shipped as human-readable data files (one record per case,
symbolic vertex names over the 44-vertex vocabulary) and validated by
machine checks: raster separation at default and random vertex positions,
combinatorial manifoldness, vocabulary membership and agreement of every
face boundary with the 2D rule of square2d, which is what guarantees that
adjacent cubes tessellate their shared face identically.
"""

from __future__ import annotations

import importlib.resources
from dataclasses import dataclass, field

import numpy as np

from . import cubeframe as cf
from . import geometry, square2d, topology

STYLE_NMC = "nmc"
STYLE_NMC_LITE = "nmc-lite"
STYLES = (STYLE_NMC, STYLE_NMC_LITE)

_TEMPLATE_FILES = {STYLE_NMC: "nmc.txt", STYLE_NMC_LITE: "nmc_lite.txt"}


@dataclass
class TemplateTable:
    """Per-case oriented symbolic triangles for one tessellation style."""

    style: str
    triangles: dict = field(default_factory=dict)  # case id -> tuple of triples

    def case_triangles(self, case_id):
        try:
            return self.triangles[case_id]
        except KeyError:
            raise KeyError(f"template table has no case {case_id}") from None


def load_templates(style, path=None):
    """Load a style's template table from its data file.

    Raises ValueError on a missing case, an unknown style or an unknown
    vertex symbol.  Case 0 maps to the empty triangle list.
    """
    if style not in STYLES:
        raise ValueError(f"unknown template style {style!r}")
    if path is None:
        res = importlib.resources.files("nmc") / "templates" / \
            _TEMPLATE_FILES[style]
        text = res.read_text()
    else:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    table = TemplateTable(style=style)
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        toks = line.split()
        case_id = int(toks[0])
        rest = toks[1:]
        if len(rest) % 3:
            raise ValueError(f"case {case_id}: triangle list not a "
                             f"multiple of three symbols")
        tris = tuple(
            (cf.symbol_from_text(rest[i]), cf.symbol_from_text(rest[i + 1]),
             cf.symbol_from_text(rest[i + 2]))
            for i in range(0, len(rest), 3))
        if case_id in table.triangles:
            raise ValueError(f"duplicate record for case {case_id}")
        table.triangles[case_id] = tris
    n_cases = topology.case_table().n_cases
    missing = [c for c in range(n_cases) if c not in table.triangles]
    if missing:
        raise ValueError(f"template file is missing cases {missing}")
    if table.triangles[0]:
        raise ValueError("case 0 must have an empty triangle list")
    return table


def save_templates(table, path):
    tab = topology.case_table()
    lines = [f"# tessellation templates, style {table.style}",
             "# record: case_id, then vertex symbol triples"]
    for ci in sorted(table.triangles):
        bits = topology.unpack_bools(tab.reps[ci])
        corner = "".join(str(int(b)) for b in bits[:8])
        face = "".join(str(int(b)) for b in bits[8:14])
        lines.append(f"# case {ci}: corners {corner} faces {face} "
                     f"tunnel {int(bits[14])}")
        syms = " ".join(cf.symbol_to_text(s) for tri in table.triangles[ci]
                        for s in tri)
        lines.append(f"{ci} {syms}".rstrip())
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")


# ---------------------------------------------------------------------------
# positions and instantiation
# ---------------------------------------------------------------------------

def anchored_default_floats():
    """84 floats placing each vertex near its anchor: edge vertices at
    midpoints, face/interior vertices midway between their corner and the
    face/cube center.  Unlike all-0.5 these keep the two face vertices of
    an ambiguous face distinct."""
    f = np.empty(84)
    f[:12] = 0.5
    for face in range(6):
        u, w = cf.FACE_UW[face]
        for c in cf.FACE_CORNERS[face]:
            slot = cf.face_of_corner_slot(face, c)
            base = 12 + 8 * face + 2 * slot
            xyz = cf.CORNER_COORDS[c]
            f[base] = 0.25 + 0.5 * xyz[u]
            f[base + 1] = 0.25 + 0.5 * xyz[w]
    for c in range(8):
        base = 60 + 3 * c
        for a in range(3):
            f[base + a] = 0.25 + 0.5 * cf.CORNER_COORDS[c][a]
    return f


def instantiate_symbolic(table, case_id, witness):
    """Symbolic triangles of a configuration, witness-mapped and oriented.

    The witness (Transform, invert) maps the canonical representative onto
    the configuration; a mirrored transform or an inversion flips triangle
    orientation so normals keep pointing from inside to outside.
    """
    transform, invert = witness
    flip = (transform.det < 0) != bool(invert)
    out = []
    for tri in table.case_triangles(case_id):
        mapped = tuple(transform.apply_symbol(s) for s in tri)
        out.append((mapped[0], mapped[2], mapped[1]) if flip else mapped)
    return tuple(out)


def symbolic_to_local(tris, floats, validate=False):
    """Resolve symbolic triangles to cube-local coordinates."""
    floats = np.asarray(floats, float)
    if validate and (np.any(floats < -1e-9) or np.any(floats > 1 + 1e-9)):
        raise ValueError("cube code floats out of [0, 1]")
    return np.asarray([
        [cf.symbol_position(s, floats) for s in tri] for tri in tris])


def instantiate(table, case_id, witness, floats, origin=(0, 0, 0),
                spacing=1.0, validate=True):
    """World-space triangles of one cube.  floats is the 84-float cube
    vector in the cube's own frame (the witness only remaps symbols)."""
    syms = instantiate_symbolic(table, case_id, witness)
    if not syms:
        return np.zeros((0, 3, 3))
    local = symbolic_to_local(syms, floats, validate=validate)
    return np.asarray(origin, float) + spacing * local


# ---------------------------------------------------------------------------
# verification
# ---------------------------------------------------------------------------

@dataclass
class CaseReport:
    case_id: int
    triangles_only: bool = True
    separation: bool = True
    manifold: bool = True
    uses_valid_vertices: bool = True
    face_boundary_match: bool = True

    @property
    def ok(self):
        return (self.triangles_only and self.separation and self.manifold
                and self.uses_valid_vertices and self.face_boundary_match)


@dataclass
class VerificationReport:
    style: str
    cases: list
    shared_face_consistent: bool = True

    @property
    def ok(self):
        return self.shared_face_consistent and all(c.ok for c in self.cases)


def symbols_on_face(sym, face):
    """Whether a vocabulary symbol lies in the plane of a cube face."""
    kind = sym[0]
    if kind == "f":
        return sym[1] == face
    if kind == "e":
        a, b = cf.EDGES[sym[1]]
        fc = cf.FACE_CORNERS[face]
        return a in fc and b in fc
    return False


def face_boundary_of_template(tris, face):
    """Template segments lying in a face's plane (as 2D rule symbols)."""
    segs = set()
    for tri in tris:
        for i in range(3):
            a, b = tri[i], tri[(i + 1) % 3]
            if symbols_on_face(a, face) and symbols_on_face(b, face):
                segs.add(frozenset((_to_2d(a, face), _to_2d(b, face))))
    return frozenset(segs)


def _to_2d(sym, face):
    if sym[0] == "f":
        c = sym[2]
        u, w = cf.FACE_UW[face]
        s2 = cf.CORNER_COORDS[c][u] + 2 * cf.CORNER_COORDS[c][w]
        return ("v", s2)
    a, b = cf.EDGES[sym[1]]
    u, w = cf.FACE_UW[face]

    def c2(c):
        return cf.CORNER_COORDS[c][u] + 2 * cf.CORNER_COORDS[c][w]

    pair = tuple(sorted((c2(a), c2(b))))
    return ("e", square2d.SIDES.index(pair))


def face_config(bools, face):
    """(2D corner signs, 2D face sign) of a cube face configuration."""
    corner, fsigns, _ = topology.split_bools(bools)
    u, w = cf.FACE_UW[face]
    signs2 = [False] * 4
    for c in cf.FACE_CORNERS[face]:
        s2 = cf.CORNER_COORDS[c][u] + 2 * cf.CORNER_COORDS[c][w]
        signs2[s2] = corner[c]
    return tuple(signs2), fsigns[face]


def expected_face_boundary(bools, face):
    signs2, fsign = face_config(bools, face)
    return square2d.boundary_edge_set(signs2, fsign)


def _manifold_check(tris):
    """Combinatorial manifoldness of a symbolic triangle set.

    Every edge may border at most two triangles, consistently oriented,
    and each vertex link must be a single fan (disc or half-disc)."""
    if not tris:
        return True
    edge_use = {}
    for t_idx, tri in enumerate(tris):
        if len(set(tri)) != 3:
            return False
        for i in range(3):
            a, b = tri[i], tri[(i + 1) % 3]
            edge_use.setdefault(frozenset((a, b)), []).append((t_idx, (a, b)))
    for uses in edge_use.values():
        if len(uses) > 2:
            return False
        if len(uses) == 2 and uses[0][1] == uses[1][1]:
            return False  # same direction twice: inconsistent orientation
    # vertex link: incident triangles connected through shared edges
    vert_tris = {}
    for t_idx, tri in enumerate(tris):
        for s in tri:
            vert_tris.setdefault(s, []).append(t_idx)
    for s, tlist in vert_tris.items():
        if len(tlist) == 1:
            continue
        adj = {t: set() for t in tlist}
        for t in tlist:
            tri = tris[t]
            for i in range(3):
                a, b = tri[i], tri[(i + 1) % 3]
                if s in (a, b):
                    for (t2, _) in edge_use[frozenset((a, b))]:
                        if t2 != t:
                            adj[t].add(t2)
        seen = {tlist[0]}
        stack = [tlist[0]]
        while stack:
            for t2 in adj[stack.pop()]:
                if t2 not in seen:
                    seen.add(t2)
                    stack.append(t2)
        if len(seen) != len(tlist):
            return False
    return True


def _separation_ok(local_tris, corner_signs, face_signs, raster_n,
                   check_same_sign):
    labels, corner_labels = geometry.unit_cube_region_labels(
        local_tris, n=raster_n)
    for a in range(8):
        for b in range(a + 1, 8):
            if bool(corner_signs[a]) != bool(corner_signs[b]):
                if corner_labels[a] == corner_labels[b]:
                    return False
    if check_same_sign:
        comp = topology.surface_component_labels(corner_signs, face_signs)
        for a in range(8):
            for b in range(a + 1, 8):
                if comp[a] == comp[b] and corner_labels[a] != corner_labels[b]:
                    return False
    return True


def verify_template(table, case_id, n_random=100, raster_n=12, seed=0):
    """Machine checks for one case; failures land in the report entry."""
    tab = topology.case_table()
    bools = topology.unpack_bools(tab.reps[case_id])
    corner, fsigns, _ = topology.split_bools(bools)
    tris = table.case_triangles(case_id)
    rep = CaseReport(case_id=case_id)

    rep.uses_valid_vertices = all(
        s in cf.VOCAB_SET for tri in tris for s in tri)
    rep.manifold = _manifold_check(tris)

    for face in range(6):
        if face_boundary_of_template(tris, face) != \
                expected_face_boundary(bools, face):
            rep.face_boundary_match = False

    defaults = anchored_default_floats()
    local = symbolic_to_local(tris, defaults) if tris else np.zeros((0, 3, 3))
    if not _separation_ok(local, corner, fsigns, raster_n,
                          check_same_sign=True):
        rep.separation = False
    rng = np.random.default_rng(seed + 1000 * case_id)
    syms_flat = sorted({s for tri in tris for s in tri})
    for _ in range(n_random if tris else 0):
        floats = defaults.copy()
        for s in syms_flat:
            off, ln = cf.float_slice(s)
            floats[off:off + ln] = rng.uniform(0.0, 1.0, ln)
        local = symbolic_to_local(tris, floats)
        if not _separation_ok(local, corner, fsigns, raster_n,
                              check_same_sign=False):
            rep.separation = False
            break
    return rep


def verify_table(table, n_random=100, raster_n=12, seed=0):
    """Verify every case plus cross-case shared-face consistency.

    The cross-case check asserts a single boundary per 2D face
    configuration across all case templates, which (together with the 2D
    rule's equivariance) makes adjacent cubes agree on shared faces."""
    tab = topology.case_table()
    cases = [verify_template(table, ci, n_random=n_random,
                             raster_n=raster_n, seed=seed)
             for ci in range(tab.n_cases)]
    by_config = {}
    consistent = True
    for ci in range(tab.n_cases):
        bools = topology.unpack_bools(tab.reps[ci])
        tris = table.case_triangles(ci)
        for face in range(6):
            key = square2d.mask_square_bits(*face_config(bools, face))
            got = face_boundary_of_template(tris, face)
            if key in by_config and by_config[key] != got:
                consistent = False
            by_config[key] = got
    return VerificationReport(style=table.style, cases=cases,
                              shared_face_consistent=consistent)
