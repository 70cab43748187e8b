"""Cube topology: irrelevance masking, surface connectivity, exhaustive
case enumeration under the full symmetry group, and O(1) classification.

A cube configuration is 15 booleans: 8 corner signs (True = inside), 6 face
signs (True = the inside diagonal pair of an ambiguous face is connected)
and one tunnel flag.  Packed integers put corner 0 at the highest bit and
the tunnel flag at bit 0.

A face sign matters only on an ambiguous face; the tunnel flag matters only
when some sign forms exactly two connected components on the cube surface
(those are the configurations where an interior passage is representable).
Masking forces the irrelevant bits to zero so equal meshes compare equal.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import cubeframe as cf

N_BOOLS = 15


def pack_bools(bools):
    """15 booleans -> packed int (corner 0 highest bit, tunnel lowest)."""
    v = 0
    for b in bools:
        v = (v << 1) | int(bool(b))
    return v


def unpack_bools(value):
    return tuple((value >> (N_BOOLS - 1 - i)) & 1 for i in range(N_BOOLS))


def split_bools(bools):
    bools = tuple(bool(b) for b in bools)
    return bools[:8], bools[8:14], bools[14]


def surface_component_labels(corner_signs, face_signs):
    """Component label per corner on the face-resolved surface graph.

    Corners of equal sign joined along cube edges are connected; on an
    ambiguous face the face sign additionally connects one diagonal pair
    (True connects the inside pair, False the outside pair).
    """
    parent = list(range(8))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb

    for a, b in cf.EDGES:
        if bool(corner_signs[a]) == bool(corner_signs[b]):
            union(a, b)
    for f in range(6):
        if cf.face_ambiguous(corner_signs, f):
            cyc = cf.FACE_CYCLES[f]
            want = bool(face_signs[f])
            if bool(corner_signs[cyc[0]]) == want:
                union(cyc[0], cyc[2])
            else:
                union(cyc[1], cyc[3])
    return tuple(find(c) for c in range(8))


def count_surface_components(corner_signs, face_signs):
    """(inside component count, outside component count)."""
    labels = surface_component_labels(corner_signs, face_signs)
    n_in = len({labels[c] for c in range(8) if corner_signs[c]})
    n_out = len({labels[c] for c in range(8) if not corner_signs[c]})
    return n_in, n_out


def tunnel_eligible(corner_signs, face_signs):
    """A tunnel is representable iff some sign has exactly two components."""
    n_in, n_out = count_surface_components(corner_signs, face_signs)
    return n_in == 2 or n_out == 2


def mask_irrelevant_bits(bools):
    """Force irrelevant bits to zero.

    Returns (masked bools, relevance mask), both 15-tuples.  Corner signs
    are always relevant; a face sign is relevant only on an ambiguous face;
    the tunnel flag only on tunnel-eligible configurations.
    """
    corner, face, tun = split_bools(bools)
    amb = tuple(cf.face_ambiguous(corner, f) for f in range(6))
    face_m = tuple(face[f] if amb[f] else False for f in range(6))
    elig = tunnel_eligible(corner, face_m)
    masked = corner + face_m + (tun if elig else False,)
    relevance = (True,) * 8 + amb + (elig,)
    return masked, relevance


# ---------------------------------------------------------------------------
# packed-int tables (vectorized over all 2^15 raw configurations)
# ---------------------------------------------------------------------------

@lru_cache(maxsize=1)
def _bit_tables():
    """Per corner pattern: ambiguity bits; per (pattern, masked faces):
    tunnel eligibility.  Face bit f sits at packed position 6 - f."""
    amb_bits = np.zeros(256, np.int32)
    elig = np.zeros((256, 64), bool)
    for cpat in range(256):
        corner = tuple((cpat >> (7 - c)) & 1 for c in range(8))
        amb = [cf.face_ambiguous(corner, f) for f in range(6)]
        ambv = 0
        for f in range(6):
            if amb[f]:
                ambv |= 1 << (5 - f)
        amb_bits[cpat] = ambv
        for fpat in range(64):
            if fpat & ~ambv:
                continue
            face = tuple((fpat >> (5 - f)) & 1 for f in range(6))
            elig[cpat, fpat] = tunnel_eligible(corner, face)
    return amb_bits, elig


@lru_cache(maxsize=1)
def _masked_of_raw():
    amb_bits, elig = _bit_tables()
    raw = np.arange(1 << N_BOOLS, dtype=np.int64)
    cpat = raw >> 7
    fpat = (raw >> 1) & 63
    tun = raw & 1
    fmask = fpat & amb_bits[cpat]
    tmask = tun * elig[cpat, fmask]
    return ((cpat << 7) | (fmask << 1) | tmask).astype(np.int64)


@lru_cache(maxsize=1)
def _group_tables():
    """Corner- and face-pattern permutation tables for the 48 transforms."""
    cpt = np.zeros((48, 256), np.int64)
    fpt = np.zeros((48, 64), np.int64)
    for ti, t in enumerate(cf.TRANSFORMS):
        for cpat in range(256):
            out = 0
            for c in range(8):
                if (cpat >> (7 - c)) & 1:
                    out |= 1 << (7 - t.corner_map[c])
            cpt[ti, cpat] = out
        for fpat in range(64):
            out = 0
            for f in range(6):
                if (fpat >> (5 - f)) & 1:
                    out |= 1 << (5 - t.face_map[f])
            fpt[ti, fpat] = out
    return cpt, fpt


def transform_packed(values, t_idx, invert):
    """Apply group element (transform index, inversion flag) to packed
    masked configurations and re-mask.  Vectorized."""
    amb_bits, elig = _bit_tables()
    cpt, fpt = _group_tables()
    values = np.asarray(values, np.int64)
    cpat = cpt[t_idx, values >> 7]
    fpat = fpt[t_idx, (values >> 1) & 63]
    tun = values & 1
    if invert:
        cpat = cpat ^ 255
        fpat = fpat ^ 63
    fpat = fpat & amb_bits[cpat]
    tun = tun * elig[cpat, fpat]
    return (cpat << 7) | (fpat << 1) | tun


def apply_group_element(bools, transform, invert):
    """Group action on a 15-bool tuple (transform then optional inversion)."""
    corner, face, tun = split_bools(bools)
    nc = [False] * 8
    for c in range(8):
        nc[transform.corner_map[c]] = corner[c]
    nf = [False] * 6
    for f in range(6):
        nf[transform.face_map[f]] = face[f]
    if invert:
        nc = [not b for b in nc]
        nf = [not b for b in nf]
    return tuple(nc) + tuple(nf) + (tun,)


# ---------------------------------------------------------------------------
# case table
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CaseTable:
    """Unique topology cases under the 96-element group.

    reps: canonical packed configs, ascending (Case 0 is all-outside).
    orbit_sizes: distinct masked configurations per case.
    tunnel_relevant: whether the case's configurations are tunnel-eligible.
    case_of_masked / witness_of_masked: arrays over packed ints; the witness
    (transform index, inversion flag) maps the canonical rep onto the
    configuration.
    """

    reps: tuple
    orbit_sizes: tuple
    tunnel_relevant: tuple
    case_of_masked: np.ndarray
    witness_t: np.ndarray
    witness_inv: np.ndarray

    @property
    def n_cases(self):
        return len(self.reps)

    @property
    def n_valid_configs(self):
        return int(sum(self.orbit_sizes))


@lru_cache(maxsize=1)
def case_table():
    """Enumerate all 2^15 configurations and canonicalize.  Cached."""
    masked_all = _masked_of_raw()
    masked = np.unique(masked_all)
    best = masked.copy()
    for inv in (False, True):
        for ti in range(48):
            best = np.minimum(best, transform_packed(masked, ti, inv))
    reps = np.unique(best)

    case_of = np.full(1 << N_BOOLS, -1, np.int16)
    wit_t = np.full(1 << N_BOOLS, -1, np.int8)
    wit_inv = np.zeros(1 << N_BOOLS, np.int8)
    # expand each rep through the group; first writer wins so witnesses are
    # deterministic and prefer non-inverted transforms
    for ci, rep in enumerate(reps):
        for inv in (0, 1):
            for ti in range(48):
                img = int(transform_packed(np.asarray([rep]), ti, inv)[0])
                if case_of[img] < 0:
                    case_of[img] = ci
                    wit_t[img] = ti
                    wit_inv[img] = inv

    sizes = np.zeros(len(reps), np.int64)
    for m in masked:
        sizes[case_of[m]] += 1
    tun_rel = []
    for rep in reps:
        corner, face, _ = split_bools(unpack_bools(int(rep)))
        tun_rel.append(tunnel_eligible(corner, face))
    return CaseTable(
        reps=tuple(int(r) for r in reps),
        orbit_sizes=tuple(int(s) for s in sizes),
        tunnel_relevant=tuple(tun_rel),
        case_of_masked=case_of,
        witness_t=wit_t,
        witness_inv=wit_inv,
    )


def enumerate_cases():
    """The unique-case table (37 cases for this representation)."""
    return case_table()


class InvalidTunnelError(ValueError):
    pass


def classify(bools, strict=True):
    """(case id, witness) for a configuration.

    The witness (Transform, invert) maps the canonical representative onto
    the masked input.  With strict=True a set tunnel flag on an ineligible
    configuration raises InvalidTunnelError; irrelevant face signs are
    masked silently either way.
    """
    masked, relevance = mask_irrelevant_bits(bools)
    if strict and bools[14] and not relevance[14]:
        raise InvalidTunnelError(
            "tunnel flag set on a configuration that cannot form a tunnel")
    table = case_table()
    code = pack_bools(masked)
    ci = int(table.case_of_masked[code])
    t = cf.TRANSFORMS[int(table.witness_t[code])]
    return ci, (t, bool(table.witness_inv[code]))


def classify_packed(codes):
    """Vectorized classify on packed raw ints (masks, never raises).

    Returns (case ids, witness transform indices, witness inversion flags).
    """
    table = case_table()
    masked = _masked_of_raw()[np.asarray(codes, np.int64)]
    return (table.case_of_masked[masked].astype(np.int64),
            table.witness_t[masked].astype(np.int64),
            table.witness_inv[masked].astype(np.int64))


def repair_bools(bools):
    """Clear invalid tunnel bits and irrelevant face signs (idempotent)."""
    masked, _ = mask_irrelevant_bits(bools)
    return masked


def corner_class_count(use_mirror):
    """Corner-sign-only classes under rotation(+mirror)+inversion."""
    ts = cf.TRANSFORMS if use_mirror else cf.ROTATIONS
    cpt, _ = _group_tables()
    pats = np.arange(256, dtype=np.int64)
    best = pats.copy()
    for t in ts:
        img = cpt[t.index, pats]
        best = np.minimum(best, img)
        best = np.minimum(best, img ^ 255)
    return len(np.unique(best))


def case_table_text():
    """Deterministic text dump: case id, representative bits, orbit size,
    tunnel-eligible flag.  Used by the `tables` CLI and golden tests."""
    table = case_table()
    lines = ["# case_id corner_bits face_bits tunnel orbit_size tunnel_eligible"]
    for ci, rep in enumerate(table.reps):
        bits = unpack_bools(rep)
        corner = "".join(str(int(b)) for b in bits[:8])
        face = "".join(str(int(b)) for b in bits[8:14])
        lines.append(f"{ci} {corner} {face} {int(bits[14])} "
                     f"{table.orbit_sizes[ci]} {int(table.tunnel_relevant[ci])}")
    return "\n".join(lines) + "\n"
