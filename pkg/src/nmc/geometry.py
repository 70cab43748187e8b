"""Batched computational-geometry kernels shared by the tessellation
verifier, the data-preparation optimizer and the evaluation metrics."""

from __future__ import annotations

import numpy as np

EPS = 1e-12


def closest_on_triangles(points, tris):
    """Closest points on triangles for every (point, triangle) pair.

    points: (n, 3); tris: (m, 3, 3).
    Returns (dist (n, m), bary (n, m, 3)); closest = bary @ triangle.
    """
    p = np.asarray(points, float)[:, None, :]
    a = np.asarray(tris, float)[None, :, 0, :]
    b = np.asarray(tris, float)[None, :, 1, :]
    c = np.asarray(tris, float)[None, :, 2, :]
    ab = b - a
    ac = c - a
    ap = p - a

    d1 = np.sum(ab * ap, -1)
    d2 = np.sum(ac * ap, -1)
    bp = p - b
    d3 = np.sum(ab * bp, -1)
    d4 = np.sum(ac * bp, -1)
    cp = p - c
    d5 = np.sum(ab * cp, -1)
    d6 = np.sum(ac * cp, -1)

    vc = d1 * d4 - d3 * d2
    vb = d5 * d2 - d1 * d6
    va = d3 * d6 - d5 * d4

    u = np.zeros(d1.shape)
    v = np.zeros(d1.shape)

    denom_face = va + vb + vc
    safe = np.where(np.abs(denom_face) < EPS, 1.0, denom_face)
    u_face = vb / safe
    v_face = vc / safe
    u[:] = u_face
    v[:] = v_face

    # edge BC region
    t_bc = (d4 - d3) / np.where(np.abs((d4 - d3) + (d5 - d6)) < EPS, 1.0,
                                (d4 - d3) + (d5 - d6))
    on_bc = (va <= 0) & (d4 - d3 >= 0) & (d5 - d6 >= 0)
    u = np.where(on_bc, 1.0 - t_bc, u)
    v = np.where(on_bc, t_bc, v)
    # edge AC region
    t_ac = d2 / np.where(np.abs(d2 - d6) < EPS, 1.0, d2 - d6)
    on_ac = (vb <= 0) & (d2 >= 0) & (d6 <= 0)
    u = np.where(on_ac, 0.0, u)
    v = np.where(on_ac, t_ac, v)
    # edge AB region
    t_ab = d1 / np.where(np.abs(d1 - d3) < EPS, 1.0, d1 - d3)
    on_ab = (vc <= 0) & (d1 >= 0) & (d3 <= 0)
    u = np.where(on_ab, t_ab, u)
    v = np.where(on_ab, 0.0, v)
    # vertex regions
    at_a = (d1 <= 0) & (d2 <= 0)
    at_b = (d3 >= 0) & (d4 <= d3)
    at_c = (d6 >= 0) & (d5 <= d6)
    u = np.where(at_c, 0.0, np.where(at_b, 1.0, np.where(at_a, 0.0, u)))
    v = np.where(at_c, 1.0, np.where(at_b, 0.0, np.where(at_a, 0.0, v)))

    u = np.clip(u, 0.0, 1.0)
    v = np.clip(v, 0.0, 1.0)
    over = np.clip(u + v - 1.0, 0.0, None)
    u = u - over * u / np.where(u + v < EPS, 1.0, u + v)
    v = v - over * v / np.where(u + v < EPS, 1.0, u + v)

    w0 = 1.0 - u - v
    closest = w0[..., None] * a + u[..., None] * b + v[..., None] * c
    dist = np.linalg.norm(p - closest, axis=-1)
    bary = np.stack([w0, u, v], axis=-1)
    return dist, bary


def point_triangle_distance(points, tris):
    return closest_on_triangles(points, tris)[0]


def closest_on_segments(points, segs):
    """points: (n, d); segs: (m, 2, d) -> (dist (n, m), t (n, m))."""
    p = np.asarray(points, float)[:, None, :]
    a = np.asarray(segs, float)[None, :, 0, :]
    b = np.asarray(segs, float)[None, :, 1, :]
    d = b - a
    L2 = np.sum(d * d, -1)
    t = np.sum((p - a) * d, -1) / np.where(L2 < EPS, 1.0, L2)
    t = np.clip(t, 0.0, 1.0)
    q = a + t[..., None] * d
    return np.linalg.norm(p - q, axis=-1), t


def segments_cross_triangles(p0, p1, tris, eps=1e-10):
    """Inclusive segment-triangle intersection matrix (n, m)."""
    p0 = np.asarray(p0, float)[:, None, :]
    p1 = np.asarray(p1, float)[:, None, :]
    a = np.asarray(tris, float)[None, :, 0, :]
    b = np.asarray(tris, float)[None, :, 1, :]
    c = np.asarray(tris, float)[None, :, 2, :]
    d = p1 - p0
    e1 = b - a
    e2 = c - a
    h = np.cross(d, e2)
    det = np.sum(e1 * h, -1)
    ok = np.abs(det) > eps
    inv = 1.0 / np.where(ok, det, 1.0)
    s = p0 - a
    u = np.sum(s * h, -1) * inv
    q = np.cross(s, e1)
    v = np.sum(d * q, -1) * inv
    t = np.sum(e2 * q, -1) * inv
    hit = (ok & (u >= -eps) & (v >= -eps) & (u + v <= 1 + eps)
           & (t >= -eps) & (t <= 1 + eps))
    return hit


def segment_crossing_counts(p0, p1, tris, eps=1e-10):
    """Number of triangles each segment crosses (inclusive boundaries)."""
    return segments_cross_triangles(p0, p1, tris, eps).sum(axis=1)


def triangle_areas(tris):
    t = np.asarray(tris, float)
    return 0.5 * np.linalg.norm(
        np.cross(t[:, 1] - t[:, 0], t[:, 2] - t[:, 0]), axis=-1)


def triangle_normals(tris):
    t = np.asarray(tris, float)
    n = np.cross(t[:, 1] - t[:, 0], t[:, 2] - t[:, 0])
    ln = np.linalg.norm(n, axis=-1, keepdims=True)
    return n / np.where(ln < EPS, 1.0, ln)


# ---------------------------------------------------------------------------
# triangle-triangle intersection (for self-intersection statistics)
# ---------------------------------------------------------------------------

def _coplanar_overlap(t1, t2, eps):
    n = np.cross(t1[1] - t1[0], t1[2] - t1[0])
    axis = int(np.argmax(np.abs(n)))
    keep = [i for i in range(3) if i != axis]
    a = t1[:, keep]
    b = t2[:, keep]

    def seg_int(p, q, r, s):
        d1 = q - p
        d2 = s - r
        denom = d1[0] * d2[1] - d1[1] * d2[0]
        if abs(denom) < eps:
            return False
        t = ((r[0] - p[0]) * d2[1] - (r[1] - p[1]) * d2[0]) / denom
        u = ((r[0] - p[0]) * d1[1] - (r[1] - p[1]) * d1[0]) / denom
        return -eps <= t <= 1 + eps and -eps <= u <= 1 + eps

    for i in range(3):
        for j in range(3):
            if seg_int(a[i], a[(i + 1) % 3], b[j], b[(j + 1) % 3]):
                return True

    def contains(tri, p):
        s = 0
        for i in range(3):
            e = tri[(i + 1) % 3] - tri[i]
            v = p - tri[i]
            cr = e[0] * v[1] - e[1] * v[0]
            if abs(cr) < eps:
                continue
            if s == 0:
                s = 1 if cr > 0 else -1
            elif (cr > 0) != (s > 0):
                return False
        return True

    return contains(a, b.mean(0)) or contains(b, a.mean(0))


def triangles_intersect(t1, t2, eps=1e-10):
    """Exact-per-tolerance intersection test of two triangles."""
    t1 = np.asarray(t1, float)
    t2 = np.asarray(t2, float)
    n2 = np.cross(t2[1] - t2[0], t2[2] - t2[0])
    d1 = (t1 - t2[0]) @ n2
    scale2 = np.linalg.norm(n2) + EPS
    if np.all(d1 > eps * scale2) or np.all(d1 < -eps * scale2):
        return False
    n1 = np.cross(t1[1] - t1[0], t1[2] - t1[0])
    d2 = (t2 - t1[0]) @ n1
    scale1 = np.linalg.norm(n1) + EPS
    if np.all(d2 > eps * scale1) or np.all(d2 < -eps * scale1):
        return False
    if np.all(np.abs(d1) <= eps * scale2) and np.all(np.abs(d2) <= eps * scale1):
        return _coplanar_overlap(t1, t2, eps)
    segs0 = np.vstack([t1, t2])
    segs1 = np.vstack([t1[[1, 2, 0]], t2[[1, 2, 0]]])
    hits = segments_cross_triangles(
        segs0, segs1, np.stack([t2, t1]), eps=eps)
    return bool(hits[:3, 0].any() or hits[3:, 1].any())


# ---------------------------------------------------------------------------
# rasterized separation check inside a unit cube
# ---------------------------------------------------------------------------

def unit_cube_region_labels(tris, n=12):
    """Connected components of an n^3 voxelization of the unit cube whose
    6-neighbour steps are blocked by the given triangles.

    Returns (labels (n, n, n), corner_label(corner_index) helper array of
    shape (8,)).  Even n keeps default-position geometry (planes at 0.5)
    strictly between voxel centers.
    """
    from scipy.sparse import coo_matrix
    from scipy.sparse.csgraph import connected_components

    tris = np.asarray(tris, float)
    centers = (np.arange(n) + 0.5) / n
    xs, ys, zs = np.meshgrid(centers, centers, centers, indexing="ij")
    pts = np.stack([xs, ys, zs], axis=-1)

    def idx(i, j, k):
        return (i * n + j) * n + k

    p0s, p1s, edges = [], [], []
    for axis in range(3):
        sl0 = [slice(None)] * 3
        sl1 = [slice(None)] * 3
        sl0[axis] = slice(0, n - 1)
        sl1[axis] = slice(1, n)
        a = pts[tuple(sl0)].reshape(-1, 3)
        b = pts[tuple(sl1)].reshape(-1, 3)
        p0s.append(a)
        p1s.append(b)
        ii, jj, kk = np.meshgrid(*[np.arange(n - 1) if ax == axis
                                   else np.arange(n) for ax in range(3)],
                                 indexing="ij")
        lo = [ii, jj, kk]
        hi = [ii.copy(), jj.copy(), kk.copy()]
        hi[axis] = hi[axis] + 1
        edges.append((idx(lo[0], lo[1], lo[2]).ravel(),
                      idx(hi[0], hi[1], hi[2]).ravel()))
    p0 = np.vstack(p0s)
    p1 = np.vstack(p1s)
    if len(tris):
        blocked = segments_cross_triangles(p0, p1, tris).any(axis=1)
    else:
        blocked = np.zeros(len(p0), bool)
    src = np.concatenate([e[0] for e in edges])
    dst = np.concatenate([e[1] for e in edges])
    src, dst = src[~blocked], dst[~blocked]
    g = coo_matrix((np.ones(len(src)), (src, dst)), shape=(n ** 3, n ** 3))
    _, labels = connected_components(g, directed=False)
    labels = labels.reshape(n, n, n)
    corner_labels = np.empty(8, int)
    for c in range(8):
        i = (n - 1) if (c & 1) else 0
        j = (n - 1) if (c >> 1) & 1 else 0
        k = (n - 1) if (c >> 2) & 1 else 0
        corner_labels[c] = labels[i, j, k]
    return labels, corner_labels
