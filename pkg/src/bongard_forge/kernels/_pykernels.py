"""Pure numpy implementations of the hot kernels.

These mirror ``_ckernels.pyx`` operation for operation (same distance formula,
same evaluation order) so both backends return identical results.
"""

import math

import numpy as np

_PIECE = 8.0  # px; candidate-window granularity for long segments
_CHUNK = 256


def _seg_d2(px, py, ax, ay, dx, dy, l2):
    """Squared distance from points to segments, broadcasting."""
    with np.errstate(invalid="ignore", divide="ignore"):
        t = ((px - ax) * dx + (py - ay) * dy) / l2
    t = np.where(l2 > 0.0, t, 0.0)
    t = np.minimum(np.maximum(t, 0.0), 1.0)
    qx = ax + t * dx - px
    qy = ay + t * dy - py
    return qx * qx + qy * qy


def raster_capsules(segs, width, height, ss, half_width):
    segs = np.ascontiguousarray(segs, dtype=np.float64).reshape(-1, 4)
    H, W = height * ss, width * ss
    mask = np.zeros((H, W), dtype=bool)
    hw = float(half_width)
    hw2 = hw * hw
    if len(segs):
        ax, ay, bx, by = segs.T
        dx = bx - ax
        dy = by - ay
        length = np.sqrt(dx * dx + dy * dy)
        n = np.maximum(1, np.ceil(length / _PIECE)).astype(np.int64)
        owner = np.repeat(np.arange(len(segs)), n)
        k = np.arange(owner.size) - np.repeat(np.cumsum(n) - n, n)
        t0 = k / n[owner]
        t1 = (k + 1) / n[owner]
        x0 = ax[owner] + t0 * dx[owner]
        x1 = ax[owner] + t1 * dx[owner]
        y0 = ay[owner] + t0 * dy[owner]
        y1 = ay[owner] + t1 * dy[owner]
        i0 = np.ceil((np.minimum(y0, y1) - hw) * ss - 0.5).astype(np.int64) - 1
        j0 = np.ceil((np.minimum(x0, x1) - hw) * ss - 0.5).astype(np.int64) - 1
        side = int(math.floor((_PIECE + 2 * hw) * ss)) + 4
        off = np.arange(side)
        for start in range(0, owner.size, _CHUNK):
            sl = slice(start, start + _CHUNK)
            o = owner[sl]
            rows = i0[sl, None, None] + off[None, :, None]
            cols = j0[sl, None, None] + off[None, None, :]
            rows, cols = np.broadcast_arrays(rows, cols)
            inside = (rows >= 0) & (rows < H) & (cols >= 0) & (cols < W)
            py = (rows + 0.5) / ss
            px = (cols + 0.5) / ss
            d2 = _seg_d2(
                px, py,
                ax[o, None, None], ay[o, None, None],
                dx[o, None, None], dy[o, None, None],
                (dx[o] * dx[o] + dy[o] * dy[o])[:, None, None],
            )
            hit = inside & (d2 <= hw2)
            mask[rows[hit], cols[hit]] = True
    n = ss * ss
    counts = mask.reshape(height, ss, width, ss).sum(axis=(1, 3), dtype=np.int64)
    return (255 - (counts * 255 + n // 2) // n).astype(np.uint8)


def _min_d2_to_points(a, b):
    out = np.empty(len(a))
    for start in range(0, len(a), 512):
        blk = a[start:start + 512]
        dx = blk[:, None, 0] - b[None, :, 0]
        dy = blk[:, None, 1] - b[None, :, 1]
        out[start:start + 512] = (dx * dx + dy * dy).min(axis=1)
    return out


def hausdorff(a, b):
    a = np.ascontiguousarray(a, dtype=np.float64).reshape(-1, 2)
    b = np.ascontiguousarray(b, dtype=np.float64).reshape(-1, 2)
    if len(a) == 0 or len(b) == 0:
        return math.inf
    h = max(_min_d2_to_points(a, b).max(), _min_d2_to_points(b, a).max())
    return math.sqrt(h)


def _min_d2_to_segments(px, py, segs):
    ax, ay, bx, by = (segs[:, i] for i in range(4))
    dx = bx - ax
    dy = by - ay
    l2 = dx * dx + dy * dy
    d2 = _seg_d2(px[..., None], py[..., None], ax, ay, dx, dy, l2)
    return d2.min(axis=-1)


def points_near_segments(points, segs, tol):
    points = np.ascontiguousarray(points, dtype=np.float64).reshape(-1, 2)
    segs = np.ascontiguousarray(segs, dtype=np.float64).reshape(-1, 4)
    if len(points) == 0:
        return True
    if len(segs) == 0:
        return False
    tol2 = tol * tol
    return bool(np.all(_min_d2_to_segments(points[:, 0], points[:, 1], segs) <= tol2))


def reflection_scan(points, segs, center, cs, tol):
    """Index of the first reflection (rows of ``cs`` = cos 2a, sin 2a) mapping
    every point to within ``tol`` of the polyline, or -1."""
    points = np.ascontiguousarray(points, dtype=np.float64).reshape(-1, 2)
    segs = np.ascontiguousarray(segs, dtype=np.float64).reshape(-1, 4)
    cs = np.ascontiguousarray(cs, dtype=np.float64).reshape(-1, 2)
    if len(segs) == 0 or len(cs) == 0:
        return -1
    cx, cy = float(center[0]), float(center[1])
    tol2 = tol * tol

    def reflect(idx, pts):
        c2 = cs[idx, 0][:, None]
        s2 = cs[idx, 1][:, None]
        ux = pts[None, :, 0] - cx
        uy = pts[None, :, 1] - cy
        return cx + c2 * ux + s2 * uy, cy + s2 * ux - c2 * uy

    # cheap prefilter on a subset of points, then a full check on survivors
    alive = np.arange(len(cs))
    step = max(1, len(points) // 12)
    for subset in (points[::step], points):
        if not alive.size:
            break
        ok = np.ones(alive.size, dtype=bool)
        for start in range(0, len(subset), 256):
            rx, ry = reflect(alive, subset[start:start + 256])
            ok &= np.all(_min_d2_to_segments(rx, ry, segs) <= tol2, axis=1)
        alive = alive[ok]
    return int(alive[0]) if alive.size else -1
