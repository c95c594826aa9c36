# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled hot kernels; see _pykernels.py for the reference semantics.

Build with -ffp-contract=off: results must match the numpy fallback bit for bit.
"""

import numpy as np

from libc.math cimport sqrt, ceil, floor, fabs, INFINITY


cdef inline double seg_d2(double px, double py, double ax, double ay,
                          double dx, double dy, double l2) nogil:
    cdef double t = 0.0
    cdef double qx, qy
    if l2 > 0.0:
        t = ((px - ax) * dx + (py - ay) * dy) / l2
    if t < 0.0:
        t = 0.0
    if t > 1.0:
        t = 1.0
    qx = ax + t * dx - px
    qy = ay + t * dy - py
    return qx * qx + qy * qy


def raster_capsules(segs, int width, int height, int ss, double half_width):
    cdef double[:, ::1] s = np.ascontiguousarray(segs, dtype=np.float64).reshape(-1, 4)
    cdef Py_ssize_t H = height * ss, W = width * ss
    mask_arr = np.zeros((H, W), dtype=np.uint8)
    cdef unsigned char[:, ::1] mask = mask_arr
    cdef double hw = half_width, hw2 = half_width * half_width
    cdef double ax, ay, bx, by, dx, dy, l2, length, xmin, xmax, ymin, ymax
    cdef double py, px, xc, w, lo, hi
    cdef Py_ssize_t k, i, j, i0, i1, j0, j1
    cdef Py_ssize_t nseg = s.shape[0]
    with nogil:
        for k in range(nseg):
            ax = s[k, 0]; ay = s[k, 1]; bx = s[k, 2]; by = s[k, 3]
            dx = bx - ax
            dy = by - ay
            l2 = dx * dx + dy * dy
            length = sqrt(l2)
            xmin = (ax if ax < bx else bx) - hw
            xmax = (bx if ax < bx else ax) + hw
            ymin = (ay if ay < by else by) - hw
            ymax = (by if ay < by else ay) + hw
            i0 = <Py_ssize_t>ceil(ymin * ss - 0.5) - 1
            i1 = <Py_ssize_t>floor(ymax * ss - 0.5) + 1
            if i0 < 0:
                i0 = 0
            if i1 > H - 1:
                i1 = H - 1
            for i in range(i0, i1 + 1):
                py = (i + 0.5) / ss
                lo = xmin
                hi = xmax
                if fabs(dy) * 1e6 > length:
                    # points within hw of the segment lie within hw/|sin| of the line
                    xc = ax + (py - ay) * dx / dy
                    w = hw * length / fabs(dy) + 1.0
                    if xc - w > lo:
                        lo = xc - w
                    if xc + w < hi:
                        hi = xc + w
                if lo > hi:
                    continue
                j0 = <Py_ssize_t>ceil(lo * ss - 0.5) - 1
                j1 = <Py_ssize_t>floor(hi * ss - 0.5) + 1
                if j0 < 0:
                    j0 = 0
                if j1 > W - 1:
                    j1 = W - 1
                for j in range(j0, j1 + 1):
                    if mask[i, j]:
                        continue
                    px = (j + 0.5) / ss
                    if seg_d2(px, py, ax, ay, dx, dy, l2) <= hw2:
                        mask[i, j] = 1
    out_arr = np.empty((height, width), dtype=np.uint8)
    cdef unsigned char[:, ::1] out = out_arr
    cdef Py_ssize_t r, c, a, b
    cdef long count, n = ss * ss
    with nogil:
        for r in range(height):
            for c in range(width):
                count = 0
                for a in range(ss):
                    for b in range(ss):
                        count += mask[r * ss + a, c * ss + b]
                out[r, c] = <unsigned char>(255 - (count * 255 + n // 2) // n)
    return out_arr


cdef double directed_d2(double[:, ::1] a, double[:, ::1] b, double cmax) nogil:
    cdef Py_ssize_t i, j
    cdef double cmin, dx, dy, d2
    for i in range(a.shape[0]):
        cmin = INFINITY
        for j in range(b.shape[0]):
            dx = a[i, 0] - b[j, 0]
            dy = a[i, 1] - b[j, 1]
            d2 = dx * dx + dy * dy
            if d2 < cmin:
                cmin = d2
                if cmin < cmax:
                    break
        if cmin > cmax:
            cmax = cmin
    return cmax


def hausdorff(a, b):
    cdef double[:, ::1] av = np.ascontiguousarray(a, dtype=np.float64).reshape(-1, 2)
    cdef double[:, ::1] bv = np.ascontiguousarray(b, dtype=np.float64).reshape(-1, 2)
    if av.shape[0] == 0 or bv.shape[0] == 0:
        return float("inf")
    cdef double h
    with nogil:
        h = directed_d2(av, bv, 0.0)
        h = directed_d2(bv, av, h)
    return sqrt(h)


cdef bint near_all(double[:, ::1] pts, double[:, ::1] segs, double tol2,
                   double cx, double cy, double c2, double s2, bint reflect) nogil:
    cdef Py_ssize_t i, k
    cdef double px, py, ux, uy, dx, dy
    cdef bint hit
    for i in range(pts.shape[0]):
        if reflect:
            ux = pts[i, 0] - cx
            uy = pts[i, 1] - cy
            px = cx + c2 * ux + s2 * uy
            py = cy + s2 * ux - c2 * uy
        else:
            px = pts[i, 0]
            py = pts[i, 1]
        hit = False
        for k in range(segs.shape[0]):
            dx = segs[k, 2] - segs[k, 0]
            dy = segs[k, 3] - segs[k, 1]
            if seg_d2(px, py, segs[k, 0], segs[k, 1], dx, dy, dx * dx + dy * dy) <= tol2:
                hit = True
                break
        if not hit:
            return False
    return True


def points_near_segments(points, segs, double tol):
    cdef double[:, ::1] p = np.ascontiguousarray(points, dtype=np.float64).reshape(-1, 2)
    cdef double[:, ::1] s = np.ascontiguousarray(segs, dtype=np.float64).reshape(-1, 4)
    if p.shape[0] == 0:
        return True
    if s.shape[0] == 0:
        return False
    cdef bint res
    with nogil:
        res = near_all(p, s, tol * tol, 0.0, 0.0, 0.0, 0.0, False)
    return bool(res)


def reflection_scan(points, segs, center, cs, double tol):
    cdef double[:, ::1] p = np.ascontiguousarray(points, dtype=np.float64).reshape(-1, 2)
    cdef double[:, ::1] s = np.ascontiguousarray(segs, dtype=np.float64).reshape(-1, 4)
    cdef double[:, ::1] c = np.ascontiguousarray(cs, dtype=np.float64).reshape(-1, 2)
    cdef double cx = float(center[0]), cy = float(center[1]), tol2 = tol * tol
    cdef Py_ssize_t k
    cdef Py_ssize_t found = -1
    if s.shape[0] == 0:
        return -1
    with nogil:
        for k in range(c.shape[0]):
            if near_all(p, s, tol2, cx, cy, c[k, 0], c[k, 1], True):
                found = k
                break
    return found
