"""Reference implementations used only by the tests.

They share no code with the package's predicates: convexity comes from hull
areas, split counts from exact rational intersection tests on lattice paths,
mirror symmetry from a denser brute-force axis search, and point symmetry
from nearest neighbours in a KD-tree.
"""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np
from scipy.spatial import ConvexHull, QhullError, cKDTree
from shapely.geometry import LinearRing

from bongard_forge.dsl import ActionProgram, BaseAction, Kind, MovingType
from bongard_forge.turtle import BasePath, sample_component


def dense_points(bp: BasePath, per_unit: int = 400) -> np.ndarray:
    comp = bp.components[0]
    return sample_component(comp, comp.unit_length / per_unit)


# ---------------------------------------------------------------------------
# programs from geometry


def _turn(h0: float, h1: float) -> float:
    return (h1 - h0 + 180.0) % 360.0 - 180.0


def actions_for(pieces, unit: float = 1.0) -> tuple[BaseAction, ...]:
    """Turtle actions tracing ``pieces``: ``("line", heading_deg, length)`` or
    ``("arc", start_heading_deg, sweep_deg, arc_length)``.  Arcs get a
    zero-length line first so they can start at any heading."""
    out = []
    heading = 0.0
    for piece in pieces:
        if piece[0] == "line":
            _, h, L = piece
            out.append(BaseAction(Kind.LINE, MovingType.NORMAL, L / unit, 0.5 + _turn(heading, h) / 360.0))
            heading = h
        else:
            _, h, sweep, L = piece
            t = _turn(heading, h)
            if t != 0.0:
                out.append(BaseAction(Kind.LINE, MovingType.NORMAL, 0.0, 0.5 + t / 360.0))
            out.append(BaseAction(Kind.ARC, MovingType.NORMAL, L / unit, 0.5 + sweep / 360.0))
            heading = h + sweep
    return tuple(out)


def closed_pieces(vertices: np.ndarray, sweeps) -> list:
    """Pieces around a closed polygon; a nonzero sweep bends that edge into an
    arc through the same two vertices."""
    pieces = []
    n = len(vertices)
    for i in range(n):
        d = vertices[(i + 1) % n] - vertices[i]
        chord = float(np.hypot(*d))
        h = math.degrees(math.atan2(d[1], d[0]))
        phi = sweeps[i]
        if phi == 0:
            pieces.append(("line", h, chord))
        else:
            half = math.radians(abs(phi)) / 2
            pieces.append(("arc", h - phi / 2, phi, chord * half / math.sin(half)))
    return pieces


def junction_turns(pieces, closed: bool = True) -> list[float]:
    """Tangent turns (degrees) between consecutive pieces."""
    ends = []
    for p in pieces:
        if p[0] == "line":
            ends.append((p[1], p[1]))
        else:
            ends.append((p[1], p[1] + p[2]))
    pairs = list(zip(ends[:-1], ends[1:]))
    if closed:
        pairs.append((ends[-1], ends[0]))
    return [_turn(a[1], b[0]) for a, b in pairs]


def piece_lengths(pieces) -> list[float]:
    return [p[-1] for p in pieces]


# ---------------------------------------------------------------------------
# convexity


def hull_convex(bp: BasePath) -> bool:
    """Closed, simple, and the enclosed area equals the hull area."""
    comp = bp.components[0]
    pts = dense_points(bp)
    if np.hypot(*(pts[-1] - pts[0])) > 1e-6 * comp.unit_length:
        return False
    ring = pts[:-1]
    if not LinearRing(ring).is_simple:
        return False
    x, y = ring[:, 0], ring[:, 1]
    area = 0.5 * abs(float(np.sum(x * np.roll(y, -1) - np.roll(x, -1) * y)))
    hull = ConvexHull(ring).volume
    return area >= hull * (1 - 1e-9)


# ---------------------------------------------------------------------------
# split straight lines, exact arithmetic on lattice walks


def _cross(a, b):
    return a[0] * b[1] - a[1] * b[0]


def lattice_runs(vertices):
    """Maximal straight runs of a lattice walk (integer vertices); a closed
    walk also merges across its start."""
    V = [tuple(map(Fraction, v)) for v in vertices]
    closed = V[0] == V[-1]
    edges = list(zip(V[:-1], V[1:]))

    def direction(e):
        return (e[1][0] - e[0][0], e[1][1] - e[0][1])

    def same_dir(e, f):
        a, b = direction(e), direction(f)
        return _cross(a, b) == 0 and a[0] * b[0] + a[1] * b[1] > 0

    runs = [list(edges[0])]
    for e in edges[1:]:
        if same_dir((runs[-1][0], runs[-1][1]), e):
            runs[-1][1] = e[1]
        else:
            runs.append(list(e))
    if closed and len(runs) > 1 and same_dir((runs[-1][0], runs[-1][1]), (runs[0][0], runs[0][1])):
        runs[0][0] = runs.pop()[0]
    return [tuple(r) for r in runs]


def exact_split_count(runs) -> tuple[int, float]:
    """O(n^2) split count: every run plus one per distinct interior point where
    another run meets it.  Also returns the smallest nonzero distance between
    a meeting point and a run end or another meeting point, so callers can
    discard configurations that sit on a tolerance boundary."""
    total = 0
    margin = math.inf
    for i, (a, b) in enumerate(runs):
        r = (b[0] - a[0], b[1] - a[1])
        L = math.hypot(r[0], r[1])
        cuts = set()
        for j, (c, d) in enumerate(runs):
            if i == j:
                continue
            s = (d[0] - c[0], d[1] - c[1])
            den = _cross(r, s)
            w = (c[0] - a[0], c[1] - a[1])
            if den == 0:
                continue
            t = _cross(w, s) / den
            u = _cross(w, r) / den
            Ls = math.hypot(s[0], s[1])
            # how far the meeting point is from either run's ends
            for gap in (float(t) * L, float(1 - t) * L, float(-u) * Ls, float(u - 1) * Ls):
                if gap != 0:
                    margin = min(margin, abs(gap))
            if 0 <= u <= 1 and 0 < t < 1:
                cuts.add(t)
        ts = sorted(cuts)
        for x, y in zip(ts, ts[1:]):
            margin = min(margin, float(y - x) * L)
        total += 1 + len(cuts)
    return total, margin


STEPS = [(1, 0), (0, 1), (-1, 0), (0, -1), (1, 1), (-1, 1), (1, -1), (-1, -1),
         (2, 1), (1, 2), (-1, 2), (-2, 1), (-2, -1), (-1, -2), (1, -2), (2, -1)]


def lattice_walk(rng: np.random.Generator, n: int, close: bool) -> list[tuple[int, int]]:
    """Random lattice walk without reversals or collinear overlaps."""
    while True:
        V = [(0, 0)]
        last = None
        for _ in range(n):
            while True:
                k = int(rng.integers(len(STEPS)))
                s = STEPS[k] if last is None or STEPS[k] != (-last[0], -last[1]) else None
                if s is not None:
                    break
            reps = int(rng.integers(1, 3))
            V.append((V[-1][0] + s[0] * reps, V[-1][1] + s[1] * reps))
            last = s
        if close and V[-1] != V[0]:
            V.append(V[0])
        if _no_overlaps(V):
            return V


def _no_overlaps(V) -> bool:
    edges = list(zip(V[:-1], V[1:]))
    for i, (a, b) in enumerate(edges):
        if a == b:
            return False
        for c, d in edges[i + 1:]:
            r = (b[0] - a[0], b[1] - a[1])
            s = (d[0] - c[0], d[1] - c[1])
            if _cross(r, s) == 0 and _cross((c[0] - a[0], c[1] - a[1]), r) == 0:
                # collinear: reject if the segments share more than a point
                def proj(p):
                    return (p[0] - a[0]) * r[0] + (p[1] - a[1]) * r[1]
                lo, hi = sorted((proj(c), proj(d)))
                if min(hi, r[0] * r[0] + r[1] * r[1]) > max(lo, 0):
                    return False
    # a closing edge must not fold back onto the first edge
    if V[0] == V[-1] and len(edges) > 1:
        f, g = edges[-1], edges[0]
        r = (f[1][0] - f[0][0], f[1][1] - f[0][1])
        s = (g[1][0] - g[0][0], g[1][1] - g[0][1])
        if _cross(r, s) == 0 and r[0] * s[0] + r[1] * s[1] < 0:
            return False
    return True


def walk_program(V, scale: float) -> ActionProgram:
    pieces = []
    for a, b in zip(V[:-1], V[1:]):
        dx, dy = b[0] - a[0], b[1] - a[1]
        pieces.append(("line", math.degrees(math.atan2(dy, dx)), math.hypot(dx, dy) * scale))
    return ActionProgram.single(actions_for(pieces))


# ---------------------------------------------------------------------------
# symmetry


def _centroid_and_diameter(pts: np.ndarray) -> tuple[np.ndarray, float]:
    mids = 0.5 * (pts[:-1] + pts[1:])
    w = np.hypot(*(pts[1:] - pts[:-1]).T)
    center = (mids * w[:, None]).sum(axis=0) / w.sum()
    try:
        hull = pts[ConvexHull(pts).vertices]
    except QhullError:  # collinear samples
        hull = pts[:: max(1, len(pts) // 1000)]
    diam = float(np.max(np.hypot(*(hull[:, None, :] - hull[None, :, :]).transpose(2, 0, 1))))
    return center, diam


def fine_axis_symmetric(bp: BasePath, tol_frac: float = 0.02, n_axes: int = 2880) -> bool:
    """Brute force over ``n_axes`` mirror axes through the arc-length centroid;
    symmetric when every reflected probe lies within ``tol_frac * diameter``
    of a very dense sampling of the curve."""
    pts = dense_points(bp, 800)
    center, diam = _centroid_and_diameter(pts)
    tree = cKDTree(pts)
    probe = pts[:: max(1, len(pts) // 200)] - center
    ang = np.pi * np.arange(n_axes) / n_axes
    c2, s2 = np.cos(2 * ang), np.sin(2 * ang)
    alive = np.arange(n_axes)
    for sub in (probe[:: max(1, len(probe) // 8)], probe):
        k = alive[:, None]
        refl = np.stack([c2[k] * sub[None, :, 0] + s2[k] * sub[None, :, 1],
                         s2[k] * sub[None, :, 0] - c2[k] * sub[None, :, 1]], axis=-1) + center
        dist, _ = tree.query(refl.reshape(-1, 2))
        alive = alive[np.all(dist.reshape(len(k), len(sub)) <= tol_frac * diam, axis=1)]
        if not alive.size:
            return False
    return True


def kdtree_self_transposed(bp: BasePath, tol_frac: float = 0.02) -> bool:
    """Point reflection through the arc-length centroid, nearest neighbours
    from a KD-tree over a very dense sampling."""
    pts = dense_points(bp, 800)
    center, diam = _centroid_and_diameter(pts)
    dist, _ = cKDTree(pts).query(2 * center - pts)
    return bool(np.all(dist <= tol_frac * diam))


# ---------------------------------------------------------------------------
# random inputs


def polygon_program(vertices, sweeps=None, closed: bool = True) -> ActionProgram:
    """Program tracing ``vertices`` (scaled so the longest piece is 1)."""
    V = np.asarray(vertices, dtype=float)
    if closed:
        pieces = closed_pieces(V, sweeps or [0.0] * len(V))
    else:
        pieces = [("line", math.degrees(math.atan2(*(b - a)[::-1])), float(np.hypot(*(b - a))))
                  for a, b in zip(V[:-1], V[1:])]
    scale = 1.0 / max(piece_lengths(pieces))
    return ActionProgram.single(actions_for([p[:-1] + (p[-1] * scale,) for p in pieces]))


def _well_posed(pieces, closed: bool = True) -> bool:
    """Features well away from the predicates' tolerances: no turn within 2
    degrees of straight (unless exactly straight) or of a full reversal, no
    piece shorter than 0.1 units, no arc bulging less than 0.01 units."""
    if any(0 < abs(t) < 2 or abs(t) > 178 for t in junction_turns(pieces, closed)):
        return False
    if min(piece_lengths(pieces)) < 0.1:
        return False
    for p in pieces:
        if p[0] == "arc":
            phi = math.radians(abs(p[2]))
            if not math.radians(5) <= phi <= math.radians(300):
                return False
            if p[3] / phi * (1 - math.cos(min(phi, math.pi) / 2)) < 0.01:
                return False
    return True


def random_closed_program(rng: np.random.Generator) -> ActionProgram:
    """A random closed path: a star-shaped or regular-ish polygon whose edges
    may bulge into arcs either way, or a random walk closed by a line."""
    while True:
        kind = int(rng.integers(3))
        n = int(rng.integers(3, 9))
        if kind < 2:
            ang = np.sort(rng.uniform(0, 2 * np.pi, n))
            rad = rng.uniform(0.4, 1.0, n) if kind == 1 else np.ones(n)
            V = np.column_stack([rad * np.cos(ang) * rng.uniform(0.5, 1.5), rad * np.sin(ang)])
            if rng.integers(2):
                V = V[::-1]
            sweeps = [float(rng.uniform(10, 120)) * (1 if rng.random() < 0.7 else -1) if rng.random() < 0.3 else 0.0
                      for _ in range(n)]
            pieces = closed_pieces(V, sweeps)
        else:
            pieces, pos, h = [], np.zeros(2), 0.0
            for _ in range(n - 1):
                h += float(rng.uniform(-170, 170))
                L = float(rng.uniform(0.3, 1))
                if rng.random() < 0.3:
                    sw = float(rng.uniform(-150, 150))
                    r = L / math.radians(abs(sw))
                    mid = math.radians(h + sw / 2)
                    pos = pos + 2 * r * math.sin(math.radians(abs(sw)) / 2) * np.array([math.cos(mid), math.sin(mid)])
                    pieces.append(("arc", h, sw, L))
                    h += sw
                else:
                    pos = pos + L * np.array([math.cos(math.radians(h)), math.sin(math.radians(h))])
                    pieces.append(("line", h, L))
            if np.hypot(*pos) < 0.05:
                continue
            pieces.append(("line", math.degrees(math.atan2(-pos[1], -pos[0])), float(np.hypot(*pos))))
        scale = 1.0 / max(piece_lengths(pieces))
        pieces = [p[:-1] + (p[-1] * scale,) for p in pieces]
        if _well_posed(pieces):
            return ActionProgram.single(actions_for(pieces))


def lattice_case(rng: np.random.Generator):
    """(program, expected continuous count, expected split count) for a
    random lattice walk whose meeting points all sit at least 0.03 units from
    run ends and from each other."""
    while True:
        V = lattice_walk(rng, int(rng.integers(2, 9)), bool(rng.integers(2)))
        lens = [math.hypot(b[0] - a[0], b[1] - a[1]) for a, b in zip(V[:-1], V[1:])]
        scale = 1.0 / max(lens)
        heads = [math.degrees(math.atan2(b[1] - a[1], b[0] - a[0])) for a, b in zip(V[:-1], V[1:])]
        if any(0 < abs(_turn(x, y)) < 2 for x, y in zip(heads, heads[1:])):
            continue
        runs = lattice_runs(V)
        split, margin = exact_split_count(runs)
        if margin * scale >= 0.03:
            return walk_program(V, scale), len(runs), split
