"""Polyline arrangements in the plane, assembled into sphere maps.

Strands are polylines (open arcs or closed polygons) with Fraction
coordinates.  Crossings are computed exactly; the resulting graph, with
rotations from sorting directions counterclockwise, is a combinatorial
map on the sphere (the unbounded face closes up for free).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cmp_to_key

from .cmap import CombMap, build_map


class PlanarError(ValueError):
    pass


def _frac_point(p):
    return (Fraction(p[0]), Fraction(p[1]))


def _sub(a, b):
    return (a[0] - b[0], a[1] - b[1])


def _cross(a, b):
    return a[0] * b[1] - a[1] * b[0]


def _angle_cmp(d1, d2):
    def half(d):
        return 0 if (d[1] > 0 or (d[1] == 0 and d[0] > 0)) else 1

    h1, h2 = half(d1), half(d2)
    if h1 != h2:
        return h1 - h2
    c = _cross(d1, d2)
    if c == 0:
        return 0
    return -1 if c > 0 else 1


def segment_intersection(p1, p2, q1, q2):
    """Classify the intersection of segments p1p2 and q1q2.

    Returns None (disjoint), ("point", pt, s, t) for a single point with
    parameters s, t in [0, 1] along each segment, or raises on overlap.
    """
    r = _sub(p2, p1)
    s = _sub(q2, q1)
    denom = _cross(r, s)
    qp = _sub(q1, p1)
    if denom == 0:
        if _cross(qp, r) != 0:
            return None
        # collinear: any overlap beyond a shared endpoint is an error
        rr = r[0] * r[0] + r[1] * r[1]
        t0 = (qp[0] * r[0] + qp[1] * r[1])
        t1 = t0 + (s[0] * r[0] + s[1] * r[1])
        lo, hi = min(t0, t1), max(t0, t1)
        if hi < 0 or lo > rr:
            return None
        if hi == 0:
            return ("point", p1, Fraction(0), Fraction(0) if t0 == 0 else Fraction(1))
        if lo == rr:
            return ("point", p2, Fraction(1), Fraction(0) if t0 == rr else Fraction(1))
        raise PlanarError("collinear overlapping segments")
    t = Fraction(_cross(qp, r), denom)
    u = Fraction(_cross(qp, s), denom)
    if 0 <= u <= 1 and 0 <= t <= 1:
        pt = (p1[0] + u * r[0], p1[1] + u * r[1])
        return ("point", pt, u, t)
    return None


@dataclass
class Strand:
    points: list
    closed: bool = False
    label: object = None

    def __post_init__(self):
        self.points = [_frac_point(p) for p in self.points]
        if self.closed:
            if len(self.points) < 3:
                raise PlanarError("closed strands need at least 3 points")
            if self.points[0] == self.points[-1]:
                raise PlanarError("closed strands must not repeat the first point")
        else:
            if len(self.points) < 2:
                raise PlanarError("open strands need at least 2 points")

    def segments(self):
        pts = self.points + ([self.points[0]] if self.closed else [])
        return list(zip(pts[:-1], pts[1:]))


def arc(points, label=None):
    return Strand(list(points), False, label)


def loop(points, label=None):
    return Strand(list(points), True, label)


@dataclass
class PlanarDiagram:
    map: CombMap
    strands: list
    dart_point: dict
    dart_dir: dict
    dart_strand: dict
    edge_path: dict  # outgoing dart -> polyline of its edge

    def vertex_at(self, pt):
        pt = _frac_point(pt)
        for d, q in self.dart_point.items():
            if q == pt:
                return self.map.cell_of("vertex", d)
        raise PlanarError("no vertex at %r" % (pt,))

    def edges_of_strand(self, idx):
        return sorted(
            {self.map.cell_of("edge", d) for d, i in self.dart_strand.items() if i == idx},
            key=lambda c: c.dart,
        )

    def edges_by_label(self, label):
        out = []
        for i, s in enumerate(self.strands):
            if s.label == label:
                out.extend(self.edges_of_strand(i))
        return out


def _strand_params(strand, pt_entries):
    """Sort (seg_idx, t, point) entries along the strand."""
    return sorted(pt_entries, key=lambda e: (e[0], e[1]))


def _normalize_param(strand, g, t, pt):
    """Push a point at a segment's far end onto the next segment's start,
    so that a junction at a bend gets a single canonical parameter."""
    n_seg = len(strand.segments())
    if t == 1:
        if strand.closed:
            return ((g + 1) % n_seg, Fraction(0), pt)
        if g < n_seg - 1:
            return (g + 1, Fraction(0), pt)
    return (g, t, pt)


def branch_cut_crossings(pd: PlanarDiagram, cuts):
    """Signed crossings of each edge with each cut ray.

    ``cuts`` is a list of (start, end) segments, typically rays from a
    branch point into the unbounded face.  Returns {outgoing dart:
    [(cut_index, sign), ...]} ordered along the edge; sign is +1 when
    the edge crosses the cut left-to-right.  Crossings at the start of a
    cut (its branch point) are ignored; any other degenerate contact is
    an error -- nudge the cut.
    """
    cuts = [(_frac_point(a), _frac_point(b)) for a, b in cuts]
    out = {}
    for d, path in pd.edge_path.items():
        found = []
        for gi, (q1, q2) in enumerate(zip(path[:-1], path[1:])):
            for ci, (c1, c2) in enumerate(cuts):
                hit = segment_intersection(c1, c2, q1, q2)
                if hit is None:
                    continue
                _, pt, u, t = hit
                if u == 0:
                    continue  # at the cut's own branch point
                if u == 1 or t in (0, 1):
                    raise PlanarError(
                        "cut %d has a degenerate contact at %r" % (ci, pt)
                    )
                sign = 1 if _cross(_sub(c2, c1), _sub(q2, q1)) > 0 else -1
                found.append(((gi, t), ci, sign))
        found.sort(key=lambda e: e[0])
        out[d] = [(ci, sign) for _, ci, sign in found]
    return out


def branch_cut_voltages(pd: PlanarDiagram, group, cut_values, crossings):
    """Edge voltages from branch cuts: walking along an edge, each cut
    crossing multiplies the sheet by the cut's value (inverse for
    negative crossings), later crossings acting on the left."""
    volt = {}
    for d, hits in crossings.items():
        v = group.identity
        for ci, sign in hits:
            w = cut_values[ci] if sign > 0 else group.inv(cut_values[ci])
            v = group.mul(w, v)
        volt[d] = v
        volt[pd.map.edge_pairing[d]] = group.inv(v)
    return volt


def build_planar(strands) -> PlanarDiagram:
    strands = list(strands)
    all_segs = []  # (strand_idx, seg_idx, a, b)
    for si, s in enumerate(strands):
        for gi, (a, b) in enumerate(s.segments()):
            if a == b:
                raise PlanarError("zero-length segment in strand %d" % si)
            all_segs.append((si, gi, a, b))

    # special points per strand: terminals and crossings, as (seg, t, pt)
    special = {si: [] for si in range(len(strands))}
    terminals = set()
    for si, s in enumerate(strands):
        if not s.closed:
            special[si].append((0, Fraction(0), s.points[0]))
            last = len(s.segments()) - 1
            special[si].append((last, Fraction(1), s.points[-1]))
            terminals.add(s.points[0])
            terminals.add(s.points[-1])

    point_owners = {}  # crossing/terminal point -> set of strand ids
    for pt in terminals:
        point_owners.setdefault(pt, set())
    for i in range(len(all_segs)):
        for j in range(i + 1, len(all_segs)):
            si, gi, a1, b1 = all_segs[i]
            sj, gj, a2, b2 = all_segs[j]
            if si == sj:
                # consecutive segments share a bend point; that is not a
                # crossing.  Other self-intersections are rejected.
                n_seg = len(strands[si].segments())
                consecutive = abs(gi - gj) == 1 or (
                    strands[si].closed and {gi, gj} == {0, n_seg - 1}
                )
                hit = segment_intersection(a1, b1, a2, b2)
                if hit is None:
                    continue
                if consecutive:
                    continue
                raise PlanarError("strand %d intersects itself" % si)
            hit = segment_intersection(a1, b1, a2, b2)
            if hit is None:
                continue
            _, pt, t1, t2 = hit
            end1 = not strands[si].closed and (
                (t1 == 0 and gi == 0) or (t1 == 1 and gi == len(strands[si].segments()) - 1)
            )
            end2 = not strands[sj].closed and (
                (t2 == 0 and gj == 0) or (t2 == 1 and gj == len(strands[sj].segments()) - 1)
            )
            point_owners.setdefault(pt, set()).update((si, sj))
            if end1 and end2:
                # shared terminal: a declared junction, not a crossing
                continue
            if end1 or end2:
                # T-junction: a terminal subdivides the other strand
                so, go, to = (sj, gj, t2) if end1 else (si, gi, t1)
                special[so].append(_normalize_param(strands[so], go, to, pt))
                continue
            if t1 in (0, 1) or t2 in (0, 1):
                # a genuine crossing must not sit on a bend point
                raise PlanarError(
                    "strands %d and %d cross at a bend point %r" % (si, sj, pt)
                )
            special[si].append((gi, t1, pt))
            special[sj].append((gj, t2, pt))

    # dedupe (a crossing may be recorded once per segment pair; identical
    # entries collapse) and detect triple points
    for si in special:
        seen = set()
        uniq = []
        for e in special[si]:
            key = (e[0], e[1])
            if key not in seen:
                seen.add(key)
                uniq.append(e)
        special[si] = _strand_params(strands[si], uniq)
    for pt, owners in point_owners.items():
        if len(owners) > 2 and pt not in terminals:
            raise PlanarError("triple point at %r" % (pt,))

    # anchor uncrossed closed strands at their first point
    for si, s in enumerate(strands):
        if s.closed and not special[si]:
            special[si] = [(0, Fraction(0), s.points[0])]

    # edges: pieces of strands between consecutive special points
    dart_point = {}
    dart_dir = {}
    dart_strand = {}
    edge_path = {}
    pairing = []
    n = 0

    def bends_between(s, a, b):
        """Bend points of strand s strictly between params a and b (as
        (seg, t) pairs), in walk order; b may wrap past the seam."""
        n_seg = len(s.segments())
        zero = Fraction(0)
        if s.closed and b <= a:
            ks = list(range(a[0] + 1, n_seg)) + list(range(0, b[0] + 1))
        else:
            ks = list(range(a[0], b[0] + 1))
        out = []
        for k in ks:
            pos = (k, zero)
            inside = (pos > a and pos < b) if not (s.closed and b <= a) else (
                pos > a or pos < b
            )
            if inside:
                out.append(s.segments()[k][0])
        return out

    def seg_dir(si, gi, reverse=False):
        a, b = strands[si].segments()[gi]
        d = _sub(b, a)
        return (-d[0], -d[1]) if reverse else d

    for si, s in enumerate(strands):
        pts = special[si]
        if s.closed:
            pairs = [(pts[k], pts[(k + 1) % len(pts)]) for k in range(len(pts))]
        else:
            pairs = [(pts[k], pts[k + 1]) for k in range(len(pts) - 1)]
        for (g1, t1, p1), (g2, t2, p2) in pairs:
            d_out, d_in = n, n + 1
            n += 2
            dart_point[d_out] = p1
            dart_dir[d_out] = seg_dir(si, g1 if t1 < 1 else (g1 + 1) % len(s.segments()))
            g2_eff = g2 if t2 > 0 else (g2 - 1) % len(s.segments())
            dart_point[d_in] = p2
            dart_dir[d_in] = seg_dir(si, g2_eff, reverse=True)
            dart_strand[d_out] = dart_strand[d_in] = si
            edge_path[d_out] = [p1] + bends_between(s, (g1, t1), (g2, t2)) + [p2]
            pairing.extend([d_in, d_out])

    at_point = {}
    for d in range(n):
        at_point.setdefault(dart_point[d], []).append(d)
    rotation = [0] * n
    for pt, ds in at_point.items():
        keyed = sorted(ds, key=cmp_to_key(lambda a, b: _angle_cmp(dart_dir[a], dart_dir[b])))
        for k in range(len(keyed)):
            if _angle_cmp(dart_dir[keyed[k]], dart_dir[keyed[(k + 1) % len(keyed)]]) == 0 and len(keyed) > 1:
                raise PlanarError("parallel darts at %r" % (pt,))
        for k, d in enumerate(keyed):
            rotation[d] = keyed[(k + 1) % len(keyed)]

    m = build_map(n, pairing, rotation)
    if not m.is_connected():
        raise PlanarError("arrangement is disconnected; add connecting strands")
    if m.euler_characteristic() != 2:
        raise PlanarError("arrangement did not close up to a sphere")
    return PlanarDiagram(m, strands, dart_point, dart_dir, dart_strand, edge_path)
