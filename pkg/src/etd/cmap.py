"""Combinatorial maps (rotation systems) on oriented surfaces.

A map is a finite set of darts (half-edges) together with an involution
``edge_pairing`` matching the two halves of each edge and a permutation
``rotation`` giving the counterclockwise successor of each dart around its
vertex.  Vertices are rotation orbits, edges are pairing orbits, faces are
orbits of the face walk rotation^-1 o edge_pairing.  Only orientable
surfaces are representable; orientation is implicit in the rotation.

A dart fixed by ``edge_pairing`` is a boundary half-edge; such maps must be
built with ``allow_boundary=True``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence


class MapError(ValueError):
    pass


class NotInvolution(MapError):
    pass


class DanglingDart(MapError):
    """edge_pairing has a fixed point but boundary was disallowed."""


class NotClosed(MapError):
    pass


class NotConnected(MapError):
    pass


class UnknownCell(MapError):
    pass


def _orbits(perm: Sequence[int], n: int) -> list[list[int]]:
    seen = [False] * n
    out = []
    for start in range(n):
        if seen[start]:
            continue
        orbit = []
        d = start
        while not seen[d]:
            seen[d] = True
            orbit.append(d)
            d = perm[d]
        out.append(orbit)
    return out


@dataclass(frozen=True)
class CellId:
    """A vertex, edge or face, named by the minimum dart in its orbit."""

    kind: str  # 'vertex' | 'edge' | 'face'
    dart: int

    def __post_init__(self):
        if self.kind not in ("vertex", "edge", "face"):
            raise MapError("bad cell kind %r" % (self.kind,))


class CombMap:
    """Immutable combinatorial map.  Use :func:`build_map` to construct."""

    def __init__(self, n_darts, edge_pairing, rotation, allow_boundary=False):
        edge_pairing = tuple(edge_pairing)
        rotation = tuple(rotation)
        if len(edge_pairing) != n_darts or len(rotation) != n_darts:
            raise MapError("permutation length does not match dart count")
        if sorted(rotation) != list(range(n_darts)):
            raise MapError("rotation is not a permutation of the darts")
        if sorted(edge_pairing) != list(range(n_darts)):
            raise MapError("edge_pairing is not a permutation of the darts")
        for d in range(n_darts):
            if edge_pairing[edge_pairing[d]] != d:
                raise NotInvolution("edge_pairing is not an involution at dart %d" % d)
        if not allow_boundary:
            for d in range(n_darts):
                if edge_pairing[d] == d:
                    raise DanglingDart("dart %d has no partner" % d)
        self.n_darts = n_darts
        self.edge_pairing = edge_pairing
        self.rotation = rotation
        self.allow_boundary = allow_boundary
        self._rotation_inv = [0] * n_darts
        for d in range(n_darts):
            self._rotation_inv[rotation[d]] = d
        # face walk: rotation^-1 after edge_pairing
        self.face_walk = tuple(self._rotation_inv[edge_pairing[d]] for d in range(n_darts))
        self._vertex_orbits = _orbits(self.rotation, n_darts)
        self._face_orbits = _orbits(self.face_walk, n_darts)
        self._edge_orbits = []
        for d in range(n_darts):
            e = edge_pairing[d]
            if e == d:
                self._edge_orbits.append([d])
            elif d < e:
                self._edge_orbits.append([d, e])
        self._cell_of = {}
        for kind, orbs in (
            ("vertex", self._vertex_orbits),
            ("edge", self._edge_orbits),
            ("face", self._face_orbits),
        ):
            for orbit in orbs:
                cid = CellId(kind, min(orbit))
                for d in orbit:
                    self._cell_of[(kind, d)] = cid

    # ---- cells ----------------------------------------------------------

    def vertices(self):
        return [CellId("vertex", min(o)) for o in self._vertex_orbits]

    def edges(self):
        return [CellId("edge", min(o)) for o in self._edge_orbits]

    def faces(self):
        return [CellId("face", min(o)) for o in self._face_orbits]

    def cell_of(self, kind: str, dart: int) -> CellId:
        try:
            return self._cell_of[(kind, dart)]
        except KeyError:
            raise UnknownCell("no %s cell at dart %r" % (kind, dart))

    def orbit(self, cell: CellId) -> list[int]:
        perm = {"vertex": self.rotation, "edge": self.edge_pairing, "face": self.face_walk}[cell.kind]
        out = [cell.dart]
        d = perm[cell.dart]
        while d != cell.dart:
            out.append(d)
            d = perm[d]
        return out

    def boundary_darts(self) -> list[int]:
        return [d for d in range(self.n_darts) if self.edge_pairing[d] == d]

    def is_closed(self) -> bool:
        return not self.boundary_darts()

    # ---- invariants -----------------------------------------------------

    def euler_characteristic(self) -> int:
        return len(self._vertex_orbits) - len(self._edge_orbits) + len(self._face_orbits)

    def components(self) -> list[set[int]]:
        """Connected components as dart sets (orbits of <rotation, pairing>)."""
        parent = list(range(self.n_darts))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for d in range(self.n_darts):
            for e in (self.rotation[d], self.edge_pairing[d]):
                ra, rb = find(d), find(e)
                if ra != rb:
                    parent[ra] = rb
        comps = {}
        for d in range(self.n_darts):
            comps.setdefault(find(d), set()).add(d)
        return list(comps.values())

    def is_connected(self) -> bool:
        return self.n_darts == 0 or len(self.components()) == 1

    def genus(self) -> int:
        if not self.is_closed():
            raise NotClosed("genus requires a closed map")
        if not self.is_connected():
            raise NotConnected("genus requires a connected map")
        chi = self.euler_characteristic()
        if (2 - chi) % 2:
            raise MapError("odd Euler defect; map is not an orientable closed surface")
        return (2 - chi) // 2

    # ---- relabeling -----------------------------------------------------

    def relabel(self, perm: Sequence[int]) -> "CombMap":
        """Return the same map with dart d renamed perm[d]."""
        n = self.n_darts
        inv = [0] * n
        for d in range(n):
            inv[perm[d]] = d
        ep = [perm[self.edge_pairing[inv[d]]] for d in range(n)]
        rot = [perm[self.rotation[inv[d]]] for d in range(n)]
        return CombMap(n, ep, rot, allow_boundary=self.allow_boundary)


def build_map(n_darts, edge_pairing, rotation, allow_boundary=False) -> CombMap:
    return CombMap(n_darts, edge_pairing, rotation, allow_boundary=allow_boundary)


def euler_characteristic(m: CombMap) -> int:
    return m.euler_characteristic()


def genus(m: CombMap) -> int:
    return m.genus()


# ---------------------------------------------------------------------------
# cutting


class CutComponent:
    """One connected piece of a cut surface."""

    def __init__(self, chi, boundary_circles, darts):
        self.chi = chi
        self.boundary_circles = boundary_circles  # list of lists of cut darts
        self.darts = darts

    @property
    def n_boundary(self):
        return len(self.boundary_circles)

    @property
    def genus(self):
        return (2 - self.chi - self.n_boundary) // 2


class CutSurface:
    """Result of slicing a closed map along a set of edges.

    Each cut edge becomes two boundary edges.  Vertices incident to cut
    darts split into corners (maximal rotation runs between cut darts).
    Faces persist.  The original map is recoverable, so regluing is the
    identity by construction.
    """

    def __init__(self, base: CombMap, cut_edges: Iterable[CellId]):
        cut_darts = set()
        for cell in cut_edges:
            if cell.kind != "edge":
                raise UnknownCell("cut_along expects edge cells")
            if ("edge", cell.dart) not in base._cell_of or base.cell_of("edge", cell.dart) != cell:
                raise UnknownCell("unknown edge %r" % (cell,))
            for d in base.orbit(cell):
                cut_darts.add(d)
        self.base = base
        self.cut_darts = cut_darts

        # corners: split each vertex orbit at its cut darts
        corner_of = {}
        corners = []
        for orbit in base._vertex_orbits:
            local_cut = [d for d in orbit if d in cut_darts]
            if not local_cut:
                corners.append(list(orbit))
                for d in orbit:
                    corner_of[d] = len(corners) - 1
            else:
                # walk the rotation cycle; start a new corner at each cut dart
                for c in local_cut:
                    run = [c]
                    d = base.rotation[c]
                    while d not in cut_darts:
                        run.append(d)
                        d = base.rotation[d]
                    corners.append(run)
                    for x in run:
                        corner_of[x] = len(corners) - 1
        self.corners = corners
        self._corner_of = corner_of

        # boundary walk on cut darts: from d, the next cut dart around the
        # same boundary circle is found by rotating from the partner's side.
        def bwalk(d):
            x = base.rotation[base.edge_pairing[d]]
            while x not in cut_darts:
                x = base.rotation[x]
            return x

        circles = []
        seen = set()
        circle_of = {}
        for d in sorted(cut_darts):
            if d in seen:
                continue
            circ = [d]
            seen.add(d)
            x = bwalk(d)
            while x != d:
                circ.append(x)
                seen.add(x)
                x = bwalk(x)
            circles.append(circ)
            for x in circ:
                circle_of[x] = len(circles) - 1
        self.boundary_circle_darts = circles

        # connectivity: corners joined by uncut edges, plus boundary walks
        parent = list(range(len(corners)))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        def union(a, b):
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[ra] = rb

        for d in range(base.n_darts):
            e = base.edge_pairing[d]
            if d not in cut_darts:
                union(corner_of[d], corner_of[e])
        for circ in circles:
            for a, b in zip(circ, circ[1:]):
                union(corner_of[a], corner_of[b])

        comp_ids = {}
        for i in range(len(corners)):
            comp_ids.setdefault(find(i), []).append(i)

        # distribute edges and faces to components
        self.components = []
        for root, corner_list in comp_ids.items():
            corner_set = set(corner_list)
            darts = set()
            for i in corner_list:
                darts.update(corners[i])
            n_interior = sum(
                1
                for orb in base._edge_orbits
                if orb[0] not in cut_darts and corner_of[orb[0]] in corner_set
            )
            n_boundary_edges = sum(1 for d in darts if d in cut_darts)
            n_faces = sum(1 for orb in base._face_orbits if corner_of[orb[0]] in corner_set)
            circles_here = [c for c in circles if corner_of[c[0]] in corner_set]
            chi = len(corner_list) - (n_interior + n_boundary_edges) + n_faces
            self.components.append(CutComponent(chi, circles_here, darts))

    @property
    def n_components(self):
        return len(self.components)

    def total_chi(self):
        return sum(c.chi for c in self.components)

    def reglue(self) -> CombMap:
        """Undo the cut (the construction keeps the base map intact)."""
        return self.base


def cut_along(m: CombMap, edges: Iterable[CellId]) -> CutSurface:
    if not m.is_closed():
        raise NotClosed("cut_along expects a closed map")
    return CutSurface(m, edges)


# ---------------------------------------------------------------------------
# subdivision


def subdivide_edges(m: CombMap, edges: Iterable[CellId]):
    """Insert a valence-2 midpoint vertex on each listed edge.

    Returns (new_map, origin) where origin maps every dart of the new map
    to the dart of ``m`` it came from (new midpoint darts map to the dart
    of the half they extend).
    """
    targets = []
    for cell in edges:
        if cell.kind != "edge":
            raise UnknownCell("subdivide_edges expects edge cells")
        if m.cell_of("edge", cell.dart) != cell:
            raise UnknownCell("unknown edge %r" % (cell,))
        targets.append(cell)
    n = m.n_darts
    ep = list(m.edge_pairing)
    rot = list(m.rotation)
    origin = {d: d for d in range(n)}
    for cell in targets:
        orb = m.orbit(cell)
        if len(orb) == 2:
            d, e = orb
            n1, n2 = n, n + 1
            n += 2
            ep.extend([0, 0])
            rot.extend([0, 0])
            # edge {d,e} -> {d,n1} + {n2,e}; midpoint rotation (n1 n2)
            ep[d], ep[n1] = n1, d
            ep[e], ep[n2] = n2, e
            rot[n1], rot[n2] = n2, n1
            origin[n1] = e
            origin[n2] = d
        else:
            (d,) = orb  # boundary edge
            n1 = n
            n += 1
            ep.append(n1)
            rot.append(n1)
            origin[n1] = d
    return CombMap(n, ep, rot, allow_boundary=m.allow_boundary), origin


# ---------------------------------------------------------------------------
# canonical forms and isomorphism


def _bfs_encoding(m: CombMap, labels, start: int):
    """Relabel darts breadth-first from ``start``; return the code string."""
    order = [-1] * m.n_darts  # dart -> new index
    seq = [start]
    order[start] = 0
    i = 0
    while i < len(seq):
        d = seq[i]
        i += 1
        for nxt in (m.rotation[d], m.edge_pairing[d]):
            if order[nxt] < 0:
                order[nxt] = len(seq)
                seq.append(nxt)
    if len(seq) != m.n_darts:
        return None  # disconnected from start
    code = tuple(
        (order[m.rotation[d]], order[m.edge_pairing[d]], labels[d] if labels else None)
        for d in seq
    )
    return code, seq


def canonical_form(m: CombMap, labels: Optional[Sequence] = None):
    """A relabeling-invariant encoding of a connected decorated map."""
    if m.n_darts == 0:
        return ()
    best = None
    for start in range(m.n_darts):
        enc = _bfs_encoding(m, labels, start)
        if enc is None:
            raise NotConnected("canonical_form requires a connected map")
        code, _ = enc
        if best is None or code < best:
            best = code
    return best


def _propagate(m1: CombMap, m2: CombMap, labels1, labels2, d1: int, d2: int):
    """Extend dart assignment d1 -> d2 to a full isomorphism, or fail."""
    f = [-1] * m1.n_darts
    f[d1] = d2
    used = [False] * m2.n_darts
    used[d2] = True
    stack = [d1]
    while stack:
        a = stack.pop()
        b = f[a]
        if labels1 is not None and labels1[a] != labels2[b]:
            return None
        for pa, pb in ((m1.rotation, m2.rotation), (m1.edge_pairing, m2.edge_pairing)):
            na, nb = pa[a], pb[b]
            if f[na] == -1:
                if used[nb]:
                    return None
                f[na] = nb
                used[nb] = True
                stack.append(na)
            elif f[na] != nb:
                return None
    if -1 in f:
        return None  # m1 disconnected
    return f


def is_isomorphic(m1: CombMap, m2: CombMap, labels1=None, labels2=None):
    """A label-preserving isomorphism (dart map m1 -> m2), or None."""
    if m1.n_darts != m2.n_darts:
        return None
    if m1.n_darts == 0:
        return []
    if not m1.is_connected() or not m2.is_connected():
        raise NotConnected("is_isomorphic requires connected maps")
    for d2 in range(m2.n_darts):
        f = _propagate(m1, m2, labels1, labels2, 0, d2)
        if f is not None:
            return f
    return None


def automorphisms(m: CombMap, labels=None):
    """All label-preserving automorphisms of a connected map.

    On a connected map an automorphism is determined by the image of a
    single dart, so there are at most n_darts of them.
    """
    if m.n_darts == 0:
        return [[]]
    if not m.is_connected():
        raise NotConnected("automorphisms requires a connected map")
    out = []
    for d2 in range(m.n_darts):
        f = _propagate(m, m, labels, labels, 0, d2)
        if f is not None:
            out.append(f)
    return out


# ---------------------------------------------------------------------------
# building maps from face lists


def build_from_faces(faces, require_single_vertex_cycles=True):
    """Build a closed CombMap from polygons.

    ``faces``: list of polygons, each a list of (vertex, edge_key) pairs
    read counterclockwise: entry p means "an edge with key edge_key runs
    from this vertex to the vertex of entry p+1".  Every edge key must be
    used by exactly two polygon sides (in opposite directions for an
    orientable result).

    Returns (map, dart_info) where dart_info[d] = (face_index, position,
    vertex, edge_key).
    """
    dart_info = []
    index = {}
    for fi, poly in enumerate(faces):
        for p, (v, k) in enumerate(poly):
            index[(fi, p)] = len(dart_info)
            dart_info.append((fi, p, v, k))
    n = len(dart_info)

    by_key = {}
    for d, (fi, p, v, k) in enumerate(dart_info):
        by_key.setdefault(k, []).append(d)
    ep = [0] * n
    for k, ds in by_key.items():
        if len(ds) != 2:
            raise MapError("edge key %r used %d times (want 2)" % (k, len(ds)))
        a, b = ds
        fa, pa, va, _ = dart_info[a]
        fb, pb, vb, _ = dart_info[b]
        head_a = faces[fa][(pa + 1) % len(faces[fa])][0]
        head_b = faces[fb][(pb + 1) % len(faces[fb])][0]
        if not (va == head_b and vb == head_a):
            raise MapError("edge key %r traversed inconsistently" % (k,))
        ep[a], ep[b] = b, a

    # the face walk is forced: next side of the same polygon
    fw = [0] * n
    for d, (fi, p, v, k) in enumerate(dart_info):
        fw[d] = index[(fi, (p + 1) % len(faces[fi]))]
    # rotation = edge_pairing o face_walk^-1
    fw_inv = [0] * n
    for d in range(n):
        fw_inv[fw[d]] = d
    rot = [ep[fw_inv[d]] for d in range(n)]

    m = CombMap(n, ep, rot, allow_boundary=False)
    if require_single_vertex_cycles:
        # each vertex label must correspond to exactly one rotation orbit
        orbit_labels = {}
        for orbit in m._vertex_orbits:
            labels = {dart_info[d][2] for d in orbit}
            if len(labels) != 1:
                raise MapError("rotation orbit mixes vertex labels %r" % (labels,))
            lab = labels.pop()
            if lab in orbit_labels:
                raise MapError("vertex %r has a disconnected link" % (lab,))
            orbit_labels[lab] = orbit
    return m, dart_info
