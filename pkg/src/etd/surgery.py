"""Diagram surgeries: tubing two diagrams together and cleanup."""

from __future__ import annotations

from .cmap import CellId, build_map
from .diagram import SCAFFOLD, DiagramError, ShadowDiagram


class SurgeryError(DiagramError):
    pass


def tube(
    d1: ShadowDiagram,
    face1: CellId,
    d2: ShadowDiagram,
    face2: CellId,
    offset: int = 0,
    reversed_matching: bool = False,
):
    """Join two diagrams by a tube (cylinder of scaffold rungs) between two
    faces of equal length.  Genus adds: chi = chi1 + chi2 - 2.

    Returns (diagram, shift) where darts of d2 appear shifted by shift.
    """
    m1, m2 = d1.surface, d2.surface
    cyc1 = m1.orbit(face1)
    cyc2 = m2.orbit(face2)
    L = len(cyc1)
    if len(cyc2) != L:
        raise SurgeryError("faces have different lengths (%d vs %d)" % (L, len(cyc2)))
    n1, n2 = m1.n_darts, m2.n_darts
    n = n1 + n2 + 2 * L

    def a(k):
        return n1 + n2 + 2 * k

    def b(k):
        return n1 + n2 + 2 * k + 1

    ep = list(m1.edge_pairing) + [x + n1 for x in m2.edge_pairing] + [0] * (2 * L)
    rot = list(m1.rotation) + [x + n1 for x in m2.rotation] + [0] * (2 * L)
    # rung k sits at the corner before cyc1[k] and before cyc2[j],
    # matched with reversed orientation
    for k in range(L):
        j = (offset + k) % L if reversed_matching else (offset - k) % L
        ep[a(k)] = b(j)
        ep[b(j)] = a(k)
    # face walk satisfies sigma(cyc[k]) = eps(cyc[k-1]); the rung at the
    # corner of cyc[k] slips between those two darts
    for k in range(L):
        rot[cyc1[k]] = a(k)
        rot[a(k)] = m1.edge_pairing[cyc1[k - 1]]
    for k in range(L):
        rot[cyc2[k] + n1] = b(k)
        rot[b(k)] = m2.edge_pairing[cyc2[k - 1]] + n1

    m = build_map(n, ep, rot)
    want = m1.euler_characteristic() + m2.euler_characteristic() - 2
    if m.euler_characteristic() != want:
        raise SurgeryError("tube matching is orientation-incompatible")

    color = {}
    for e in m.edges():
        x = e.dart
        if x < n1:
            color[e] = d1.color[m1.cell_of("edge", x)]
        elif x < n1 + n2:
            color[e] = d2.color[m2.cell_of("edge", x - n1)]
        else:
            color[e] = SCAFFOLD
    marked = {m.cell_of("vertex", v.dart) for v in d1.marked}
    marked |= {m.cell_of("vertex", v.dart + n1) for v in d2.marked}
    return ShadowDiagram(m, color, marked), n1


def prune_pendant_scaffold(d: ShadowDiagram) -> ShadowDiagram:
    """Delete valence-1 vertices attached by scaffold edges, repeatedly."""
    while True:
        m = d.surface
        drop = None
        for v in m.vertices():
            orbit = m.orbit(v)
            if len(orbit) == 1 and d.dart_color(orbit[0]) == SCAFFOLD:
                drop = orbit[0]
                break
        if drop is None:
            return d
        other = m.edge_pairing[drop]
        keep = [x for x in range(m.n_darts) if x not in (drop, other)]
        index = {x: i for i, x in enumerate(keep)}
        ep = [index[m.edge_pairing[x]] for x in keep]
        rot = []
        for x in keep:
            y = m.rotation[x]
            while y in (drop, other):
                y = m.rotation[y]
            rot.append(index[y])
        m2 = build_map(len(keep), ep, rot)
        color = {}
        for e in m2.edges():
            color[e] = d.color[m.cell_of("edge", keep[e.dart])]
        marked = set()
        for v in d.marked:
            for x in m.orbit(v):
                if x in index:
                    marked.add(m2.cell_of("vertex", index[x]))
                    break
        d = ShadowDiagram(m2, color, marked)
