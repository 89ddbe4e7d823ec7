"""Regular branched covers of diagrams from voltage assignments.

Each dart carries a deck-group element (voltage), inverse on the partner
dart; crossing an edge multiplies the sheet coordinate on the left.
Marked vertices may declare a meridian: walking once around the vertex
multiplies the sheet by it, so the vertex lifts to |G|/order(meridian)
branch points.  (Conceptually the vertex is blown up into a small polygon
whose boundary carries the meridian as net voltage, the polygon's lifts
being collapsed back to vertices; the twisted rotation below is that
construction with the polygon elided.)
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from typing import Optional

from .cmap import CellId, CombMap, build_map
from .diagram import ShadowDiagram
from .groups import Group
from .symmetry import DiagramAction, check_action


class CoverError(ValueError):
    pass


class VoltageIncompatible(CoverError):
    pass


class MeridianMismatch(CoverError):
    pass


class DisconnectedCoverWarning(UserWarning):
    pass


@dataclass
class VoltageAssignment:
    group: Group
    voltage: dict  # dart -> group element
    meridians: dict = field(default_factory=dict)  # marked vertex CellId -> element

    def validated(self, d: ShadowDiagram) -> "VoltageAssignment":
        g = self.group
        m = d.surface
        volt = dict(self.voltage)
        for x in range(m.n_darts):
            if x not in volt:
                raise VoltageIncompatible("dart %d has no voltage" % x)
            if volt[x] not in g:
                raise VoltageIncompatible("voltage at dart %d is not a group element" % x)
        for x in range(m.n_darts):
            if volt[m.edge_pairing[x]] != g.inv(volt[x]):
                raise VoltageIncompatible(
                    "voltages on edge {%d, %d} are not mutually inverse"
                    % (x, m.edge_pairing[x])
                )
        mer = dict(self.meridians)
        for v, w in mer.items():
            if v not in d.marked:
                raise MeridianMismatch("meridian declared at unmarked cell %r" % (v,))
            if w not in g:
                raise MeridianMismatch("meridian at %r is not a group element" % (v,))
        for v in d.marked:
            mer.setdefault(v, g.identity)
        return VoltageAssignment(g, volt, mer)


def trivial_voltages(d: ShadowDiagram, group: Group) -> VoltageAssignment:
    return VoltageAssignment(
        group, {x: group.identity for x in range(d.surface.n_darts)}
    ).validated(d)


@dataclass
class BranchPoint:
    base_vertex: CellId
    order: int
    lift_count: int


@dataclass
class CoverResult:
    diagram: ShadowDiagram
    deck: DiagramAction
    projection: dict  # lifted dart -> (base dart, group element)
    branch_points: list
    group: Group
    n_components: int
    structural_errors: list

    def component_diagrams(self):
        m = self.diagram.surface
        out = []
        for comp in m.components():
            darts = sorted(comp)
            index = {x: i for i, x in enumerate(darts)}
            ep = [index[m.edge_pairing[x]] for x in darts]
            rot = [index[m.rotation[x]] for x in darts]
            sub = build_map(len(darts), ep, rot)
            color = {}
            for e in sub.edges():
                color[e] = self.diagram.color[m.cell_of("edge", darts[e.dart])]
            marked = {
                sub.cell_of("vertex", index[v.dart])
                for v in self.diagram.marked
                if v.dart in index
            }
            out.append(ShadowDiagram(sub, color, marked))
        return out


def _generating_subset(g: Group):
    gens = []
    have = {g.identity}
    for x in g.elements:
        if x in have:
            continue
        gens.append(x)
        have = g.generated(gens)
        if len(have) == len(g):
            break
    return gens


def expected_lift_parameters(d: ShadowDiagram, va: VoltageAssignment):
    """(genus of a connected cover, per-branch lift counts) from the
    Riemann-Hurwitz formula, without building anything."""
    va = va.validated(d)
    g = va.group
    m = d.surface
    if not m.is_connected():
        raise CoverError("base must be connected")
    n = len(g)
    chi = m.euler_characteristic()
    defect = 0
    counts = {}
    for v, w in va.meridians.items():
        o = g.element_order(w)
        if n % o:
            raise MeridianMismatch("meridian order does not divide the group order")
        defect += n - n // o
        counts[v] = n // o
    chi_lift = n * chi - defect
    if chi_lift % 2:
        raise CoverError("lifted Euler characteristic is odd")
    return (2 - chi_lift) // 2, counts


def _solve_twists(d: ShadowDiagram, va: VoltageAssignment):
    """Per-corner sheet twists at the marked vertices.

    This is the blown-up-polygon construction in compressed form: the
    twist t(c) is the voltage of the polygon edge at corner c.  The
    twists must multiply to the declared meridian around each marked
    vertex while keeping every face's total holonomy trivial (faces lift
    unbranched; only marked vertices branch).  Each twist appears in
    exactly one face constraint and one vertex constraint, so the system
    peels off one constraint at a time; an unsatisfiable residue means
    the declared meridians are globally inconsistent.
    """
    g = va.group
    m = d.surface
    unknowns = set()
    for v in d.marked:
        unknowns.update(m.orbit(v))
    t = {}

    # each constraint is a token word multiplying (left to right) to the
    # identity; tokens are ("const", elt) or ("unk", dart, exponent)
    constraints = []
    for f in m.faces():
        cyc = m.orbit(f)  # face-walk order d1 -> d2 -> ...
        word = []
        k = len(cyc)
        # t(d1)^-1 v(dk) t(dk)^-1 v(d_{k-1}) ... t(d2)^-1 v(d1) = e
        word.append(("unk", cyc[0], -1))
        for i in range(k - 1, 0, -1):
            word.append(("const", va.voltage[cyc[i]]))
            word.append(("unk", cyc[i], -1))
        word.append(("const", va.voltage[cyc[0]]))
        constraints.append(word)
    for v in d.marked:
        cyc = m.orbit(v)
        word = [("unk", c, 1) for c in reversed(cyc)]
        word.append(("const", g.inv(va.meridians[v])))
        constraints.append(word)

    def token_value(tok):
        if tok[0] == "const":
            return tok[1]
        _, dart, s = tok
        if dart not in unknowns:
            return g.identity  # unmarked corner: no twist
        val = t.get(dart)
        if val is None:
            return None
        return val if s == 1 else g.inv(val)

    def unsolved(word):
        return [tok for tok in word if tok[0] == "unk" and tok[1] in unknowns and tok[1] not in t]

    pending = set(unknowns)
    while pending:
        progressed = False
        for word in constraints:
            open_toks = unsolved(word)
            if len(open_toks) != 1:
                continue
            (_, dart, s) = open_toks[0]
            before = g.identity
            after = g.identity
            seen = False
            for tok in word:
                if tok[0] == "unk" and tok[1] == dart and tok[1] not in t:
                    seen = True
                    continue
                val = token_value(tok)
                if seen:
                    after = g.mul(after, val)
                else:
                    before = g.mul(before, val)
            # before * u^s * after = e
            u_s = g.mul(g.inv(before), g.inv(after))
            t[dart] = u_s if s == 1 else g.inv(u_s)
            pending.discard(dart)
            progressed = True
        if not progressed:
            # gauge freedom: pin an arbitrary twist and keep peeling
            dart = min(pending)
            t[dart] = g.identity
            pending.discard(dart)

    for word in constraints:
        total = g.identity
        for tok in word:
            total = g.mul(total, token_value(tok))
        if total != g.identity:
            if any(tok[0] == "unk" and tok[1] in unknowns for tok in word):
                raise MeridianMismatch(
                    "declared meridians are inconsistent with the voltages"
                )
            raise VoltageIncompatible(
                "face with nontrivial holonomy: branching is only allowed "
                "at marked vertices"
            )
    return {x: t.get(x, g.identity) for x in range(m.n_darts)}


def derived_cover(d: ShadowDiagram, va: VoltageAssignment) -> CoverResult:
    """Build the derived cover, its deck action (right translation), and
    branch data; warns DisconnectedCoverWarning when the voltages do not
    generate the deck group."""
    va = va.validated(d)
    g = va.group
    m = d.surface
    if not m.is_connected():
        raise CoverError("base must be connected")
    n = m.n_darts
    order = len(g)
    idx = {x: i for i, x in enumerate(g.elements)}

    def dart(base, elt):
        return base * order + idx[elt]

    twist = _solve_twists(d, va)

    ep = [0] * (n * order)
    rot = [0] * (n * order)
    proj = {}
    for x in range(n):
        for e in g.elements:
            i = dart(x, e)
            proj[i] = (x, e)
            ep[i] = dart(m.edge_pairing[x], g.mul(va.voltage[x], e))
            rot[i] = dart(m.rotation[x], g.mul(twist[x], e))
    lifted = build_map(n * order, ep, rot)

    # Riemann-Hurwitz, exactly (holds for the full cover, connected or not)
    defect = sum(
        order - order // g.element_order(w) for w in va.meridians.values()
    )
    if lifted.euler_characteristic() != order * m.euler_characteristic() - defect:
        raise CoverError("derived map violates Riemann-Hurwitz")

    color = {}
    for e in lifted.edges():
        base_edge = m.cell_of("edge", proj[e.dart][0])
        color[e] = d.color[base_edge]
    marked = set()
    marked_base = {v.dart for v in d.marked}
    for v in lifted.vertices():
        if m.cell_of("vertex", proj[v.dart][0]).dart in marked_base:
            marked.add(v)
    dq = ShadowDiagram(lifted, color, marked)

    branch = []
    for v, w in sorted(va.meridians.items(), key=lambda it: it[0].dart):
        o = g.element_order(w)
        lifts = [
            lv for lv in lifted.vertices()
            if m.cell_of("vertex", proj[lv.dart][0]) == v
        ]
        if len(lifts) != order // o:
            raise CoverError("branch point lift count disagrees with the meridian order")
        branch.append(BranchPoint(v, o, len(lifts)))

    gens = []
    names = []
    for h in _generating_subset(g) or [g.identity]:
        perm = tuple(
            dart(proj[i][0], g.mul(proj[i][1], h)) for i in range(n * order)
        )
        gens.append(perm)
        names.append(str(h))
    deck = DiagramAction(gens, names)

    comps = lifted.components()
    if len(comps) > 1:
        warnings.warn(
            "voltages do not generate: cover has %d components" % len(comps),
            DisconnectedCoverWarning,
        )
    errs = dq.well_formed_errors()
    rep = check_action(dq, deck)
    if rep.order != order:
        raise CoverError("deck action order %d != group order %d" % (rep.order, order))
    return CoverResult(dq, deck, proj, branch, g, len(comps), errs)


def reduce_voltages(va: VoltageAssignment, target: Group, hom: dict) -> VoltageAssignment:
    """Push a voltage assignment forward along a group homomorphism
    (given as an element-image table); the derived cover of the result
    is the corresponding intermediate quotient cover."""
    return VoltageAssignment(
        target,
        {x: hom[v] for x, v in va.voltage.items()},
        {p: hom[w] for p, w in va.meridians.items()},
    )


def spanning_tree_normalize(d: ShadowDiagram, va: VoltageAssignment) -> VoltageAssignment:
    """Gauge-fix so that the darts of a BFS spanning tree carry the
    identity; meridians are conjugated accordingly.  The derived cover is
    unchanged up to isomorphism."""
    va = va.validated(d)
    g = va.group
    m = d.surface
    if not m.is_connected():
        raise CoverError("base must be connected")
    pot = {}
    root = m.vertices()[0]
    pot[root] = g.identity
    frontier = [root]
    while frontier:
        nxt = []
        for u in frontier:
            for x in m.orbit(u):
                wvert = m.cell_of("vertex", m.edge_pairing[x])
                if wvert not in pot:
                    # make the tree dart x trivial: p(head) = p(tail) * v(x)^-1
                    pot[wvert] = g.mul(pot[u], g.inv(va.voltage[x]))
                    nxt.append(wvert)
        frontier = nxt
    new_volt = {}
    for x in range(m.n_darts):
        tail = m.cell_of("vertex", x)
        head = m.cell_of("vertex", m.edge_pairing[x])
        new_volt[x] = g.mul(pot[head], g.mul(va.voltage[x], g.inv(pot[tail])))
    new_mer = {
        v: g.mul(pot[v], g.mul(w, g.inv(pot[v]))) for v, w in va.meridians.items()
    }
    return VoltageAssignment(g, new_volt, new_mer).validated(d)
