"""Quotients of shadow diagrams by normal subgroups of a symmetry group.

The quotient of the surface by a subgroup N acting freely on darts is
again a combinatorial map; edges inverted by N are first subdivided (a
midpoint vertex splits them) so freeness on darts always holds.  Cells
with nontrivial N-stabilizer become cone points, kept as metadata.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cmap import CellId, CombMap, build_map, subdivide_edges
from .diagram import SCAFFOLD, ShadowDiagram, validate_trisection
from .symmetry import (
    DEFAULT_CLOSURE_CAP,
    DiagramAction,
    SymmetryError,
    act_on_cell,
    check_action,
    compose,
    inverse,
)


class QuotientError(ValueError):
    pass


class NotNormal(QuotientError):
    pass


class NotValidAction(QuotientError):
    pass


@dataclass
class QuotientResult:
    diagram: ShadowDiagram
    cone_points: list  # (CellId in the quotient, order m)
    induced_action: DiagramAction
    projection: dict  # dart of the (subdivided) source -> quotient dart
    source: ShadowDiagram  # the subdivided source diagram
    subgroup_order: int

    def cone_orders(self):
        return sorted(m for _, m in self.cone_points)


def _extend_perm(perm, m2: CombMap, n_old: int):
    """Extend a dart permutation across midpoint darts added by
    subdivision (every subdivided edge's image must also be subdivided)."""
    out = list(perm) + [0] * (m2.n_darts - n_old)
    for x in range(n_old, m2.n_darts):
        d = m2.edge_pairing[x]
        if d >= n_old:
            raise QuotientError("midpoint dart paired with a midpoint dart")
        out[x] = m2.edge_pairing[perm[d]]
    return tuple(out)


def _subdivided_diagram(d: ShadowDiagram, cells):
    m2, origin = subdivide_edges(d.surface, cells)
    color = {}
    for e in m2.edges():
        color[e] = d.color[d.surface.cell_of("edge", origin[e.dart])]
    marked = {m2.cell_of("vertex", v.dart) for v in d.marked}
    return ShadowDiagram(m2, color, marked), origin


def quotient(d: ShadowDiagram, a: DiagramAction, n_generators=None,
             cap: int = DEFAULT_CLOSURE_CAP) -> QuotientResult:
    """Quotient the diagram by the subgroup N generated by
    ``n_generators`` (default: all of the action, i.e. N = G).

    N must be normal in the action's closure.  Returns the quotient
    diagram with cone points, the induced G/N action, and the dart
    projection.
    """
    try:
        check_action(d, a, cap)
    except SymmetryError as e:
        raise NotValidAction(str(e))
    g_elems = a.elements(cap)
    if n_generators is None:
        n_sub = a
    else:
        n_sub = DiagramAction(list(n_generators))
        for g in n_sub.generators:
            if g not in set(g_elems):
                raise NotNormal("subgroup generator is not in the group")
    n_elems = set(n_sub.elements(cap))
    for g in g_elems:
        g_inv = inverse(g)
        for n in n_elems:
            if compose(g, compose(n, g_inv)) not in n_elems:
                raise NotNormal("subgroup is not normal in the action")

    m = d.surface
    ident = tuple(range(m.n_darts))

    # subdivide the full G-orbit of N-inverted edges, so that the whole
    # group still acts afterwards
    inverted = set()
    for e in m.edges():
        x = e.dart
        if any(n[x] == m.edge_pairing[x] for n in n_elems):
            inverted.add(e)
    orbit_closed = set()
    for e in inverted:
        for g in g_elems:
            orbit_closed.add(act_on_cell(m, g, e))
    sub_d, origin = _subdivided_diagram(d, sorted(orbit_closed, key=lambda c: c.dart))
    m2 = sub_d.surface
    n_old = m.n_darts
    g_elems2 = [_extend_perm(g, m2, n_old) for g in g_elems]
    n_elems2 = {_extend_perm(n, m2, n_old) for n in n_elems}

    # N-orbits of darts become the quotient darts
    orbit_id = {}
    reps = []
    for x in range(m2.n_darts):
        if x in orbit_id:
            continue
        idx = len(reps)
        reps.append(x)
        for n in n_elems2:
            y = n[x]
            if y in orbit_id and orbit_id[y] != idx:
                raise QuotientError("inconsistent dart orbits")
            orbit_id[y] = idx
    k = len(reps)
    if k * len(n_elems2) != m2.n_darts:
        raise QuotientError("subgroup does not act freely on darts after subdivision")

    ep_q = [orbit_id[m2.edge_pairing[reps[i]]] for i in range(k)]
    rot_q = [orbit_id[m2.rotation[reps[i]]] for i in range(k)]
    mq = build_map(k, ep_q, rot_q)

    color_q = {}
    for e in mq.edges():
        color_q[e] = sub_d.color[m2.cell_of("edge", reps[e.dart])]
    marked_q = {mq.cell_of("vertex", orbit_id[v.dart]) for v in sub_d.marked}
    dq = ShadowDiagram(mq, color_q, marked_q)

    # cone points: quotient vertices/faces whose preimage cells have a
    # nontrivial N-stabilizer
    cone = []
    for kind in ("vertex", "face"):
        for cell in (mq.vertices() if kind == "vertex" else mq.faces()):
            pre = m2.cell_of(kind, reps[cell.dart])
            stab = sum(1 for n in n_elems2 if act_on_cell(m2, n, pre) == pre)
            orbit_size = len({act_on_cell(m2, n, pre) for n in n_elems2})
            if stab * orbit_size != len(n_elems2):
                raise QuotientError("orbit-stabilizer equality fails at %r" % (pre,))
            if stab > 1:
                cone.append((cell, stab))

    # Riemann-Hurwitz, exactly
    chi = m2.euler_characteristic()
    chi_q = mq.euler_characteristic()
    order_n = len(n_elems2)
    defect = sum((order_n // mm) * (mm - 1) for _, mm in cone)
    if chi != order_n * chi_q - defect:
        raise QuotientError(
            "Riemann-Hurwitz failure: chi %d != %d*%d - %d" % (chi, order_n, chi_q, defect)
        )

    # induced G/N action from the images of the original generators
    induced_gens = []
    induced_names = []
    for g, name in zip(a.generators, a.names):
        g2 = _extend_perm(g, m2, n_old)
        perm = tuple(orbit_id[g2[reps[i]]] for i in range(k))
        induced_gens.append(perm)
        induced_names.append(name)
    if not induced_gens:
        induced_gens = [tuple(range(k))]
        induced_names = ["e"]
    induced = DiagramAction(induced_gens, induced_names)
    try:
        check_action(dq, induced, cap)
    except SymmetryError as e:
        raise NotValidAction("induced action on the quotient is invalid: %s" % e)

    projection = {x: orbit_id[x] for x in range(m2.n_darts)}
    return QuotientResult(dq, cone, induced, projection, sub_d, order_n)


YES = "Yes"
CERTIFIED = "Certified"
NO = "No"


def folded_curve_edges(d: ShadowDiagram, i: int):
    """Edges of alpha(i) components that terminate somewhere (odd family
    valence at a vertex): the images of invariant curves running through
    fixed points, folded in half by the quotient."""
    m = d.surface
    fam = [e for e, c in d.color.items() if c.kind == "alpha" and c.index == i]
    at_vertex = {}
    for e in fam:
        for x in (e.dart, m.edge_pairing[e.dart]):
            at_vertex.setdefault(m.cell_of("vertex", x), []).append(e)
    parent = {}

    def find(e):
        while parent.get(e, e) != e:
            e = parent.get(e, e)
        return e

    odd_roots = set()
    for v, es in at_vertex.items():
        for e in es[1:]:
            ra, rb = find(es[0]), find(e)
            if ra != rb:
                parent[ra] = rb
    for v, es in at_vertex.items():
        if len(es) % 2 == 1:
            odd_roots.add(find(es[0]))
    return {e for e in fam if find(e) in odd_roots}


def demoted_diagram(q: QuotientResult) -> ShadowDiagram:
    """The quotient with folded half-curves demoted to scaffold.

    An invariant curve through two fixed points maps to an arc between
    cone points; downstairs it is a shadow of the branch surface, not a
    compressing curve of the quotient trisection, so it is kept only as
    decoration.
    """
    d = q.diagram
    drop = set()
    for i in (1, 2, 3):
        drop |= folded_curve_edges(d, i)
    if not drop:
        return d
    color = {e: (SCAFFOLD if e in drop else c) for e, c in d.color.items()}
    return ShadowDiagram(d.surface, color, set(d.marked))


def quotient_is_trisection(q: QuotientResult, tier2_budget: int = 10_000):
    """Validate the quotient as a plain diagram (cone points demoted to
    ordinary cells, folded half-curves to scaffold).  Yes = all pair
    checks Verified; Certified = valid at the homology tier; No = some
    check fails."""
    report = validate_trisection(demoted_diagram(q), tier2_budget=tier2_budget)
    if not report.ok:
        return NO, report
    if all(report.pair_verdicts[i].tier == "Verified" for i in (1, 2, 3)):
        return YES, report
    return CERTIFIED, report
