"""Shadow trisection diagrams and their validation.

A shadow diagram is a closed combinatorial map whose edges carry colors:
three curve families Alpha(1..3), three shadow-arc families Shadow(1..3),
and Scaffold filler, plus a set of marked (bridge) vertices.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .cmap import CellId, CombMap, canonical_form, cut_along, is_isomorphic
from .invariants import AbelianGroup, surface_h1_mod


class DiagramError(ValueError):
    pass


class MalformedColoring(DiagramError):
    pass


class OddMarkedCount(DiagramError):
    pass


class ArcOutsideComplementaryDisk(DiagramError):
    pass


# ---------------------------------------------------------------------------
# colors


@dataclass(frozen=True)
class Color:
    kind: str  # 'alpha' | 'shadow' | 'scaffold'
    index: Optional[int] = None

    def __post_init__(self):
        if self.kind in ("alpha", "shadow"):
            if self.index not in (1, 2, 3):
                raise DiagramError("curve/arc families are indexed 1..3")
        elif self.kind == "scaffold":
            if self.index is not None:
                raise DiagramError("scaffold carries no index")
        else:
            raise DiagramError("unknown color kind %r" % (self.kind,))

    def __str__(self):
        if self.kind == "scaffold":
            return "scaffold"
        return "%s%d" % (self.kind, self.index)


def alpha(i):
    return Color("alpha", i)


def shadow(i):
    return Color("shadow", i)


SCAFFOLD = Color("scaffold")


def parse_color(text: str) -> Color:
    if text == "scaffold":
        return SCAFFOLD
    for kind in ("alpha", "shadow"):
        if text.startswith(kind):
            return Color(kind, int(text[len(kind):]))
    raise DiagramError("unknown color %r" % (text,))


# ---------------------------------------------------------------------------
# the diagram type


class ShadowDiagram:
    """A closed surface map with colored edges and marked bridge vertices.

    ``color`` maps edge CellIds to Colors; uncolored edges default to
    scaffold.  ``marked`` is an iterable of vertex CellIds.
    """

    def __init__(self, surface: CombMap, color=None, marked=()):
        if not surface.is_closed():
            raise DiagramError("diagram surfaces must be closed")
        self.surface = surface
        col = {}
        edge_cells = set(surface.edges())
        for cell, c in (color or {}).items():
            if cell not in edge_cells:
                raise DiagramError("color assigned to unknown edge %r" % (cell,))
            if not isinstance(c, Color):
                raise DiagramError("colors must be Color values")
            col[cell] = c
        for cell in edge_cells:
            col.setdefault(cell, SCAFFOLD)
        self.color = col
        marked = frozenset(marked)
        vertex_cells = set(surface.vertices())
        for v in marked:
            if v not in vertex_cells:
                raise DiagramError("marked cell %r is not a vertex" % (v,))
        self.marked = marked

    # -- helpers ----------------------------------------------------------

    def dart_color(self, d: int) -> Color:
        return self.color[self.surface.cell_of("edge", d)]

    def edges_of_color(self, c: Color):
        return [e for e in self.surface.edges() if self.color[e] == c]

    def dart_labels(self):
        """Per-dart decorations for canonical forms and isomorphism."""
        out = []
        for d in range(self.surface.n_darts):
            col = self.dart_color(d)
            mk = self.surface.cell_of("vertex", d) in self.marked
            out.append((col.kind, col.index, mk))
        return out

    def vertex_kind(self, v: CellId) -> str:
        if v in self.marked:
            return "BridgePoint"
        kinds = {self.dart_color(d).kind for d in self.surface.orbit(v)}
        if kinds <= {"scaffold"}:
            return "ScaffoldVertex"
        return "Crossing"

    def genus(self) -> int:
        return self.surface.genus()

    def canonical(self):
        return canonical_form(self.surface, self.dart_labels())

    def isomorphic_to(self, other: "ShadowDiagram"):
        return is_isomorphic(self.surface, other.surface, self.dart_labels(), other.dart_labels())

    # -- structural well-formedness ---------------------------------------

    def well_formed_errors(self) -> list[str]:
        errs = []
        m = self.surface
        for v in m.vertices():
            orbit = m.orbit(v)
            alpha_families = {}
            for d in orbit:
                c = self.dart_color(d)
                if c.kind == "alpha":
                    alpha_families.setdefault(c.index, []).append(d)
            for i, ds in alpha_families.items():
                if len(ds) not in (0, 2):
                    errs.append(
                        "vertex %r carries %d darts of alpha%d (want 0 or 2)" % (v, len(ds), i)
                    )
            if len(alpha_families) > 2:
                errs.append("more than two curve colors cross at vertex %r" % (v,))
            if len(alpha_families) == 2 and len(orbit) == 4 and all(
                len(ds) == 2 for ds in alpha_families.values()
            ):
                # transversality: the two families must alternate
                fams = [self.dart_color(d).index for d in orbit]
                if any(fams[k] == fams[(k + 1) % 4] for k in range(4)):
                    errs.append("curve colors do not alternate at crossing %r" % (v,))
            # shadow arcs: interior vertices carry 0 or 2 darts of one family
            shadow_families = {}
            for d in orbit:
                c = self.dart_color(d)
                if c.kind == "shadow":
                    shadow_families.setdefault(c.index, []).append(d)
            if v not in self.marked:
                if len(shadow_families) > 1:
                    errs.append("shadow families share interior vertex %r" % (v,))
                for i, ds in shadow_families.items():
                    if len(ds) != 2:
                        errs.append(
                            "shadow%d ends at unmarked vertex %r" % (i, v)
                        )
        present = {c.index for c in self.color.values() if c.kind == "shadow"}
        for v in self.marked:
            here = {
                self.dart_color(d).index
                for d in self.surface.orbit(v)
                if self.dart_color(d).kind == "shadow"
            }
            for i in present:
                if i not in here:
                    errs.append("marked vertex %r has no shadow%d end" % (v, i))
        return errs


# ---------------------------------------------------------------------------
# curve extraction


def _family_curves(d: ShadowDiagram, i: int):
    """The Alpha(i) curves as lists of darts (one dart per traversed edge,
    in traversal order).  Raises MalformedColoring on branching."""
    m = d.surface
    col = alpha(i)
    darts = [x for x in range(m.n_darts) if d.dart_color(x) == col]
    # at each vertex the family's darts must pair up (0 or 2)
    at_vertex = {}
    for x in darts:
        at_vertex.setdefault(m.cell_of("vertex", x), []).append(x)
    for v, ds in at_vertex.items():
        if len(ds) != 2:
            raise MalformedColoring(
                "alpha%d has %d darts at vertex %r" % (i, len(ds), v)
            )
    partner = {}
    for ds in at_vertex.values():
        partner[ds[0]] = ds[1]
        partner[ds[1]] = ds[0]
    curves = []
    seen = set()
    for x in sorted(darts):
        if x in seen:
            continue
        curve = []
        y = x
        while True:
            curve.append(y)
            seen.add(y)
            seen.add(m.edge_pairing[y])
            y = partner[m.edge_pairing[y]]
            if y == x:
                break
        curves.append(curve)
    return curves


def curve_classes(d: ShadowDiagram, i: int):
    """One integer vector per Alpha(i) curve over the edge basis.

    Orientations per curve are arbitrary; downstream uses are
    sign-insensitive.
    """
    m = d.surface
    edges = m.edges()
    e_index = {c: j for j, c in enumerate(edges)}
    out = []
    for curve in _family_curves(d, i):
        vec = [0] * len(edges)
        for x in curve:
            cell = m.cell_of("edge", x)
            vec[e_index[cell]] += 1 if x == cell.dart else -1
        out.append(vec)
    return out


def _shadow_cells(d: ShadowDiagram, i: int):
    """Edge cells of the Shadow(i) arcs."""
    col = shadow(i)
    return {e for e, c in d.color.items() if c == col}


def shadow_cycle_classes(d: ShadowDiagram, i: int):
    """A cycle-space basis for the Shadow(i) subgraph, over the edge basis.

    Bridge disks attach to the handlebody along the family's arcs, so any
    cycle supported on those arcs bounds on the handlebody side and counts
    as a compression alongside the Alpha(i) curves.  Arc systems without
    cycles (every diagram of a trivial tangle downstairs) contribute
    nothing; cycles appear in lifted diagrams where arcs merge through
    bridge points.
    """
    m = d.surface
    edges = m.edges()
    e_index = {c: k for k, c in enumerate(edges)}
    sub = sorted(_shadow_cells(d, i), key=lambda c: c.dart)

    parent = {}

    def find(v):
        while parent.get(v, v) != v:
            v = parent.get(v, v)
        return v

    extra = []
    tree_at = {}
    for c in sub:
        tail = m.cell_of("vertex", c.dart)
        head = m.cell_of("vertex", m.edge_pairing[c.dart])
        rt, rh = find(tail), find(head)
        if rt == rh:
            extra.append((c, tail, head))
        else:
            parent[rt] = rh
            tree_at.setdefault(tail, []).append((c, head, 1))
            tree_at.setdefault(head, []).append((c, tail, -1))
    out = []
    for c, tail, head in extra:
        # close the non-tree edge with the tree path from head back to tail
        prev = {head: None}
        frontier = [head]
        while frontier and tail not in prev:
            nxt = []
            for u in frontier:
                for t, w, s in tree_at.get(u, ()):
                    if w not in prev:
                        prev[w] = (u, t, s)
                        nxt.append(w)
            frontier = nxt
        vec = [0] * len(edges)
        vec[e_index[c]] += 1
        v = tail
        while prev[v] is not None:
            u, t, s = prev[v]
            vec[e_index[t]] += s
            v = u
        out.append(vec)
    return out


# ---------------------------------------------------------------------------
# cut systems


@dataclass
class CutSystemVerdict:
    valid: bool
    tight: bool
    n_curves: int
    n_components: int
    reason: str = ""

    def __bool__(self):
        return self.valid


def validate_cut_system(d: ShadowDiagram, i: int) -> CutSystemVerdict:
    """Whether the Alpha(i) curves cut the surface into genus-0 pieces.

    The surface is also slit along the Shadow(i) arcs before the genus
    check: the handlebody on the family's side carries bridge disks along
    those arcs, and compressing along a bridge disk is what slitting its
    arc realizes on the surface.  For diagrams without marked points this
    changes nothing.

    The family may be redundant (parallel copies are allowed, as invariant
    systems typically are); it is ``tight`` when it consists of exactly g
    curves, no arcs, and connected complement.
    """
    m = d.surface
    g = m.genus()
    curves = _family_curves(d, i)  # raises MalformedColoring if branching
    arcs = _shadow_cells(d, i)
    if not curves and not arcs:
        verdict = g == 0
        return CutSystemVerdict(verdict, verdict, 0, 1, "" if verdict else "no curves")
    cells = set(arcs)
    for curve in curves:
        for x in curve:
            cells.add(m.cell_of("edge", x))
    cut = cut_along(m, cells)
    bad = [c for c in cut.components if c.genus != 0]
    if bad:
        return CutSystemVerdict(
            False, False, len(curves), cut.n_components, "complement has positive genus"
        )
    tight = not arcs and len(curves) == g and cut.n_components == 1
    return CutSystemVerdict(True, tight, len(curves), cut.n_components)


# ---------------------------------------------------------------------------
# Heegaard pairs


VERIFIED = "Verified"
HOMOLOGY_CERTIFIED = "HomologyCertified"
FAILED = "Failed"


@dataclass
class HeegaardVerdict:
    tier: str
    k: Optional[int]
    reason: str = ""

    def at_least_certified(self):
        return self.tier in (VERIFIED, HOMOLOGY_CERTIFIED)


def _crossing_counts(d: ShadowDiagram, curves_i, curves_j):
    """Geometric crossing counts between two curve lists (shared vertices)."""
    m = d.surface
    owner = {}
    for a, curve in enumerate(curves_i):
        for x in curve:
            owner[x] = ("i", a)
            owner[m.edge_pairing[x]] = ("i", a)
    for b, curve in enumerate(curves_j):
        for x in curve:
            owner[x] = ("j", b)
            owner[m.edge_pairing[x]] = ("j", b)
    counts = {}
    for v in m.vertices():
        orbit = m.orbit(v)
        fi = {owner[x][1] for x in orbit if x in owner and owner[x][0] == "i"}
        fj = {owner[x][1] for x in orbit if x in owner and owner[x][0] == "j"}
        for a in fi:
            for b in fj:
                counts[(a, b)] = counts.get((a, b), 0) + 1
    return counts


def _perfect_matching(n_left, n_right, allowed):
    """Simple augmenting-path bipartite matching; returns matching or None."""
    if n_left != n_right:
        return None
    match_r = [-1] * n_right

    def augment(u, seen):
        for v in range(n_right):
            if (u, v) in allowed and v not in seen:
                seen.add(v)
                if match_r[v] == -1 or augment(match_r[v], seen):
                    match_r[v] = u
                    return True
        return False

    for u in range(n_left):
        if not augment(u, set()):
            return None
    return match_r


def validate_heegaard_pair(d: ShadowDiagram, i: int, j: int, tier2_budget: int = 10_000) -> HeegaardVerdict:
    """Certify that the pair (alpha_i, alpha_j) presents #^k(S1 x S2).

    Tier 1 computes k from homology and fails on torsion.  Tier 2 upgrades
    to Verified by destabilizing dual pairs and recognizing parallel
    systems; it is sound but incomplete, and exhaustion is not an error.
    """
    vi = validate_cut_system(d, i)
    vj = validate_cut_system(d, j)
    if not (vi and vj):
        return HeegaardVerdict(FAILED, None, "not a cut system")
    h = surface_h1_mod(
        d.surface,
        curve_classes(d, i) + curve_classes(d, j)
        + shadow_cycle_classes(d, i) + shadow_cycle_classes(d, j),
    )
    if not h.is_free:
        return HeegaardVerdict(FAILED, None, "torsion %s in curve quotient" % (h,))
    k = h.rank

    # ---- tier 2 ---------------------------------------------------------
    m = d.surface
    curves_i = _family_curves(d, i)
    curves_j = _family_curves(d, j)
    counts = _crossing_counts(d, curves_i, curves_j)
    active_i = set(range(len(curves_i)))
    active_j = set(range(len(curves_j)))
    budget = tier2_budget

    def cross_total(side, idx):
        if side == "i":
            return sum(counts.get((idx, b), 0) for b in active_j)
        return sum(counts.get((a, idx), 0) for a in active_i)

    changed = True
    while changed and budget > 0:
        changed = False
        for a in sorted(active_i):
            budget -= 1
            if budget <= 0:
                break
            partners = [b for b in active_j if counts.get((a, b), 0)]
            if len(partners) == 1 and counts.get((a, partners[0]), 0) == 1:
                b = partners[0]
                if cross_total("i", a) == 1 and cross_total("j", b) == 1:
                    active_i.discard(a)
                    active_j.discard(b)
                    changed = True
    if budget <= 0:
        return HeegaardVerdict(HOMOLOGY_CERTIFIED, k, "tier-2 budget exhausted")

    if not active_i and not active_j:
        return HeegaardVerdict(VERIFIED, k)

    # remaining curves must be crossing-free and matched by annuli
    for a in active_i:
        if cross_total("i", a):
            return HeegaardVerdict(HOMOLOGY_CERTIFIED, k, "tier-2 inconclusive")
    ai = sorted(active_i)
    aj = sorted(active_j)
    if len(ai) != len(aj):
        return HeegaardVerdict(HOMOLOGY_CERTIFIED, k, "tier-2 inconclusive")
    cells = set()
    circle_owner = {}
    for a in ai:
        for x in curves_i[a]:
            cell = m.cell_of("edge", x)
            cells.add(cell)
            circle_owner[x] = ("i", a)
            circle_owner[m.edge_pairing[x]] = ("i", a)
    for b in aj:
        for x in curves_j[b]:
            cell = m.cell_of("edge", x)
            cells.add(cell)
            circle_owner[x] = ("j", b)
            circle_owner[m.edge_pairing[x]] = ("j", b)
    cut = cut_along(m, cells)
    allowed = set()
    for comp in cut.components:
        if comp.chi == 0 and comp.n_boundary == 2:
            owners = []
            for circ in comp.boundary_circles:
                who = {circle_owner[x] for x in circ}
                if len(who) == 1:
                    owners.append(who.pop())
            if len(owners) == 2:
                (s1, x1), (s2, x2) = owners
                if s1 == "i" and s2 == "j":
                    allowed.add((ai.index(x1), aj.index(x2)))
                elif s1 == "j" and s2 == "i":
                    allowed.add((ai.index(x2), aj.index(x1)))
    if _perfect_matching(len(ai), len(aj), allowed) is not None:
        return HeegaardVerdict(VERIFIED, k)
    return HeegaardVerdict(HOMOLOGY_CERTIFIED, k, "tier-2 inconclusive")


# ---------------------------------------------------------------------------
# shadow arcs and bridge data


def _shadow_components(d: ShadowDiagram, i: int):
    """Connected components of the Shadow(i) arc union, as dart sets."""
    m = d.surface
    col = shadow(i)
    darts = [x for x in range(m.n_darts) if d.dart_color(x) == col]
    parent = {x: x for x in darts}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb

    at_vertex = {}
    for x in darts:
        union(x, m.edge_pairing[x])
        at_vertex.setdefault(m.cell_of("vertex", x), []).append(x)
    for ds in at_vertex.values():
        for a, b in zip(ds, ds[1:]):
            union(a, b)
    comps = {}
    for x in darts:
        comps.setdefault(find(x), set()).add(x)
    return list(comps.values())


def _arc_end_pairing(d: ShadowDiagram, v: CellId, i: int, j: int):
    """Pair Shadow(i) with Shadow(j) arc-ends at a marked vertex by
    rotation adjacency; returns list of (dart_i, dart_j) pairs."""
    m = d.surface
    seq = []
    for x in m.orbit(v):
        c = d.dart_color(x)
        if c.kind == "shadow" and c.index in (i, j):
            seq.append((x, c.index))
    pairs = []
    seq = list(seq)
    guard = len(seq) * len(seq) + 1
    while seq and guard > 0:
        guard -= 1
        n = len(seq)
        hit = None
        for p in range(n):
            (x1, f1), (x2, f2) = seq[p], seq[(p + 1) % n]
            if {f1, f2} == {i, j}:
                hit = p
                break
        if hit is None:
            raise MalformedColoring(
                "arc-ends of families %d/%d do not pair at %r" % (i, j, v)
            )
        (x1, f1), (x2, f2) = seq[hit], seq[(hit + 1) % n]
        pairs.append((x1, x2) if f1 == i else (x2, x1))
        for idx in sorted({hit, (hit + 1) % n}, reverse=True):
            seq.pop(idx)
    return pairs


def _count_bridge_loops(d: ShadowDiagram, i: int, j: int) -> int:
    """Components of the closed 1-manifold a_i u a_j (arc families joined
    at bridge points, plus closed components of either family)."""
    m = d.surface

    def family_darts(f):
        col = shadow(f)
        return [x for x in range(m.n_darts) if d.dart_color(x) == col]

    parent = {}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb

    allx = family_darts(i) + family_darts(j)
    for x in allx:
        parent[x] = x
    for x in allx:
        union(x, m.edge_pairing[x])
    # along each family, join the two darts at an unmarked pass-through
    for f in (i, j):
        at_vertex = {}
        for x in family_darts(f):
            v = m.cell_of("vertex", x)
            if v not in d.marked:
                at_vertex.setdefault(v, []).append(x)
        for ds in at_vertex.values():
            for a, b in zip(ds, ds[1:]):
                union(a, b)
    # at marked vertices, join by the rotation-adjacency pairing
    for v in d.marked:
        for xi, xj in _arc_end_pairing(d, v, i, j):
            union(xi, xj)
    return len({find(x) for x in allx})


@dataclass
class ShadowVerdict:
    ok: bool
    b: int
    p: tuple
    reason: str = ""

    def __bool__(self):
        return self.ok

    @property
    def chi_surface(self):
        return sum(self.p) - self.b


def validate_shadow(d: ShadowDiagram) -> ShadowVerdict:
    """Check the per-family complementary-region condition and count the
    bridge parameters (b; p1, p2, p3)."""
    if len(d.marked) % 2:
        raise OddMarkedCount("%d marked vertices" % len(d.marked))
    m = d.surface
    has_shadow = any(c.kind == "shadow" for c in d.color.values())
    if not has_shadow:
        return ShadowVerdict(True, 0, (), "no shadow arcs")

    for i in (1, 2, 3):
        comps = _shadow_components(d, i)
        if not comps:
            continue
        curves = _family_curves(d, i)
        cells = set()
        for curve in curves:
            for x in curve:
                cells.add(m.cell_of("edge", x))
        if cells:
            cut = cut_along(m, cells)
            # locate each arc component in a complementary component
            where = {}
            for ci, comp in enumerate(cut.components):
                for x in comp.darts:
                    where[x] = ci
            count = {}
            for arc in comps:
                x = next(iter(arc))
                regions = {where[y] for y in arc}
                if len(regions) != 1:
                    raise ArcOutsideComplementaryDisk(
                        "shadow%d component crosses alpha%d" % (i, i)
                    )
                r = regions.pop()
                count[r] = count.get(r, 0) + 1
            for r, n in count.items():
                if n > 1:
                    raise ArcOutsideComplementaryDisk(
                        "%d shadow%d components share a complementary region" % (n, i)
                    )
        else:
            if len(comps) > 1:
                raise ArcOutsideComplementaryDisk(
                    "%d shadow%d components share a complementary region" % (len(comps), i)
                )

    b = len(d.marked) // 2
    p = tuple(_count_bridge_loops(d, i, i % 3 + 1) for i in (1, 2, 3))
    return ShadowVerdict(True, b, p)


# ---------------------------------------------------------------------------
# the full report


@dataclass
class ValidationReport:
    genus: int
    cut_verdicts: dict  # i -> CutSystemVerdict
    pair_verdicts: dict  # i -> HeegaardVerdict for the pair (i, i+1)
    shadow_verdict: Optional[ShadowVerdict]
    structural_errors: list
    chi_x: Optional[int] = None
    chi_surface: Optional[int] = None

    @property
    def k(self):
        return tuple(self.pair_verdicts[i].k for i in (1, 2, 3))

    @property
    def ok(self):
        return (
            not self.structural_errors
            and all(self.cut_verdicts[i].valid for i in (1, 2, 3))
            and all(self.pair_verdicts[i].at_least_certified() for i in (1, 2, 3))
            and (self.shadow_verdict is None or self.shadow_verdict.ok)
        )

    def gk(self):
        return self.genus, self.k

    def summary(self):
        ks = self.k
        ktxt = ",".join("?" if x is None else str(x) for x in ks)
        lines = ["(%d; %s)" % (self.genus, ktxt)]
        if self.chi_x is not None:
            lines.append("chi(X) = %d" % self.chi_x)
        if self.shadow_verdict and self.shadow_verdict.p:
            sv = self.shadow_verdict
            lines.append("bridge (%d; %s)" % (sv.b, ",".join(map(str, sv.p))))
            lines.append("chi(S) = %d" % sv.chi_surface)
        for i in (1, 2, 3):
            lines.append("alpha%d: %s" % (i, "ok" if self.cut_verdicts[i] else "invalid"))
            hv = self.pair_verdicts[i]
            lines.append("pair (%d,%d): %s k=%s" % (i, i % 3 + 1, hv.tier, hv.k))
        if self.structural_errors:
            lines.append("structural errors: " + "; ".join(self.structural_errors))
        return "\n".join(lines)


def validate_trisection(d: ShadowDiagram, tier2_budget: int = 10_000) -> ValidationReport:
    errs = d.well_formed_errors()
    g = d.surface.genus()
    cuts = {}
    pairs = {}
    for i in (1, 2, 3):
        try:
            cuts[i] = validate_cut_system(d, i)
        except MalformedColoring as e:
            cuts[i] = CutSystemVerdict(False, False, 0, 0, str(e))
    for i in (1, 2, 3):
        j = i % 3 + 1
        try:
            pairs[i] = validate_heegaard_pair(d, i, j, tier2_budget=tier2_budget)
        except MalformedColoring as e:
            pairs[i] = HeegaardVerdict(FAILED, None, str(e))
    shadow_v = None
    try:
        shadow_v = validate_shadow(d)
    except DiagramError as e:
        errs.append(str(e))
    chi_x = None
    if all(pairs[i].at_least_certified() for i in (1, 2, 3)):
        chi_x = 2 + g - sum(pairs[i].k for i in (1, 2, 3))
    chi_s = None
    if shadow_v is not None and shadow_v.p:
        chi_s = shadow_v.chi_surface
    return ValidationReport(g, cuts, pairs, shadow_v, errs, chi_x, chi_s)
