"""Finite group actions on shadow diagrams.

Actions are given by generator permutations of the dart set.  A valid
element commutes with the edge pairing and the rotation (so it is an
orientation-preserving map automorphism; anti-automorphisms inverting the
rotation are rejected), preserves each color family setwise, and preserves
the marked set.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .cmap import CellId
from .diagram import ShadowDiagram

DEFAULT_CLOSURE_CAP = 100_000


class SymmetryError(ValueError):
    pass


class NotAutomorphism(SymmetryError):
    def __init__(self, name, dart, why):
        super().__init__("generator %s is not a map automorphism at dart %d: %s" % (name, dart, why))
        self.generator = name
        self.dart = dart


class ColorBroken(SymmetryError):
    def __init__(self, name, family):
        super().__init__("generator %s does not preserve %s" % (name, family))
        self.generator = name
        self.family = family


class ClosureCapExceeded(SymmetryError):
    pass


class NonFaithful(SymmetryError):
    pass


def compose(p, q):
    """p after q as dart permutations."""
    return tuple(p[q[i]] for i in range(len(q)))


def inverse(p):
    inv = [0] * len(p)
    for i, j in enumerate(p):
        inv[j] = i
    return tuple(inv)


def perm_order(p):
    n = len(p)
    e = tuple(range(n))
    q = p
    k = 1
    while q != e:
        q = compose(p, q)
        k += 1
    return k


@dataclass
class DiagramAction:
    """A finite group of dart permutations, given by generators."""

    generators: list  # of dart-permutation tuples
    names: Optional[list] = None

    def __post_init__(self):
        self.generators = [tuple(g) for g in self.generators]
        if self.names is None:
            self.names = ["g%d" % i for i in range(len(self.generators))]
        if len(self.names) != len(self.generators):
            raise SymmetryError("one name per generator")

    def n_darts(self):
        return len(self.generators[0]) if self.generators else 0

    def elements(self, cap: int = DEFAULT_CLOSURE_CAP):
        """The closure of the generators, identity first; raises
        ClosureCapExceeded past the cap."""
        n = self.n_darts()
        ident = tuple(range(n))
        seen = {ident}
        frontier = [ident]
        out = [ident]
        while frontier:
            nxt = []
            for e in frontier:
                for g in self.generators:
                    h = compose(g, e)
                    if h not in seen:
                        seen.add(h)
                        out.append(h)
                        nxt.append(h)
                        if len(seen) > cap:
                            raise ClosureCapExceeded(
                                "closure exceeds %d elements" % cap
                            )
            frontier = nxt
        return out

    def order(self, cap: int = DEFAULT_CLOSURE_CAP):
        return len(self.elements(cap))


def identity_action(n_darts: int) -> DiagramAction:
    return DiagramAction([tuple(range(n_darts))], ["e"])


def act_on_cell(m, p, cell: CellId) -> CellId:
    return m.cell_of(cell.kind, p[cell.dart])


# ---------------------------------------------------------------------------
# validation


@dataclass
class ActionReport:
    ok: bool
    order: int
    structure_hint: str
    element_orders: dict  # order -> count
    reason: str = ""

    def __bool__(self):
        return self.ok


def _structure_hint(order, orders_count):
    if order == 1:
        return "trivial"
    if orders_count.get(order, 0) > 0:
        return "cyclic"
    if order % 2 == 0:
        n = order // 2
        if orders_count.get(2, 0) >= n and (n <= 2 or orders_count.get(n, 0) > 0):
            return "dihedral"
    return "other"


def check_action(d: ShadowDiagram, a: DiagramAction, cap: int = DEFAULT_CLOSURE_CAP) -> ActionReport:
    """Validate an action and report its order and a structure hint.

    The hint (trivial/cyclic/dihedral/other) is heuristic, from element
    orders only; correctness never depends on it.
    """
    m = d.surface
    n = m.n_darts
    for g, name in zip(a.generators, a.names):
        if len(g) != n or sorted(g) != list(range(n)):
            raise NotAutomorphism(name, -1, "not a permutation of the darts")
        for x in range(n):
            if g[m.edge_pairing[x]] != m.edge_pairing[g[x]]:
                raise NotAutomorphism(name, x, "does not commute with the edge pairing")
            if g[m.rotation[x]] != m.rotation[g[x]]:
                raise NotAutomorphism(name, x, "does not commute with the rotation")
        for e in m.edges():
            img = act_on_cell(m, g, e)
            if d.color[img] != d.color[e]:
                raise ColorBroken(name, str(d.color[e]))
        marked_img = {act_on_cell(m, g, v) for v in d.marked}
        if marked_img != d.marked:
            raise ColorBroken(name, "marked set")
    elems = a.elements(cap)
    ident = tuple(range(n))
    if m.is_connected():
        for e in elems:
            if e == ident:
                continue
            if any(e[x] == x for x in range(n)):
                raise NonFaithful("a nonidentity element fixes a dart on a connected diagram")
    orders_count = {}
    for e in elems:
        if e == ident:
            continue
        o = perm_order(e)
        orders_count[o] = orders_count.get(o, 0) + 1
    order = len(elems)
    return ActionReport(True, order, _structure_hint(order, orders_count), orders_count)


# ---------------------------------------------------------------------------
# orbits and stabilizers


def orbits(m, a: DiagramAction, cells, cap: int = DEFAULT_CLOSURE_CAP):
    """Partition of the given cells into action orbits."""
    elems = a.elements(cap)
    cells = list(cells)
    cell_set = set(cells)
    seen = set()
    out = []
    for c in cells:
        if c in seen:
            continue
        orb = {act_on_cell(m, e, c) for e in elems}
        if not orb <= cell_set:
            raise SymmetryError("orbit of %r leaves the given cell set" % (c,))
        seen |= orb
        out.append(frozenset(orb))
    # orbit-stabilizer consistency on every cell
    for orb in out:
        for c in orb:
            stab = [e for e in elems if act_on_cell(m, e, c) == c]
            if len(orb) * len(stab) != len(elems):
                raise SymmetryError("orbit-stabilizer equality fails at %r" % (c,))
    return out


def stabilizer(m, a: DiagramAction, cell: CellId, cap: int = DEFAULT_CLOSURE_CAP):
    elems = a.elements(cap)
    stab = [e for e in elems if act_on_cell(m, e, cell) == cell]
    orb = {act_on_cell(m, e, cell) for e in elems}
    if len(orb) * len(stab) != len(elems):
        raise SymmetryError("orbit-stabilizer equality fails at %r" % (cell,))
    return stab


# ---------------------------------------------------------------------------
# singular locus


@dataclass
class FixedCell:
    cell: CellId
    local_order: int


@dataclass
class ElementFixedData:
    element: tuple
    order: int
    fixed_vertices: list = field(default_factory=list)
    fixed_faces: list = field(default_factory=list)
    inverted_edges: list = field(default_factory=list)

    @property
    def n_fixed_points(self):
        return len(self.fixed_vertices) + len(self.fixed_faces) + len(self.inverted_edges)


@dataclass
class SingularReport:
    per_element: list  # ElementFixedData for each nonidentity element
    hyperelliptic_involutions: list  # elements with 2g+2 fixed points
    genus: int

    @property
    def is_free(self):
        return all(e.n_fixed_points == 0 for e in self.per_element)


def _cycle_shift_order(cycle, perm):
    """Order of perm's induced rotation on an invariant cycle of darts."""
    n = len(cycle)
    d0 = cycle[0]
    img = perm[d0]
    s = cycle.index(img)
    from math import gcd

    return n // gcd(n, s) if s else 1


def singular_locus(d: ShadowDiagram, a: DiagramAction, cap: int = DEFAULT_CLOSURE_CAP) -> SingularReport:
    """Fixed vertices/faces and inverted edges of every nonidentity
    element, with local rotation orders; flags hyperelliptic involutions
    (2g+2 fixed points on a genus-g surface)."""
    m = d.surface
    g = m.genus()
    elems = a.elements(cap)
    ident = tuple(range(m.n_darts))
    per = []
    hyper = []
    for e in elems:
        if e == ident:
            continue
        data = ElementFixedData(e, perm_order(e))
        for v in m.vertices():
            cyc = m.orbit(v)
            if act_on_cell(m, e, v) == v:
                lo = _cycle_shift_order(cyc, e)
                if lo > 1:
                    data.fixed_vertices.append(FixedCell(v, lo))
        for f in m.faces():
            if act_on_cell(m, e, f) == f:
                lo = _cycle_shift_order(m.orbit(f), e)
                if lo > 1:
                    data.fixed_faces.append(FixedCell(f, lo))
        for c in m.edges():
            x = c.dart
            if e[x] == m.edge_pairing[x]:
                data.inverted_edges.append(FixedCell(c, 2))
        per.append(data)
        if data.order == 2 and data.n_fixed_points == 2 * g + 2:
            hyper.append(e)
    return SingularReport(per, hyper, g)


# ---------------------------------------------------------------------------
# equivalence of actions


def is_equivalent_action(d: ShadowDiagram, a: DiagramAction, b: DiagramAction,
                         up_to_group_automorphism: bool = True,
                         cap: int = DEFAULT_CLOSURE_CAP) -> bool:
    """Whether some color-preserving diagram automorphism conjugates one
    action onto the other.

    With the default flag the closures are compared as sets, which ignores
    how elements are labeled (equivalence up to abstract-group
    automorphism); with the flag off, generators must match one by one
    under a single conjugator.  No claim beyond diagram equivalence.
    """
    from .cmap import automorphisms

    ea = set(a.elements(cap))
    eb = set(b.elements(cap))
    if len(ea) != len(eb):
        return False
    labels = d.dart_labels()
    for phi in automorphisms(d.surface, labels):
        phi = tuple(phi)
        phi_inv = inverse(phi)
        if up_to_group_automorphism:
            if {compose(phi, compose(e, phi_inv)) for e in ea} == eb:
                return True
        else:
            if len(a.generators) == len(b.generators) and all(
                compose(phi, compose(g, phi_inv)) == h
                for g, h in zip(a.generators, b.generators)
            ):
                return True
    return False
