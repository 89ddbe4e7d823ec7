"""Integer linear algebra and closed-form parameter calculators.

Everything is exact: matrices are lists of Python-int rows, so there is no
overflow and no rational shortcut that could hide torsion.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .cmap import CombMap


class InvariantError(ValueError):
    pass


class NotSphere(InvariantError):
    pass


class EdgeInversionUnresolved(InvariantError):
    pass


# ---------------------------------------------------------------------------
# Smith normal form


def _identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def smith_normal_form(M):
    """Smith normal form over the integers.

    Returns (D, U, V) with U*M*V = D, U and V unimodular, D diagonal with
    each invariant factor dividing the next.  Pivoting is deterministic:
    smallest nonzero magnitude, ties broken by (row, column) index.
    """
    A = [[int(x) for x in row] for row in M]
    rows = len(A)
    cols = len(A[0]) if rows else 0
    U = _identity(rows)
    V = _identity(cols)

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for r in A:
            r[i], r[j] = r[j], r[i]
        for r in V:
            r[i], r[j] = r[j], r[i]

    def add_row(dst, src, k):
        # row dst += k * row src
        A[dst] = [a + k * b for a, b in zip(A[dst], A[src])]
        U[dst] = [a + k * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, k):
        for r in A:
            r[dst] += k * r[src]
        for r in V:
            r[dst] += k * r[src]

    def negate_row(i):
        A[i] = [-x for x in A[i]]
        U[i] = [-x for x in U[i]]

    def pivot(s):
        best = None
        for i in range(s, rows):
            for j in range(s, cols):
                a = A[i][j]
                if a and (best is None or abs(a) < abs(A[best[0]][best[1]])):
                    best = (i, j)
        return best

    s = 0
    while s < min(rows, cols):
        p = pivot(s)
        if p is None:
            break
        swap_rows(s, p[0])
        swap_cols(s, p[1])
        # clear column s, then row s, re-selecting the globally smallest
        # pivot after every pass: any nonzero remainder strictly shrinks
        # the pivot, and never promoting a freshly reduced row keeps the
        # intermediate entries from feeding back on themselves
        if any(A[i][s] for i in range(s + 1, rows)):
            for i in range(s + 1, rows):
                if A[i][s]:
                    add_row(i, s, -(A[i][s] // A[s][s]))
            continue
        if any(A[s][j] for j in range(s + 1, cols)):
            for j in range(s + 1, cols):
                if A[s][j]:
                    add_col(j, s, -(A[s][j] // A[s][s]))
            continue
        # enforce divisibility: fold any non-divisible entry into column s
        culprit = None
        for i in range(s + 1, rows):
            for j in range(s + 1, cols):
                if A[i][j] % A[s][s]:
                    culprit = i
                    break
            if culprit is not None:
                break
        if culprit is not None:
            add_row(s, culprit, 1)
            continue
        if A[s][s] < 0:
            negate_row(s)
        s += 1
    D = A
    return D, U, V


def invariant_factors(M):
    D, _, _ = smith_normal_form(M)
    out = []
    for i in range(min(len(D), len(D[0]) if D else 0)):
        if D[i][i]:
            out.append(abs(D[i][i]))
    return out


def matrix_rank(M):
    return len(invariant_factors(M))


@dataclass(frozen=True)
class AbelianGroup:
    """A finitely generated abelian group in invariant-factor form."""

    rank: int
    torsion: tuple = ()

    def __post_init__(self):
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a:
                raise InvariantError("torsion coefficients must form a divisibility chain")
        if any(t <= 1 for t in self.torsion):
            raise InvariantError("torsion coefficients must exceed 1")

    @property
    def is_trivial(self):
        return self.rank == 0 and not self.torsion

    @property
    def is_free(self):
        return not self.torsion

    def __str__(self):
        parts = []
        if self.rank == 1:
            parts.append("Z")
        elif self.rank > 1:
            parts.append("Z^%d" % self.rank)
        parts.extend("Z/%d" % t for t in self.torsion)
        return " + ".join(parts) if parts else "0"


def _invariant_factors_sparse(relation_rows):
    """Invariant factors, eliminating unit pivots sparsely first.

    Relation matrices from surfaces are mostly 0/+-1; peeling unit pivots
    (each contributing an invariant factor 1) leaves a small residue for
    the dense routine.
    """
    rows = {}
    col_rows = {}
    for ri, row in enumerate(relation_rows):
        r = {j: int(v) for j, v in enumerate(row) if v}
        if r:
            rows[ri] = r
            for j in r:
                col_rows.setdefault(j, set()).add(ri)
    n_unit = 0
    while True:
        pivot = None
        for ri, r in rows.items():
            for j, v in r.items():
                if v in (1, -1):
                    pivot = (ri, j, v)
                    break
            if pivot:
                break
        if pivot is None:
            break
        ri, j, v = pivot
        prow = rows.pop(ri)
        for c in prow:
            col_rows[c].discard(ri)
        for oi in list(col_rows.get(j, ())):
            orow = rows[oi]
            k = -orow[j] * v  # orow += k * prow clears column j
            for c, pv in prow.items():
                nv = orow.get(c, 0) + k * pv
                if nv:
                    orow[c] = nv
                    col_rows.setdefault(c, set()).add(oi)
                else:
                    orow.pop(c, None)
                    col_rows[c].discard(oi)
            if not orow:
                del rows[oi]
        n_unit += 1
    residue = [1] * n_unit
    if rows:
        live_cols = sorted({c for r in rows.values() for c in r})
        cix = {c: i for i, c in enumerate(live_cols)}
        dense = []
        for r in rows.values():
            row = [0] * len(live_cols)
            for c, v in r.items():
                row[cix[c]] = v
            dense.append(row)
        residue.extend(invariant_factors(dense))
    return residue


def cokernel(n_ambient, relation_rows) -> AbelianGroup:
    """Z^n modulo the subgroup generated by the given row vectors."""
    if not relation_rows:
        return AbelianGroup(n_ambient)
    facs = _invariant_factors_sparse(relation_rows)
    torsion = tuple(sorted(f for f in facs if f > 1))
    return AbelianGroup(n_ambient - len(facs), torsion)


# ---------------------------------------------------------------------------
# surface homology


def _kernel_basis(M):
    """Integer basis of the kernel of the linear map x -> M x (columns)."""
    rows = len(M)
    cols = len(M[0]) if rows else 0
    if cols == 0:
        return []
    if rows == 0:
        return [[1 if i == j else 0 for j in range(cols)] for i in range(cols)]
    D, U, V = smith_normal_form(M)
    r = sum(1 for i in range(min(rows, cols)) if D[i][i])
    # columns r..cols-1 of V span the kernel
    basis = []
    for j in range(r, cols):
        basis.append([V[i][j] for i in range(cols)])
    return basis


def _solve_in_lattice(basis_rows, vectors):
    """Express each vector in the given independent integer basis.

    The basis rows are assumed primitive and saturated (a direct summand),
    which holds for kernels of integer matrices.  Returns coefficient rows.
    """
    if not vectors:
        return []
    if not basis_rows:
        for v in vectors:
            if any(v):
                raise InvariantError("vector outside the lattice")
        return [[] for _ in vectors]
    # solve c * B = v for each v using SNF of B
    B = [list(r) for r in basis_rows]
    D, U, V = smith_normal_form(B)
    k = len(B)
    n = len(B[0])
    out = []
    for v in vectors:
        # v * V = c' * D with c' = c * U^{-1}; so c'_i = (v*V)_i / d_i
        w = [sum(v[i] * V[i][j] for i in range(n)) for j in range(n)]
        cprime = []
        for i in range(k):
            d = D[i][i]
            if d == 0:
                if w[i]:
                    raise InvariantError("vector outside the lattice span")
                cprime.append(0)
            else:
                if w[i] % d:
                    raise InvariantError("vector not an integer combination")
                cprime.append(w[i] // d)
        for j in range(k, n):
            if w[j]:
                raise InvariantError("vector outside the lattice span")
        c = [sum(cprime[i] * U[i][j] for i in range(k)) for j in range(k)]
        out.append(c)
    return out


def surface_h1_mod(m: CombMap, extra_cycles=None) -> AbelianGroup:
    """H1 of a closed surface map modulo the listed extra cycle vectors.

    H1 is cycles-mod-face-boundaries over the edge lattice; the extra
    vectors (one per curve, over the edge basis) are quotiented out as well.
    """
    edges = m.edges()
    verts = m.vertices()
    faces = m.faces()
    e_index = {c: i for i, c in enumerate(edges)}

    # cycle space basis from a spanning forest: each non-tree edge spans
    # one fundamental cycle, and any cycle's coefficient on it is just
    # the cycle's entry at that edge
    head_tail = []
    for c in edges:
        head_tail.append(
            (m.cell_of("vertex", c.dart), m.cell_of("vertex", m.edge_pairing[c.dart]))
        )
    in_tree = [False] * len(edges)
    seen = set()
    for root in verts:
        if root in seen:
            continue
        seen.add(root)
        frontier = [root]
        while frontier:
            nxt = []
            for u in frontier:
                for x in m.orbit(u):
                    c = m.cell_of("edge", x)
                    w = m.cell_of("vertex", m.edge_pairing[x])
                    if w not in seen:
                        seen.add(w)
                        in_tree[e_index[c]] = True
                        nxt.append(w)
            frontier = nxt
    nontree = [j for j in range(len(edges)) if not in_tree[j]]

    rels = []
    for f in faces:
        row = [0] * len(edges)
        for d in m.orbit(f):
            c = m.cell_of("edge", d)
            row[e_index[c]] += 1 if d == c.dart else -1
        rels.append(row)
    if extra_cycles:
        for v in extra_cycles:
            if len(v) != len(edges):
                raise InvariantError("cycle vector length disagrees with the edge count")
            rels.append(list(v))

    # verify each relation really is a cycle before projecting it
    for row in rels:
        bnd = {}
        for j, a in enumerate(row):
            if a:
                tail, head = head_tail[j]
                bnd[head] = bnd.get(head, 0) + a
                bnd[tail] = bnd.get(tail, 0) - a
        if any(bnd.values()):
            raise InvariantError("relation vector is not a cycle")

    coeffs = [[row[j] for j in nontree] for row in rels]
    return cokernel(len(nontree), coeffs)


def h1_mod_curves(d, families) -> AbelianGroup:
    """H1 of the diagram surface modulo the curve classes of the families.

    With one family this is the handlebody H1 (Z^g for a genuine cut
    system); with all three it is H1 of the trisected 4-manifold.  Cycles
    supported on a family's shadow arcs bound bridge disks on the
    handlebody side and are quotiented alongside the curves.
    """
    from .diagram import curve_classes, shadow_cycle_classes  # avoids a cycle

    vectors = []
    for i in families:
        vectors.extend(curve_classes(d, i))
        vectors.extend(shadow_cycle_classes(d, i))
    return surface_h1_mod(d.surface, vectors)


# ---------------------------------------------------------------------------
# closed-form parameter calculators


@dataclass
class PolyhedralGraphData:
    """A polyhedral graph on the sphere with its acting-group bookkeeping.

    ``extension_order`` is the order of the lifted group acting on the
    trisection surface; ``edge_orbits`` the number of group orbits of the
    graph's edges.  Inverted edges must already have been replaced by
    parallel bigon pairs (set ``has_unresolved_inversions`` otherwise).
    """

    graph: CombMap
    group_order: int
    extension_order: int
    vertex_orbits: int
    edge_orbits: int
    has_unresolved_inversions: bool = False


def pu3_parameters(p: PolyhedralGraphData):
    """Trisection parameters of the projective-plane family from a
    polyhedral graph: g = |G~| * |O_E| + 1, k = (0, |V|-1, g-|V|)."""
    if p.has_unresolved_inversions:
        raise EdgeInversionUnresolved("replace inverted edges by parallel bigons first")
    if p.graph.genus() != 0:
        raise NotSphere("the polyhedral graph must be drawn on the sphere")
    n_vertices = len(p.graph.vertices())
    g = p.extension_order * p.edge_orbits + 1
    k1 = 0
    k2 = n_vertices - 1
    k3 = g - n_vertices
    chi = 2 + g - (k1 + k2 + k3)
    if chi != 3:
        raise InvariantError("parameter identity failed: chi = %d" % chi)
    return g, (k1, k2, k3)


def free_action_genus_bound(group_order: int, handlebody_genus: int):
    """Whether a free action of the given order fits the genus: requires
    genus = 1 mod order; returns (verdict, quotient_genus_or_None)."""
    if group_order < 1:
        raise InvariantError("group order must be positive")
    if (handlebody_genus - 1) % group_order:
        return False, None
    mu = (handlebody_genus - 1) // group_order + 1
    if mu < 0:
        return False, None
    return True, mu
