"""Line-oriented, versioned file format for shadow diagrams.

    etd-diagram 1
    darts 6
    pairing 1 0 3 2 5 4
    rotation 2 5 4 1 0 3
    edge 0 shadow1
    edge 2 shadow2
    edge 4 shadow3
    marked 0 1

``edge`` lines name an edge by its smallest dart; unlisted edges are
scaffold.  ``marked`` lists marked vertices by their smallest darts.
Unknown keys and malformed counts are rejected.

Optional blocks:

    action tx 2 3 0 1 6 7 4 5
    group quaternion
    voltage 0 i
    meridian 0 j
    cone vertex 4 2
    expected 17 5 5 5

``action`` lines carry named symmetry generators as dart permutations;
``group`` names a standard deck group (see groups.group_by_name);
``voltage`` lines give one element per edge representative (identity if
unlisted, partner darts get the inverse); ``meridian`` lines attach a
branching element to a marked vertex.  ``cone`` records an orbifold point
(cell kind, representative dart, local order).  ``expected`` pins the
(genus; k1 k2 k3) the file's cover should validate to, ``?`` for an
unconstrained slot.
"""

from __future__ import annotations

import ast
from dataclasses import dataclass, field
from typing import Optional

from .cmap import build_map
from .diagram import SCAFFOLD, Color, ShadowDiagram, parse_color
from .groups import Group, GroupError, group_by_name

FORMAT_NAME = "etd-diagram"
FORMAT_VERSION = 1


class FileFormatError(ValueError):
    pass


@dataclass
class DiagramFile:
    """A parsed diagram file: the diagram plus the optional blocks."""

    diagram: ShadowDiagram
    voltages: Optional[object] = None  # cover.VoltageAssignment
    expected: Optional[tuple] = None  # (genus, (k1, k2, k3)) with None slots
    cones: list = field(default_factory=list)  # (CellId, order)
    action: Optional[object] = None  # symmetry.DiagramAction


def _element_token(x) -> str:
    if isinstance(x, str):
        return x
    return repr(x).replace(" ", "")


def _parse_element(g: Group, tok: str):
    if tok in g:
        return tok
    try:
        val = ast.literal_eval(tok)
    except (ValueError, SyntaxError):
        raise FileFormatError("cannot read group element %r" % tok)
    if val in g:
        return val
    raise FileFormatError("%r is not an element of %s" % (tok, g.name or "the group"))


def serialize_diagram(
    d: ShadowDiagram, voltages=None, expected=None, cones=(), action=None
) -> str:
    m = d.surface
    lines = [
        "%s %d" % (FORMAT_NAME, FORMAT_VERSION),
        "darts %d" % m.n_darts,
        "pairing %s" % " ".join(map(str, m.edge_pairing)),
        "rotation %s" % " ".join(map(str, m.rotation)),
    ]
    for e in m.edges():
        c = d.color[e]
        if c != SCAFFOLD:
            lines.append("edge %d %s" % (e.dart, c))
    marked = sorted(v.dart for v in d.marked)
    if marked:
        lines.append("marked %s" % " ".join(map(str, marked)))
    if action is not None:
        for perm, name in zip(action.generators, action.names):
            if sorted(perm) != list(range(m.n_darts)):
                raise FileFormatError(
                    "action generator %s is not a dart permutation" % name
                )
            lines.append("action %s %s" % (name, " ".join(map(str, perm))))
    if voltages is not None:
        g = voltages.group
        if not g.name:
            raise FileFormatError("deck group has no serializable name")
        lines.append("group %s" % g.name)
        filled = {}
        for e in m.edges():
            x, y = e.dart, m.edge_pairing[e.dart]
            if x in voltages.voltage:
                filled[x] = voltages.voltage[x]
            elif y in voltages.voltage:
                filled[x] = g.inv(voltages.voltage[y])
            else:
                filled[x] = g.identity
            filled[y] = g.inv(filled[x])
        va = type(voltages)(g, filled, voltages.meridians).validated(d)
        for e in m.edges():
            w = va.voltage[e.dart]
            if w != g.identity:
                lines.append("voltage %d %s" % (e.dart, _element_token(w)))
        for v in sorted(va.meridians, key=lambda c: c.dart):
            w = va.meridians[v]
            if w != g.identity:
                lines.append("meridian %d %s" % (v.dart, _element_token(w)))
    for cell, order in cones:
        lines.append("cone %s %d %d" % (cell.kind, cell.dart, order))
    if expected is not None:
        genus, ks = expected
        lines.append(
            "expected %d %s" % (genus, " ".join("?" if k is None else str(k) for k in ks))
        )
    return "\n".join(lines) + "\n"


def parse_diagram_file(text: str) -> DiagramFile:
    rows = [ln.strip() for ln in text.splitlines()]
    rows = [ln for ln in rows if ln and not ln.startswith("#")]
    if not rows:
        raise FileFormatError("empty diagram file")
    head = rows[0].split()
    if len(head) != 2 or head[0] != FORMAT_NAME:
        raise FileFormatError("not a %s file" % FORMAT_NAME)
    if head[1] != str(FORMAT_VERSION):
        raise FileFormatError("unsupported version %r" % head[1])

    n = None
    pairing = None
    rotation = None
    colors = []  # (dart, Color)
    marked_darts = None
    group = None
    action_rows = []  # (name, permutation)
    voltage_rows = []  # (dart, token)
    meridian_rows = []  # (dart, token)
    cone_rows = []  # (kind, dart, order)
    expected = None
    for ln in rows[1:]:
        parts = ln.split()
        key = parts[0]
        if key == "darts":
            if n is not None or len(parts) != 2:
                raise FileFormatError("bad darts line")
            n = int(parts[1])
        elif key == "pairing":
            if pairing is not None:
                raise FileFormatError("duplicate pairing line")
            pairing = [int(x) for x in parts[1:]]
        elif key == "rotation":
            if rotation is not None:
                raise FileFormatError("duplicate rotation line")
            rotation = [int(x) for x in parts[1:]]
        elif key == "edge":
            if len(parts) != 3:
                raise FileFormatError("bad edge line %r" % ln)
            colors.append((int(parts[1]), parse_color(parts[2])))
        elif key == "marked":
            if marked_darts is not None:
                raise FileFormatError("duplicate marked line")
            marked_darts = [int(x) for x in parts[1:]]
        elif key == "group":
            if group is not None:
                raise FileFormatError("duplicate group line")
            try:
                group = group_by_name(" ".join(parts[1:]))
            except GroupError as err:
                raise FileFormatError(str(err))
        elif key == "action":
            if len(parts) < 3:
                raise FileFormatError("bad action line %r" % ln)
            action_rows.append((parts[1], [int(x) for x in parts[2:]]))
        elif key == "voltage":
            if len(parts) != 3:
                raise FileFormatError("bad voltage line %r" % ln)
            voltage_rows.append((int(parts[1]), parts[2]))
        elif key == "meridian":
            if len(parts) != 3:
                raise FileFormatError("bad meridian line %r" % ln)
            meridian_rows.append((int(parts[1]), parts[2]))
        elif key == "cone":
            if len(parts) != 4:
                raise FileFormatError("bad cone line %r" % ln)
            cone_rows.append((parts[1], int(parts[2]), int(parts[3])))
        elif key == "expected":
            if expected is not None:
                raise FileFormatError("duplicate expected line")
            if len(parts) != 5:
                raise FileFormatError("bad expected line %r" % ln)
            ks = tuple(None if p == "?" else int(p) for p in parts[2:])
            expected = (int(parts[1]), ks)
        else:
            raise FileFormatError("unknown key %r" % key)
    if n is None or pairing is None or rotation is None:
        raise FileFormatError("missing darts/pairing/rotation")
    if len(pairing) != n or len(rotation) != n:
        raise FileFormatError("pairing/rotation length disagrees with darts")
    m = build_map(n, pairing, rotation)
    edge_cells = {e.dart: e for e in m.edges()}
    color = {}
    for dart, c in colors:
        if dart not in edge_cells:
            raise FileFormatError("edge %d is not an edge representative" % dart)
        if edge_cells[dart] in color:
            raise FileFormatError("edge %d colored twice" % dart)
        color[edge_cells[dart]] = c
    marked = set()
    vertex_cells = {v.dart: v for v in m.vertices()}
    if marked_darts:
        for dart in marked_darts:
            if dart not in vertex_cells:
                raise FileFormatError("dart %d is not a vertex representative" % dart)
            marked.add(vertex_cells[dart])
    d = ShadowDiagram(m, color, marked)

    action = None
    if action_rows:
        from .symmetry import DiagramAction

        for name, perm in action_rows:
            if sorted(perm) != list(range(n)):
                raise FileFormatError(
                    "action generator %s is not a dart permutation" % name
                )
        action = DiagramAction(
            [tuple(perm) for _, perm in action_rows], [name for name, _ in action_rows]
        )

    voltages = None
    if group is not None:
        from .cover import CoverError, VoltageAssignment

        volt = {x: group.identity for x in range(n)}
        for dart, tok in voltage_rows:
            if dart not in edge_cells:
                raise FileFormatError("voltage dart %d is not an edge representative" % dart)
            w = _parse_element(group, tok)
            volt[dart] = w
            volt[m.edge_pairing[dart]] = group.inv(w)
        mer = {}
        for dart, tok in meridian_rows:
            if dart not in vertex_cells:
                raise FileFormatError("meridian dart %d is not a vertex representative" % dart)
            mer[vertex_cells[dart]] = _parse_element(group, tok)
        try:
            voltages = VoltageAssignment(group, volt, mer).validated(d)
        except CoverError as err:
            raise FileFormatError(str(err))
    elif voltage_rows or meridian_rows:
        raise FileFormatError("voltage/meridian lines without a group line")

    cones = []
    for kind, dart, order in cone_rows:
        try:
            cell = m.cell_of(kind, dart)
        except Exception:
            raise FileFormatError("no %s cell at dart %d" % (kind, dart))
        if cell.dart != dart:
            raise FileFormatError("cone dart %d is not a cell representative" % dart)
        cones.append((cell, order))
    return DiagramFile(d, voltages, expected, cones, action)


def parse_diagram(text: str) -> ShadowDiagram:
    return parse_diagram_file(text).diagram
