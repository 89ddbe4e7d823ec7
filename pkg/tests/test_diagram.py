import pytest

from etd.cmap import build_map
from etd.diagram import (
    ArcOutsideComplementaryDisk,
    Color,
    DiagramError,
    MalformedColoring,
    OddMarkedCount,
    SCAFFOLD,
    ShadowDiagram,
    alpha,
    curve_classes,
    parse_color,
    shadow,
    validate_cut_system,
    validate_heegaard_pair,
    validate_shadow,
    validate_trisection,
)


def edge_cell(m, dart):
    return m.cell_of("edge", dart)


def vertex_cell(m, dart):
    return m.cell_of("vertex", dart)


# ---------------------------------------------------------------------------
# fixtures


def three_line_torus():
    """Torus with geodesics of slopes (1,0), (0,1), (1,1), pairwise
    crossing once.  Edges: {0,1},{2,3} slope (1,0); {4,5},{6,7} slope
    (0,1); {8,9},{10,11} slope (1,1)."""
    ep = [1, 0, 3, 2, 5, 4, 7, 6, 9, 8, 11, 10]
    rot = [4, 11, 8, 7, 3, 10, 9, 0, 1, 5, 6, 2]
    return build_map(12, ep, rot)


def standard_torus_diagram():
    m = three_line_torus()
    color = {
        edge_cell(m, 0): alpha(1),
        edge_cell(m, 2): alpha(1),
        edge_cell(m, 4): alpha(2),
        edge_cell(m, 6): alpha(2),
        edge_cell(m, 8): alpha(3),
        edge_cell(m, 10): alpha(3),
    }
    return ShadowDiagram(m, color)


def parallel_torus_map():
    """Torus with three disjoint horizontal loops (edges {0,1},{4,5},{8,9})
    threaded on one vertical circle (edges {2,6},{7,10},{11,3})."""
    ep = [1, 0, 6, 11, 5, 4, 2, 10, 9, 8, 7, 3]
    rot = [2, 3, 1, 0, 7, 6, 4, 5, 11, 10, 8, 9]
    return build_map(12, ep, rot)


def parallel_torus_diagram():
    m = parallel_torus_map()
    color = {
        edge_cell(m, 0): alpha(1),
        edge_cell(m, 4): alpha(2),
        edge_cell(m, 8): alpha(3),
    }
    return ShadowDiagram(m, color)


def lens_torus_diagram():
    """Torus with a (0,1) curve and a (2,1) curve crossing twice; the pair
    presents a lens space with H1 = Z/2."""
    ep = [1, 0, 3, 2, 5, 4, 7, 6]
    rot = [7, 6, 5, 4, 0, 1, 2, 3]
    m = build_map(8, ep, rot)
    color = {
        edge_cell(m, 0): alpha(1),
        edge_cell(m, 2): alpha(1),
        edge_cell(m, 4): alpha(2),
        edge_cell(m, 6): alpha(2),
    }
    return ShadowDiagram(m, color)


def theta_sphere_diagram():
    """Sphere with two marked vertices joined by one arc of each family:
    the 1-bridge diagram of the unknotted sphere."""
    ep = [1, 0, 3, 2, 5, 4]
    rot = [2, 5, 4, 1, 0, 3]
    m = build_map(6, ep, rot)
    color = {
        edge_cell(m, 0): shadow(1),
        edge_cell(m, 2): shadow(2),
        edge_cell(m, 4): shadow(3),
    }
    marked = [vertex_cell(m, 0), vertex_cell(m, 1)]
    return ShadowDiagram(m, color, marked)


# ---------------------------------------------------------------------------
# colors


def test_color_roundtrip():
    assert str(alpha(2)) == "alpha2"
    assert str(shadow(3)) == "shadow3"
    assert str(SCAFFOLD) == "scaffold"
    for t in ("alpha1", "shadow2", "scaffold"):
        assert str(parse_color(t)) == t
    with pytest.raises(DiagramError):
        parse_color("beta1")
    with pytest.raises(DiagramError):
        Color("alpha", 4)
    with pytest.raises(DiagramError):
        Color("scaffold", 1)


def test_diagram_defaults_and_checks():
    m = three_line_torus()
    d = ShadowDiagram(m)
    assert all(c == SCAFFOLD for c in d.color.values())
    with pytest.raises(DiagramError):
        ShadowDiagram(m, {m.cell_of("vertex", 0): alpha(1)})
    with pytest.raises(DiagramError):
        ShadowDiagram(m, marked=[m.cell_of("edge", 0)])


def test_vertex_kinds():
    d = standard_torus_diagram()
    for v in d.surface.vertices():
        assert d.vertex_kind(v) == "Crossing"
    t = theta_sphere_diagram()
    for v in t.marked:
        assert t.vertex_kind(v) == "BridgePoint"


# ---------------------------------------------------------------------------
# cut systems


def test_standard_torus_cut_systems():
    d = standard_torus_diagram()
    for i in (1, 2, 3):
        v = validate_cut_system(d, i)
        assert v.valid and v.tight
        assert v.n_curves == 1


def test_parallel_torus_cut_systems():
    d = parallel_torus_diagram()
    for i in (1, 2, 3):
        v = validate_cut_system(d, i)
        assert v.valid and v.tight and v.n_curves == 1


def test_redundant_family_valid_but_not_tight():
    m = parallel_torus_map()
    color = {
        edge_cell(m, 0): alpha(1),
        edge_cell(m, 4): alpha(1),
        edge_cell(m, 8): alpha(2),
    }
    d = ShadowDiagram(m, color)
    v = validate_cut_system(d, 1)
    assert v.valid and not v.tight
    assert v.n_curves == 2 and v.n_components == 2
    # empty family on a positive-genus surface is not a cut system
    assert not validate_cut_system(d, 3).valid


def test_branching_family_rejected():
    m = three_line_torus()
    # one (1,0) edge and one (0,1) edge: ends of valence 1
    color = {edge_cell(m, 0): alpha(1), edge_cell(m, 4): alpha(1)}
    d = ShadowDiagram(m, color)
    with pytest.raises(MalformedColoring):
        validate_cut_system(d, 1)


def test_curve_classes_primitive():
    d = standard_torus_diagram()
    for i in (1, 2, 3):
        (vec,) = curve_classes(d, i)
        assert sum(abs(x) for x in vec) == 2  # two edges traversed once


# ---------------------------------------------------------------------------
# Heegaard pairs


def test_standard_torus_pairs_verified():
    d = standard_torus_diagram()
    for i, j in ((1, 2), (2, 3), (3, 1)):
        v = validate_heegaard_pair(d, i, j)
        assert v.tier == "Verified"
        assert v.k == 0


def test_parallel_torus_pairs_verified_k1():
    d = parallel_torus_diagram()
    for i, j in ((1, 2), (2, 3), (3, 1)):
        v = validate_heegaard_pair(d, i, j)
        assert v.tier == "Verified"
        assert v.k == 1


def test_lens_pair_fails_on_torsion():
    d = lens_torus_diagram()
    v = validate_heegaard_pair(d, 1, 2)
    assert v.tier == "Failed"
    assert "Z/2" in v.reason


def test_budget_exhaustion_downgrades():
    d = standard_torus_diagram()
    v = validate_heegaard_pair(d, 1, 2, tier2_budget=1)
    assert v.tier == "HomologyCertified"
    assert v.k == 0


# ---------------------------------------------------------------------------
# shadows


def test_unknotted_sphere_bridge_parameters():
    d = theta_sphere_diagram()
    v = validate_shadow(d)
    assert v.ok
    assert v.b == 1
    assert v.p == (1, 1, 1)
    assert v.chi_surface == 2


def test_odd_marked_count():
    m = three_line_torus()
    d = ShadowDiagram(m, marked=[m.cell_of("vertex", 0)])
    with pytest.raises(OddMarkedCount):
        validate_shadow(d)


def test_two_arcs_in_one_region_rejected():
    # a 4-cycle on the sphere, opposite edges shadow1, all vertices marked
    ep = [1, 0, 3, 2, 5, 4, 7, 6]
    rot = [7, 2, 1, 4, 3, 6, 5, 0]
    m = build_map(8, ep, rot)
    assert m.genus() == 0
    color = {edge_cell(m, 0): shadow(1), edge_cell(m, 4): shadow(1)}
    marked = [m.cell_of("vertex", d) for d in (0, 1, 4, 5)]
    d = ShadowDiagram(m, color, marked)
    with pytest.raises(ArcOutsideComplementaryDisk):
        validate_shadow(d)


def test_no_shadow_arcs_is_fine():
    d = standard_torus_diagram()
    v = validate_shadow(d)
    assert v.ok and v.b == 0 and v.p == ()


# ---------------------------------------------------------------------------
# well-formedness


def test_non_alternating_crossing_flagged():
    m = three_line_torus()
    # adjacent darts at the (1,0)/(0,1) crossing get the same family
    color = {
        edge_cell(m, 0): alpha(1),
        edge_cell(m, 4): alpha(1),
        edge_cell(m, 2): alpha(2),
        edge_cell(m, 6): alpha(2),
    }
    d = ShadowDiagram(m, color)
    errs = d.well_formed_errors()
    assert any("alternate" in e for e in errs)


def test_well_formed_clean_fixtures():
    assert standard_torus_diagram().well_formed_errors() == []
    assert parallel_torus_diagram().well_formed_errors() == []
    assert theta_sphere_diagram().well_formed_errors() == []


# ---------------------------------------------------------------------------
# full report


def test_standard_torus_report():
    r = validate_trisection(standard_torus_diagram())
    assert r.ok
    assert r.gk() == (1, (0, 0, 0))
    assert r.chi_x == 3
    assert "(1; 0,0,0)" in r.summary()


def test_parallel_torus_report():
    r = validate_trisection(parallel_torus_diagram())
    assert r.ok
    assert r.gk() == (1, (1, 1, 1))
    assert r.chi_x == 0


def test_theta_sphere_report():
    r = validate_trisection(theta_sphere_diagram())
    assert r.ok
    assert r.genus == 0
    assert r.k == (0, 0, 0)
    assert r.chi_x == 2
    assert r.chi_surface == 2
    assert "bridge (1; 1,1,1)" in r.summary()


def test_report_flags_failures():
    r = validate_trisection(lens_torus_diagram())
    assert not r.ok
    assert r.pair_verdicts[1].tier == "Failed"


def test_diagram_isomorphism_respects_colors():
    d1 = standard_torus_diagram()
    d2 = standard_torus_diagram()
    assert d1.isomorphic_to(d2) is not None
    assert d1.canonical() == d2.canonical()
    # permuting families changes the ordered-color type only if no
    # orientation-preserving symmetry restores it; the slope triple
    # (1,0),(0,1),(1,1) admits the 3-cycle but not a transposition
    m = three_line_torus()
    shifted = {
        edge_cell(m, 0): alpha(2),
        edge_cell(m, 2): alpha(2),
        edge_cell(m, 4): alpha(3),
        edge_cell(m, 6): alpha(3),
        edge_cell(m, 8): alpha(1),
        edge_cell(m, 10): alpha(1),
    }
    assert d1.isomorphic_to(ShadowDiagram(m, shifted)) is not None
    swapped = {
        edge_cell(m, 0): alpha(2),
        edge_cell(m, 2): alpha(2),
        edge_cell(m, 4): alpha(1),
        edge_cell(m, 6): alpha(1),
        edge_cell(m, 8): alpha(3),
        edge_cell(m, 10): alpha(3),
    }
    assert d1.isomorphic_to(ShadowDiagram(m, swapped)) is None
