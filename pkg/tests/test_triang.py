import random

import pytest

from etd.diagio import FileFormatError
from etd.triang import (
    GenusMismatch,
    GTriangulation,
    NonSimplicialAction,
    NotClosedSurface,
    OpenFacet,
    SurfaceNotInvariant,
    TriangError,
    boundary_five_simplex,
    bridge_parameters,
    csaszar_torus,
    cyclic_polytope_boundary,
    double_four_simplex,
    parse_triangulation,
    serialize_triangulation,
    sigma_oracle,
    tetrahedral_sphere,
    trisection_parameters,
    validate_triangulation,
)


def test_boundary_five_simplex_counts():
    K = boundary_five_simplex()
    assert K.counts() == (6, 15, 20, 15, 6)
    assert validate_triangulation(K)


def test_boundary_five_simplex_parameters():
    r = trisection_parameters(boundary_five_simplex())
    assert r.k == (19, 26, 136)
    assert r.genus == 181
    assert r.chi_simplex == 2
    assert r.chi_trisection == 2


def test_double_four_simplex_parameters():
    K = double_four_simplex()
    assert K.counts() == (5, 10, 10, 5, 2)
    r = trisection_parameters(K)
    assert r.k == (4, 6, 41)
    assert r.genus == 51
    assert r.chi_simplex == 2


def test_oracle_agrees_on_spheres():
    for K in (boundary_five_simplex(), double_four_simplex()):
        assert sigma_oracle(K) == trisection_parameters(K).genus


def test_oracle_agrees_on_cyclic_polytope():
    K = cyclic_polytope_boundary()
    r = trisection_parameters(K)
    assert r.chi_simplex == 2
    assert sigma_oracle(K) == r.genus == 379


def conjugated_generators(K, perm):
    inv = [0] * len(perm)
    for i, v in enumerate(perm):
        inv[v] = i
    return [
        tuple(perm[g[inv[x]]] for x in range(K.n_vertices)) for g in K.generators
    ]


def test_parameters_invariant_under_relabeling():
    rng = random.Random(7)
    for K in (boundary_five_simplex(), cyclic_polytope_boundary()):
        base = trisection_parameters(K)
        for _ in range(5):
            perm = list(range(K.n_vertices))
            rng.shuffle(perm)
            K2 = GTriangulation(
                K.n_vertices,
                [tuple(perm[v] for v in p) for p in K.pentachora],
                conjugated_generators(K, perm),
                K.generator_names,
                [[tuple(perm[v] for v in tri) for tri in s] for s in K.surfaces],
            )
            r2 = trisection_parameters(K2)
            assert (r2.genus, r2.k, r2.bridge) == (base.genus, base.k, base.bridge)
            assert sigma_oracle(K2) == base.genus


def test_open_facet_rejected():
    with pytest.raises(OpenFacet):
        validate_triangulation(GTriangulation(5, [tuple(range(5))]))


def test_disconnected_rejected():
    p1 = tuple(range(5))
    p2 = tuple(range(5, 10))
    with pytest.raises(TriangError, match="connected"):
        validate_triangulation(GTriangulation(10, [p1, p1, p2, p2]))


def test_non_simplicial_generator_rejected():
    K = double_four_simplex()
    bad = GTriangulation(5, K.pentachora, [(0, 1, 2, 3, 3)], ["bad"])
    with pytest.raises(NonSimplicialAction):
        validate_triangulation(bad)


def test_non_pentachoron_preserving_generator_rejected():
    K = cyclic_polytope_boundary()
    # swapping vertices 0 and 1 does not preserve the facet list
    swap01 = (1, 0, 2, 3, 4, 5, 6)
    bad = GTriangulation(7, K.pentachora, [swap01], ["swap01"])
    with pytest.raises(NonSimplicialAction):
        validate_triangulation(bad)


def test_open_surface_in_triangulation_rejected():
    K = boundary_five_simplex()
    bad = GTriangulation(6, K.pentachora, surfaces=[[(0, 1, 2)]])
    with pytest.raises(NotClosedSurface):
        validate_triangulation(bad)


def test_surface_invariance_checked():
    K = boundary_five_simplex()
    sphere = tetrahedral_sphere()  # lives on vertices 0..3
    bad = GTriangulation(6, K.pentachora, [(1, 2, 3, 4, 5, 0)], ["cycle"], [sphere])
    with pytest.raises(SurfaceNotInvariant):
        validate_triangulation(bad)


def test_bridge_parameters_tetrahedral_sphere():
    K = boundary_five_simplex()
    b, p = bridge_parameters(K, tetrahedral_sphere())
    assert (b, p) == (12, (4, 4, 6))
    assert sum(p) - b == 2


def test_bridge_parameters_seven_vertex_torus():
    K = cyclic_polytope_boundary()
    b, p = bridge_parameters(K, csaszar_torus())
    assert (b, p) == (42, (7, 14, 21))
    assert sum(p) - b == 0


def test_bridge_parameters_additive_on_disjoint_spheres():
    # bridge counting only needs the 2-skeleton, so an unglued carrier
    # complex suffices to host two vertex-disjoint tetrahedral spheres
    K = GTriangulation(10, [tuple(range(5)), tuple(range(5, 10))])
    near = tetrahedral_sphere()
    far = [tuple(v + 5 for v in t) for t in tetrahedral_sphere()]
    b, p = bridge_parameters(K, near + far)
    assert (b, p) == (24, (8, 8, 12))
    assert sum(p) - b == 4


def test_bridge_rejects_open_surface():
    K = boundary_five_simplex()
    with pytest.raises(NotClosedSurface):
        bridge_parameters(K, tetrahedral_sphere()[:3])


def test_genus_mismatch_on_inconsistent_counts():
    # an impossible tetrahedron count slips past facet validation only
    # through this deliberately broken subclass; the three spine
    # formulas must then disagree
    class Broken(GTriangulation):
        def tetrahedra(self):
            return super().tetrahedra()[:-1]

    K = Broken(5, double_four_simplex().pentachora)
    with pytest.raises(GenusMismatch):
        trisection_parameters(K)


def test_fixed_vertices_note():
    r = trisection_parameters(cyclic_polytope_boundary())
    assert any("first sector" in n for n in r.notes)


def test_text_round_trip():
    for K in (boundary_five_simplex(), double_four_simplex(), cyclic_polytope_boundary()):
        text = serialize_triangulation(K)
        K2 = parse_triangulation(text)
        assert serialize_triangulation(K2) == text
        assert K2.counts() == K.counts()


def test_frozen_files_match_builders():
    from importlib.resources import files

    for name, build in [
        ("boundary_5_simplex", boundary_five_simplex),
        ("double_4_simplex", double_four_simplex),
        ("cyclic_7_5", cyclic_polytope_boundary),
    ]:
        text = (files("etd.data") / (name + ".tri")).read_text()
        assert text == serialize_triangulation(build())


@pytest.mark.parametrize(
    "mutation",
    [
        lambda t: t.replace("etd-triangulation 1", "etd-triangulation 2"),
        lambda t: t + "frobnicate 1\n",
        lambda t: t + "pentachoron 0 1 2 3\n",
        lambda t: t + "surface 0 1\n",
        lambda t: t.replace("glue 0 4 1 4", "glue 0 4 1 3", 1),
    ],
)
def test_malformed_files_rejected(mutation):
    text = serialize_triangulation(boundary_five_simplex())
    with pytest.raises(FileFormatError):
        parse_triangulation(mutation(text))
