from fractions import Fraction

import pytest

from surfsec.errors import InvalidGSystem, InvalidInput, MatchFailed, NotSurjective
from surfsec.exactfield import CycloNumber, zeta
from surfsec.groups import abelian, cyclic, direct_product, quaternion, symmetric, trivial
from surfsec.reps import irr_catalog
from surfsec.statesum import (
    CWSurface,
    GSystem,
    add_diagonal,
    catalog_algebras,
    central_idempotents,
    corrupt_action,
    crossed_axioms_check,
    g_center,
    group_algebra_biangular,
    homotopy_move,
    idempotent_rep_match,
    one_face_scheme,
    psi,
    psi_identities,
    quotient,
    sphere_scheme,
    state_sum,
    subdivide_edge,
)


def z4_over_z2():
    c4 = cyclic(4)
    base, q = quotient(c4, [0, 2])
    return c4, base, q


def test_group_algebra_inner_product():
    s3 = symmetric(3)
    B = group_algebra_biangular(s3)
    assert all(B.eta[g][s3.inv(g)] == 6 for g in s3.elements)
    G = cyclic(3)
    B = group_algebra_biangular(G, G, list(G.elements))
    assert all(B.eta[g][G.inv(g)] == 1 for g in G.elements)
    for a in G.elements:
        ((p, q),) = B.b_vector(a)
        assert p == B.basis_vector(a) and q == B.basis_vector(G.inv(a))


def test_dual_bases_sum_to_the_unit():
    B = group_algebra_biangular(*z4_over_z2())
    for a in B.G.elements:
        assert len(B.by_grade[a]) == 2
        total = B.zero()
        for p, q in B.b_vector(a):
            total = B.add(total, B.mul(p, q))
        assert total == B.unit


def test_grading_must_be_surjective():
    c4 = cyclic(4)
    with pytest.raises(NotSurjective):
        group_algebra_biangular(c4, cyclic(2), [0, 0, 0, 0])


def test_state_sum_examples():
    s3 = symmetric(3)
    B = group_algebra_biangular(s3)
    assert state_sum(B, sphere_scheme(), GSystem(B.G, {"e": 0})) == 6
    assert sphere_scheme().euler == 2 and sphere_scheme().vertex_count() == 2
    torus = CWSurface.from_spec({"vertices": 1, "edges": ["a", "b"], "faces": [["a", "b", "a~", "b~"]]})
    assert state_sum(B, torus, GSystem(B.G, {"a": 0, "b": 0})) == 3
    B2 = group_algebra_biangular(cyclic(2))
    S = one_face_scheme(2)
    assert S.euler == -2
    assert state_sum(B2, S, GSystem(B2.G, {e: 0 for e in S.edges})) == 2


def test_surface_validation():
    with pytest.raises(InvalidInput):
        CWSurface.from_spec({"edges": ["a", "b"], "faces": [["a", "b", "a~"]]})
    with pytest.raises(InvalidInput):
        CWSurface.from_spec({"vertices": 3, "edges": ["a"], "faces": [["a", "a~"]]})


def test_gsystem_validation():
    c4, base, q = z4_over_z2()
    B = group_algebra_biangular(c4, base, q)
    S = CWSurface.from_spec({"edges": ["a", "b", "d"], "faces": [["a", "b", "d"], ["a~", "b~", "d~"]]})
    with pytest.raises(InvalidGSystem):
        state_sum(B, S, GSystem(base, {"a": 1, "b": 0, "d": 0}))


def test_refinement_and_homotopy_invariance():
    q8 = quaternion(8)
    base, q = quotient(q8, [q8.index("1"), q8.index("-1")])
    B = group_algebra_biangular(q8, base, q)
    S = one_face_scheme(1)
    images = [q[q8.index("i")], q[q8.index("1")]]
    g = GSystem(base, {"a1": images[0], "b1": images[1]})
    value = state_sum(B, S, g)
    lifts = sum(
        1 for a in q8.elements for b in q8.elements
        if q[a] == images[0] and q[b] == images[1] and q8.commutator(a, b) == q8.identity
    )
    assert lifts > 0 and value == Fraction(lifts, 2)
    S2, g2 = subdivide_edge(S, g, "a1", first=q[q8.index("k")])
    assert S2.vertex_count() == 2 and state_sum(B, S2, g2) == value
    S3, g3 = add_diagonal(S2, g2, 0, 1, 3)
    assert len(S3.faces) == 2 and S3.euler == 0 and state_sum(B, S3, g3) == value
    for v in range(S3.vertex_count()):
        for x in base.elements:
            assert state_sum(B, S3, homotopy_move(S3, g3, v, x)) == value


def test_psi_examples():
    s3 = symmetric(3)
    B = group_algebra_biangular(s3)
    m = psi(B, 0)
    t = s3.index("(1 2)")
    image = [m[i][t] for i in range(B.dim)]
    transpositions = {x for x in s3.elements if s3.element_order(x) == 2}
    assert all(image[x] == (Fraction(1, 3) if x in transpositions else 0) for x in s3.elements)
    G = cyclic(3)
    Bg = group_algebra_biangular(G, G, list(G.elements))
    for a in G.elements:
        for b in G.elements:
            e = Bg.basis_vector(b)
            assert Bg.psi_apply(a, e) == e


@pytest.mark.parametrize("label,cover,base,q", catalog_algebras(), ids=[c[0] for c in catalog_algebras()])
def test_psi_identities_on_catalog(label, cover, base, q):
    assert psi_identities(group_algebra_biangular(cover, base, q), samples=25) == []


def test_center_dimensions():
    assert g_center(group_algebra_biangular(symmetric(3))).dim() == 3
    G = abelian([2, 2])
    L = g_center(group_algebra_biangular(G, G, list(G.elements)))
    assert all(L.dim(a) == 1 for a in G.elements)
    q8c2 = direct_product(quaternion(8), cyclic(2))
    base, q = quotient(q8c2, [x for x in q8c2.elements if q8c2.data[x][1] == 0])
    L = g_center(group_algebra_biangular(q8c2, base, q))
    assert L.dim(base.identity) == 5


def test_crossed_axioms_and_negative_control():
    L = g_center(group_algebra_biangular(symmetric(3)))
    assert crossed_axioms_check(L).ok
    c4, base, q = z4_over_z2()
    L = g_center(group_algebra_biangular(c4, base, q))
    assert crossed_axioms_check(L).ok
    for a in base.elements:
        for x in L.bases[a]:
            assert L.phi(1, x) == x
    bad = crossed_axioms_check(corrupt_action(L, base.identity))
    assert not bad.ok
    assert any(v["axiom"] == "2" for v in bad.violations)


def test_central_idempotents():
    t = trivial()
    assert central_idempotents(t, irr_catalog(t)) == [(CycloNumber.rational(1),)]
    c2 = cyclic(2)
    half = Fraction(1, 2)
    assert set(central_idempotents(c2, irr_catalog(c2))) == {(half, half), (half, -half)}
    s3 = symmetric(3)
    B = group_algebra_biangular(s3)
    ids = central_idempotents(s3, irr_catalog(s3))
    assert sorted(B.eta_form(i, i).to_fraction() for i in ids) == [1, 1, 4]


def test_idempotent_matching():
    for g in (trivial(), cyclic(3), quaternion(8)):
        irreps = irr_catalog(g)
        ids = central_idempotents(g, irreps)
        match = idempotent_rep_match(ids, irreps)
        assert sorted(match) == list(range(len(irreps)))
    q8 = quaternion(8)
    irreps = irr_catalog(q8)
    B = group_algebra_biangular(q8)
    ids = central_idempotents(q8, irreps)
    match = idempotent_rep_match(ids, irreps)
    (two_dim,) = [i for i, k in zip(ids, match) if irreps[k].degree == 2]
    assert B.eta_form(two_dim, two_dim) == 4
    c3 = cyclic(3)
    irreps = irr_catalog(c3)
    ids = central_idempotents(c3, irreps)
    z = zeta(3)
    assert ids[1][1] == z.conjugate() / 3 or ids[1][1] == z / 3
    with pytest.raises(MatchFailed):
        idempotent_rep_match([ids[0], ids[0], ids[2]], irreps)
