import pytest

from surfsec.exactfield import CycloMatrix
from surfsec.groups import Automorphism, alternating, cyclic, dicyclic, dihedral, quaternion, symmetric, trivial
from surfsec.reps import (
    Representation,
    char_inner,
    conjugate_rep,
    equivalent,
    intertwiner,
    irr_catalog,
    rep_from_spec,
    validate_rep,
)
from surfsec.counting import catalog_groups


def _by_degree(g):
    return sorted(r.degree for r in irr_catalog(g))


def test_catalog_degrees():
    assert _by_degree(quaternion(8)) == [1, 1, 1, 1, 2]
    assert _by_degree(symmetric(3)) == [1, 1, 2]
    assert _by_degree(trivial()) == [1]
    assert _by_degree(symmetric(4)) == [1, 1, 2, 3, 3]
    assert _by_degree(alternating(4)) == [1, 1, 1, 3]
    assert _by_degree(dicyclic(12)) == [1, 1, 1, 1, 2, 2]


@pytest.mark.parametrize("g", catalog_groups() + [alternating(4), dihedral(10)], ids=lambda g: g.name)
def test_characters_are_orthonormal(g):
    irreps = irr_catalog(g)
    for a, r in enumerate(irreps):
        assert validate_rep(r).ok
        for b, s in enumerate(irreps):
            assert char_inner(r.character(), s.character()) == (a == b)


def test_trivial_character_is_all_ones():
    r = irr_catalog(symmetric(3))[0]
    assert all(v == 1 for v in r.traces)


def test_conjugation_of_reps():
    q = quaternion(8)
    std = [r for r in irr_catalog(q) if r.degree == 2][0]
    assert conjugate_rep(std).matrices == std.matrices
    twisted = conjugate_rep(std, Automorphism.inner(q, q.index("i")))
    assert equivalent(std, twisted)
    c3 = cyclic(3)
    _, chi1, chi2 = irr_catalog(c3)
    swapped = conjugate_rep(chi1, Automorphism(c3, [0, 2, 1]))
    assert swapped.traces == chi2.traces


def test_intertwiners():
    q = quaternion(8)
    std = [r for r in irr_catalog(q) if r.degree == 2][0]
    assert intertwiner(std, std) == CycloMatrix.identity(2, std.order)
    twisted = conjugate_rep(std, Automorphism.inner(q, q.index("i")))
    m = intertwiner(std, twisted)
    assert m is not None and m.trace() == 0
    assert (m @ std(q.index("i")).inverse()).is_scalar()
    s3 = irr_catalog(symmetric(3))
    assert intertwiner(s3[0], s3[1]) is None


def test_validation_catches_reducible_and_broken_input():
    g = symmetric(3)
    two_trivial = Representation(g, [CycloMatrix.identity(2)] * g.order, "2triv")
    report = validate_rep(two_trivial)
    assert not report.ok and report.inner == 4
    triv, sign = irr_catalog(g)[:2]
    both = [CycloMatrix.diag([triv(x)[0, 0], sign(x)[0, 0]]) for x in g.elements]
    report = validate_rep(Representation(g, both, "triv+sign"))
    assert not report.ok and report.inner == 2
    std = irr_catalog(g)[2]
    mats = list(std.matrices)
    mats[1] = mats[1] * -1
    broken = validate_rep(Representation(g, mats, "broken"))
    assert not broken.ok
    assert any(f.startswith("homomorphism fails for pair") for f in broken.failures)


def test_user_supplied_representation():
    c2 = cyclic(2)
    rho = rep_from_spec(c2, {"degree": 1, "order": 1, "matrices": {"0": [["1"]], "1": [["-1"]]}})
    assert rho.traces[1] == -1
