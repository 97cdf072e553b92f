import pytest

from surfsec.errors import NotAGroup, NotAutomorphism
from surfsec.groups import (
    Automorphism,
    FiniteGroup,
    alternating,
    automorphism_from_spec,
    build_group,
    centralizer_count,
    cyclic,
    dihedral,
    group_exponent,
    quaternion,
    symmetric,
    trivial,
)
from surfsec.counting import catalog_groups


def test_quaternion_has_one_involution():
    q = build_group({"type": "catalog", "name": "quaternion", "order": 8})
    assert q.order == 8
    assert sum(1 for x in q.elements if q.element_order(x) <= 2) == 2


def test_trivial_and_permutation_groups():
    assert build_group({"type": "catalog", "name": "cyclic", "order": 1}).order == 1
    g = build_group({"type": "perm_gens", "degree": 3, "gens": [[2, 1, 3], [2, 3, 1]]})
    assert g.order == 6 and not g.is_abelian()


def test_table_input_is_validated():
    with pytest.raises(NotAGroup):
        build_group({"type": "table", "table": [[0, 1, 2], [1, 0, 2], [2, 2, 0]]})
    g = build_group({"type": "table", "table": [[0, 1], [1, 0]]})
    assert g.order == 2


def test_class_sizes():
    assert sorted(len(c.members) for c in symmetric(3).conjugacy_classes()) == [1, 2, 3]
    assert all(len(c.members) == 1 for c in cyclic(5).conjugacy_classes())
    assert sorted(len(c.members) for c in quaternion(8).conjugacy_classes()) == [1, 1, 2, 2, 2]


def test_centralizer_counts():
    q = quaternion(8)
    i, m1, mi, j = (q.index(x) for x in ("i", "-1", "-i", "j"))
    assert centralizer_count(q, q.elements, m1, m1) == 8
    assert centralizer_count(q, q.elements, i, mi) == 4
    assert centralizer_count(q, q.elements, i, j) == 0


@pytest.mark.parametrize("g", catalog_groups() + [alternating(4), symmetric(4), dihedral(10)], ids=lambda g: g.name)
def test_orbit_stabilizer(g):
    for c in g.conjugacy_classes():
        assert len(c.members) * centralizer_count(g, g.elements, c.representative, c.representative) == g.order
    assert sum(len(c.members) for c in g.conjugacy_classes()) == g.order


def test_automorphism_operations():
    q = quaternion(8)
    u = Automorphism.inner(q, q.index("i"))
    assert u.compose(u.inverse()).is_identity()
    for x in ("1", "-1", "i", "-i"):
        assert u(q.index(x)) == q.index(x)
    c3 = cyclic(3)
    inv = Automorphism(c3, [0, 2, 1])
    assert inv.is_valid() and inv.order() == 2
    with pytest.raises(NotAutomorphism):
        Automorphism(c3, [0, 1, 1])


def test_automorphism_group_orders():
    assert len(quaternion(8).automorphisms()) == 24
    assert len(symmetric(3).automorphisms()) == 6
    assert len(dihedral(8).automorphisms()) == 8


def test_exponents():
    assert group_exponent(quaternion(8)) == 4
    assert group_exponent(symmetric(3)) == 6
    assert group_exponent(trivial()) == 1


def test_gen_images_are_completed():
    q = quaternion(8)
    u = automorphism_from_spec(q, {"gen_images": {"i": "j", "j": "i"}})
    assert u.is_valid() and u(q.index("k")) == q.index("-k")


def test_non_group_table_rejected():
    with pytest.raises(NotAGroup):
        FiniteGroup([[0, 1], [0, 1]])
