import pytest

from surfsec.errors import InvalidInput, RelationViolated
from surfsec.geometry import FreeWord, NormalForm, SurfaceExtension, SurfaceSignature, extension_from_spec
from surfsec.groups import Automorphism, cyclic, quaternion


def _c3_twisted():
    c3 = cyclic(3)
    inv = Automorphism(c3, [0, 2, 1])
    return SurfaceExtension(SurfaceSignature(1), c3, [inv, Automorphism.identity(c3)], 0)


def test_signature_basics():
    s = SurfaceSignature(2, 3)
    assert s.euler == -5 and s.rank == 6
    assert s.generator_names() == ["a1", "b1", "a2", "b2", "x1", "x2"]
    with pytest.raises(InvalidInput):
        SurfaceSignature(0)


def test_fiber_multiplication():
    E = _c3_twisted()
    assert E.nf_multiply(E.fiber(1), E.fiber(2)) == E.fiber(0)
    a, a_inv = E.letter(0, 1), E.letter(0, -1)
    assert E.nf_multiply(a, a_inv) == E.fiber(0)


@pytest.mark.parametrize("h", [0, 1, 2])
def test_conjugation_realizes_the_lift_automorphism(h):
    E = _c3_twisted()
    conj = E.nf_multiply(E.nf_multiply(E.letter(0, 1), E.fiber(h)), E.letter(0, -1))
    assert conj == E.fiber(E.u[0][h])


def test_associativity_in_normal_form():
    q = quaternion(8)
    u = Automorphism.inner(q, q.index("i"))
    E = SurfaceExtension(SurfaceSignature(1, 1), q, [u, Automorphism.identity(q)], None, [q.index("j")])
    xs = [E.letter(0, 1, 3), E.letter(1, -1, 5), E.fiber(2), E.letter(0, -1, 7)]
    for x in xs:
        for y in xs:
            for z in xs:
                assert E.nf_multiply(E.nf_multiply(x, y), z) == E.nf_multiply(x, E.nf_multiply(y, z))
            assert E.nf_multiply(x, E.nf_inverse(x)) == E.fiber(q.identity)


def test_commutator_fiber_in_twisted_cyclic_example():
    E = _c3_twisted()
    for h1 in range(3):
        for h2 in range(3):
            assert E.relator_value([h1, h2]) == h2


def test_direct_product_commutators_are_trivial():
    c3 = cyclic(3)
    E = SurfaceExtension.direct(SurfaceSignature(2), c3)
    assert all(E.relator_value([a, b, c, d]) == 0 for a in range(3) for b in range(3) for c in range(3) for d in range(3))


def test_closed_validation():
    q = quaternion(8)
    u = Automorphism.inner(q, q.index("i"))
    v = Automorphism.inner(q, q.index("j"))
    comp = Automorphism.inner(q, q.prod([q.index("i"), q.index("j"), q.index("-i"), q.index("-j")]))
    E = SurfaceExtension(SurfaceSignature(1), q, [u, v], q.index("-1"))
    assert E.word_automorphism(E.surface.commutator_word()) == comp
    with pytest.raises(RelationViolated):
        SurfaceExtension(SurfaceSignature(1), q, [u, v], q.index("i"))


def test_gamma_elements():
    c2 = cyclic(2)
    E = SurfaceExtension.direct(SurfaceSignature(1, 2), c2)
    gammas, f = E.gamma_elements()
    assert all(g.fiber == 0 for g in gammas) and f == 0
    E1 = SurfaceExtension.direct(SurfaceSignature(1, 1), c2, [1])
    (g1,), f1 = E1.gamma_elements()
    assert g1.word == E1.surface.boundary_word(1) and g1.fiber == 1
    assert f1 == 1
    q = quaternion(8)
    E2 = SurfaceExtension(SurfaceSignature(1, 2), q, [Automorphism.inner(q, 2)] * 3, None, [3, 5])
    _, f2 = E2.gamma_elements()
    assert 0 <= f2 < 8


def test_extension_spec_parsing():
    E = extension_from_spec({
        "genus": 1, "boundary": 1,
        "phi": {"type": "catalog", "name": "quaternion", "order": 8},
        "lift_auts": {"a1": {"inner": "i"}},
        "boundary_twists": ["j"],
    })
    assert not E.is_direct() and E.boundary_twists == (E.phi.index("j"),)
    with pytest.raises(InvalidInput):
        extension_from_spec({"genus": 1, "phi": {"type": "catalog", "name": "cyclic", "order": 2}, "lift_auts": {"z9": "identity"}})


def test_free_words_reduce():
    w = FreeWord([(0, 1), (1, 1), (1, -1), (0, -1)])
    assert len(w) == 0
    assert isinstance(NormalForm(w, 0), NormalForm)
