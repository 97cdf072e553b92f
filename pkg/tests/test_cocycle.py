import random

import pytest

from surfsec.cocycle import FixedIrrep, evaluate_class, fixed_irreps, t_rho
from surfsec.counting import catalog_groups, oracle_catalog
from surfsec.errors import IncompleteIrreps, NotScalar
from surfsec.exactfield import CycloMatrix, CycloNumber, zeta
from surfsec.geometry import SurfaceExtension, SurfaceSignature
from surfsec.groups import Automorphism, cyclic, dihedral, quaternion, symmetric, trivial
from surfsec.reps import irr_catalog


def _std(g):
    return [r for r in irr_catalog(g) if r.degree == 2][0]


def test_fixed_sets():
    q = quaternion(8)
    E = SurfaceExtension.direct(SurfaceSignature(1), q)
    assert len(fixed_irreps(E, irr_catalog(q))) == 5
    c3 = cyclic(3)
    Et = SurfaceExtension(SurfaceSignature(1), c3, [Automorphism(c3, [0, 2, 1]), Automorphism.identity(c3)], 0)
    assert [fx.label for fx in fixed_irreps(Et, irr_catalog(c3))] == ["chi0"]
    t = trivial()
    assert len(fixed_irreps(SurfaceExtension.direct(SurfaceSignature(2), t), irr_catalog(t))) == 1
    with pytest.raises(IncompleteIrreps):
        fixed_irreps(E, irr_catalog(q)[:4])


def test_adequacy_flags():
    q = quaternion(8)
    triv, std = irr_catalog(q)[0], _std(q)
    for c, want in (("i", 0), ("-1", 1)):
        E = SurfaceExtension.direct(SurfaceSignature(1, 1), q, [q.index(c)])
        fx = {f.label: f for f in fixed_irreps(E, irr_catalog(q))}
        flag, nu = t_rho(E, fx[std.label], 1)
        assert flag == want
        if flag:
            assert nu.trace() == 1
        tflag, tnu = t_rho(E, fx[triv.label], 1)
        assert tflag == 1 and tnu == CycloMatrix.identity(1, tnu.order)


def test_class_values():
    s3 = symmetric(3)
    E = SurfaceExtension.direct(SurfaceSignature(1, 1), s3, [s3.index("(1 2 3)")])
    fx = {f.label: f for f in fixed_irreps(E, irr_catalog(s3))}
    assert evaluate_class(E, fx[_std(s3).label]) == -1
    assert evaluate_class(E, fx[irr_catalog(s3)[0].label]) == 1
    c2 = cyclic(2)
    E2 = SurfaceExtension.direct(SurfaceSignature(1, 1), c2, [1])
    sign = fixed_irreps(E2, irr_catalog(c2))[1]
    assert evaluate_class(E2, sign) == -1


@pytest.mark.parametrize("phi", catalog_groups(), ids=lambda g: g.name)
def test_closed_product_bundles_evaluate_to_one(phi):
    for d in (1, 2):
        E = SurfaceExtension.direct(SurfaceSignature(d), phi)
        assert all(evaluate_class(E, fx) == 1 for fx in fixed_irreps(E, irr_catalog(phi)))


def test_rescaling_generator_matrices_changes_nothing():
    rng = random.Random(1)
    scalars = [CycloNumber.rational(2), zeta(4), 1 + zeta(3), CycloNumber.rational(-3, 1)]
    checked = 0
    for phi in (symmetric(3), quaternion(8), dihedral(8)):
        for E in oracle_catalog([phi], genera=(1, 2), boundaries=(0, 1), samples=6, twist_samples=3, seed=3):
            for fx in fixed_irreps(E, irr_catalog(phi)):
                if not fx.adequate:
                    continue
                scales = [rng.choice(scalars) for _ in fx.gen_matrices]
                assert evaluate_class(E, fx, scales) == evaluate_class(E, fx)
                checked += 1
    assert checked > 50


def test_stored_intertwiners_satisfy_their_relation():
    q = quaternion(8)
    u = Automorphism.inner(q, q.index("j"))
    E = SurfaceExtension(SurfaceSignature(1, 1), q, [u, Automorphism.identity(q)], None, [q.index("k")])
    for fx in fixed_irreps(E, irr_catalog(q)):
        for m, uinv in zip(fx.gen_matrices, E.uinv):
            assert all(fx.rep(h) @ m == m @ fx.rep(uinv[h]) for h in q.elements)


def test_inconsistent_matrices_are_reported():
    q = quaternion(8)
    E = SurfaceExtension.direct(SurfaceSignature(1), q)
    std = _std(q)
    bad = FixedIrrep(std, (CycloMatrix.diag([1, 2], std.order), CycloMatrix([[0, 1], [1, 0]], std.order)), (), ())
    with pytest.raises(NotScalar):
        evaluate_class(E, bad)
