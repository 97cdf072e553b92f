import itertools
import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from surfsec.counting import (
    brute_force_count,
    catalog_groups,
    exists_section,
    fm_brute,
    fm_count,
    formula_count,
    lift_count_finite,
    oracle_catalog,
    q8_survey,
    reencode_twist,
    verify_count,
)
from surfsec.errors import BudgetExceeded, NotSurjective, RelationViolated
from surfsec.geometry import SurfaceExtension, SurfaceSignature
from surfsec.groups import Automorphism, alternating, cyclic, dihedral, quaternion, symmetric, trivial


def c3_twisted():
    c3 = cyclic(3)
    return SurfaceExtension(SurfaceSignature(1), c3, [Automorphism(c3, [0, 2, 1]), Automorphism.identity(c3)], 0)


def test_brute_force_examples():
    assert brute_force_count(SurfaceExtension.direct(SurfaceSignature(2, 1), trivial())) == 1
    assert brute_force_count(c3_twisted()) == 3
    assert brute_force_count(SurfaceExtension.direct(SurfaceSignature(1), quaternion(8))) == 40
    c2 = cyclic(2)
    assert brute_force_count(SurfaceExtension.direct(SurfaceSignature(1, 1), c2, [0])) == 8
    assert brute_force_count(SurfaceExtension.direct(SurfaceSignature(1, 1), c2, [1])) == 0


def test_formula_examples():
    r = formula_count(c3_twisted())
    assert r.formula_value == 3 and [t.in_I0 for t in r.per_rep_terms] == [True, False, False]
    r = formula_count(SurfaceExtension.direct(SurfaceSignature(1), quaternion(8)))
    assert r.formula_value == 40 and all(t.term == 8 for t in r.per_rep_terms)
    r = formula_count(SurfaceExtension.direct(SurfaceSignature(1, 1), cyclic(2), [1]))
    assert r.formula_value == 0 and sorted(str(t.term) for t in r.per_rep_terms) == ["-4", "4"]


def test_existence_examples():
    for phi in catalog_groups():
        assert exists_section(SurfaceExtension.direct(SurfaceSignature(2), phi))
    assert not exists_section(SurfaceExtension.direct(SurfaceSignature(1, 1), cyclic(2), [1]))
    assert exists_section(c3_twisted())


def test_parallel_enumeration_matches_serial():
    q = quaternion(8)
    E = SurfaceExtension(SurfaceSignature(1, 2), q, [Automorphism.inner(q, 2)] * 3, None, [3, 4])
    assert brute_force_count(E, jobs=3) == brute_force_count(E)


def test_budget_is_enforced():
    with pytest.raises(BudgetExceeded):
        brute_force_count(SurfaceExtension.direct(SurfaceSignature(2), quaternion(8)), budget=100)


def test_verify_reports_both_values():
    r = verify_count(c3_twisted())
    assert r.brute_value == 3 and r.agrees
    assert r.to_dict()["formula"] == "3" and r.to_dict()["brute"] == 3


@settings(max_examples=60, deadline=None)
@given(st.integers(min_value=0, max_value=10**6))
def test_random_catalog_instances_agree(seed):
    rng = random.Random(seed)
    phi = rng.choice(catalog_groups())
    sig = SurfaceSignature(rng.choice([1, 2]), rng.choice([0, 1, 2]))
    E = next(itertools.islice(oracle_catalog([phi], [sig.genus], [sig.boundary], samples=4, twist_samples=2, seed=seed), rng.randrange(3), None), None)
    if E is None:
        return
    report = formula_count(E)
    brute = brute_force_count(E)
    assert report.formula_value == brute
    assert report.exists == (brute > 0) and report.existence_sum >= 0


def test_twist_reencoding_leaves_the_count_unchanged():
    rng = random.Random(7)
    checked = 0
    for phi in (symmetric(3), quaternion(8), dihedral(8)):
        for E in oracle_catalog([phi], genera=(1,), boundaries=(1, 2), samples=5, twist_samples=3, seed=11):
            base = formula_count(E).formula_value
            k = rng.randrange(1, E.surface.boundary + 1)
            a = rng.randrange(phi.order)
            assert formula_count(reencode_twist(E, k, a)).formula_value == base
            checked += 1
    assert checked > 20


def test_lifting_examples():
    s3 = symmetric(3)
    t = trivial()
    r = lift_count_finite(s3, t, [0] * 6, [0, 0], 1)
    assert r.formula_value == 18 and r.brute_value == 18
    c3 = cyclic(3)
    assert lift_count_finite(c3, c3, list(c3.elements), [1, 2], 1).formula_value == 1
    c4, c2 = cyclic(4), cyclic(2)
    r = lift_count_finite(c4, c2, [x % 2 for x in range(4)], [1, 0], 1)
    # 2 lifts of each generator give 4 pairs, all commuting
    assert r.formula_value == 4 and r.brute_value == 4


def test_lifting_input_errors():
    s3 = symmetric(3)
    with pytest.raises(NotSurjective):
        lift_count_finite(s3, s3, list(s3.elements), [1, 1], 1)
    with pytest.raises(RelationViolated):
        lift_count_finite(s3, s3, list(s3.elements), [s3.index("(1 2)"), s3.index("(1 2 3)")], 1)


def test_homomorphism_count_examples():
    s3 = symmetric(3)
    by_size = {len(c.members): c for c in s3.conjugacy_classes()}
    assert fm_count(s3, 1, []) == 18 == fm_brute(s3, 1, [])
    assert fm_count(s3, 1, [by_size[3]]) == 0 == fm_brute(s3, 1, [by_size[3]])
    assert fm_count(s3, 1, [by_size[2]]) == 18 == fm_brute(s3, 1, [by_size[2]])
    assert fm_count(cyclic(2), 2, []) == 16 == fm_brute(cyclic(2), 2, [])


@pytest.mark.parametrize("g", catalog_groups() + [alternating(4)], ids=lambda g: g.name)
def test_torus_homomorphisms_count_classes(g):
    assert fm_count(g, 1, []) == g.order * len(g.conjugacy_classes())


@pytest.mark.parametrize("phi", catalog_groups(), ids=lambda g: g.name)
def test_product_bundles_match_class_constrained_counts(phi):
    # sections of a product bundle = homomorphisms with x_k in the class of c_k,
    # up to the centralizer factor of each twist
    for d, m in ((1, 1), (1, 2), (2, 1)):
        for tw in itertools.islice(itertools.product(phi.elements, repeat=m), 12):
            E = SurfaceExtension.direct(SurfaceSignature(d, m), phi, list(tw))
            classes = [phi.class_of(c) for c in tw]
            lhs = formula_count(E).formula_value * math.prod(len(c.members) for c in classes)
            assert lhs == fm_count(phi, d, classes) * phi.order**m


def test_q8_survey():
    values, freq = q8_survey(with_pairs=True)
    assert values == {8, 16, 24, 40}
    assert 40 in values and all(v % 8 == 0 for v in values)
    assert sum(freq.values()) == 120
