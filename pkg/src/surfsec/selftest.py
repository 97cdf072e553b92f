"""Property suite run by ``surfsec selftest`` and by the acceptance tests.

Every check returns a :class:`CheckResult`; nothing here prints.  The full
formula-versus-oracle sweep is the expensive part and is cached so the
existence check can reuse it.
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable

from .cocycle import evaluate_class, fixed_irreps
from .counting import (
    brute_force_count,
    catalog_groups,
    fm_brute,
    fm_count,
    formula_count,
    lift_brute,
    lift_problem,
    oracle_catalog,
    q8_survey,
)
from .errors import NotAGroup
from .exactfield import CycloNumber, cyclotomic_poly, inverse, zeta
from .geometry import SurfaceExtension, SurfaceSignature
from .groups import FiniteGroup, alternating, centralizer_count, dicyclic, dihedral, generated_subgroup, symmetric
from .reps import char_inner, irr_catalog, validate_rep
from .statesum import (
    GSystem,
    add_diagonal,
    catalog_algebras,
    central_idempotents,
    corrupt_action,
    crossed_axioms_check,
    g_center,
    group_algebra_biangular,
    gsystem_from_images,
    homotopy_move,
    idempotent_rep_match,
    one_face_scheme,
    psi_identities,
    sphere_scheme,
    state_sum,
    subdivide_edge,
)

ZERO = CycloNumber.rational(0)


@dataclass
class CheckResult:
    name: str
    ok: bool
    instances: int
    seconds: float
    failures: list[str] = field(default_factory=list)
    details: dict = field(default_factory=dict)

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        extra = f"; first failure: {self.failures[0]}" if self.failures else ""
        return f"{status} {self.name}: {self.instances} instances in {self.seconds:.1f}s{extra}"


def _timed(name: str, body: Callable[[list[str], dict], int], limit: float | None = None) -> CheckResult:
    failures: list[str] = []
    details: dict = {}
    start = time.perf_counter()
    n = body(failures, details)
    secs = time.perf_counter() - start
    if limit is not None and secs > limit:
        failures.append(f"took {secs:.1f}s, limit {limit:.0f}s")
    return CheckResult(name, not failures, n, secs, failures, details)


# ---------------------------------------------------------------------------
# the formula against the enumeration oracle


@dataclass(frozen=True)
class SweepStats:
    instances: int
    seconds: float
    count_mismatches: tuple[str, ...]
    existence_mismatches: tuple[str, ...]
    negative_sums: tuple[str, ...]


def _describe(E: SurfaceExtension) -> str:
    s = E.surface
    auts = ",".join(str(list(u.map)) for u in E.lift_auts)
    tail = f"f={E.relator_fiber}" if s.boundary == 0 else f"twists={list(E.boundary_twists)}"
    return f"{E.phi.name} d={s.genus} m={s.boundary} auts=[{auts}] {tail}"


@lru_cache(maxsize=1)
def catalog_sweep() -> SweepStats:
    start = time.perf_counter()
    n = 0
    bad, bad_exists, negative = [], [], []
    for E in oracle_catalog():
        n += 1
        report = formula_count(E)
        brute = brute_force_count(E)
        if report.formula_value != brute:
            bad.append(f"{_describe(E)}: formula {report.formula_value}, brute {brute}")
        if report.exists != (brute > 0):
            bad_exists.append(f"{_describe(E)}: exists={report.exists}, brute {brute}")
        if report.existence_sum < 0:
            negative.append(f"{_describe(E)}: existence sum {report.existence_sum}")
    return SweepStats(n, time.perf_counter() - start, tuple(bad), tuple(bad_exists), tuple(negative))


def check_oracle_equivalence() -> CheckResult:
    stats = catalog_sweep()
    failures = list(stats.count_mismatches)
    if stats.instances < 500:
        failures.append(f"only {stats.instances} instances")
    if stats.seconds > 180:
        failures.append(f"sweep took {stats.seconds:.1f}s, limit 180s")
    return CheckResult("formula equals enumeration", not failures, stats.instances, stats.seconds, failures)


def check_existence() -> CheckResult:
    stats = catalog_sweep()
    failures = list(stats.existence_mismatches) + list(stats.negative_sums)
    return CheckResult("existence criterion and non-negative sums", not failures, stats.instances, stats.seconds, failures)


def check_q8_survey() -> CheckResult:
    def body(failures, details):
        values, freq = q8_survey(with_pairs=True)
        details["values"] = sorted(values)
        details["pairs"] = {str(k): v for k, v in sorted(freq.items())}
        if values != {8, 16, 24, 40}:
            failures.append(f"value set {sorted(values)}")
        return sum(freq.values())

    return _timed("quaternion survey", body, limit=30)


def check_frobenius_mednykh() -> CheckResult:
    def body(failures, details):
        n = 0
        s3 = symmetric(3)
        transpositions = next(c for c in s3.conjugacy_classes() if len(c.members) == 3)
        for got, want, what in [(fm_count(s3, 1, []), 18, "S3 torus"), (fm_count(s3, 1, [transpositions]), 0, "S3 transpositions")]:
            if got != want:
                failures.append(f"{what}: {got}, expected {want}")
        for g in [s3, dihedral(8), dicyclic(8), alternating(4)]:
            classes = g.conjugacy_classes()
            for d in (1, 2):
                for m in (0, 1, 2):
                    for tup in itertools.product(classes, repeat=m):
                        n += 1
                        a, b = fm_count(g, d, list(tup)), fm_brute(g, d, list(tup))
                        if a != b:
                            reps = [g.label(c.representative) for c in tup]
                            failures.append(f"{g.name} d={d} classes={reps}: formula {a}, brute {b}")
        return n

    return _timed("homomorphism counts with class constraints", body, limit=120)


def check_direct_product(twist_samples: int = 16, seed: int = 0) -> CheckResult:
    """Product bundles: class value times the adequacy flags equals the product of traces."""

    def body(failures, details):
        rng = random.Random(seed)
        n = 0
        for phi in catalog_groups():
            irreps = irr_catalog(phi)
            for d in (1, 2):
                for m in (0, 1, 2):
                    if m and phi.order > 6:
                        twists = [tuple(rng.randrange(phi.order) for _ in range(m)) for _ in range(twist_samples)]
                    else:
                        twists = list(itertools.product(phi.elements, repeat=m))
                    for tw in twists:
                        E = SurfaceExtension.direct(SurfaceSignature(d, m), phi, list(tw) if m else None)
                        for fx in fixed_irreps(E, irreps):
                            n += 1
                            lhs = evaluate_class(E, fx) if fx.adequate else ZERO
                            rhs = CycloNumber.rational(1)
                            for c in tw:
                                rhs = rhs * fx.rep.traces[c]
                            if lhs != rhs:
                                failures.append(f"{phi.name} d={d} twists={list(tw)} {fx.label}: {lhs} != {rhs}")
        return n

    return _timed("product-bundle evaluation", body)


# ---------------------------------------------------------------------------
# state sum and G-center


def check_state_sum(bridge_samples: int = 6, seed: int = 0) -> CheckResult:
    def body(failures, details):
        rng = random.Random(seed)
        n = 0
        algebras = catalog_algebras()
        for label, cover, base, q in algebras:
            B = group_algebra_biangular(cover, base, q)
            n += 1
            got = state_sum(B, sphere_scheme(), GSystem(base, {"e": base.identity}))
            want = len(B.by_grade[base.identity])
            if got != want:
                failures.append(f"{label} sphere: {got}, expected {want}")
        for g in catalog_groups():
            B = group_algebra_biangular(g)
            for d in (1, 2):
                n += 1
                S = one_face_scheme(d)
                sys = GSystem(B.G, {e: B.G.identity for e in S.edges})
                want = Fraction(g.order) ** (1 - 2 * d) * fm_brute(g, d, [])
                _compare_with_moves(B, S, sys, want, f"{g.name} genus {d}", failures)
        # graded algebras against the lifting oracle
        for label, cover, base, q in algebras:
            if base.order == 1:
                continue
            B = group_algebra_biangular(cover, base, q)
            kernel = cover.order // base.order
            for d in (1, 2):
                images = [
                    im for im in itertools.product(base.elements, repeat=2 * d)
                    if base.prod(base.commutator(im[2 * i], im[2 * i + 1]) for i in range(d)) == base.identity
                    and len(generated_subgroup(base, im)) == base.order
                ]
                if len(images) > bridge_samples:
                    images = rng.sample(images, bridge_samples)
                for im in images:
                    n += 1
                    S = one_face_scheme(d)
                    sys = gsystem_from_images(S, base, im)
                    lifts = lift_brute(lift_problem(cover, base, q, im, d))
                    want = Fraction(kernel) ** (1 - 2 * d) * lifts
                    _compare_with_moves(B, S, sys, want, f"{label} genus {d} images {im}", failures, rng)
        return n

    return _timed("state sum", body)


def _compare_with_moves(B, S, sys, want, what, failures, rng=None) -> None:
    got = state_sum(B, S, sys)
    if got != want:
        failures.append(f"{what}: {got}, expected {want}")
        return
    # one edge subdivision everywhere; the two-edge schemes also get a diagonal
    refined, rsys = subdivide_edge(S, sys, S.edges[0])
    if len(S.edges) <= 2:
        refined, rsys = add_diagonal(refined, rsys, 0, 0, 2)
    if state_sum(B, refined, rsys) != got:
        failures.append(f"{what}: refinement changes the state sum")
    # the subdivision vertex is the head of the first half of the split edge
    x = (rng or random).choice(list(B.G.elements))
    moved = homotopy_move(refined, rsys, refined.endpoints()[refined.edges[0]][1], x)
    if moved.values != rsys.values and state_sum(B, refined, moved) != got:
        failures.append(f"{what}: homotopy move changes the state sum")


def check_g_center(samples: int = 100) -> CheckResult:
    def body(failures, details):
        n = 0
        for label, cover, base, q in catalog_algebras():
            n += 1
            B = group_algebra_biangular(cover, base, q)
            failures += [f"{label}: {f}" for f in psi_identities(B, samples)]
            L = g_center(B)
            report = crossed_axioms_check(L)
            if not report.ok:
                failures.append(f"{label}: {report.summary()}")
            broken = crossed_axioms_check(corrupt_action(L, base.identity))
            if broken.ok or not any(v["axiom"] == "2" for v in broken.violations):
                failures.append(f"{label}: corrupted action not detected")
        for g in catalog_groups() + [alternating(4)]:
            n += 1
            irreps = irr_catalog(g)
            B = group_algebra_biangular(g)
            ids = central_idempotents(g, irreps)
            total = B.zero()
            for a, i in enumerate(ids):
                total = B.add(total, i)
                for b, j in enumerate(ids):
                    want = i if a == b else B.zero()
                    if B.mul(i, j) != want:
                        failures.append(f"{g.name}: idempotents {a},{b} fail i*j = delta i")
            if total != B.unit:
                failures.append(f"{g.name}: idempotents do not sum to the unit")
            match = idempotent_rep_match(ids, irreps)
            for i, k in zip(ids, match):
                if B.eta_form(i, i) != irreps[k].degree ** 2:
                    failures.append(f"{g.name}: eta(i, i) != dim^2 for {irreps[k].label}")
        return n

    return _timed("G-center, idempotents and averaging maps", body)


# ---------------------------------------------------------------------------
# foundations


def check_foundations(samples: int = 200, seed: int = 0) -> CheckResult:
    def body(failures, details):
        rng = random.Random(seed)
        n = 0

        def rand(order: int) -> CycloNumber:
            return CycloNumber(order, [Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(order)])

        for order in range(1, 13):
            z = zeta(order)
            poly = cyclotomic_poly(order)
            n += 1
            if sum((z**k * c for k, c in enumerate(poly)), ZERO):
                failures.append(f"cyclotomic polynomial {order} does not vanish at its root")
            if z**order != 1 or any(z**k == 1 for k in range(1, order)):
                failures.append(f"zeta_{order} has the wrong multiplicative order")
            for _ in range(samples // 12):
                n += 1
                a, b, c = rand(order), rand(order), rand(order)
                if (a * b) * c != a * (b * c) or a * (b + c) != a * b + a * c or a * b != b * a:
                    failures.append(f"ring axiom fails in order {order}")
                if a and a * a.inverse() != 1:
                    failures.append(f"inverse fails in order {order}")
        m = [[rand(5) for _ in range(3)] for _ in range(3)]
        inv = inverse(m, zero=ZERO, one=CycloNumber.rational(1))
        prod = [[sum((m[i][k] * inv[k][j] for k in range(3)), ZERO) for j in range(3)] for i in range(3)]
        n += 1
        if prod != [[CycloNumber.rational(int(i == j)) for j in range(3)] for i in range(3)]:
            failures.append("matrix inverse check fails")
        try:
            n += 1
            FiniteGroup([[0, 1, 2], [1, 0, 2], [2, 2, 0]])
            failures.append("non-group table accepted")
        except NotAGroup:
            pass
        for g in catalog_groups() + [alternating(4), symmetric(4), dicyclic(12), dihedral(10)]:
            n += 1
            for c in g.conjugacy_classes():
                if len(c.members) * centralizer_count(g, g.elements, c.representative, c.representative) != g.order:
                    failures.append(f"{g.name}: orbit-stabilizer fails for {g.label(c.representative)}")
            irreps = irr_catalog(g)
            if sum(r.degree**2 for r in irreps) != g.order or len(irreps) != len(g.conjugacy_classes()):
                failures.append(f"{g.name}: irreducible degrees inconsistent")
            for a, r in enumerate(irreps):
                if g.order <= 12 and not validate_rep(r).ok:
                    failures.append(f"{g.name}: {r.label} fails validation")
                for b, s in enumerate(irreps):
                    if char_inner(r.character(), s.character()) != int(a == b):
                        failures.append(f"{g.name}: characters {a},{b} not orthonormal")
        auts = {"C4": 2, "C2xC2": 6, "S3": 6, "D8": 8, "Q8": 24}
        for g in catalog_groups():
            if g.name in auts and len(g.automorphisms()) != auts[g.name]:
                failures.append(f"|Aut({g.name})| = {len(g.automorphisms())}")
        return n

    return _timed("exact field and group foundations", body)


ALL_CHECKS: list[tuple[str, Callable[[], CheckResult]]] = [
    ("oracle", check_oracle_equivalence),
    ("q8-survey", check_q8_survey),
    ("frobenius-mednykh", check_frobenius_mednykh),
    ("direct-product", check_direct_product),
    ("existence", check_existence),
    ("state-sum", check_state_sum),
    ("g-center", check_g_center),
    ("foundations", check_foundations),
]


def run_selftest(only: list[str] | None = None) -> list[CheckResult]:
    chosen = [c for c in ALL_CHECKS if only is None or c[0] in only]
    return [fn() for _, fn in chosen]


def total_seconds(results: list[CheckResult]) -> float:
    # the shared sweep is counted once
    seen, total = set(), 0.0
    for r in results:
        key = "sweep" if r.name in ("formula equals enumeration", "existence criterion and non-negative sums") else r.name
        if key not in seen:
            seen.add(key)
            total += r.seconds
    return total
