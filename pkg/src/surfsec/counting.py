"""Section counts: the representation-theoretic formula and its enumeration oracles."""

from __future__ import annotations

import itertools
import math
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Sequence

import numpy as np

from .cocycle import evaluate_class, fixed_irreps
from .errors import (
    BudgetExceeded,
    InvalidInput,
    NegativeResult,
    NonIntegralResult,
    NotSurjective,
    RelationViolated,
)
from .exactfield import CycloNumber
from .geometry import FreeWord, SurfaceExtension, SurfaceSignature
from .groups import (
    Automorphism,
    ConjClass,
    FiniteGroup,
    generated_subgroup,
    is_homomorphism,
    quaternion,
    subgroup,
)
from .reps import Representation, irr_catalog

DEFAULT_BUDGET = 10**7


@dataclass
class RepTerm:
    label: str
    degree: int
    in_I0: bool
    t: tuple[int, ...] = ()
    zeta_eval: CycloNumber | None = None
    term: CycloNumber = field(default_factory=lambda: CycloNumber.rational(0))

    def to_dict(self) -> dict:
        return {
            "rep": self.label,
            "dim": self.degree,
            "in_I0": self.in_I0,
            "t": list(self.t),
            "zeta_eval": None if self.zeta_eval is None else str(self.zeta_eval),
            "term": str(self.term),
        }


@dataclass
class CountReport:
    formula_value: Fraction
    existence_sum: Fraction
    exists: bool
    per_rep_terms: list[RepTerm]
    brute_value: int | None = None
    timings: dict[str, float] = field(default_factory=dict)

    @property
    def agrees(self) -> bool | None:
        return None if self.brute_value is None else self.formula_value == self.brute_value

    def to_dict(self) -> dict:
        out = {
            "formula": str(self.formula_value),
            "existence_sum": str(self.existence_sum),
            "exists": self.exists,
            "terms": [t.to_dict() for t in self.per_rep_terms],
        }
        if self.brute_value is not None:
            out["brute"] = self.brute_value
        return out


# ---------------------------------------------------------------------------
# enumeration oracle


def _all_tuples(n: int, k: int, first: int | None = None) -> np.ndarray:
    """All k-tuples over range(n) as a (k, n^k) array, optionally with a fixed first entry."""
    if k == 0:
        return np.zeros((0, 1), dtype=np.int64)
    if first is None:
        return np.indices((n,) * k, dtype=np.int64).reshape(k, -1)
    rest = np.indices((n,) * (k - 1), dtype=np.int64).reshape(k - 1, -1)
    return np.vstack([np.full((1, rest.shape[1]), first, dtype=np.int64), rest])


def _word_accumulate(E: SurfaceExtension, letters, decorations: np.ndarray, acc: np.ndarray) -> np.ndarray:
    t = E.phi.np_table
    inv = np.asarray(E.phi.inverses, dtype=np.int64)
    u, uinv = E.np_maps()
    for s, e in letters:
        h = decorations[s]
        if e == 1:
            acc = t[uinv[s][acc], h]
        else:
            acc = u[s][t[acc, inv[h]]]
    return acc


def conjugator_table(E: SurfaceExtension, k: int) -> np.ndarray:
    """cnt[y] = #{a : fiber of a gamma_k a^-1 equals y}."""
    phi = E.phi
    uinv = E.word_automorphism(E.surface.boundary_word(k)).inverse().map
    c = E.boundary_twists[k - 1]
    cnt = np.zeros(phi.order, dtype=np.int64)
    for a in phi.elements:
        cnt[phi.prod((uinv[a], c, phi.inv(a)))] += 1
    return cnt


def _brute_chunk(E: SurfaceExtension, first: int | None) -> int:
    sig, phi = E.surface, E.phi
    dec = _all_tuples(phi.order, sig.rank, first)
    acc = np.full(dec.shape[1], phi.identity, dtype=np.int64)
    acc = _word_accumulate(E, sig.commutator_word().letters, dec, acc)
    if sig.boundary == 0:
        return int(np.count_nonzero(acc == phi.inv(E.relator_fiber)))
    m = sig.boundary
    xs = [((2 * sig.genus + j, 1),) for j in range(m - 1)]
    for letters in xs:
        acc = _word_accumulate(E, letters, dec, acc)
    # g'(x_m) is the inverse of the decorated prefix product
    last_map = np.asarray(E.word_map(sig.boundary_word(m)), dtype=np.int64)
    inv = np.asarray(phi.inverses, dtype=np.int64)
    fibers = [dec[2 * sig.genus + j] for j in range(m - 1)] + [last_map[inv[acc]]]
    weight = np.ones(dec.shape[1], dtype=np.int64)
    for k, y in enumerate(fibers, start=1):
        weight = weight * conjugator_table(E, k)[y]
    return int(weight.sum())


def brute_cost(E: SurfaceExtension) -> int:
    sig = E.surface
    return E.phi.order ** sig.rank * (4 * sig.genus + 2 * sig.boundary + 1)


def brute_force_count(E: SurfaceExtension, budget: int = DEFAULT_BUDGET, jobs: int = 1) -> int:
    """Count section data by enumerating fiber decorations of the free generators."""
    cost = brute_cost(E)
    if cost > budget:
        raise BudgetExceeded(f"enumeration needs about {cost} products, budget is {budget}")
    if jobs <= 1 or E.surface.rank == 0 or E.phi.order == 1:
        return _brute_chunk(E, None)
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        parts = pool.map(_brute_chunk, [E] * E.phi.order, range(E.phi.order))
        return sum(parts)


# ---------------------------------------------------------------------------
# the formula


def _to_fraction(x: CycloNumber, what: str) -> Fraction:
    if not x.is_rational():
        raise NonIntegralResult(f"{what} = {x} is not rational")
    return x.to_fraction()


def formula_count(E: SurfaceExtension, irreps: Sequence[Representation] | None = None) -> CountReport:
    """Section count via the sum over fixed, adequate irreducibles."""
    started = time.perf_counter()
    phi = E.phi
    irreps = irr_catalog(phi) if irreps is None else list(irreps)
    chi = E.surface.euler
    fixed = {id(fx.rep): fx for fx in fixed_irreps(E, irreps)}
    order = 1
    for r in irreps:
        order = order * r.order // math.gcd(order, r.order)
    total = CycloNumber.rational(0, order)
    existence = CycloNumber.rational(0, order)
    terms = []
    for rho in irreps:
        fx = fixed.get(id(rho))
        if fx is None:
            terms.append(RepTerm(rho.label, rho.degree, False))
            continue
        z = evaluate_class(E, fx) if fx.adequate else None
        if z is None:
            term = CycloNumber.rational(0, order)
        else:
            weight = Fraction(phi.order, rho.degree) ** (-chi)
            term = z * weight * phi.order
            existence = existence + z * Fraction(rho.degree) ** chi
        total = total + term
        terms.append(RepTerm(rho.label, rho.degree, True, fx.adequacy, z, term))
    value = _to_fraction(total, "section count")
    existence_value = _to_fraction(existence, "existence sum")
    if value < 0 or existence_value < 0:
        raise NegativeResult(f"section count {value} is negative")
    if value.denominator != 1:
        raise NonIntegralResult(f"section count {value} is not an integer")
    if existence_value != value / Fraction(phi.order) ** (1 - chi):
        raise NonIntegralResult("existence sum and section count are inconsistent")
    return CountReport(
        formula_value=value,
        existence_sum=existence_value,
        exists=existence_value != 0,
        per_rep_terms=terms,
        timings={"formula": time.perf_counter() - started},
    )


def exists_section(E: SurfaceExtension, irreps: Sequence[Representation] | None = None) -> bool:
    return formula_count(E, irreps).exists


def verify_count(E: SurfaceExtension, irreps=None, budget: int = DEFAULT_BUDGET, jobs: int = 1) -> CountReport:
    report = formula_count(E, irreps)
    started = time.perf_counter()
    report.brute_value = brute_force_count(E, budget, jobs)
    report.timings["brute"] = time.perf_counter() - started
    return report


def reencode_twist(E: SurfaceExtension, k: int, a: int) -> SurfaceExtension:
    """Same bundle with gamma_k replaced by its conjugate a gamma_k a^-1, a in the fiber."""
    phi = E.phi
    uinv = E.word_automorphism(E.surface.boundary_word(k)).inverse().map
    twists = list(E.boundary_twists)
    twists[k - 1] = phi.prod((uinv[a], twists[k - 1], phi.inv(a)))
    return SurfaceExtension(E.surface, phi, E.lift_auts, None, twists)


# ---------------------------------------------------------------------------
# lifting homomorphisms through a finite surjection


@dataclass
class LiftProblem:
    cover: FiniteGroup
    base: FiniteGroup
    q: tuple[int, ...]
    kernel: FiniteGroup
    kernel_embedding: list[int]
    lifts: list[int]
    extension: SurfaceExtension


def lift_problem(cover: FiniteGroup, base: FiniteGroup, q: Sequence[int], g_images: Sequence[int], genus: int) -> LiftProblem:
    """Encode lifts of g: surface group -> base through q: cover -> base as a closed extension."""
    q = tuple(q)
    if len(q) != cover.order or not is_homomorphism(cover, base, q):
        raise InvalidInput("q is not a homomorphism from the cover to the base")
    if set(q) != set(base.elements):
        raise NotSurjective("q is not surjective")
    if len(g_images) != 2 * genus:
        raise InvalidInput(f"need {2 * genus} generator images")
    rel = base.prod(base.commutator(g_images[2 * i], g_images[2 * i + 1]) for i in range(genus))
    if rel != base.identity:
        raise RelationViolated("generator images do not satisfy the surface relation")
    if len(generated_subgroup(base, g_images)) != base.order:
        raise NotSurjective("generator images do not generate the base group")
    kernel_members = [x for x in cover.elements if q[x] == base.identity]
    kernel, emb = subgroup(cover, kernel_members, name=f"ker({cover.name})")
    pos = {x: i for i, x in enumerate(emb)}
    lifts = [min(x for x in cover.elements if q[x] == g) for g in g_images]
    auts = [Automorphism(kernel, [pos[cover.conj(a, emb[h])] for h in kernel.elements]) for a in lifts]
    f = cover.prod(cover.commutator(lifts[2 * i], lifts[2 * i + 1]) for i in range(genus))
    ext = SurfaceExtension(SurfaceSignature(genus), kernel, auts, pos[f])
    return LiftProblem(cover, base, q, kernel, emb, lifts, ext)


def lift_brute(problem: LiftProblem, budget: int = DEFAULT_BUDGET) -> int:
    """Count kernel corrections k with prod [a_i k, b_i k'] = 1 directly in the cover."""
    cover, emb, lifts = problem.cover, problem.kernel_embedding, problem.lifts
    genus = len(lifts) // 2
    n = len(emb)
    if n ** len(lifts) * 4 * genus > budget:
        raise BudgetExceeded("lift enumeration exceeds the budget")
    t = cover.np_table
    inv = np.asarray(cover.inverses, dtype=np.int64)
    dec = _all_tuples(n, len(lifts))
    elems = t[np.asarray(lifts, dtype=np.int64)[:, None], np.asarray(emb, dtype=np.int64)[dec]]
    acc = np.full(dec.shape[1], cover.identity, dtype=np.int64)
    for i in range(genus):
        a, b = elems[2 * i], elems[2 * i + 1]
        acc = t[t[t[t[acc, a], b], inv[a]], inv[b]]
    return int(np.count_nonzero(acc == cover.identity))


def lift_count_finite(
    cover: FiniteGroup, base: FiniteGroup, q: Sequence[int], g_images: Sequence[int], genus: int,
    brute: bool = True, budget: int = DEFAULT_BUDGET,
) -> CountReport:
    problem = lift_problem(cover, base, q, g_images, genus)
    report = formula_count(problem.extension)
    if brute:
        report.brute_value = lift_brute(problem, budget)
    return report


# ---------------------------------------------------------------------------
# homomorphism counts with prescribed boundary classes


def fm_count(group: FiniteGroup, genus: int, classes: Sequence[ConjClass], irreps=None) -> int:
    if genus < 1:
        raise InvalidInput("genus must be at least 1")
    irreps = irr_catalog(group) if irreps is None else irreps
    m = len(classes)
    total = CycloNumber.rational(0)
    for rho in irreps:
        term = CycloNumber.rational(Fraction(rho.degree) ** (2 - 2 * genus - m), rho.order)
        for cls in classes:
            s = CycloNumber.rational(0, rho.order)
            for y in cls.members:
                s = s + rho.traces[y]
            term = term * s
        total = total + term
    value = _to_fraction(total, "homomorphism count") * group.order ** (2 * genus - 1)
    if value.denominator != 1:
        raise NonIntegralResult(f"homomorphism count {value} is not an integer")
    if value < 0:
        raise NegativeResult(f"homomorphism count {value} is negative")
    return int(value)


def fm_brute(group: FiniteGroup, genus: int, classes: Sequence[ConjClass], budget: int = DEFAULT_BUDGET) -> int:
    n = group.order
    m = len(classes)
    sizes = [len(c) for c in classes[:-1]] if m else []
    tuples = n ** (2 * genus) * math.prod(sizes)
    if tuples * (4 * genus + m) > budget:
        raise BudgetExceeded(f"enumeration of {tuples} tuples exceeds the budget")
    t = group.np_table
    inv = np.asarray(group.inverses, dtype=np.int64)
    shape = (n,) * (2 * genus) + tuple(sizes)
    idx = np.indices(shape, dtype=np.int64).reshape(len(shape), -1)
    acc = np.full(idx.shape[1], group.identity, dtype=np.int64)
    for i in range(genus):
        a, b = idx[2 * i], idx[2 * i + 1]
        acc = t[t[t[t[acc, a], b], inv[a]], inv[b]]
    for j, cls in enumerate(classes[:-1]):
        acc = t[acc, np.asarray(cls.members, dtype=np.int64)[idx[2 * genus + j]]]
    if m == 0:
        return int(np.count_nonzero(acc == group.identity))
    member = np.zeros(n, dtype=bool)
    member[list(classes[-1].members)] = True
    return int(np.count_nonzero(member[inv[acc]]))


# ---------------------------------------------------------------------------
# the quaternion survey


def q8_survey(with_pairs: bool = False):
    """Torus section counts over all commuting pairs of automorphisms of Q8."""
    q = quaternion(8)
    auts = q.automorphisms()
    sig = SurfaceSignature(1)
    values: dict[int, int] = {}
    for u, v in itertools.product(auts, repeat=2):
        if u.compose(v) != v.compose(u):
            continue
        count = brute_force_count(SurfaceExtension(sig, q, [u, v], q.identity))
        values[count] = values.get(count, 0) + 1
    return (set(values), values) if with_pairs else set(values)


# ---------------------------------------------------------------------------
# instance catalog for the oracle comparison


def catalog_groups() -> list[FiniteGroup]:
    from .groups import abelian, cyclic, dihedral, symmetric, trivial

    return [trivial(), cyclic(2), cyclic(3), cyclic(4), abelian([2, 2]), symmetric(3), dihedral(8), quaternion(8)]


def _composite(maps: Sequence[tuple[int, ...]], inv_maps: Sequence[tuple[int, ...]], word: FreeWord, n: int) -> tuple[int, ...]:
    m = list(range(n))
    for s, e in reversed(word.letters):
        step = maps[s] if e == 1 else inv_maps[s]
        m = [step[x] for x in m]
    return tuple(m)


def _closed_fibers(phi: FiniteGroup, sig: SurfaceSignature, auts: Sequence[Automorphism]) -> list[int]:
    """Relator fibers f compatible with the given lift automorphisms."""
    comp = _composite([a.map for a in auts], [a.inverse().map for a in auts], sig.commutator_word(), phi.order)
    return [f for f in phi.elements if all(phi.conj(f, h) == comp[h] for h in phi.elements)]


def oracle_catalog(
    groups: Sequence[FiniteGroup] | None = None,
    genera: Sequence[int] = (1, 2),
    boundaries: Sequence[int] = (0, 1, 2),
    samples: int = 50,
    exhaustive_order: int = 4,
    all_twists_order: int = 6,
    twist_samples: int = 16,
    seed: int = 0,
) -> Iterator[SurfaceExtension]:
    """Extensions for the formula/oracle comparison.

    Automorphism tuples are exhaustive for fiber groups of order at most
    ``exhaustive_order`` and sampled (``samples`` valid tuples) otherwise;
    boundary twists are exhaustive up to ``all_twists_order``.  Closed
    surfaces use every relator fiber compatible with the automorphisms.
    """
    import random

    rng = random.Random(seed)
    for phi in groups if groups is not None else catalog_groups():
        auts = phi.automorphisms()
        for d in genera:
            for m in boundaries:
                sig = SurfaceSignature(d, m)
                if phi.order <= exhaustive_order:
                    tuples: Iterator = itertools.product(auts, repeat=sig.rank)
                else:
                    tuples = _sampled_tuples(rng, phi, sig, auts, samples)
                for us in tuples:
                    if m == 0:
                        for f in _closed_fibers(phi, sig, us):
                            yield SurfaceExtension(sig, phi, list(us), f)
                        continue
                    if phi.order <= all_twists_order:
                        twist_iter = itertools.product(phi.elements, repeat=m)
                    else:
                        twist_iter = (tuple(rng.randrange(phi.order) for _ in range(m)) for _ in range(twist_samples))
                    for tw in twist_iter:
                        yield SurfaceExtension(sig, phi, list(us), None, list(tw))


def _sampled_tuples(rng, phi, sig, auts, samples, max_tries: int = 200_000):
    found = 0
    tries = 0
    # always include the product bundle
    ident = [Automorphism.identity(phi)] * sig.rank
    yield ident
    found += 1
    while found < samples and tries < max_tries:
        tries += 1
        us = [rng.choice(auts) for _ in range(sig.rank)]
        if sig.boundary == 0 and not _closed_fibers(phi, sig, us):
            continue
        found += 1
        yield us
    if found < samples:
        raise AssertionError(f"could only sample {found} valid automorphism tuples")


def default_jobs() -> int:
    return max(1, min(4, os.cpu_count() or 1))
