"""Exact matrix representations of finite groups over cyclotomic fields.

Catalog groups get their irreducibles from explicit constructions (characters
for cyclic groups, monomial matrices for dihedral and dicyclic groups, Young's
seminormal form for symmetric groups, Kronecker products for direct
products).  A group given only by a table or permutation generators is
matched to a catalog group by an isomorphism search, and the representations
are transported along it.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .errors import DimensionMismatch, IncompleteIrreps, InvalidInput, UnsupportedGroup, ValidationFailed
from .exactfield import CycloMatrix, CycloNumber, kernel, parse_cyclo, zeta
from .groups import (
    Automorphism,
    FiniteGroup,
    abelian,
    alternating,
    cyclic,
    dicyclic,
    dihedral,
    find_isomorphism,
    group_exponent,
    symmetric,
)


class Representation:
    """A matrix representation, one CycloMatrix per group element."""

    __slots__ = ("group", "degree", "order", "matrices", "label", "_traces", "_key")

    def __init__(self, group: FiniteGroup, matrices: Sequence[CycloMatrix], label: str = "rho") -> None:
        if len(matrices) != group.order:
            raise DimensionMismatch("need one matrix per group element")
        order = 1
        for m in matrices:
            order = order * m.order // math.gcd(order, m.order)
        self.group = group
        self.degree = matrices[0].rows
        if any(m.shape != (self.degree, self.degree) for m in matrices):
            raise DimensionMismatch("representation matrices must share one square shape")
        self.order = order
        self.matrices = tuple(m.lift(order) for m in matrices)
        self.label = label
        self._traces: tuple[CycloNumber, ...] | None = None
        self._key = None

    def __call__(self, g: int) -> CycloMatrix:
        return self.matrices[g]

    def __repr__(self) -> str:
        return f"Representation({self.label}, degree={self.degree}, group={self.group.name})"

    @property
    def traces(self) -> tuple[CycloNumber, ...]:
        if self._traces is None:
            self._traces = tuple(m.trace() for m in self.matrices)
        return self._traces

    def character(self) -> "Character":
        return character(self)

    def char_key(self) -> tuple:
        """Hashable key identifying the character (equal iff equivalent, for irreducibles)."""
        if self._key is None:
            self._key = tuple(self.traces[c.representative] for c in self.group.conjugacy_classes())
        return self._key


@dataclass(frozen=True)
class Character:
    group: FiniteGroup
    values: tuple[CycloNumber, ...]  # one value per conjugacy class

    def __call__(self, g: int) -> CycloNumber:
        classes = self.group.conjugacy_classes()
        for c, v in zip(classes, self.values):
            if g in c.members:
                return v
        raise AssertionError("element not in any class")

    @property
    def degree(self) -> CycloNumber:
        return self(self.group.identity)


def character(rho: Representation) -> Character:
    return Character(rho.group, rho.char_key())


def char_inner(chi1: Character, chi2: Character) -> Fraction:
    """|G|^-1 sum_g chi1(g) chi2(g^-1)."""
    g = chi1.group
    if chi2.group is not g:
        raise InvalidInput("characters of different groups")
    total = CycloNumber.rational(0)
    for cls, v1 in zip(g.conjugacy_classes(), chi1.values):
        v2 = chi2(g.inv(cls.representative))
        total = total + v1 * v2 * len(cls)
    value = total / g.order
    if not value.is_rational():
        raise ValidationFailed(f"character inner product {value} is not rational")
    return value.to_fraction()


# ---------------------------------------------------------------------------
# construction helpers


def from_generators(group: FiniteGroup, gen_mats: Mapping[int, CycloMatrix], label: str) -> Representation:
    """Extend generator matrices along words and verify the homomorphism law.

    The check rho(x s) = rho(x) rho(s) for every element x and generator s
    implies the full law by induction on word length.
    """
    n = next(iter(gen_mats.values())).rows
    order = 1
    for m in gen_mats.values():
        order = order * m.order // math.gcd(order, m.order)
    gen_mats = {s: m.lift(order) for s, m in gen_mats.items()}
    mats: dict[int, CycloMatrix] = {group.identity: CycloMatrix.identity(n, order)}
    frontier = [group.identity]
    while frontier:
        nxt = []
        for x in frontier:
            for s, ms in gen_mats.items():
                y = group.table[x][s]
                my = mats[x] @ ms
                if y in mats:
                    if mats[y] != my:
                        raise ValidationFailed(f"{label}: generator matrices violate a group relation")
                else:
                    mats[y] = my
                    nxt.append(y)
        frontier = nxt
    if len(mats) != group.order:
        raise ValidationFailed(f"{label}: generators do not reach every element")
    return Representation(group, [mats[g] for g in group.elements], label)


def one_dim(group: FiniteGroup, values: Sequence, label: str, order: int) -> Representation:
    return Representation(group, [CycloMatrix([[v]], order) for v in values], label)


def _irr_cyclic(g: FiniteGroup, n: int) -> list[Representation]:
    return [one_dim(g, [zeta(n, j * k) for k in g.data], f"chi{j}", n) for j in range(n)]


def _irr_dihedral(g: FiniteGroup, order: int) -> list[Representation]:
    n = order // 2
    e = group_exponent(g)
    data = g.data
    out = []
    signs = [(1, 1), (1, -1)] + ([(-1, 1), (-1, -1)] if n % 2 == 0 else [])
    names = ["triv", "sgn_s", "sgn_r", "sgn_rs"]
    for (rr, ss), nm in zip(signs, names):
        out.append(one_dim(g, [rr**k * ss**s for k, s in data], nm, e))
    swap = CycloMatrix([[0, 1], [1, 0]], e)
    for j in range(1, (n - 1) // 2 + 1):
        r = CycloMatrix.diag([zeta(n, j), zeta(n, -j)], e)
        out.append(_monomial(g, r, swap, f"std{j}"))
    return out


def _monomial(g: FiniteGroup, a: CycloMatrix, x: CycloMatrix, label: str) -> Representation:
    """Representation on (k, e) data sending the element to a^k x^e."""
    mats = []
    for k, e in g.data:
        m = CycloMatrix.identity(a.rows, a.order)
        for _ in range(k):
            m = m @ a
        if e:
            m = m @ x
        mats.append(m)
    return Representation(g, mats, label)


def _irr_dicyclic(g: FiniteGroup, order: int) -> list[Representation]:
    n = order // 4
    e = group_exponent(g)
    out = []
    if n % 2 == 0:
        vals = [(1, 1), (1, -1), (-1, 1), (-1, -1)]
        for (ra, rx), nm in zip(vals, ["triv", "sgn_x", "sgn_a", "sgn_ax"]):
            out.append(one_dim(g, [ra**k * rx**s for k, s in g.data], nm, e))
    else:
        for s in range(4):
            # x -> i^s forces a -> x^2 = (-1)^s
            out.append(one_dim(g, [zeta(4, 2 * s * k + s * ex) for k, ex in g.data], f"lin{s}", e))
    for j in range(1, n):
        a = CycloMatrix.diag([zeta(2 * n, j), zeta(2 * n, -j)], e)
        x = CycloMatrix([[0, (-1) ** j], [1, 0]], e)
        out.append(_monomial(g, a, x, f"std{j}"))
    return out


def _partitions(n: int, largest: int | None = None):
    if n == 0:
        yield ()
        return
    largest = n if largest is None else largest
    for k in range(min(n, largest), 0, -1):
        for rest in _partitions(n - k, k):
            yield (k,) + rest


def _standard_tableaux(shape: tuple[int, ...]) -> list[dict[int, tuple[int, int]]]:
    """Standard Young tableaux as maps entry -> (row, col), entries 0..n-1."""
    n = sum(shape)
    out = []

    def rec(k: int, rows: list[int], pos: dict):
        if k == n:
            out.append(dict(pos))
            return
        for r in range(len(shape)):
            c = rows[r]
            if c < shape[r] and (r == 0 or rows[r - 1] > c):
                rows[r] += 1
                pos[k] = (r, c)
                rec(k + 1, rows, pos)
                rows[r] -= 1
                del pos[k]

    rec(0, [0] * len(shape), {})
    return out


def _seminormal(shape: tuple[int, ...], sign: int) -> list[CycloMatrix]:
    """Matrices of the adjacent transpositions (i, i+1) in Young's seminormal form."""
    tabs = _standard_tableaux(shape)
    keys = [tuple(sorted(t.items())) for t in tabs]
    index = {k: i for i, k in enumerate(keys)}
    dim = len(tabs)
    n = sum(shape)
    mats = []
    for i in range(n - 1):
        m = [[Fraction(0)] * dim for _ in range(dim)]
        for col, t in enumerate(tabs):
            (r1, c1), (r2, c2) = t[i], t[i + 1]
            axial = sign * ((c2 - r2) - (c1 - r1))
            m[col][col] = Fraction(1, axial)
            if r1 != r2 and c1 != c2:
                swapped = dict(t)
                swapped[i], swapped[i + 1] = t[i + 1], t[i]
                other = index[tuple(sorted(swapped.items()))]
                # the partner column carries 1 or 1 - 1/r^2 depending on which tableau is "lower"
                m[other][col] = Fraction(1) if axial > 0 else 1 - Fraction(1, axial * axial)
        mats.append(CycloMatrix(m, 1))
    return mats


def _adjacent_transposition(g: FiniteGroup, i: int) -> int:
    n = len(g.data[0])
    p = list(range(n))
    p[i], p[i + 1] = p[i + 1], p[i]
    return g.data.index(tuple(p))


def _irr_symmetric(g: FiniteGroup, n: int) -> list[Representation]:
    if n == 1:
        return [one_dim(g, [1], "triv", 1)]
    gens = [_adjacent_transposition(g, i) for i in range(n - 1)]
    out = []
    for shape in _partitions(n):
        label = "S" + "".join(map(str, shape))
        last = None
        for sign in (1, -1):
            mats = _seminormal(shape, sign)
            try:
                out.append(from_generators(g, dict(zip(gens, mats)), label))
                break
            except ValidationFailed as exc:
                last = exc
        else:
            raise ValidationFailed(f"seminormal form failed for shape {shape}: {last}")
    return out


def _irr_a4(g: FiniteGroup) -> list[Representation]:
    e = group_exponent(g)
    data = g.data
    v4 = {p for p in data if all(p[x] != x for x in range(4)) or p == (0, 1, 2, 3)}
    t = (1, 2, 0, 3)
    coset = {}
    cur = (0, 1, 2, 3)
    for k in range(3):
        for v in v4:
            coset[tuple(cur[v[x]] for x in range(4))] = k
        cur = tuple(t[cur[x]] for x in range(4))
    out = [one_dim(g, [zeta(3, j * coset[p]) for p in data], f"lin{j}", e) for j in range(3)]
    mats = []
    for p in data:
        # permutation action on e_i - e_3, i = 0..2
        m = [[0] * 3 for _ in range(3)]
        for i in range(3):
            for pt, s in ((p[i], 1), (p[3], -1)):
                if pt != 3:
                    m[pt][i] += s
        mats.append(CycloMatrix(m, e))
    out.append(Representation(g, mats, "std3"))
    return out


def _irr_product(g: FiniteGroup) -> list[Representation]:
    a, b = g.factors
    e = group_exponent(g)
    out = []
    for ra in irr_catalog(a):
        for rb in irr_catalog(b):
            mats = [_kron(ra(x).lift(e), rb(y).lift(e)) for x, y in g.data]
            out.append(Representation(g, mats, f"{ra.label}*{rb.label}"))
    return out


def _kron(a: CycloMatrix, b: CycloMatrix) -> CycloMatrix:
    rows = []
    for ra in a.entries:
        for rb in b.entries:
            rows.append([x * y for x in ra for y in rb])
    return CycloMatrix(rows, a.order)


def _catalog_candidates(order: int) -> list[FiniteGroup]:
    out = []
    if order <= 5000:
        out.append(cyclic(order))
    for factors in _abelian_types(order):
        if len(factors) > 1:
            out.append(abelian(factors))
    if order % 2 == 0 and order >= 4:
        out.append(dihedral(order))
    if order % 4 == 0 and order >= 8:
        out.append(dicyclic(order))
    for n in range(3, 6):
        if math.factorial(n) == order:
            out.append(symmetric(n))
    if order == 12:
        out.append(alternating(4))
    return out


def _abelian_types(order: int) -> list[list[int]]:
    """All ways to write the group as a product of cyclic prime-power groups."""
    primes = []
    m, p = order, 2
    while m > 1:
        if m % p == 0:
            k = 0
            while m % p == 0:
                m //= p
                k += 1
            primes.append((p, k))
        p += 1
    per_prime = [[[p**e for e in part] for part in _partitions(k)] for p, k in primes]
    return [sum(choice, []) for choice in itertools.product(*per_prime)] if primes else [[]]


def transport(rep: Representation, target: FiniteGroup, iso: Sequence[int]) -> Representation:
    """Pull back along an isomorphism target -> rep.group given as an image list."""
    return Representation(target, [rep(iso[g]) for g in target.elements], rep.label)


_IRR_CACHE: dict[int, list[Representation]] = {}


def irr_catalog(g: FiniteGroup) -> list[Representation]:
    """Complete, validated list of irreducibles in deterministic order."""
    cached = _IRR_CACHE.get(id(g))
    if cached is not None and cached[0].group is g:
        return list(cached)
    cat = g.catalog
    if cat is None:
        reps = None
        for cand in _catalog_candidates(g.order):
            iso = find_isomorphism(g, cand)
            if iso is not None:
                reps = [transport(r, g, iso) for r in irr_catalog(cand)]
                break
        if reps is None:
            raise UnsupportedGroup(f"{g.name} is not isomorphic to a catalog group; supply representations")
    elif cat[0] == "cyclic":
        reps = _irr_cyclic(g, cat[1])
    elif cat[0] == "dihedral":
        reps = _irr_dihedral(g, cat[1])
    elif cat[0] == "dicyclic":
        reps = _irr_dicyclic(g, cat[1])
    elif cat[0] == "symmetric":
        reps = _irr_symmetric(g, cat[1])
    elif cat[0] == "alternating":
        reps = _irr_a4(g)
    elif cat[0] == "product":
        reps = _irr_product(g)
    else:
        raise UnsupportedGroup(f"no representation construction for {cat!r}")
    reps = _sorted(reps)
    check_complete(g, reps)
    _IRR_CACHE[id(g)] = reps
    return list(reps)


def _sorted(reps: list[Representation]) -> list[Representation]:
    # degree first, then the trivial character, then the rest by character values
    order = 1
    for r in reps:
        order = order * r.order // math.gcd(order, r.order)

    def key(r: Representation):
        vals = r.char_key()
        nontrivial = any(v != r.degree for v in vals)
        return (r.degree, nontrivial, tuple(tuple(-c for c in v.lift(order).coeffs) for v in vals))

    return sorted(reps, key=key)


def check_complete(g: FiniteGroup, reps: Sequence[Representation]) -> None:
    """Sum of squared degrees equals |G| and characters are orthonormal."""
    if sum(r.degree**2 for r in reps) != g.order:
        raise IncompleteIrreps(f"squared degrees sum to {sum(r.degree ** 2 for r in reps)}, not {g.order}")
    chars = [character(r) for r in reps]
    for i, ci in enumerate(chars):
        for j in range(i, len(chars)):
            val = char_inner(ci, chars[j])
            if val != (1 if i == j else 0):
                raise ValidationFailed(f"<chi_{i}, chi_{j}> = {val}")


# ---------------------------------------------------------------------------
# action, equivalence and intertwiners


def conjugate_rep(rho: Representation, u: Automorphism | None = None, c: int | None = None) -> Representation:
    """h -> rho(c^-1 u(h) c)."""
    g = rho.group
    mats = []
    for h in g.elements:
        x = u(h) if u is not None else h
        if c is not None:
            x = g.prod((g.inv(c), x, c))
        mats.append(rho(x))
    return Representation(g, mats, rho.label)


def equivalent(r1: Representation, r2: Representation) -> bool:
    """Character test; exact for irreducibles."""
    return r1.group is r2.group and r1.traces == r2.traces


def intertwiner(r1: Representation, r2: Representation) -> CycloMatrix | None:
    """Canonical M with r1(h) M = M r2(h) for all h, or None.

    The kernel of the stacked linear system (over a generating set) is put in
    reduced echelon form; the first basis vector is scaled so its first nonzero
    entry is 1.
    """
    if r1.group is not r2.group or r1.degree != r2.degree:
        return None
    n = r1.degree
    order = r1.order * r2.order // math.gcd(r1.order, r2.order)
    zero = CycloNumber.rational(0, order)
    one = CycloNumber.rational(1, order)
    rows = []
    # unknown M[i][j] lives at column i*n + j
    for s in r1.group.generating_set() or [r1.group.identity]:
        a = r1(s).lift(order).entries
        b = r2(s).lift(order).entries
        for i in range(n):
            for j in range(n):
                row = [zero] * (n * n)
                for k in range(n):
                    if a[i][k]:
                        row[k * n + j] = row[k * n + j] + a[i][k]
                    if b[k][j]:
                        row[i * n + k] = row[i * n + k] - b[k][j]
                rows.append(row)
    basis = kernel(rows, n * n, zero=zero, one=one)
    if not basis:
        return None
    v = basis[0]
    lead = next(x for x in v if x)
    v = [x / lead for x in v]
    m = CycloMatrix([v[i * n:(i + 1) * n] for i in range(n)], order)
    for h in r1.group.elements:
        if r1(h) @ m != m @ r2(h):
            raise ValidationFailed("intertwiner failed verification on the full group")
    return m


@dataclass
class RepReport:
    ok: bool
    failures: list[str] = field(default_factory=list)
    inner: Fraction | None = None


def validate_rep(rho: Representation) -> RepReport:
    """Homomorphism law on all pairs, invertibility, and irreducibility."""
    g = rho.group
    failures = []
    ident = CycloMatrix.identity(rho.degree, rho.order)
    if rho(g.identity) != ident:
        failures.append("rho(identity) is not the identity matrix")
    for a in g.elements:
        for b in g.elements:
            if rho(a) @ rho(b) != rho(g.mul(a, b)):
                failures.append(f"homomorphism fails for pair ({g.label(a)}, {g.label(b)})")
                break
        if len(failures) > 5:
            break
    for a in g.elements:
        if rho(a) @ rho(g.inv(a)) != ident:
            failures.append(f"rho({g.label(a)}) is not invertible with inverse rho({g.label(g.inv(a))})")
            break
    inner = None
    try:
        inner = char_inner(character(rho), character(rho))
    except ValidationFailed as exc:
        failures.append(str(exc))
    if inner is not None and inner != 1:
        failures.append(f"not irreducible: char_inner = {inner}")
    return RepReport(ok=not failures, failures=failures, inner=inner)


def rep_from_spec(group: FiniteGroup, spec: Mapping, label: str = "rho") -> Representation:
    """Parse ``{"degree": n, "order": N, "matrices": {name: [[cyclo strings]]}}`` and validate."""
    order = int(spec.get("order", 1))
    degree = int(spec["degree"])
    raw = spec["matrices"]
    mats = [None] * group.order
    for name, rows in raw.items():
        m = CycloMatrix([[parse_cyclo(str(x), order) for x in r] for r in rows], order)
        if m.shape != (degree, degree):
            raise DimensionMismatch(f"matrix for {name} is not {degree}x{degree}")
        mats[group.index(name)] = m
    if any(m is None for m in mats):
        raise InvalidInput("a matrix is required for every group element")
    rho = Representation(group, mats, spec.get("label", label))
    report = validate_rep(rho)
    if not report.ok:
        raise ValidationFailed("; ".join(report.failures))
    return rho


def irreps_from_spec(group: FiniteGroup, specs: Sequence[Mapping] | None) -> list[Representation]:
    if not specs:
        return irr_catalog(group)
    reps = [rep_from_spec(group, s, f"rho{i}") for i, s in enumerate(specs)]
    check_complete(group, reps)
    return reps
