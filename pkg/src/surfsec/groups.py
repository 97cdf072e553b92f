"""Finite groups stored as multiplication tables.

Elements are the indices ``0..n-1``.  Every constructor funnels through
:class:`FiniteGroup`, which verifies the group axioms once; afterwards all
products are table lookups.  Catalog constructors record how the group was
built in ``FiniteGroup.catalog`` so that :mod:`surfsec.reps` can produce
its irreducible representations.

Permutations compose right to left: ``(p * q)(x) = p(q(x))``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import reduce
from typing import Callable, Hashable, Iterable, Mapping, Sequence

import numpy as np

from .errors import ClosureTooLarge, InvalidInput, NotAGroup, NotAutomorphism, UnsupportedGroup

MAX_CLOSURE = 10_000


class FiniteGroup:
    """A validated finite group given by its multiplication table."""

    def __init__(
        self,
        table: Sequence[Sequence[int]],
        name: str = "G",
        element_names: Sequence[str] | None = None,
        catalog: tuple | None = None,
    ) -> None:
        arr = np.asarray(table, dtype=np.int64)
        n = arr.shape[0] if arr.ndim == 2 else 0
        if n == 0 or arr.shape != (n, n):
            raise NotAGroup("multiplication table must be a non-empty square array")
        if arr.min() < 0 or arr.max() >= n:
            raise NotAGroup("table entries must be element indices")
        rng = np.arange(n)
        ids = [e for e in range(n) if (arr[e] == rng).all() and (arr[:, e] == rng).all()]
        if not ids:
            raise NotAGroup("no two-sided identity element")
        identity = ids[0]
        # Latin square rows give inverses; associativity checked on all triples
        for row in arr:
            if len(set(row.tolist())) != n:
                raise NotAGroup("table is not a Latin square")
        lhs = arr[arr]                    # lhs[a, b, c] = (ab)c
        rhs = arr[rng[:, None, None], arr[None, :, :]]  # rhs[a, b, c] = a(bc)
        if not np.array_equal(lhs, rhs):
            a, b, c = np.argwhere(lhs != rhs)[0]
            raise NotAGroup(f"associativity fails for ({a}, {b}, {c})")
        inverses = [int(np.nonzero(arr[g] == identity)[0][0]) for g in range(n)]
        for g in range(n):
            if arr[inverses[g], g] != identity:
                raise NotAGroup(f"element {g} has no two-sided inverse")

        self.order = n
        self.np_table = arr
        self.table = tuple(tuple(int(x) for x in row) for row in arr)
        self.identity = identity
        self.inverses = tuple(inverses)
        self.name = name
        if element_names is None:
            element_names = [str(g) for g in range(n)]
        if len(element_names) != n or len(set(element_names)) != n:
            raise NotAGroup("element names must be unique, one per element")
        self.element_names = tuple(element_names)
        self._index = {s: i for i, s in enumerate(self.element_names)}
        self.catalog = catalog
        self._classes: list[ConjClass] | None = None
        self._auts: list[Automorphism] | None = None
        self._gens: list[int] | None = None
        # concrete element data for catalog groups (tuples, permutations, pairs)
        self.data: tuple | None = None
        self.factors: tuple[FiniteGroup, FiniteGroup] | None = None

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name}, order={self.order})"

    def __len__(self) -> int:
        return self.order

    @property
    def elements(self) -> range:
        return range(self.order)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self.inverses[a]

    def prod(self, items: Iterable[int]) -> int:
        acc = self.identity
        t = self.table
        for x in items:
            acc = t[acc][x]
        return acc

    def conj(self, a: int, h: int) -> int:
        """a h a^-1."""
        return self.table[self.table[a][h]][self.inverses[a]]

    def commutator(self, a: int, b: int) -> int:
        t, inv = self.table, self.inverses
        return t[t[t[a][b]][inv[a]]][inv[b]]

    def power(self, g: int, k: int) -> int:
        if k < 0:
            g, k = self.inverses[g], -k
        acc = self.identity
        for _ in range(k):
            acc = self.table[acc][g]
        return acc

    def element_order(self, g: int) -> int:
        k, x = 1, g
        while x != self.identity:
            x = self.table[x][g]
            k += 1
        return k

    def index(self, name: str | int) -> int:
        if isinstance(name, int):
            if not 0 <= name < self.order:
                raise InvalidInput(f"element index {name} out of range for {self.name}")
            return name
        try:
            return self._index[name]
        except KeyError:
            raise InvalidInput(f"unknown element {name!r} of {self.name}") from None

    def label(self, g: int) -> str:
        return self.element_names[g]

    def is_abelian(self) -> bool:
        return bool((self.np_table == self.np_table.T).all())

    def center(self) -> list[int]:
        return [z for z in self.elements if all(self.table[z][g] == self.table[g][z] for g in self.elements)]

    def generating_set(self) -> list[int]:
        """A small generating set, chosen greedily by element order (deterministic)."""
        if self._gens is None:
            by_order = sorted(self.elements, key=lambda g: (-self.element_order(g), g))
            gens: list[int] = []
            span = {self.identity}
            for g in by_order:
                if len(span) == self.order:
                    break
                if g not in span:
                    gens.append(g)
                    span = set(generated_subgroup(self, gens))
            self._gens = gens
        return list(self._gens)

    def conjugacy_classes(self) -> list["ConjClass"]:
        if self._classes is None:
            self._classes = conjugacy_classes(self)
        return list(self._classes)

    def class_of(self, g: int) -> "ConjClass":
        for c in self.conjugacy_classes():
            if g in c.members:
                return c
        raise AssertionError("classes do not partition the group")

    def automorphisms(self) -> list["Automorphism"]:
        if self._auts is None:
            self._auts = all_automorphisms(self)
        return list(self._auts)


@dataclass(frozen=True)
class ConjClass:
    representative: int
    members: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.members)


# ---------------------------------------------------------------------------
# constructors


def from_elements(
    elements: Sequence[Hashable],
    mul: Callable[[Hashable, Hashable], Hashable],
    name: str,
    names: Callable[[Hashable], str] | None = None,
    catalog: tuple | None = None,
) -> FiniteGroup:
    index = {x: i for i, x in enumerate(elements)}
    table = [[index[mul(x, y)] for y in elements] for x in elements]
    labels = [names(x) for x in elements] if names else None
    group = FiniteGroup(table, name=name, element_names=labels, catalog=catalog)
    group.data = tuple(elements)
    return group


def trivial() -> FiniteGroup:
    return cyclic(1)


def cyclic(n: int) -> FiniteGroup:
    if n < 1:
        raise InvalidInput("cyclic group order must be positive")
    return from_elements(list(range(n)), lambda a, b: (a + b) % n, f"C{n}", str, ("cyclic", n))


def abelian(factors: Sequence[int]) -> FiniteGroup:
    """Direct product of cyclic groups of the given orders."""
    if not factors:
        return trivial()
    groups = [cyclic(n) for n in factors]
    return reduce(direct_product, groups)


def dihedral(order: int) -> FiniteGroup:
    """Dihedral group of the given order 2n, generated by r (order n) and s."""
    if order < 2 or order % 2:
        raise InvalidInput("dihedral group order must be even and at least 2")
    n = order // 2

    def mul(x, y):
        (k1, e1), (k2, e2) = x, y
        return ((k1 + (-1) ** e1 * k2) % n, (e1 + e2) % 2)

    def name(x):
        k, e = x
        r = "" if k == 0 else ("r" if k == 1 else f"r^{k}")
        s = "s" if e else ""
        return " ".join(p for p in (r, s) if p) or "1"

    elems = [(k, e) for e in range(2) for k in range(n)]
    return from_elements(elems, mul, f"D{order}", name, ("dihedral", order))


def dicyclic(order: int) -> FiniteGroup:
    """Dicyclic group of order 4n: <a, x | a^(2n) = 1, x^2 = a^n, x a x^-1 = a^-1>."""
    if order < 4 or order % 4:
        raise InvalidInput("dicyclic group order must be a multiple of 4")
    n = order // 4
    m = 2 * n

    def mul(x, y):
        (k1, e1), (k2, e2) = x, y
        k = k1 + (-1) ** e1 * k2 + (n if e1 and e2 else 0)
        return (k % m, (e1 + e2) % 2)

    elems = [(k, e) for e in range(2) for k in range(m)]
    if order == 8:
        labels = {(0, 0): "1", (1, 0): "i", (2, 0): "-1", (3, 0): "-i",
                  (0, 1): "j", (1, 1): "k", (2, 1): "-j", (3, 1): "-k"}
        return from_elements(elems, mul, "Q8", labels.__getitem__, ("dicyclic", 8))

    def name(x):
        k, e = x
        a = "" if k == 0 else ("a" if k == 1 else f"a^{k}")
        return " ".join(p for p in (a, "x" if e else "") if p) or "1"

    return from_elements(elems, mul, f"Dic{order}", name, ("dicyclic", order))


def quaternion(order: int = 8) -> FiniteGroup:
    return dicyclic(order)


def perm_name(p: Sequence[int]) -> str:
    seen, cycles = set(), []
    for start in range(len(p)):
        if start in seen or p[start] == start:
            continue
        cyc, x = [], start
        while x not in seen:
            seen.add(x)
            cyc.append(x + 1)
            x = p[x]
        cycles.append("(" + " ".join(map(str, cyc)) + ")")
    return "".join(cycles) or "()"


def _perm_mul(p: tuple, q: tuple) -> tuple:
    return tuple(p[q[x]] for x in range(len(q)))


def perm_closure(gens: Sequence[Sequence[int]], degree: int, limit: int = MAX_CLOSURE) -> list[tuple]:
    ident = tuple(range(degree))
    gens = [tuple(g) for g in gens]
    for g in gens:
        if sorted(g) != list(ident):
            raise InvalidInput(f"{list(g)} is not a permutation of 0..{degree - 1}")
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = _perm_mul(g, x)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
                    if len(seen) > limit:
                        raise ClosureTooLarge(f"permutation closure exceeds {limit} elements")
        frontier = nxt
    return sorted(seen)


def from_permutations(gens: Sequence[Sequence[int]], degree: int, name: str = "P", catalog: tuple | None = None) -> FiniteGroup:
    """Group generated by 0-based permutations (image lists) of ``degree`` points."""
    elems = perm_closure(gens, degree)
    return from_elements(elems, _perm_mul, name, perm_name, catalog)


def parse_cycles(text: str, degree: int) -> tuple[int, ...]:
    """Parse 1-based cycle notation like ``"(1 2)(3 4)"``."""
    p = list(range(degree))
    for cyc in text.replace(",", " ").split(")"):
        cyc = cyc.strip().lstrip("(")
        if not cyc:
            continue
        pts = [int(x) - 1 for x in cyc.split()]
        for a, b in zip(pts, pts[1:] + pts[:1]):
            p[a] = b
    return tuple(p)


def _image_list(g: Sequence[int], degree: int) -> tuple[int, ...]:
    # image lists may be 0-based or 1-based; 1-based lists never contain 0
    g = [int(x) for x in g]
    if g and min(g) == 1 and max(g) == degree:
        g = [x - 1 for x in g]
    return tuple(g)


def symmetric(n: int) -> FiniteGroup:
    if not 1 <= n <= 5:
        raise UnsupportedGroup("catalog symmetric groups are limited to n <= 5")
    if n == 1:
        gens = [[0]]
    else:
        gens = [[1, 0] + list(range(2, n)), list(range(1, n)) + [0]]
    return from_permutations(gens, n, f"S{n}", ("symmetric", n))


def alternating(n: int = 4) -> FiniteGroup:
    if n != 4:
        raise UnsupportedGroup("the catalog only contains the alternating group A4")
    gens = [[1, 2, 0, 3], [1, 0, 3, 2]]
    return from_permutations(gens, 4, "A4", ("alternating", 4))


def direct_product(g: FiniteGroup, h: FiniteGroup) -> FiniteGroup:
    elems = [(a, b) for a in g.elements for b in h.elements]
    prod = from_elements(
        elems,
        lambda x, y: (g.table[x[0]][y[0]], h.table[x[1]][y[1]]),
        f"{g.name}x{h.name}",
        lambda x: f"({g.label(x[0])},{h.label(x[1])})",
        ("product", g.catalog, h.catalog),
    )
    prod.factors = (g, h)
    return prod


def build_group(spec: Mapping) -> FiniteGroup:
    """Build a group from its JSON description (catalog, perm_gens or table)."""
    kind = spec.get("type", "catalog")
    if kind == "table":
        return FiniteGroup(spec["table"], name=spec.get("name", "G"), element_names=spec.get("element_names"))
    if kind == "perm_gens":
        degree = int(spec["degree"])
        gens = [parse_cycles(g, degree) if isinstance(g, str) else _image_list(g, degree) for g in spec["gens"]]
        return from_permutations(gens, degree, spec.get("name", "P"))
    if kind != "catalog":
        raise InvalidInput(f"unknown group spec type {kind!r}")
    name = spec.get("name")
    if name == "trivial":
        return trivial()
    if name == "cyclic":
        return cyclic(int(spec["order"]))
    if name == "abelian":
        return abelian([int(x) for x in spec["factors"]])
    if name == "dihedral":
        return dihedral(int(spec["order"]))
    if name in ("quaternion", "dicyclic"):
        return dicyclic(int(spec.get("order", 8)))
    if name == "symmetric":
        return symmetric(int(spec.get("n", spec.get("degree", 3))))
    if name == "alternating":
        return alternating(int(spec.get("n", spec.get("degree", 4))))
    if name == "direct_product":
        return reduce(direct_product, [build_group(f) for f in spec["factors"]])
    raise UnsupportedGroup(f"unknown catalog group {name!r}")


def group_from_catalog(cat: tuple) -> FiniteGroup:
    """Rebuild a group from its ``catalog`` tag."""
    kind = cat[0]
    if kind == "product":
        return direct_product(group_from_catalog(cat[1]), group_from_catalog(cat[2]))
    builders = {"cyclic": cyclic, "dihedral": dihedral, "dicyclic": dicyclic,
                "symmetric": symmetric, "alternating": alternating}
    return builders[kind](cat[1])


# ---------------------------------------------------------------------------
# conjugacy and subgroups


def conjugacy_classes(g: FiniteGroup) -> list[ConjClass]:
    """Partition into classes, ordered by least representative."""
    seen: set[int] = set()
    out = []
    for x in g.elements:
        if x in seen:
            continue
        orbit = sorted({g.conj(a, x) for a in g.elements})
        seen.update(orbit)
        out.append(ConjClass(representative=x, members=tuple(orbit)))
    return out


def centralizer_count(g: FiniteGroup, subset: Iterable[int], u: int, v: int) -> int:
    """Number of a in ``subset`` with a u a^-1 = v."""
    return sum(1 for a in subset if g.conj(a, u) == v)


def generated_subgroup(g: FiniteGroup, gens: Iterable[int]) -> list[int]:
    gens = list(gens)
    seen = {g.identity}
    frontier = [g.identity]
    while frontier:
        nxt = []
        for x in frontier:
            for s in gens:
                y = g.table[x][s]
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return sorted(seen)


def subgroup(g: FiniteGroup, members: Sequence[int], name: str = "H") -> tuple[FiniteGroup, list[int]]:
    """Subgroup on ``members`` as a standalone group, with its embedding list."""
    members = sorted(members)
    pos = {x: i for i, x in enumerate(members)}
    try:
        table = [[pos[g.table[a][b]] for b in members] for a in members]
    except KeyError:
        raise NotAGroup("subset is not closed under multiplication") from None
    sub = FiniteGroup(table, name=name, element_names=[g.label(x) for x in members])
    return sub, members


def group_exponent(g: FiniteGroup) -> int:
    return reduce(lambda a, b: a * b // math.gcd(a, b), (g.element_order(x) for x in g.elements), 1)


# ---------------------------------------------------------------------------
# homomorphisms and automorphisms


def extend_from_generators(
    src: FiniteGroup, dst: FiniteGroup, images: Mapping[int, int]
) -> list[int] | None:
    """Extend generator images to a map on all of ``src`` by breadth-first words.

    Returns None when the extension is not well defined or not a homomorphism.
    """
    gens = list(images)
    phi = {src.identity: dst.identity}
    frontier = [src.identity]
    while frontier:
        nxt = []
        for x in frontier:
            for s in gens:
                y = src.table[x][s]
                img = dst.table[phi[x]][images[s]]
                if y in phi:
                    if phi[y] != img:
                        return None
                else:
                    phi[y] = img
                    nxt.append(y)
        frontier = nxt
    if len(phi) != src.order:
        return None
    full = [phi[x] for x in src.elements]
    st, dt = src.table, dst.table
    for a in src.elements:
        fa = full[a]
        for b in src.elements:
            if full[st[a][b]] != dt[fa][full[b]]:
                return None
    return full


def is_homomorphism(src: FiniteGroup, dst: FiniteGroup, images: Sequence[int]) -> bool:
    st, dt = src.table, dst.table
    return all(images[st[a][b]] == dt[images[a]][images[b]] for a in src.elements for b in src.elements)


class Automorphism:
    """A validated automorphism, stored as a full element map."""

    __slots__ = ("group", "map", "_hash")

    def __init__(self, group: FiniteGroup, mapping: Sequence[int], validate: bool = True) -> None:
        self.group = group
        self.map = tuple(int(x) for x in mapping)
        self._hash = None
        if validate:
            bad = self.violation()
            if bad:
                raise NotAutomorphism(bad)

    def violation(self) -> str | None:
        g, m = self.group, self.map
        if len(m) != g.order or sorted(m) != list(g.elements):
            return "map is not a bijection of the group elements"
        if m[g.identity] != g.identity:
            return "identity is not fixed"
        t = g.table
        for a in g.elements:
            for b in g.elements:
                if m[t[a][b]] != t[m[a]][m[b]]:
                    return f"map(g*h) != map(g)*map(h) for g={g.label(a)}, h={g.label(b)}"
        return None

    def is_valid(self) -> bool:
        return self.violation() is None

    def __call__(self, h: int) -> int:
        return self.map[h]

    def compose(self, other: "Automorphism") -> "Automorphism":
        """self after other."""
        self._same_group(other)
        return Automorphism(self.group, [self.map[other.map[h]] for h in self.group.elements], validate=False)

    __matmul__ = compose

    def inverse(self) -> "Automorphism":
        inv = [0] * self.group.order
        for h, x in enumerate(self.map):
            inv[x] = h
        return Automorphism(self.group, inv, validate=False)

    def is_identity(self) -> bool:
        return all(x == i for i, x in enumerate(self.map))

    def order(self) -> int:
        k, cur = 1, self
        while not cur.is_identity():
            cur = cur.compose(self)
            k += 1
        return k

    def _same_group(self, other: "Automorphism") -> None:
        if other.group is not self.group:
            raise NotAutomorphism("automorphisms act on different groups")

    def __eq__(self, other) -> bool:
        return isinstance(other, Automorphism) and other.group is self.group and other.map == self.map

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.map)
        return self._hash

    def __repr__(self) -> str:
        g = self.group
        gens = g.generating_set()
        body = ", ".join(f"{g.label(s)}->{g.label(self.map[s])}" for s in gens)
        return f"Automorphism({g.name}: {body})"

    @classmethod
    def identity(cls, group: FiniteGroup) -> "Automorphism":
        return cls(group, list(group.elements), validate=False)

    @classmethod
    def inner(cls, group: FiniteGroup, c: int) -> "Automorphism":
        """h -> c h c^-1."""
        return cls(group, [group.conj(c, h) for h in group.elements], validate=False)

    @classmethod
    def from_gen_images(cls, group: FiniteGroup, images: Mapping[int, int]) -> "Automorphism":
        full = extend_from_generators(group, group, images)
        if full is None:
            raise NotAutomorphism("generator images do not extend to a homomorphism")
        return cls(group, full)


def automorphism_ops(u: Automorphism, v: Automorphism | None, op: str):
    if op == "compose":
        return u.compose(v)
    if op == "invert":
        return u.inverse()
    if op == "check":
        return u.is_valid()
    raise ValueError(f"unknown automorphism op {op!r}")


def all_automorphisms(g: FiniteGroup, limit: int = 16) -> list[Automorphism]:
    """Exhaustive Aut(g) via generator images, for small groups."""
    if g.order > limit:
        raise UnsupportedGroup(f"automorphism enumeration limited to order <= {limit}")
    gens = g.generating_set()
    candidates = [[x for x in g.elements if g.element_order(x) == g.element_order(s)] for s in gens]
    out = []
    for imgs in itertools.product(*candidates):
        full = extend_from_generators(g, g, dict(zip(gens, imgs)))
        if full is not None and len(set(full)) == g.order:
            out.append(Automorphism(g, full, validate=False))
    out.sort(key=lambda a: a.map)
    return out


def find_isomorphism(src: FiniteGroup, dst: FiniteGroup) -> list[int] | None:
    """An isomorphism src -> dst as an image list, or None."""
    if src.order != dst.order:
        return None
    gens = src.generating_set()
    candidates = [[x for x in dst.elements if dst.element_order(x) == src.element_order(s)] for s in gens]
    for imgs in itertools.product(*candidates):
        full = extend_from_generators(src, dst, dict(zip(gens, imgs)))
        if full is not None and len(set(full)) == src.order:
            return full
    return None


def automorphism_from_spec(group: FiniteGroup, spec) -> Automorphism:
    """Parse ``{"map": [...]}``, ``{"gen_images": {...}}``, ``{"inner": x}`` or ``"identity"``."""
    if spec is None or spec == "identity":
        return Automorphism.identity(group)
    if "map" in spec:
        return Automorphism(group, [group.index(x) for x in spec["map"]])
    if "gen_images" in spec:
        imgs = {group.index(k): group.index(v) for k, v in spec["gen_images"].items()}
        return Automorphism.from_gen_images(group, imgs)
    if "inner" in spec:
        return Automorphism.inner(group, group.index(spec["inner"]))
    raise InvalidInput(f"cannot parse automorphism spec {spec!r}")
