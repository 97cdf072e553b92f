"""Biangular G-algebras, the closed-surface state sum and the G-center.

Vectors of an algebra are dense tuples of CycloNumber over its basis.  The
inner product is not supplied: it is computed from the trace formula
``eta(a, b) = Tr(x -> a b x on B_beta)`` and checked to be independent of beta.
For each grade alpha the dual-basis tensor ``b_alpha = sum p_i (x) q_i`` in
``B_alpha (x) B_alpha^-1`` drives both the state sum and the averaging maps
``psi_alpha(a) = sum p_i a q_i``.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Mapping, Sequence

from .errors import InvalidGSystem, InvalidInput, MatchFailed, NotSurjective, SingularMatrix, ValidationFailed
from .exactfield import CycloMatrix, CycloNumber, inverse, rref
from .groups import FiniteGroup, is_homomorphism, trivial
from .reps import Representation, check_complete

Vector = tuple  # tuple of CycloNumber, one entry per basis vector

ZERO = CycloNumber.rational(0)
ONE = CycloNumber.rational(1)


def _nz(v: Vector) -> list[tuple[int, CycloNumber]]:
    return [(i, x) for i, x in enumerate(v) if x]


class BiangularAlgebra:
    """A G-graded algebra with its trace-formula inner product."""

    def __init__(
        self,
        grading_group: FiniteGroup,
        labels: Sequence[str],
        grades: Sequence[int],
        structure: Mapping[tuple[int, int], Sequence[tuple[int, object]]],
        unit: Sequence,
        validate: bool = True,
    ) -> None:
        self.G = grading_group
        self.labels = tuple(labels)
        self.grades = tuple(grades)
        self.dim = len(self.labels)
        if len(self.grades) != self.dim:
            raise InvalidInput("one grade per basis vector is required")
        self.structure = {
            (i, j): tuple((k, _cyclo(c)) for k, c in terms if c) for (i, j), terms in structure.items()
        }
        self.unit = tuple(_cyclo(x) for x in unit)
        self.by_grade = {a: [i for i in range(self.dim) if self.grades[i] == a] for a in self.G.elements}
        if validate:
            self._check_algebra()
        self.eta = self._trace_form(check=validate)
        self._b: dict[int, list[tuple[Vector, Vector]]] = {}
        self._psi: dict[int, list[list[CycloNumber]]] = {}
        if validate:
            self._check_form()

    # -- vector arithmetic --------------------------------------------------

    def zero(self) -> Vector:
        return (ZERO,) * self.dim

    def basis_vector(self, i: int) -> Vector:
        return tuple(ONE if j == i else ZERO for j in range(self.dim))

    def add(self, x: Vector, y: Vector) -> Vector:
        return tuple(a + b for a, b in zip(x, y))

    def scale(self, c, x: Vector) -> Vector:
        return tuple(a * c for a in x)

    def combine(self, terms) -> Vector:
        out = [ZERO] * self.dim
        for c, v in terms:
            for i, x in _nz(v):
                out[i] = out[i] + c * x
        return tuple(out)

    def mul(self, x: Vector, y: Vector) -> Vector:
        out = [ZERO] * self.dim
        ny = _nz(y)
        for i, a in _nz(x):
            for j, b in ny:
                ab = a * b
                for k, c in self.structure.get((i, j), ()):
                    out[k] = out[k] + ab * c
        return tuple(out)

    def scalar_view(self):
        """(structure, eta, convert) over Fraction when every constant is rational.

        Exact either way; the Fraction view only avoids cyclotomic overhead in
        the state-sum inner loop.
        """
        if getattr(self, "_view", None) is None:
            consts = [c for terms in self.structure.values() for _, c in terms]
            consts += [x for row in self.eta for x in row if x]
            if all(c.is_rational() for c in consts):
                conv = CycloNumber.to_fraction
            else:
                conv = lambda c: c  # noqa: E731
            structure = {key: tuple((k, conv(c)) for k, c in terms) for key, terms in self.structure.items()}
            eta = [[conv(x) if x else 0 for x in row] for row in self.eta]
            self._view = (structure, eta, conv)
        return self._view

    def _rational_only(self, vectors) -> bool:
        return all(x.is_rational() for v in vectors for x in v if x)

    def grade_of(self, x: Vector) -> int | None:
        """The grade of a nonzero homogeneous vector, else None."""
        gs = {self.grades[i] for i, _ in _nz(x)}
        return gs.pop() if len(gs) == 1 else None

    def homogeneous(self, x: Vector, alpha: int) -> bool:
        return all(self.grades[i] == alpha for i, _ in _nz(x))

    def eta_form(self, x: Vector, y: Vector) -> CycloNumber:
        acc = ZERO
        ny = _nz(y)
        for i, a in _nz(x):
            row = self.eta[i]
            for j, b in ny:
                if row[j]:
                    acc = acc + a * b * row[j]
        return acc

    # -- validation and the inner product ----------------------------------

    def _check_algebra(self) -> None:
        g = self.G
        for (i, j), terms in self.structure.items():
            target = g.mul(self.grades[i], self.grades[j])
            for k, _ in terms:
                if self.grades[k] != target:
                    raise ValidationFailed(f"{self.labels[i]}*{self.labels[j]} leaves the grade {g.label(target)}")
        if not self.homogeneous(self.unit, g.identity):
            raise ValidationFailed("unit is not in the identity grade")
        for i in range(self.dim):
            e = self.basis_vector(i)
            if self.mul(self.unit, e) != e or self.mul(e, self.unit) != e:
                raise ValidationFailed(f"unit fails on {self.labels[i]}")
        basis = [self.basis_vector(i) for i in range(self.dim)]
        for i, j, k in itertools.product(range(self.dim), repeat=3):
            if self.mul(self.mul(basis[i], basis[j]), basis[k]) != self.mul(basis[i], self.mul(basis[j], basis[k])):
                raise ValidationFailed(f"associativity fails on ({self.labels[i]}, {self.labels[j]}, {self.labels[k]})")

    def trace_left(self, c: Vector, beta: int) -> CycloNumber:
        """Trace of x -> c x on B_beta."""
        acc = ZERO
        for k in self.by_grade[beta]:
            acc = acc + self.mul(c, self.basis_vector(k))[k]
        return acc

    def _trace_form(self, check: bool) -> list[list[CycloNumber]]:
        g = self.G
        eta = [[ZERO] * self.dim for _ in range(self.dim)]
        for i in range(self.dim):
            for j in self.by_grade[g.inv(self.grades[i])]:
                c = self.mul(self.basis_vector(i), self.basis_vector(j))
                val = self.trace_left(c, g.identity)
                if check:
                    for beta in g.elements:
                        if self.trace_left(c, beta) != val:
                            raise ValidationFailed("trace form depends on the grade: algebra is not biangular")
                eta[i][j] = val
        return eta

    def _check_form(self) -> None:
        g = self.G
        for i in range(self.dim):
            for j in range(self.dim):
                if self.eta[i][j] != self.eta[j][i]:
                    raise ValidationFailed("inner product is not symmetric")
        for a in g.elements:
            rows = [[self.eta[i][j] for j in self.by_grade[g.inv(a)]] for i in self.by_grade[a]]
            if not rows:
                raise ValidationFailed(f"grade {g.label(a)} is empty")
            try:
                inverse(rows, zero=ZERO, one=ONE)
            except SingularMatrix:
                raise ValidationFailed(f"inner product degenerate on grade {g.label(a)}") from None

    # -- dual-basis tensors and psi ----------------------------------------

    def b_vector(self, alpha: int) -> list[tuple[Vector, Vector]]:
        """b_alpha as a list of pairs (p_i, q_i) with eta(p_i, q_j) = delta_ij."""
        if alpha not in self._b:
            g = self.G
            P = self.by_grade[alpha]
            R = self.by_grade[g.inv(alpha)]
            gram = [[self.eta[i][k] for k in R] for i in P]
            x = inverse(gram, zero=ZERO, one=ONE)
            pairs = []
            for j, pj in enumerate(P):
                q = [ZERO] * self.dim
                for kk, rk in enumerate(R):
                    q[rk] = x[kk][j]
                pairs.append((self.basis_vector(pj), tuple(q)))
            self._b[alpha] = pairs
        return self._b[alpha]

    def psi_apply(self, alpha: int, a: Vector) -> Vector:
        out = self.zero()
        for p, q in self.b_vector(alpha):
            out = self.add(out, self.mul(self.mul(p, a), q))
        return out

    def psi_matrix(self, alpha: int) -> list[list[CycloNumber]]:
        """Matrix of psi_alpha; column j is psi_alpha(e_j)."""
        if alpha not in self._psi:
            cols = [self.psi_apply(alpha, self.basis_vector(j)) for j in range(self.dim)]
            self._psi[alpha] = [[cols[j][i] for j in range(self.dim)] for i in range(self.dim)]
        return self._psi[alpha]


def _sparse(v: Vector, conv=lambda c: c) -> dict:
    return {i: conv(x) for i, x in enumerate(v) if x}


def _cyclo(x) -> CycloNumber:
    return x if isinstance(x, CycloNumber) else CycloNumber.rational(Fraction(x))


def apply_matrix(m: Sequence[Sequence[CycloNumber]], v: Vector) -> Vector:
    nv = _nz(v)
    return tuple(_dot_sparse(row, nv) for row in m)


def _dot_sparse(row, nv) -> CycloNumber:
    acc = ZERO
    for j, x in nv:
        if row[j]:
            acc = acc + row[j] * x
    return acc


def group_algebra_biangular(cover: FiniteGroup, base: FiniteGroup | None = None, q: Sequence[int] | None = None) -> BiangularAlgebra:
    """K[cover] graded through the surjection q: cover -> base."""
    if base is None:
        base = trivial()
        q = [base.identity] * cover.order
    q = tuple(q)
    if len(q) != cover.order or not is_homomorphism(cover, base, q):
        raise InvalidInput("grading map is not a homomorphism")
    if set(q) != set(base.elements):
        raise NotSurjective("grading map is not surjective")
    structure = {(i, j): [(cover.mul(i, j), 1)] for i in cover.elements for j in cover.elements}
    unit = [1 if i == cover.identity else 0 for i in cover.elements]
    # associativity of a group algebra is inherited from the group table
    alg = BiangularAlgebra(base, cover.element_names, q, structure, unit, validate=False)
    alg.cover = cover
    alg._check_form()
    for i in cover.elements:
        for j in cover.elements:
            want = cover.order // base.order if cover.mul(i, j) == cover.identity else 0
            if alg.eta[i][j] != want:
                raise ValidationFailed("group algebra inner product differs from |kernel| [ab = 1]")
    return alg


# ---------------------------------------------------------------------------
# CW surfaces, G-systems and the state sum


Flag = tuple[str, bool]  # (edge name, traversed against its orientation)


@dataclass
class CWSurface:
    edges: list[str]
    faces: list[list[Flag]]
    declared_vertices: int | None = None

    def __post_init__(self) -> None:
        seen: dict[str, list[bool]] = {e: [] for e in self.edges}
        if len(seen) != len(self.edges):
            raise InvalidInput("edge names must be unique")
        for face in self.faces:
            if not face:
                raise InvalidInput("faces need at least one side")
            for e, rev in face:
                if e not in seen:
                    raise InvalidInput(f"face uses unknown edge {e!r}")
                seen[e].append(rev)
        for e, uses in seen.items():
            if sorted(uses) != [False, True]:
                raise InvalidInput(
                    f"edge {e!r} must appear once in each direction (an oriented closed surface), got {len(uses)} flags"
                )
        if self.declared_vertices is not None and self.declared_vertices != self.vertex_count():
            raise InvalidInput(
                f"declared {self.declared_vertices} vertices but the face gluing gives {self.vertex_count()}"
            )

    @classmethod
    def from_spec(cls, spec: Mapping) -> "CWSurface":
        faces = [[(s[:-1], True) if s.endswith("~") else (s, False) for s in face] for face in spec["faces"]]
        return cls(list(spec["edges"]), faces, spec.get("vertices"))

    def to_spec(self) -> dict:
        return {
            "vertices": self.vertex_count(),
            "edges": list(self.edges),
            "faces": [[e + ("~" if r else "") for e, r in f] for f in self.faces],
        }

    def endpoints(self) -> dict[str, tuple[int, int]]:
        """(initial, terminal) vertex of every edge, vertices numbered from 0."""
        parent = {}

        def find(x):
            parent.setdefault(x, x)
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        def union(x, y):
            parent[find(x)] = find(y)

        def ends(flag):
            e, rev = flag
            return ((e, 1), (e, 0)) if rev else ((e, 0), (e, 1))

        for e in self.edges:
            find((e, 0))
            find((e, 1))
        for face in self.faces:
            for f1, f2 in zip(face, face[1:] + face[:1]):
                union(ends(f1)[1], ends(f2)[0])
        roots: dict = {}
        for e in self.edges:
            for end in (0, 1):
                roots.setdefault(find((e, end)), len(roots))
        return {e: (roots[find((e, 0))], roots[find((e, 1))]) for e in self.edges}

    def vertex_count(self) -> int:
        return len({v for pair in self.endpoints().values() for v in pair})

    @property
    def euler(self) -> int:
        return self.vertex_count() - len(self.edges) + len(self.faces)


def sphere_scheme() -> CWSurface:
    return CWSurface(["e"], [[("e", False), ("e", True)]])


def one_face_scheme(genus: int) -> CWSurface:
    edges, face = [], []
    for i in range(1, genus + 1):
        a, b = f"a{i}", f"b{i}"
        edges += [a, b]
        face += [(a, False), (b, False), (a, True), (b, True)]
    return CWSurface(edges, [face])


@dataclass
class GSystem:
    group: FiniteGroup
    values: dict[str, int]

    def at(self, flag: Flag) -> int:
        e, rev = flag
        g = self.values[e]
        return self.group.inv(g) if rev else g

    @classmethod
    def from_spec(cls, group: FiniteGroup, spec: Mapping | None, surface: CWSurface) -> "GSystem":
        spec = spec or {}
        return cls(group, {e: group.index(spec[e]) if e in spec else group.identity for e in surface.edges})


def validate_gsystem(S: CWSurface, g: GSystem) -> None:
    for e in S.edges:
        if e not in g.values:
            raise InvalidGSystem(f"edge {e!r} has no group element")
    for n, face in enumerate(S.faces):
        if g.group.prod(g.at(f) for f in face) != g.group.identity:
            raise InvalidGSystem(f"product of the G-system around face {n} is not the identity")


def state_sum(B: BiangularAlgebra, S: CWSurface, g: GSystem) -> CycloNumber:
    """Contract the tensors b_{g_e} against the face forms eta(a_1 ... a_n, 1)."""
    if g.group is not B.G:
        raise InvalidGSystem("G-system takes values in a different group")
    validate_gsystem(S, g)
    index = {e: n for n, e in enumerate(S.edges)}
    b = [B.b_vector(g.values[e]) for e in S.edges]
    structure, eta, conv = B.scalar_view()
    if conv is not CycloNumber.to_fraction or not B._rational_only([B.unit] + [v for t in b for pq in t for v in pq]):
        structure, eta, conv = B.structure, B.eta, (lambda c: c)
    terms = [[(_sparse(p, conv), _sparse(q, conv)) for p, q in t] for t in b]

    def smul(x: dict, y: dict) -> dict:
        out: dict = {}
        for i, a in x.items():
            for j, c2 in y.items():
                ab = a * c2
                for k, c in structure.get((i, j), ()):
                    v = out.get(k)
                    out[k] = ab * c if v is None else v + ab * c
        return {k: v for k, v in out.items() if v}

    def seta(x: dict, y: dict):
        acc = 0
        for i, a in x.items():
            row = eta[i]
            for j, c2 in y.items():
                if row[j]:
                    acc = acc + a * c2 * row[j]
        return acc

    # faces start at their least edge id (the face form is cyclically invariant)
    faces = []
    for face in S.faces:
        start = min(range(len(face)), key=lambda r: (index[face[r][0]], face[r][1]))
        faces.append([(index[e], 1 if rev else 0) for e, rev in face[start:] + face[:start]])
    # depth-first over edges in order of first appearance; each face keeps the
    # product of its longest fully assigned prefix so shared prefixes are reused
    order: list[int] = []
    for face in faces:
        for e, _ in face:
            if e not in order:
                order.append(e)
    choice = [None] * len(S.edges)

    def extend(states):
        out = []
        for (pos, vec), face in zip(states, faces):
            while pos < len(face) and choice[face[pos][0]] is not None:
                e, side = face[pos]
                vec = smul(vec, terms[e][choice[e]][side])
                pos += 1
                if not vec:
                    return None
            out.append((pos, vec))
        return out

    def visit(depth: int, states):
        if depth == len(order):
            value = 1
            for _, vec in states:
                value = value * seta(vec, unit)
                if not value:
                    break
            return value
        e = order[depth]
        acc = 0
        for c in range(len(terms[e])):
            choice[e] = c
            nxt = extend(states)
            if nxt is not None:
                acc = acc + visit(depth + 1, nxt)
        choice[e] = None
        return acc

    unit = _sparse(B.unit, conv)
    total = visit(0, [(0, unit) for _ in faces])
    return total if isinstance(total, CycloNumber) else CycloNumber.rational(total)


def subdivide_edge(S: CWSurface, g: GSystem, edge: str, first: int | None = None) -> tuple[CWSurface, GSystem]:
    """Split ``edge`` at a new vertex; the first half carries ``first`` (default g_edge)."""
    grp = g.group
    ge = g.values[edge]
    g1 = ge if first is None else first
    g2 = grp.mul(grp.inv(g1), ge)
    e1, e2 = _fresh(S, edge + "'"), None
    e2 = _fresh(S, edge + "''", taken={e1})
    edges = []
    for e in S.edges:
        edges += [e1, e2] if e == edge else [e]
    faces = []
    for face in S.faces:
        new = []
        for e, rev in face:
            if e != edge:
                new.append((e, rev))
            elif rev:
                new += [(e2, True), (e1, True)]
            else:
                new += [(e1, False), (e2, False)]
        faces.append(new)
    values = {k: v for k, v in g.values.items() if k != edge}
    values[e1], values[e2] = g1, g2
    return CWSurface(edges, faces), GSystem(grp, values)


def add_diagonal(S: CWSurface, g: GSystem, face_index: int, i: int, j: int) -> tuple[CWSurface, GSystem]:
    """Cut a face along a new edge from the start of side j to the start of side i (i < j)."""
    face = S.faces[face_index]
    if not 0 <= i < j < len(face) + (1 if i > 0 else 0):
        raise InvalidInput("diagonal needs side positions 0 <= i < j <= n (and j < n when i = 0)")
    grp = g.group
    d = _fresh(S, "d")
    part1 = face[i:j]
    part2 = face[j:] + face[:i]
    gd = grp.inv(grp.prod(g.at(f) for f in part1))
    faces = [f for n, f in enumerate(S.faces) if n != face_index]
    faces.insert(face_index, part1 + [(d, False)])
    faces.insert(face_index + 1, part2 + [(d, True)])
    values = dict(g.values)
    values[d] = gd
    return CWSurface(S.edges + [d], faces), GSystem(grp, values)


def homotopy_move(S: CWSurface, g: GSystem, vertex: int, x: int) -> GSystem:
    """g'_e = v(i_e) g_e v(t_e)^-1 with v = x at ``vertex`` and 1 elsewhere."""
    grp = g.group
    ends = S.endpoints()
    values = {}
    for e in S.edges:
        a, b = ends[e]
        left = x if a == vertex else grp.identity
        right = grp.inv(x) if b == vertex else grp.identity
        values[e] = grp.prod((left, g.values[e], right))
    return GSystem(grp, values)


def _fresh(S: CWSurface, base: str, taken: set | None = None) -> str:
    taken = set(S.edges) | (taken or set())
    name, n = base, 0
    while name in taken:
        n += 1
        name = f"{base}{n}"
    return name


def gsystem_from_images(S: CWSurface, group: FiniteGroup, images: Sequence[int]) -> GSystem:
    """G-system on a one-face scheme sending a_i, b_i to the given images."""
    return GSystem(group, dict(zip(S.edges, images)))


# ---------------------------------------------------------------------------
# G-center


@dataclass
class CrossedAlgebraData:
    algebra: BiangularAlgebra
    bases: dict[int, list[Vector]]     # RREF basis of L_alpha
    pivots: dict[int, list[int]]
    action: dict[int, list[list[CycloNumber]]] = field(default_factory=dict)

    @property
    def G(self) -> FiniteGroup:
        return self.algebra.G

    def dim(self, alpha: int | None = None) -> int:
        if alpha is None:
            return sum(len(b) for b in self.bases.values())
        return len(self.bases[alpha])

    def phi(self, alpha: int, v: Vector) -> Vector:
        return apply_matrix(self.action[alpha], v)

    def coords(self, alpha: int, v: Vector) -> list[CycloNumber] | None:
        """Coordinates of v in the basis of L_alpha, or None when v is outside."""
        basis, piv = self.bases[alpha], self.pivots[alpha]
        c = [v[p] for p in piv]
        B = self.algebra
        if not B.homogeneous(v, alpha) or B.combine(zip(c, basis)) != tuple(v):
            return None
        return c

    def trace(self, alpha: int, op: Callable[[Vector], Vector]) -> CycloNumber:
        acc = ZERO
        for n, b in enumerate(self.bases[alpha]):
            c = self.coords(alpha, op(b))
            if c is None:
                raise ValidationFailed("operator leaves the subspace")
            acc = acc + c[n]
        return acc


def g_center(B: BiangularAlgebra) -> CrossedAlgebraData:
    """L_alpha = psi_1(B_alpha) with the action psi_alpha restricted to L."""
    one = B.G.identity
    bases, pivots = {}, {}
    for a in B.G.elements:
        imgs = [B.psi_apply(one, B.basis_vector(j)) for j in B.by_grade[a]]
        red, piv = rref(imgs)
        rows = [tuple(r) for r in red[: len(piv)]]
        bases[a], pivots[a] = rows, piv
    action = {a: B.psi_matrix(a) for a in B.G.elements}
    return CrossedAlgebraData(B, bases, pivots, action)


@dataclass
class AxiomReport:
    ok: bool
    violations: list[dict]

    def summary(self) -> str:
        if self.ok:
            return "all crossed-algebra axioms hold"
        axioms = sorted({v["axiom"] for v in self.violations})
        return f"{len(self.violations)} violations of axioms {', '.join(axioms)}"


def crossed_axioms_check(L: CrossedAlgebraData, limit: int = 50) -> AxiomReport:
    """Verify the crossed G-algebra axioms on the basis of L; report witnesses."""
    B, G = L.algebra, L.G
    out: list[dict] = []

    def bad(axiom: str, alpha: int, beta: int | None, detail: str) -> None:
        if len(out) < limit:
            out.append({"axiom": axiom, "alpha": G.label(alpha),
                        "beta": None if beta is None else G.label(beta), "detail": detail})

    els = list(G.elements)
    for a in els:
        for b in els:
            target = G.prod((a, b, G.inv(a)))
            for n, v in enumerate(L.bases[b]):
                img = L.phi(a, v)
                if L.coords(target, img) is None:
                    bad("1", a, b, f"phi maps basis vector {n} of L_beta outside L_(alpha beta alpha^-1)")
                if L.phi(b, L.phi(a, v)) != L.phi(G.mul(b, a), v):
                    bad("action", a, b, f"phi_beta phi_alpha != phi_(beta alpha) on basis vector {n}")
        for n, v in enumerate(L.bases[a]):
            if L.phi(a, v) != v:
                bad("1", a, a, f"phi_alpha is not the identity on basis vector {n} of L_alpha")
    all_basis = [(b, v) for b in els for v in L.bases[b]]
    for a in els:
        for n, x in enumerate(L.bases[a]):
            for b, y in all_basis:
                if B.mul(L.phi(a, y), x) != B.mul(x, y):
                    bad("2", a, b, f"phi_alpha(b) a != a b for basis vector {n} of L_alpha")
        for b, x in all_basis:
            for c, y in all_basis:
                if B.mul(L.phi(a, x), L.phi(a, y)) != L.phi(a, B.mul(x, y)):
                    bad("automorphism", a, b, "phi_alpha is not multiplicative")
                if B.eta_form(L.phi(a, x), L.phi(a, y)) != B.eta_form(x, y):
                    bad("3", a, b, "phi_alpha does not preserve the inner product")
    for a in els:
        for b in els:
            comm = G.prod((a, b, G.inv(a), G.inv(b)))
            for c in L.bases[comm]:
                lhs = L.trace(a, lambda v: B.mul(c, L.phi(b, v)))
                rhs = L.trace(b, lambda v: L.phi(G.inv(a), B.mul(c, v)))
                if lhs != rhs:
                    bad("4", a, b, f"Tr(mu_c phi_beta on L_alpha) = {lhs} but Tr(phi_alpha^-1 mu_c on L_beta) = {rhs}")
    return AxiomReport(ok=not out, violations=out)


def corrupt_action(L: CrossedAlgebraData, alpha: int, factor=2) -> CrossedAlgebraData:
    """Copy of L whose action at ``alpha`` is scaled (a negative-control fixture)."""
    action = dict(L.action)
    action[alpha] = [[x * factor for x in row] for row in L.action[alpha]]
    return CrossedAlgebraData(L.algebra, L.bases, L.pivots, action)


def psi_identities(B: BiangularAlgebra, samples: int = 100, seed: int = 0) -> list[str]:
    """Check the averaging-map identities on random elements; returns failures."""
    rng = random.Random(seed)
    G = B.G
    els = list(G.elements)
    fails: list[str] = []

    def rand_vec(grade: int | None = None) -> Vector:
        idx = range(B.dim) if grade is None else B.by_grade[grade]
        v = [ZERO] * B.dim
        for i in idx:
            v[i] = CycloNumber.rational(Fraction(rng.randint(-3, 3), rng.randint(1, 3)))
        return tuple(v)

    # psi_alpha psi_beta = psi_(alpha beta) as matrices
    for a in els:
        for b in els:
            ab = G.mul(a, b)
            ma, mb, mab = B.psi_matrix(a), B.psi_matrix(b), B.psi_matrix(ab)
            prod = [[_dot_sparse(ma[i], [(k, mb[k][j]) for k in range(B.dim) if mb[k][j]]) for j in range(B.dim)]
                    for i in range(B.dim)]
            if prod != mab:
                fails.append(f"psi_alpha psi_beta != psi_(alpha beta) for ({G.label(a)}, {G.label(b)})")
    for a in els:
        if B.psi_apply(a, B.unit) != B.unit:
            fails.append(f"psi_{G.label(a)}(1) != 1")
    for n in range(samples):
        a, b = rng.choice(els), rng.choice(els)
        x, y = rand_vec(), rand_vec()
        yb = rand_vec(b)
        if B.eta_form(B.psi_apply(a, x), y) != B.eta_form(x, B.psi_apply(G.inv(a), y)):
            fails.append(f"sample {n}: eta(psi_a x, y) != eta(x, psi_a^-1 y)")
        if B.psi_apply(a, B.mul(x, B.psi_apply(b, y))) != B.mul(B.psi_apply(a, x), B.psi_apply(G.mul(a, b), y)):
            fails.append(f"sample {n}: psi_a(x psi_b(y)) != psi_a(x) psi_ab(y)")
        if B.psi_apply(G.mul(a, b), yb) != B.psi_apply(a, yb):
            fails.append(f"sample {n}: psi_ab(y) != psi_a(y) for y in B_b")
        if B.mul(B.psi_apply(a, x), yb) != B.mul(yb, B.psi_apply(G.mul(G.inv(b), a), x)):
            fails.append(f"sample {n}: psi_a(x) y != y psi_(b^-1 a)(x) for y in B_b")
        # trace identity with a random c of grade [a, b]
        c = rand_vec(G.prod((a, b, G.inv(a), G.inv(b))))
        lhs = sum((B.mul(c, B.psi_apply(b, B.basis_vector(k)))[k] for k in B.by_grade[a]), ZERO)
        rhs = sum((B.psi_apply(G.inv(a), B.mul(c, B.basis_vector(k)))[k] for k in B.by_grade[b]), ZERO)
        if lhs != rhs:
            fails.append(f"sample {n}: trace identity fails")
    # psi_1 is an eta-orthogonal idempotent projector
    p1 = B.psi_matrix(G.identity)
    for _ in range(min(samples, 20)):
        x = rand_vec()
        px = apply_matrix(p1, x)
        if apply_matrix(p1, px) != px:
            fails.append("psi_1 is not idempotent")
        k = B.add(x, B.scale(-1, px))
        y = rand_vec()
        if B.eta_form(apply_matrix(p1, y), k):
            fails.append("image and kernel of psi_1 are not eta-orthogonal")
    for a in els:
        s = B.zero()
        for p, q in B.b_vector(a):
            s = B.add(s, B.mul(p, q))
        if s != B.unit:
            fails.append(f"sum p_i q_i != 1 for grade {G.label(a)}")
    return fails


# ---------------------------------------------------------------------------
# central idempotents of a group algebra


def central_idempotents(group: FiniteGroup, irreps: Sequence[Representation]) -> list[Vector]:
    """i = |G|^-1 chi(1) sum_h chi(h) h^-1 for each irreducible, as vectors of K[G]."""
    check_complete(group, irreps)
    out = []
    for rho in irreps:
        v = [ZERO] * group.order
        for h in group.elements:
            v[group.inv(h)] = rho.traces[h] * Fraction(rho.degree, group.order)
        out.append(tuple(v))
    return out


def rep_plus(rho: Representation, v: Vector) -> CycloMatrix:
    """Linear extension of rho to the group algebra."""
    acc = CycloMatrix.zeros(rho.degree, rho.degree, rho.order)
    for h, c in _nz(v):
        acc = acc + rho(h) * c
    return acc


def idempotent_rep_match(idempotents: Sequence[Vector], irreps: Sequence[Representation]) -> list[int]:
    """For each idempotent, the index of the unique irreducible on which it acts as 1."""
    match = []
    for n, i in enumerate(idempotents):
        hits = []
        for k, rho in enumerate(irreps):
            m = rep_plus(rho, i)
            if m.is_identity():
                hits.append(k)
            elif any(x for row in m.entries for x in row):
                raise MatchFailed(f"idempotent {n} acts on {rho.label} neither as 0 nor as 1")
        if len(hits) != 1:
            raise MatchFailed(f"idempotent {n} matches {len(hits)} representations")
        match.append(hits[0])
    if sorted(match) != list(range(len(irreps))):
        raise MatchFailed("idempotent matching is not a bijection")
    return match


def psi(B: BiangularAlgebra, alpha: int) -> list[list[CycloNumber]]:
    """Exact matrix of psi_alpha on the basis of B (columns are images)."""
    return B.psi_matrix(alpha)


# ---------------------------------------------------------------------------
# quotients and the algebra catalog


def quotient(group: FiniteGroup, normal: Sequence[int], name: str | None = None) -> tuple[FiniteGroup, tuple[int, ...]]:
    """The quotient by a normal subgroup and the projection onto it."""
    N = set(normal)
    if group.identity not in N or any(group.conj(a, h) not in N for a in group.elements for h in N):
        raise InvalidInput("subgroup is not normal")
    cosets: list[frozenset] = []
    q = [None] * group.order
    for x in group.elements:
        if q[x] is None:
            c = frozenset(group.mul(x, h) for h in N)
            for y in c:
                q[y] = len(cosets)
            cosets.append(c)
    reps = [min(c) for c in cosets]
    table = [[q[group.mul(a, b)] for b in reps] for a in reps]
    names = [group.label(r) + ("" if len(N) == 1 else "N") for r in reps]
    base = FiniteGroup(table, name or f"{group.name}/N", names)
    return base, tuple(q)


def catalog_algebras() -> list[tuple[str, FiniteGroup, FiniteGroup, tuple[int, ...]]]:
    """(label, cover, base, q) for the group algebras used by the sweeps.

    Every catalog group appears with the trivial grading and graded by itself;
    a few proper quotients exercise mixed gradings.
    """
    from .counting import catalog_groups
    from .groups import abelian, cyclic, direct_product, quaternion, symmetric

    out = []
    for g in catalog_groups():
        t = trivial()
        out.append((f"K[{g.name}]", g, t, (t.identity,) * g.order))
        if g.order > 1:
            out.append((f"K[{g.name}] graded by itself", g, g, tuple(g.elements)))
    c4 = cyclic(4)
    out.append(("K[Z4 -> Z2]",) + _by_subgroup(c4, [c4.index("0"), c4.index("2")]))
    s3 = symmetric(3)
    out.append(("K[S3 -> Z2]",) + _by_subgroup(s3, [x for x in s3.elements if s3.element_order(x) != 2]))
    q8 = quaternion(8)
    out.append(("K[Q8 -> V4]",) + _by_subgroup(q8, [q8.index("1"), q8.index("-1")]))
    v4 = abelian([2, 2])
    out.append(("K[V4 -> Z2]",) + _by_subgroup(v4, [v4.identity, 1]))
    q8c2 = direct_product(q8, cyclic(2))
    out.append(("K[Q8 x Z2 -> Z2]",) + _by_subgroup(q8c2, [x for x in q8c2.elements if q8c2.data[x][1] == 0]))
    return out


def _by_subgroup(g: FiniteGroup, normal) -> tuple[FiniteGroup, FiniteGroup, tuple[int, ...]]:
    base, q = quotient(g, normal)
    return g, base, q
