"""Surface groups and their extensions by a finite fiber group.

The surface group of genus d with m boundary circles is free on
``a1, b1, ..., ad, bd, x1, ..., x(m-1)``; the last boundary generator is
derived from the single relation ``prod [ai, bi] * x1 ... xm = 1``.

An extension is encoded by one automorphism u_s of the fiber group per free
generator s (the conjugation action of a chosen lift: s~ h s~^-1 = u_s(h)).
Elements of the split extension are kept in the normal form ``(word, h)``
standing for ``word~ * h``, fiber on the right.  Multiplication is

    (w1, h1)(w2, h2) = (w1 w2 reduced, u_w2^-1(h1) h2)

where ``u_w`` composes the letter automorphisms along w, leftmost outermost.
In the closed case the lifted relator equals the relator fiber f in the
extension; a section assigns fibers h_s with fiber(relator) = f^-1.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Mapping, Sequence

import numpy as np

from .errors import InvalidInput, RelationViolated
from .groups import Automorphism, FiniteGroup, automorphism_from_spec, build_group

Letter = tuple[int, int]  # (generator id, +1 or -1)


@dataclass(frozen=True)
class SurfaceSignature:
    genus: int
    boundary: int = 0

    def __post_init__(self) -> None:
        if self.genus < 1:
            raise InvalidInput("genus must be at least 1")
        if self.boundary < 0:
            raise InvalidInput("boundary count must be non-negative")

    @property
    def euler(self) -> int:
        return 2 - 2 * self.genus - self.boundary

    @property
    def rank(self) -> int:
        """Number of free generators."""
        return 2 * self.genus + max(self.boundary - 1, 0)

    def generator_names(self) -> list[str]:
        names = []
        for i in range(1, self.genus + 1):
            names += [f"a{i}", f"b{i}"]
        names += [f"x{k}" for k in range(1, self.boundary)]
        return names

    def gen_id(self, name: str) -> int:
        try:
            return self.generator_names().index(name)
        except ValueError:
            raise InvalidInput(f"unknown surface generator {name!r}") from None

    @lru_cache(maxsize=None)
    def commutator_word(self) -> "FreeWord":
        letters: list[Letter] = []
        for i in range(self.genus):
            a, b = 2 * i, 2 * i + 1
            letters += [(a, 1), (b, 1), (a, -1), (b, -1)]
        return FreeWord(letters)

    @lru_cache(maxsize=None)
    def boundary_word(self, k: int) -> "FreeWord":
        """Word of x_k (1-based); the last one is derived from the relation."""
        if not 1 <= k <= self.boundary:
            raise InvalidInput(f"boundary index {k} out of range")
        if k < self.boundary:
            return FreeWord([(2 * self.genus + k - 1, 1)])
        head = self.commutator_word().letters + tuple((2 * self.genus + j, 1) for j in range(self.boundary - 1))
        return FreeWord(head).inverse()


class FreeWord:
    """Freely reduced word over generator ids."""

    __slots__ = ("letters",)

    def __init__(self, letters: Sequence[Letter] = ()) -> None:
        out: list[Letter] = []
        for s, e in letters:
            if e not in (1, -1):
                raise InvalidInput("letter exponents must be +1 or -1")
            if out and out[-1] == (s, -e):
                out.pop()
            else:
                out.append((s, e))
        self.letters = tuple(out)

    def __mul__(self, other: "FreeWord") -> "FreeWord":
        return FreeWord(self.letters + other.letters)

    def inverse(self) -> "FreeWord":
        return FreeWord([(s, -e) for s, e in reversed(self.letters)])

    def __len__(self) -> int:
        return len(self.letters)

    def __eq__(self, other) -> bool:
        return isinstance(other, FreeWord) and self.letters == other.letters

    def __hash__(self) -> int:
        return hash(self.letters)

    def __repr__(self) -> str:
        return f"FreeWord({list(self.letters)})"

    def render(self, sig: SurfaceSignature) -> str:
        names = sig.generator_names()
        return " ".join(names[s] + ("" if e == 1 else "^-1") for s, e in self.letters) or "1"


@dataclass(frozen=True)
class NormalForm:
    word: FreeWord
    fiber: int


class SurfaceExtension:
    """Validated extension data over a surface group."""

    def __init__(
        self,
        surface: SurfaceSignature,
        phi: FiniteGroup,
        lift_auts: Sequence[Automorphism] | None = None,
        relator_fiber: int | None = None,
        boundary_twists: Sequence[int] | None = None,
    ) -> None:
        self.surface = surface
        self.phi = phi
        self._gamma = None
        r = surface.rank
        if lift_auts is None:
            lift_auts = [Automorphism.identity(phi)] * r
        if len(lift_auts) != r:
            raise InvalidInput(f"need {r} lift automorphisms, got {len(lift_auts)}")
        for u in lift_auts:
            if u.group is not phi:
                raise InvalidInput("lift automorphisms must act on the fiber group")
        self.lift_auts = tuple(lift_auts)
        self.u = tuple(u.map for u in self.lift_auts)
        self.uinv = tuple(u.inverse().map for u in self.lift_auts)
        if surface.boundary == 0:
            f = phi.identity if relator_fiber is None else relator_fiber
            if boundary_twists:
                raise InvalidInput("closed surfaces take no boundary twists")
            self.relator_fiber = f
            self.boundary_twists: tuple[int, ...] = ()
            composite = self.word_automorphism(surface.commutator_word())
            if composite != Automorphism.inner(phi, f):
                raise RelationViolated(
                    "the composite lift automorphism along the relator differs from conjugation by the relator fiber"
                )
        else:
            if relator_fiber is not None and relator_fiber != phi.identity:
                raise InvalidInput("surfaces with boundary take boundary twists, not a relator fiber")
            twists = list(boundary_twists) if boundary_twists is not None else [phi.identity] * surface.boundary
            if len(twists) != surface.boundary:
                raise InvalidInput(f"need {surface.boundary} boundary twists, got {len(twists)}")
            for c in twists:
                if not 0 <= c < phi.order:
                    raise InvalidInput(f"boundary twist {c} is not an element of the fiber group")
            self.relator_fiber = None
            self.boundary_twists = tuple(twists)

    @classmethod
    def direct(cls, surface: SurfaceSignature, phi: FiniteGroup, twists: Sequence[int] | None = None) -> "SurfaceExtension":
        """Product bundle: every lift acts trivially."""
        return cls(surface, phi, None, None, twists)

    def __repr__(self) -> str:
        s = self.surface
        return f"SurfaceExtension(d={s.genus}, m={s.boundary}, phi={self.phi.name})"

    def is_direct(self) -> bool:
        return all(u.is_identity() for u in self.lift_auts)

    # -- automorphisms along words -----------------------------------------

    def word_map(self, word: FreeWord) -> tuple[int, ...]:
        """u_w as an element map: u_s1 o ... o u_sk."""
        m = list(self.phi.elements)
        for s, e in reversed(word.letters):
            step = self.u[s] if e == 1 else self.uinv[s]
            m = [step[x] for x in m]
        return tuple(m)

    def word_automorphism(self, word: FreeWord) -> Automorphism:
        return Automorphism(self.phi, self.word_map(word), validate=False)

    # -- normal-form arithmetic -------------------------------------------

    def nf_multiply(self, x: NormalForm, y: NormalForm) -> NormalForm:
        h1 = x.fiber
        for s, e in y.word.letters:
            h1 = (self.uinv[s] if e == 1 else self.u[s])[h1]
        return NormalForm(x.word * y.word, self.phi.mul(h1, y.fiber))

    def nf_inverse(self, x: NormalForm) -> NormalForm:
        return NormalForm(x.word.inverse(), self.word_map(x.word)[self.phi.inv(x.fiber)])

    def letter(self, s: int, e: int = 1, h: int | None = None) -> NormalForm:
        """The decorated lift (s~ h)^e."""
        h = self.phi.identity if h is None else h
        base = NormalForm(FreeWord([(s, 1)]), h)
        return base if e == 1 else self.nf_inverse(base)

    def fiber(self, h: int) -> NormalForm:
        return NormalForm(FreeWord(), h)

    def lift_word(self, word: FreeWord) -> NormalForm:
        return NormalForm(word, self.phi.identity)

    def word_fiber(self, word: FreeWord, decorations: Mapping[int, int] | Sequence[int]) -> NormalForm:
        """Product of decorated lifts (s~ h_s)^(+-1) along ``word``."""
        phi = self.phi
        t, inv = phi.table, phi.inverses
        acc = phi.identity
        for s, e in word.letters:
            h = decorations[s]
            if e == 1:
                acc = t[self.uinv[s][acc]][h]
            else:
                acc = self.u[s][t[acc][inv[h]]]
        return NormalForm(word, acc)

    def relator_value(self, decorations: Sequence[int]) -> int:
        """Fiber of the decorated commutator product (closed case)."""
        return self.word_fiber(self.surface.commutator_word(), decorations).fiber

    # -- boundary data ----------------------------------------------------

    def gamma_elements(self) -> tuple[list[NormalForm], int]:
        """The boundary elements gamma_k = x_k~ c_k and the fiber f_gamma of the relator."""
        sig = self.surface
        if sig.boundary == 0:
            raise InvalidInput("gamma elements need at least one boundary circle")
        if self._gamma is not None:
            return list(self._gamma[0]), self._gamma[1]
        gammas = [
            NormalForm(sig.boundary_word(k), self.boundary_twists[k - 1]) for k in range(1, sig.boundary + 1)
        ]
        acc = self.lift_word(FreeWord())
        for s, e in sig.commutator_word().letters:
            acc = self.nf_multiply(acc, self.letter(s, e))
        for g in gammas:
            acc = self.nf_multiply(acc, g)
        if len(acc.word):
            raise AssertionError("relator word failed to reduce to the empty word")
        self._gamma = (tuple(gammas), acc.fiber)
        return gammas, acc.fiber

    def gamma_pullback(self, k: int) -> tuple[int, ...]:
        """h -> c_k^-1 u_{x_k}^-1(h) c_k, the inverse of conjugation by gamma_k."""
        phi = self.phi
        c = self.boundary_twists[k - 1]
        uinv = Automorphism(phi, self.word_map(self.surface.boundary_word(k)), validate=False).inverse().map
        return tuple(phi.prod((phi.inv(c), uinv[h], c)) for h in phi.elements)

    # -- numpy views used by the enumeration oracle -------------------------

    def np_maps(self) -> tuple[np.ndarray, np.ndarray]:
        return np.asarray(self.u, dtype=np.int64), np.asarray(self.uinv, dtype=np.int64)


_GEN_RE = re.compile(r"^[abx]\d+$")


def extension_from_spec(spec: Mapping, phi: FiniteGroup | None = None) -> SurfaceExtension:
    """Parse the JSON extension description."""
    try:
        sig = SurfaceSignature(int(spec["genus"]), int(spec.get("boundary", 0)))
    except KeyError:
        raise InvalidInput("extension spec needs a genus") from None
    if phi is None:
        if "phi" not in spec:
            raise InvalidInput("extension spec needs a fiber group 'phi'")
        phi = build_group(spec["phi"])
    auts_spec = spec.get("lift_auts", {}) or {}
    names = sig.generator_names()
    for key in auts_spec:
        if not _GEN_RE.match(key) or key not in names:
            raise InvalidInput(f"lift automorphism given for unknown generator {key!r}")
    auts = [automorphism_from_spec(phi, auts_spec.get(n)) for n in names]
    f = spec.get("relator_fiber")
    f = phi.index(f) if f is not None else None
    twists = spec.get("boundary_twists")
    twists = [phi.index(c) for c in twists] if twists is not None else None
    return SurfaceExtension(sig, phi, auts, f, twists)
