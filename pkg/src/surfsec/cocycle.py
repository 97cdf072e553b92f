"""Action of the surface group on irreducibles, intertwiners and class evaluation.

A free generator s acts on a representation by ``rho -> rho o u_s^-1``.  For
a fixed irreducible rho the matrix N_s satisfies

    rho(h) N_s = N_s rho(u_s^-1(h))      for all h,

and the boundary matrices nu_k solve the same equation for the pullback
``h -> c_k^-1 u_{x_k}^-1(h) c_k`` of conjugation by gamma_k, rescaled to trace 1
(the flag t_k is 0 when the trace vanishes).

The relative class is evaluated through the relator matrix word
``R = prod [N_ai, N_bi] * prod nu_k``.  Schur's lemma forces
``R rho(f)^-1 = c * I``; the returned value is ``1/c``.  This orientation is the
one under which a product bundle gives ``value * prod t_k = prod Tr rho(c_k)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import IncompleteIrreps, NotScalar
from .exactfield import CycloMatrix, CycloNumber
from .geometry import SurfaceExtension
from .reps import Representation, intertwiner

_INTERTWINERS: dict[tuple[int, tuple[int, ...]], tuple[Representation, CycloMatrix | None]] = {}


def pullback_intertwiner(rho: Representation, pullback: Sequence[int]) -> CycloMatrix | None:
    """Canonical M with rho(h) M = M rho(pullback(h)), cached per (rho, map)."""
    key = (id(rho), tuple(pullback))
    hit = _INTERTWINERS.get(key)
    if hit is not None and hit[0] is rho:
        return hit[1]
    if all(x == i for i, x in enumerate(pullback)):
        m = CycloMatrix.identity(rho.degree, rho.order)
    else:
        # cheap character test before the linear solve
        tr = rho.traces
        if any(tr[h] != tr[pullback[h]] for h in rho.group.elements):
            m = None
        else:
            twisted = Representation(rho.group, [rho(x) for x in pullback], rho.label)
            m = intertwiner(rho, twisted)
    _INTERTWINERS[key] = (rho, m)
    return m


@dataclass
class FixedIrrep:
    rep: Representation
    gen_matrices: tuple[CycloMatrix, ...]
    nu_matrices: tuple[CycloMatrix | None, ...]
    adequacy: tuple[int, ...]

    @property
    def label(self) -> str:
        return self.rep.label

    @property
    def degree(self) -> int:
        return self.rep.degree

    @property
    def adequate(self) -> bool:
        return all(self.adequacy)


_FIXED: dict[tuple[int, tuple[int, ...]], tuple[Representation, bool]] = {}


def _preserves_character(rho: Representation, pullback: tuple[int, ...]) -> bool:
    key = (id(rho), pullback)
    hit = _FIXED.get(key)
    if hit is not None and hit[0] is rho:
        return hit[1]
    tr = rho.traces
    ok = all(tr[h] == tr[x] for h, x in enumerate(pullback))
    _FIXED[key] = (rho, ok)
    return ok


def is_fixed(E: SurfaceExtension, rho: Representation) -> bool:
    return all(_preserves_character(rho, uinv) for uinv in E.uinv)


def fixed_irreps(E: SurfaceExtension, irreps: Sequence[Representation]) -> list[FixedIrrep]:
    """The irreducibles fixed by every free generator, with their matrices."""
    if sum(r.degree**2 for r in irreps) != E.phi.order:
        raise IncompleteIrreps("irreducible list does not satisfy sum of squared degrees = |phi|")
    out = []
    for rho in irreps:
        if not is_fixed(E, rho):
            continue
        gens = tuple(pullback_intertwiner(rho, uinv) for uinv in E.uinv)
        if any(m is None for m in gens):
            raise NotScalar(f"{rho.label}: character is fixed but no intertwiner was found")
        flags, nus = [], []
        for k in range(1, E.surface.boundary + 1):
            t, nu = _boundary_matrix(E, rho, k)
            flags.append(t)
            nus.append(nu)
        out.append(FixedIrrep(rho, gens, tuple(nus), tuple(flags)))
    return out


def _boundary_matrix(E: SurfaceExtension, rho: Representation, k: int) -> tuple[int, CycloMatrix | None]:
    m = pullback_intertwiner(rho, E.gamma_pullback(k))
    if m is None:
        raise NotScalar(f"{rho.label}: no intertwiner for boundary {k} although rho is fixed")
    tr = m.trace()
    if not tr:
        return 0, None
    return 1, m * tr.inverse()


def t_rho(E: SurfaceExtension, fx: FixedIrrep, k: int) -> tuple[int, CycloMatrix | None]:
    """Adequacy flag of gamma_k (1-based) and the trace-1 matrix nu(gamma_k)."""
    return fx.adequacy[k - 1], fx.nu_matrices[k - 1]


def relator_matrix(E: SurfaceExtension, fx: FixedIrrep, scales: Sequence | None = None) -> CycloMatrix:
    n, order = fx.rep.degree, fx.rep.order
    gens = list(fx.gen_matrices)
    if scales is not None:
        gens = [m * s for m, s in zip(gens, scales)]
    r = CycloMatrix.identity(n, order)
    for i in range(E.surface.genus):
        a, b = gens[2 * i], gens[2 * i + 1]
        r = r @ a @ b @ a.inverse() @ b.inverse()
    for nu in fx.nu_matrices:
        r = r @ nu
    return r


def relator_fiber(E: SurfaceExtension) -> int:
    if E.surface.boundary == 0:
        return E.relator_fiber
    return E.gamma_elements()[1]


def evaluate_class(E: SurfaceExtension, fx: FixedIrrep, scales: Sequence | None = None) -> CycloNumber:
    """Value of the relative class on the fundamental class (see module docstring).

    Only meaningful when every boundary flag is 1; otherwise the term vanishes
    and zero is returned.
    """
    if not fx.adequate:
        return CycloNumber.rational(0, fx.rep.order)
    r = relator_matrix(E, fx, scales)
    f = relator_fiber(E)
    c = (r @ fx.rep(f).inverse()).is_scalar()
    if c is None or not c:
        raise NotScalar(f"{fx.label}: relator matrix word is not a nonzero scalar multiple of rho(f)")
    return c.inverse()
