"""Exact arithmetic in cyclotomic fields Q(zeta_N) and dense linear algebra.

A :class:`CycloNumber` stores an element of ``Q(zeta_N)`` as a residue
modulo the N-th cyclotomic polynomial in the power basis
``1, z, ..., z^(phi(N)-1)``.  Internally the coefficients are kept as a
tuple of integers over one positive common denominator, which is much
faster than a tuple of ``Fraction`` objects.

The linear algebra helpers (:func:`rref`, :func:`kernel`, :func:`solve`,
:func:`inverse`) are written against the field protocol ``+ - * /`` and
truthiness, so they work for both ``Fraction`` and ``CycloNumber`` entries.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import DimensionMismatch, DivisionByZero, Inconsistent, SingularMatrix

__all__ = [
    "CycloNumber",
    "CycloMatrix",
    "cyclotomic_poly",
    "euler_phi",
    "zeta",
    "rref",
    "kernel",
    "solve",
    "inverse",
    "to_cyclo",
    "parse_cyclo",
]


# ---------------------------------------------------------------------------
# integer polynomial helpers


@lru_cache(maxsize=None)
def euler_phi(n: int) -> int:
    result, m, p = n, n, 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_n, lowest degree first."""
    if n < 1:
        raise ValueError("cyclotomic order must be positive")
    # x^n - 1 divided by Phi_d for every proper divisor d
    poly = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            poly = _exact_divide(poly, list(cyclotomic_poly(d)))
    return tuple(poly)


def _exact_divide(num: list[int], den: list[int]) -> list[int]:
    num = list(num)
    dq = len(den) - 1
    lead = den[-1]
    quot = [0] * (len(num) - dq)
    for i in range(len(num) - 1, dq - 1, -1):
        c = num[i]
        if c:
            q, r = divmod(c, lead)
            assert r == 0
            quot[i - dq] = q
            for j, dj in enumerate(den):
                num[i - dq + j] -= q * dj
    assert not any(num[:dq])
    return quot


@lru_cache(maxsize=None)
def _power_table(n: int) -> tuple[tuple[int, ...], ...]:
    """Reduced coefficient vectors of x^e mod Phi_n for 0 <= e < n."""
    phi = cyclotomic_poly(n)
    deg = len(phi) - 1
    rows = []
    cur = [0] * deg
    cur[0] = 1
    for _ in range(n):
        rows.append(tuple(cur))
        # multiply by x and reduce
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            for j in range(deg):
                cur[j] -= top * phi[j]
    return tuple(rows)


@lru_cache(maxsize=None)
def _mobius(n: int) -> int:
    result, m, p = 1, n, 2
    while p * p <= m:
        if m % p == 0:
            m //= p
            if m % p == 0:
                return 0
            result = -result
        p += 1
    if m > 1:
        result = -result
    return result


@lru_cache(maxsize=None)
def _ramanujan(n: int, k: int) -> int:
    # trace of zeta_n^k from Q(zeta_n) down to Q
    g = math.gcd(k, n)
    return _mobius(n // g) * euler_phi(n) // euler_phi(n // g)


# ---------------------------------------------------------------------------
# cyclotomic numbers


def _normalize(num: Sequence[int], den: int) -> tuple[tuple[int, ...], int]:
    if den < 0:
        num = [-c for c in num]
        den = -den
    g = den
    for c in num:
        if c:
            g = math.gcd(g, c)
            if g == 1:
                break
    if not any(num):
        return tuple(0 for _ in num), 1
    if g != 1:
        num = [c // g for c in num]
        den //= g
    return tuple(num), den


class CycloNumber:
    """Immutable element of Q(zeta_N) in canonical reduced form."""

    __slots__ = ("order", "_num", "_den", "_hash")

    def __init__(self, order: int, coeffs: Iterable = (0,)) -> None:
        if order < 1:
            raise ValueError("order must be positive")
        fracs = [Fraction(c) for c in coeffs]
        den = 1
        for f in fracs:
            den = den * f.denominator // math.gcd(den, f.denominator)
        raw = [int(f * den) for f in fracs]
        num = _reduce(order, raw)
        self.order = order
        self._num, self._den = _normalize(num, den)
        self._hash = None

    @classmethod
    def _make(cls, order: int, num: Sequence[int], den: int) -> "CycloNumber":
        obj = cls.__new__(cls)
        obj.order = order
        obj._num, obj._den = _normalize(num, den)
        obj._hash = None
        return obj

    @classmethod
    def rational(cls, value, order: int = 1) -> "CycloNumber":
        f = Fraction(value)
        deg = euler_phi(order)
        return cls._make(order, [f.numerator] + [0] * (deg - 1), f.denominator)

    # -- accessors --------------------------------------------------------

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(c, self._den) for c in self._num)

    def is_rational(self) -> bool:
        return not any(self._num[1:])

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return Fraction(self._num[0], self._den)

    def lift(self, order: int) -> "CycloNumber":
        """Embed into Q(zeta_order) using zeta_N = zeta_M^(M/N)."""
        if order == self.order:
            return self
        if order % self.order:
            raise ValueError(f"cannot lift order {self.order} to {order}")
        step = order // self.order
        raw = [0] * order
        for k, c in enumerate(self._num):
            if c:
                raw[(k * step) % order] += c
        return CycloNumber._make(order, _reduce_full(order, raw), self._den)

    def _common(self, other: "CycloNumber") -> tuple["CycloNumber", "CycloNumber"]:
        if self.order == other.order:
            return self, other
        m = self.order * other.order // math.gcd(self.order, other.order)
        return self.lift(m), other.lift(m)

    def _coerce(self, other) -> "CycloNumber | None":
        if isinstance(other, CycloNumber):
            return other
        if isinstance(other, (int, Fraction)):
            return CycloNumber.rational(other, self.order)
        return None

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self._common(o)
        da, db = a._den, b._den
        num = [x * db + y * da for x, y in zip(a._num, b._num)]
        return CycloNumber._make(a.order, num, da * db)

    __radd__ = __add__

    def __neg__(self):
        return CycloNumber._make(self.order, [-c for c in self._num], self._den)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, int):
            return CycloNumber._make(self.order, [c * other for c in self._num], self._den)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self._common(o)
        n = a.order
        raw = [0] * n
        an, bn = a._num, b._num
        for i, x in enumerate(an):
            if x:
                for j, y in enumerate(bn):
                    if y:
                        raw[(i + j) % n] += x * y
        return CycloNumber._make(n, _reduce_full(n, raw), a._den * b._den)

    __rmul__ = __mul__

    def inverse(self) -> "CycloNumber":
        """Multiplicative inverse via the extended Euclidean algorithm against Phi_N."""
        if not self:
            raise DivisionByZero("inverse of zero in a cyclotomic field")
        if self.is_rational():
            return CycloNumber._make(self.order, [self._den] + [0] * (len(self._num) - 1), self._num[0])
        phi = [Fraction(c) for c in cyclotomic_poly(self.order)]
        a = [Fraction(c, self._den) for c in self._num]
        s = _poly_inverse_mod(a, phi)
        return CycloNumber(self.order, s)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = CycloNumber.rational(1, self.order)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def conjugate(self) -> "CycloNumber":
        """Complex conjugate: zeta -> zeta^-1."""
        n = self.order
        raw = [0] * n
        for k, c in enumerate(self._num):
            if c:
                raw[(-k) % n] += c
        return CycloNumber._make(n, _reduce_full(n, raw), self._den)

    def __bool__(self) -> bool:
        return any(self._num)

    def __eq__(self, other) -> bool:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self._common(o)
        return a._den == b._den and a._num == b._num

    def __hash__(self) -> int:
        if self._hash is None:
            if self.is_rational():
                self._hash = hash(Fraction(self._num[0], self._den))
            else:
                # normalized trace is invariant under order lifting
                tr = sum(c * _ramanujan(self.order, k) for k, c in enumerate(self._num))
                self._hash = hash(("cyclo", Fraction(tr, self._den * euler_phi(self.order))))
        return self._hash

    def sort_key(self) -> tuple:
        return (self.order, tuple(self.coeffs))

    # -- text -------------------------------------------------------------

    def __repr__(self) -> str:
        return f"CycloNumber({self.order}, {[str(c) for c in self.coeffs]})"

    def __str__(self) -> str:
        terms = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            if k == 0:
                body = str(abs(c))
            else:
                gen = f"z{self.order}" + (f"^{k}" if k > 1 else "")
                body = gen if abs(c) == 1 else f"{abs(c)}*{gen}"
            terms.append(("-" if c < 0 else "+", body))
        if not terms:
            return "0"
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out

    def to_json(self) -> dict:
        return {"order": self.order, "coeffs": [str(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, data: dict) -> "CycloNumber":
        return cls(int(data["order"]), [Fraction(c) for c in data["coeffs"]])

    @classmethod
    def parse(cls, text: str, order: int | None = None) -> "CycloNumber":
        """Parse the pretty-printed form, e.g. ``"1/2 - 1/2*z3"`` or ``"-z4^3"``."""
        return parse_cyclo(text, order)


def _reduce(order: int, raw: Sequence[int]) -> list[int]:
    n = order
    folded = [0] * n
    for e, c in enumerate(raw):
        if c:
            folded[e % n] += c
    return _reduce_full(n, folded)


def _reduce_full(n: int, raw: Sequence[int]) -> list[int]:
    table = _power_table(n)
    deg = len(table[0])
    out = list(raw[:deg]) + [0] * max(0, deg - len(raw))
    for e in range(deg, len(raw)):
        c = raw[e]
        if c:
            row = table[e]
            for j in range(deg):
                if row[j]:
                    out[j] += c * row[j]
    return out


def _poly_trim(p: list[Fraction]) -> list[Fraction]:
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_divmod(a: list[Fraction], b: list[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    a = _poly_trim(list(a))
    b = _poly_trim(list(b))
    if len(a) < len(b):
        return [], a
    q = [Fraction(0)] * (len(a) - len(b) + 1)
    lead = b[-1]
    for i in range(len(a) - len(b), -1, -1):
        c = a[i + len(b) - 1] / lead
        q[i] = c
        if c:
            for j, bj in enumerate(b):
                a[i + j] -= c * bj
    return q, _poly_trim(a[: len(b) - 1])


def _poly_sub_mul(a: list[Fraction], q: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    out = list(a) + [Fraction(0)] * max(0, len(q) + len(b) - 1 - len(a))
    for i, qi in enumerate(q):
        if qi:
            for j, bj in enumerate(b):
                out[i + j] -= qi * bj
    return _poly_trim(out)


def _poly_inverse_mod(a: list[Fraction], m: list[Fraction]) -> list[Fraction]:
    # extended Euclid keeping only the coefficient of a
    r0, r1 = _poly_trim(list(m)), _poly_trim(list(a))
    s0, s1 = [], [Fraction(1)]
    while r1:
        q, r = _poly_divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _poly_sub_mul(s0, q, s1)
    if len(r0) != 1:
        raise DivisionByZero("element is not invertible modulo the cyclotomic polynomial")
    c = r0[0]
    return [x / c for x in s0]


def zeta(order: int, power: int = 1) -> CycloNumber:
    """The root of unity zeta_order^power."""
    raw = [0] * order
    raw[power % order] = 1
    return CycloNumber._make(order, _reduce_full(order, raw), 1)


def to_cyclo(x, order: int = 1) -> CycloNumber:
    if isinstance(x, CycloNumber):
        return x
    return CycloNumber.rational(x, order)


_TERM = re.compile(r"^(?:(?P<coef>\d+(?:/\d+)?)\*?)?(?:z(?P<ord>\d+)(?:\^(?P<pow>\d+))?)?$")


def parse_cyclo(text: str, order: int | None = None) -> CycloNumber:
    s = text.replace(" ", "")
    if not s:
        raise ValueError("empty cyclotomic expression")
    parts = re.findall(r"[+-]?[^+-]+", s)
    terms: list[tuple[Fraction, int, int]] = []
    for part in parts:
        sign = -1 if part[0] == "-" else 1
        body = part.lstrip("+-")
        m = _TERM.match(body)
        if not m or (m.group("coef") is None and m.group("ord") is None):
            raise ValueError(f"cannot parse cyclotomic term {part!r}")
        coef = Fraction(m.group("coef")) if m.group("coef") else Fraction(1)
        n = int(m.group("ord")) if m.group("ord") else 1
        k = int(m.group("pow")) if m.group("pow") else (1 if m.group("ord") else 0)
        terms.append((sign * coef, n, k))
    target = order or 1
    for _, n, _ in terms:
        target = target * n // math.gcd(target, n)
    total = CycloNumber.rational(0, target)
    for coef, n, k in terms:
        total = total + zeta(n, k).lift(target) * coef
    return total


# ---------------------------------------------------------------------------
# generic dense linear algebra


def rref(rows: Sequence[Sequence]) -> tuple[list[list], list[int]]:
    """Reduced row echelon form with deterministic pivoting.

    Pivot search takes the first column with a nonzero entry and, inside it,
    the row of least index.
    """
    m = [list(r) for r in rows]
    if not m:
        return m, []
    ncols = len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == len(m):
            break
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        lead = m[r][c]
        if lead != 1:
            m[r] = [x / lead for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                row_r = m[r]
                m[i] = [x - f * y if y else x for x, y in zip(m[i], row_r)]
        pivots.append(c)
        r += 1
    return m, pivots


def kernel(rows: Sequence[Sequence], ncols: int | None = None, zero=0, one=1) -> list[list]:
    """Basis of the right null space, one vector per free column (deterministic)."""
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    if not rows:
        return [[one if i == j else zero for i in range(ncols)] for j in range(ncols)]
    red, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [zero] * ncols
        v[f] = one
        for i, p in enumerate(pivots):
            v[p] = -red[i][f]
        basis.append(v)
    return basis


def solve(rows: Sequence[Sequence], rhs: Sequence, zero=0) -> list:
    """One exact solution of A x = b (free variables set to zero)."""
    if len(rows) != len(rhs):
        raise DimensionMismatch("right-hand side length does not match rows")
    ncols = len(rows[0])
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    red, pivots = rref(aug)
    if ncols in pivots:
        raise Inconsistent("linear system has no solution")
    x = [zero] * ncols
    for i, p in enumerate(pivots):
        x[p] = red[i][ncols]
    return x


def inverse(rows: Sequence[Sequence], zero=0, one=1) -> list[list]:
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise DimensionMismatch("inverse needs a square matrix")
    aug = [list(r) + [one if i == j else zero for j in range(n)] for i, r in enumerate(rows)]
    red, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise SingularMatrix("matrix is singular")
    return [row[n:] for row in red]


# ---------------------------------------------------------------------------
# matrices over Q(zeta_N)


class CycloMatrix:
    """Immutable dense matrix whose entries share one cyclotomic order."""

    __slots__ = ("rows", "cols", "order", "entries", "_inv")

    def __init__(self, entries: Sequence[Sequence], order: int | None = None) -> None:
        data = [list(r) for r in entries]
        if not data or not data[0]:
            raise DimensionMismatch("empty matrix")
        ncols = len(data[0])
        if any(len(r) != ncols for r in data):
            raise DimensionMismatch("ragged matrix rows")
        if order is None:
            order = 1
            for r in data:
                for x in r:
                    if isinstance(x, CycloNumber):
                        order = order * x.order // math.gcd(order, x.order)
        self.rows = len(data)
        self.cols = ncols
        self.order = order
        self.entries = tuple(tuple(to_cyclo(x, order).lift(order) for x in r) for r in data)
        self._inv = None

    @classmethod
    def _raw(cls, entries: tuple, order: int) -> "CycloMatrix":
        """Trusted constructor: entries already CycloNumbers at ``order``."""
        obj = cls.__new__(cls)
        obj.rows = len(entries)
        obj.cols = len(entries[0])
        obj.order = order
        obj.entries = entries
        obj._inv = None
        return obj

    @classmethod
    def identity(cls, n: int, order: int = 1) -> "CycloMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)], order)

    @classmethod
    def zeros(cls, rows: int, cols: int, order: int = 1) -> "CycloMatrix":
        return cls([[0] * cols for _ in range(rows)], order)

    @classmethod
    def diag(cls, values: Sequence, order: int | None = None) -> "CycloMatrix":
        n = len(values)
        zero = 0
        return cls([[values[i] if i == j else zero for j in range(n)] for i in range(n)], order)

    def lift(self, order: int) -> "CycloMatrix":
        if order == self.order:
            return self
        return CycloMatrix([[x.lift(order) for x in r] for r in self.entries], order)

    def _common(self, other: "CycloMatrix") -> tuple["CycloMatrix", "CycloMatrix"]:
        if self.order == other.order:
            return self, other
        m = self.order * other.order // math.gcd(self.order, other.order)
        return self.lift(m), other.lift(m)

    def __getitem__(self, ij: tuple[int, int]) -> CycloNumber:
        i, j = ij
        return self.entries[i][j]

    def __matmul__(self, other: "CycloMatrix") -> "CycloMatrix":
        if self.cols != other.rows:
            raise DimensionMismatch(f"cannot multiply {self.shape} by {other.shape}")
        a, b = self._common(other)
        zero = CycloNumber.rational(0, a.order)
        bt = list(zip(*b.entries))
        out = []
        for row in a.entries:
            new = []
            for col in bt:
                acc = zero
                for x, y in zip(row, col):
                    if x and y:
                        acc = acc + x * y
                new.append(acc)
            out.append(tuple(new))
        return CycloMatrix._raw(tuple(out), a.order)

    def __mul__(self, scalar) -> "CycloMatrix":
        if isinstance(scalar, CycloMatrix):
            return self @ scalar
        s = to_cyclo(scalar, self.order)
        return CycloMatrix([[x * s for x in r] for r in self.entries])

    __rmul__ = __mul__

    def __add__(self, other: "CycloMatrix") -> "CycloMatrix":
        if self.shape != other.shape:
            raise DimensionMismatch(f"cannot add {self.shape} and {other.shape}")
        a, b = self._common(other)
        return CycloMatrix([[x + y for x, y in zip(r, s)] for r, s in zip(a.entries, b.entries)], a.order)

    def __sub__(self, other: "CycloMatrix") -> "CycloMatrix":
        return self + other * -1

    def __neg__(self) -> "CycloMatrix":
        return self * -1

    def __eq__(self, other) -> bool:
        if not isinstance(other, CycloMatrix):
            return NotImplemented
        return self.shape == other.shape and all(
            x == y for r, s in zip(self.entries, other.entries) for x, y in zip(r, s)
        )

    def __hash__(self) -> int:
        return hash(self.entries)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def trace(self) -> CycloNumber:
        if self.rows != self.cols:
            raise DimensionMismatch("trace of a non-square matrix")
        acc = CycloNumber.rational(0, self.order)
        for i in range(self.rows):
            acc = acc + self.entries[i][i]
        return acc

    def inverse(self) -> "CycloMatrix":
        if self._inv is not None:
            return self._inv
        inv = inverse(self.entries, zero=CycloNumber.rational(0, self.order), one=CycloNumber.rational(1, self.order))
        result = CycloMatrix(inv, self.order)
        if self @ result != CycloMatrix.identity(self.rows, self.order):
            raise SingularMatrix("inverse verification failed")
        self._inv = result
        result._inv = self
        return result

    def transpose(self) -> "CycloMatrix":
        return CycloMatrix(list(zip(*self.entries)), self.order)

    def is_scalar(self) -> CycloNumber | None:
        """Return c when the matrix equals c * identity, else None."""
        if self.rows != self.cols:
            return None
        c = self.entries[0][0]
        for i in range(self.rows):
            for j in range(self.cols):
                x = self.entries[i][j]
                if (i == j and x != c) or (i != j and x):
                    return None
        return c

    def is_identity(self) -> bool:
        return self.is_scalar() == 1

    def kernel(self) -> list[list[CycloNumber]]:
        z = CycloNumber.rational(0, self.order)
        o = CycloNumber.rational(1, self.order)
        basis = kernel(self.entries, self.cols, zero=z, one=o)
        for v in basis:
            for row in self.entries:
                acc = z
                for x, y in zip(row, v):
                    acc = acc + x * y
                assert not acc, "kernel vector failed substitution"
        return basis

    def solve(self, rhs: Sequence) -> list[CycloNumber]:
        z = CycloNumber.rational(0, self.order)
        b = [to_cyclo(x, self.order) for x in rhs]
        x = solve(self.entries, b, zero=z)
        for row, bi in zip(self.entries, b):
            acc = z
            for a, xi in zip(row, x):
                acc = acc + a * xi
            assert acc == bi, "solution failed substitution"
        return x

    def tolist(self) -> list[list[CycloNumber]]:
        return [list(r) for r in self.entries]

    def to_strings(self) -> list[list[str]]:
        return [[str(x) for x in r] for r in self.entries]

    def __repr__(self) -> str:
        return f"CycloMatrix({self.to_strings()})"
