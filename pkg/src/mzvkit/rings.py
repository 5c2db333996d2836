"""Scalar coefficient rings for the word algebra and value computations.

Three rings are provided on top of ``fractions.Fraction``:

* ``ZetaPoly`` -- commutative polynomials in formal zeta symbols ``Z[k]``
  (k an admissible index) and named indeterminates (``T``, ``T1``, ``T2``)
  with exact rational coefficients.  Equality is structural; no relation
  between zeta symbols is assumed.
* ``TSeries`` -- a univariate power series truncated at a fixed order, with
  coefficients in any ring supporting ``+``, ``-``, ``*`` and ``bool``.
* ``BiSeries`` -- a bivariate series in (s, t) truncated at fixed orders
  (ms, mt), stored as a dense coefficient grid.

Zero tests go through ``bool(x)``, which works for ``Fraction``, mpmath
numbers and the classes below.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable

# A monomial is (zpart, tpart):
#   zpart: tuple of (index_tuple, exponent), sorted by index_tuple
#   tpart: tuple of (name, exponent), sorted by name
Monomial = tuple[tuple, tuple]

_ONE_MONO: Monomial = ((), ())


def _merge_powers(a, b):
    d = {}
    for key, e in a:
        d[key] = d.get(key, 0) + e
    for key, e in b:
        d[key] = d.get(key, 0) + e
    return tuple(sorted((k, e) for k, e in d.items() if e))


class ZetaPoly:
    """Exact polynomial in zeta symbols and formal T-variables."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict[Monomial, Fraction] | None = None):
        self.terms = {m: c for m, c in (terms or {}).items() if c}

    # -- constructors -------------------------------------------------
    @classmethod
    def const(cls, q) -> "ZetaPoly":
        q = Fraction(q)
        return cls({_ONE_MONO: q} if q else {})

    @classmethod
    def zeta(cls, k) -> "ZetaPoly":
        """The symbol Z[k] for an admissible index; Z[()] is 1."""
        k = tuple(k)
        if k and k[-1] < 2:
            raise ValueError(f"zeta symbol requires an admissible index, got {k}")
        if not k:
            return cls.const(1)
        return cls({(((k, 1),), ()): Fraction(1)})

    @classmethod
    def tvar(cls, name: str) -> "ZetaPoly":
        return cls({((), ((name, 1),)): Fraction(1)})

    zero_mono = _ONE_MONO

    # -- ring operations ----------------------------------------------
    def __add__(self, other) -> "ZetaPoly":
        other = _as_zp(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, Fraction(0)) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return ZetaPoly(out)

    __radd__ = __add__

    def __neg__(self) -> "ZetaPoly":
        return ZetaPoly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other) -> "ZetaPoly":
        return self + (-_as_zp(other))

    def __rsub__(self, other) -> "ZetaPoly":
        return _as_zp(other) + (-self)

    def __mul__(self, other) -> "ZetaPoly":
        if isinstance(other, (int, Fraction)):
            q = Fraction(other)
            if not q:
                return ZetaPoly()
            return ZetaPoly({m: c * q for m, c in self.terms.items()})
        if not isinstance(other, ZetaPoly):
            return NotImplemented
        out: dict[Monomial, Fraction] = {}
        for (z1, t1), c1 in self.terms.items():
            for (z2, t2), c2 in other.terms.items():
                m = (_merge_powers(z1, z2), _merge_powers(t1, t2))
                s = out.get(m, Fraction(0)) + c1 * c2
                if s:
                    out[m] = s
                else:
                    out.pop(m, None)
        return ZetaPoly(out)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "ZetaPoly":
        return self * (Fraction(1) / Fraction(other))

    def __pow__(self, n: int) -> "ZetaPoly":
        if n < 0:
            raise ValueError("negative powers are not defined")
        out = ZetaPoly.const(1)
        for _ in range(n):
            out = out * self
        return out

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = ZetaPoly.const(other)
        return isinstance(other, ZetaPoly) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    # -- structure ------------------------------------------------------
    def tvar_names(self) -> set[str]:
        return {name for (_, tpart) in self.terms for (name, _) in tpart}

    def subst_tvars(self, values: dict[str, "ZetaPoly | Fraction | int"]) -> "ZetaPoly":
        """Substitute polynomials/constants for the named T-variables."""
        out = ZetaPoly()
        for (zpart, tpart), c in self.terms.items():
            term = ZetaPoly({(zpart, tuple((n, e) for n, e in tpart if n not in values)): c})
            for name, e in tpart:
                if name in values:
                    term = term * (_as_zp(values[name]) ** e)
            out = out + term
        return out

    def constant_value(self) -> Fraction:
        """The rational value, if the polynomial is a constant."""
        if not self.terms:
            return Fraction(0)
        if set(self.terms) == {_ONE_MONO}:
            return self.terms[_ONE_MONO]
        raise ValueError(f"not a constant polynomial: {self}")

    def _degree(self, mono: Monomial) -> int:
        zpart, tpart = mono
        return sum(e for _, e in zpart) + sum(e for _, e in tpart)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        keys = sorted(self.terms, key=lambda m: (self._degree(m), m))
        pieces = []
        for m in keys:
            zpart, tpart = m
            factors = [str(self.terms[m])]
            for idx, e in zpart:
                factors.append(f"Z[{','.join(map(str, idx))}]^{e}")
            for name, e in tpart:
                factors.append(f"{name}^{e}")
            pieces.append(" * ".join(factors))
        return " + ".join(pieces)

    __repr__ = __str__


def _as_zp(x) -> ZetaPoly:
    if isinstance(x, ZetaPoly):
        return x
    if isinstance(x, (int, Fraction)):
        return ZetaPoly.const(x)
    raise TypeError(f"cannot coerce {type(x).__name__} into ZetaPoly")


ZP_ZERO = ZetaPoly()
ZP_ONE = ZetaPoly.const(1)


class TSeries:
    """Power series in one variable truncated at a fixed order (inclusive)."""

    __slots__ = ("order", "coeffs")

    def __init__(self, order: int, coeffs: list):
        if len(coeffs) != order + 1:
            raise ValueError("coefficient list must have length order+1")
        self.order = order
        self.coeffs = list(coeffs)

    @classmethod
    def constant(cls, c, order: int) -> "TSeries":
        return cls(order, [c] + [c * 0 for _ in range(order)])

    def __add__(self, other: "TSeries") -> "TSeries":
        self._check(other)
        return TSeries(self.order, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other: "TSeries") -> "TSeries":
        self._check(other)
        return TSeries(self.order, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __mul__(self, other) -> "TSeries":
        if not isinstance(other, TSeries):
            return TSeries(self.order, [a * other for a in self.coeffs])
        self._check(other)
        out = []
        for n in range(self.order + 1):
            acc = self.coeffs[0] * other.coeffs[n]
            for i in range(1, n + 1):
                acc = acc + self.coeffs[i] * other.coeffs[n - i]
            out.append(acc)
        return TSeries(self.order, out)

    def scale(self, c) -> "TSeries":
        return TSeries(self.order, [c * a for a in self.coeffs])

    __rmul__ = scale

    def negate_var(self) -> "TSeries":
        """Substitute -t for the series variable."""
        return TSeries(self.order, [a if i % 2 == 0 else -1 * a for i, a in enumerate(self.coeffs)])

    def shift(self, j: int) -> "TSeries":
        """Multiply by t^j, dropping coefficients beyond the order."""
        zero = self.coeffs[0] * 0
        keep = max(0, self.order + 1 - j)
        return TSeries(self.order, [zero] * (self.order + 1 - keep) + self.coeffs[:keep])

    def map(self, f: Callable) -> "TSeries":
        return TSeries(self.order, [f(a) for a in self.coeffs])

    def _check(self, other):
        if not isinstance(other, TSeries) or other.order != self.order:
            raise ValueError("truncation orders do not match")

    def __eq__(self, other) -> bool:
        return isinstance(other, TSeries) and self.order == other.order and self.coeffs == other.coeffs

    def __bool__(self) -> bool:
        return any(bool(a) for a in self.coeffs)

    def __repr__(self) -> str:
        return "TSeries[" + "; ".join(str(a) for a in self.coeffs) + "]"


class BiSeries:
    """Series in s and t truncated at orders (ms, mt), as a dense grid."""

    __slots__ = ("ms", "mt", "grid")

    def __init__(self, ms: int, mt: int, grid: list[list]):
        if len(grid) != ms + 1 or any(len(row) != mt + 1 for row in grid):
            raise ValueError("grid shape must be (ms+1) x (mt+1)")
        self.ms = ms
        self.mt = mt
        self.grid = [list(row) for row in grid]

    @classmethod
    def constant(cls, c, ms: int, mt: int) -> "BiSeries":
        zero = c * 0
        grid = [[c if (i == 0 and j == 0) else zero for j in range(mt + 1)] for i in range(ms + 1)]
        return cls(ms, mt, grid)

    @classmethod
    def monomial(cls, c, i: int, j: int, ms: int, mt: int) -> "BiSeries":
        """c * s^i * t^j, or zero when the monomial is beyond truncation."""
        zero = c * 0
        grid = [[zero] * (mt + 1) for _ in range(ms + 1)]
        if i <= ms and j <= mt:
            grid[i][j] = c
        return cls(ms, mt, grid)

    @classmethod
    def from_outer(cls, a: TSeries, b: TSeries) -> "BiSeries":
        """The product a(s) * b(t) as a bivariate grid."""
        return cls(a.order, b.order, [[x * y for y in b.coeffs] for x in a.coeffs])

    def __add__(self, other: "BiSeries") -> "BiSeries":
        self._check(other)
        return BiSeries(self.ms, self.mt,
                        [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.grid, other.grid)])

    def __sub__(self, other: "BiSeries") -> "BiSeries":
        self._check(other)
        return BiSeries(self.ms, self.mt,
                        [[a - b for a, b in zip(r1, r2)] for r1, r2 in zip(self.grid, other.grid)])

    def __mul__(self, other) -> "BiSeries":
        if not isinstance(other, BiSeries):
            return BiSeries(self.ms, self.mt, [[a * other for a in row] for row in self.grid])
        self._check(other)
        out = []
        for m in range(self.ms + 1):
            row = []
            for n in range(self.mt + 1):
                acc = self.grid[0][0] * other.grid[m][n]
                for i in range(m + 1):
                    for j in range(n + 1):
                        if i == 0 and j == 0:
                            continue
                        acc = acc + self.grid[i][j] * other.grid[m - i][n - j]
                row.append(acc)
            out.append(row)
        return BiSeries(self.ms, self.mt, out)

    def scale(self, c) -> "BiSeries":
        return BiSeries(self.ms, self.mt, [[c * a for a in row] for row in self.grid])

    __rmul__ = scale

    def shift(self, ds: int, dt: int) -> "BiSeries":
        """Multiply by s^ds * t^dt, dropping overflow."""
        zero = self.grid[0][0] * 0
        grid = [[zero] * (self.mt + 1) for _ in range(self.ms + 1)]
        for i in range(self.ms + 1 - ds):
            for j in range(self.mt + 1 - dt):
                grid[i + ds][j + dt] = self.grid[i][j]
        return BiSeries(self.ms, self.mt, grid)

    def map(self, f: Callable) -> "BiSeries":
        return BiSeries(self.ms, self.mt, [[f(a) for a in row] for row in self.grid])

    def entries(self):
        for i, row in enumerate(self.grid):
            for j, a in enumerate(row):
                yield i, j, a

    def _check(self, other):
        if not isinstance(other, BiSeries) or (other.ms, other.mt) != (self.ms, self.mt):
            raise ValueError("truncation orders do not match")

    def __eq__(self, other) -> bool:
        return (isinstance(other, BiSeries) and (self.ms, self.mt) == (other.ms, other.mt)
                and self.grid == other.grid)

    def __bool__(self) -> bool:
        return any(bool(a) for row in self.grid for a in row)

    def __repr__(self) -> str:
        rows = ["[" + "; ".join(str(a) for a in row) + "]" for row in self.grid]
        return "BiSeries" + "".join("\n  " + r for r in rows)
