"""Exact scalars and dense linear algebra over the Gaussian rationals.

Every identity verified by this package is an exact-zero test, so the scalar
field is Q(i): complex numbers whose real and imaginary parts are
arbitrary-precision rationals.  Nothing in this module rounds, ever.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

__all__ = [
    "GaussianRational",
    "GR_ZERO",
    "GR_ONE",
    "GR_I",
    "ExactMatrix",
    "RandomStream",
    "rref",
    "nullspace_basis",
    "solve_linear",
    "sample_rational_vector",
]


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"cannot coerce {type(x).__name__} to Fraction")


class GaussianRational:
    """An element of Q(i), kept in canonical reduced form.

    Both components are `fractions.Fraction`, which guarantees reduced
    numerator/denominator with positive denominator.  Instances are immutable;
    all arithmetic returns new values.
    """

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", _as_fraction(re))
        object.__setattr__(self, "im", _as_fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    @staticmethod
    def _coerce(x) -> "GaussianRational | None":
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, (int, Fraction)):
            return GaussianRational(x)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(o.re - self.re, o.im - self.im)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(
            self.re * o.re - self.im * o.im,
            self.re * o.im + self.im * o.re,
        )

    __rmul__ = __mul__

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

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def is_zero(self) -> bool:
        return not self

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def norm_sq(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def inverse(self) -> "GaussianRational":
        n = self.norm_sq()
        if n == 0:
            raise ZeroDivisionError("inverse of zero Gaussian rational")
        return GaussianRational(self.re / n, -self.im / n)

    def __repr__(self):
        if not self.im:
            return f"GR({self.re})"
        return f"GR({self.re}, {self.im}i)"


GR_ZERO = GaussianRational(0)
GR_ONE = GaussianRational(1)
GR_I = GaussianRational(0, 1)


# ---------------------------------------------------------------------------
# Deterministic splittable PRNG
# ---------------------------------------------------------------------------

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15


def _mix64(z: int) -> int:
    # splitmix64 finalizer
    z &= _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


class RandomStream:
    """Splittable splitmix64 stream.

    Golden vectors and counterexample replays are compared byte for byte, so
    the generator must produce identical output on every interpreter version;
    the stdlib generator only guarantees that for `random()`.
    """

    __slots__ = ("_state",)

    def __init__(self, seed: int):
        self._state = _mix64(seed & _MASK64) ^ _GOLDEN

    def next_u64(self) -> int:
        self._state = (self._state + _GOLDEN) & _MASK64
        return _mix64(self._state)

    def next_int(self, lo: int, hi: int) -> int:
        """Integer in [lo, hi].  Modulo reduction: deterministic, and the
        slight bias is irrelevant for sampling test inputs."""
        if hi < lo:
            raise ValueError("empty range")
        return lo + self.next_u64() % (hi - lo + 1)

    def next_fraction(self, bound: int) -> Fraction:
        """Rational with |numerator| <= bound and 1 <= denominator <= bound."""
        num = self.next_int(-bound, bound)
        den = self.next_int(1, bound)
        return Fraction(num, den)

    def next_gaussian(self, bound: int) -> GaussianRational:
        re = self.next_fraction(bound)
        im = self.next_fraction(bound)
        return GaussianRational(re, im)

    def split(self, label: int) -> "RandomStream":
        """Independent child stream; does not advance this stream."""
        child = RandomStream.__new__(RandomStream)
        child._state = _mix64(self._state ^ _mix64(label & _MASK64))
        return child


def sample_rational_vector(dim: int, seed: int, bound: int) -> list[Fraction]:
    """Deterministic rational vector; entries have |num|, den <= bound."""
    if bound < 1:
        raise ValueError("bound must be >= 1")
    stream = RandomStream(seed)
    return [stream.next_fraction(bound) for _ in range(dim)]


# ---------------------------------------------------------------------------
# Dense exact matrices
# ---------------------------------------------------------------------------


class ExactMatrix:
    """Dense matrix over Q(i).  Treated as immutable after construction."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries: Iterable[Iterable]):
        grid = [[_coerce_gr(x) for x in row] for row in entries]
        if grid:
            width = len(grid[0])
            for row in grid:
                if len(row) != width:
                    raise ValueError("ragged rows")
        else:
            width = 0
        object.__setattr__(self, "rows", len(grid))
        object.__setattr__(self, "cols", width)
        object.__setattr__(self, "entries", grid)

    def __setattr__(self, name, value):
        raise AttributeError("ExactMatrix is immutable")

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        return cls([[GR_ONE if i == j else GR_ZERO for j in range(n)] for i in range(n)])

    @classmethod
    def zero(cls, rows: int, cols: int) -> "ExactMatrix":
        return cls([[GR_ZERO] * cols for _ in range(rows)])

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.entries == other.entries

    def __repr__(self):
        return f"ExactMatrix({self.rows}x{self.cols})"

    def row(self, i: int) -> list[GaussianRational]:
        return list(self.entries[i])

    def mul_vector(self, v: Sequence) -> list[GaussianRational]:
        if len(v) != self.cols:
            raise ValueError("dimension mismatch")
        vv = [_coerce_gr(x) for x in v]
        out = []
        for row in self.entries:
            acc = GR_ZERO
            for a, b in zip(row, vv):
                if a and b:
                    acc = acc + a * b
            out.append(acc)
        return out

    def rank(self) -> int:
        _, pivots = rref(self)
        return len(pivots)


def _coerce_gr(x) -> GaussianRational:
    g = GaussianRational._coerce(x)
    if g is None:
        raise TypeError(f"cannot coerce {type(x).__name__} to GaussianRational")
    return g


def rref(m: ExactMatrix) -> tuple[ExactMatrix, list[int]]:
    """Reduced row echelon form via Gauss-Jordan; returns (R, pivot columns)."""
    grid = [list(row) for row in m.entries]
    nrows, ncols = m.rows, m.cols
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        pivot_row = None
        for i in range(r, nrows):
            if grid[i][c]:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        grid[r], grid[pivot_row] = grid[pivot_row], grid[r]
        inv = grid[r][c].inverse()
        grid[r] = [x * inv for x in grid[r]]
        for i in range(nrows):
            if i != r and grid[i][c]:
                f = grid[i][c]
                grid[i] = [a - f * b for a, b in zip(grid[i], grid[r])]
        pivots.append(c)
        r += 1
    return ExactMatrix(grid), pivots


def nullspace_basis(m: ExactMatrix) -> list[list[GaussianRational]]:
    """Basis of {v : m v = 0}; one vector per free column of the RREF."""
    red, pivots = rref(m)
    pivot_set = set(pivots)
    free = [c for c in range(m.cols) if c not in pivot_set]
    basis = []
    for f in free:
        v = [GR_ZERO] * m.cols
        v[f] = GR_ONE
        for row_idx, p in enumerate(pivots):
            coeff = red.entries[row_idx][f]
            if coeff:
                v[p] = -coeff
        basis.append(v)
    return basis


def solve_linear(m: ExactMatrix, b: Sequence) -> list[GaussianRational] | None:
    """One exact solution of m x = b, or None if the system is inconsistent.

    Free variables are set to zero.
    """
    if len(b) != m.rows:
        raise ValueError("right-hand side has wrong length")
    bb = [_coerce_gr(x) for x in b]
    aug = ExactMatrix([list(row) + [bb[i]] for i, row in enumerate(m.entries)])
    red, pivots = rref(aug)
    if m.cols in pivots:
        return None
    x = [GR_ZERO] * m.cols
    for row_idx, p in enumerate(pivots):
        x[p] = red.entries[row_idx][m.cols]
    return x
