"""Exact dense matrix arithmetic over the integers and the rationals.

Matrices are small (rank <= 10) and immutable.  Entries are Python ints or
:class:`fractions.Fraction`, so everything is arbitrary precision and no
floating point is ever involved.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence, Union

Rational = Union[int, Fraction]


class DimensionError(ValueError):
    pass


class SingularMatrixError(ArithmeticError):
    pass


class _Matrix:
    __slots__ = ("rows", "cols", "entries", "_hash")

    def __init__(self, rows: int, cols: int, entries: Iterable):
        entries = tuple(self._coerce(e) for e in entries)
        if len(entries) != rows * cols:
            raise DimensionError(
                f"expected {rows * cols} entries for a {rows}x{cols} matrix, got {len(entries)}"
            )
        self.rows = rows
        self.cols = cols
        self.entries = entries
        self._hash = None

    @staticmethod
    def _coerce(e):
        return e

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]):
        rows = [list(r) for r in rows]
        if not rows:
            raise DimensionError("matrix must have at least one row")
        ncols = len(rows[0])
        if any(len(r) != ncols for r in rows):
            raise DimensionError("ragged rows")
        return cls(len(rows), ncols, [e for r in rows for e in r])

    @classmethod
    def identity(cls, n: int):
        return cls(n, n, [1 if i == j else 0 for i in range(n) for j in range(n)])

    @classmethod
    def zeros(cls, rows: int, cols: int | None = None):
        cols = rows if cols is None else cols
        return cls(rows, cols, [0] * (rows * cols))

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def __getitem__(self, ij: tuple[int, int]):
        i, j = ij
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(ij)
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def column(self, j: int) -> tuple:
        return self.entries[j::self.cols]

    def to_rows(self) -> list[list]:
        return [list(self.row(i)) for i in range(self.rows)]

    def transpose(self):
        return type(self)(self.cols, self.rows,
                          [self.entries[i * self.cols + j] for j in range(self.cols) for i in range(self.rows)])

    @property
    def T(self):
        return self.transpose()

    def trace(self):
        if not self.is_square:
            raise DimensionError("trace of a non-square matrix")
        return sum(self.entries[i * self.cols + i] for i in range(self.rows))

    def key(self) -> tuple:
        """Hashable, totally ordered identity of the matrix (shape, then entries)."""
        return (self.rows, self.cols) + self.entries

    def __eq__(self, other):
        if not isinstance(other, _Matrix):
            return NotImplemented
        return self.rows == other.rows and self.cols == other.cols and self.entries == other.entries

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.rows, self.cols, self.entries))
        return self._hash

    def __lt__(self, other):
        return self.key() < other.key()

    def __neg__(self):
        return type(self)(self.rows, self.cols, [-e for e in self.entries])

    def __add__(self, other):
        _check_same_shape(self, other)
        cls = IntMatrix if isinstance(self, IntMatrix) and isinstance(other, IntMatrix) else RatMatrix
        return cls(self.rows, self.cols, [a + b for a, b in zip(self.entries, other.entries)])

    def __sub__(self, other):
        return self + (-other)

    def __matmul__(self, other):
        if not isinstance(other, _Matrix):
            return NotImplemented
        if isinstance(self, IntMatrix) and isinstance(other, IntMatrix):
            return mat_mul(self, other)
        return RatMatrix(self.rows, other.cols, _mul_entries(self, other))

    def __pow__(self, k: int):
        if not self.is_square:
            raise DimensionError("power of a non-square matrix")
        if k < 0:
            return mat_inverse(self) ** (-k)
        result = type(self).identity(self.rows)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def __repr__(self):
        return f"{type(self).__name__}({self.to_rows()!r})"

    def __str__(self):
        cells = [[_fmt(e) for e in self.row(i)] for i in range(self.rows)]
        width = max(len(c) for r in cells for c in r)
        return "\n".join("[" + " ".join(c.rjust(width) for c in r) + "]" for r in cells)


def _fmt(e) -> str:
    if isinstance(e, Fraction) and e.denominator != 1:
        return f"{e.numerator}/{e.denominator}"
    return str(int(e))


class IntMatrix(_Matrix):
    """Immutable integer matrix, stored row-major."""

    __slots__ = ()

    @staticmethod
    def _coerce(e):
        if isinstance(e, Fraction):
            if e.denominator != 1:
                raise ValueError(f"non-integral entry {e}")
            return e.numerator
        if isinstance(e, bool) or not isinstance(e, int):
            if hasattr(e, "__index__"):
                return int(e)
            raise TypeError(f"integer entry expected, got {type(e).__name__}")
        return e

    def encode(self) -> bytes:
        """Canonical byte encoding, ``b"rows,cols:e11,e12,..."``."""
        body = ",".join(str(e) for e in self.entries)
        return f"{self.rows},{self.cols}:{body}".encode("ascii")

    @classmethod
    def decode(cls, data: bytes) -> "IntMatrix":
        head, _, body = data.decode("ascii").partition(":")
        rows, cols = (int(x) for x in head.split(","))
        return cls(rows, cols, [int(x) for x in body.split(",")] if body else [])


class RatMatrix(_Matrix):
    """Immutable rational matrix; every entry is a normalized :class:`Fraction`."""

    __slots__ = ()

    @staticmethod
    def _coerce(e):
        return Fraction(e)

    def is_integral(self) -> bool:
        return all(e.denominator == 1 for e in self.entries)

    def to_int(self) -> IntMatrix:
        return IntMatrix(self.rows, self.cols, self.entries)

    def to_strings(self) -> list[list[str]]:
        return [[_fmt(e) for e in self.row(i)] for i in range(self.rows)]


def _check_same_shape(a: _Matrix, b: _Matrix):
    if a.shape != b.shape:
        raise DimensionError(f"shape mismatch {a.shape} vs {b.shape}")


def _mul_entries(a: _Matrix, b: _Matrix) -> list:
    if a.cols != b.rows:
        raise DimensionError(f"cannot multiply {a.rows}x{a.cols} by {b.rows}x{b.cols}")
    n, m, p = a.rows, a.cols, b.cols
    ae, be = a.entries, b.entries
    bcols = [be[j::p] for j in range(p)]
    out = []
    for i in range(n):
        arow = ae[i * m:(i + 1) * m]
        for col in bcols:
            out.append(sum(x * y for x, y in zip(arow, col)))
    return out


def mat_mul(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    """Exact product ``a @ b``."""
    return IntMatrix(a.rows, b.cols, _mul_entries(a, b))


def _bareiss(rows: list[list[int]], n: int) -> int:
    """Fraction-free Gauss-Jordan elimination in place on an augmented matrix.

    On return the left ``n x n`` block equals ``det * I`` and the right block
    has been transformed accordingly.  Returns the determinant.
    """
    width = len(rows[0])
    sign = 1
    prev = 1
    for k in range(n):
        if rows[k][k] == 0:
            for r in range(k + 1, n):
                if rows[r][k] != 0:
                    rows[k], rows[r] = rows[r], rows[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = rows[k][k]
        for i in range(n):
            if i == k:
                continue
            f = rows[i][k]
            ri, rk = rows[i], rows[k]
            for j in range(width):
                if j == k:
                    continue
                # exact by Sylvester's identity
                ri[j] = (pivot * ri[j] - f * rk[j]) // prev
            ri[k] = 0
        prev = pivot
    det = sign * prev
    for i in range(n):
        if rows[i][i] != prev:
            raise ArithmeticError("Bareiss invariant violated")
    return det


def determinant(a: _Matrix) -> Rational:
    if not a.is_square:
        raise DimensionError("determinant of a non-square matrix")
    if isinstance(a, RatMatrix):
        denom = _common_denominator(a)
        scaled = IntMatrix(a.rows, a.cols, [e * denom for e in a.entries])
        return Fraction(determinant(scaled), denom ** a.rows)
    return _bareiss([list(a.row(i)) for i in range(a.rows)], a.cols)


def _common_denominator(a: RatMatrix) -> int:
    return math.lcm(*(e.denominator for e in a.entries))


def mat_inverse(a: _Matrix) -> RatMatrix:
    """Exact inverse via fraction-free elimination on ``[a | I]``.

    Raises :class:`SingularMatrixError` when ``det(a) == 0``.
    """
    if not a.is_square:
        raise DimensionError("inverse of a non-square matrix")
    n = a.rows
    if isinstance(a, RatMatrix):
        denom = _common_denominator(a)
        scaled = mat_inverse(IntMatrix(n, n, [e * denom for e in a.entries]))
        return RatMatrix(n, n, [e * denom for e in scaled.entries])
    rows = [list(a.row(i)) + [1 if i == j else 0 for j in range(n)] for i in range(n)]
    sign_det = _bareiss(rows, n)
    if sign_det == 0:
        raise SingularMatrixError("matrix is singular")
    # left block is p*I where p is the last pivot (det up to row-swap sign)
    p = rows[0][0]
    return RatMatrix(n, n, [Fraction(rows[i][n + j], p) for i in range(n) for j in range(n)])


class Polynomial:
    """Polynomial with exact rational coefficients, lowest degree first."""

    __slots__ = ("coefficients",)

    def __init__(self, coefficients: Iterable[Rational]):
        coeffs = [Fraction(c) for c in coefficients]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        self.coefficients = tuple(coeffs)

    @classmethod
    def from_roots(cls, roots: Iterable[Rational]) -> "Polynomial":
        p = cls([1])
        for r in roots:
            p = p * cls([-Fraction(r), 1])
        return p

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def is_zero(self) -> bool:
        return not self.coefficients

    def __call__(self, x: Rational) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        if self.is_zero() or other.is_zero():
            return Polynomial([])
        out = [Fraction(0)] * (len(self.coefficients) + len(other.coefficients) - 1)
        for i, a in enumerate(self.coefficients):
            for j, b in enumerate(other.coefficients):
                out[i + j] += a * b
        return Polynomial(out)

    def __pow__(self, k: int) -> "Polynomial":
        result = Polynomial([1])
        for _ in range(k):
            result = result * self
        return result

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.coefficients == other.coefficients

    def __hash__(self):
        return hash(self.coefficients)

    def divide_linear(self, r: Rational) -> tuple["Polynomial", Fraction]:
        """Synthetic division by ``x - r``; returns (quotient, remainder)."""
        r = Fraction(r)
        quotient = []
        acc = Fraction(0)
        for c in reversed(self.coefficients):
            acc = acc * r + c
            quotient.append(acc)
        remainder = quotient.pop() if quotient else Fraction(0)
        return Polynomial(reversed(quotient)), remainder

    def integer_coefficients(self) -> list[int]:
        if any(c.denominator != 1 for c in self.coefficients):
            raise ValueError("polynomial has non-integral coefficients")
        return [c.numerator for c in self.coefficients]

    def __repr__(self):
        return f"Polynomial({[_fmt(c) for c in self.coefficients]})"

    def __str__(self):
        if self.is_zero():
            return "0"
        terms = []
        for k in range(self.degree, -1, -1):
            c = self.coefficients[k]
            if c == 0:
                continue
            mag = abs(c)
            coef = "" if (mag == 1 and k > 0) else _fmt(mag)
            mono = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
            sign = "-" if c < 0 else "+"
            terms.append((sign, coef + mono))
        head_sign, head = terms[0]
        out = ("-" if head_sign == "-" else "") + head
        for sign, t in terms[1:]:
            out += f" {sign} {t}"
        return out


def char_poly(a: IntMatrix) -> Polynomial:
    """Monic characteristic polynomial ``det(xI - a)`` by Faddeev-LeVerrier.

    Every division in the recurrence is exact for integer input, so the
    computation stays in the integers.
    """
    if not a.is_square:
        raise DimensionError("characteristic polynomial of a non-square matrix")
    if not isinstance(a, IntMatrix):
        raise TypeError("char_poly expects an IntMatrix")
    n = a.rows
    coeffs = [1]
    m = IntMatrix.zeros(n)
    c = 1
    for k in range(1, n + 1):
        am = mat_mul(a, m).entries
        m = IntMatrix(n, n, [x + (c if i % (n + 1) == 0 else 0) for i, x in enumerate(am)])
        t = mat_mul(a, m).trace()
        if t % k:
            raise ArithmeticError("non-exact division in Faddeev-LeVerrier")
        c = -t // k
        coeffs.append(c)
    return Polynomial(reversed(coeffs))


def rational_root_multiplicity(p: Polynomial, r: Rational) -> int:
    """Multiplicity of ``r`` as a root of ``p`` (0 when it is not a root)."""
    if p.is_zero():
        raise ValueError("the zero polynomial has every number as a root")
    count = 0
    while p.degree > 0:
        q, rem = p.divide_linear(r)
        if rem != 0:
            break
        p = q
        count += 1
    return count


def permutation_matrix_from_images(images: Sequence[int]) -> IntMatrix:
    """0/1 matrix whose column ``j`` is the basis vector ``images[j]`` (0-based)."""
    n = len(images)
    entries = [0] * (n * n)
    for j, i in enumerate(images):
        entries[i * n + j] = 1
    return IntMatrix(n, n, entries)
