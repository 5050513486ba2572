"""Exact rational scalars, arbitrary-precision floats, exact linear algebra.

Rationals are gmpy2.mpq values: always reduced, denominator positive,
arithmetic exact.  They are the ambient scalar for every proof step in this
package; floating point never enters a certification path.

Floats are mpmath values attached to an explicit :class:`FloatCtx`.  Each
context owns an independent mpmath MPContext, so two precisions can coexist
without touching global state.
"""

from __future__ import annotations

from fractions import Fraction

import gmpy2
from gmpy2 import mpq, mpz
from mpmath.ctx_mp import MPContext

QQ = mpq
ZZ = mpz

ZERO = mpq(0)
ONE = mpq(1)


class SingularMatrix(ValueError):
    """Exact elimination met a zero pivot column."""


def rat(x, y=None):
    """Coerce to an exact rational.  Accepts int, str 'num/den', Fraction, mpq."""
    if y is not None:
        return mpq(x, y)
    if isinstance(x, Fraction):
        return mpq(x.numerator, x.denominator)
    if isinstance(x, float):
        # floats are exact binary rationals; accept them only explicitly
        return mpq(*x.as_integer_ratio())
    return mpq(x)


def rat_str(q) -> str:
    """Canonical text form 'num/den' in base 10 (den always printed)."""
    q = mpq(q)
    return f"{q.numerator}/{q.denominator}"


def rat_from_str(s: str):
    return mpq(s)


# ---------------------------------------------------------------------------
# arbitrary-precision floats
# ---------------------------------------------------------------------------

_GUARD_DIGITS = 10


class FloatCtx:
    """Explicit working-precision context (decimal digits) for float work.

    The held MPContext is private to this object; computations in one context
    cannot perturb another.  A few guard digits are carried internally so
    that results are good to the full requested precision.
    """

    def __init__(self, digits: int = 60):
        if digits < 1:
            raise ValueError("precision_digits must be positive")
        self.digits = int(digits)
        self.mp = MPContext()
        self.mp.dps = self.digits + _GUARD_DIGITS

    def __repr__(self):
        return f"FloatCtx(digits={self.digits})"

    def mpf(self, x):
        """Convert int/str/float/mpq/mpf to a float in this context."""
        if isinstance(x, (mpq, Fraction)):
            return self.mp.mpf(x.numerator) / self.mp.mpf(x.denominator)
        return self.mp.mpf(x)

    @property
    def eps(self):
        return self.mp.mpf(10) ** (-self.digits)

    def to_str(self, x) -> str:
        """Decimal string with a precision annotation (serialization form)."""
        return f"{self.mp.nstr(self.mp.mpf(x), self.digits)}@{self.digits}"


_CTXS: dict[int, FloatCtx] = {}


def ctx(digits: int = 60) -> FloatCtx:
    """Shared context cache; contexts are immutable once created."""
    c = _CTXS.get(digits)
    if c is None:
        c = _CTXS[digits] = FloatCtx(digits)
    return c


def real_cbrt(x, fc: FloatCtx):
    """Real cube root, sign-preserving: real_cbrt(-x) = -real_cbrt(x).

    mpmath's root() returns the principal complex root for negative input,
    which is useless for evaluating the map; take the real branch by hand.
    """
    v = fc.mpf(x)
    if v < 0:
        return -fc.mp.cbrt(-v)
    return fc.mp.cbrt(v)


def real_pow23(x, fc: FloatCtx):
    """x^(2/3) through the real cube root (always >= 0)."""
    c = real_cbrt(x, fc)
    return c * c


def real_pow43(x, fc: FloatCtx):
    """x^(4/3) through the real cube root (always >= 0)."""
    c = real_cbrt(x, fc)
    return (c * c) * (c * c)


# ---------------------------------------------------------------------------
# exact linear algebra (small dense systems over QQ)
# ---------------------------------------------------------------------------


class RatMatrix:
    """Dense matrix of exact rationals.  Intended for small proof matrices
    (Jacobians, preconditioners), not general linear algebra."""

    __slots__ = ("rows", "cols", "a")

    def __init__(self, entries):
        self.a = [[mpq(x) for x in row] for row in entries]
        self.rows = len(self.a)
        self.cols = len(self.a[0]) if self.a else 0
        if any(len(r) != self.cols for r in self.a):
            raise ValueError("ragged matrix")

    @staticmethod
    def identity(n: int) -> "RatMatrix":
        return RatMatrix([[ONE if i == j else ZERO for j in range(n)] for i in range(n)])

    def __getitem__(self, ij):
        i, j = ij
        return self.a[i][j]

    def __eq__(self, other):
        return isinstance(other, RatMatrix) and self.a == other.a

    def __repr__(self):
        return f"RatMatrix({self.a!r})"

    def mul(self, other: "RatMatrix") -> "RatMatrix":
        if self.cols != other.rows:
            raise ValueError("dimension mismatch")
        out = []
        for i in range(self.rows):
            row = []
            for j in range(other.cols):
                s = ZERO
                for k in range(self.cols):
                    s += self.a[i][k] * other.a[k][j]
                row.append(s)
            out.append(row)
        return RatMatrix(out)

    def mul_vec(self, v):
        if self.cols != len(v):
            raise ValueError("dimension mismatch")
        return [sum((self.a[i][k] * v[k] for k in range(self.cols)), ZERO)
                for i in range(self.rows)]


def _eliminate(aug, n, width):
    """Fraction-free (Bareiss) forward elimination on an augmented n x width
    grid; returns the echelon grid.  Raises SingularMatrix on a zero pivot
    column.  Fraction-free division keeps intermediate entries small on the
    hundred-digit inputs produced by the preconditioning step."""
    a = [row[:] for row in aug]
    prev = mpz(1)
    for k in range(n):
        # pivot: first row with nonzero entry in column k (exact test)
        piv = next((r for r in range(k, n) if a[r][k] != 0), None)
        if piv is None:
            raise SingularMatrix(f"zero pivot column {k}")
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
        for i in range(k + 1, n):
            for j in range(k + 1, width):
                a[i][j] = (a[k][k] * a[i][j] - a[i][k] * a[k][j]) / prev
            a[i][k] = ZERO
        prev = a[k][k]
    return a


def solve_exact(A: RatMatrix, b):
    """Unique exact solution of A x = b (A square nonsingular)."""
    n = A.rows
    if A.cols != n:
        raise ValueError("matrix must be square")
    if len(b) != n:
        raise ValueError("dimension mismatch")
    aug = [A.a[i][:] + [mpq(b[i])] for i in range(n)]
    a = _eliminate(aug, n, n + 1)
    x = [ZERO] * n
    for i in range(n - 1, -1, -1):
        s = a[i][n] - sum((a[i][j] * x[j] for j in range(i + 1, n)), ZERO)
        x[i] = s / a[i][i]
    return x


def invert_exact(A: RatMatrix) -> RatMatrix:
    """Exact inverse; SingularMatrix when det = 0."""
    n = A.rows
    if A.cols != n:
        raise ValueError("matrix must be square")
    aug = [A.a[i][:] + RatMatrix.identity(n).a[i][:] for i in range(n)]
    a = _eliminate(aug, n, 2 * n)
    inv_cols = []
    for c in range(n):
        x = [ZERO] * n
        for i in range(n - 1, -1, -1):
            s = a[i][n + c] - sum((a[i][j] * x[j] for j in range(i + 1, n)), ZERO)
            x[i] = s / a[i][i]
        inv_cols.append(x)
    return RatMatrix([[inv_cols[j][i] for j in range(n)] for i in range(n)])


def det_exact(A: RatMatrix):
    """Exact determinant by fraction-free elimination (0 when singular)."""
    n = A.rows
    if A.cols != n:
        raise ValueError("matrix must be square")
    a = [row[:] for row in A.a]
    prev = mpq(1)
    sign = 1
    for k in range(n):
        piv = next((r for r in range(k, n) if a[r][k] != 0), None)
        if piv is None:
            return ZERO
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[k][k] * a[i][j] - a[i][k] * a[k][j]) / prev
            a[i][k] = ZERO
        prev = a[k][k]
    return sign * a[n - 1][n - 1]
