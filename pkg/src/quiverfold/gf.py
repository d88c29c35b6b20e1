"""Finite fields GF(p^n), dense matrices and polynomials over them.

Elements are plain ints: the residue polynomial c_0 + c_1 T + ... + c_{n-1} T^{n-1}
is stored as the base-p number sum c_i p^i, so 0 and 1 are the field's zero
and one and the prime field sits in range(p). Multiplication and addition go
through discrete-log and Zech-log tables, built once per field and cached.

The defining polynomial is the monic irreducible of degree n whose
coefficient vector (c_{n-1}, ..., c_0) is lexicographically smallest, found
by trial division; GF(4) is therefore built on T^2 + T + 1.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Iterator, Sequence

import numpy as np

from .config import Config, resolve
from .errors import DivisionByZero, SizeCapExceeded


# -- prime powers --

def is_prime(n: int) -> bool:
    if n < 2:
        return False
    f = 2
    while f * f <= n:
        if n % f == 0:
            return False
        f += 1
    return True


def prime_power(q: int) -> tuple[int, int]:
    """Return (p, k) with q = p^k, or raise ValueError."""
    if q < 2:
        raise ValueError(f"{q} is not a prime power")
    p = 2
    while q % p:
        p += 1
    k, r = 0, q
    while r % p == 0:
        r //= p
        k += 1
    if r != 1:
        raise ValueError(f"{q} is not a prime power")
    return p, k


def is_prime_power(q: int) -> bool:
    try:
        prime_power(q)
    except ValueError:
        return False
    return True


def prime_powers(start: int = 2) -> Iterator[int]:
    q = max(start, 2)
    while True:
        if is_prime_power(q):
            yield q
        q += 1


def prime_factors(n: int) -> list[int]:
    out, f = [], 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


# -- polynomials over the prime field (only used to choose the modulus) --

def _pf_rem(a: list[int], b: list[int], p: int) -> list[int]:
    a = a[:]
    inv_lead = pow(b[-1], p - 2, p)
    db = len(b) - 1
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i] * inv_lead % p
        if c:
            for j in range(db + 1):
                a[i - db + j] = (a[i - db + j] - c * b[j]) % p
    while a and a[-1] == 0:
        a.pop()
    return a


def _pf_is_irreducible(f: list[int], p: int) -> bool:
    n = len(f) - 1
    for d in range(1, n // 2 + 1):
        for low in product(range(p), repeat=d):
            if not _pf_rem(f, list(low) + [1], p):
                return False
    return True


@lru_cache(maxsize=None)
def smallest_irreducible(p: int, n: int) -> tuple[int, ...]:
    """Coefficients (low to high, monic) of the lexicographically smallest
    irreducible of degree n over GF(p)."""
    for code in range(p ** n):
        low = [(code // p ** i) % p for i in range(n)]
        f = low + [1]
        if n > 1 and low[0] == 0:
            continue
        if _pf_is_irreducible(f, p):
            return tuple(f)
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


# -- fields --

class FieldCtx:
    """GF(p^n) with table-driven arithmetic."""

    def __init__(self, p: int, n: int):
        if not is_prime(p) or n < 1:
            raise ValueError(f"GF({p}^{n}) is not a field")
        self.p = p
        self.n = n
        self.order = p ** n
        self.modulus = smallest_irreducible(p, n)
        self._build()

    def __repr__(self):
        return f"GF({self.p}^{self.n})"

    def __reduce__(self):
        return (field, (self.p, self.n))

    def _build(self):
        p, n, Q = self.p, self.n, self.order
        weights = p ** np.arange(n, dtype=np.int64)
        D = (np.arange(Q, dtype=np.int64)[:, None] // weights) % p
        low = np.array(self.modulus[:n], dtype=np.int64)
        shifted = np.zeros_like(D)
        shifted[:, 1:] = D[:, :-1]
        mul_t = ((shifted - D[:, n - 1:n] * low) % p) @ weights

        def times(g: int) -> np.ndarray:
            acc = np.zeros_like(D)
            cur = np.arange(Q, dtype=np.int64)
            for c in (g // p ** i % p for i in range(n)):
                if c:
                    acc += c * D[cur]
                cur = mul_t[cur]
            return (acc % p) @ weights

        if Q == 2:
            exp = [1]
        else:
            for g in range(2, Q):
                step = times(g).tolist()
                exp, x = [1], g
                while x != 1:
                    exp.append(x)
                    x = step[x]
                if len(exp) == Q - 1:
                    break
        self.generator = exp[1] if Q > 2 else 1
        m = Q - 1
        log = [-1] * Q
        for k, x in enumerate(exp):
            log[x] = k
        self._exp = exp + exp
        self._log = log
        one_plus = ((D[np.array(exp, dtype=np.int64)] + D[1]) % p) @ weights
        lg = np.array(log, dtype=np.int64)
        self._zech = lg[one_plus].tolist()
        self._m = m
        self.np_exp = np.array(exp + exp, dtype=np.int64)
        self.np_log = lg
        self.np_zech = np.array(self._zech, dtype=np.int64)
        self._neg_shift = m // 2 if p != 2 else 0

    # scalar arithmetic
    def add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        if a == 0:
            return b
        if b == 0:
            return a
        la = self._log[a]
        z = self._zech[(self._log[b] - la) % self._m]
        if z < 0:
            return 0
        return self._exp[la + z]

    def neg(self, a: int) -> int:
        if a == 0 or self.p == 2:
            return a
        return self._exp[self._log[a] + self._neg_shift]

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self._exp[self._log[a] + self._log[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero("inverse of zero")
        return self._exp[(self._m - self._log[a]) % self._m]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, k: int) -> int:
        if a == 0:
            if k < 0:
                raise DivisionByZero("zero to a negative power")
            return 1 if k == 0 else 0
        return self._exp[self._log[a] * k % self._m]

    def frobenius(self, x: int, s: int = 1, q: int | None = None) -> int:
        """x^(q^s); q defaults to p. Negative s inverts the automorphism."""
        if x == 0:
            return 0
        q = self.p if q is None else q
        e = pow(q, s, self._m) if s >= 0 else pow(pow(q, -s, self._m), -1, self._m)
        return self._exp[self._log[x] * e % self._m]

    def from_int(self, c: int) -> int:
        """Image of an integer in the prime field."""
        return c % self.p

    def elements(self) -> range:
        return range(self.order)

    def digits(self, x: int) -> tuple[int, ...]:
        return tuple(x // self.p ** i % self.p for i in range(self.n))

    def from_digits(self, ds: Sequence[int]) -> int:
        if len(ds) != self.n:
            raise ValueError(f"expected {self.n} coefficients, got {len(ds)}")
        return sum((c % self.p) * self.p ** i for i, c in enumerate(ds))

    def element_order(self, x: int) -> int:
        from math import gcd
        if x == 0:
            raise DivisionByZero("zero has no multiplicative order")
        return self._m // gcd(self._m, self._log[x])

    # subfields, as sets of fixed points of a Frobenius power
    def subfield_generator(self, m: int) -> int:
        """A generator of the multiplicative group of GF(p^m) inside self."""
        if self.n % m:
            raise ValueError(f"GF({self.p}^{m}) is not a subfield of {self}")
        return self._exp[self._m // (self.p ** m - 1)] if self.p ** m > 2 else 1

    def subfield(self, m: int) -> list[int]:
        g = self.subfield_generator(m)
        size = self.p ** m - 1
        return sorted([0] + [self.pow(g, j) for j in range(size)])

    def in_subfield(self, x: int, m: int) -> bool:
        return self.frobenius(x, m) == x

    # vectorized arithmetic on int64 arrays
    def np_add(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        a, b = np.broadcast_arrays(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64))
        if self.p == 2:
            return a ^ b
        la, lb = self.np_log[a], self.np_log[b]
        z = self.np_zech[(lb - la) % self._m]
        out = np.where(z < 0, 0, self.np_exp[np.maximum(la, 0) + np.maximum(z, 0)])
        out = np.where(a == 0, b, np.where(b == 0, a, out))
        return out

    def np_mul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        a, b = np.broadcast_arrays(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64))
        out = self.np_exp[np.maximum(self.np_log[a], 0) + np.maximum(self.np_log[b], 0)]
        return np.where((a == 0) | (b == 0), 0, out)


@lru_cache(maxsize=None)
def field(p: int, n: int = 1) -> FieldCtx:
    """Cached field constructor."""
    return FieldCtx(p, n)


def field_of_order(Q: int) -> FieldCtx:
    p, k = prime_power(Q)
    return field(p, k)


def extension(q: int, N: int) -> FieldCtx:
    """GF(q^N) as a field over its prime."""
    p, k = prime_power(q)
    return field(p, k * N)


def embedding(small: FieldCtx, big: FieldCtx) -> list[int]:
    """Table of a field embedding small -> big (indexed by small's codes)."""
    if small.p != big.p or big.n % small.n:
        raise ValueError(f"{small} does not embed in {big}")
    for theta in big.subfield(small.n):
        acc = 0
        for c in reversed(small.modulus):
            acc = big.add(big.mul(acc, theta), c)
        if acc == 0:
            break
    else:  # pragma: no cover
        raise AssertionError("defining polynomial has no root")
    powers = [big.pow(theta, i) for i in range(small.n)]
    table = []
    for x in range(small.order):
        acc = 0
        for c, t in zip(small.digits(x), powers):
            if c:
                acc = big.add(acc, big.mul(c, t))
        table.append(acc)
    return table


# -- matrices --

@dataclass(frozen=True)
class Matrix:
    """Dense row-major matrix of field codes."""

    rows: int
    cols: int
    data: tuple[int, ...]

    def __post_init__(self):
        if len(self.data) != self.rows * self.cols:
            raise ValueError("matrix data does not match its shape")

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Matrix":
        return cls(rows, cols, (0,) * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls(n, n, tuple(int(i == j) for i in range(n) for j in range(n)))

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> "Matrix":
        rows = [tuple(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        if any(len(r) != cols for r in rows):
            raise ValueError("ragged matrix rows")
        return cls(len(rows), cols, tuple(x for r in rows for x in r))

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.data[i * self.cols + j]

    def row(self, i: int) -> tuple[int, ...]:
        return self.data[i * self.cols:(i + 1) * self.cols]

    def tolist(self) -> list[list[int]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def transpose(self) -> "Matrix":
        return Matrix(self.cols, self.rows,
                      tuple(self.data[i * self.cols + j] for j in range(self.cols) for i in range(self.rows)))

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)


def matmul(F: FieldCtx, A: Matrix, B: Matrix) -> Matrix:
    if A.cols != B.rows:
        raise ValueError(f"shape mismatch {A.shape} x {B.shape}")
    add, mul = F.add, F.mul
    out = []
    for i in range(A.rows):
        arow = A.row(i)
        for j in range(B.cols):
            acc = 0
            for k, a in enumerate(arow):
                if a:
                    b = B.data[k * B.cols + j]
                    if b:
                        acc = add(acc, mul(a, b))
            out.append(acc)
    return Matrix(A.rows, B.cols, tuple(out))


def mat_add(F: FieldCtx, A: Matrix, B: Matrix) -> Matrix:
    if A.shape != B.shape:
        raise ValueError("shape mismatch")
    return Matrix(A.rows, A.cols, tuple(F.add(a, b) for a, b in zip(A.data, B.data)))


def mat_sub(F: FieldCtx, A: Matrix, B: Matrix) -> Matrix:
    if A.shape != B.shape:
        raise ValueError("shape mismatch")
    return Matrix(A.rows, A.cols, tuple(F.sub(a, b) for a, b in zip(A.data, B.data)))


def mat_scale(F: FieldCtx, c: int, A: Matrix) -> Matrix:
    return Matrix(A.rows, A.cols, tuple(F.mul(c, a) for a in A.data))


def mat_frobenius(F: FieldCtx, A: Matrix, s: int = 1, q: int | None = None) -> Matrix:
    return Matrix(A.rows, A.cols, tuple(F.frobenius(a, s, q) for a in A.data))


def block_diag(blocks: Sequence[Matrix]) -> Matrix:
    rows = sum(b.rows for b in blocks)
    cols = sum(b.cols for b in blocks)
    data = [0] * (rows * cols)
    r0 = c0 = 0
    for b in blocks:
        for i in range(b.rows):
            for j in range(b.cols):
                data[(r0 + i) * cols + c0 + j] = b.data[i * b.cols + j]
        r0 += b.rows
        c0 += b.cols
    return Matrix(rows, cols, tuple(data))


def _rref(F: FieldCtx, rows: list[list[int]], ncols: int) -> list[int]:
    """In-place reduced row echelon form; returns pivot columns."""
    add, mul, inv, neg = F.add, F.mul, F.inv, F.neg
    pivots: list[int] = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        pr = rows[r]
        iv = inv(pr[c])
        if iv != 1:
            rows[r] = pr = [mul(iv, x) if x else 0 for x in pr]
        for i in range(nrows):
            if i != r:
                f = rows[i][c]
                if f:
                    nf = neg(f)
                    row = rows[i]
                    rows[i] = [add(x, mul(nf, y)) if y else x for x, y in zip(row, pr)]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return pivots


def rref(F: FieldCtx, A: Matrix) -> tuple[Matrix, list[int]]:
    rows = A.tolist()
    piv = _rref(F, rows, A.cols)
    return Matrix.from_rows(rows, A.cols), piv


def rank(F: FieldCtx, A: Matrix) -> int:
    return len(_rref(F, A.tolist(), A.cols))


def nullspace(F: FieldCtx, A: Matrix) -> list[tuple[int, ...]]:
    """Basis of {v : A v = 0}, one vector per free column."""
    rows = A.tolist()
    piv = _rref(F, rows, A.cols)
    pivset = set(piv)
    basis = []
    for free in range(A.cols):
        if free in pivset:
            continue
        v = [0] * A.cols
        v[free] = 1
        for r, c in enumerate(piv):
            v[c] = F.neg(rows[r][free])
        basis.append(tuple(v))
    return basis


def solve(F: FieldCtx, A: Matrix, b: Sequence[int]) -> tuple[int, ...] | None:
    """One solution of A x = b, or None when the system is inconsistent."""
    if len(b) != A.rows:
        raise ValueError("right-hand side has the wrong length")
    rows = [list(A.row(i)) + [b[i]] for i in range(A.rows)]
    piv = _rref(F, rows, A.cols + 1)
    if piv and piv[-1] == A.cols:
        return None
    x = [0] * A.cols
    for r, c in enumerate(piv):
        x[c] = rows[r][A.cols]
    return tuple(x)


def inverse(F: FieldCtx, A: Matrix) -> Matrix:
    if A.rows != A.cols:
        raise ValueError("only square matrices are invertible")
    n = A.rows
    rows = [list(A.row(i)) + [int(i == j) for j in range(n)] for i in range(n)]
    piv = _rref(F, rows, 2 * n)
    if piv[:n] != list(range(n)):
        raise DivisionByZero("matrix is singular")
    return Matrix.from_rows([r[n:] for r in rows], n)


def is_invertible(F: FieldCtx, A: Matrix) -> bool:
    return A.rows == A.cols and rank(F, A) == A.rows


def matvec(F: FieldCtx, A: Matrix, v: Sequence[int]) -> tuple[int, ...]:
    add, mul = F.add, F.mul
    out = []
    for i in range(A.rows):
        acc = 0
        for a, x in zip(A.row(i), v):
            if a and x:
                acc = add(acc, mul(a, x))
        out.append(acc)
    return tuple(out)


def enumerate_GL(m: int, F: FieldCtx, config: Config | None = None) -> Iterator[Matrix]:
    """Every invertible m x m matrix over F, each exactly once."""
    cfg = resolve(config)
    if F.order ** (m * m) > cfg.max_points:
        raise SizeCapExceeded(f"|{F}|^{m * m} exceeds the enumeration cap", cap=cfg.max_points)
    vectors = list(product(range(F.order), repeat=m))

    def span(rows):
        out = {tuple([0] * m)}
        for r in rows:
            out = {tuple(F.add(a, F.mul(c, b)) for a, b in zip(v, r)) for v in out for c in range(F.order)}
        return out

    def rec(prefix):
        if len(prefix) == m:
            yield Matrix.from_rows(prefix, m)
            return
        s = span(prefix)
        for v in vectors:
            if v not in s:
                yield from rec(prefix + [v])

    yield from rec([])


def gl_order(m: int, Q: int) -> int:
    out = 1
    for k in range(m):
        out *= Q ** m - Q ** k
    return out


# -- vectorized matrix products on batches (used by the orbit oracle) --

def np_left_mul(F: FieldCtx, A: Matrix, X: np.ndarray) -> np.ndarray:
    """A @ X[t] for every t; X has shape (P, A.cols, c)."""
    P, _, c = X.shape
    out = np.zeros((P, A.rows, c), dtype=np.int64)
    for i in range(A.rows):
        for k in range(A.cols):
            a = A[i, k]
            if a:
                out[:, i, :] = F.np_add(out[:, i, :], F.np_mul(a, X[:, k, :]))
    return out


def np_right_mul(F: FieldCtx, X: np.ndarray, B: Matrix) -> np.ndarray:
    """X[t] @ B for every t; X has shape (P, r, B.rows)."""
    P, r, _ = X.shape
    out = np.zeros((P, r, B.cols), dtype=np.int64)
    for j in range(B.cols):
        for k in range(B.rows):
            b = B[k, j]
            if b:
                out[:, :, j] = F.np_add(out[:, :, j], F.np_mul(X[:, :, k], b))
    return out


# -- polynomials over a field (lists of codes, low degree first) --

Poly = tuple[int, ...]


def poly_trim(a: Sequence[int]) -> Poly:
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return tuple(a)


def poly_add(F: FieldCtx, a: Poly, b: Poly) -> Poly:
    n = max(len(a), len(b))
    a = tuple(a) + (0,) * (n - len(a))
    b = tuple(b) + (0,) * (n - len(b))
    return poly_trim(F.add(x, y) for x, y in zip(a, b))


def poly_mul(F: FieldCtx, a: Poly, b: Poly) -> Poly:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] = F.add(out[i + j], F.mul(x, y))
    return poly_trim(out)


def poly_divmod(F: FieldCtx, a: Poly, b: Poly) -> tuple[Poly, Poly]:
    b = poly_trim(b)
    if not b:
        raise DivisionByZero("polynomial division by zero")
    a = list(poly_trim(a))
    db = len(b) - 1
    if len(a) <= db:
        return (), tuple(a)
    quo = [0] * (len(a) - db)
    il = F.inv(b[-1])
    for i in range(len(a) - 1, db - 1, -1):
        c = F.mul(a[i], il)
        if c:
            quo[i - db] = c
            for j in range(db + 1):
                a[i - db + j] = F.sub(a[i - db + j], F.mul(c, b[j]))
    return poly_trim(quo), poly_trim(a)


def poly_monic(F: FieldCtx, a: Poly) -> Poly:
    a = poly_trim(a)
    if not a:
        return a
    il = F.inv(a[-1])
    return tuple(F.mul(il, x) for x in a)


def poly_gcd(F: FieldCtx, a: Poly, b: Poly) -> Poly:
    a, b = poly_trim(a), poly_trim(b)
    while b:
        a, b = b, poly_divmod(F, a, b)[1]
    return poly_monic(F, a)


def monic_polys(d: int, coeffs: Sequence[int]) -> Iterator[Poly]:
    for low in product(coeffs, repeat=d):
        yield tuple(low) + (1,)


def is_irreducible(F: FieldCtx, f: Poly, coeffs: Sequence[int] | None = None) -> bool:
    """Trial division by every monic of degree <= deg/2 with entries in coeffs.

    coeffs must be a subfield containing the coefficients of f; irreducibility
    is then over that subfield."""
    coeffs = list(F.elements()) if coeffs is None else list(coeffs)
    d = len(f) - 1
    if d < 1:
        return False
    for k in range(1, d // 2 + 1):
        for g in monic_polys(k, coeffs):
            if not poly_divmod(F, f, g)[1]:
                return False
    return True


def irreducible_polys(F: FieldCtx, d: int, coeffs: Sequence[int] | None = None,
                      include_t: bool = False) -> list[Poly]:
    """Monic irreducibles of degree d over the subfield given by coeffs."""
    coeffs = list(F.elements()) if coeffs is None else sorted(coeffs)
    out = []
    for f in monic_polys(d, coeffs):
        if not include_t and f[0] == 0:
            continue
        if is_irreducible(F, f, coeffs):
            out.append(f)
    return out
