"""Exact dense linear algebra over a prime field.

Two layers live here.  ``Scalar`` and ``Mat`` are small immutable value
types for the public API.  Everything else in the package works on plain
``numpy.int64`` arrays reduced mod p, through the underscore-free helpers
``rref_arr``, ``nullspace``, ``solve_arr`` and friends; those are the hot
path and avoid per-entry Python objects.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Sequence

import numpy as np
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_factor, gf_irreducible_p

SUPPORTED_PRIMES = (2, 3, 5, 7)


class FieldError(ValueError):
    pass


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


@lru_cache(maxsize=None)
def inverse_table(p: int) -> np.ndarray:
    inv = np.zeros(p, dtype=np.int64)
    for a in range(1, p):
        inv[a] = pow(a, p - 2, p)
    return inv


# ---------------------------------------------------------------- value types


@dataclass(frozen=True)
class Scalar:
    value: int
    p: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise FieldError(f"modulus {self.p} is not prime")
        object.__setattr__(self, "value", self.value % self.p)

    def _coerce(self, other) -> int:
        if isinstance(other, Scalar):
            if other.p != self.p:
                raise FieldError("moduli differ")
            return other.value
        return int(other) % self.p

    def __add__(self, other):
        return Scalar(self.value + self._coerce(other), self.p)

    __radd__ = __add__

    def __sub__(self, other):
        return Scalar(self.value - self._coerce(other), self.p)

    def __rsub__(self, other):
        return Scalar(self._coerce(other) - self.value, self.p)

    def __mul__(self, other):
        return Scalar(self.value * self._coerce(other), self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return Scalar(-self.value, self.p)

    def inverse(self) -> "Scalar":
        if self.value == 0:
            raise ZeroDivisionError("zero has no inverse")
        return Scalar(pow(self.value, self.p - 2, self.p), self.p)

    def __truediv__(self, other):
        return self * Scalar(self._coerce(other), self.p).inverse()

    def __int__(self):
        return self.value


@dataclass(frozen=True)
class Mat:
    p: int
    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        if not is_prime(self.p):
            raise FieldError(f"modulus {self.p} is not prime")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError("entry count does not match shape")
        object.__setattr__(self, "entries", tuple(int(e) % self.p for e in self.entries))

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], p: int, cols: Optional[int] = None) -> "Mat":
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else (cols or 0)
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged rows")
        return cls(p, len(rows), ncols, tuple(int(x) for r in rows for x in r))

    @classmethod
    def from_array(cls, arr: np.ndarray, p: int) -> "Mat":
        arr = np.asarray(arr, dtype=np.int64) % p
        r, c = arr.shape
        return cls(p, r, c, tuple(int(x) for x in arr.ravel()))

    @classmethod
    def identity(cls, n: int, p: int) -> "Mat":
        return cls.from_array(np.eye(n, dtype=np.int64), p)

    @classmethod
    def zero(cls, r: int, c: int, p: int) -> "Mat":
        return cls(p, r, c, (0,) * (r * c))

    def array(self) -> np.ndarray:
        return np.array(self.entries, dtype=np.int64).reshape(self.rows, self.cols)

    def __getitem__(self, ij) -> Scalar:
        i, j = ij
        return Scalar(self.entries[i * self.cols + j], self.p)

    def tolist(self) -> list:
        return self.array().tolist()

    def __matmul__(self, other: "Mat") -> "Mat":
        if self.p != other.p or self.cols != other.rows:
            raise ValueError("incompatible matrices")
        return Mat.from_array(matmul(self.array(), other.array(), self.p), self.p)

    def __add__(self, other: "Mat") -> "Mat":
        if (self.p, self.rows, self.cols) != (other.p, other.rows, other.cols):
            raise ValueError("incompatible matrices")
        return Mat.from_array(self.array() + other.array(), self.p)

    def transpose(self) -> "Mat":
        return Mat.from_array(self.array().T, self.p)


# ------------------------------------------------------------- public API ops


def rref(m: Mat) -> tuple[Mat, list[int], int]:
    red, piv = rref_arr(m.array(), m.p)
    return Mat.from_array(red, m.p), piv, len(piv)


def solve(a: Mat, b: Mat) -> Optional[Mat]:
    if a.rows != b.rows or a.p != b.p:
        raise ValueError("dimension mismatch")
    x = solve_arr(a.array(), b.array(), a.p)
    return None if x is None else Mat.from_array(x, a.p)


def kernel_basis(a: Mat) -> Mat:
    ns = nullspace(a.array(), a.p)
    return Mat.from_array(ns, a.p) if ns.shape[0] else Mat.zero(0, a.cols, a.p)


# ------------------------------------------------------------ array kernels


def zeros(r: int, c: int) -> np.ndarray:
    return np.zeros((r, c), dtype=np.int64)


def eye(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.int64)


def matmul(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    if a.shape[1] == 0:
        return zeros(a.shape[0], b.shape[1])
    # entries < 7, so int64 products never overflow at desk scale
    return (a @ b) % p


def rref_arr(a: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form of a copy of ``a``; returns (R, pivots)."""
    m = np.array(a, dtype=np.int64) % p
    rows, cols = m.shape
    inv = inverse_table(p)
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(m[r:, c])[0]
        if nz.size == 0:
            continue
        k = r + nz[0]
        if k != r:
            m[[r, k]] = m[[k, r]]
        m[r] = (m[r] * inv[m[r, c]]) % p
        col = m[:, c].copy()
        col[r] = 0
        hit = np.nonzero(col)[0]
        if hit.size:
            m[hit] = (m[hit] - np.outer(col[hit], m[r])) % p
        pivots.append(c)
        r += 1
    return m, pivots


def rank(a: np.ndarray, p: int) -> int:
    if a.size == 0:
        return 0
    return len(rref_arr(a, p)[1])


def row_basis(a: np.ndarray, p: int) -> np.ndarray:
    """Rows of the rref spanning the row space of ``a``."""
    red, piv = rref_arr(a, p)
    return red[: len(piv)]


def nullspace(a: np.ndarray, p: int) -> np.ndarray:
    """Basis (as rows) of {x : a x = 0}."""
    rows, cols = a.shape
    red, piv = rref_arr(a, p)
    free = [c for c in range(cols) if c not in set(piv)]
    out = zeros(len(free), cols)
    for i, f in enumerate(free):
        out[i, f] = 1
        for r, pc in enumerate(piv):
            out[i, pc] = (-red[r, f]) % p
    return out


def solve_arr(a: np.ndarray, b: np.ndarray, p: int) -> Optional[np.ndarray]:
    """Some x with a x = b (b may have several columns), or None."""
    rows, cols = a.shape
    if rows == 0:
        b = np.asarray(b)
        return zeros(cols, b.shape[1] if b.ndim == 2 else 1)
    b = np.asarray(b, dtype=np.int64).reshape(rows, -1)
    aug = np.concatenate([a % p, b % p], axis=1)
    red, piv = rref_arr(aug, p)
    if any(pc >= cols for pc in piv):
        return None
    x = zeros(cols, b.shape[1])
    for r, pc in enumerate(piv):
        x[pc] = red[r, cols:]
    return x


def inverse(a: np.ndarray, p: int) -> Optional[np.ndarray]:
    n = a.shape[0]
    if a.shape != (n, n):
        return None
    red, piv = rref_arr(np.concatenate([a % p, eye(n)], axis=1), p)
    if piv[:n] != list(range(n)) or len(piv) < n or any(pc >= n for pc in piv[:n]):
        return None
    return red[:, n:]


def is_invertible(a: np.ndarray, p: int) -> bool:
    return a.shape[0] == a.shape[1] and rank(a, p) == a.shape[0]


def complement_basis(sub: np.ndarray, n: int, p: int) -> np.ndarray:
    """Standard basis vectors (as rows) completing the row space of ``sub`` to F_p^n."""
    if sub.shape[0] == 0:
        return eye(n)
    piv = set(rref_arr(sub, p)[1])
    free = [c for c in range(n) if c not in piv]
    out = zeros(len(free), n)
    for i, c in enumerate(free):
        out[i, c] = 1
    return out


def intersect_rows(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """Row basis of rowspace(a) ∩ rowspace(b)."""
    if a.shape[0] == 0 or b.shape[0] == 0:
        return zeros(0, a.shape[1])
    ns = nullspace(np.concatenate([a, b], axis=0).T, p)
    if ns.shape[0] == 0:
        return zeros(0, a.shape[1])
    return row_basis(matmul(ns[:, : a.shape[0]], a, p), p)


def in_rowspace(basis_rref: np.ndarray, pivots: list[int], v: np.ndarray, p: int) -> Optional[np.ndarray]:
    """Coordinates of v in a row space given by its rref, or None."""
    v = np.array(v, dtype=np.int64) % p
    coords = zeros(1, len(pivots))[0]
    for r, pc in enumerate(pivots):
        c = v[pc]
        if c:
            coords[r] = c
            v = (v - c * basis_rref[r]) % p
    return coords if not v.any() else None


# ---------------------------------------------------------------- polynomials
# Polynomials are lists of ints, leading coefficient first (sympy gf layout).


def charpoly(a: np.ndarray, p: int) -> list[int]:
    """Characteristic polynomial via Hessenberg reduction."""
    n = a.shape[0]
    h = np.array(a, dtype=np.int64) % p
    inv = inverse_table(p)
    for j in range(n - 2):
        nz = np.nonzero(h[j + 1 :, j])[0]
        if nz.size == 0:
            continue
        i = j + 1 + nz[0]
        if i != j + 1:
            h[[i, j + 1]] = h[[j + 1, i]]
            h[:, [i, j + 1]] = h[:, [j + 1, i]]
        piv_inv = inv[h[j + 1, j]]
        for k in range(j + 2, n):
            u = (h[k, j] * piv_inv) % p
            if u:
                h[k] = (h[k] - u * h[j + 1]) % p
                h[:, j + 1] = (h[:, j + 1] + u * h[:, k]) % p
    # polys stored low-degree first during the recurrence
    polys: list[list[int]] = [[1]]
    for m in range(1, n + 1):
        prev = polys[m - 1]
        cur = [0] + prev
        for d, c in enumerate(prev):
            cur[d] = (cur[d] - h[m - 1, m - 1] * c) % p
        t = 1
        for i in range(1, m):
            t = (t * h[m - i, m - i - 1]) % p
            coef = (t * h[m - i - 1, m - 1]) % p
            if coef:
                for d, c in enumerate(polys[m - i - 1]):
                    cur[d] = (cur[d] - coef * c) % p
        polys.append(cur)
    return [int(c) for c in reversed(polys[n])]


def factor(poly: list[int], p: int) -> list[tuple[list[int], int]]:
    """Monic irreducible factors with multiplicities."""
    _, facs = gf_factor([ZZ(c) for c in poly], p, ZZ)
    return [([int(c) for c in f], int(e)) for f, e in facs]


def is_irreducible(poly: list[int], p: int) -> bool:
    return bool(gf_irreducible_p([ZZ(c) for c in poly], p, ZZ))


def poly_eval_matrix(poly: list[int], a: np.ndarray, p: int) -> np.ndarray:
    n = a.shape[0]
    out = zeros(n, n)
    for c in poly:
        out = (matmul(out, a, p) + c * eye(n)) % p
    return out


def minpoly(a: np.ndarray, p: int) -> list[int]:
    """Minimal polynomial by linear dependence among powers of ``a``."""
    n = a.shape[0]
    powers = [eye(n).ravel()]
    cur = eye(n)
    for d in range(1, n + 1):
        cur = matmul(cur, a, p)
        stack = np.array(powers, dtype=np.int64).T
        x = solve_arr(stack, cur.ravel(), p)
        if x is not None:
            # a^d = sum x_i a^i
            return [1] + [int((-x[i, 0]) % p) for i in range(d - 1, -1, -1)]
        powers.append(cur.ravel())
    raise AssertionError("minimal polynomial degree exceeds size")


def matrix_power(a: np.ndarray, k: int, p: int) -> np.ndarray:
    out = eye(a.shape[0])
    base = a % p
    while k:
        if k & 1:
            out = matmul(out, base, p)
        base = matmul(base, base, p)
        k >>= 1
    return out
