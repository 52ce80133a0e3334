"""Independent reference computations used to derive frozen test values.

Nothing here imports the package: ranks come from sympy over GF(p), and the
indecomposable counts come from brute-force orbit enumeration over F_2.
"""
from __future__ import annotations

import itertools

import numpy as np
from sympy import GF
from sympy.polys.matrices import DomainMatrix


def gf_rank(a: np.ndarray, p: int) -> int:
    a = np.asarray(a, dtype=np.int64) % p
    if a.size == 0:
        return 0
    K = GF(p)
    dm = DomainMatrix([[K(int(x)) for x in row] for row in a], a.shape, K)
    return dm.rank()


def gf_nullity(a: np.ndarray, p: int) -> int:
    return np.asarray(a).shape[1] - gf_rank(a, p)


# ------------------------------------------------------------ brute force

def hom_dim_oracle(m, n) -> int:
    """dim {φ : φ N_M = N_N φ} for one-loop modules, from the Kronecker-product system."""
    a, b = m.mats[0], n.mats[0]
    p = m.p
    big = (np.kron(a.T, np.eye(b.shape[0], dtype=np.int64))
           - np.kron(np.eye(a.shape[0], dtype=np.int64), b)) % p
    return gf_nullity(big, p)


def _all_mats(r: int, c: int):
    for bits in itertools.product((0, 1), repeat=r * c):
        yield np.array(bits, dtype=np.int64).reshape(r, c)


def _gl2(n: int) -> list[np.ndarray]:
    out = []
    for m in _all_mats(n, n):
        if _rank2(m) == n:
            out.append(m)
    return out


def _rank2(m: np.ndarray) -> int:
    """Rank over F_2 by elimination on row bitmasks."""
    rows = [int("".join(str(int(x) & 1) for x in r), 2) for r in m] if m.size else []
    rank = 0
    while rows:
        piv = max(rows)
        rows.remove(piv)
        if piv == 0:
            break
        rank += 1
        top = piv.bit_length() - 1
        rows = [r ^ piv if r >> top & 1 else r for r in rows]
    return rank


def _inv2(m: np.ndarray) -> np.ndarray:
    n = m.shape[0]
    for c in _all_mats(n, n):
        if np.array_equal(m @ c % 2, np.eye(n, dtype=np.int64)):
            return c
    raise ValueError("singular")


def _key(*ms) -> tuple:
    return tuple(tuple(m.ravel().tolist()) + (m.shape,) for m in ms)


def _is_local(endos: list[tuple[np.ndarray, ...]]) -> bool:
    """A finite-dimensional algebra is local iff each element is a unit or nilpotent."""
    for e in endos:
        blocks = [b for b in e if b.size]
        n = sum(b.shape[0] for b in blocks)
        big = np.zeros((n, n), dtype=np.int64)
        o = 0
        for b in blocks:
            big[o:o + b.shape[0], o:o + b.shape[0]] = b
            o += b.shape[0]
        unit = _rank2(big) == n
        nil = not (np.linalg.matrix_power(big, n) % 2).any() if n else True
        if n and not (unit or nil):
            return False
    return True


def indecomposables_truncated_f2(n: int, max_dim: int) -> list[int]:
    """Dimensions of indecomposable F_2[x]/x^n-modules up to ``max_dim`` (one per iso class)."""
    found = []
    for d in range(1, max_dim + 1):
        gl = _gl2(d)
        invs = [_inv2(g) for g in gl]
        seen = set()
        for nmat in _all_mats(d, d):
            if (np.linalg.matrix_power(nmat, n) % 2).any():
                continue
            k = _key(nmat)
            if k in seen:
                continue
            orbit = {_key(g @ nmat @ gi % 2) for g, gi in zip(gl, invs)}
            seen |= orbit
            endos = [(a,) for a in _all_mats(d, d) if np.array_equal(a @ nmat % 2, nmat @ a % 2)]
            if _is_local(endos):
                found.append(d)
    return found


def _sqzero(d: int) -> list[np.ndarray]:
    return [m for m in _all_mats(d, d) if not (m @ m % 2).any()]


def indecomposable_maps_dual_numbers_f2(max_side: int = 2) -> list[tuple[int, int]]:
    """Iso classes of indecomposable maps X -> Y of F_2[x]/x^2-modules, dim X, dim Y <= max_side.

    An object is (N_X, N_Y, f) with N^2 = 0 and f N_X = N_Y f; isomorphisms are
    pairs (g, h) acting by conjugation and f -> h f g^-1.
    """
    found = []
    for dx in range(max_side + 1):
        for dy in range(max_side + 1):
            if dx + dy == 0:
                continue
            glx, gly = _gl2(dx), _gl2(dy)
            ix, iy = [_inv2(g) for g in glx], [_inv2(h) for h in gly]
            seen = set()
            for nx in _sqzero(dx):
                for ny in _sqzero(dy):
                    for f in _all_mats(dy, dx):
                        if not np.array_equal(f @ nx % 2, ny @ f % 2):
                            continue
                        k = _key(nx, ny, f)
                        if k in seen:
                            continue
                        for g, gi in zip(glx, ix):
                            for h, hi in zip(gly, iy):
                                seen.add(_key(g @ nx @ gi % 2, h @ ny @ hi % 2, h @ f @ gi % 2))
                        endos = [(a, b) for a in _all_mats(dx, dx) for b in _all_mats(dy, dy)
                                 if np.array_equal(a @ nx % 2, nx @ a % 2)
                                 and np.array_equal(b @ ny % 2, ny @ b % 2)
                                 and np.array_equal(b @ f % 2, f @ a % 2)]
                        if _is_local(endos):
                            found.append((dx, dy))
    return found
