"""Linear algebra over a prime field F_p and Smith normal form over the integers."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

DEFAULT_PRIME = 32003


class InconsistentSystem(ValueError):
    pass


def as_fp(a, p: int) -> np.ndarray:
    return np.asarray(a, dtype=np.int64) % p


def rref(a: np.ndarray, p: int = DEFAULT_PRIME) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form mod p and the pivot columns."""
    m = as_fp(a, p).copy()
    rows, cols = m.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(m[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            m[[r, piv]] = m[[piv, r]]
        inv = pow(int(m[r, c]), p - 2, p)
        m[r] = (m[r] * inv) % p
        others = np.nonzero(m[:, c])[0]
        others = others[others != r]
        if others.size:
            m[others] = (m[others] - np.outer(m[others, c], m[r])) % p
        pivots.append(c)
        r += 1
    return m, pivots


def rank(a: np.ndarray, p: int = DEFAULT_PRIME) -> int:
    a = np.asarray(a)
    if a.size == 0:
        return 0
    return len(rref(a, p)[1])


def nullspace(a: np.ndarray, p: int = DEFAULT_PRIME) -> np.ndarray:
    """Columns spanning {x : a x = 0}, one per free column, in column order."""
    a = np.asarray(a, dtype=np.int64)
    n = a.shape[1]
    if a.shape[0] == 0:
        return np.eye(n, dtype=np.int64)
    r, piv = rref(a, p)
    free = [c for c in range(n) if c not in set(piv)]
    basis = np.zeros((n, len(free)), dtype=np.int64)
    for k, f in enumerate(free):
        basis[f, k] = 1
        for i, pc in enumerate(piv):
            basis[pc, k] = (-r[i, f]) % p
    return basis


def solve(a: np.ndarray, b: np.ndarray, p: int = DEFAULT_PRIME) -> np.ndarray:
    """A particular solution x of a x = b (free variables zero)."""
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    if b.ndim == 1:
        return solve(a, b[:, None], p)[:, 0]
    m, n = a.shape
    k = b.shape[1]
    if m == 0:
        return np.zeros((n, k), dtype=np.int64)
    aug = np.concatenate([a % p, b % p], axis=1)
    r, piv = rref(aug, p)
    if any(c >= n for c in piv):
        raise InconsistentSystem("no solution mod p")
    x = np.zeros((n, k), dtype=np.int64)
    for i, c in enumerate(piv):
        x[c] = r[i, n:]
    return x


def inverse(a: np.ndarray, p: int = DEFAULT_PRIME) -> np.ndarray:
    a = np.asarray(a, dtype=np.int64)
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValueError("square matrix required")
    if n == 0:
        return a.copy()
    r, piv = rref(np.concatenate([a % p, np.eye(n, dtype=np.int64)], axis=1), p)
    if piv[:n] != list(range(n)):
        raise InconsistentSystem("matrix is singular mod p")
    return r[:, n:]


def matmul(a: np.ndarray, b: np.ndarray, p: int = DEFAULT_PRIME) -> np.ndarray:
    """Product mod p without int64 overflow for p < 2**31."""
    a = np.asarray(a, dtype=np.int64) % p
    b = np.asarray(b, dtype=np.int64) % p
    if a.shape[1] == 0:
        return np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    if a.shape[1] * (p - 1) ** 2 < 2**62:
        return (a @ b) % p
    out = np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    for start in range(0, a.shape[1], 1024):
        out = (out + a[:, start:start + 1024] @ b[start:start + 1024]) % p
    return out


class Echelon:
    """Incrementally reduced spanning set, used for 'independent modulo' tests."""

    def __init__(self, n: int, p: int = DEFAULT_PRIME) -> None:
        self.n = n
        self.p = p
        self.rows: list[tuple[int, np.ndarray]] = []

    def reduce(self, v: np.ndarray) -> np.ndarray:
        v = np.asarray(v, dtype=np.int64) % self.p
        for piv, row in self.rows:
            if v[piv]:
                v = (v - v[piv] * row) % self.p
        return v

    def add(self, v: np.ndarray) -> bool:
        """Add v; return False when it already lies in the span."""
        v = self.reduce(v)
        nz = np.nonzero(v)[0]
        if nz.size == 0:
            return False
        piv = int(nz[0])
        v = (v * pow(int(v[piv]), self.p - 2, self.p)) % self.p
        self.rows.append((piv, v))
        return True

    def __len__(self) -> int:
        return len(self.rows)


# ---------------------------------------------------------------- integers

@dataclass(frozen=True)
class SnfResult:
    """U @ M @ V = S with S diagonal; diagonal holds d_1 | d_2 | ... (nonzero first)."""

    diagonal: tuple[int, ...]
    U: list[list[int]]
    V: list[list[int]]
    S: list[list[int]]

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d != 0)


def _identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def smith_normal_form(matrix) -> SnfResult:
    """Smith normal form with unimodular transforms, exact over Python ints."""
    arr = np.asarray(matrix, dtype=object)
    if arr.ndim != 2:
        arr = arr.reshape(0, 0)
    m, n = arr.shape
    a = [[int(x) for x in row] for row in arr.tolist()]
    U = _identity(m)
    V = _identity(n)

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, k):  # row_dst += k * row_src
        if k:
            a[dst] = [x + k * y for x, y in zip(a[dst], a[src])]
            U[dst] = [x + k * y for x, y in zip(U[dst], U[src])]

    def add_col(dst, src, k):  # col_dst += k * col_src
        if k:
            for row in a:
                row[dst] += k * row[src]
            for row in V:
                row[dst] += k * row[src]

    t = 0
    while t < min(m, n):
        entries = [(abs(a[i][j]), i, j) for i in range(t, m) for j in range(t, n) if a[i][j]]
        if not entries:
            break
        _, i, j = min(entries)
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            changed = False
            for i in range(t + 1, m):
                if a[i][t]:
                    q = a[i][t] // a[t][t]
                    add_row(i, t, -q)
                    if a[i][t]:
                        swap_rows(t, i)
                        changed = True
            for j in range(t + 1, n):
                if a[t][j]:
                    q = a[t][j] // a[t][t]
                    add_col(j, t, -q)
                    if a[t][j]:
                        swap_cols(t, j)
                        changed = True
            if changed:
                continue
            # enforce divisibility of the remaining block
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                        if a[i][j] % a[t][t]), None)
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            U[t] = [-x for x in U[t]]
        t += 1
    diag = tuple(a[i][i] for i in range(min(m, n)))
    return SnfResult(diag, U, V, a)


def invariant_factors(matrix) -> list[int]:
    """Nonzero invariant factors, via unit-pivot sparse elimination then dense SNF."""
    arr = np.asarray(matrix, dtype=np.int64)
    if arr.size == 0:
        return []
    rows: dict[int, dict[int, int]] = {}
    cols: dict[int, set[int]] = {}
    for i, j in zip(*np.nonzero(arr)):
        rows.setdefault(int(i), {})[int(j)] = int(arr[i, j])
        cols.setdefault(int(j), set()).add(int(i))
    units = 0
    while True:
        best = None
        for i, row in rows.items():
            for j, v in row.items():
                if v in (1, -1):
                    cost = (len(row) - 1) * (len(cols[j]) - 1)
                    if best is None or cost < best[0]:
                        best = (cost, i, j)
                        if cost == 0:
                            break
            if best is not None and best[0] == 0:
                break
        if best is None:
            break
        _, pi, pj = best
        prow = rows.pop(pi)
        pv = prow[pj]
        for j in prow:
            cols[j].discard(pi)
        for i in list(cols[pj]):
            row = rows[i]
            k = row[pj] * pv  # pv is a unit, so pv == 1/pv
            for j, v in prow.items():
                nv = row.get(j, 0) - k * v
                if nv:
                    if j not in row:
                        cols[j].add(i)
                    row[j] = nv
                else:
                    row.pop(j, None)
                    cols[j].discard(i)
            if not row:
                rows.pop(i)
        cols.pop(pj, None)
        units += 1
    rest_rows = sorted(i for i, row in rows.items() if row)
    rest_cols = sorted({j for row in rows.values() for j in row})
    factors = [1] * units
    if rest_rows:
        dense = [[rows[i].get(j, 0) for j in rest_cols] for i in rest_rows]
        factors += [d for d in smith_normal_form(dense).diagonal if d]
    return sorted(factors)
