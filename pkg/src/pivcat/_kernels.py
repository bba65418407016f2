"""Integer hot loops: numba ``@njit`` kernels with pure-numpy fallbacks.

The backend is chosen by the ``PIVCAT_NUMBA`` environment variable
(``0``/``off`` selects numpy) and can be switched at runtime with
:func:`set_backend`.  Both paths return identical results; the test suite
runs each kernel under both backends.
"""

from __future__ import annotations

import itertools
import os

import numpy as np

try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None

_OFF = {"0", "false", "no", "off", "numpy"}
_backend = "numba" if numba is not None and os.environ.get("PIVCAT_NUMBA", "1").lower() not in _OFF else "numpy"


def get_backend() -> str:
    return _backend


def set_backend(name: str) -> str:
    """Select ``"numba"`` or ``"numpy"``; returns the previous backend."""
    global _backend
    if name not in ("numba", "numpy"):
        raise ValueError(f"unknown backend {name!r}")
    if name == "numba" and numba is None:
        raise RuntimeError("numba is not installed")
    prev, _backend = _backend, name
    return prev


def _jit(fn):
    if numba is None:
        return None
    return numba.njit(cache=True)(fn)


# --- group table associativity -------------------------------------------

def _group_assoc_loop(table):
    n = table.shape[0]
    for a in range(n):
        for b in range(n):
            ab = table[a, b]
            for c in range(n):
                if table[ab, c] != table[a, table[b, c]]:
                    return a, b, c
    return -1, -1, -1


_group_assoc_jit = _jit(_group_assoc_loop)


def _group_assoc_numpy(table):
    n = table.shape[0]
    a, b, c = np.meshgrid(np.arange(n), np.arange(n), np.arange(n), indexing="ij")
    bad = table[table[a, b], c] != table[a, table[b, c]]
    hits = np.argwhere(bad)
    if len(hits):
        return tuple(int(x) for x in hits[0])
    return -1, -1, -1


def group_associativity_violation(table: np.ndarray):
    """First ``(a, b, c)`` with ``(ab)c != a(bc)``, or None."""
    table = np.ascontiguousarray(table, dtype=np.int64)
    if _backend == "numba":
        res = _group_assoc_jit(table)
    else:
        res = _group_assoc_numpy(table)
    return None if res[0] < 0 else tuple(int(x) for x in res)


# --- fusion ring associativity -------------------------------------------

def _fusion_assoc_loop(N):
    n = N.shape[0]
    for i in range(n):
        for j in range(n):
            for k in range(n):
                for l in range(n):
                    lhs = 0
                    rhs = 0
                    for m in range(n):
                        lhs += N[i, j, m] * N[m, k, l]
                        rhs += N[j, k, m] * N[i, m, l]
                    if lhs != rhs:
                        return i, j, k, l
    return -1, -1, -1, -1


_fusion_assoc_jit = _jit(_fusion_assoc_loop)


def _fusion_assoc_numpy(N):
    lhs = np.einsum("ijm,mkl->ijkl", N, N)
    rhs = np.einsum("jkm,iml->ijkl", N, N)
    hits = np.argwhere(lhs != rhs)
    if len(hits):
        return tuple(int(x) for x in hits[0])
    return -1, -1, -1, -1


def fusion_associativity_violation(N: np.ndarray):
    """First ``(i, j, k, l)`` breaking associativity of ``N[i, j, k]``, or None."""
    N = np.ascontiguousarray(N, dtype=np.int64)
    res = _fusion_assoc_jit(N) if _backend == "numba" else _fusion_assoc_numpy(N)
    return None if res[0] < 0 else tuple(int(x) for x in res)


# --- NIM-rep representation property -------------------------------------

def _rep_loop(L, N, right):
    r = L.shape[0]
    n = L.shape[1]
    for c in range(r):
        for d in range(r):
            for a in range(n):
                for b in range(n):
                    lhs = 0
                    for x in range(n):
                        lhs += L[c, a, x] * L[d, x, b]
                    rhs = 0
                    for k in range(r):
                        coef = N[d, c, k] if right else N[c, d, k]
                        rhs += coef * L[k, a, b]
                    if lhs != rhs:
                        return c, d
    return -1, -1


_rep_jit = _jit(_rep_loop)


def _rep_numpy(L, N, right):
    lhs = np.einsum("cax,dxb->cdab", L, L)
    coef = np.transpose(N, (1, 0, 2)) if right else N
    rhs = np.einsum("cdk,kab->cdab", coef, L)
    bad = np.argwhere((lhs != rhs).any(axis=(2, 3)))
    if len(bad):
        return int(bad[0][0]), int(bad[0][1])
    return -1, -1


def representation_violation(L: np.ndarray, N: np.ndarray, right: bool = False):
    """First ``(c, d)`` with ``L(c) L(d) != sum_k N coefficient * L(k)``, or None.

    For a right action the structure constants are read as ``N[d, c, k]``
    because ``(m . c) . d = m . (c d)`` composes the matrices in reverse.
    """
    L = np.ascontiguousarray(L, dtype=np.int64)
    N = np.ascontiguousarray(N, dtype=np.int64)
    res = _rep_jit(L, N, right) if _backend == "numba" else _rep_numpy(L, N, right)
    return None if res[0] < 0 else (int(res[0]), int(res[1]))


def _commute_loop(L, R):
    n = L.shape[1]
    for d in range(L.shape[0]):
        for c in range(R.shape[0]):
            for a in range(n):
                for b in range(n):
                    lr = 0
                    rl = 0
                    for x in range(n):
                        lr += L[d, a, x] * R[c, x, b]
                        rl += R[c, a, x] * L[d, x, b]
                    if lr != rl:
                        return d, c
    return -1, -1


_commute_jit = _jit(_commute_loop)


def _commute_numpy(L, R):
    lr = np.einsum("dax,cxb->dcab", L, R)
    rl = np.einsum("cax,dxb->dcab", R, L)
    bad = np.argwhere((lr != rl).any(axis=(2, 3)))
    if len(bad):
        return int(bad[0][0]), int(bad[0][1])
    return -1, -1


def commutation_violation(L: np.ndarray, R: np.ndarray):
    """First ``(d, c)`` with ``L(d) R(c) != R(c) L(d)``, or None."""
    L = np.ascontiguousarray(L, dtype=np.int64)
    R = np.ascontiguousarray(R, dtype=np.int64)
    res = _commute_jit(L, R) if _backend == "numba" else _commute_numpy(L, R)
    return None if res[0] < 0 else (int(res[0]), int(res[1]))


# --- Perron-Frobenius power iteration ------------------------------------

def _power_loop(M, tol, maxiter):
    n = M.shape[0]
    v = np.ones(n)
    for it in range(maxiter):
        w = M @ v
        w = w / np.max(np.abs(w))
        diff = np.max(np.abs(w - v))
        v = w
        if diff < tol:
            return v, it + 1, True
    return v, maxiter, False


_power_jit = _jit(_power_loop)


def power_iteration(M: np.ndarray, tol: float, maxiter: int):
    """Dominant eigenvector (max-norm 1) of a primitive nonnegative matrix."""
    M = np.ascontiguousarray(M, dtype=np.float64)
    if _backend == "numba":
        v, it, ok = _power_jit(M, float(tol), int(maxiter))
    else:
        v, it, ok = _power_loop(M, float(tol), int(maxiter))
    return np.asarray(v), int(it), bool(ok)


# --- brute-force module trace enumeration --------------------------------

def _theta_loop(action, chi, m, normalize):
    # action[g, c] = index of g |> c ; chi[g] = exponent of the twist
    G = action.shape[0]
    n = action.shape[1]
    theta = np.zeros(n, dtype=np.int64)
    first = np.full(n, -1, dtype=np.int64)
    start = 1 if normalize else 0
    count = 0
    while True:
        ok = True
        for g in range(G):
            if not ok:
                break
            for c in range(n):
                if theta[action[g, c]] != (theta[c] + chi[g]) % m:
                    ok = False
                    break
        if ok:
            if count == 0:
                first[:] = theta
            count += 1
        # odometer step over positions start..n-1
        pos = start
        while pos < n:
            theta[pos] += 1
            if theta[pos] < m:
                break
            theta[pos] = 0
            pos += 1
        if pos >= n:
            break
    return count, first


_theta_jit = _jit(_theta_loop)


def _theta_numpy(action, chi, m, normalize):
    n = action.shape[1]
    free = n - 1 if normalize else n
    if free == 0:
        grid = np.zeros((1, n), dtype=np.int64)
    else:
        cols = np.array(list(itertools.product(range(m), repeat=free)), dtype=np.int64)
        # odometer order: least significant position first
        cols = cols[:, ::-1]
        grid = np.zeros((len(cols), n), dtype=np.int64)
        grid[:, n - free:] = cols
    lhs = grid[:, action]                                   # (A, G, n)
    rhs = (grid[:, None, :] + chi[None, :, None]) % m        # (A, G, n)
    good = np.all(lhs == rhs, axis=(1, 2))
    idx = np.flatnonzero(good)
    first = grid[idx[0]] if len(idx) else np.full(n, -1, dtype=np.int64)
    return len(idx), first


def enumerate_theta(action: np.ndarray, chi: np.ndarray, m: int, normalize: bool = True):
    """Count exponent assignments ``theta`` with ``theta[g.c] = theta[c] + chi[g] (mod m)``.

    With ``normalize`` the first coset is pinned to exponent 0.  Returns the
    number of solutions and the first one found (``-1`` entries if none).
    """
    action = np.ascontiguousarray(action, dtype=np.int64)
    chi = np.ascontiguousarray(chi, dtype=np.int64) % m
    if _backend == "numba":
        count, first = _theta_jit(action, chi, int(m), bool(normalize))
    else:
        count, first = _theta_numpy(action, chi, int(m), bool(normalize))
    return int(count), [int(x) for x in first]


# --- double cosets --------------------------------------------------------

def _double_coset_loop(table, hmask, kmask):
    n = table.shape[0]
    label = np.full(n, -1, dtype=np.int64)
    nxt = 0
    for g in range(n):
        if label[g] >= 0:
            continue
        for h in range(n):
            if not hmask[h]:
                continue
            hg = table[h, g]
            for k in range(n):
                if kmask[k]:
                    label[table[hg, k]] = nxt
        nxt += 1
    return label


_double_coset_jit = _jit(_double_coset_loop)


def _double_coset_numpy(table, hmask, kmask):
    n = table.shape[0]
    H = np.flatnonzero(hmask)
    K = np.flatnonzero(kmask)
    label = np.full(n, -1, dtype=np.int64)
    nxt = 0
    for g in range(n):
        if label[g] >= 0:
            continue
        orbit = table[table[H, g][:, None], K[None, :]]
        label[orbit.ravel()] = nxt
        nxt += 1
    return label


def double_coset_labels(table: np.ndarray, hmask: np.ndarray, kmask: np.ndarray) -> list[int]:
    """Label each element by its double coset ``HgK``, numbered by first occurrence."""
    table = np.ascontiguousarray(table, dtype=np.int64)
    hmask = np.ascontiguousarray(hmask, dtype=np.bool_)
    kmask = np.ascontiguousarray(kmask, dtype=np.bool_)
    if _backend == "numba":
        lab = _double_coset_jit(table, hmask, kmask)
    else:
        lab = _double_coset_numpy(table, hmask, kmask)
    return [int(x) for x in lab]
