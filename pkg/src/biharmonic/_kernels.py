"""Compiled inner loops over the compressed adjacency arrays.

Every kernel that consumes randomness is seeded explicitly at entry
(numba keeps a per-thread Mersenne Twister state), so a kernel call is a
pure function of its arguments and can run on any worker thread without
affecting reproducibility. Callers derive per-batch seeds from their own
generator stream.
"""
from __future__ import annotations

import numpy as np
from numba import njit

__all__ = [
    "walk_mass_accumulate",
    "sample_z_block",
    "z_from_walks",
    "stw_chunk",
]


@njit(cache=True, nogil=True)
def walk_mass_accumulate(offsets, neighbors, start, ell, acc, mass_out):
    """Accumulate acc[x] += sum_{i=0}^{ell-1} p_i(start, x).

    p_i is the i-hop visit probability of a simple random walk from
    ``start``. mass_out[i] records sum_v p_i (should stay 1.0).
    Frontiers are kept as explicit node lists until they cover more than
    an eighth of the graph, then the hop switches to dense scans.
    """
    n = offsets.shape[0] - 1
    dense_cut = n // 8 + 1
    p = np.zeros(n, np.float64)
    p_next = np.zeros(n, np.float64)
    frontier = np.empty(n, np.int64)
    nxt = np.empty(n, np.int64)
    in_next = np.zeros(n, np.bool_)
    p[start] = 1.0
    frontier[0] = start
    fcount = 1
    dense = False
    for hop in range(ell):
        mass = 0.0
        if dense:
            for x in range(n):
                px = p[x]
                if px != 0.0:
                    acc[x] += px
                    mass += px
        else:
            for fi in range(fcount):
                x = frontier[fi]
                px = p[x]
                acc[x] += px
                mass += px
        mass_out[hop] = mass
        if hop == ell - 1:
            break
        if dense:
            for j in range(n):
                pj = p[j]
                if pj != 0.0:
                    share = pj / (offsets[j + 1] - offsets[j])
                    for idx in range(offsets[j], offsets[j + 1]):
                        p_next[neighbors[idx]] += share
                    p[j] = 0.0
        else:
            nf = 0
            for fi in range(fcount):
                j = frontier[fi]
                share = p[j] / (offsets[j + 1] - offsets[j])
                for idx in range(offsets[j], offsets[j + 1]):
                    x = neighbors[idx]
                    p_next[x] += share
                    if not in_next[x]:
                        in_next[x] = True
                        nxt[nf] = x
                        nf += 1
                p[j] = 0.0
            for fi in range(nf):
                in_next[nxt[fi]] = False
            tmp_f = frontier
            frontier = nxt
            nxt = tmp_f
            fcount = nf
            if fcount > dense_cut:
                dense = True
        tmp_p = p
        p = p_next
        p_next = tmp_p


@njit(cache=True, nogil=True, inline="always")
def _step(offsets, neighbors, cur):
    # floor(uniform * d) is unbiased up to O(d / 2^53) and draws a single
    # generator word, unlike rejection-sampled integer draws
    d = offsets[cur + 1] - offsets[cur]
    return neighbors[offsets[cur] + np.int64(np.random.random() * d)]


@njit(cache=True, nogil=True)
def z_from_walks(w1, w2, w3, w4, inv_deg, inv_deg2, n, c2, c4):
    """One unbiased sample from four recorded walks (all positions count).

    w1, w2 start at the source, w3, w4 at the target. c2/c4 are zeroed
    scratch arrays of length n; they are restored to zero before return.
    """
    n_pos = w1.shape[0]
    for i in range(n_pos):
        c2[w2[i]] += 1.0
        c4[w4[i]] += 1.0
    z1 = 0.0
    a1 = 0.0
    a2 = 0.0
    b1 = 0.0
    b2 = 0.0
    for i in range(n_pos):
        x = w1[i]
        z1 += inv_deg2[x] * (c2[x] - c4[x])  # coincidences with w2 minus w4
        a1 += inv_deg[x]
    for i in range(n_pos):
        x = w3[i]
        z1 += inv_deg2[x] * (c4[x] - c2[x])
        b1 += inv_deg[x]
    for i in range(n_pos):
        a2 += inv_deg[w2[i]]
        b2 += inv_deg[w4[i]]
    for i in range(n_pos):
        c2[w2[i]] = 0.0
        c4[w4[i]] = 0.0
    return z1 - (a1 - b1) * (a2 - b2) / n


@njit(cache=True, nogil=True)
def sample_z_block(offsets, neighbors, inv_deg, inv_deg2, s, t, n_pos, count, seed, out):
    """Fill ``out[:count]`` with independent samples for the pair (s, t).

    Per sample the generator is consumed in a fixed order: the two walks
    from s, then the two walks from t, each of n_pos - 1 steps.
    """
    np.random.seed(seed)
    n = inv_deg.shape[0]
    steps = n_pos - 1
    w1 = np.empty(n_pos, np.int64)
    w2 = np.empty(n_pos, np.int64)
    w3 = np.empty(n_pos, np.int64)
    w4 = np.empty(n_pos, np.int64)
    c2 = np.zeros(n, np.float64)
    c4 = np.zeros(n, np.float64)
    for k in range(count):
        cur = s
        w1[0] = cur
        for i in range(steps):
            cur = _step(offsets, neighbors, cur)
            w1[i + 1] = cur
        cur = s
        w2[0] = cur
        for i in range(steps):
            cur = _step(offsets, neighbors, cur)
            w2[i + 1] = cur
        cur = t
        w3[0] = cur
        for i in range(steps):
            cur = _step(offsets, neighbors, cur)
            w3[i + 1] = cur
        cur = t
        w4[0] = cur
        for i in range(steps):
            cur = _step(offsets, neighbors, cur)
            w4[i + 1] = cur
        out[k] = z_from_walks(w1, w2, w3, w4, inv_deg, inv_deg2, n, c2, c4)


@njit(cache=True, nogil=True)
def stw_chunk(offsets, neighbors, inv_deg, s, t, n_pos, n_quads, seed,
              W, X, Y, Z, Wb, Xb, Yb, Zb):
    """Accumulate acceptance counts for ``n_quads`` walk quadruples.

    Each quadruple draws full-length walks (two from s, two from t); the
    prefix of length i of a walk is itself a walk of length i, so one
    quadruple serves every length pair (i, j). Coins are drawn row-major
    over (i, j) in the fixed order W, X, Y, Z (only when the corresponding
    end nodes coincide) followed by the four unconditional ones.
    """
    np.random.seed(seed)
    steps = n_pos - 1
    w1 = np.empty(n_pos, np.int64)
    w2 = np.empty(n_pos, np.int64)
    w3 = np.empty(n_pos, np.int64)
    w4 = np.empty(n_pos, np.int64)
    for q in range(n_quads):
        cur = s
        w1[0] = cur
        for i in range(steps):
            cur = _step(offsets, neighbors, cur)
            w1[i + 1] = cur
        cur = s
        w2[0] = cur
        for i in range(steps):
            cur = _step(offsets, neighbors, cur)
            w2[i + 1] = cur
        cur = t
        w3[0] = cur
        for i in range(steps):
            cur = _step(offsets, neighbors, cur)
            w3[i + 1] = cur
        cur = t
        w4[0] = cur
        for i in range(steps):
            cur = _step(offsets, neighbors, cur)
            w4[i + 1] = cur
        for i in range(n_pos):
            s1 = w1[i]
            t1 = w3[i]
            ids1 = inv_deg[s1]
            idt1 = inv_deg[t1]
            for j in range(n_pos):
                s2 = w2[j]
                t2 = w4[j]
                if s1 == s2 and np.random.random() < ids1 * ids1:
                    W[i, j] += 1
                if t1 == t2 and np.random.random() < idt1 * idt1:
                    X[i, j] += 1
                if s1 == t2 and np.random.random() < ids1 * ids1:
                    Y[i, j] += 1
                if t1 == s2 and np.random.random() < idt1 * idt1:
                    Z[i, j] += 1
                if np.random.random() < ids1 * inv_deg[s2]:
                    Wb[i, j] += 1
                if np.random.random() < idt1 * inv_deg[t2]:
                    Xb[i, j] += 1
                if np.random.random() < ids1 * inv_deg[t2]:
                    Yb[i, j] += 1
                if np.random.random() < idt1 * inv_deg[s2]:
                    Zb[i, j] += 1
