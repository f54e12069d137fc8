"""Pure-Python/numpy implementations of the hot kernels.

Selected at import when the compiled extension is unavailable; the compiled
module mirrors these signatures exactly.
"""

import numpy as np


def walk_powers(modulus, gen_digits, p, count):
    """Codes of gen**0 .. gen**(count-1) in F_p[y]/(modulus).

    ``modulus`` is the monic modulus (constant first, length N+1) and
    ``gen_digits`` the F_p-coordinates of the generator.  Codes are base-p
    integers with the y**0 coordinate as the least significant digit.
    """
    modulus = np.asarray(modulus, dtype=np.int64)
    gen_digits = np.asarray(gen_digits, dtype=np.int64)
    n = len(modulus) - 1
    # matrix of multiplication by gen acting on coordinate columns
    mat = np.zeros((n, n), dtype=np.int64)
    for s in range(n):
        col = np.zeros(2 * n, dtype=np.int64)
        col[s:s + n] = gen_digits
        for top in range(2 * n - 1, n - 1, -1):
            c = col[top] % p
            if c:
                col[top - n:top + 1] -= c * modulus
        mat[:, s] = col[:n] % p
    weights = p ** np.arange(n, dtype=np.int64)
    # first block by doubling, then advance whole blocks by gen**block
    block = min(count, 4096)
    rows = np.zeros((1, n), dtype=np.int64)
    rows[0, 0] = 1
    step = mat.copy()
    while rows.shape[0] < block:
        rows = np.concatenate([rows, (rows @ step.T) % p])
        step = (step @ step) % p
    rows = rows[:block]
    jump = np.eye(n, dtype=np.int64)
    for _ in range(block):
        jump = (mat @ jump) % p
    out = np.empty(count, dtype=np.int64)
    for lo in range(0, count, block):
        hi = min(lo + block, count)
        out[lo:hi] = rows[:hi - lo] @ weights
        rows = (rows @ jump.T) % p
    return out


def residue_histogram(A, T, w, p, chunk=1 << 22):
    """Weighted histograms of the residues (A @ T.T) mod p, one row per row of A.

    ``A`` has shape (m, k), ``T`` shape (P, k), ``w`` length P.  Returns an
    (m, p) integer array whose [i, r] entry is the total weight of the
    columns j with A[i] . T[j] = r (mod p).
    """
    A = np.asarray(A, dtype=np.float64)
    T = np.asarray(T, dtype=np.float64)
    w = np.asarray(w, dtype=np.int64)
    m = A.shape[0]
    out = np.zeros((m, p), dtype=np.int64)
    if m == 0 or T.shape[0] == 0:
        return out
    step = max(1, chunk // max(m, 1))
    for lo in range(0, T.shape[0], step):
        blk = T[lo:lo + step]
        # entries are < p and k is small, so float products stay exact
        res = np.rint(A @ blk.T).astype(np.int64) % p
        wb = w[lo:lo + step]
        for r in range(p):
            out[:, r] += (res == r) @ wb
    return out
