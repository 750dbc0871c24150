"""Pure numpy versions of the GF(p) kernels (same signatures as the compiled module)."""

import numpy as np


def bilinear(X, Y, triples, p, n_out):
    """out[:, k] = sum over (i, j, k, c) of c * X[:, i] * Y[:, j]  (mod p)."""
    X = np.asarray(X, dtype=np.int64)
    Y = np.asarray(Y, dtype=np.int64)
    out = np.zeros((X.shape[0], n_out), dtype=np.int64)
    for i, j, k, c in np.asarray(triples, dtype=np.int64).tolist():
        out[:, k] += c * (X[:, i] * Y[:, j] % p) % p
        if p > 1 << 20:
            out[:, k] %= p
    return out % p


def rref_insert(basis, pivots, rank, rows, p):
    """Insert rows into a fully reduced echelon basis in place; return the new rank."""
    cap, ncols = basis.shape
    rows = np.asarray(rows, dtype=np.int64) % p
    if rank and len(rows) and (p - 1) ** 2 * rank < 1 << 62:
        # bulk pre-reduction against the current basis; most rows vanish here
        rows = (rows - rows[:, pivots[:rank]] @ basis[:rank]) % p
        rows = rows[rows.any(axis=1)]
    for row in rows:
        if rank == cap:
            break
        if rank:
            coeffs = row[pivots[:rank]]
            if coeffs.any():
                if (p - 1) ** 2 * rank < 1 << 62:
                    row = (row - coeffs @ basis[:rank]) % p
                else:
                    for r in np.flatnonzero(coeffs):
                        row = (row - coeffs[r] * basis[r] % p) % p
        nz = np.flatnonzero(row)
        if not len(nz):
            continue
        lead = int(nz[0])
        row = row * pow(int(row[lead]), p - 2, p) % p
        if rank:
            col = basis[:rank, lead].copy()
            hit = np.flatnonzero(col)
            for r in hit:
                basis[r] = (basis[r] - col[r] * row % p) % p
        basis[rank] = row
        pivots[rank] = lead
        rank += 1
    return rank
