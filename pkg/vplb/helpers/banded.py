import numpy as np
from numba import njit


@njit(cache=True)
def solve_tridiagonal(lower, diag, upper, rhs):
    """
    Solve a tridiagonal system with the Thomas algorithm.

    lower: (0, a_2, ..., a_n), diag: (b_1, ..., b_n), upper: (c_1, ..., c_{n-1}, 0).
    Inputs are not modified.
    """
    n = rhs.shape[0]
    b = diag.copy()
    d = rhs.copy()

    for k in range(1, n):
        m = lower[k] / b[k - 1]
        b[k] = b[k] - m * upper[k - 1]
        d[k] = d[k] - m * d[k - 1]

    x = np.empty(n)
    x[n - 1] = d[n - 1] / b[n - 1]
    for k in range(n - 2, -1, -1):
        x[k] = (d[k] - upper[k] * x[k + 1]) / b[k]

    return x


class BlockTridiagonalLayout(object):
    """
    Maps the blocks of a block-tridiagonal matrix with nblock x nblock
    blocks of size dim onto LAPACK general-band storage, as consumed by
    scipy.linalg.solve_banded with (bandwidth, bandwidth) sub/super-diagonals.

    Block arrays are laid out as (..., nblock, dim, dim) with [.., j, s, t]
    coupling row s of block row j to column t of block column j (diagonal),
    j-1 (lower) or j+1 (upper). The first lower and last upper block are
    ignored.
    """

    def __init__(self, nblock, dim):
        self.nblock = nblock
        self.dim = dim
        self.size = nblock * dim
        self.bandwidth = 2 * dim - 1
        self.nbands = 2 * self.bandwidth + 1

        j, s, t = np.meshgrid(np.arange(nblock), np.arange(dim), np.arange(dim), indexing='ij')
        rows = (j * dim + s)

        self._diag = self._band_index(rows, j * dim + t)
        self._lower = self._band_index(rows[1:], (j[1:] - 1) * dim + t[1:])
        self._upper = self._band_index(rows[:-1], (j[:-1] + 1) * dim + t[:-1])

    def _band_index(self, rows, cols):
        rows, cols = rows.ravel(), cols.ravel()
        return self.bandwidth + rows - cols, cols

    def to_banded(self, diag, lower, upper):
        """
        Pack stacked blocks of shape (batch, nblock, dim, dim) into band storage
        of shape (batch, nbands, size).
        """
        batch = diag.shape[0]
        ab = np.zeros((batch, self.nbands, self.size))
        ab[:, self._diag[0], self._diag[1]] = diag.reshape(batch, -1)
        if self.nblock > 1:
            ab[:, self._lower[0], self._lower[1]] = lower[:, 1:].reshape(batch, -1)
            ab[:, self._upper[0], self._upper[1]] = upper[:, :-1].reshape(batch, -1)
        return ab

    def to_dense(self, diag, lower, upper):
        """Dense matrix for a single (unbatched) set of blocks; for inspection and tests."""
        ab = self.to_banded(diag[None], lower[None], upper[None])[0]
        dense = np.zeros((self.size, self.size))
        for band in range(self.nbands):
            offset = self.bandwidth - band
            for col in range(self.size):
                row = col - offset
                if 0 <= row < self.size:
                    dense[row, col] = ab[band, col]
        return dense


def block_tridiagonal_apply(diag, lower, upper, x):
    """
    Multiply stacked block-tridiagonal matrices (batch, nblock, dim, dim)
    with stacked vectors (batch, nblock*dim).
    """
    batch, nblock, dim, _ = diag.shape
    xb = x.reshape(batch, nblock, dim)
    y = np.einsum('bjst,bjt->bjs', diag, xb)
    if nblock > 1:
        y[:, 1:] += np.einsum('bjst,bjt->bjs', lower[:, 1:], xb[:, :-1])
        y[:, :-1] += np.einsum('bjst,bjt->bjs', upper[:, :-1], xb[:, 1:])
    return y.reshape(batch, nblock * dim)
