"""
Exact integer matrices and the floating-point eigensolver behind every
skew spectrum.

Integer matrices are plain ``int64`` numpy arrays. Every product is
preceded by a magnitude bound so results are either exact or rejected
with :class:`MatrixOverflow`; nothing silently wraps around.
"""
import logging
import math
from dataclasses import dataclass
from typing import Iterable, Sequence, Tuple

import numpy as np
import numpy.typing as npt

from skewspec.errors import (DimensionMismatch, MatrixOverflow, NonConvergence,
                             NotSkewSymmetric, NotSymmetric)

logger = logging.getLogger(__name__)

IntMatrix = npt.NDArray[np.int64]
FloatMatrix = npt.NDArray[np.float64]

# int64 products stay exact below this bound; float64 BLAS stays exact below _FLOAT_EXACT.
_INT_EXACT = 2 ** 62
_FLOAT_EXACT = 2 ** 53

JACOBI_TOL = 1e-12
JACOBI_MAX_SWEEPS = 100
PSD_CLAMP = 1e-10
SYMMETRY_TOL = 1e-12


def as_int_matrix(data) -> IntMatrix:
    """Coerces nested sequences or an array to a 2-D int64 matrix."""
    matrix = np.asarray(data)
    if matrix.ndim != 2:
        raise DimensionMismatch(f"expected a 2-D matrix, got {matrix.ndim} dimension(s)")
    if matrix.size and not np.issubdtype(matrix.dtype, np.integer):
        if not np.all(np.equal(np.mod(matrix, 1), 0)):
            raise DimensionMismatch("integer matrix has non-integral entries")
    return matrix.astype(np.int64, copy=False)


def _magnitude(matrix: np.ndarray) -> int:
    return int(np.max(np.abs(matrix))) if matrix.size else 0


def identity(n: int) -> IntMatrix:
    """The n x n integer identity."""
    return np.eye(n, dtype=np.int64)


def signed_identity(m1: int, m2: int) -> IntMatrix:
    """
    The diagonal matrix I' = diag(+1 repeated m1 times, -1 repeated m2 times).

    :param m1: Size of the positive block (the X side of a bipartition).
    :param m2: Size of the negative block (the Y side).
    :return: An (m1 + m2) x (m1 + m2) integer matrix.
    """
    return np.diag(np.concatenate([np.ones(m1, dtype=np.int64), -np.ones(m2, dtype=np.int64)]))


def transpose(a: IntMatrix) -> IntMatrix:
    """Returns a contiguous int64 copy of a^T."""
    return np.ascontiguousarray(as_int_matrix(a).T)


def add(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    """
    Entrywise sum of two integer matrices of the same shape.

    :raises DimensionMismatch: if the shapes differ.
    :raises MatrixOverflow: if an entry could leave the exact int64 range.
    """
    a, b = as_int_matrix(a), as_int_matrix(b)
    if a.shape != b.shape:
        raise DimensionMismatch(f"cannot add {a.shape} and {b.shape}")
    if _magnitude(a) + _magnitude(b) >= _INT_EXACT:
        raise MatrixOverflow("sum may exceed 64-bit integer range")
    return a + b


def matmul(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    """
    Exact integer matrix product.

    Small-magnitude products go through float64 BLAS, which is exact while
    every partial sum stays below 2**53; larger ones fall back to int64
    arithmetic, and anything beyond that raises.
    """
    a, b = as_int_matrix(a), as_int_matrix(b)
    if a.shape[1] != b.shape[0]:
        raise DimensionMismatch(f"cannot multiply {a.shape} by {b.shape}")
    bound = _magnitude(a) * _magnitude(b) * a.shape[1]
    if bound < _FLOAT_EXACT:
        product = a.astype(np.float64) @ b.astype(np.float64)
        return np.rint(product).astype(np.int64)
    if bound >= _INT_EXACT:
        raise MatrixOverflow(f"product bound {bound} exceeds 64-bit integer range")
    return a @ b


def kronecker(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    """
    Kronecker product with result[i*p + k, j*q + l] = a[i, j] * b[k, l], b being p x q.
    """
    a, b = as_int_matrix(a), as_int_matrix(b)
    if _magnitude(a) * _magnitude(b) >= _INT_EXACT:
        raise MatrixOverflow("Kronecker product entries exceed 64-bit integer range")
    return np.kron(a, b)


def kronecker_chain(factors: Sequence[IntMatrix]) -> IntMatrix:
    """
    Folds :func:`kronecker` over ``factors`` from the left.

    :param factors: At least one integer matrix.
    :return: factors[0] (x) factors[1] (x) ... (x) factors[-1].
    :raises DimensionMismatch: if ``factors`` is empty.
    """
    if not factors:
        raise DimensionMismatch("empty Kronecker chain")
    result = as_int_matrix(factors[0])
    for factor in factors[1:]:
        result = kronecker(result, factor)
    return result


def bipartite_block(a: IntMatrix, symmetric: bool = False) -> IntMatrix:
    """
    Builds [[0, A], [-A^T, 0]], or [[0, A], [A^T, 0]] when ``symmetric`` is set.

    :param a: The m1 x m2 block of arcs from X to Y.
    :param symmetric: Whether to produce the symmetrized partner S'.
    """
    a = as_int_matrix(a)
    m1, m2 = a.shape
    lower = a.T if symmetric else -a.T
    return np.block([
        [np.zeros((m1, m1), dtype=np.int64), a],
        [lower, np.zeros((m2, m2), dtype=np.int64)],
    ]).astype(np.int64)


def block_diagonal(blocks: Iterable[IntMatrix]) -> IntMatrix:
    """
    Places ``blocks`` along the diagonal of a zero matrix.

    :param blocks: Integer matrices, not necessarily square.
    :return: A matrix whose shape is the sum of the block shapes.
    """
    blocks = [as_int_matrix(b) for b in blocks]
    rows = sum(b.shape[0] for b in blocks)
    cols = sum(b.shape[1] for b in blocks)
    result = np.zeros((rows, cols), dtype=np.int64)
    r = c = 0
    for b in blocks:
        result[r:r + b.shape[0], c:c + b.shape[1]] = b
        r += b.shape[0]
        c += b.shape[1]
    return result


def is_skew_symmetric(s: IntMatrix) -> bool:
    s = np.asarray(s)
    return s.ndim == 2 and s.shape[0] == s.shape[1] and bool(np.array_equal(s, -s.T))


def require_skew_symmetric(s) -> IntMatrix:
    s = as_int_matrix(s)
    if s.shape[0] != s.shape[1]:
        raise NotSkewSymmetric(f"matrix is not square: {s.shape}")
    if not is_skew_symmetric(s):
        i, j = np.argwhere(s != -s.T)[0]
        raise NotSkewSymmetric(f"S[{i}][{j}] = {s[i, j]} but S[{j}][{i}] = {s[j, i]}")
    return s


def _off_diagonal_norm(a: FloatMatrix) -> float:
    off = a - np.diag(np.diag(a))
    return float(np.sqrt(np.sum(off * off)))


def _rotate(a: FloatMatrix, p: int, q: int) -> None:
    # Zeroes a[p, q] and a[q, p] in place with one Jacobi rotation.
    app, aqq, apq = float(a[p, p]), float(a[q, q]), float(a[p, q])
    g = 100.0 * abs(apq)
    if abs(app) + g == abs(app) and abs(aqq) + g == abs(aqq):
        # Below the rounding of both diagonal entries.
        a[p, q] = a[q, p] = 0.0
        return
    h = aqq - app
    if abs(h) + g == abs(h):
        t = apq / h
    else:
        theta = 0.5 * h / apq
        t = 1.0 / (abs(theta) + math.hypot(theta, 1.0))
        if theta < 0.0:
            t = -t
    c = 1.0 / math.sqrt(t * t + 1.0)
    s = t * c
    col_p = a[:, p].copy()
    col_q = a[:, q].copy()
    a[:, p] = c * col_p - s * col_q
    a[:, q] = s * col_p + c * col_q
    a[p, :] = a[:, p]
    a[q, :] = a[:, q]
    a[p, p] = app - t * apq
    a[q, q] = aqq + t * apq
    a[p, q] = a[q, p] = 0.0


def symmetric_eigenvalues(m, tol: float = JACOBI_TOL, max_sweeps: int = JACOBI_MAX_SWEEPS,
                          psd: bool = False) -> npt.NDArray[np.float64]:
    """
    Eigenvalues of a real symmetric matrix by cyclic Jacobi rotations.

    Sweeps stop once the off-diagonal Frobenius norm drops below
    ``tol * max(1, ||m||_F)``.

    :param m: A square matrix, symmetric within 1e-12 entrywise.
    :param tol: Convergence threshold on the off-diagonal norm.
    :param max_sweeps: Sweeps allowed before :class:`NonConvergence` is raised.
    :param psd: Clamp values below 1e-10 to zero (the input is known to be PSD).
    :return: All eigenvalues in ascending order.
    """
    a = np.array(m, dtype=np.float64)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionMismatch(f"eigenvalues need a square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise NotSymmetric("matrix has non-finite entries")
    if a.size and np.max(np.abs(a - a.T)) > SYMMETRY_TOL:
        raise NotSymmetric(f"matrix is not symmetric (max asymmetry {np.max(np.abs(a - a.T)):.3e})")
    a = (a + a.T) / 2.0
    n = a.shape[0]
    threshold = tol * max(1.0, float(np.linalg.norm(a)))

    sweeps = 0
    off = _off_diagonal_norm(a)
    while off >= threshold:
        if sweeps == max_sweeps:
            raise NonConvergence(sweeps, off)
        for p in range(n - 1):
            for q in range(p + 1, n):
                if a[p, q] != 0.0:
                    _rotate(a, p, q)
        sweeps += 1
        off = _off_diagonal_norm(a)
    logger.debug("Jacobi on order %d converged after %d sweep(s), residual %.3e", n, sweeps, off)

    values = np.sort(np.diag(a).copy())
    if psd:
        values[values < PSD_CLAMP] = 0.0
    return values


@dataclass(frozen=True)
class SkewSpectrum:
    """
    Skew eigenvalues as their imaginary parts: lambda stands for lambda*i.

    ``values`` is sorted ascending and closed under negation.
    """

    values: Tuple[float, ...]

    @property
    def order(self) -> int:
        return len(self.values)

    @property
    def energy(self) -> float:
        return float(np.sum(np.abs(self.values)))

    def positive(self, threshold: float = 1e-9) -> Tuple[float, ...]:
        """The nonzero values mu_1..mu_t, one per +/- pair, descending."""
        return tuple(sorted((v for v in self.values if v > threshold), reverse=True))


def skew_spectrum(s: IntMatrix) -> SkewSpectrum:
    """
    Computes the skew spectrum of a skew-symmetric integer matrix.

    The singular values come from the PSD matrix S^T S; for skew-symmetric S
    they arrive in equal pairs, each pair giving one +sigma and one -sigma.
    An odd order leaves one zero.
    """
    s = require_skew_symmetric(s)
    n = s.shape[0]
    if n == 0:
        return SkewSpectrum(values=())
    gram = matmul(transpose(s), s)
    squares = symmetric_eigenvalues(gram.astype(np.float64), psd=True)
    sigma = np.sqrt(squares)[::-1]
    half = n // 2
    paired = (sigma[0:2 * half:2] + sigma[1:2 * half:2]) / 2.0
    values = np.concatenate([-paired, np.zeros(n % 2), paired])
    return SkewSpectrum(values=tuple(float(v) for v in np.sort(values)))
