"""Truncated Hermite-basis model of L^2(R).

Provides stable evaluation of the orthonormal oscillator eigenfunctions,
dense matrices of the ladder operators, of multiplication and translation
operators, the line representation of rotation-algebra elements, the
bounded transform of the ladder pair, and a streaming routine for the
diagonal matrix elements used by spectral zeta sums.

Quadrature is a uniform grid on [-L, L] with L = sqrt(2N+3) + 6 and
K = 8N + 1 points: integrands are products of Hermite functions with
bounded smooth factors and decay like exp(-x^2/2) beyond the classical
turning point, so the trapezoid weights are spectrally accurate and the
shifted-grid samples needed by translation matrices can be reused.

Truncation-edge convention: homomorphism and commutation identities are
asserted on the top-left floor(N/2) block only; full-matrix violations near
the edge are expected and are not defects.
"""

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

_RESCALE_EVERY = 8
_RESCALE_LIMIT = 1e120


def _hermite_iter(x):
    """Yield psi_0(x), psi_1(x), ... on an array, with per-point rescaling.

    The three-term recurrence is run on ratios u_n = psi_n * exp(-ln) with a
    per-point log offset ln, renormalized every few steps, so values stay
    representable far outside the classical region (where psi_0 underflows
    but high modes do not).
    """
    x = np.asarray(x, dtype=float)
    ln = -0.5 * x * x - 0.25 * np.log(np.pi)
    u_prev = np.ones_like(x)
    u = np.sqrt(2.0) * x
    n = 0
    while True:
        with np.errstate(under="ignore"):
            yield u_prev * np.exp(ln)
        m = n + 1
        u_next = np.sqrt(2.0 / (m + 1)) * x * u - np.sqrt(m / (m + 1.0)) * u_prev
        u_prev, u = u, u_next
        if m % _RESCALE_EVERY == 0:
            mag = np.abs(u)
            big = mag > _RESCALE_LIMIT
            if big.any():
                scale = np.where(big, 1.0 / _RESCALE_LIMIT, 1.0)
                u_prev = u_prev * scale
                u = u * scale
                ln = ln + np.where(big, np.log(_RESCALE_LIMIT), 0.0)
        n += 1


def hermite_eval(n, x):
    """Value of the nth orthonormal Hermite function at x (scalar or array)."""
    if n < 0:
        raise ValueError("mode index must be nonnegative")
    x = np.asarray(x, dtype=float)
    scalar = x.ndim == 0
    it = _hermite_iter(np.atleast_1d(x))
    for _ in range(n):
        next(it)
    row = next(it)
    return float(row[0]) if scalar else row


def hermite_rows(n_modes, x):
    """Matrix of psi_n(x_j) for n = 0..n_modes-1 over the points x."""
    x = np.asarray(x, dtype=float)
    rows = np.empty((n_modes, x.shape[0]))
    it = _hermite_iter(x)
    for n in range(n_modes):
        rows[n] = next(it)
    return rows


class HermiteBasis:
    """First N oscillator eigenfunctions with a shared uniform quadrature."""

    def __init__(self, n_modes, half_width=None, n_quad=None):
        n_modes = int(n_modes)
        if n_modes < 2:
            raise ValueError("need at least two modes")
        self.n_modes = n_modes
        self.half_width = (
            float(half_width)
            if half_width is not None
            else np.sqrt(2.0 * n_modes + 3.0) + 6.0
        )
        self.n_quad = int(n_quad) if n_quad is not None else 8 * n_modes + 1
        self.grid = np.linspace(-self.half_width, self.half_width, self.n_quad)
        self.weight = self.grid[1] - self.grid[0]

    @cached_property
    def rows(self):
        """psi_n on the quadrature grid, shape (N, K)."""
        return hermite_rows(self.n_modes, self.grid)

    def rows_shifted(self, alpha):
        """psi_n on the grid displaced by alpha (values psi_n(x_j - alpha))."""
        if alpha == 0.0:
            return self.rows
        return hermite_rows(self.n_modes, self.grid - alpha)

    def gram_defect(self):
        """Max deviation of the quadrature Gram matrix from the identity."""
        g = (self.rows * self.weight) @ self.rows.T
        return float(np.abs(g - np.eye(self.n_modes)).max())

    def __repr__(self):
        return (
            f"HermiteBasis(N={self.n_modes}, L={self.half_width:.2f}, "
            f"K={self.n_quad})"
        )


@dataclass(frozen=True)
class OperatorMatrix:
    """Dense matrix of an operator in (one or two copies of) the Hermite basis."""

    mat: np.ndarray
    basis: HermiteBasis = field(repr=False, default=None)

    @property
    def shape(self):
        return self.mat.shape

    def interior(self, k=None):
        """Top-left block quarantining the truncation edge (default N/2)."""
        if k is None:
            k = self.mat.shape[0] // 2
        return self.mat[:k, :k]

    def adjoint(self):
        return OperatorMatrix(self.mat.conj().T, self.basis)

    def hermitian_defect(self):
        return float(np.abs(self.mat - self.mat.conj().T).max())

    def __matmul__(self, other):
        other_mat = other.mat if isinstance(other, OperatorMatrix) else other
        return OperatorMatrix(self.mat @ other_mat, self.basis)

    def __add__(self, other):
        other_mat = other.mat if isinstance(other, OperatorMatrix) else other
        return OperatorMatrix(self.mat + other_mat, self.basis)

    def __sub__(self, other):
        other_mat = other.mat if isinstance(other, OperatorMatrix) else other
        return OperatorMatrix(self.mat - other_mat, self.basis)

    def __rmul__(self, scalar):
        return OperatorMatrix(scalar * self.mat, self.basis)


def ladder_matrices(basis):
    """Ladder pair, oscillator, block Dirac matrix and grading.

    Returns (A, A*, H, D, grading) with A the lower shift of entries
    sqrt(2k), H = diag(2n+1), D the 2N x 2N block matrix [[0, A*], [A, 0]]
    and grading diag(I, -I).  The relations A A* = H + 1 and A* A = H - 1
    hold exactly away from the last mode.
    """
    n = basis.n_modes
    a = np.zeros((n, n))
    ks = np.arange(1, n)
    a[ks - 1, ks] = np.sqrt(2.0 * ks)
    h = np.diag(2.0 * np.arange(n) + 1.0)
    d = np.zeros((2 * n, 2 * n))
    d[:n, n:] = a.T
    d[n:, :n] = a
    grading = np.diag(np.concatenate([np.ones(n), -np.ones(n)]))
    return (
        OperatorMatrix(a, basis),
        OperatorMatrix(a.T, basis),
        OperatorMatrix(h, basis),
        OperatorMatrix(d, basis),
        OperatorMatrix(grading, basis),
    )


def multiplication_matrix(f, basis):
    """Matrix of multiplication by f: entries quad(f psi_m psi_n)."""
    values = np.asarray(f(basis.grid))
    rows = basis.rows
    return OperatorMatrix((rows * (basis.weight * values)) @ rows.T, basis)


def translation_matrix(alpha, basis):
    """Matrix of the shift xi(x) -> xi(x - alpha); unitary up to the edge."""
    rows = basis.rows
    return OperatorMatrix(
        (rows * basis.weight) @ basis.rows_shifted(float(alpha)).T, basis
    )


def represent(a, basis):
    """Line representation of an algebra element: sum_n M_{f_n} T(n hbar).

    Powers of the generating translation are realized as single translations
    by n*hbar (exact on the interpolant and avoiding compounded truncation);
    negative powers use the transpose, which is the adjoint here.
    """
    n_modes = basis.n_modes
    out = np.zeros((n_modes, n_modes), dtype=complex)
    for n, f in a.items():
        mf = multiplication_matrix(f, basis).mat
        if n == 0:
            out += mf
        elif n > 0:
            out += mf @ translation_matrix(n * a.hbar, basis).mat
        else:
            out += mf @ translation_matrix(-n * a.hbar, basis).mat.T
    return OperatorMatrix(out, basis)


def bounded_transform(basis):
    """The two corners of the phase of the Dirac block matrix.

    Returns (F_plus, F_minus) = (A H^{-1/2}, A* (H+2)^{-1/2}).  On interior
    modes F_minus F_plus = I - H^{-1} and F_plus F_minus = I - (H+2)^{-1}.
    """
    n = basis.n_modes
    a, a_dag, h, _, _ = ladder_matrices(basis)
    hd = np.diag(h.mat)
    f_plus = a.mat / np.sqrt(hd)[None, :]
    f_minus = a_dag.mat / np.sqrt(hd + 2.0)[None, :]
    return OperatorMatrix(f_plus, basis), OperatorMatrix(f_minus, basis)


def diagonal_elements(weighted_shifts, n_modes, pad=6.0, grid_factor=8):
    """Streaming diagonal matrix elements d_n = quad(w(x) psi_n(x-a) psi_n(x)).

    ``weighted_shifts`` is a sequence of (weight, shift) pairs where weight
    is a callable on real arrays; the result has one row per pair.  All
    pairs share one quadrature grid and one pass of the rescaled recurrence,
    so computing several weights at once is nearly free.
    """
    pairs = list(weighted_shifts)
    shifts = [float(a) for _, a in pairs]
    span = max([0.0] + [abs(a) for a in shifts])
    half_width = np.sqrt(2.0 * n_modes + 3.0) + pad + span
    n_quad = grid_factor * n_modes + 1
    x = np.linspace(-half_width, half_width, n_quad)
    step = x[1] - x[0]
    weights = [np.asarray(w(x)) * step for w, _ in pairs]

    iters = {0.0: _hermite_iter(x)}
    for a in shifts:
        if a not in iters:
            iters[a] = _hermite_iter(x - a)

    out = np.zeros((len(pairs), n_modes), dtype=complex)
    for n in range(n_modes):
        row = {a: next(it) for a, it in iters.items()}
        base = row[0.0]
        for i, (wv, a) in enumerate(zip(weights, shifts)):
            shifted = base if a == 0.0 else row[a]
            out[i, n] = (wv * shifted * base).sum()
    return out


def algebra_diagonals(a, n_modes, pad=6.0, grid_factor=8):
    """Diagonal elements <pi(a) psi_n, psi_n> of a represented algebra element."""
    pairs = [(f, n * a.hbar) for n, f in a.items()]
    rows = diagonal_elements(pairs, n_modes, pad=pad, grid_factor=grid_factor)
    return rows.sum(axis=0)
