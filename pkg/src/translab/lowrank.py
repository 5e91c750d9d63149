"""Floating-point search for low-rank elements of a matrix subspace.

Alternating minimization of || sum_i c_i B_i - X Y^T ||_F over the
coefficient vector c and the rank-k factors X, Y.  The factor update is the
closed-form truncated SVD, the coefficient update is the normal-equation
least squares, and c is renormalized every round.  Converged coefficient
vectors are snapped to exact rationals through continued-fraction
convergents (Fraction.limit_denominator) over an increasing denominator
ladder, and every snapped candidate is verified exactly; only candidates
that pass exact verification are ever reported, so the search can miss
witnesses but can never fabricate one.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional

import numpy as np

from .fields import QI, QQ, GaussianRational
from .matrices import Mat
from .subspace import MatrixSubspace

__all__ = ["rationalize", "numeric_low_rank_coefficients", "search_low_rank_element"]

DENOMINATOR_LADDER = (1, 2, 3, 4, 6, 12, 24, 60, 120, 1000, 10**4, 10**6)


def rationalize(x: float, max_denominator: int) -> Fraction:
    """Best continued-fraction convergent with bounded denominator."""
    return Fraction(x).limit_denominator(max_denominator)


def _basis_to_floats(space: MatrixSubspace) -> np.ndarray:
    D = space.dim
    m, n = space.rows, space.cols
    if space.field == QQ:
        out = np.zeros((D, m * n), dtype=np.float64)
        for d, B in enumerate(space.basis):
            out[d] = [float(x) for x in B.entries()]
        return out
    if space.field == QI:
        out = np.zeros((D, m * n), dtype=np.complex128)
        for d, B in enumerate(space.basis):
            out[d] = [complex(float(x.re), float(x.im)) for x in B.entries()]
        return out
    raise ValueError("numeric search runs over Q or Qi only")


def _truncate_rank(T: np.ndarray, k: int) -> np.ndarray:
    U, s, Vh = np.linalg.svd(T, full_matrices=False)
    s = s.copy()
    s[k:] = 0.0
    return (U * s) @ Vh


def numeric_low_rank_coefficients(space: MatrixSubspace, k: int, *,
                                  seed: int = 0, iterations: int = 300,
                                  restarts: int = 10,
                                  tol: float = 1e-9) -> list[np.ndarray]:
    """Converged float coefficient vectors (unit norm, deterministic sign),
    one per restart that reached the residual tolerance."""
    D = space.dim
    if D == 0 or k < 1:
        return []
    m, n = space.rows, space.cols
    flat = _basis_to_floats(space)
    gram = flat @ flat.conj().T
    gram_pinv = np.linalg.pinv(gram)
    rng = np.random.default_rng(seed)
    complex_field = flat.dtype == np.complex128
    found = []
    for _ in range(restarts):
        c = rng.standard_normal(D)
        if complex_field:
            c = c + 1j * rng.standard_normal(D)
        c = c / np.linalg.norm(c)
        ok = False
        for _ in range(iterations):
            T = (c @ flat).reshape(m, n)
            Tk = _truncate_rank(T, k)
            c_new = gram_pinv @ (flat.conj() @ Tk.reshape(-1))
            nrm = np.linalg.norm(c_new)
            if nrm < 1e-13:
                break
            c_new = c_new / nrm
            delta = np.linalg.norm(c_new - c)
            c = c_new
            T = (c @ flat).reshape(m, n)
            resid = np.linalg.norm(T - _truncate_rank(T, k))
            scale = max(np.linalg.norm(T), 1e-300)
            if resid / scale < tol:
                ok = True
                break
            if delta < 1e-15:
                break
        if ok:
            # deterministic phase: scale so the largest coordinate is +1
            j = int(np.argmax(np.abs(c)))
            found.append(c / c[j])
    return found


def _snap(space: MatrixSubspace, c: np.ndarray, bound: int):
    if space.field == QQ:
        return tuple(rationalize(float(v.real), bound) for v in c)
    return tuple(
        GaussianRational(rationalize(float(v.real), bound),
                         rationalize(float(v.imag), bound))
        for v in c
    )


def verify_low_rank_candidate(space: MatrixSubspace, coeffs, k: int) -> Optional[Mat]:
    """Exact check of a snapped candidate: the combination must be nonzero
    with rank at most k.  Returns the assembled matrix or None."""
    if len(coeffs) != space.dim or not any(coeffs):
        return None
    T = space.element(coeffs)
    if T.is_zero() or T.rank() > k:
        return None
    return T


def search_low_rank_element(space: MatrixSubspace, k: int, *, seed: int = 0,
                            iterations: int = 300, restarts: int = 10,
                            tol: float = 1e-9,
                            max_denominator: int = 10**6):
    """Search for a nonzero element of rank <= k in the space.

    Returns (coefficients, matrix) with exact entries, or None.  Failure is
    always possible; a returned element is exactly verified.
    """
    for c in numeric_low_rank_coefficients(
            space, k, seed=seed, iterations=iterations, restarts=restarts,
            tol=tol):
        c = c.copy()
        c[np.abs(c) < 1e-10] = 0.0
        for bound in DENOMINATOR_LADDER:
            if bound > max_denominator:
                break
            coeffs = _snap(space, c, bound)
            T = verify_low_rank_candidate(space, coeffs, k)
            if T is not None:
                return coeffs, T
    return None
