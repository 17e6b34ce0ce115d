"""Stochastic kernels for the data-processing inequality on divergences.

A kernel maps a function on the half line to its smoothed image
``(g K)(x) = int g(u) k(u, x) du`` and a weight to its pulled-back version
``Psi(u) = int phi(x) k(u, x) dx``.  Two representations are provided: a
truncated-Gaussian smoothing kernel and an explicit row-stochastic matrix on
a shared grid.
"""

from __future__ import annotations

import math
from typing import Callable

import numpy as np
from scipy import special

from .errors import DomainError
from .quadrature import DEFAULT_SPEC, QuadratureSpec, integrate_1d
from .weights import WeightFunction

__all__ = ["GaussianSmoothingKernel", "GridMatrixKernel"]


class GaussianSmoothingKernel:
    """k(u, x): normal density in x centered at u, truncated to x >= 0."""

    def __init__(self, bandwidth: float):
        if bandwidth <= 0:
            raise DomainError("bandwidth must be positive")
        self.h = float(bandwidth)

    def density(self, u: float, x):
        x = np.asarray(x, dtype=float)
        h = self.h
        z = (x - u) / h
        norm = special.ndtr(u / h)  # mass of N(u, h^2) on [0, inf)
        out = np.where(x >= 0,
                       np.exp(-0.5 * z * z) / (h * math.sqrt(2 * math.pi) * norm),
                       0.0)
        return out if out.ndim else float(out)

    def _window(self, center: float):
        reach = 14.0 * self.h
        return max(0.0, center - reach), center + reach

    def push_function(self, g: Callable, spec: QuadratureSpec = DEFAULT_SPEC,
                      g_upper: float = math.inf) -> Callable:
        """x -> int g(u) k(u, x) du for a bounded nonincreasing g (an sf)."""

        def out(x: float) -> float:
            lo, hi = self._window(x)
            hi = min(hi, g_upper) if math.isfinite(g_upper) else hi
            if lo >= hi:
                return 0.0
            res = integrate_1d(lambda u: float(g(u)) * float(self.density(u, x)),
                               lo, hi, spec)
            return res.value

        return out

    def pull_weight(self, phi: WeightFunction,
                    spec: QuadratureSpec = DEFAULT_SPEC) -> Callable:
        """u -> int phi(x) k(u, x) dx."""

        def out(u: float) -> float:
            lo, hi = self._window(u)
            res = integrate_1d(lambda x: float(phi(x)) * float(self.density(u, x)),
                               lo, hi, spec)
            return res.value

        return out

    def mass_at(self, u: float, spec: QuadratureSpec = DEFAULT_SPEC) -> float:
        """int k(u, x) dx; should be 1 for every u (normalization probe)."""
        lo, hi = self._window(u)
        return integrate_1d(lambda x: float(self.density(u, x)), lo, hi, spec).value


class GridMatrixKernel:
    """Row-stochastic kernel on a shared grid.

    ``matrix[i, j]`` is the transition density from node i to node j with
    respect to the trapezoid measure of the grid; rows must integrate to one.
    """

    def __init__(self, grid, matrix):
        grid = np.asarray(grid, dtype=float)
        matrix = np.asarray(matrix, dtype=float)
        if grid.ndim != 1 or grid.size < 2 or np.any(np.diff(grid) <= 0):
            raise DomainError("grid must be strictly increasing with >= 2 nodes")
        if matrix.shape != (grid.size, grid.size) or np.any(matrix < 0):
            raise DomainError("matrix must be square, nonnegative, grid-sized")
        self.grid = grid
        self.matrix = matrix
        self.cell = self._trapezoid_weights(grid)
        rows = matrix @ self.cell
        if np.any(np.abs(rows - 1.0) > 1e-6):
            raise DomainError("kernel rows must integrate to 1 within 1e-6")

    @staticmethod
    def _trapezoid_weights(grid):
        w = np.zeros_like(grid)
        w[1:] += 0.5 * np.diff(grid)
        w[:-1] += 0.5 * np.diff(grid)
        return w

    def push_values(self, values) -> np.ndarray:
        """Image of grid samples of g: (gK)_j = sum_i g_i k_ij cell_i."""
        values = np.asarray(values, dtype=float)
        return (values * self.cell) @ self.matrix

    def pull_weight_values(self, phi: WeightFunction) -> np.ndarray:
        """Psi_i = sum_j phi(x_j) k_ij cell_j."""
        w = np.asarray(phi(self.grid), dtype=float)
        return self.matrix @ (w * self.cell)
