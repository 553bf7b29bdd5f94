"""Composite Gauss-Legendre rules and tensor grids over orbit charts."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import DimensionMismatchError, DomainError


@lru_cache(maxsize=32)
def _leggauss(order: int):
    x, w = np.polynomial.legendre.leggauss(order)
    x.setflags(write=False)
    w.setflags(write=False)
    return x, w


def composite_gauss_legendre(lo: float, hi: float, panels: int, order: int = 8):
    """Nodes and weights of ``panels`` equal Gauss-Legendre panels on [lo, hi]."""
    if not hi > lo:
        raise DomainError(f"empty interval [{lo}, {hi}]")
    if panels < 1 or order < 1:
        raise DomainError("panels and order must be positive")
    x, w = _leggauss(order)
    edges = np.linspace(lo, hi, panels + 1)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[:-1] + edges[1:])
    nodes = (mid[:, None] + half[:, None] * x[None, :]).ravel()
    weights = (half[:, None] * w[None, :]).ravel()
    return nodes, weights


@dataclass(frozen=True)
class OrbitGrid:
    """Tensor-product quadrature grid on a box in orbit coordinates."""
    chart: tuple[str, ...]
    box: tuple[tuple[float, float], ...]
    n: tuple[int, ...]
    order: int = 8

    def __post_init__(self):
        if not (len(self.chart) == len(self.box) == len(self.n)):
            raise DimensionMismatchError("chart, box and n must have the same length")
        for k in self.n:
            if k % self.order:
                raise DomainError(f"sample count {k} is not a multiple of the order {self.order}")

    @property
    def dim(self) -> int:
        return len(self.box)

    def axes(self):
        return [composite_gauss_legendre(lo, hi, k // self.order, self.order)
                for (lo, hi), k in zip(self.box, self.n)]

    def points(self) -> np.ndarray:
        """Array of shape (n1, ..., nd, d)."""
        nodes = [x for x, _ in self.axes()]
        return np.stack(np.meshgrid(*nodes, indexing="ij"), axis=-1)

    def weights(self) -> np.ndarray:
        ws = [w for _, w in self.axes()]
        out = ws[0]
        for w in ws[1:]:
            out = np.multiply.outer(out, w)
        return out

    def integrate(self, values: np.ndarray) -> complex:
        return np.sum(values * self.weights())


def default_grid(chart: tuple[str, ...], box, n: int | None = None) -> OrbitGrid:
    """256 nodes per axis in 2-d, 1024 in 1-d."""
    box = tuple(tuple(map(float, b)) for b in box)
    if n is None:
        n = 1024 if len(box) == 1 else 256
    return OrbitGrid(tuple(chart), box, (n,) * len(box))
