"""Real exponents (2-cocycles), coboundaries and central extensions."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import groups as G
from .errors import CocycleError, DescriptorMismatchError, DomainError
from .groups import GroupDescriptor, GroupElement, compose

exp = math.exp

# coboundary conventions: delta zeta(g, g') is either
# zeta(g g') - zeta(g) - zeta(g')  or  zeta(g) + zeta(g') - zeta(g g')
PRODUCT_MINUS_FACTORS = "product-minus-factors"
FACTORS_MINUS_PRODUCT = "factors-minus-product"


@dataclass(frozen=True)
class Exponent:
    id: str
    base: GroupDescriptor
    func: Callable = field(compare=False, repr=False)
    M: float | None = None

    def __call__(self, g1: GroupElement, g2: GroupElement) -> float:
        return exponent_value(self, g1, g2)


@dataclass(frozen=True)
class CoboundaryFunction:
    id: str
    base: GroupDescriptor
    func: Callable = field(compare=False, repr=False)
    sign_convention: str = PRODUCT_MINUS_FACTORS
    M: float | None = None

    def __call__(self, g: GroupElement) -> float:
        _check_base(self.base, g)
        return self.func(g.params)

    def coboundary(self, g1: GroupElement, g2: GroupElement) -> float:
        d = self(compose(g1, g2)) - self(g1) - self(g2)
        return d if self.sign_convention == PRODUCT_MINUS_FACTORS else -d


def _check_base(base: GroupDescriptor, *gs: GroupElement) -> None:
    for g in gs:
        if g.group != base:
            raise DescriptorMismatchError(f"element of {g.group.tag}, expected {base.tag}")


# ---------------------------------------------------------------------------
# bundled exponents


def _mass(M):
    M = float(M)
    if not M > 0:
        raise DomainError(f"mass M must be positive, got {M}")
    return M


def xi_h() -> Exponent:
    """b v' on the (b, v) translation plane."""
    return Exponent("XI_H", G.translations(), lambda g, h: g[0] * h[1])


def xi_qg(M: float = 1.0) -> Exponent:
    M = _mass(M)
    return Exponent("XI_QG", G.galilei(),
                    lambda g, h: M * (g[2] * h[1] + 0.5 * h[0] * g[2] ** 2), M)


def xi_gs(M: float = 1.0) -> Exponent:
    M = _mass(M)

    def f(g, h):
        b, a, v, s = g
        B, A, V, S = h
        return M * (v * exp(s) * A + 0.5 * v * v * exp(2 * s) * B)

    return Exponent("XI_GS", G.galilei_schrodinger(), f, M)


def xi_gs1(M: float = 1.0) -> Exponent:
    M = _mass(M)

    def f(g, h):
        b, a, v, s = g
        B, A, V, S = h
        return 0.5 * M * (-v * V * B * exp(s) + v * A * exp(s) - a * V * exp(-s))

    return Exponent("XI_GS1", G.galilei_schrodinger(), f, M)


def xi_gs2() -> Exponent:
    def f(g, h):
        b, a, v, s = g
        B, A, V, S = h
        return a * exp(-s) * (1 - exp(-S)) - exp(s - S) * v * B

    return Exponent("XI_GS2", G.galilei_schrodinger(), f)


def xi_hpq() -> Exponent:
    """p q' on the (q, p) translation plane."""
    return Exponent("XI_HPQ", G.translations(), lambda g, h: g[1] * h[0])


def xi_wh() -> Exponent:
    return Exponent("XI_WH", G.translations(), lambda g, h: 0.5 * (g[1] * h[0] - h[1] * g[0]))


def xi_sw() -> Exponent:
    return Exponent("XI_SW", G.affine_prime(), lambda g, h: g[0] * g[1] * (1 - h[0]))


def zero_exponent(base: GroupDescriptor) -> Exponent:
    return Exponent("ZERO", base, lambda g, h: 0.0)


def bundled_exponents(M: float = 1.0) -> list[Exponent]:
    return [xi_h(), xi_qg(M), xi_gs(M), xi_gs1(M), xi_gs2(), xi_hpq(), xi_wh(), xi_sw()]


def zeta_m(M: float = 1.0) -> CoboundaryFunction:
    M = _mass(M)
    return CoboundaryFunction("ZETA_M", G.galilei_schrodinger(),
                              lambda g: 0.5 * M * g[1] * g[2], PRODUCT_MINUS_FACTORS, M)


def zeta_t() -> CoboundaryFunction:
    return CoboundaryFunction("ZETA_T", G.galilei_schrodinger(),
                              lambda g: g[1] * exp(-g[3]), FACTORS_MINUS_PRODUCT)


def zeta_s() -> CoboundaryFunction:
    return CoboundaryFunction("ZETA_S", G.affine_prime(),
                              lambda g: g[0] * g[1], FACTORS_MINUS_PRODUCT)


def zeta_wh() -> CoboundaryFunction:
    return CoboundaryFunction("ZETA_WH", G.translations(),
                              lambda g: 0.5 * g[0] * g[1], PRODUCT_MINUS_FACTORS)


# ---------------------------------------------------------------------------
# operations


def exponent_value(xi: Exponent, g1: GroupElement, g2: GroupElement) -> float:
    _check_base(xi.base, g1, g2)
    return float(xi.func(g1.params, g2.params))


def cocycle_defect(xi: Exponent, g1: GroupElement, g2: GroupElement, g3: GroupElement) -> float:
    """xi(g1,g2) + xi(g1 g2, g3) - xi(g2, g3) - xi(g1, g2 g3); zero for a 2-cocycle."""
    _check_base(xi.base, g1, g2, g3)
    return (xi(g1, g2) + xi(compose(g1, g2), g3)
            - xi(g2, g3) - xi(g1, compose(g2, g3)))


def coboundary_defect(xa: Exponent, xb: Exponent, z: CoboundaryFunction,
                      g1: GroupElement, g2: GroupElement) -> float:
    """(xa - xb)(g1, g2) minus the coboundary of ``z``; zero iff xa ~ xb via z."""
    if not (xa.base == xb.base == z.base):
        raise DescriptorMismatchError("exponents and coboundary live on different groups")
    return xa(g1, g2) - xb(g1, g2) - z.coboundary(g1, g2)


def max_cocycle_defect(xi: Exponent, n_samples: int = 1000, seed: int = 0) -> float:
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(n_samples):
        g1, g2, g3 = (G.random_element(xi.base, rng) for _ in range(3))
        worst = max(worst, abs(cocycle_defect(xi, g1, g2, g3)))
    return worst


def max_coboundary_defect(xa: Exponent, xb: Exponent, z: CoboundaryFunction,
                          n_samples: int = 1000, seed: int = 0) -> float:
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(n_samples):
        g1, g2 = (G.random_element(xa.base, rng) for _ in range(2))
        worst = max(worst, abs(coboundary_defect(xa, xb, z, g1, g2)))
    return worst


# faithful realizations known for particular extensions, keyed by
# (base id, exponent id); the factory receives the mass constant
_KNOWN_REALIZATIONS = {
    ("GS", "XI_GS"): G.galilei_schrodinger_mass,
    ("GS", "XI_GS1"): G.galilei_schrodinger_mass_prime,
    ("GS", "XI_GS2"): lambda M: G.galilei_schrodinger_trivial(),
    ("T2", "XI_HPQ"): lambda M: G.heisenberg(),
    ("T2", "XI_WH"): lambda M: G.weyl_heisenberg(),
    ("AFFPRIME", "XI_SW"): lambda M: G.stockwell(),
    ("G0", "XI_QG"): G.quantum_galilei,
}


def central_extend(base: GroupDescriptor, xi: Exponent, *, n_check: int = 64,
                   seed: int = 0, tol: float = 1e-9) -> GroupDescriptor:
    """Descriptor of the central extension (theta, g)(theta', g') = (theta+theta'+xi, g g').

    The exponent is fuzz-checked first. A matrix realization is attached when
    the pair is one of the bundled extensions.
    """
    if xi.base != base:
        raise DescriptorMismatchError(f"{xi.id} is defined on {xi.base.tag}, not {base.tag}")
    if n_check > 0:
        defect = max_cocycle_defect(xi, n_check, seed)
        if defect > tol:
            raise CocycleError(f"{xi.id} fails the cocycle identity (defect {defect:.3e})")

    f = xi.func
    base_law, base_inv = base.law, base.inverse_law

    def law(g, h):
        return (g[0] + h[0] + f(g[1:], h[1:]),) + tuple(base_law(g[1:], h[1:]))

    def inv(g):
        gi = tuple(base_inv(g[1:]))
        return (-g[0] - f(g[1:], gi),) + gi

    known = _KNOWN_REALIZATIONS.get((base.id, xi.id))
    ref = known(xi.M if xi.M is not None else 1.0) if known else None
    constants = (("M", xi.M),) if xi.M is not None else ()
    return GroupDescriptor(
        f"EXT[{base.tag},{xi.id}]",
        ("theta",) + base.param_names,
        (G.LINEAR,) + base.param_kinds,
        ref.matrix_dim if ref else 0,
        constants=base.constants + constants,
        law=law,
        inverse_law=inv,
        matrix=ref.matrix if ref else None,
    )
