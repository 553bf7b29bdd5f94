import math

import numpy as np
import pytest
from hypothesis import given

from gsk import cocycles as C
from gsk import groups as G
from gsk.errors import CocycleError, DescriptorMismatchError

from conftest import elements_of

EXPS = C.bundled_exponents(1.5)
GS = G.galilei_schrodinger()


def test_eight_exponents():
    assert len(EXPS) == 8 and len({x.id for x in EXPS}) == 8


def test_xi_qg_example():
    g0 = C.xi_qg(1.0).base
    assert C.xi_qg(1.0)(g0.element(0, 0, 2), g0.element(1, 3, 0)) == 8.0


def test_xi_gs2_example():
    assert C.xi_gs2()(GS.element(0, 1, 0, 0), GS.element(0, 0, 0, math.log(2))) == pytest.approx(0.5, abs=1e-15)


def test_coboundary_example_m2():
    g1, g2 = GS.element(0, 1, 1, 0), GS.element(1, 2, 3, 0)
    assert C.xi_gs(2.0)(g1, g2) == 5.0
    assert C.xi_gs1(2.0)(g1, g2) == -4.0
    z = C.zeta_m(2.0)
    assert (z(g1 * g2), z(g1), z(g2)) == (16.0, 1.0, 6.0)
    assert C.coboundary_defect(C.xi_gs(2.0), C.xi_gs1(2.0), C.zeta_m(2.0), g1, g2) == 0.0


@pytest.mark.parametrize("xi", EXPS, ids=lambda x: x.id)
def test_normalized(xi):
    @given(elements_of(xi.base))
    def check(g):
        e = xi.base.identity()
        assert xi(e, g) == 0 and xi(g, e) == 0
        assert C.cocycle_defect(xi, g, g, e) == 0

    check()


@pytest.mark.parametrize("xi", EXPS, ids=lambda x: x.id)
def test_cocycle_identity(xi):
    @given(elements_of(xi.base), elements_of(xi.base), elements_of(xi.base))
    def check(g1, g2, g3):
        assert abs(C.cocycle_defect(xi, g1, g2, g3)) <= 1e-9

    check()


@pytest.mark.parametrize("xa,xb,z", [
    (C.xi_gs(1.5), C.xi_gs1(1.5), C.zeta_m(1.5)),
    (C.xi_gs2(), C.zero_exponent(GS), C.zeta_t()),
    (C.xi_sw(), C.zero_exponent(G.affine_prime()), C.zeta_s()),
    (C.xi_hpq(), C.xi_wh(), C.zeta_wh()),
], ids=["gs-gs1", "gs2-trivial", "sw-trivial", "hpq-wh"])
def test_coboundary_relations(xa, xb, z):
    assert C.max_coboundary_defect(xa, xb, z, 1000, seed=3) <= 1e-12
    e = xa.base.identity()
    assert C.coboundary_defect(xa, xb, z, e, e) == 0


def test_wh_antisymmetric():
    t2 = G.translations()
    g, h = t2.element(0.3, -1.2), t2.element(1.7, 0.4)
    assert C.xi_wh()(g, h) == pytest.approx(-C.xi_wh()(h, g), abs=1e-15)


def test_not_a_cocycle_rejected():
    bad = C.Exponent("BAD", G.translations(), lambda g, h: g[0] * h[0] * h[1])
    with pytest.raises(CocycleError):
        C.central_extend(G.translations(), bad)


def test_mismatched_base():
    with pytest.raises(DescriptorMismatchError):
        C.xi_wh()(GS.identity(), GS.identity())


BUNDLED = {
    "XI_GS": G.galilei_schrodinger_mass(1.5), "XI_GS1": G.galilei_schrodinger_mass_prime(1.5),
    "XI_GS2": G.galilei_schrodinger_trivial(), "XI_HPQ": G.heisenberg(),
    "XI_WH": G.weyl_heisenberg(), "XI_SW": G.stockwell(), "XI_QG": G.quantum_galilei(1.5),
}


@pytest.mark.parametrize("xi", [x for x in EXPS if x.id in BUNDLED], ids=lambda x: x.id)
def test_central_extension_reproduces_bundled(xi, rng):
    ext, ref = C.central_extend(xi.base, xi), BUNDLED[xi.id]
    assert ext.arity == xi.base.arity + 1
    for _ in range(1000):
        p1, p2 = G.random_params(ext, rng), G.random_params(ext, rng)
        np.testing.assert_allclose(ext.law(p1, p2), ref.law(p1, p2), rtol=1e-12, atol=1e-12)
    assert G.verify_matrix_homomorphism(ext, 200, seed=1).passed


def test_zero_exponent_gives_direct_product():
    ext = C.central_extend(G.wavelet(), C.zero_exponent(G.wavelet()))
    g, h = ext.element(0.4, 1.0, 0.3), ext.element(-0.1, 2.0, -0.2)
    gh = g * h
    assert gh["theta"] == pytest.approx(0.3)
    assert gh.params[1:] == (G.wavelet().element(1.0, 0.3) * G.wavelet().element(2.0, -0.2)).params
    assert ext.matrix is None


def test_extension_inverse(rng):
    ext = C.central_extend(GS, C.xi_gs(1.5))
    for _ in range(100):
        g = G.random_element(ext, rng)
        assert G.params_distance(g * G.inverse(g), ext.identity()) <= 1e-12
