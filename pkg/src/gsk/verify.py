"""Seeded verification suites, one check per invariant.

Each check reports the worst defect over its samples against a fixed
tolerance. Suites draw group elements from the box |linear| <= 2,
|log-dilation| <= 1 unless noted.
"""

from __future__ import annotations

import math

import numpy as np

from . import cocycles as C
from . import dual_orbits as D
from . import groups as G
from . import representations as R
from . import transforms as T
from .embeddings import direct_embeddings, embed, flowchart_atlas, wh_intertwiner
from .errors import DomainError, InvalidSampleCountError
from .groups import compose, inverse, to_matrix
from .report import Check, Report

SUITES = ("groups", "cocycles", "orbits", "reps", "transforms")

INVARIANTS = {
    "groups": ("matrix_homomorphism", "associativity", "inverse_round_trip", "identity",
               "embedding_homomorphism", "wh_intertwiner"),
    "cocycles": ("cocycle_identity", "normalization", "gs_gs1_equivalence", "gs2_trivial",
                 "sw_trivial", "hpq_wh_equivalence", "central_extension_law",
                 "central_extension_matrix"),
    "orbits": ("action_property", "orbit_invariance", "jacobian", "gms_scaling",
               "chart_round_trip"),
    "reps": ("homomorphism", "projective", "unitarity", "v_aff_insensitivity",
             "restriction_shear", "factorization_wavelet", "factorization_heisenberg",
             "factorization_stockwell", "hermite_factorization", "chart_equivalence"),
    "transforms": ("linearity", "cwt_covariance", "stft_energy", "stockwell_marginal",
                   "shearlet_dual_path", "cwt_round_trip", "admissibility"),
}

# mass used by the suites; 1 would hide misplaced factors of M
MASS = 1.5


def _rel(x, ref) -> float:
    x, ref = np.asarray(x, dtype=complex), np.asarray(ref, dtype=complex)
    return float(np.max(np.abs(x - ref) / np.maximum(1.0, np.abs(ref))))


def _check(suite: str, name: str, defect: float, tol: float) -> Check:
    return Check(f"{suite}.{name}", float(defect), tol)


# ---------------------------------------------------------------------------


def groups_suite(seed: int, samples: int) -> list[Check]:
    rng = np.random.default_rng(seed)
    descs = G.bundled_descriptors(M=MASS, p=0.5)
    hom = assoc = rt = ident = 0.0
    for d in descs:
        hom = max(hom, G.verify_matrix_homomorphism(d, samples, int(rng.integers(2**31))).defect)
        e = d.identity()
        for _ in range(samples):
            g1, g2, g3 = (G.random_element(d, rng) for _ in range(3))
            assoc = max(assoc, _rel((g1 * g2 * g3).params, (g1 * (g2 * g3)).params))
            rt = max(rt, _rel((g1 * inverse(g1)).params, e.params),
                     _rel((inverse(g1) * g1).params, e.params))
            ident = max(ident, _rel((g1 * e).params, g1.params), _rel((e * g1).params, g1.params))
    emb = 0.0
    for e in flowchart_atlas(MASS, 0.5) + direct_embeddings(MASS):
        for _ in range(samples):
            g1, g2 = G.random_element(e.source, rng), G.random_element(e.source, rng)
            emb = max(emb, _rel(embed(g1 * g2, e).params, (embed(g1, e) * embed(g2, e)).params))
    S = wh_intertwiner(MASS)
    Sinv = np.linalg.inv(S)
    wh = G.weyl_heisenberg()
    to_gmsp = next(e for e in flowchart_atlas(MASS) if e.source == wh)
    whd = 0.0
    for _ in range(samples):
        g = G.random_element(wh, rng)
        whd = max(whd, G.matrix_relative_error(S @ to_matrix(g) @ Sinv, to_matrix(embed(g, to_gmsp))))
    return [
        _check("groups", "matrix_homomorphism", hom, 1e-12),
        _check("groups", "associativity", assoc, 1e-9),
        _check("groups", "inverse_round_trip", rt, 1e-12),
        _check("groups", "identity", ident, 1e-15),
        _check("groups", "embedding_homomorphism", emb, 1e-12),
        _check("groups", "wh_intertwiner", whd, 1e-12),
    ]


def cocycles_suite(seed: int, samples: int) -> list[Check]:
    rng = np.random.default_rng(seed)
    exps = C.bundled_exponents(MASS)
    cyc = max(C.max_cocycle_defect(xi, samples, int(rng.integers(2**31))) for xi in exps)
    norm = 0.0
    for xi in exps:
        e = xi.base.identity()
        for _ in range(min(samples, 100)):
            g = G.random_element(xi.base, rng)
            norm = max(norm, abs(xi(e, g)), abs(xi(g, e)))
    gs, affp = G.galilei_schrodinger(), G.affine_prime()

    def cob(xa, xb, z):
        return C.max_coboundary_defect(xa, xb, z, samples, int(rng.integers(2**31)))

    law = mat = 0.0
    bundled = {"XI_GS": G.galilei_schrodinger_mass(MASS), "XI_GS1": G.galilei_schrodinger_mass_prime(MASS),
               "XI_GS2": G.galilei_schrodinger_trivial(), "XI_HPQ": G.heisenberg(),
               "XI_WH": G.weyl_heisenberg(), "XI_SW": G.stockwell(), "XI_QG": G.quantum_galilei(MASS)}
    for xi in exps:
        if xi.id not in bundled:
            continue
        ext, ref = C.central_extend(xi.base, xi), bundled[xi.id]
        for _ in range(samples):
            p1, p2 = G.random_params(ext, rng), G.random_params(ext, rng)
            law = max(law, _rel(ext.law(p1, p2), ref.law(p1, p2)))
        mat = max(mat, G.verify_matrix_homomorphism(ext, samples, int(rng.integers(2**31))).defect)
    return [
        _check("cocycles", "cocycle_identity", cyc, 1e-9),
        _check("cocycles", "normalization", norm, 1e-15),
        _check("cocycles", "gs_gs1_equivalence", cob(C.xi_gs(MASS), C.xi_gs1(MASS), C.zeta_m(MASS)), 1e-12),
        _check("cocycles", "gs2_trivial", cob(C.xi_gs2(), C.zero_exponent(gs), C.zeta_t()), 1e-12),
        _check("cocycles", "sw_trivial", cob(C.xi_sw(), C.zero_exponent(affp), C.zeta_s()), 1e-12),
        _check("cocycles", "hpq_wh_equivalence", cob(C.xi_hpq(), C.xi_wh(), C.zeta_wh()), 1e-12),
        _check("cocycles", "central_extension_law", law, 1e-12),
        _check("cocycles", "central_extension_matrix", mat, 1e-12),
    ]


def _random_dual_point(group: str, rng, kappa: float = 0.7) -> D.DualPoint:
    if group == "GMS":
        E, p = rng.uniform(-2, 2, 2)
        return D.DualPoint(group, (kappa, E, p), MASS)
    if group == "GS":
        return D.DualPoint(group, (rng.uniform(-2, 2), rng.choice([-1, 1]) * rng.uniform(0.2, 2)))
    return D.DualPoint(group, tuple(rng.uniform(-2, 2, 2)))


def _chart_kw(x: D.DualPoint) -> dict:
    if x.group == "GMS":
        return {"kappa": x.coords[0], "M": x.M}
    if x.group == "HEIS":
        return {"s": x.coords[0]}
    return {}


def orbits_suite(seed: int, samples: int) -> list[Check]:
    rng = np.random.default_rng(seed)
    act = jac = rt = scale = 0.0
    changes = 0
    for grp in D.DUAL_GROUPS:
        for _ in range(samples):
            h1, h2 = D.random_factor_element(grp, rng), D.random_factor_element(grp, rng)
            x = _random_dual_point(grp, rng)
            a = D.dual_act(h1, D.dual_act(h2, x)).coords
            b = D.dual_act(compose(h1, h2), x).coords
            act = max(act, _rel(a, b))
            if grp in ("GS", "GMS"):
                y = D.to_orbit_coords(x)
                back = D.from_orbit_coords(grp, y, **_chart_kw(x)).coords
                rt = max(rt, _rel(back, x.coords))
        for _ in range(max(1, samples // 10)):
            x = _random_dual_point(grp, rng)
            walk = D.orbit_walk(x, 100, int(rng.integers(2**31)))
            labels = {D.orbit_id(y) for y in walk}
            changes += len(labels) - 1
        charts = [None, "E"] if grp == "GAFF" else [None]
        for chart in charts:
            for _ in range(100):
                h = D.random_factor_element(grp, rng)
                x = _random_dual_point(grp, rng)
                y = (x.coords[0],) if chart == "E" else D.to_orbit_coords(x)
                kw = _chart_kw(x)
                num = D.numerical_jacobian(h, y, grp, chart=chart, **kw)
                ref = D.measure_jacobian(grp, h, chart)
                jac = max(jac, abs(num - ref) / ref)
    for _ in range(samples):
        h = D.random_factor_element("GMS", rng)
        x = _random_dual_point("GMS", rng, kappa=float(rng.choice([-1, 1]) * rng.uniform(0.3, 2)))
        q, E, p = x.coords
        q2, E2, p2 = D.dual_act(h, x).coords
        lhs = E2 - p2 * p2 / (2 * q2 * MASS)
        rhs = math.exp(-2 * h.params[1]) * (E - p * p / (2 * q * MASS))
        scale = max(scale, abs(lhs - rhs) / max(1.0, abs(rhs)))
    return [
        _check("orbits", "action_property", act, 1e-10),
        _check("orbits", "orbit_invariance", changes, 0.0),
        _check("orbits", "jacobian", jac, 1e-6),
        _check("orbits", "gms_scaling", scale, 1e-10),
        _check("orbits", "chart_round_trip", rt, 1e-12),
    ]


def random_vector(dim: int, rng) -> R.AnalyticVector:
    X = rng.normal(size=(dim, dim))
    Y = rng.normal(size=(dim, dim))
    A = -(X @ X.T + 0.5 * np.eye(dim)) + 0.5j * (Y + Y.T)
    b = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    return R.AnalyticVector(A, b, complex(rng.normal(), rng.normal()))


def unitarity_cases(kappa: float = 0.7):
    """(rep, element, v1, v2) with moderate elements and concentrated Gaussians."""
    cases = []
    for s in (1, -1):
        c = 3.0 * s
        g2 = R.AnalyticVector.gaussian((0.0, c), 2.0)
        h2 = R.AnalyticVector.gaussian((0.3, c + 0.2), 2.0, (0.5, -0.2))
        g1 = R.AnalyticVector.gaussian(c, 2.0)
        h1 = R.AnalyticVector.gaussian(c - 0.2, 2.0, 0.4)
        cases += [
            (R.u_aff(s), G.affine_galilei().element(0.5, 0.3, 0.2, 0.2, -0.1), g2, h2),
            (R.v_aff(s), G.affine_galilei().element(0.4, 0.3, 0.2, 0.2, -0.3), g1, h1),
            (R.u_shear(s), G.shearlet().element(math.exp(0.3), 0.2, 0.4, -0.3), g2, h2),
            (R.u_wav(s), G.wavelet().element(0.5, -0.3), g1, h1),
            (R.u_gms(s, kappa, MASS), G.galilei_schrodinger_mass(MASS).element(0.2, 0.4, -0.3, 0.2, 0.1), g2, h2),
            (R.u_gs(s), G.galilei_schrodinger().element(0.3, -0.2, 0.1, 0.05), g2, h2),
            (R.u_gts(s), G.galilei_schrodinger_trivial().element(0.1, 0.3, -0.2, 0.1, 0.05), g2, h2),
            (R.u_gts(s, "tp"), G.galilei_schrodinger_trivial().element(0.1, 0.0, 1.0, 0.0, 0.3), g2, h2),
            (R.u_sw(s), G.stockwell().element(0.1, math.exp(-0.3), 1.0), g1, h1),
        ]
    g1 = R.AnalyticVector.gaussian(0.5, 1.0)
    h1 = R.AnalyticVector.gaussian(0.2, 1.5, 0.7)
    cases.append((R.u_heis(kappa), G.heisenberg().element(0.3, 0.5, -0.4), g1, h1))
    return cases


def reps_suite(seed: int, samples: int) -> list[Check]:
    rng = np.random.default_rng(seed)
    n = min(samples, 500)
    kappa = 0.7
    true_reps = [R.u_gms(1, kappa, MASS), R.u_gms(-1, -kappa, MASS), R.u_heis(kappa),
                 R.u_aff(1), R.u_aff(-1), R.v_aff(1), R.v_aff(-1), R.u_shear(1), R.u_shear(-1),
                 R.u_gs(1), R.u_gs(-1), R.u_wav(1), R.u_sw(1), R.u_gts(1), R.u_gts(-1)]
    hom = 0.0
    for rep in true_reps:
        for _ in range(n):
            g1, g2 = G.random_element(rep.group, rng), G.random_element(rep.group, rng)
            hom = max(hom, R.rep_homomorphism_defect(rep, g1, g2, random_vector(rep.dim, rng)))
    proj = 0.0
    for rep in (R.u_gts_projective(1), R.u_gts_projective(-1)):
        for _ in range(n):
            g1, g2 = G.random_element(rep.group, rng), G.random_element(rep.group, rng)
            proj = max(proj, R.rep_homomorphism_defect(rep, g1, g2, random_vector(2, rng)))
    unit = max(R.unitarity_defect(rep, g, v1, v2) for rep, g, v1, v2 in unitarity_cases(kappa))

    vaff = 0.0
    gaff = G.affine_galilei()
    for s in (1, -1):
        rep = R.v_aff(s)
        for _ in range(n):
            b, a, v, sg, t = G.random_params(gaff, rng)
            a2, v2, s2 = G.random_params(G.galilei_schrodinger(), rng)[1:]
            x = random_vector(1, rng)
            vaff = max(vaff, R.vector_distance(R.apply_rep(rep, gaff.element(b, a, v, sg, t), x),
                                               R.apply_rep(rep, gaff.element(b, a2, v2, s2, t), x)))

    from .embeddings import find_embedding
    shear_to_gaff = find_embedding(G.shearlet(), gaff)
    rsh = 0.0
    for s in (1, -1):
        restricted, direct = R.restrict_rep(R.u_aff(s), shear_to_gaff), R.u_shear(s)
        for _ in range(n):
            g, x = G.random_element(G.shearlet(), rng), random_vector(2, rng)
            rsh = max(rsh, R.vector_distance(R.apply_rep(restricted, g, x), R.apply_rep(direct, g, x)))

    fac = {}
    herm = 0.0
    pts = R.u_aff(1).grid(64).points()
    for s in (1, -1):
        for f in R.bundled_factorizations(s, kappa * s, MASS):
            worst = 0.0
            for _ in range(n):
                g = G.random_element(f.restricted.group, rng)
                v = R.tensor(random_vector(1, rng), random_vector(1, rng))
                worst = max(worst, R.factorization_defect(f, v, g))
            fac[f.name] = max(fac.get(f.name, 0.0), worst)
            chi = R.AnalyticVector.gaussian(3.0 * s, 2.0)
            for k in range(5):
                g = G.random_element(f.restricted.group, rng)
                herm = max(herm, R.factorization_defect_pointwise(f, R.hermite_function(k), chi, g, pts))

    # the (t, p) chart is unitarily equivalent to the (E, p) chart via
    # psi(t, p) = |p| phi(t p^2, p)
    chart = 0.0
    for s in (1, -1):
        ep, tp = R.u_gs(s, "Ep"), R.u_gs(s, "tp")
        grid = tp.grid(32).points()
        for _ in range(20):
            g = G.random_element(G.galilei_schrodinger(), rng, linear=0.5, log=0.3)
            phi = random_vector(2, rng)

            def to_tp(f):
                return lambda y: np.abs(y[..., 1]) * f(np.stack([y[..., 0] * y[..., 1] ** 2, y[..., 1]], -1))

            lhs = tp.evaluate(g, to_tp(phi), grid)
            rhs = to_tp(R.apply_rep(ep, g, phi))(grid)
            chart = max(chart, float(np.max(np.abs(lhs - rhs)) / max(1.0, np.max(np.abs(rhs)))))
    return [
        _check("reps", "homomorphism", hom, 1e-12),
        _check("reps", "projective", proj, 1e-12),
        _check("reps", "unitarity", unit, 1e-6),
        _check("reps", "v_aff_insensitivity", vaff, 0.0),
        _check("reps", "restriction_shear", rsh, 1e-12),
        _check("reps", "factorization_wavelet", fac["wavelet"], 1e-12),
        _check("reps", "factorization_heisenberg", fac["heisenberg"], 1e-12),
        _check("reps", "factorization_stockwell", fac["stockwell"], 1e-12),
        _check("reps", "hermite_factorization", herm, 1e-12),
        _check("reps", "chart_equivalence", chart, 1e-12),
    ]


# ---------------------------------------------------------------------------
# transform fixtures


def band_limited_noise(n: int, dt: float, f_lo: float, f_hi: float, seed: int) -> np.ndarray:
    """Real periodic noise with flat random spectrum on the DFT bins in [f_lo, f_hi]."""
    rng = np.random.default_rng(seed)
    freqs = np.fft.rfftfreq(n, dt)
    spectrum = np.zeros(freqs.size, dtype=complex)
    band = (freqs >= f_lo) & (freqs <= f_hi)
    spectrum[band] = rng.normal(size=band.sum()) + 1j * rng.normal(size=band.sum())
    x = np.fft.irfft(spectrum, n)
    return x / np.std(x)


def shearlet_fixture(n_field: int = 64, n_grid: int = 64):
    E = np.linspace(-6, 6, n_field)
    p = np.linspace(0.1, 8, n_field)
    EE, PP = np.meshgrid(E, p, indexing="ij")
    field = T.Field2D(np.exp(-(EE - 0.5) ** 2 - 0.5 * (PP - 3) ** 2 + 1j * EE), E, p)
    window = R.AnalyticVector.gaussian((0.0, 3.0), (0.5, 1.0))
    grid = T.ShearletGrid(("a", np.linspace(-2, 2, n_grid)), ("b", np.linspace(-2, 2, n_grid)),
                          (("v", 0.3), ("sigma", 0.2)))
    return field, window, grid


def cwt_round_trip_error(seed: int, n: int = 1024, dt: float = 1 / 256, n_scales: int = 64) -> float:
    x = band_limited_noise(n, dt, 2.0, 40.0, seed)
    window = T.WindowSpec(T.MORLET)
    scales = T.scale_grid(window, 0.5, 100.0, n_scales)
    rec = T.cwt_synthesize(T.cwt(T.Signal1D(x, dt), window, scales))
    return T.relative_l2_error(rec.samples, x)


def stockwell_marginal_error(n: int = 256, dt: float = 1 / 128, n_freq: int = 64) -> float:
    t = dt * np.arange(n)
    sig = T.Signal1D(np.cos(2 * np.pi * 8 * t) + 0.5 * np.sin(2 * np.pi * 20 * t), dt, 0.25)
    S = T.stockwell(sig, n_freq=n_freq)
    nu = S.axis("frequency")
    ref = dt * np.fft.fft(sig.samples)[np.round(nu * n * dt).astype(int)] * np.exp(-2j * np.pi * nu * sig.t0)
    marg = T.stockwell_time_marginal(S)
    return float(np.max(np.abs(marg - ref)) / np.max(np.abs(ref)))


def transforms_suite(seed: int, samples: int) -> list[Check]:
    rng = np.random.default_rng(seed)
    n, dt = 256, 1 / 64
    x = T.Signal1D(band_limited_noise(n, dt, 1.0, 20.0, int(rng.integers(2**31))), dt)
    y = T.Signal1D(band_limited_noise(n, dt, 1.0, 20.0, int(rng.integers(2**31))), dt)
    al, be = 0.7 - 0.2j, -1.3 + 0.5j
    z = T.Signal1D(al * x.samples + be * y.samples, dt)
    lin = 0.0
    for kind in (T.CWT, T.STFT, T.STOCKWELL):
        cz, cx, cy = (T.analyze(kind, s).values for s in (z, x, y))
        lin = max(lin, float(np.max(np.abs(cz - (al * cx + be * cy)))) / max(1.0, float(np.max(np.abs(cz)))))
    field, window, grid = shearlet_fixture(32, 8)
    fields = [T.Field2D(v, field.E, field.p) for v in
              (field.values, np.conj(field.values) * 0.5)]
    cs = [T.shearlet(f, window, grid).values for f in fields]
    cz = T.shearlet(T.Field2D(al * fields[0].values + be * fields[1].values, field.E, field.p), window, grid).values
    lin = max(lin, float(np.max(np.abs(cz - (al * cs[0] + be * cs[1])))))

    k = 7
    w = T.cwt(x).values
    ws = T.cwt(T.Signal1D(np.roll(x.samples, k), dt)).values
    cov = float(np.max(np.abs(ws - np.roll(w, k, axis=1))))

    big = T.Signal1D(band_limited_noise(1024, 1 / 256, 1.0, 100.0, int(rng.integers(2**31))), 1 / 256)
    energy = abs(T.stft_energy(T.stft(big)) / big.norm() ** 2 - 1)

    field, window, grid = shearlet_fixture()
    a = T.shearlet(field, window, grid, "symbolic").values
    b = T.shearlet(field, window, grid, "pointwise").values
    shear = float(np.max(np.abs(a - b)) / max(1.0, np.max(np.abs(a))))

    adm = abs(T.admissibility_constant(T.WindowSpec(T.MEXICAN_HAT)) - 0.5)
    return [
        _check("transforms", "linearity", lin, 1e-10),
        _check("transforms", "cwt_covariance", cov, 1e-10),
        _check("transforms", "stft_energy", energy, 1e-2),
        _check("transforms", "stockwell_marginal", stockwell_marginal_error(), 1e-6),
        _check("transforms", "shearlet_dual_path", shear, 1e-10),
        _check("transforms", "cwt_round_trip", cwt_round_trip_error(int(rng.integers(2**31))), 1e-2),
        _check("transforms", "admissibility", adm, 1e-8),
    ]


_RUNNERS = {
    "groups": groups_suite,
    "cocycles": cocycles_suite,
    "orbits": orbits_suite,
    "reps": reps_suite,
    "transforms": transforms_suite,
}


def run_verify(suite: str, seed: int = 0, samples: int = 1000) -> Report:
    if suite != "all" and suite not in _RUNNERS:
        raise DomainError(f"unknown suite {suite!r}; expected one of {SUITES + ('all',)}")
    if samples < 1:
        raise InvalidSampleCountError(f"invalid sample count {samples}")
    report = Report(suite, seed)
    for name in (SUITES if suite == "all" else (suite,)):
        for check in _RUNNERS[name](seed, samples):
            report.add(check)
    return report
