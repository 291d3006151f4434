"""Named verification suites with machine-readable reports.

Each suite returns {"suite": name, "checks": [...], "pass": bool} where a
check carries its measured value and the tolerance it was held to.  The
suites are deterministic for a fixed RunConfig (seeded randomness only).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from moyalorbit import covariance as cov
from moyalorbit import weyl
from moyalorbit.geometry import (
    SkewForm,
    Spacetime,
    act_on_form,
    parity,
    q_form,
    random_lorentz,
    sample_orbit,
    standard_skew,
    time_reversal,
)
from moyalorbit.grids import GridFunction, GridSpec
from moyalorbit.operators import cstar_identity_check, build_left_regular_matrix
from moyalorbit.oracle import GaussianFactor, SeparableGaussian
from moyalorbit.star import (
    involution,
    relative_l2,
    semiclassical_sweep,
    star_product,
)

SUITE_NAMES = ("weyl", "equivariance", "cstar", "semiclassical")

DEFAULT_TOLERANCES = {
    "weyl_phase": 1e-12,
    "weyl_assoc": 1e-12,
    "phi_equivariance": 1e-9,
    "gamma_covariance": 1e-9,
    "hom_defect": 1e-3,
    "adjoint_defect": 1e-6,
    "cstar_defect": 0.05,
    "positivity": 1e-6,
    "slope_d1": (0.9, 1.1),
    "slope_d2": (1.8, 2.2),
}


@dataclass(frozen=True)
class RunConfig:
    """Run parameters: spacetime, optional sigma0 override, grid, seed."""

    dim: int = 4
    metric: tuple = (1, -1, -1, -1)
    sigma0: tuple | None = None
    n: int = 64
    length: float = 8.0
    theta: float = 1.0
    seed: int = 0
    tolerances: dict = field(default_factory=dict)

    _KNOWN = {"dim", "metric", "sigma0", "grid", "seed", "tolerances", "out"}
    _GRID_KNOWN = {"n", "length", "theta"}

    @classmethod
    def from_dict(cls, data: dict) -> "RunConfig":
        unknown = set(data) - cls._KNOWN
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        grid = data.get("grid", {})
        unknown = set(grid) - cls._GRID_KNOWN
        if unknown:
            raise ValueError(f"unknown grid keys: {sorted(unknown)}")
        kwargs = {}
        if "dim" in data:
            kwargs["dim"] = int(data["dim"])
        if "metric" in data:
            kwargs["metric"] = tuple(int(m) for m in data["metric"])
        elif "dim" in data:
            d = int(data["dim"])
            kwargs["metric"] = tuple([1] + [-1] * (d - 1))
        if data.get("sigma0") is not None:
            kwargs["sigma0"] = tuple(tuple(float(v) for v in row) for row in data["sigma0"])
        if "n" in grid:
            kwargs["n"] = int(grid["n"])
        if "length" in grid:
            kwargs["length"] = float(grid["length"])
        if "theta" in grid:
            kwargs["theta"] = float(grid["theta"])
        if "seed" in data:
            kwargs["seed"] = int(data["seed"])
        if "tolerances" in data:
            kwargs["tolerances"] = dict(data["tolerances"])
        return cls(**kwargs)

    def spacetime(self) -> Spacetime:
        return Spacetime(self.dim, self.metric)

    def base_form(self) -> SkewForm:
        if self.sigma0 is not None:
            form = SkewForm(np.asarray(self.sigma0))
            form.assert_invertible()
            return form
        return standard_skew(self.spacetime())

    def tol(self, key: str):
        return self.tolerances.get(key, DEFAULT_TOLERANCES[key])


def _check(name: str, value: float, tol, mode: str = "le") -> dict:
    if mode == "le":
        ok = value <= tol
    elif mode == "ge":
        ok = value >= tol
    elif mode == "range":
        ok = tol[0] <= value <= tol[1]
    else:
        raise ValueError(mode)
    return {
        "name": name,
        "value": float(value),
        "tol": list(tol) if mode == "range" else float(tol),
        "mode": mode,
        "pass": bool(ok),
    }


def _plane_spacetime() -> Spacetime:
    return Spacetime(2, (1, -1))


def _plane_form() -> SkewForm:
    return SkewForm(np.array([[0.0, 1.0], [-1.0, 0.0]]))


def suite_weyl(cfg: RunConfig, n_draws: int = 100) -> dict:
    """Exact Weyl relations and associativity in the twisted group algebra."""
    st = cfg.spacetime()
    sigma0 = cfg.base_form()
    rng = np.random.default_rng(cfg.seed)
    forms = [s for _, s in sample_orbit(st, n_draws, cfg.seed, sigma0)]
    worst_phase = 0.0
    worst_assoc = 0.0
    for sigma in forms:
        alpha = rng.uniform(-1, 1, st.dim)
        beta = rng.uniform(-1, 1, st.dim)
        gamma = rng.uniform(-1, 1, st.dim)
        ua, ub, ug = (weyl.unit_u(v, sigma) for v in (alpha, beta, gamma))
        prod = weyl.mul(ua, ub)
        key = tuple(
            x + y for x, y in zip(weyl.covector_key(alpha), weyl.covector_key(beta))
        )
        a_exact = weyl.key_to_covector(weyl.covector_key(alpha))
        b_exact = weyl.key_to_covector(weyl.covector_key(beta))
        expected = weyl.e(q_form(sigma, a_exact, b_exact))
        if set(prod.terms) != {key}:
            worst_phase = np.inf
        else:
            worst_phase = max(worst_phase, abs(prod.terms[key] - expected))
        left = weyl.mul(weyl.mul(ua, ub), ug)
        right = weyl.mul(ua, weyl.mul(ub, ug))
        keys = set(left.terms) | set(right.terms)
        worst_assoc = max(
            worst_assoc,
            max(abs(left.terms.get(k, 0) - right.terms.get(k, 0)) for k in keys),
        )
    checks = [
        _check("weyl_relation_phase", worst_phase, cfg.tol("weyl_phase")),
        _check("generator_associativity", worst_assoc, cfg.tol("weyl_assoc")),
    ]
    return {"suite": "weyl", "checks": checks, "pass": all(c["pass"] for c in checks)}


def _gaussian_fibers(sample, spec, rng) -> cov.FiberedFunction:
    fibers = []
    for _ in range(len(sample)):
        g = SeparableGaussian(
            tuple(
                GaussianFactor(float(rng.uniform(-0.3, 0.3)), float(rng.uniform(1.1, 1.5)))
                for _ in range(spec.dim)
            )
        )
        fibers.append(g.sample(spec))
    return cov.FiberedFunction(sample, tuple(fibers))


def suite_equivariance(cfg: RunConfig, n_draws: int = 100) -> dict:
    """Phi^alpha equivariance and tau-gamma covariance at roundoff scale."""
    st = _plane_spacetime()
    spec = GridSpec(dim=2, n=cfg.n, length=cfg.length, theta=cfg.theta)
    spec1d = GridSpec(dim=1, n=cfg.n, length=cfg.length, theta=cfg.theta)
    rng = np.random.default_rng(cfg.seed + 1)
    int_alphas = [np.array(a, dtype=float) for a in ((1, 0), (0, 1), (1, 1), (1, -1))]
    worst_phi = 0.0
    for _ in range(n_draws):
        t1 = random_lorentz(st, rng, max_word=2)
        t2 = random_lorentz(st, rng, max_word=2)
        sample = cov.GroupSample((t1, t2))
        c = float(rng.uniform(-0.3, 0.3))
        w = float(rng.uniform(0.9, 1.3))
        psi = cov.RealLineFunction.from_callable(
            sample, spec1d, lambda t, r: np.exp(-np.pi * (r - c) ** 2 / w**2)
        )
        alpha = int_alphas[int(rng.integers(len(int_alphas)))]
        x = rng.uniform(-0.3, 0.3, 2)
        worst_phi = max(worst_phi, cov.check_phi_equivariance(alpha, x, psi, spec))
    reflections = [parity(st), time_reversal(st)]
    worst_gamma = 0.0
    for _ in range(n_draws):
        t = random_lorentz(st, rng, max_word=2)
        s = reflections[int(rng.integers(2))]
        sample = cov.GroupSample((t, t.compose(s)))
        f = _gaussian_fibers(sample, spec, rng)
        x = rng.uniform(-0.3, 0.3, 2)
        worst_gamma = max(worst_gamma, cov.check_gamma_covariance(s, x, f))
    checks = [
        _check("phi_equivariance", worst_phi, cfg.tol("phi_equivariance")),
        _check("gamma_covariance", worst_gamma, cfg.tol("gamma_covariance")),
    ]
    return {
        "suite": "equivariance",
        "checks": checks,
        "pass": all(c["pass"] for c in checks),
    }


def suite_cstar(cfg: RunConfig) -> dict:
    """Representation properties of the left-regular compression.

    Runs at N = 32 with theta = 2 so the lattice twist closes on the torus
    (theta N / L^2 integral); otherwise the finite compression is not a
    *-representation in operator norm.
    """
    sigma = _plane_form()
    spec = GridSpec(dim=2, n=32, length=cfg.length, theta=2.0)
    rng = np.random.default_rng(cfg.seed + 2)
    f = SeparableGaussian(
        (
            GaussianFactor(0.2, np.sqrt(2.0)),
            GaussianFactor(-0.1, np.sqrt(2.0), 0.1),
        )
    ).sample(spec)
    g = SeparableGaussian(
        (GaussianFactor(-0.3, 1.4, 0.05), GaussianFactor(0.1, 1.5))
    ).sample(spec)
    mf = build_left_regular_matrix(f, sigma, "f")
    mg = build_left_regular_matrix(g, sigma, "g")
    mfg = build_left_regular_matrix(star_product(f, g, sigma), sigma, "f x g")
    hom = np.linalg.norm(mfg.matrix - mf.matrix @ mg.matrix, 2) / (
        mf.spectral_norm() * mg.spectral_norm()
    )
    mfs = build_left_regular_matrix(involution(f), sigma, "f*")
    adj = np.linalg.norm(mfs.matrix - mf.adjoint(), 2) / mf.spectral_norm()
    rep = cstar_identity_check(f, sigma)
    checks = [
        _check("homomorphism_defect", hom, cfg.tol("hom_defect")),
        _check("adjoint_defect", adj, cfg.tol("adjoint_defect")),
        _check("cstar_identity_defect", rep["cstar_defect"], cfg.tol("cstar_defect")),
        _check(
            "positivity_min_eig",
            rep["min_eig"],
            -cfg.tol("positivity") * rep["norm_f"] ** 2,
            mode="ge",
        ),
    ]
    return {"suite": "cstar", "checks": checks, "pass": all(c["pass"] for c in checks)}


def suite_semiclassical(cfg: RunConfig, thetas=(1.0, 0.5, 0.25, 0.125, 0.0625)) -> dict:
    """Log-log slopes of the commutative-limit defects D1 and D2."""
    sigma = _plane_form()
    spec = GridSpec(dim=2, n=cfg.n, length=cfg.length, theta=1.0)
    f = SeparableGaussian(
        (GaussianFactor(0.5, 1.2), GaussianFactor(0.0, 1.3))
    ).sample(spec)
    g = SeparableGaussian(
        (GaussianFactor(-0.4, 1.1), GaussianFactor(0.3, 1.2))
    ).sample(spec)
    result = semiclassical_sweep(f, g, sigma, thetas)
    checks = [
        _check("slope_d1", result["slope_d1"], cfg.tol("slope_d1"), mode="range"),
        _check("slope_d2", result["slope_d2"], cfg.tol("slope_d2"), mode="range"),
        _check(
            "d2_monotone_decreasing",
            float(
                all(
                    b["d2"] < a["d2"]
                    for a, b in zip(result["rows"], result["rows"][1:])
                )
            ),
            1.0,
            mode="ge",
        ),
    ]
    return {
        "suite": "semiclassical",
        "checks": checks,
        "pass": all(c["pass"] for c in checks),
        "rows": result["rows"],
    }


def run_suite(name: str, cfg: RunConfig) -> dict:
    if name == "weyl":
        return suite_weyl(cfg)
    if name == "equivariance":
        return suite_equivariance(cfg)
    if name == "cstar":
        return suite_cstar(cfg)
    if name == "semiclassical":
        return suite_semiclassical(cfg)
    if name == "all":
        reports = [run_suite(n, cfg) for n in SUITE_NAMES]
        return {
            "suite": "all",
            "reports": reports,
            "pass": all(r["pass"] for r in reports),
        }
    raise KeyError(f"unknown suite: {name}")
