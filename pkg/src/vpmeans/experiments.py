"""Verification suites.

Each suite sweeps one family of computable identities or bound shapes,
collects per-cell rows into an ExperimentReport, re-runs its most sensitive
cell at doubled quadrature resolution as a self-check, and judges pass/fail
against the configured windows.  All thresholds are existential stand-ins
for constants that are never pinned down analytically, so the windows are
generous and live in configuration rather than in the math.
"""

import datetime
import hashlib
import math
import os
import tempfile
from dataclasses import dataclass, field

import numpy as np

from .function_space import (INF, ZonalSpectral, lp_norms_batch, make_corpus,
                             zonal_project, zonal_synthesis)
from .kernel import (alpha_voronovskaya, kernel_norm_constant, kernel_spec,
                     lemma_integral, multiplier_sequence, multiplier_via_quadrature,
                     multiplier_weight, vpm_kernel_eval)
from .operators import (sample_zonal_on_grid, translate_direct, vpm_grid,
                        zonal_point_function)
from .quadrature import gauss_legendre, integrate_theta, sphere_grid
from .smoothness import k_functional_estimate, modulus
from .special import q_envelope, q_table

__all__ = [
    "ExperimentReport",
    "Workspace",
    "run_multiplier_identity_suite",
    "run_lemma_suite",
    "run_voronovskaya_suite",
    "run_converse_suite",
    "run_delayed_max_suite",
    "run_modulus_suite",
    "run_selftest_suite",
    "measure_envelope_constant",
    "config_hash",
]

DEGENERATE_FLOOR = 1e-12


def config_hash(config_mapping):
    """Short stable hash of a flat configuration mapping."""
    canon = ";".join(f"{k}={config_mapping[k]}" for k in sorted(config_mapping))
    return hashlib.sha256(canon.encode("utf-8")).hexdigest()[:12]


def _fmt(value):
    if isinstance(value, float):
        return format(value, ".17g")
    return str(value)


@dataclass
class ExperimentReport:
    """Tabular result of one suite run.

    The CSV body (header plus rows) is deterministic for a fixed
    configuration; the generation timestamp lives in a leading comment line
    so that byte-identity of reruns can be checked on everything below it.
    """
    suite: str
    columns: list
    rows: list
    metadata: dict
    passed: bool
    measured: dict = field(default_factory=dict)

    def csv_body(self):
        lines = [",".join(self.columns)]
        for row in self.rows:
            lines.append(",".join(_fmt(row[c]) for c in self.columns))
        return "\n".join(lines) + "\n"

    def write_csv(self, path):
        """Atomic write: compose to a temp file in the target directory and
        rename over the destination."""
        header = (f"# suite={self.suite} config_hash={self.metadata.get('config_hash', '')} "
                  f"generated={self.metadata.get('generated', '')}\n")
        directory = os.path.dirname(os.path.abspath(path)) or "."
        fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
        try:
            with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as handle:
                handle.write(header)
                handle.write(self.csv_body())
            os.replace(tmp, path)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise


def _metadata(config=None):
    from . import __version__
    cfg = dict(config or {})
    return {
        "config_hash": config_hash(cfg),
        "generated": datetime.datetime.now(datetime.timezone.utc).isoformat(),
        "version": __version__,
        "config": cfg,
    }


def _window(values):
    """(min, max, max/min) of a positive sequence."""
    arr = np.asarray(list(values), dtype=float)
    lo, hi = float(arr.min()), float(arr.max())
    return lo, hi, hi / lo if lo > 0 else math.inf


# ---------------------------------------------------------------------------
# workspace: corpus functions in spectral form at a fixed dimension


class Workspace:
    """Prepared corpus at one dimension: every function id resolved to a
    spectral representation on a shared band limit K = 4 n_max + 64, with
    exact coefficients for band-limited members and quadrature projection
    for the rest."""

    def __init__(self, d, n_max, seed=42, band_limit=None, projection_order=None):
        self.d = d
        self.lam = (d - 2) / 2.0
        self.seed = seed
        self.band_limit = band_limit if band_limit is not None else 4 * n_max + 64
        self.projection_order = projection_order or (2 * self.band_limit + 32)
        self._profiles = {m.tag: m for m in make_corpus(d, seed=seed)}
        self._spectral = {}

    def profile(self, function_id):
        try:
            return self._profiles[function_id]
        except KeyError:
            raise LookupError(f"unknown corpus function id: {function_id!r}") from None

    def spectral(self, function_id):
        cached = self._spectral.get(function_id)
        if cached is not None:
            return cached
        member = self.profile(function_id)
        if member.coeffs is not None:
            coeffs = np.zeros(self.band_limit + 1)
            coeffs[:len(member.coeffs)] = member.coeffs
            coeffs.setflags(write=False)
            out = ZonalSpectral(lam=self.lam, coeffs=coeffs, projection_residual=0.0)
        else:
            out = zonal_project(member, self.band_limit, self.lam,
                                order=self.projection_order)
        self._spectral[function_id] = out
        return out


# ---------------------------------------------------------------------------
# suites


def run_multiplier_identity_suite(d, n_max, tol=1e-9, order=None, config=None):
    """Closed-form multiplier weights against their quadrature route for all
    n <= n_max and k <= n + 4, including the exact zeros at k > n."""
    lam = (d - 2) / 2.0
    rows = []
    worst = (0.0, None)
    for n in range(n_max + 1):
        for k in range(n + 5):
            closed = multiplier_weight(n, k, lam)
            quad = multiplier_via_quadrature(n, k, d, order=order)
            diff = abs(closed - quad)
            rows.append({"d": d, "n": n, "k": k, "closed_form": closed,
                         "quadrature": quad, "abs_diff": diff})
            if diff > worst[0]:
                worst = (diff, (n, k))
    # refinement self-check on the most sensitive cell
    refine_ok = True
    if worst[1] is not None:
        n, k = worst[1]
        doubled = multiplier_via_quadrature(n, k, d, order=2 * (n + k + 32))
        refine_ok = abs(doubled - multiplier_weight(n, k, lam)) <= tol
    max_diff = max(r["abs_diff"] for r in rows)
    passed = max_diff <= tol and refine_ok
    meta = _metadata(config)
    meta["refinement_check"] = refine_ok
    return ExperimentReport(
        suite="multipliers",
        columns=["d", "n", "k", "closed_form", "quadrature", "abs_diff"],
        rows=rows, metadata=meta, passed=passed,
        measured={"max_abs_diff": max_diff, "tolerance": tol},
    )


_LEMMA_QUANTITIES = ("fourth_moment", "neg_lambda", "neg_two_over_m_7", "norm_constant")


def run_lemma_suite(d, n_list, window=2.0, config=None):
    """Kernel moment scalings: n^2 * fourth moment, n^(-lam/2) * inverse-power
    moment, n^(-1/7) * the m = 7 variant, and n^((d-1)/2) * I_{n,d}.  Each
    normalized sequence must stay in a max/min window over the upper half of
    n_list."""
    lam = (d - 2) / 2.0
    n_list = sorted(n_list)
    rows = []
    series = {q: [] for q in _LEMMA_QUANTITIES}
    for n in n_list:
        vals = {
            "fourth_moment": (lemma_integral(n, d, "fourth_moment"), n ** 2),
            "neg_lambda": (lemma_integral(n, d, "neg_lambda"), n ** (-lam / 2.0)),
            "neg_two_over_m_7": (lemma_integral(n, d, "neg_two_over_m", m=7), n ** (-1.0 / 7.0)),
            "norm_constant": (math.exp(kernel_norm_constant(n, d)), n ** ((d - 1) / 2.0)),
        }
        for quantity, (value, scale) in vals.items():
            normalized = value * scale
            series[quantity].append(normalized)
            rows.append({"d": d, "n": n, "quantity": quantity,
                         "value": value, "normalized": normalized})
    upper = len(n_list) // 2
    windows = {}
    passed = True
    for quantity, seq in series.items():
        lo, hi, ratio = _window(seq[upper:])
        windows[quantity] = {"min": lo, "max": hi, "ratio": ratio}
        passed = passed and ratio <= window
    # refinement self-check: largest n, most singular moment
    n_top = n_list[-1]
    coarse = lemma_integral(n_top, d, "neg_lambda")
    fine = lemma_integral(n_top, d, "neg_lambda", order=4 * (n_top + 64))
    refine_ok = abs(fine - coarse) <= 1e-6 * abs(coarse)
    passed = passed and refine_ok
    meta = _metadata(config)
    meta["refinement_check"] = refine_ok
    return ExperimentReport(
        suite="lemmas",
        columns=["d", "n", "quantity", "value", "normalized"],
        rows=rows, metadata=meta, passed=passed,
        measured={"windows": windows, "window_bound": window},
    )


def run_voronovskaya_suite(d, n_list, k_max_rule=None, window=3.0,
                           alpha_bounds=(0.5, 2.0), config=None):
    """Second-order expansion of the means on single harmonics: the residual

        |omega_{n,k} - 1 + alpha(n) k (k+d-2)|

    normalized by n^-2 k^2 (k+d-2)^2 must sit in a bounded window over
    1 <= k <= k_max_rule(n), and n * alpha(n) must stay inside alpha_bounds."""
    lam = (d - 2) / 2.0
    if k_max_rule is None:
        k_max_rule = lambda n: math.isqrt(n)
    rows = []
    normalized_all = []
    n_alpha = {}
    for n in sorted(n_list):
        alpha = alpha_voronovskaya(n, d)
        n_alpha[n] = n * alpha
        for k in range(k_max_rule(n) + 1):
            eig = k * (k + d - 2)
            residual = abs(multiplier_weight(n, k, lam) - 1.0 + alpha * eig)
            normalized = residual / (n ** -2.0 * eig ** 2) if k >= 1 else 0.0
            if k >= 1:
                normalized_all.append(normalized)
            rows.append({"d": d, "n": n, "k": k, "alpha_n": alpha,
                         "n_alpha": n * alpha, "residual": residual,
                         "normalized": normalized})
    lo, hi, ratio = _window(normalized_all)
    alpha_ok = all(alpha_bounds[0] <= v <= alpha_bounds[1] for v in n_alpha.values())
    # refinement self-check: alpha at the largest n, tighter tolerance
    n_top = max(n_list)
    a1 = alpha_voronovskaya(n_top, d)
    a2 = alpha_voronovskaya(n_top, d, rtol=1e-11)
    refine_ok = abs(a1 - a2) <= 1e-6 * abs(a2)
    passed = ratio <= window and alpha_ok and refine_ok
    meta = _metadata(config)
    meta["refinement_check"] = refine_ok
    return ExperimentReport(
        suite="voronovskaya",
        columns=["d", "n", "k", "alpha_n", "n_alpha", "residual", "normalized"],
        rows=rows, metadata=meta, passed=passed,
        measured={"normalized_window": {"min": lo, "max": hi, "ratio": ratio},
                  "n_alpha": {str(n): v for n, v in sorted(n_alpha.items())},
                  "window_bound": window, "alpha_bounds": list(alpha_bounds)},
    )


def _operator_error_norms(f, degrees, p, d, order=None):
    """||V_n f - f||_p for a batch of operator degrees n."""
    cols = np.column_stack([
        f.coeffs * (multiplier_sequence(n, f.lam, f.band_limit) - 1.0)
        for n in degrees
    ])
    return lp_norms_batch(cols, f.lam, p, d, order=order)


def run_converse_suite(corpus, p_list, n_list, d, window=25.0, seed=42,
                       theta_grid_size=64, chain_powers=(2, 7),
                       chain_slack=1e-8, config=None):
    """Operator error against the modulus at the matched scale: for each
    corpus function and p, r_n = ||V_n f - f||_p / omega(f, n^(-1/2))_p must
    stay positive with max r / min r <= window over n_list.  Functions whose
    modulus is numerically zero (constants) are flagged degenerate and
    excluded.  The chain bound ||f - V_n^m f||_p <= m ||f - V_n f||_p is
    checked along the way."""
    ws = Workspace(d, max(n_list), seed=seed)
    n_list = sorted(n_list)
    rows = []
    ratio_windows = {}
    chain_worst = -math.inf
    passed = True
    for fid in corpus:
        f = ws.spectral(fid)
        for p in p_list:
            errs = _operator_error_norms(f, n_list, p, d)
            ratios = []
            for n, e_n in zip(n_list, errs):
                w_n = modulus(f, n ** -0.5, p, d, theta_grid_size=theta_grid_size)
                degenerate = w_n <= DEGENERATE_FLOOR
                ratio = float("nan") if degenerate else float(e_n) / w_n
                rows.append({"function_id": fid, "p": p, "n": n,
                             "e_n": float(e_n), "w_n": w_n, "ratio": ratio,
                             "flag": "degenerate" if degenerate else "ok"})
                if not degenerate:
                    ratios.append(ratio)
            if ratios:
                lo, hi, ratio = _window(ratios)
                ratio_windows[f"{fid}|p={p}"] = {"min": lo, "max": hi, "ratio": ratio}
                passed = passed and lo > 0 and ratio <= window
            # chain bound at the median degree
            n_mid = n_list[len(n_list) // 2]
            base = _operator_error_norms(f, [n_mid], p, d)[0]
            w = multiplier_sequence(n_mid, f.lam, f.band_limit)
            for m in chain_powers:
                lhs = lp_norms_batch(f.coeffs * (1.0 - w ** m), f.lam, p, d)[0]
                excess = float(lhs - m * base)
                chain_worst = max(chain_worst, excess)
                passed = passed and excess <= chain_slack
    # refinement self-check: the largest-ratio cell recomputed with a denser
    # modulus grid; the grid max may only move by a grid-resolution amount
    refine_ok = True
    if ratio_windows:
        worst_key = max(ratio_windows, key=lambda k: ratio_windows[k]["ratio"])
        fid, p_part = worst_key.split("|p=")
        p = float(p_part) if p_part != "inf" else INF
        f = ws.spectral(fid)
        n_top = n_list[-1]
        w1 = modulus(f, n_top ** -0.5, p, d, theta_grid_size=theta_grid_size)
        w2 = modulus(f, n_top ** -0.5, p, d, theta_grid_size=2 * theta_grid_size)
        refine_ok = abs(w1 - w2) <= 0.02 * abs(w2)
        passed = passed and refine_ok
    meta = _metadata(config)
    meta["refinement_check"] = refine_ok
    return ExperimentReport(
        suite="converse",
        columns=["function_id", "p", "n", "e_n", "w_n", "ratio", "flag"],
        rows=sorted(rows, key=lambda r: (r["function_id"], r["p"], r["n"])),
        metadata=meta, passed=passed,
        measured={"ratio_windows": ratio_windows, "window_bound": window,
                  "chain_excess": chain_worst},
    )


def run_delayed_max_suite(corpus, p_list, n_list, k_cap, d, window=25.0,
                          seed=42, theta_grid_size=64, config=None):
    """Truncated delayed-maximum comparison: max over k in [n, k_cap] of
    ||V_k f - f||_p against omega(f, n^(-1/2))_p.  The untruncated statement
    maximizes over all k >= n, so every row is flagged TRUNCATED."""
    if k_cap < max(n_list):
        raise ValueError("k_cap must be >= max(n_list)")
    # the means of any degree act exactly on a band-limited representation,
    # so the band limit tracks the modulus scales, not k_cap
    ws = Workspace(d, max(n_list), seed=seed)
    n_list = sorted(n_list)
    rows = []
    windows = {}
    passed = True
    for fid in corpus:
        f = ws.spectral(fid)
        for p in p_list:
            degrees = list(range(min(n_list), k_cap + 1))
            errs = np.asarray(_operator_error_norms(f, degrees, p, d))
            # suffix maxima: max over k >= n within the cap
            suffix = np.maximum.accumulate(errs[::-1])[::-1]
            ratios = []
            for n in n_list:
                m_n = float(suffix[n - degrees[0]])
                w_n = modulus(f, n ** -0.5, p, d, theta_grid_size=theta_grid_size)
                degenerate = w_n <= DEGENERATE_FLOOR
                ratio = float("nan") if degenerate else m_n / w_n
                flag = "TRUNCATED;degenerate" if degenerate else "TRUNCATED"
                rows.append({"function_id": fid, "p": p, "n": n, "k_cap": k_cap,
                             "max_err": m_n, "w_n": w_n, "ratio": ratio, "flag": flag})
                if not degenerate:
                    ratios.append(ratio)
            if ratios:
                lo, hi, ratio = _window(ratios)
                windows[f"{fid}|p={p}"] = {"min": lo, "max": hi, "ratio": ratio}
                passed = passed and lo > 0 and ratio <= window
    # refinement self-check: the modulus of the last cell on a doubled grid
    f = ws.spectral(corpus[-1])
    t = max(n_list) ** -0.5
    w1 = modulus(f, t, p_list[-1], d, theta_grid_size=theta_grid_size)
    w2 = modulus(f, t, p_list[-1], d, theta_grid_size=2 * theta_grid_size)
    refine_ok = abs(w1 - w2) <= 0.02 * max(abs(w2), DEGENERATE_FLOOR)
    passed = passed and refine_ok
    meta = _metadata(config)
    meta["refinement_check"] = refine_ok
    return ExperimentReport(
        suite="delayed-max",
        columns=["function_id", "p", "n", "k_cap", "max_err", "w_n", "ratio", "flag"],
        rows=sorted(rows, key=lambda r: (r["function_id"], r["p"], r["n"])),
        metadata=meta, passed=passed,
        measured={"ratio_windows": windows, "window_bound": window},
    )


def run_modulus_suite(corpus, p_list, n_list, d, window=50.0, seed=42,
                      theta_grid_size=64, config=None):
    """Modulus versus K-functional estimate at the scales t = n^(-1/2):
    their ratio must stay inside [1/window, window] wherever both are
    nonzero."""
    ws = Workspace(d, max(n_list), seed=seed)
    rows = []
    passed = True
    worst = {"low": math.inf, "high": -math.inf}
    for fid in corpus:
        f = ws.spectral(fid)
        for p in p_list:
            for n in sorted(n_list):
                t = n ** -0.5
                om = modulus(f, t, p, d, theta_grid_size=theta_grid_size)
                kf = k_functional_estimate(f, t, p, d)
                degenerate = kf <= DEGENERATE_FLOOR and om <= DEGENERATE_FLOOR
                ratio = float("nan") if degenerate else om / max(kf, DEGENERATE_FLOOR)
                rows.append({"function_id": fid, "p": p, "t": t, "omega": om,
                             "k_estimate": kf, "ratio": ratio,
                             "flag": "degenerate" if degenerate else "ok"})
                if not degenerate:
                    worst["low"] = min(worst["low"], ratio)
                    worst["high"] = max(worst["high"], ratio)
                    passed = passed and (1.0 / window) <= ratio <= window
    # refinement self-check: the modulus grid is doubled at the last cell
    fid = corpus[-1]
    f = ws.spectral(fid)
    t = min(n_list) ** -0.5
    m1 = modulus(f, t, 2.0, d, theta_grid_size=theta_grid_size)
    m2 = modulus(f, t, 2.0, d, theta_grid_size=2 * theta_grid_size)
    refine_ok = abs(m1 - m2) <= 0.02 * max(abs(m2), DEGENERATE_FLOOR)
    passed = passed and refine_ok
    meta = _metadata(config)
    meta["refinement_check"] = refine_ok
    return ExperimentReport(
        suite="modulus",
        columns=["function_id", "p", "t", "omega", "k_estimate", "ratio", "flag"],
        rows=sorted(rows, key=lambda r: (r["function_id"], r["p"], -r["t"])),
        metadata=meta, passed=passed,
        measured={"ratio_range": worst, "window_bound": window},
    )


# ---------------------------------------------------------------------------
# selftest battery


def measure_envelope_constant(d_list=(3, 4, 5), k_max=512, grid_size=2048):
    """Empirical envelope constant: the largest |Q_k(cos theta)| /
    min((k theta)^(-lam), 1) over k <= k_max and theta on a grid of
    (0, pi/2].  The envelope fails beyond pi/2 (|Q_k(-1)| = 1), matching
    where the bound is actually used."""
    worst = 0.0
    for d in d_list:
        lam = (d - 2) / 2.0
        theta = np.linspace(np.pi / 2.0 / grid_size, np.pi / 2.0, grid_size)
        q = np.abs(q_table(k_max, lam, theta))
        for k in range(1, k_max + 1):
            ratio = q[:, k] / q_envelope(k, lam, theta)
            worst = max(worst, float(ratio.max()))
    return worst


def run_selftest_suite(seed=42, config=None):
    """Quick battery over the structural invariants of every module: rule
    exactness, orthogonality, kernel normalization, the closed-form collapse
    of alpha at d = 3, operator laws, the two-pathway oracles at d = 3, and
    the envelope constant."""
    checks = []

    def record(name, value, bound, ok):
        checks.append({"check": name, "value": value, "bound": bound,
                       "passed": bool(ok)})

    # quadrature exactness on an odd/even pair
    rule = gauss_legendre(8)
    ex = float(np.dot(rule.weights, rule.nodes ** 14))
    record("gauss_monomial_14", abs(ex - 2.0 / 15.0), 1e-13, abs(ex - 2.0 / 15.0) <= 1e-13)
    record("gauss_weight_sum", abs(float(rule.weights.sum()) - 2.0), 1e-12,
           abs(float(rule.weights.sum()) - 2.0) <= 1e-12)

    # Gegenbauer orthogonality through the weighted polar integral
    lam = 1.0
    val = integrate_theta(lambda t: q_table(7, lam, t)[:, 3] * q_table(7, lam, t)[:, 5],
                          lam, 32)
    record("gegenbauer_orthogonality", abs(val), 1e-10, abs(val) <= 1e-10)

    # kernel normalization at a representative pair
    for d, n in ((3, 64), (5, 128)):
        spec = kernel_spec(n, d)
        norm = integrate_theta(lambda t: vpm_kernel_eval(spec, t), spec.lam, n + 64)
        record(f"kernel_normalization_d{d}_n{n}", abs(norm - 1.0), 1e-10,
               abs(norm - 1.0) <= 1e-10)

    # multiplier identity spot check
    diff = abs(multiplier_weight(8, 3, 1.5) - multiplier_via_quadrature(8, 3, 5))
    record("multiplier_identity_spot", diff, 1e-9, diff <= 1e-9)

    # alpha collapse at d = 3
    a = alpha_voronovskaya(32, 3)
    record("alpha_closed_form_d3", abs(a * 33.0 - 1.0), 1e-8, abs(a * 33.0 - 1.0) <= 1e-8)

    # operator laws on a small random function
    rng = np.random.default_rng(seed)
    coeffs = rng.uniform(-1.0, 1.0, 13)
    f = ZonalSpectral(lam=0.5, coeffs=coeffs)
    w = multiplier_sequence(6, 0.5, 12)
    semigroup = float(np.max(np.abs(w ** 5 - w ** 2 * w ** 3)))
    record("semigroup_coefficients", semigroup, 1e-15, semigroup <= 1e-15)
    base = lp_norms_batch(coeffs * (1.0 - w), 0.5, 2.0, 3)[0]
    chain = lp_norms_batch(coeffs * (1.0 - w ** 4), 0.5, 2.0, 3)[0]
    record("chain_bound_m4", float(chain - 4 * base), 1e-8, chain <= 4 * base + 1e-8)
    norm_f = lp_norms_batch(coeffs, 0.5, 1.0, 3)[0]
    norm_t = lp_norms_batch(coeffs * q_table(12, 0.5, 0.3)[0], 0.5, 1.0, 3)[0]
    record("translation_contraction", float(norm_t - norm_f), 1e-8,
           norm_t <= norm_f + 1e-8)

    # two-pathway oracles at d = 3 (small scale)
    grid = sphere_grid(24)
    gf = sample_zonal_on_grid(
        lambda th: zonal_synthesis(coeffs, 0.5, np.cos(np.asarray(th, dtype=float))), grid)
    direct = vpm_grid(gf, 8)
    spectral = ZonalSpectral(lam=0.5, coeffs=coeffs * multiplier_sequence(8, 0.5, 12))
    fn = zonal_point_function(spectral, np.array([0.0, 0.0, 1.0]))
    sup = float(np.max(np.abs(direct.values - fn(grid.points))))
    record("vpm_two_pathway", sup, 1e-7, sup <= 1e-7)
    point = grid.points[len(grid.points) // 3]
    f_eval = zonal_point_function(ZonalSpectral(lam=0.5, coeffs=coeffs),
                                  np.array([0.0, 0.0, 1.0]))
    direct_t = translate_direct(f_eval, 0.7, point, 64)
    spec_t = ZonalSpectral(lam=0.5, coeffs=coeffs * q_table(12, 0.5, 0.7)[0])
    spec_val = float(zonal_point_function(spec_t, np.array([0.0, 0.0, 1.0]))(point[None, :])[0])
    record("translation_two_pathway", abs(direct_t - spec_val), 1e-8,
           abs(direct_t - spec_val) <= 1e-8)

    # envelope constant (quick variant)
    c5 = measure_envelope_constant(d_list=(3, 4, 5), k_max=128, grid_size=512)
    record("envelope_constant", c5, 10.0, c5 <= 10.0)

    passed = all(c["passed"] for c in checks)
    meta = _metadata(config)
    meta["refinement_check"] = True
    return ExperimentReport(
        suite="selftest",
        columns=["check", "value", "bound", "passed"],
        rows=checks, metadata=meta, passed=passed,
        measured={"envelope_constant": c5},
    )
