"""The de la Vallee Poussin kernel v_n(t) = cos(t/2)^(2n) / I_{n,d} on S^{d-1}.

Provides the closed-form normalization constant I_{n,d}, pointwise kernel
evaluation, the multiplier weights of the induced convolution operator (in
closed form and, independently, by quadrature), the concentration coefficient
alpha(n) of the second-order expansion of the means, and the weighted kernel
moments behind the smoothing estimates.
"""

import math
from dataclasses import dataclass

import numpy as np

from .quadrature import gauss_legendre, integrate_theta, mapped_rule
from .special import log_gamma, q_normalized

__all__ = [
    "KernelSpec",
    "MultiplierSequence",
    "kernel_spec",
    "kernel_norm_constant",
    "vpm_kernel_eval",
    "multiplier_weight",
    "multiplier_sequence",
    "multiplier_via_quadrature",
    "alpha_voronovskaya",
    "lemma_integral",
    "default_order",
]

# Gauss order padding: integrands v_n * Q_k * sin^{2 lam} are trigonometric
# polynomials of degree ~ n + k; 32 extra nodes cover the non-polynomial
# weights that appear at odd 2*lam.
ORDER_PAD = 32


def default_order(n, k=0):
    """Default Gauss order for integrals involving v_n and Q_k."""
    return n + k + ORDER_PAD


@dataclass(frozen=True)
class KernelSpec:
    """Identity of one kernel: degree n, ambient dimension d, the derived
    index lam = (d-2)/2, and log_norm = ln I_{n,d}."""
    n: int
    d: int
    lam: float
    log_norm: float


@dataclass(frozen=True)
class MultiplierSequence:
    """Diagonal action of a spectral operator: values[k] scales the degree-k
    harmonic component.  `source` identifies the operator for reports."""
    values: np.ndarray
    source: str


def kernel_norm_constant(n, d):
    """ln I_{n,d} with I_{n,d} = 2^(2 lam) Gamma(lam+1/2) Gamma(n+lam+1/2) / Gamma(n+2 lam+1).

    At d = 3 this collapses to ln(2/(n+1)).
    """
    if n < 0:
        raise ValueError(f"kernel degree must be >= 0, got {n}")
    if d < 3:
        raise ValueError(f"dimension must be >= 3, got {d}")
    lam = (d - 2) / 2.0
    return (2.0 * lam * math.log(2.0) + log_gamma(lam + 0.5)
            + log_gamma(n + lam + 0.5) - log_gamma(n + 2.0 * lam + 1.0))


def kernel_spec(n, d):
    """Construct the KernelSpec for degree n in dimension d."""
    return KernelSpec(n=n, d=d, lam=(d - 2) / 2.0, log_norm=kernel_norm_constant(n, d))


def vpm_kernel_eval(spec, theta):
    """v_n(theta) = cos(theta/2)^(2n) / I_{n,d} on [0, pi].

    Computed as ((1 + cos theta)/2)^n, which vanishes exactly at theta = pi
    for n >= 1 and is 1/I at theta = 0.
    """
    ta = np.asarray(theta, dtype=float)
    if np.any((ta < 0.0) | (ta > np.pi)):
        raise ValueError("vpm_kernel_eval requires theta in [0, pi]")
    s = 0.5 + 0.5 * np.cos(ta)          # = cos^2(theta/2), exactly 0 at pi
    vals = s ** spec.n * math.exp(-spec.log_norm)
    return float(vals) if ta.ndim == 0 else vals


def multiplier_weight(n, k, lam):
    """Closed-form multiplier of the degree-n means on degree-k harmonics:

        n! (n+2 lam)! / ((n-k)! (n+k+2 lam)!)   for k <= n,  0 for k > n,

    evaluated through log-Gamma differences.  Equals 1 at k = 0.
    """
    if n < 0 or k < 0:
        raise ValueError("multiplier_weight requires n >= 0 and k >= 0")
    if k > n:
        return 0.0
    # paired differences cancel exactly at k = 0, where the weight must be 1
    return math.exp((log_gamma(n + 1.0) - log_gamma(n - k + 1.0))
                    + (log_gamma(n + 2.0 * lam + 1.0) - log_gamma(n + k + 2.0 * lam + 1.0)))


def multiplier_sequence(n, lam, k_max):
    """Array of multiplier weights for k = 0..k_max."""
    return np.array([multiplier_weight(n, k, lam) for k in range(k_max + 1)])


def multiplier_via_quadrature(n, k, d, order=None):
    """Independent route to the multiplier weight:

        integral_0^pi v_n(theta) Q_k(cos theta) sin(theta)^(2 lam) dtheta.

    This is the oracle against which the closed form is checked.
    """
    lam = (d - 2) / 2.0
    spec = kernel_spec(n, d)
    if order is None:
        order = default_order(n, k)
    return integrate_theta(lambda t: vpm_kernel_eval(spec, t) * q_normalized(k, lam, t),
                           lam, order)


# fixed inner/middle Gauss orders for the nested integrals; both integrands
# are smooth on their domains, so modest fixed orders reach machine accuracy
# and refinement happens on the outer rule only
_ALPHA_INNER_ORDER = 96


def _alpha_at_order(n, d, order):
    lam = (d - 2) / 2.0
    spec = kernel_spec(n, d)
    theta, w_outer = mapped_rule(0.0, np.pi, order)
    rule = gauss_legendre(_ALPHA_INNER_ORDER)
    half = 0.5 * (rule.nodes + 1.0)
    w_in = rule.weights
    # middle nodes t_{ij} = theta_i * half_j and the inner primitive
    # G(t) = integral_0^t sin(u)^(2 lam) du evaluated at each of them
    big_f = np.empty_like(theta)
    for i, th in enumerate(theta):
        t = th * half
        u = t[:, None] * half[None, :]
        g_inner = (0.5 * t) * (np.sin(u) ** (2.0 * lam) @ w_in)
        # sin^(-2 lam) t blows up near pi but G stays bounded and the outer
        # kernel factor kills the product; the quotient is ~ t/(2 lam + 1) at 0
        big_f[i] = (0.5 * th) * np.dot(w_in, np.sin(t) ** (-2.0 * lam) * g_inner)
    outer = w_outer * vpm_kernel_eval(spec, theta) * np.sin(theta) ** (2.0 * lam)
    return float(np.dot(outer, big_f))


def alpha_voronovskaya(n, d, order=None, rtol=1e-9, max_refinements=8):
    """Concentration coefficient of the second-order expansion of the means:

        alpha(n) = integral_0^pi v_n sin^(2 lam) theta dtheta
                   integral_0^theta sin^(-2 lam) t dt
                   integral_0^t sin^(2 lam) u du.

    The outer rule is doubled until two successive refinements agree to
    `rtol` relative.  alpha(n) ~ 1/n; at d = 3 it is exactly 1/(n+1).
    """
    if n < 1:
        raise ValueError(f"alpha_voronovskaya requires n >= 1, got {n}")
    base = order if order is not None else default_order(n) + 32
    prev = _alpha_at_order(n, d, base)
    for _ in range(max_refinements):
        base *= 2
        cur = _alpha_at_order(n, d, base)
        if abs(cur - prev) <= rtol * abs(cur):
            return cur
        prev = cur
    return cur


_LEMMA_KINDS = ("neg_lambda", "neg_two_over_m", "fourth_moment")


def lemma_integral(n, d, kind, m=None, order=None, rtol=1e-8, max_refinements=8):
    """Weighted kernel moment integral_0^pi theta^s v_n(theta) sin^(2 lam) theta dtheta.

    kind selects the exponent s: "neg_lambda" -> -lam (grows like n^(lam/2)),
    "neg_two_over_m" -> -2/m (grows like n^(1/m)), "fourth_moment" -> 4
    (decays like n^-2).  The mapped Gauss rule is doubled until two successive
    refinements agree to `rtol` relative; the combined integrand is continuous
    at 0 because theta^(-lam) sin^(2 lam) theta ~ theta^lam.
    """
    if n < 1:
        raise ValueError(f"lemma_integral requires n >= 1, got {n}")
    lam = (d - 2) / 2.0
    if kind == "neg_lambda":
        s = -lam
    elif kind == "neg_two_over_m":
        if m is None or m < 1:
            raise ValueError("kind='neg_two_over_m' requires an integer m >= 1")
        s = -2.0 / m
    elif kind == "fourth_moment":
        s = 4.0
    else:
        raise ValueError(f"unknown lemma_integral kind {kind!r}; expected one of {_LEMMA_KINDS}")
    spec = kernel_spec(n, d)
    base = order if order is not None else default_order(n) + 32
    prev = integrate_theta(lambda t: t ** s * vpm_kernel_eval(spec, t), lam, base)
    for _ in range(max_refinements):
        base *= 2
        cur = integrate_theta(lambda t: t ** s * vpm_kernel_eval(spec, t), lam, base)
        if abs(cur - prev) <= rtol * abs(cur):
            return cur
        prev = cur
    return cur
