"""Modified Bessel functions and their multi-argument generalization.

The waveform transforms expand a unit-modulus generator
exp(j * sum_n alpha_n cos(n*theta)) into a Fourier series; the coefficients
of that series are the generalized coefficients computed here.  Three
independent routes are provided and cross-checked by the test suite:

* ``fourier``   - one fast transform of the sampled generator yields every
                  order at once (the default).
* ``integral``  - per-order quadrature of the defining cosine integral with
                  a composite Gauss-Legendre rule.
* ``recursion`` - the reduction chain that peels off one argument at a time,
                  terminating at single-variable modified Bessel functions.
"""

from __future__ import annotations

import math

import numpy as np
import scipy.fft
import scipy.special

from .errors import BesselRangeError, TruncationCapError

# exp() overflow threshold for float64 exponents
_EXP_LIMIT = 700.0

DEFAULT_TRUNCATION_CAP = 4096


class GbfArgs:
    """Ordered argument vector {alpha_1 ... alpha_N} of the generator.

    Entries may be complex; the generator is then no longer unit modulus and
    its coefficients are only constrained by even symmetry in the order.
    """

    __slots__ = ("alphas",)

    def __init__(self, alphas):
        alphas = tuple(complex(a) for a in alphas)
        if not alphas:
            raise ValueError("argument vector must have at least one entry")
        if not all(math.isfinite(a.real) and math.isfinite(a.imag) for a in alphas):
            raise ValueError("argument vector entries must be finite")
        object.__setattr__(self, "alphas", alphas)

    def __setattr__(self, name, value):
        raise AttributeError("GbfArgs is immutable")

    def __len__(self):
        return len(self.alphas)

    def __repr__(self):
        return f"GbfArgs({list(self.alphas)!r})"


class GbfTable:
    """Coefficients for orders 0..truncation_order plus a tail estimate.

    The negative orders are implied by even symmetry and are never stored;
    consumers index |m|.  ``est_tail`` bounds the summed modulus of every
    coefficient beyond the truncation order, and ``tail_warning`` is set when
    that bound exceeds the tolerance the table was requested at.
    """

    __slots__ = ("coeffs", "truncation_order", "est_tail", "tail_warning")

    def __init__(self, coeffs, est_tail, tail_warning):
        object.__setattr__(self, "coeffs", np.asarray(coeffs, dtype=complex))
        object.__setattr__(self, "truncation_order", len(coeffs) - 1)
        object.__setattr__(self, "est_tail", float(est_tail))
        object.__setattr__(self, "tail_warning", bool(tail_warning))

    def __setattr__(self, name, value):
        raise AttributeError("GbfTable is immutable")

    def __getitem__(self, m: int) -> complex:
        return complex(self.coeffs[abs(m)])


def mbf_complex(m: int, z: complex) -> complex:
    """Order-``m`` modified Bessel function of the first kind at complex ``z``.

    Integer-order symmetry I_{-m} = I_m is applied up front; for purely
    imaginary arguments this reduces to j^m J_m along the real axis.
    Arguments whose real part would overflow exp() raise instead of
    returning inf.
    """
    z = complex(z)
    if abs(z.real) > _EXP_LIMIT:
        raise BesselRangeError(f"|Re z| = {abs(z.real):.1f} exceeds representable range")
    if z.imag == 0.0:
        val = complex(scipy.special.iv(abs(int(m)), z.real))
    else:
        val = complex(scipy.special.iv(abs(int(m)), z))
    if not (math.isfinite(val.real) and math.isfinite(val.imag)):
        raise BesselRangeError(f"I_{abs(int(m))}({z}) is not representable")
    return val


def _band(args: GbfArgs) -> float:
    """Order-weighted argument load sum_n n*(|Re|+|Im|); the generator's
    Fourier content is negligible beyond roughly this order."""
    return float(
        sum(n * (abs(a.real) + abs(a.imag)) for n, a in enumerate(args.alphas, start=1))
    )


def _check_exp_range(args: GbfArgs) -> None:
    load = sum(abs(a.imag) for a in args.alphas)
    if load > _EXP_LIMIT:
        worst = max(range(len(args.alphas)), key=lambda i: abs(args.alphas[i].imag))
        raise BesselRangeError(
            f"imaginary load {load:.1f} of argument alpha_{worst + 1} = "
            f"{args.alphas[worst]} overflows the generator"
        )


def _estimate_tail(coeffs: np.ndarray, band: float) -> float:
    """Tail-mass bound from the trailing 5% of coefficients.

    Fits a geometric decay ratio to the trailing window and sums it out to
    infinity; super-exponential decay beyond the band makes this
    conservative.  When the table stops before the band the tail cannot be
    certified and a unit bound is returned.
    """
    if band == 0.0:
        return 0.0
    m_max = len(coeffs) - 1
    if m_max < band + 2:
        return 1.0
    window = max(3, int(math.ceil(0.05 * len(coeffs))))
    mags = np.abs(coeffs[-window:])
    peak = float(mags.max())
    if peak == 0.0:
        return 0.0
    lo = max(float(mags[0]), 1e-300)
    hi = max(float(mags[-1]), 1e-300)
    ratio = (hi / lo) ** (1.0 / (window - 1))
    ratio = min(max(ratio, 1e-6), 0.95)
    return peak * ratio / (1.0 - ratio)


def _fourier_grid_size(m_max: int, band: float) -> int:
    guard = 64.0 + 16.0 * (band + 1.0) ** (1.0 / 3.0)
    return scipy.fft.next_fast_len(int(2 * math.ceil(m_max + band + guard)))


def _mgbf_fourier(args: GbfArgs, m_max: int) -> np.ndarray:
    _check_exp_range(args)
    band = _band(args)
    size = _fourier_grid_size(m_max, band)
    theta = 2.0 * np.pi * np.arange(size) / size
    exponent = np.zeros(size, dtype=complex)
    for n, a in enumerate(args.alphas, start=1):
        exponent += 1j * a * np.cos(n * theta)
    gen = np.exp(exponent)
    spec = scipy.fft.fft(gen) / size
    return spec[: m_max + 1]


def _mgbf_integral(args: GbfArgs, m_max: int) -> np.ndarray:
    """Per-order quadrature of (1/pi) * int_0^pi cos(m*theta) * generator dtheta.

    Composite 12-point Gauss-Legendre panels sized so each panel sees only a
    few radians of integrand phase, which keeps the rule at machine
    precision without the transform trick of the fourier route.
    """
    _check_exp_range(args)
    band = _band(args)
    n_panels = max(4, int(math.ceil((band + m_max) / 3.0)))
    gl_x, gl_w = np.polynomial.legendre.leggauss(12)
    edges = np.linspace(0.0, np.pi, n_panels + 1)
    half = 0.5 * (edges[1:] - edges[:-1])
    mid = 0.5 * (edges[1:] + edges[:-1])
    theta = (mid[:, None] + half[:, None] * gl_x[None, :]).ravel()
    weights = (half[:, None] * gl_w[None, :]).ravel()

    exponent = np.zeros_like(theta, dtype=complex)
    for n, a in enumerate(args.alphas, start=1):
        exponent += 1j * a * np.cos(n * theta)
    weighted_gen = weights * np.exp(exponent)

    out = np.empty(m_max + 1, dtype=complex)
    block = max(1, int(2e6 // max(len(theta), 1)))
    for start in range(0, m_max + 1, block):
        orders = np.arange(start, min(start + block, m_max + 1))
        out[orders] = np.cos(orders[:, None] * theta[None, :]) @ weighted_gen
    return out / np.pi


def _inner_cut(alpha: complex, tol: float) -> int:
    """Smallest order beyond which single-variable terms stop mattering."""
    scale = math.exp(min(_EXP_LIMIT, abs(alpha.imag)))
    threshold = tol * 1e-2 * max(1.0, scale)
    k = int(math.ceil(abs(alpha))) + 1
    while True:
        if abs(mbf_complex(k, 1j * alpha)) < threshold:
            return k
        k += max(1, k // 8)


def _mgbf_recursion(args: GbfArgs, m_max: int, tol: float) -> np.ndarray:
    _check_exp_range(args)
    alphas = args.alphas
    cuts = {n: _inner_cut(alphas[n - 1], tol) for n in range(2, len(alphas) + 1)}

    # Order budget per level: level n-1 is probed up to n*cut(n) beyond level n.
    budget = m_max
    budgets = {len(alphas): m_max}
    for n in range(len(alphas), 1, -1):
        budget += n * cuts[n]
        budgets[n - 1] = budget

    orders = np.arange(budgets[1] + 1)
    table = scipy.special.iv(orders, 1j * alphas[0])
    if not np.all(np.isfinite(table.view(float))):
        raise BesselRangeError(f"base Bessel table overflowed for alpha_1 = {alphas[0]}")

    for n in range(2, len(alphas) + 1):
        ks = np.arange(cuts[n] + 1)
        ik = scipy.special.iv(ks, 1j * alphas[n - 1])
        if not np.all(np.isfinite(ik.view(float))):
            raise BesselRangeError(f"inner Bessel terms overflowed for alpha_{n}")
        m = np.arange(budgets[n] + 1)[:, None]
        gather_minus = np.abs(m - n * ks[None, :])
        gather_plus = m + n * ks[None, 1:]
        table = table[gather_minus] @ ik + table[gather_plus] @ ik[1:]
    return table[: m_max + 1]


def mgbf(args: GbfArgs, m_max: int, method: str = "fourier", tol: float = 1e-10) -> GbfTable:
    """Generalized coefficients for orders 0..m_max by the chosen method.

    ``tol`` only controls bookkeeping (the tail-warning flag and the
    recursion's inner-sum cutoff), never silent truncation: the table always
    holds exactly m_max + 1 coefficients.
    """
    if m_max < 0:
        raise ValueError("m_max must be >= 0")
    if method == "fourier":
        coeffs = _mgbf_fourier(args, m_max)
    elif method == "integral":
        coeffs = _mgbf_integral(args, m_max)
    elif method == "recursion":
        coeffs = _mgbf_recursion(args, m_max, tol)
    else:
        raise ValueError(f"unknown method {method!r}")
    est_tail = _estimate_tail(coeffs, _band(args))
    return GbfTable(coeffs, est_tail, tail_warning=est_tail > tol)


def choose_truncation(args: GbfArgs, tol: float, cap: int = DEFAULT_TRUNCATION_CAP) -> int:
    """Smallest comfortable truncation order with tail mass below ``tol``.

    Starts from the order-weighted argument load plus a sub-exponential
    guard (monotone in the load), then verifies the tail estimate on an
    actual table, escalating geometrically if needed.  Exceeding ``cap``
    raises rather than silently degrading accuracy.
    """
    if tol <= 0.0:
        raise ValueError("tol must be > 0")
    band = _band(args)
    if band == 0.0:
        return 0
    m = int(math.ceil(band + 12.0 * (band + 1.0) ** (1.0 / 3.0)
                      + 2.0 * math.log10(1.0 / tol) + 6.0))
    while True:
        if m > cap:
            raise TruncationCapError(
                f"truncation order {m} exceeds cap {cap}; pass a larger cap"
            )
        if mgbf(args, m, method="fourier", tol=tol).est_tail <= tol:
            return m
        m = int(math.ceil(1.25 * m + 8))
