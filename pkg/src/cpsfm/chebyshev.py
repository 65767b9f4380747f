"""Chebyshev polynomial series arithmetic on the normalized domain [-1, 1].

Series are plain first-kind expansions sum_n a_n T_n(x) with an unhalved
leading coefficient.  Everything here is exact polynomial algebra up to
floating point: evaluation (Clenshaw), addition, antidifferentiation of a
frequency law into a phase law, re-expansion under argument scaling and
shifting, node interpolation, and weighted least-squares fitting of sampled
instantaneous-frequency ridges.
"""

from __future__ import annotations

import numpy as np

from .errors import DegenerateFitError


class ChebSeries:
    """Finite Chebyshev series sum_{n=0}^{N} coeffs[n] * T_n(x).

    Coefficients are stored as an immutable tuple; the series order is
    ``len(coeffs) - 1``.  Trailing zeros are legal and never affect
    evaluation.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        coeffs = tuple(float(c) for c in coeffs)
        if not coeffs:
            raise ValueError("a Chebyshev series needs at least one coefficient")
        object.__setattr__(self, "coeffs", coeffs)

    def __setattr__(self, name, value):
        raise AttributeError("ChebSeries is immutable")

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, x):
        return eval_series(self, x)

    def __eq__(self, other):
        return isinstance(other, ChebSeries) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"ChebSeries({list(self.coeffs)!r})"


class NodeSet:
    """First-kind Chebyshev nodes: the order+1 zeros of T_{order+1}.

    ``points[k] = cos((k + 1/2) * pi / (order + 1))``, strictly decreasing
    in (-1, 1).  ``thetas`` holds the corresponding angles, kept exact so
    that T_n(points[k]) may be formed as cos(n * thetas[k]).
    """

    __slots__ = ("order", "points", "thetas")

    def __init__(self, order: int):
        if order < 0:
            raise ValueError("node order must be >= 0")
        k = np.arange(order + 1)
        thetas = (k + 0.5) * np.pi / (order + 1)
        object.__setattr__(self, "order", int(order))
        object.__setattr__(self, "thetas", thetas)
        object.__setattr__(self, "points", np.cos(thetas))

    def __setattr__(self, name, value):
        raise AttributeError("NodeSet is immutable")


class RidgeSample:
    """One time-frequency ridge sample in normalized coordinates.

    ``x`` is normalized time in [-1, 1], ``g`` the normalized frequency
    observed there, and ``weight`` a non-negative fit weight.
    """

    __slots__ = ("x", "g", "weight")

    def __init__(self, x: float, g: float, weight: float = 1.0):
        x = float(x)
        weight = float(weight)
        if not -1.0 <= x <= 1.0:
            raise ValueError(f"ridge sample x={x} outside [-1, 1]")
        if weight < 0.0:
            raise ValueError("ridge sample weight must be >= 0")
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "g", float(g))
        object.__setattr__(self, "weight", weight)

    def __setattr__(self, name, value):
        raise AttributeError("RidgeSample is immutable")


def eval_series(s: ChebSeries, x):
    """Evaluate a Chebyshev series at scalar or array ``x`` via Clenshaw.

    The recurrence form is valid (and exact, being plain polynomial
    arithmetic) for any real argument, including |x| > 1, which the
    scale/shift re-expansion relies on.
    """
    xs = np.asarray(x, dtype=float)
    c = s.coeffs
    b1 = np.zeros_like(xs)
    b2 = np.zeros_like(xs)
    two_x = 2.0 * xs
    for a in c[:0:-1]:
        b1, b2 = a + two_x * b1 - b2, b1
    out = c[0] + xs * b1 - b2
    if np.isscalar(x) or np.ndim(x) == 0:
        return float(out)
    return out


def series_add(a: ChebSeries, b: ChebSeries) -> ChebSeries:
    """Coefficient-wise sum; the shorter operand is zero padded."""
    n = max(len(a.coeffs), len(b.coeffs))
    out = np.zeros(n)
    out[: len(a.coeffs)] += a.coeffs
    out[: len(b.coeffs)] += b.coeffs
    return ChebSeries(out)


def integrate_fmf(fmf: ChebSeries, phi0: float = 0.0) -> ChebSeries:
    """Antidifferentiate a normalized frequency law into a phase law.

    For g(x) = sum a_n T_n(x) this returns the series of
    phi(x) = phi0 + 2*pi * int g(x) dx, one order higher, satisfying
    dphi/dx = 2*pi*g(x) identically:

        alpha_1 = 2*pi*a_0 - pi*a_2
        alpha_n = (pi/n) * (a_{n-1} - a_{n+1})   for n >= 2

    The n = 1 coefficient differs from the naive uniform rule because the
    leading coefficient of a plain (unhalved-a_0) series integrates to a
    full T_1 term; the derivative identity is the binding contract here.
    """
    n_in = len(fmf.coeffs)
    a = np.zeros(n_in + 2)
    a[:n_in] = fmf.coeffs
    alpha = np.zeros(n_in + 1)
    alpha[0] = phi0
    alpha[1] = 2.0 * np.pi * a[0] - np.pi * a[2]
    for n in range(2, n_in + 1):
        alpha[n] = (np.pi / n) * (a[n - 1] - a[n + 1])
    return ChebSeries(alpha)


def scale_shift(s: ChebSeries, nu: float, xi: float) -> ChebSeries:
    """Re-expand x -> s(nu * (x + xi)) as a same-order series in x.

    The composed function is a polynomial of the same degree, so the
    degree-N interpolant through the N+1 first-kind nodes reproduces it
    exactly.  Node images nu*(x_k + xi) may leave [-1, 1]; evaluation there
    goes through the Clenshaw recurrence, never an arccosine.  The returned
    constant term carries the phase offset induced by the warp, which the
    transform layer consumes.
    """
    n = s.order
    nodes = NodeSet(n)
    vals = eval_series(s, float(nu) * (nodes.points + float(xi)))
    return ChebSeries(_coeffs_from_node_values(np.atleast_1d(vals), nodes))


def interpolate(f, order: int) -> ChebSeries:
    """Degree-``order`` Chebyshev interpolant of ``f`` through the first-kind nodes.

    Evaluation failures of ``f`` propagate unchanged.
    """
    if order < 0:
        raise ValueError("interpolation order must be >= 0")
    nodes = NodeSet(order)
    vals = np.array([float(f(x)) for x in nodes.points])
    return ChebSeries(_coeffs_from_node_values(vals, nodes))


def _coeffs_from_node_values(vals: np.ndarray, nodes: NodeSet) -> np.ndarray:
    """Discrete Chebyshev transform: node values -> series coefficients.

    Uses the discrete orthogonality of cos(n*theta_k) at the first-kind
    angles: a_0 gets weight 1/(N+1), higher coefficients 2/(N+1).
    """
    m = nodes.order + 1
    n_idx = np.arange(m)[:, None]
    basis = np.cos(n_idx * nodes.thetas[None, :])
    coeffs = (2.0 / m) * (basis @ vals)
    coeffs[0] *= 0.5
    return coeffs


def fit_wlls(samples, order: int) -> ChebSeries:
    """Weighted linear least-squares Chebyshev fit of ridge samples.

    Minimizes sum_k w_k * (sum_n a_n T_n(x_k) - g_k)^2 over the order+1
    coefficients, solving the weight-scaled design with an orthogonal
    factorization rather than explicit normal equations.  Zero-weight
    samples are dropped up front; duplicate abscissae are fine (their
    weights effectively add), but fewer than order+1 distinct positively
    weighted abscissae is reported as a degenerate fit, never solved in a
    minimum-norm sense.
    """
    if order < 0:
        raise ValueError("fit order must be >= 0")
    live = [s for s in samples if s.weight > 0.0]
    n_coef = order + 1
    distinct = len({s.x for s in live})
    if distinct < n_coef:
        raise DegenerateFitError(
            f"need at least {n_coef} distinct x values with positive weight, got {distinct}"
        )
    x = np.array([s.x for s in live])
    g = np.array([s.g for s in live])
    w = np.array([s.weight for s in live])

    design = np.empty((len(live), n_coef))
    design[:, 0] = 1.0
    if n_coef > 1:
        design[:, 1] = x
    for n in range(2, n_coef):
        design[:, n] = 2.0 * x * design[:, n - 1] - design[:, n - 2]

    sw = np.sqrt(w)
    coeffs, _, rank, _ = np.linalg.lstsq(design * sw[:, None], g * sw, rcond=None)
    if rank < n_coef:
        raise DegenerateFitError(
            f"weighted design is rank deficient (rank {rank} < {n_coef})"
        )
    return ChebSeries(coeffs)
