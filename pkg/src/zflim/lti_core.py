"""Discrete-time rational transfer functions and frequency-domain plumbing.

Coefficients are stored ascending in z (coeffs[k] multiplies z**k).  Plant
files and the bundled examples use the printed descending convention; the
parser in `plants` flips them before construction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidGain, NotStable, PoleOnUnitCircle, RootFindingFailed

STABILITY_MARGIN = 1e-9
POLE_RESIDUAL_TOL = 1e-10
UNIT_CIRCLE_TOL = 1e-12
NYQUIST_SCAN_POINTS = 20001


class Polynomial:
    """Real polynomial with ascending coefficients and a trimmed leading term."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        c = np.atleast_1d(np.asarray(coeffs, dtype=float))
        if c.ndim != 1 or c.size == 0:
            raise ValueError("coefficients must be a non-empty 1-D sequence")
        n = c.size
        while n > 1 and c[n - 1] == 0.0:
            n -= 1
        self.coeffs = c[:n].copy()
        self.coeffs.flags.writeable = False

    @property
    def degree(self) -> int:
        return self.coeffs.size - 1

    def is_zero(self) -> bool:
        return self.coeffs.size == 1 and self.coeffs[0] == 0.0

    def __call__(self, z):
        """Horner evaluation; `z` may be a scalar or an ndarray."""
        z = np.asarray(z)
        out = np.full(z.shape, self.coeffs[-1], dtype=np.result_type(z.dtype, float))
        for c in self.coeffs[-2::-1]:
            out = out * z + c
        return out if out.shape else out[()]

    def derivative(self) -> "Polynomial":
        if self.degree == 0:
            return Polynomial([0.0])
        k = np.arange(1, self.coeffs.size)
        return Polynomial(self.coeffs[1:] * k)

    def __add__(self, other: "Polynomial") -> "Polynomial":
        a, b = self.coeffs, other.coeffs
        n = max(a.size, b.size)
        out = np.zeros(n)
        out[: a.size] += a
        out[: b.size] += b
        return Polynomial(out)

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        return Polynomial(np.convolve(self.coeffs, other.coeffs))

    def scale(self, s: float) -> "Polynomial":
        return Polynomial(self.coeffs * s)

    def __eq__(self, other) -> bool:
        return isinstance(other, Polynomial) and np.array_equal(self.coeffs, other.coeffs)

    def __repr__(self) -> str:
        return f"Polynomial({self.coeffs.tolist()})"


class TransferFunction:
    """Proper real rational function num(z)/den(z) with no structural pole at infinity."""

    __slots__ = ("num", "den")

    def __init__(self, num, den):
        num = num if isinstance(num, Polynomial) else Polynomial(num)
        den = den if isinstance(den, Polynomial) else Polynomial(den)
        if den.is_zero():
            raise ValueError("denominator must not be the zero polynomial")
        if not num.is_zero() and num.degree > den.degree:
            raise ValueError("improper transfer function: deg(num) > deg(den)")
        self.num = num
        self.den = den

    def __repr__(self) -> str:
        return f"TransferFunction(num={self.num.coeffs.tolist()}, den={self.den.coeffs.tolist()})"


@dataclass(frozen=True)
class FrequencySample:
    """Value of a transfer function at one point of the unit circle."""

    omega: float
    value: complex


def _den_scale(tf: TransferFunction) -> float:
    return float(np.max(np.abs(tf.den.coeffs)))


def evaluate(tf: TransferFunction, omega: float) -> complex:
    """Evaluate tf at z = exp(j*omega)."""
    z = complex(math.cos(omega), math.sin(omega))
    d = tf.den(z)
    if abs(d) < UNIT_CIRCLE_TOL * _den_scale(tf):
        raise PoleOnUnitCircle(f"denominator vanishes at omega={omega!r}")
    return complex(tf.num(z) / d)


def frequency_response(tf: TransferFunction, omegas) -> np.ndarray:
    """Vectorised `evaluate` over an array of frequencies."""
    z = np.exp(1j * np.asarray(omegas, dtype=float))
    d = tf.den(z)
    if np.min(np.abs(d)) < UNIT_CIRCLE_TOL * _den_scale(tf):
        raise PoleOnUnitCircle("denominator vanishes on the evaluation grid")
    return tf.num(z) / d


def sample(tf: TransferFunction, omega: float) -> FrequencySample:
    return FrequencySample(omega, evaluate(tf, omega))


def poles(tf: TransferFunction, newton_steps: int = 12) -> list[complex]:
    """All denominator roots with multiplicity.

    Companion-matrix eigenvalues, then a few Newton corrections per root.  A
    correction is kept only when it reduces the residual, so clustered roots
    cannot be pushed onto each other.
    """
    c = tf.den.coeffs
    n = c.size - 1
    if n == 0:
        return []
    monic = c / c[-1]
    comp = np.zeros((n, n))
    comp[1:, :-1] = np.eye(n - 1)
    comp[:, -1] = -monic[:-1]
    roots = np.linalg.eigvals(comp).astype(complex)

    scale = float(np.max(np.abs(c)))
    dden = tf.den.derivative()
    polished = []
    for r in roots:
        best, best_res = r, abs(tf.den(r))
        x = r
        for _ in range(newton_steps):
            dp = dden(x)
            if abs(dp) == 0.0:
                break
            x = x - tf.den(x) / dp
            res = abs(tf.den(x))
            if res < best_res:
                best, best_res = x, res
        polished.append(best)
        if best_res > POLE_RESIDUAL_TOL * scale:
            raise RootFindingFailed(
                f"residual {best_res:.3e} above {POLE_RESIDUAL_TOL * scale:.3e} at root {best}"
            )
    return polished


def is_stable(tf: TransferFunction) -> bool:
    """True when every pole lies strictly inside the unit disk (with margin)."""
    return all(abs(p) < 1.0 - STABILITY_MARGIN for p in poles(tf))


def shift_by_inverse_gain(tf: TransferFunction, k: float) -> TransferFunction:
    """Return tf + 1/k, the loop transformation for a slope restriction of k."""
    if not (k > 0.0):
        raise InvalidGain(f"gain must be positive, got {k!r}")
    num = tf.num.scale(k) + tf.den
    den = tf.den.scale(k)
    return TransferFunction(num, den)


def affine_combine(terms) -> TransferFunction:
    """Weighted sum of transfer functions over the common denominator."""
    terms = list(terms)
    if not terms:
        raise ValueError("at least one (weight, tf) term is required")
    for w, _ in terms:
        if not math.isfinite(w):
            raise ValueError("weights must be finite")
    den = Polynomial([1.0])
    for _, tf in terms:
        den = den * tf.den
    num = Polynomial([0.0])
    for i, (w, tf) in enumerate(terms):
        part = tf.num.scale(w)
        for j, (_, other) in enumerate(terms):
            if j != i:
                part = part * other.den
        num = num + part
    return TransferFunction(num, den)


def _refine_imag_zero(tf: TransferFunction, a: float, b: float, fa: float) -> float:
    """Bisect Im{G} to a sign change within 1e-12 of frequency."""
    for _ in range(80):
        m = 0.5 * (a + b)
        fm = evaluate(tf, m).imag
        if fa * fm <= 0.0:
            b = m
        else:
            a, fa = m, fm
        if b - a <= 1e-12:
            break
    return 0.5 * (a + b)


def nyquist_value(tf: TransferFunction, n_scan: int = NYQUIST_SCAN_POINTS) -> float:
    """Largest gain before the linear loop loses stability.

    Locates real-axis crossings of G on [0, pi] by scanning the sign of the
    imaginary part, refines them by bisection, and returns the minimum of
    -1/Re{G} over crossings with negative real part (math.inf if none).
    Endpoints 0 and pi, where G is always real, are always candidates, and
    near-tangential crossings are caught by a local minimum screen on |Im|.
    """
    if not is_stable(tf):
        raise NotStable("nyquist_value requires a stable plant")
    w = np.linspace(0.0, math.pi, n_scan)
    g = frequency_response(tf, w)
    im = g.imag
    candidates = [0.0, math.pi]
    sign = np.sign(im)
    for k in range(n_scan - 1):
        if sign[k] == 0.0:
            candidates.append(float(w[k]))
        elif sign[k] * sign[k + 1] < 0.0:
            candidates.append(_refine_imag_zero(tf, float(w[k]), float(w[k + 1]), float(im[k])))
    absim = np.abs(im)
    for k in range(1, n_scan - 1):
        # tangential crossing: |Im| dips to ~0 without a sign change
        if absim[k] < 1e-9 and absim[k] <= absim[k - 1] and absim[k] <= absim[k + 1]:
            candidates.append(float(w[k]))
    best = math.inf
    for wc in candidates:
        gv = evaluate(tf, wc)
        if gv.real < 0.0:
            best = min(best, -1.0 / gv.real)
    return best
