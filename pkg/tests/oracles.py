"""Standalone reference computations used to pin expected test values.

This module must stay independent of qcharm: it imports only numpy/scipy
and evaluates every reference quantity by brute force (dense scans,
adaptive quadrature) or by direct arithmetic on the closed-form bound
expressions.  Run it directly to print the frozen table:

    python tests/oracles.py
"""

from __future__ import annotations

import math

import numpy as np
from scipy.integrate import quad

TWO_PI = 2.0 * math.pi


# ---------------------------------------------------------------------------
# curve geometry oracles (brute force)


def ellipse_perimeter(a: float, b: float) -> float:
    """Adaptive quadrature of the elliptic arc-length integrand."""
    val, _ = quad(lambda t: math.hypot(a * math.sin(t), b * math.cos(t)), 0.0, TWO_PI, epsabs=1e-13, epsrel=1e-13, limit=400)
    return val


def ellipse_chord_arc_dense(a: float, b: float, m: int = 4096) -> float:
    """Exhaustive pair search for the chord-arc constant of an ellipse.

    Works on the arc-length parametrization obtained by inverting the
    cumulative length on a very fine grid.
    """
    fine = 1 << 16
    t = TWO_PI * np.arange(fine + 1) / fine
    speed = np.hypot(a * np.sin(t), b * np.cos(t))
    cum = np.concatenate(([0.0], np.cumsum(0.5 * (speed[1:] + speed[:-1]) * np.diff(t))))
    total = cum[-1]
    targets = total * np.arange(m) / m
    ts = np.interp(targets, cum, t)
    pts = np.stack([a * np.cos(ts), b * np.sin(ts)], axis=1)

    best = 1.0
    arcs = total * np.minimum(np.arange(m), m - np.arange(m)) / m
    for i in range(m):
        chord = np.linalg.norm(pts - pts[i], axis=1)
        lag = np.minimum((np.arange(m) - i) % m, (i - np.arange(m)) % m)
        arc = total * lag / m
        with np.errstate(divide="ignore", invalid="ignore"):
            r = np.where(chord > 0, arc / chord, 0.0)
        best = max(best, float(np.max(r)))
    return best


def circle_holder_half_dense() -> float:
    """1-D scan of 2 sin(d/2) / sqrt(d) over d in (0, pi] plus golden polish."""
    d = np.linspace(1e-9, math.pi, 2_000_001)
    f = 2.0 * np.sin(d / 2.0) / np.sqrt(d)
    k = int(np.argmax(f))
    lo, hi = d[max(k - 1, 0)], d[min(k + 1, d.size - 1)]
    phi = (math.sqrt(5.0) - 1.0) / 2.0
    g = lambda x: 2.0 * math.sin(x / 2.0) / math.sqrt(x)
    x1, x2 = hi - phi * (hi - lo), lo + phi * (hi - lo)
    f1, f2 = g(x1), g(x2)
    for _ in range(200):
        if f1 < f2:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + phi * (hi - lo)
            f2 = g(x2)
        else:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - phi * (hi - lo)
            f1 = g(x1)
    return max(f1, f2)


def ellipse_max_curvature(a: float, b: float) -> float:
    """Dense-grid maximum of the ellipse curvature (closed form a/b^2 at the apex)."""
    t = np.linspace(0.0, TWO_PI, 1_000_001)
    num = a * b
    den = (a * a * np.sin(t) ** 2 + b * b * np.cos(t) ** 2) ** 1.5
    return float(np.max(num / den))


def harmonic_graph_dilatation_dense(eps: float, m: int, grid: int = 2001) -> float:
    """Dense-grid sup of the pointwise dilatation of (x, y, eps*Re z^m).

    Frames are exact: ux = (1, 0, d Re z^m / dx), uy = (0, 1, d Re z^m / dy).
    """
    xs = np.linspace(-1.0, 1.0, grid)
    best = 1.0
    for x in xs:
        y = np.linspace(-1.0, 1.0, grid)
        z = x + 1j * y
        inside = np.abs(z) <= 1.0
        if not np.any(inside):
            continue
        w = eps * m * z[inside] ** (m - 1)
        gx = np.stack([np.ones(w.size), np.zeros(w.size), w.real], axis=1)
        gy = np.stack([np.zeros(w.size), np.ones(w.size), -w.imag], axis=1)
        g11 = np.einsum("ij,ij->i", gx, gx)
        g22 = np.einsum("ij,ij->i", gy, gy)
        g12 = np.einsum("ij,ij->i", gx, gy)
        s = g11 + g22
        j = np.sqrt(np.clip(g11 * g22 - g12**2, 0.0, None))
        eta = j / s
        root = np.sqrt(np.clip(1.0 - 4.0 * eta**2, 0.0, None))
        op = np.sqrt(s * (1.0 + root) / 2.0)
        mn = np.sqrt(s * (1.0 - root) / 2.0)
        best = max(best, float(np.max(op / mn)))
    return best


def boundary_jacobian_integral_ellipse(c: float, tau: float, n: int = 4_000_000) -> float:
    """Fine-grid evaluation of the singular boundary integral for the curve
    h(t) = e^{it} + c e^{-it} (image of the circle under z + c*conj(z)).

    The integrand extends continuously across t = tau; the removable point
    is patched with its limit value.
    """
    x = -math.pi + TWO_PI * (np.arange(n) + 0.5) / n  # midpoint rule, avoids 0
    t = tau + x
    hs = np.array([math.cos(tau) * (1 + c), math.sin(tau) * (1 - c)])
    dhs = np.array([-math.sin(tau) * (1 + c), math.cos(tau) * (1 - c)])
    ht = np.stack([np.cos(t) * (1 + c), np.sin(t) * (1 - c)], axis=1)
    X = ht - hs
    x2 = np.einsum("ij,ij->i", X, X)
    y2 = float(dhs @ dhs)
    xy = X @ dhs
    kern = np.sqrt(np.clip(x2 * y2 - xy**2, 0.0, None))
    integrand = kern / (4.0 * math.pi * np.sin(x / 2.0) ** 2)
    return float(TWO_PI * np.mean(integrand))


# ---------------------------------------------------------------------------
# explicit bound arithmetic (direct transcription of the closed forms)


def holder_exponent(K: float, lam: float, upsilon: float) -> float:
    return 8.0 * upsilon / (math.pi * K * (1.0 + 2.0 * lam) ** 2)


def boundary_growth_constant(K: float, lam: float, upsilon: float, area: float, half_power: bool = False) -> float:
    alpha = holder_exponent(K, lam, upsilon)
    factor = 2.0 ** (alpha / 2.0) if half_power else 2.0**alpha
    return 4.0 * (1.0 + 2.0 * lam) * factor * math.sqrt(2.0 * math.pi * K * area / math.log(2.0))


def lipschitz_log(K: float, mu: float, upsilon: float, lam: float, c_gamma: float, length: float, area: float | None = None) -> float:
    """log of the explicit gradient bound; area defaults to length^2 / 4."""
    if area is None:
        area = length * length / 4.0
    alpha = holder_exponent(K, lam, upsilon)
    if c_gamma == 0.0:
        return float("-inf")
    e1 = (2.0 - alpha) / (mu * alpha)
    b1 = K * c_gamma * math.pi * (2.0 - alpha) / (2.0 * mu * alpha)
    b2 = 4.0 * (1.0 + 2.0 * lam) * math.sqrt(4.0 * area * math.pi * K / math.log(4.0))
    return math.log(8.0) + e1 * math.log(b1) + (2.0 / alpha) * math.log(b2)


def minimal_surface_log(lam: float, mu: float, c_slot: float, length: float) -> float:
    """log of the minimal-surface specialization (c_slot is the curvature at mu=1)."""
    p = lam * (1.0 + lam) - 0.75
    b1 = c_slot * p * math.pi / (2.0 * mu)
    b2 = 4.0 * (1.0 + 2.0 * lam) * length / math.sqrt(math.log(4.0))
    return math.log(8.0) + (p / mu) * math.log(b1) + (0.5 + lam) ** 2 * math.log(b2)


def dini_power_closed_form(mu: float, y: float) -> float:
    """Closed form of the nested modulus integral for omega(t) = t^mu."""
    return y**mu / (mu * (1.0 + mu))


def main():
    a, b = 1.2, 0.8
    print("ellipse_perimeter(1.2, 0.8)        =", repr(ellipse_perimeter(a, b)))
    print("ellipse_chord_arc_dense(1.2, 0.8)  =", repr(ellipse_chord_arc_dense(a, b)))
    print("circle_holder_half_dense()          =", repr(circle_holder_half_dense()))
    print("ellipse_max_curvature(1.2, 0.8)     =", repr(ellipse_max_curvature(a, b)))
    print("harmonic_graph_dilatation(0.1, 2)   =", repr(harmonic_graph_dilatation_dense(0.1, 2)))
    for tau in (0.0, 0.7, math.pi / 2):
        print(f"boundary_jacobian_ellipse(c=0.2, tau={tau:.4f}) =", repr(boundary_jacobian_integral_ellipse(0.2, tau)))
    alpha = holder_exponent(1.0, math.pi / 2, 1.0)
    print("holder_exponent(1, pi/2, 1)         =", repr(alpha))
    print("growth_const(1, pi/2, 1, pi)        =", repr(boundary_growth_constant(1.0, math.pi / 2, 1.0, math.pi)))
    logl = lipschitz_log(1.0, 1.0, 1.0, math.pi / 2, 1.0, TWO_PI)
    print("lipschitz_log(1,1,1,pi/2,1,2pi)     =", repr(logl), "hex", logl.hex())
    msl = minimal_surface_log(math.pi / 2, 1.0, 1.0, TWO_PI)
    print("minimal_surface_log(pi/2,1,1,2pi)   =", repr(msl), "hex", msl.hex())


if __name__ == "__main__":
    main()
