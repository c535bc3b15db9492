"""Chord-tangent kernel of a curve, its modulus-of-continuity majorants,
and the singular integral bounding the boundary Jacobian.

The kernel measures the area spanned by the chord h(t) - h(s) and the
tangent h'(s); it vanishes quadratically on the diagonal, which makes the
boundary integral integrable, and for Hölder-smooth curves it is majorized
by explicit modulus integrals.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .curves import TWO_PI, JordanCurve, ScanResult, _pair_supremum
from .errors import ConsistencyError, DomainError, RefinementError
from .poisson import BoundaryMap, QuadratureSpec

RADICAND_FLOOR = -1e-14


@dataclass(frozen=True)
class KernelEvaluation:
    """Kernel value at an angle pair, with its majorants when requested."""

    s: float
    t: float
    value: float
    dini_bound: float | None = None
    holder_bound: float | None = None


def _cross_norm(x, y):
    """sqrt(|x|^2 |y|^2 - <x, y>^2) rowwise.

    The raw radicand is kept for the consistency check (tolerating only a
    relative -1e-14 dip), but the returned value uses the equivalent
    projection form |y| * |x - proj_y x|, which does not suffer from
    cancellation when x is nearly parallel to y.
    """
    x = np.atleast_2d(x)
    y = np.atleast_2d(y)
    x2 = np.einsum("ij,ij->i", x, x)
    y2 = np.einsum("ij,ij->i", y, y)
    xy = np.einsum("ij,ij->i", x, y)
    rad = x2 * y2 - xy**2
    floor = RADICAND_FLOOR * np.maximum(1.0, x2 * y2)
    if np.any(rad < floor):
        raise ConsistencyError(f"kernel radicand fell to {float(np.min(rad)):.3e}; inconsistent derivative data")
    with np.errstate(divide="ignore", invalid="ignore"):
        coef = np.where(y2 > 0.0, xy / np.where(y2 > 0.0, y2, 1.0), 0.0)
    p = x - coef[:, None] * y
    return np.sqrt(y2 * np.einsum("ij,ij->i", p, p))


def chord_tangent_kernel(curve: JordanCurve, s, t):
    """Kernel value(s) at angle pair(s): area of (h(t) - h(s)) against h'(s)."""
    s = np.atleast_1d(np.asarray(s, dtype=float))
    t = np.atleast_1d(np.asarray(t, dtype=float))
    s, t = np.broadcast_arrays(s, t)
    x = curve.position(t) - curve.position(s)
    y = curve.velocity(s)
    out = _cross_norm(x, y)
    return float(out[0]) if out.size == 1 else out


def derivative_holder_seminorm(curve: JordanCurve, mu: float, refine: int = 30, coarse_nodes: int | None = None) -> ScanResult:
    """sup over distinct angles of |h'(x) - h'(y)| / dist(x, y)^mu.

    Same machinery as the arc-length constant but for the curve's own
    parametrization; dist is circle distance of the angles.
    """
    if not 0.0 < mu <= 1.0:
        raise DomainError("holder exponent mu must lie in (0, 1]")
    from .curves import _coarse_node_data, _gap_angles, _pair_norm_matrix, circle_distance

    m0 = min(coarse_nodes or curve.node_count, 512)

    def objective(ti, tj):
        dv = np.linalg.norm(curve.velocity(ti) - curve.velocity(tj), axis=1)
        d = circle_distance(ti, tj)
        with np.errstate(divide="ignore", invalid="ignore"):
            return np.where(d > 0, dv / d**mu, -np.inf)

    _, vel = _coarse_node_data(curve, m0)
    dist = _gap_angles(m0)
    np.fill_diagonal(dist, np.inf)
    coarse = _pair_norm_matrix(vel) / dist**mu

    if mu == 1.0:
        diag = float(np.max(np.linalg.norm(curve.acceleration_grid(max(4 * m0, 2048)), axis=1)))
    else:
        diag = 0.0
    return _pair_supremum(objective, diag, coarse, refine=refine)


def _chordal(s, t):
    return 2.0 * np.abs(np.sin((np.asarray(s) - np.asarray(t)) / 2.0))


def _modulus_integral(omega, upper: float) -> float:
    """Integral of a modulus over [0, upper]: exact for table/power objects,
    adaptive quadrature for plain callables."""
    if hasattr(omega, "integral_to"):
        return float(omega.integral_to(upper))
    from scipy.integrate import quad

    val, _ = quad(lambda x: float(omega(x)), 0.0, upper, epsabs=1e-12, epsrel=1e-11, limit=200)
    return float(val)


def kernel_bound_dini(curve: JordanCurve, omega, s, t, tol: float = 1e-9):
    """Modulus-integral majorant of the kernel at one angle pair.

    bound = (|h(s) - h(t)| / |e^{is} - e^{it}|) * integral_0^{pi |e^{is}-e^{it}|} omega.
    The kernel value is recomputed and checked against the bound.
    """
    _check_monotone_modulus(omega)
    s = float(s)
    t = float(t)
    chord_circle = float(_chordal(s, t))
    if chord_circle == 0.0:
        return 0.0
    chord_target = float(np.linalg.norm(curve.position(t) - curve.position(s)))
    bound = (chord_target / chord_circle) * _modulus_integral(omega, np.pi * chord_circle)
    value = chord_tangent_kernel(curve, s, t)
    if value > bound + tol:
        raise ConsistencyError(f"kernel {value:.6e} exceeds modulus bound {bound:.6e} at ({s}, {t})")
    return bound


def kernel_bound_holder(curve: JordanCurve, mu: float, s, t, c_h: float | None = None, tol: float = 1e-9):
    """Hölder-form majorant c_h |h(s) - h(t)| |e^{is} - e^{it}|^mu.

    c_h = (1 / (1 + mu)) * sup |h'(x) - h'(y)| / dist(x, y)^mu is computed
    from the curve when not supplied.  Returns (bound, c_h).
    """
    if not 0.0 < mu <= 1.0:
        raise DomainError("holder exponent mu must lie in (0, 1]")
    if c_h is None:
        c_h = derivative_holder_seminorm(curve, mu).value / (1.0 + mu)
    s = float(s)
    t = float(t)
    chord_circle = float(_chordal(s, t))
    if chord_circle == 0.0:
        return 0.0, c_h
    chord_target = float(np.linalg.norm(curve.position(t) - curve.position(s)))
    bound = c_h * chord_target * chord_circle**mu
    value = chord_tangent_kernel(curve, s, t)
    if value > bound + tol:
        raise ConsistencyError(f"kernel {value:.6e} exceeds holder bound {bound:.6e} at ({s}, {t})")
    return bound, c_h


def evaluate_kernel(
    curve: JordanCurve, s: float, t: float, omega=None, mu: float | None = None
) -> KernelEvaluation:
    """Kernel value plus the modulus and Hölder majorants when asked for."""
    value = float(chord_tangent_kernel(curve, s, t))
    dini = kernel_bound_dini(curve, omega, s, t) if omega is not None else None
    holder = kernel_bound_holder(curve, mu, s, t)[0] if mu is not None else None
    return KernelEvaluation(s=float(s), t=float(t), value=value, dini_bound=dini, holder_bound=holder)


def _check_monotone_modulus(omega):
    probe = np.linspace(1e-6, TWO_PI, 64)
    vals = np.asarray([float(omega(x)) for x in probe])
    if np.any(np.diff(vals) < -1e-10):
        raise DomainError("modulus of continuity must be nondecreasing")


def kernel_composition_residual(curve: JordanCurve, angle_map, s, t) -> float:
    """|K_{h o e^{if}}(s, t) - |f'(s)| K_h(f(s), f(t))| for a smooth circle map f."""
    s = float(s)
    t = float(t)
    fs = float(angle_map(s))
    ft = float(angle_map(t))
    fps = float(angle_map.derivative(s))
    x = (curve.position(ft) - curve.position(fs))[None, :]
    y = (curve.velocity(fs) * fps)[None, :]
    lhs = float(_cross_norm(x, y)[0])
    rhs = abs(fps) * chord_tangent_kernel(curve, fs, ft)
    return abs(lhs - rhs)


# ---------------------------------------------------------------------------
# boundary Jacobian bound


def _gauss_panels(a: float, b: float, order: int, panels: int):
    nodes, weights = np.polynomial.legendre.leggauss(order)
    edges = np.linspace(a, b, panels + 1)
    mid = 0.5 * (edges[1:] + edges[:-1])
    half = 0.5 * np.diff(edges)
    x = (mid[:, None] + half[:, None] * nodes[None, :]).ravel()
    w = (half[:, None] * weights[None, :]).ravel()
    return x, w


def _geometric_panels(a: float, b: float, order: int):
    """Gauss-Legendre on [a, b] with panel widths doubling away from a."""
    nodes, weights = np.polynomial.legendre.leggauss(order)
    edges = [a]
    width = a
    while edges[-1] + width < b:
        edges.append(edges[-1] + width)
        width *= 2.0
    edges.append(b)
    edges = np.asarray(edges)
    mid = 0.5 * (edges[1:] + edges[:-1])
    half = 0.5 * np.diff(edges)
    x = (mid[:, None] + half[:, None] * nodes[None, :]).ravel()
    w = (half[:, None] * weights[None, :]).ravel()
    return x, w


def boundary_jacobian_bound(
    boundary: BoundaryMap,
    tau: float,
    spec: QuadratureSpec = QuadratureSpec(),
    mu: float = 1.0,
    method: str = "graded",
    form: str = "kernel",
    c_h: float | None = None,
) -> float:
    """Singular integral bounding the boundary Jacobian at angle tau.

    value = |f'(tau)| * integral of K_h(e^{i f(tau)}, e^{i f(t)}) /
    (4*pi*sin^2((t - tau)/2)) dt.  The integrand grows like |t -
    tau|^(mu-1) near tau for curves whose derivative is mu-Hölder, so the
    inner piece is computed after the substitution t - tau = sigma^(1/mu)
    which makes it bounded ("graded").  The "majorant" method instead
    replaces the inner piece by its closed-form Hölder majorant, giving a
    slightly larger, conservative value.

    ``form="holder"`` evaluates the companion majorant built from boundary
    differences |F(t) - F(tau)|^(1+mu) instead of the kernel.
    """
    if not 0.0 < mu <= 1.0:
        raise DomainError("holder exponent mu must lie in (0, 1]")
    if method not in ("graded", "majorant"):
        raise DomainError(f"unknown method {method!r}")
    if form not in ("kernel", "holder"):
        raise DomainError(f"unknown form {form!r}")
    tau = float(tau)
    if boundary.curve is None:
        raise DomainError("boundary-Jacobian bound needs a curve-backed boundary map")
    curve = boundary.curve
    fmap = boundary.angle_map
    f_tau = float(fmap(tau))
    fp_tau = abs(float(fmap.derivative(tau)))

    pos_tau = curve.position(f_tau)
    vel_tau = curve.velocity(f_tau)
    acc_tau = curve.acceleration(f_tau)
    if form == "holder":
        if c_h is None:
            c_h = derivative_holder_seminorm(curve, mu).value / (1.0 + mu)
        min_speed = float(np.min(np.linalg.norm(curve.derivs, axis=1)))
        holder_const = c_h / min_speed
    # limit of the kernel integrand across the removable point t = tau
    limit0 = float(fmap.derivative(tau)) ** 2 * float(
        _cross_norm(acc_tau[None, :], vel_tau[None, :])[0]
    ) / TWO_PI

    def integrand(x):
        x = np.asarray(x, dtype=float)
        den = 4.0 * np.pi * np.sin(x / 2.0) ** 2
        safe = np.where(den == 0.0, 1.0, den)
        if form == "kernel":
            xv = curve.position(fmap(tau + x)) - pos_tau
            num = _cross_norm(xv, np.broadcast_to(vel_tau, xv.shape))
            return np.where(np.abs(x) < 1e-8, limit0, num / safe)
        dv = boundary.values(tau + x) - pos_tau
        num = holder_const * np.linalg.norm(dv, axis=1) ** (1.0 + mu)
        return num / safe

    if method == "majorant":
        eps = TWO_PI / spec.m
        t_out = np.linspace(eps, TWO_PI - eps, spec.m + 1)
        vals = integrand(t_out)
        h = (TWO_PI - 2.0 * eps) / spec.m
        outer = h * (np.sum(vals) - 0.5 * (vals[0] + vals[-1]))
        if c_h is None:
            c_h = derivative_holder_seminorm(curve, mu).value / (1.0 + mu)
        sup_speed = float(np.max(np.linalg.norm(curve.derivs, axis=1)))
        t_fine = TWO_PI * np.arange(1024) / 1024
        sup_fp = float(np.max(np.abs(fmap.derivative(t_fine))))
        if form == "kernel":
            coef = (np.pi / 4.0) * c_h * sup_speed * sup_fp ** (1.0 + mu)
        else:
            coef = (np.pi / 4.0) * holder_const * (sup_speed * sup_fp) ** (1.0 + mu)
        inner = coef * (2.0 / mu) * eps**mu
        return fp_tau * (outer + inner)

    def evaluate(order: int) -> float:
        eps = 0.25
        # inner piece through the grading substitution x = sigma^(1/mu)
        sigma, w_in = _gauss_panels(0.0, eps**mu, order, 4)
        x_in = sigma ** (1.0 / mu)
        jac = (1.0 / mu) * sigma ** (1.0 / mu - 1.0)
        inner = float(np.sum(w_in * jac * (integrand(x_in) + integrand(-x_in))))
        # outer piece, panels growing away from the singular point
        x_out, w_out = _geometric_panels(eps, np.pi, order)
        outer = float(np.sum(w_out * (integrand(x_out) + integrand(-x_out))))
        return inner + outer

    settle = max(spec.tol, 1e-11)
    prev = evaluate(16)
    for order in (32, 64, 128):
        cur = evaluate(order)
        if abs(cur - prev) <= settle * (1.0 + abs(cur)):
            return fp_tau * cur
        prev = cur
        if not spec.adaptive:
            break
    if spec.adaptive:
        raise RefinementError("boundary integral did not converge; raise the rule order")
    return fp_tau * prev
