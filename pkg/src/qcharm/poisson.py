"""Harmonic extension of circle boundary data and its first derivatives.

Everything is driven by the periodic trapezoid rule, which is spectrally
accurate for the analytic integrands that arise at radii bounded away
from one.  Evaluations closer to the circle than the configured cap are
refused unless adaptivity is enabled, in which case the node count
doubles until two successive answers agree.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .curves import TWO_PI, JordanCurve, TrigPolynomial
from .errors import (
    DegenerateFrameError,
    DomainError,
    NearBoundaryError,
    RefinementError,
)


@dataclass(frozen=True)
class QuadratureSpec:
    """Angular rule size and near-boundary policy for disk evaluations."""

    m: int = 1024
    delta: float = 1e-2
    adaptive: bool = True
    tol: float = 1e-12
    max_m: int = 1 << 21

    def __post_init__(self):
        if self.m < 64 or self.m & (self.m - 1):
            raise DomainError("node count m must be a power of two, at least 64")
        if not 0.0 < self.delta <= 0.5:
            raise DomainError("radial cap delta must lie in (0, 0.5]")


class AngleMap:
    """Weak homeomorphism of the circle: t -> t + periodic part, nondecreasing."""

    def __init__(self, periodic: TrigPolynomial | None = None):
        if periodic is not None and periodic.dim != 1:
            raise DomainError("periodic part of an angle map must be scalar-valued")
        self._osc = periodic
        self._osc_d = periodic.derivative() if periodic is not None else None
        self._osc_dd = self._osc_d.derivative() if periodic is not None else None
        t = TWO_PI * np.arange(512) / 512
        fp = self.derivative(t)
        if np.min(fp) < -1e-9:
            raise DomainError("angle map must be nondecreasing")

    @classmethod
    def identity(cls) -> "AngleMap":
        return cls(None)

    @classmethod
    def from_samples(cls, values) -> "AngleMap":
        """Fit from samples of f at uniform nodes; f(2*pi) - f(0) must be 2*pi."""
        v = np.asarray(values, dtype=float)
        t = TWO_PI * np.arange(v.size) / v.size
        return cls(TrigPolynomial.from_samples((v - t)[:, None]))

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        if self._osc is None:
            return t.copy() if t.ndim else float(t)
        osc = self._osc(t)[..., 0] if t.ndim else float(self._osc(t)[0])
        return t + osc

    def derivative(self, t):
        t = np.asarray(t, dtype=float)
        if self._osc_d is None:
            return np.ones_like(t) if t.ndim else 1.0
        osc = self._osc_d(t)[..., 0] if t.ndim else float(self._osc_d(t)[0])
        return 1.0 + osc

    def second_derivative(self, t):
        t = np.asarray(t, dtype=float)
        if self._osc_dd is None:
            return np.zeros_like(t) if t.ndim else 0.0
        return self._osc_dd(t)[..., 0] if t.ndim else float(self._osc_dd(t)[0])


class BoundaryMap:
    """Boundary data F(e^{it}) = h(e^{i f(t)}) for a target curve h.

    ``angle_map`` defaults to the identity, in which case F is just the
    curve's own parametrization.  ``from_values`` wraps raw periodic data
    without a curve factorization; such maps support harmonic extension
    and gradients but not the curve-kernel operations.
    """

    def __init__(self, curve: JordanCurve, angle_map: AngleMap | None = None):
        self.curve = curve
        self.angle_map = angle_map or AngleMap.identity()
        self._poly = None
        increase = float(self.angle_map(TWO_PI)) - float(self.angle_map(0.0))
        if abs(increase - TWO_PI) > 1e-9:
            raise DomainError("angle map must increase by 2*pi over a period")
        t = TWO_PI * np.arange(512) / 512
        reach = float(np.max(np.linalg.norm(self.values(t), axis=1)))
        limit = float(np.max(np.linalg.norm(self.curve.points, axis=1)))
        if reach > limit * (1.0 + 1e-4) + 1e-9:
            raise DomainError("boundary values escape the target curve's reach")

    @classmethod
    def from_values(cls, samples) -> "BoundaryMap":
        """Raw boundary data from uniform periodic samples (m, n)."""
        obj = cls.__new__(cls)
        obj.curve = None
        obj.angle_map = None
        obj._poly = TrigPolynomial.from_samples(np.atleast_2d(np.asarray(samples, dtype=float)))
        return obj

    @property
    def dim(self) -> int:
        return self.curve.dim if self.curve is not None else self._poly.dim

    def reach(self) -> float:
        if self.curve is not None:
            return float(np.max(np.linalg.norm(self.curve.points, axis=1)))
        t = TWO_PI * np.arange(512) / 512
        return float(np.max(np.linalg.norm(self._poly(t), axis=1)))

    def values(self, t):
        if self.curve is not None:
            return self.curve.position(self.angle_map(t))
        return self._poly(t)

    def derivative(self, t):
        if self.curve is not None:
            f = self.angle_map(t)
            fp = self.angle_map.derivative(t)
            return self.curve.velocity(f) * np.asarray(fp)[..., None]
        return self._poly.derivative()(t)


@dataclass(frozen=True)
class GradientFrame:
    """Pair of partial-derivative vectors of a disk map at one point."""

    z: complex
    ux: np.ndarray
    uy: np.ndarray

    def __post_init__(self):
        if not (np.all(np.isfinite(self.ux)) and np.all(np.isfinite(self.uy))):
            raise DomainError("gradient frame entries must be finite")


@dataclass(frozen=True)
class FrameNorms:
    hs_norm: float
    op_norm: float
    min_norm: float


@dataclass
class CheckRecord:
    """One verified inequality: margin = rhs - lhs, passing when >= -tol."""

    name: str
    lhs: float
    rhs: float
    margin: float
    passed: bool


@dataclass
class InequalityReport:
    name: str
    records: list
    worst_margin: float
    all_passed: bool


# ---------------------------------------------------------------------------
# kernel and extension


def poisson_kernel(r, t):
    """(1 - r^2) / (2*pi*(1 - 2 r cos t + r^2)) for 0 <= r < 1.

    The denominator is evaluated as (1-r)^2 + 4 r sin^2(t/2), which is a
    sum of nonnegative terms and stays accurate near its minimum.
    """
    r = np.asarray(r, dtype=float)
    if np.any(r < 0.0) or np.any(r >= 1.0):
        raise DomainError("kernel radius must lie in [0, 1)")
    t = np.asarray(t, dtype=float)
    den = (1.0 - r) ** 2 + 4.0 * r * np.sin(t / 2.0) ** 2
    return (1.0 - r) * (1.0 + r) / (TWO_PI * den)


def _check_radius(z, spec: QuadratureSpec):
    r = np.abs(np.atleast_1d(np.asarray(z, dtype=complex)))
    if np.any(r >= 1.0):
        raise DomainError("evaluation points must lie strictly inside the unit disk")
    if np.any(r > 1.0 - spec.delta) and not spec.adaptive:
        raise NearBoundaryError(
            f"point with |z| = {np.max(r):.6f} exceeds the cap 1 - delta = {1 - spec.delta:.6f}; "
            "raise m or enable adaptivity"
        )


def _starting_nodes(r_max: float, spec: QuadratureSpec) -> int:
    """Node count from the largest radius: aliasing decays like r^M, so
    target M with r^M below roundoff before the doubling check runs."""
    m = spec.m
    if 0.0 < r_max < 1.0:
        need = 1.2 * 36.0 / -np.log(r_max)
        while m < need and m < spec.max_m:
            m *= 2
    return m


def _adaptive(rule, r_max: float, spec: QuadratureSpec, cond: float = 1.0):
    """Double the rule until two runs agree.  ``cond`` estimates the sum of
    absolute weighted integrand values; the roundoff floor of the rule is
    proportional to it, so agreement below that floor is never demanded."""
    m = _starting_nodes(r_max, spec)
    prev = rule(m)
    if not spec.adaptive:
        return prev
    while m < spec.max_m:
        m *= 2
        cur = rule(m)
        err = max(float(np.max(np.abs(c - p))) for c, p in zip(cur, prev))
        scale = max(float(np.max(np.abs(c))) for c in cur)
        floor = 1e-15 * cond * np.log2(m)
        if err < spec.tol * (1.0 + scale) + floor:
            return cur
        prev = cur
    raise RefinementError(f"angular rule did not settle below {spec.max_m} nodes")


_CHUNK_BUDGET = 1 << 23  # max kernel-matrix entries held at once


def poisson_extend(boundary: BoundaryMap, z, spec: QuadratureSpec = QuadratureSpec()):
    """Harmonic extension of the boundary data at interior point(s) z."""
    zz = np.atleast_1d(np.asarray(z, dtype=complex))
    _check_radius(zz, spec)
    r = np.abs(zz)
    phi = np.angle(zz)

    def rule(m):
        t = TWO_PI * np.arange(m) / m
        fv = boundary.values(t)
        out = np.empty((zz.size, boundary.dim))
        step = max(8, _CHUNK_BUDGET // m)
        for lo in range(0, zz.size, step):
            hi = min(lo + step, zz.size)
            pk = poisson_kernel(r[lo:hi, None], t[None, :] - phi[lo:hi, None])
            out[lo:hi] = (pk @ fv) * (TWO_PI / m)
        return (out,)

    reach = boundary.reach()
    (vals,) = _adaptive(rule, float(np.max(r)), spec, cond=reach)
    return vals[0] if np.isscalar(z) or np.asarray(z).ndim == 0 else vals


def _kernel_gradient(r, phi, t):
    """Cartesian partials of the kernel at z = r e^{i phi}.

    Uses the cancellation-free denominator (1-r)^2 + 4 r sin^2((t-phi)/2).
    """
    num = (1.0 - r) * (1.0 + r)
    den = (1.0 - r) ** 2 + 4.0 * r * np.sin((t - phi) / 2.0) ** 2
    x = r * np.cos(phi)
    y = r * np.sin(phi)
    px = -(x * den + num * (x - np.cos(t))) / (np.pi * den**2)
    py = -(y * den + num * (y - np.sin(t))) / (np.pi * den**2)
    return px, py


def gradient_frames(boundary: BoundaryMap, z, spec: QuadratureSpec = QuadratureSpec()):
    """Gradient frames (ux, uy) at an array of interior points; returns
    (ux, uy) arrays of shape (k, n)."""
    zz = np.atleast_1d(np.asarray(z, dtype=complex))
    _check_radius(zz, spec)
    r = np.abs(zz)
    phi = np.angle(zz)

    def rule(m):
        t = TWO_PI * np.arange(m) / m
        fv = boundary.values(t)
        w = TWO_PI / m
        ux = np.empty((zz.size, boundary.dim))
        uy = np.empty_like(ux)
        step = max(8, _CHUNK_BUDGET // m)
        for lo in range(0, zz.size, step):
            hi = min(lo + step, zz.size)
            px, py = _kernel_gradient(r[lo:hi, None], phi[lo:hi, None], t[None, :])
            ux[lo:hi] = (px @ fv) * w
            uy[lo:hi] = (py @ fv) * w
        return ux, uy

    reach = boundary.reach()
    r_max = float(np.max(np.abs(zz)))
    return _adaptive(rule, r_max, spec, cond=2.0 * reach / max(1.0 - r_max, 1e-12))


def gradient(boundary: BoundaryMap, z: complex, spec: QuadratureSpec = QuadratureSpec()) -> GradientFrame:
    """Gradient frame at a single interior point."""
    ux, uy = gradient_frames(boundary, [z], spec)
    return GradientFrame(z=complex(z), ux=ux[0], uy=uy[0])


# ---------------------------------------------------------------------------
# frame algebra


def jacobian(frame: GradientFrame) -> float:
    """sqrt(|ux|^2 |uy|^2 - <ux, uy>^2); the area magnification factor."""
    g11 = float(frame.ux @ frame.ux)
    g22 = float(frame.uy @ frame.uy)
    g12 = float(frame.ux @ frame.uy)
    return float(np.sqrt(max(g11 * g22 - g12 * g12, 0.0)))


def frame_norms(frame: GradientFrame) -> FrameNorms:
    """Hilbert-Schmidt, operator and minimal stretch of the frame.

    op and min follow the closed forms in terms of eta = J / (|ux|^2 +
    |uy|^2); the discriminant sqrt(1 - 4 eta^2) is evaluated through the
    cancellation-free identity s^2 - 4 J^2 = (g11 - g22)^2 + 4 g12^2, and
    min is taken as J / op so that op * min reproduces J exactly.
    """
    g11 = float(frame.ux @ frame.ux)
    g22 = float(frame.uy @ frame.uy)
    g12 = float(frame.ux @ frame.uy)
    s = g11 + g22
    if s == 0.0:
        return FrameNorms(0.0, 0.0, 0.0)
    j = jacobian(frame)
    disc = np.sqrt((g11 - g22) ** 2 + 4.0 * g12 * g12)
    op = float(np.sqrt((s + disc) / 2.0))
    mn = j / op if op > 0.0 else 0.0
    return FrameNorms(hs_norm=float(np.sqrt(s / 2.0)), op_norm=op, min_norm=mn)


def dilatation(frame: GradientFrame) -> float:
    """Pointwise stretch ratio op/min >= 1; 1 exactly for conformal frames."""
    norms = frame_norms(frame)
    if norms.min_norm == 0.0:
        raise DegenerateFrameError("frame has rank <= 1 (branch point); dilatation undefined")
    return norms.op_norm / norms.min_norm


def _dilatations(ux, uy):
    g11 = np.einsum("ij,ij->i", ux, ux)
    g22 = np.einsum("ij,ij->i", uy, uy)
    g12 = np.einsum("ij,ij->i", ux, uy)
    s = g11 + g22
    j = np.sqrt(np.clip(g11 * g22 - g12**2, 0.0, None))
    disc = np.sqrt((g11 - g22) ** 2 + 4.0 * g12**2)
    op = np.sqrt((s + disc) / 2.0)
    with np.errstate(divide="ignore", invalid="ignore"):
        mn = np.where(op > 0.0, j / np.where(op > 0.0, op, 1.0), 0.0)
    return op, mn, j


def angular_derivative_check(
    boundary: BoundaryMap,
    grid,
    K: float,
    spec: QuadratureSpec = QuadratureSpec(),
    tol: float = 1e-12,
) -> InequalityReport:
    """Verify |du/dt|^2 <= r^2 K J at each grid point.

    du/dt is assembled from the frame as r*(uy cos t - ux sin t).
    Violations are recorded in the report, never raised.
    """
    if K < 1.0:
        raise DomainError("dilatation bound K must be at least 1")
    zz = np.atleast_1d(np.asarray(grid, dtype=complex))
    ux, uy = gradient_frames(boundary, zz, spec)
    r = np.abs(zz)
    th = np.angle(zz)
    ut = r[:, None] * (uy * np.cos(th)[:, None] - ux * np.sin(th)[:, None])
    lhs = np.einsum("ij,ij->i", ut, ut)
    _, _, j = _dilatations(ux, uy)
    rhs = r**2 * K * j
    records = []
    for k, z in enumerate(zz):
        margin = float(rhs[k] - lhs[k])
        records.append(
            CheckRecord(
                name=f"angular_derivative[{k}]",
                lhs=float(lhs[k]),
                rhs=float(rhs[k]),
                margin=margin,
                passed=margin >= -tol,
            )
        )
    worst = min(rec.margin for rec in records)
    return InequalityReport(
        name="angular_derivative",
        records=records,
        worst_margin=worst,
        all_passed=all(rec.passed for rec in records),
    )
