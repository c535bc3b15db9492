"""Explicit constants: isoperimetric coefficients, the boundary Hölder
exponent/constant pair, the gradient Lipschitz bound, and its
minimal-surface specialization.

All bound values are assembled in log space and exponentiated on demand;
the exponents grow like (1/2 + lambda)^2, so the plain values routinely
overflow while the logs stay tame.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .curves import curve_length
from .errors import DegenerateSurfaceError, DomainError, RefinementError
from .poisson import BoundaryMap, QuadratureSpec, gradient_frames

LOG2 = math.log(2.0)
LOG4 = math.log(4.0)


@dataclass(frozen=True)
class BoundInputs:
    """Inputs of the explicit gradient bound.

    ``area`` defaults to length^2 / 4, the curve-only majorant of the
    enclosed area for the surfaces in scope (isoperimetric coefficient at
    least one).
    """

    K: float
    mu: float
    upsilon: float
    lam: float
    c_gamma: float
    length: float
    area: float | None = None

    def __post_init__(self):
        if self.K < 1.0:
            raise DomainError("dilatation bound K must be at least 1")
        if not 0.0 < self.mu <= 1.0:
            raise DomainError("mu must lie in (0, 1]")
        if not 0.0 < self.upsilon <= math.pi:
            raise DomainError("isoperimetric coefficient must lie in (0, pi]")
        if self.lam < 1.0:
            raise DomainError("chord-arc constant must be at least 1")
        if self.c_gamma < 0.0:
            raise DomainError("holder constant must be nonnegative")
        if self.length <= 0.0:
            raise DomainError("length must be positive")
        if self.area is not None:
            if self.area < 0.0:
                raise DomainError("area must be nonnegative")
            if self.area > self.length**2 / 4.0 * (1.0 + 1e-9):
                raise DomainError("area exceeds its curve-only majorant length^2 / 4")

    @property
    def effective_area(self) -> float:
        return self.area if self.area is not None else self.length**2 / 4.0


@dataclass(frozen=True)
class LipschitzBound:
    alpha: float
    log_value: float
    value: float
    inputs: BoundInputs


@dataclass
class IsoperimetricReport:
    area: float
    length: float
    ratio: float
    bound: float
    margin: float
    passed: bool
    caps: tuple
    corrections: tuple


def isoperimetric_coefficient(surface_class: str, K: float | None = None, upsilon: float | None = None) -> float:
    """Catalog coefficient by surface class.

    minimal -> pi; harmonic -> 1; qc_harmonic -> max(2*pi/(1+K^2), 1);
    custom passes an explicit coefficient through a range check.
    """
    if surface_class == "minimal":
        return math.pi
    if surface_class == "harmonic":
        return 1.0
    if surface_class == "qc_harmonic":
        if K is None or K < 1.0:
            raise DomainError("qc_harmonic needs a dilatation bound K >= 1")
        return max(2.0 * math.pi / (1.0 + K * K), 1.0)
    if surface_class == "custom":
        if upsilon is None or not 0.0 < upsilon <= math.pi:
            raise DomainError("custom coefficient must lie in (0, pi]")
        return upsilon
    raise DomainError(f"unknown surface class {surface_class!r}")


def mori_exponent(K: float, lam: float, upsilon: float) -> float:
    """Boundary Hölder exponent 8*upsilon / (pi*K*(1 + 2*lambda)^2).

    Always in (0, 1] for K >= 1, lambda >= 1, upsilon <= pi.
    """
    if K < 1.0 or lam < 1.0 or not 0.0 < upsilon <= math.pi:
        raise DomainError("require K >= 1, lambda >= 1, upsilon in (0, pi]")
    return 8.0 * upsilon / (math.pi * K * (1.0 + 2.0 * lam) ** 2)


def mori_constant(K: float, lam: float, upsilon: float, area: float, variant: str = "statement") -> float:
    """Growth constant of the boundary Hölder estimate.

    The default carries the factor 2^alpha; ``variant="proof"`` exposes the
    smaller 2^(alpha/2) version that the derivation actually produces (the
    default is the conservative one, so inequalities verified against it
    remain valid for both readings).
    """
    if area <= 0.0:
        raise DomainError("surface area must be positive")
    alpha = mori_exponent(K, lam, upsilon)
    if variant == "statement":
        factor = 2.0**alpha
    elif variant == "proof":
        factor = 2.0 ** (alpha / 2.0)
    else:
        raise DomainError(f"unknown variant {variant!r}")
    return 4.0 * (1.0 + 2.0 * lam) * factor * math.sqrt(2.0 * math.pi * K * area / LOG2)


def lipschitz_bound(inputs: BoundInputs) -> LipschitzBound:
    """Explicit gradient bound for normalized maps onto surfaces with
    isoperimetric coefficient at least one.

    log L = log 8 + ((2-a)/(mu*a)) * log(K*C*pi*(2-a)/(2*mu*a))
          + (2/a) * log(4*(1+2*lambda)*sqrt(4*area*pi*K/log 4)),
    with a the exponent from ``mori_exponent``.  C = 0 collapses the bound
    to zero (the first factor is a positive power of C).
    """
    if inputs.upsilon < 1.0:
        raise DomainError("the gradient bound needs an isoperimetric coefficient >= 1")
    alpha = mori_exponent(inputs.K, inputs.lam, inputs.upsilon)
    if inputs.c_gamma == 0.0:
        return LipschitzBound(alpha=alpha, log_value=float("-inf"), value=0.0, inputs=inputs)
    e1 = (2.0 - alpha) / (inputs.mu * alpha)
    b1 = inputs.K * inputs.c_gamma * math.pi * (2.0 - alpha) / (2.0 * inputs.mu * alpha)
    b2 = 4.0 * (1.0 + 2.0 * inputs.lam) * math.sqrt(4.0 * inputs.effective_area * math.pi * inputs.K / LOG4)
    log_l = math.log(8.0) + e1 * math.log(b1) + (2.0 / alpha) * math.log(b2)
    try:
        value = math.exp(log_l)
    except OverflowError:
        value = float("inf")
    return LipschitzBound(alpha=alpha, log_value=log_l, value=value, inputs=inputs)


def minimal_surface_bound(lam: float, mu: float, c_slot: float, length: float) -> LipschitzBound:
    """Gradient bound for normalized conformal parametrizations of minimal
    surfaces, in terms of the boundary curve only.

    ``c_slot`` is the derivative Hölder constant for exponent mu; at mu = 1
    the caller passes the largest curvature instead.  Matches the general
    bound at K = 1, upsilon = pi, area = length^2/(4*pi).
    """
    if lam < 1.0:
        raise DomainError("chord-arc constant must be at least 1")
    if not 0.0 < mu <= 1.0:
        raise DomainError("mu must lie in (0, 1]")
    if c_slot < 0.0:
        raise DomainError("the Hölder/curvature constant must be nonnegative")
    if length <= 0.0:
        raise DomainError("length must be positive")
    p = lam * (1.0 + lam) - 0.75
    alpha = 8.0 / (1.0 + 2.0 * lam) ** 2
    inputs = BoundInputs(
        K=1.0, mu=mu, upsilon=math.pi, lam=lam, c_gamma=c_slot, length=length, area=length**2 / (4.0 * math.pi)
    )
    if c_slot == 0.0:
        return LipschitzBound(alpha=alpha, log_value=float("-inf"), value=0.0, inputs=inputs)
    b1 = c_slot * p * math.pi / (2.0 * mu)
    b2 = 4.0 * (1.0 + 2.0 * lam) * length / math.sqrt(LOG4)
    log_l = math.log(8.0) + (p / mu) * math.log(b1) + (0.5 + lam) ** 2 * math.log(b2)
    try:
        value = math.exp(log_l)
    except OverflowError:
        value = float("inf")
    return LipschitzBound(alpha=alpha, log_value=log_l, value=value, inputs=inputs)


# ---------------------------------------------------------------------------
# surface area and the isoperimetric ratio check


def surface_area(
    boundary: BoundaryMap,
    spec: QuadratureSpec = QuadratureSpec(),
    radial_order: int = 48,
    angular_nodes: int = 256,
    levels: int = 5,
    tol: float = 1e-6,
) -> tuple[float, dict]:
    """Area of the harmonic extension's image counted with multiplicity:
    the integral of the Jacobian over the disk.

    Polar rule: Gauss-Legendre radially on [0, cap], trapezoid in angle,
    repeated for caps 1 - delta/2^k and completed by Neville extrapolation
    of cap -> 1.  The per-radius node counts come straight from the
    aliasing decay rate; the extrapolation corrections audit convergence.
    """
    gl_nodes, gl_weights = np.polynomial.legendre.leggauss(radial_order)
    theta = 2.0 * math.pi * np.arange(angular_nodes) / angular_nodes
    caps = [1.0 - spec.delta / 2.0**k for k in range(levels)]
    spec = QuadratureSpec(
        m=spec.m, delta=min(spec.delta / 2.0**levels, 0.5), adaptive=False, tol=spec.tol, max_m=spec.max_m
    )

    def disk_integral(cap: float) -> float:
        r = 0.5 * cap * (gl_nodes + 1.0)
        w = 0.5 * cap * gl_weights
        total = 0.0
        for ri, wi in zip(r, w):
            z = ri * np.exp(1j * theta)
            ux, uy = gradient_frames(boundary, z, spec)
            g11 = np.einsum("ij,ij->i", ux, ux)
            g22 = np.einsum("ij,ij->i", uy, uy)
            g12 = np.einsum("ij,ij->i", ux, uy)
            jac = np.sqrt(np.clip(g11 * g22 - g12**2, 0.0, None))
            total += wi * ri * float(np.mean(jac)) * 2.0 * math.pi
        return total

    values = np.array([disk_integral(c) for c in caps])
    h = 1.0 - np.asarray(caps)
    # Neville tableau toward h = 0
    tab = values.copy()
    corrections = []
    for j in range(1, levels):
        for i in range(levels - 1, j - 1, -1):
            tab[i] = tab[i] + (tab[i] - tab[i - 1]) * h[i] / (h[i - j] - h[i])
        corrections.append(abs(tab[levels - 1] - tab[levels - 2]))
    area = float(tab[levels - 1])
    meta = {"caps": tuple(caps), "raw": tuple(float(v) for v in values), "corrections": tuple(float(c) for c in corrections)}
    if corrections and corrections[-1] > tol * max(1.0, abs(area)):
        raise RefinementError(f"area extrapolation did not settle: last correction {corrections[-1]:.3e}")
    return area, meta


def isoperimetric_check(
    boundary: BoundaryMap,
    spec: QuadratureSpec = QuadratureSpec(),
    upsilon: float = 1.0,
    area: float | None = None,
    tol: float = 1e-9,
) -> IsoperimetricReport:
    """Ratio area / length^2 against the ceiling 1 / (4*upsilon)."""
    if not 0.0 < upsilon <= math.pi:
        raise DomainError("isoperimetric coefficient must lie in (0, pi]")
    if boundary.curve is None:
        raise DegenerateSurfaceError("boundary data has no curve; the length ratio is undefined")
    length = curve_length(boundary.curve)
    scale = float(np.max(np.abs(boundary.curve.points)))
    if length < 1e-12 * max(scale, 1.0) or scale == 0.0:
        raise DegenerateSurfaceError("boundary curve has no length; ratio undefined")
    if area is None:
        area_val, meta = surface_area(boundary, spec)
    else:
        area_val, meta = float(area), {"caps": (), "raw": (), "corrections": ()}
    ratio = area_val / length**2
    bound = 1.0 / (4.0 * upsilon)
    margin = bound - ratio
    return IsoperimetricReport(
        area=area_val,
        length=length,
        ratio=ratio,
        bound=bound,
        margin=margin,
        passed=margin >= -tol,
        caps=meta["caps"],
        corrections=meta["corrections"],
    )
