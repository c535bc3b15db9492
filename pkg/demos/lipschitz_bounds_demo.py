#!/usr/bin/env python3
"""Evaluate the explicit constants: isoperimetric coefficients, boundary
Hölder exponent/constant, the gradient bound, and the minimal-surface
specialization.

The plain bound values explode quickly (the exponents grow like
(1/2 + lambda)^2), which is why everything is carried in log space.
"""

import math

from qcharm import (
    BoundInputs,
    isoperimetric_coefficient,
    lipschitz_bound,
    minimal_surface_bound,
    mori_constant,
    mori_exponent,
)


def main():
    print("isoperimetric coefficients by surface class:")
    print(f"  minimal surface        : {isoperimetric_coefficient('minimal'):.6f}")
    print(f"  harmonic surface       : {isoperimetric_coefficient('harmonic'):.6f}")
    for K in (1.0, 1.5, 3.0):
        v = isoperimetric_coefficient("qc_harmonic", K=K)
        print(f"  qc harmonic, K = {K:3.1f}   : {v:.6f}")

    K, lam, ups, area = 1.0, math.pi / 2, 1.0, math.pi
    alpha = mori_exponent(K, lam, ups)
    growth = mori_constant(K, lam, ups, area)
    print(f"\nboundary Hölder exponent alpha = {alpha:.12f}")
    print(f"growth constant (statement 2^alpha form) = {growth:.10f}")
    print(f"growth constant (proof 2^(alpha/2) form) = {mori_constant(K, lam, ups, area, variant='proof'):.10f}")

    inputs = BoundInputs(K=1.0, mu=1.0, upsilon=1.0, lam=math.pi / 2, c_gamma=1.0, length=2 * math.pi)
    res = lipschitz_bound(inputs)
    print(f"\ngradient bound for the unit circle data: log L = {res.log_value:.12f}")
    print(f"  L = {res.value:.6e}  (finite but astronomically conservative)")

    extreme = BoundInputs(K=199.0, mu=1.0, upsilon=1.0, lam=199.0, c_gamma=3.2e4, length=7.96)
    res2 = lipschitz_bound(extreme)
    print(f"stretched-ellipse data: log L = {res2.log_value:.6e}, L overflows to {res2.value}")

    msb = minimal_surface_bound(math.pi / 2, 1.0, 1.0, 2 * math.pi)
    print(f"\nminimal-surface bound, circle boundary: log L = {msb.log_value:.12f}")
    gen = lipschitz_bound(
        BoundInputs(K=1.0, mu=1.0, upsilon=math.pi, lam=math.pi / 2, c_gamma=1.0, length=2 * math.pi, area=math.pi)
    )
    print(f"general bound at K=1, upsilon=pi, area=|gamma|^2/(4 pi): log L = {gen.log_value:.12f}")


if __name__ == "__main__":
    main()
