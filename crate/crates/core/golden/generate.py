#!/usr/bin/env python3
"""Offline 40-digit reference values for the closed-form bound calculators.

Run from the repository root:

    python3 crates/core/golden/generate.py > crates/core/golden/golden.json

The Rust tests compare against the frozen JSON; they never call this script.
"""
import json

from mpmath import mp, mpf, log, cosh, sinh, asinh, acosh, cot, pi, sqrt, tanh, exp

mp.dps = 40


def s(d):
    return 2 * asinh(1 / sinh(d / 2))


def collar_width_area(a):
    return log(2 / a + 1) / 4


def collar_width_chi(chi):
    return log(1 / (pi * abs(chi)) + 1) / 4


def two_surface_width(a1, a2):
    return log(2 / max(a1, a2) + 1) / 8


def tube_volume(area, eps):
    return 2 * pi * (cosh(eps / 2) ** 4 - 1) * area


def volume_lower_bound(n, chi):
    k = abs(chi)
    return 4 * pi**2 * n * k * (cosh(log(1 / (pi * k) + 1) / 16) ** 4 - 1)


def eigenvalue_bound_explicit(vol_x, chi):
    k = abs(chi)
    lg = log(1 / (pi * k) + 1)
    bracket = cosh(lg / 8) ** 4 - 1
    return 64 * pi**2 * k * bracket / (lg**2 * (vol_x - 4 * pi**2 * k * bracket))


def tube_upper(chi):
    k = abs(chi)
    return s(acosh(cot((pi / 2) / (k + 2))))


def disc_area(r):
    return 4 * pi * sinh(r / 2) ** 2


def fmt(x):
    return mp.nstr(x, 30, strip_zeros=False)


values = {
    "s_of_1": s(mpf(1)),
    "collar_width_area_2": collar_width_area(mpf(2)),
    "collar_width_chi_m2": collar_width_chi(-2),
    "two_surface_width_2_2": two_surface_width(mpf(2), mpf(2)),
    "tube_volume_1_1": tube_volume(mpf(1), mpf(1)),
    "volume_lower_bound_1_m2": volume_lower_bound(1, -2),
    "eigenvalue_bound_explicit_100_m2": eigenvalue_bound_explicit(mpf(100), -2),
    "tube_bounds_m2_lower": collar_width_chi(-2),
    "tube_bounds_m2_upper": tube_upper(-2),
    "genus2_inradius": acosh(1 + sqrt(2)),
    "wedge_volume_1_1_pi": pi * (cosh(mpf(1) / 2) ** 4 - 1) * disc_area(mpf(1)),
    "half_projection_disc_area_1": 4 * pi / (exp(mpf(1)) - 1),
}

print(json.dumps({k: fmt(v) for k, v in values.items()}, indent=2))
