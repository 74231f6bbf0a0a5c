#!/usr/bin/env python3
"""Regenerate crates/core/src/special/tables.rs.

The mid- and far-range branches of Y0 and K0 are Chebyshev fits computed with
mpmath at 50 digits:

  * K0_MID:  K0(x) e^x sqrt(x) on x in [2, 20]
  * K0_FAR:  K0(1/u) e^(1/u) / sqrt(u) on u = 1/x in [0, 0.05]   (x >= 20)
  * Y0_MID:  Y0(x) directly on x in [4.5, 16]
  * Y0_FAR_AMP / Y0_FAR_PHASE: modulus sqrt(x)*sqrt(J0^2+Y0^2) and phase
    atan2-corrected against (x - pi/4), as functions of u = 1/x in [0, 1/16]
    (x >= 16), so Y0(x) = amp(u)/sqrt(x) * sin(x - pi/4 + phase(u)).

Coefficients are emitted for Clenshaw evaluation with the c0/2 convention.
"""
import os
import mpmath as mp

mp.mp.dps = 50

OUT = os.path.join(os.path.dirname(__file__), "..", "crates", "core", "src", "special", "tables.rs")


def cheb_coeffs(f, a, b, m):
    a = mp.mpf(a)
    b = mp.mpf(b)
    nodes = [mp.cos(mp.pi * (2 * i + 1) / (2 * m)) for i in range(m)]
    vals = [f(0.5 * (b - a) * t + 0.5 * (b + a)) for t in nodes]
    cs = []
    for j in range(m):
        s = mp.fsum(vals[i] * mp.cos(mp.pi * j * (2 * i + 1) / (2 * m)) for i in range(m))
        cs.append(2 * s / m)
    return cs


def trim(cs, eps):
    n = len(cs)
    while n > 1 and abs(cs[n - 1]) < eps:
        n -= 1
    return cs[:n]


def k0_scaled(x):
    return mp.besselk(0, x) * mp.e ** x * mp.sqrt(x)


def k0_scaled_u(u):
    return mp.besselk(0, 1 / u) * mp.e ** (1 / u) / mp.sqrt(u)


def y0_amp(u):
    x = 1 / u
    j0 = mp.besselj(0, x)
    y0 = mp.bessely(0, x)
    return mp.sqrt(j0 ** 2 + y0 ** 2) * mp.sqrt(x)


def y0_phase(u):
    x = 1 / u
    j0 = mp.besselj(0, x)
    y0 = mp.bessely(0, x)
    chi = x - mp.pi / 4
    c = mp.cos(chi)
    s = mp.sin(chi)
    return mp.atan2(y0 * c - j0 * s, j0 * c + y0 * s)


def emit(f, name, coeffs, a, b):
    f.write(f"pub(crate) const {name}_RANGE: (f64, f64) = ({float(a)!r}, {float(b)!r});\n")
    f.write(f"pub(crate) const {name}: [f64; {len(coeffs)}] = [\n")
    for c in coeffs:
        f.write(f"    {float(c)!r},\n")
    f.write("];\n\n")


def main():
    tables = [
        ("K0_MID", k0_scaled, 2, 20, 72),
        ("K0_FAR", k0_scaled_u, 0, mp.mpf("0.05"), 48),
        ("Y0_MID", lambda x: mp.bessely(0, x), mp.mpf("4.5"), 16, 80),
        ("Y0_FAR_AMP", y0_amp, 0, mp.mpf(1) / 16, 48),
        ("Y0_FAR_PHASE", y0_phase, 0, mp.mpf(1) / 16, 48),
    ]
    with open(OUT, "w") as f:
        f.write("//! Chebyshev coefficient tables for the Bessel mid/far branches.\n")
        f.write("//!\n")
        f.write("//! Generated by tools/gen_chebyshev_tables.py; do not edit by hand.\n")
        f.write("//! Coefficients follow the Clenshaw c0/2 convention.\n\n")
        for name, fn, a, b, m in tables:
            cs = trim(cheb_coeffs(fn, a, b, m), mp.mpf("1e-18"))
            emit(f, name, cs, a, b)
            print(name, "coefficients:", len(cs))
    print("wrote", OUT)


if __name__ == "__main__":
    main()
