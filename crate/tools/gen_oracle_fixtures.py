#!/usr/bin/env python3
"""Regenerate the high-precision oracle tables in crates/core/tests/fixtures/.

Every table is a plain CSV with columns (x, value, digits). The x column is an
exact binary64 value printed with repr(); the value column is computed with
mpmath at 30 significant digits and printed to 25, so the tables stay valid if
the crate ever moves to extended precision.

Requires: mpmath (any recent version).
"""
import os
import mpmath as mp

mp.mp.dps = 30

OUT = os.path.join(os.path.dirname(__file__), "..", "crates", "core", "tests", "fixtures")


def logspace(a, b, n):
    return [a * (b / a) ** (i / (n - 1)) for i in range(n)]


def write_table(name, xs, fn):
    path = os.path.join(OUT, name + ".csv")
    with open(path, "w") as f:
        f.write("x,value,digits\n")
        for x in xs:
            val = fn(mp.mpf(x))
            f.write("%r,%s,25\n" % (x, mp.nstr(val, 25)))
    print("wrote", path, f"({len(xs)} rows)")


def theta_direct(t):
    return mp.nsum(lambda n: 1 / (mp.e ** (n * t) - 1), [1, mp.inf])


def ei_combo(x):
    return mp.e ** x * mp.ei(-x) + mp.e ** (-x) * mp.ei(x)


def h_reg(x):
    if x < mp.mpf("1e-8"):
        return mp.e ** (-x) * (mp.mpf(1) / 2 + x / 12 - x ** 3 / 720)
    return 1 / (mp.e ** x - 1) - mp.e ** (-x) / x


def bessel_kernel_n1(k):
    z = 4 * mp.pi * mp.sqrt(k)
    return (2 / mp.pi) * mp.besselk(0, z) - mp.bessely(0, z)


def main():
    os.makedirs(OUT, exist_ok=True)

    write_table("digamma", logspace(0.01, 50.0, 56), mp.digamma)
    write_table(
        "digamma_re_1iy",
        [0.0] + logspace(1e-3, 1e4, 56),
        lambda y: mp.re(mp.digamma(1 + 1j * y)),
    )
    write_table("bessel_k0", logspace(1e-3, 690.0, 60), lambda x: mp.besselk(0, x))

    # For the oscillatory functions, nudge the point count until no grid point
    # lands too close to a zero (relative comparisons are meaningless there).
    # Below the asymptotic branch the series evaluation is accurate in
    # absolute terms, so only tiny |Y0| is a problem; beyond it the phase
    # error scales with the envelope sqrt(2/(pi x)).
    def y0_point_ok(x):
        y = mp.bessely(0, mp.mpf(x))
        if x > 16.0:
            return abs(y) >= mp.mpf("0.1") * mp.sqrt(2 / (mp.pi * x))
        return abs(y) >= mp.mpf("1e-3")

    n = 60
    while True:
        xs = logspace(1e-3, 600.0, n)
        if all(y0_point_ok(x) for x in xs):
            break
        n += 1
    write_table("bessel_y0", xs, lambda x: mp.bessely(0, x))
    print("bessel_y0 grid count:", n)

    write_table("e1_scaled", logspace(1e-6, 700.0, 56), lambda x: mp.e ** x * mp.e1(x))
    write_table("ei_scaled", logspace(1e-6, 700.0, 56), lambda x: mp.e ** (-x) * mp.ei(x))
    write_table("ei_combo", logspace(1e-6, 700.0, 60), ei_combo)
    write_table("hreg", logspace(1e-8, 50.0, 56), h_reg)
    write_table("theta_direct", logspace(0.05, 20.0, 50), theta_direct)

    def kernel_point_ok(k):
        v = bessel_kernel_n1(mp.mpf(k))
        z = 4 * mp.pi * mp.sqrt(k)
        if z > 16.0:
            return abs(v) >= mp.mpf("0.1") * mp.sqrt(2 / (mp.pi * z))
        return abs(v) >= mp.mpf("1e-3")

    n = 50
    while True:
        ks = logspace(1e-8, 50.0, n)
        if all(kernel_point_ok(k) for k in ks):
            break
        n += 1
    write_table("bessel_kernel_n1", ks, bessel_kernel_n1)
    print("bessel_kernel_n1 grid count:", n)


if __name__ == "__main__":
    main()
