#!/usr/bin/env python3
"""Independent reference values for the radial propagator integrals.

Uses mpmath's tanh-sinh quadrature at 30 significant digits on a fine fixed
partition of [0, s_max]; shares no code or rule with the C++ Gauss-Kronrod
engine. Output is a C++ include consumed by the unit and acceptance tests.

    python3 tests/oracles/gn_oracle.py > tests/oracles/gn_reference.inc
"""
import mpmath as mp

mp.mp.dps = 30


def radial(n, tau, shift, root):
    tau = mp.mpf(tau)
    lognf = mp.loggamma(n + 1)

    def f(s):
        if s == 0:
            return mp.mpf(1) if n == 0 else mp.mpf(0)
        v = mp.exp(n * mp.log(s) - s - lognf) * mp.expj(tau * (s * s / 2 - (n - shift) * s))
        if root:
            v *= mp.sqrt(1 - 1j * tau * s)
        return v

    s_max = n + 60 + 12 * mp.sqrt(n + 1)
    # about one panel per oscillation of the quadratic phase
    panels = int(40 + abs(tau) * s_max * s_max / (2 * mp.pi))
    return mp.quad(f, mp.linspace(0, s_max, panels + 1))


HK = (mp.mpf("0.5"), True)
FGA = (mp.mpf(1), False)
FGA_NO_THETA = (mp.mpf(0), False)
NO_THETA = (mp.mpf("-0.5"), True)

cases = [
    ("hk", 0, "0.5", HK), ("hk", 0, "1", HK), ("hk", 0, "2", HK), ("hk", 0, "3", HK),
    ("hk", 0, "4", HK), ("hk", 0, "5", HK),
    ("hk", 1, "0.7", HK), ("hk", 5, "0.3", HK), ("hk", 10, "0.5", HK), ("hk", 12, "-0.25", HK),
    ("hk", 20, "0.1", HK), ("hk", 25, "0.04", HK), ("hk", 30, "0.2", HK), ("hk", 30, "1", HK),
    ("hk", 40, "0.05", HK),
    ("fga", 1, "1", FGA), ("fga", 5, "0.2", FGA), ("fga", 10, "0.1", FGA), ("fga", 20, "0.05", FGA),
    ("fga_no_theta", 5, "0.2", FGA_NO_THETA),
    ("no_theta", 3, "0.4", NO_THETA), ("no_theta", 15, "0.1", NO_THETA),
]

def row(case):
    kind, n, tau, (shift, root) = case
    mp.mp.dps = 30
    v = radial(n, tau, shift, root)
    return '{"%s", %d, %s, %s, %s},' % (kind, n, tau, mp.nstr(v.real, 20), mp.nstr(v.imag, 20))


if __name__ == "__main__":
    import multiprocessing
    with multiprocessing.Pool() as pool:
        rows = pool.map(row, cases, chunksize=1)
    print("// Generated by tests/oracles/gn_oracle.py (mpmath tanh-sinh, 30 digits). Do not edit.")
    print("// kind, n, tau, re, im")
    for r in rows:
        print(r)
