"""Independent high-precision oracle for the g_ell = exp(-2 ell s^2) g_round family.

Evaluates the three integrals with mpmath adaptive quadrature (tanh-sinh) at
40 digits and prints values plus ratios to the leading-order asymptotics.
The numbers are frozen into tests/test_experiments.cpp and the acceptance suite.
"""
import sys
import mpmath as mp

mp.mp.dps = 40


def omega(m):
    return 2 * mp.pi ** (mp.mpf(m + 1) / 2) / mp.gamma(mp.mpf(m + 1) / 2)


def family(ell, n):
    ell = mp.mpf(ell)
    w = lambda s: (1 - s * s) ** (mp.mpf(n - 2) / 2)
    lam_r = lambda s: mp.mpf(1) / 2 + 2 * ell - 4 * ell * s * s + 2 * ell ** 2 * s * s * (1 - s * s)
    lam_t = lambda s: mp.mpf(1) / 2 - 2 * ell * s * s - 2 * ell ** 2 * s * s * (1 - s * s)
    sig2 = lambda s: (n - 1) * (n - 2) / mp.mpf(2) * lam_t(s) ** 2 + (n - 1) * lam_r(s) * lam_t(s)
    sig1 = lambda s: lam_r(s) + (n - 1) * lam_t(s)
    width = 1 / mp.sqrt(ell) if ell > 1 else mp.mpf(1)
    pts = [0] + [p for p in (width, 2 * width, 4 * width, 8 * width, 16 * width) if p < 1] + [1]
    om = omega(n - 1)
    f2 = 2 * om * mp.quad(lambda s: mp.exp(-(n - 4) * ell * s * s) * sig2(s) * w(s), pts)
    vol = 2 * om * mp.quad(lambda s: mp.exp(-n * ell * s * s) * w(s), pts)
    sc = 2 * (n - 1) * 2 * om * mp.quad(lambda s: mp.exp(-(n - 2) * ell * s * s) * sig1(s) * w(s), pts)
    lead_f2 = -(n - 1) * om * ell ** 1.5 * mp.sqrt(mp.pi) / (2 * (n - 4) ** 1.5)
    lead_vol = om * mp.sqrt(mp.pi) / mp.sqrt(n * ell)
    lead_sc = 2 * (n - 1) * om * mp.sqrt(ell) * mp.sqrt(mp.pi) / mp.sqrt(n - 2)
    return f2, vol, sc, f2 / lead_f2, vol / lead_vol, sc / lead_sc


if __name__ == "__main__":
    n = int(sys.argv[1]) if len(sys.argv) > 1 else 5
    ells = [float(x) for x in sys.argv[2:]] or [1e-8, 0.5, 3, 10, 100, 1000, 1600, 10000]
    for ell in ells:
        f2, vol, sc, r1, r2, r3 = family(ell, n)
        print(f"{ell:g} F2={mp.nstr(f2, 20)} vol={mp.nstr(vol, 20)} scalar={mp.nstr(sc, 20)} "
              f"rF2={mp.nstr(r1, 12)} rvol={mp.nstr(r2, 12)} rsc={mp.nstr(r3, 12)}")
