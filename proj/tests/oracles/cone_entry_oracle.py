"""Bisection oracle for u0 = A cos(2 theta) on S^n, metric exp(-2u) g_round.

Finds the amplitude interval (negative A) where min sigma1 > 0 but
min sigma2 < 0. Eigenvalues are evaluated from the closed-form radial and
tangential Schouten eigenvalues on a dense grid in s = cos(theta).
"""
import numpy as np

N = 5
S = np.linspace(-1, 1, 200001)


def eigs(amp):
    # u = amp (2 s^2 - 1): u' = 4 amp s, u'' = 4 amp
    du, d2u = 4 * amp * S, 4 * amp * np.ones_like(S)
    q = 1 - S * S
    lam_r = 0.5 + q * d2u - S * du + 0.5 * du * du * q
    lam_t = 0.5 - S * du - 0.5 * du * du * q
    return lam_r, lam_t


def mins(amp):
    lr, lt = eigs(amp)
    s1 = lr + (N - 1) * lt
    s2 = (N - 1) * (N - 2) / 2 * lt * lt + (N - 1) * lr * lt
    return s1.min(), s2.min()


def bisect(pred, lo, hi, it=80):
    # pred(lo) False, pred(hi) True
    for _ in range(it):
        mid = 0.5 * (lo + hi)
        if pred(mid):
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


a2 = bisect(lambda a: mins(-a)[1] < 0, 0.0, 0.6)
a1 = bisect(lambda a: mins(-a)[0] <= 0, 0.0, 2.0)
print(f"sigma2 turns negative at A = -{a2:.12f}")
print(f"sigma1 turns non-positive at A = -{a1:.12f}")
mid = -0.5 * (a1 + a2)
print(f"midpoint A = {mid:.12f} mins = {mins(mid)}")
for a in (-0.4, -0.45, 5.0, 0.2):
    print(a, mins(a))
