#!/usr/bin/env python3
"""High-precision reference values for zeta(1/2 + it).

Independent of the C++ implementation: Euler-Maclaurin summation carried
out in 60-digit mpmath arithmetic (N direct terms, Bernoulli correction up
to order 2M), then cross-checked against mpmath.zeta. Prints a C++
initializer list consumed by core/include/bnladder/zeta_fixtures.hpp.
"""
import mpmath as mp

mp.mp.dps = 60

GRID = ["0", "1", "5", "14.134725141734695", "25", "50", "100",
        "200", "500", "1000"]


def zeta_em(s, n_terms=None, m_terms=40):
    t = abs(mp.im(s))
    n = n_terms or int(t) + 60
    acc = mp.mpf(0)
    for k in range(1, n):
        acc += mp.power(k, -s)
    nn = mp.mpf(n)
    acc += mp.power(nn, 1 - s) / (s - 1) + mp.power(nn, -s) / 2
    # Bernoulli tail: sum_{j} B_{2j}/(2j)! * s(s+1)...(s+2j-2) * N^{-s-2j+1}
    rising = s
    for j in range(1, m_terms + 1):
        b = mp.bernoulli(2 * j)
        acc += b / mp.factorial(2 * j) * rising * mp.power(nn, -s - 2 * j + 1)
        rising *= (s + 2 * j - 1) * (s + 2 * j)
    return acc


def main():
    print("// t, Re zeta(1/2+it), Im zeta(1/2+it)")
    for ts in GRID:
        t = mp.mpf(ts)
        s = mp.mpc(mp.mpf(1) / 2, t)
        v = zeta_em(s)
        ref = mp.zeta(s)
        assert abs(v - ref) < mp.mpf(10) ** -40, (ts, v, ref)
        print("    {%s, %s, %s}," % (
            ts, mp.nstr(mp.re(v), 20),
            mp.nstr(mp.im(v), 20)))


if __name__ == "__main__":
    main()
