"""High-precision reference computations used to freeze expected test values.

Everything here goes through mpmath's tanh-sinh quadrature on the original,
untransformed integrands, so it shares no code path with the library.
Run ``python tests/oracles.py`` to print the values frozen in the tests.
"""

import mpmath as mp

mp.mp.dps = 40


def otsuki_C(n, a):
    a = mp.mpf(a)
    return a ** (mp.mpf(2) / n) * (1 - a**2) ** (1 - mp.mpf(1) / n)


def otsuki_a1(n, a):
    C = otsuki_C(n, a)
    g = lambda x: 1 - x**2 - C * (1 / x**2 - 1) ** (mp.mpf(1) / n)
    return mp.findroot(g, (1 / mp.sqrt(n) + mp.mpf("1e-30"), mp.mpf(1) - mp.mpf("1e-30")), solver="anderson")


def otsuki_period(n, a):
    a0 = mp.mpf(a)
    a1 = otsuki_a1(n, a0)
    C = otsuki_C(n, a0)

    def g(x):
        rad = 1 - x**2 - C * (1 / x**2 - 1) ** (mp.mpf(1) / n)
        # tanh-sinh nodes crowd the endpoints closer than the root is resolved
        return 1 / mp.sqrt(rad) if rad > 0 else mp.mpf(0)

    return 2 * mp.quad(g, [a0, (a0 + a1) / 2, a1])


def euclidean_extent(n):
    return mp.quad(lambda t: 1 / mp.sqrt(t ** (2 * n - 2) - 1), [1, 2, mp.inf])


def hyperbolic_x(n, a, y):
    a = mp.mpf(a)
    g = lambda t: 1 / mp.cosh(t) / mp.sqrt(
        (mp.sinh(t) / mp.sinh(a)) ** (2 * n - 2) * (mp.cosh(t) / mp.cosh(a)) ** 2 - 1
    )
    pts = [a, a + 1, y] if y == mp.inf or y > a + 1 else [a, y]
    return mp.quad(g, pts)


def euclidean_x(n, a, y):
    a = mp.mpf(a)
    return mp.quad(lambda t: 1 / mp.sqrt((t / a) ** (2 * n - 2) - 1), [a, y])


if __name__ == "__main__":
    print("C(3, 0.42231)", otsuki_C(3, "0.42231"))
    print("C(3, 1/sqrt3)", otsuki_C(3, 1 / mp.sqrt(3)))
    print("a1(3, 0.42231)", otsuki_a1(3, "0.42231"))
    print("T(3, 0.42231)", otsuki_period(3, "0.42231"))
    for n in (3, 4, 5):
        lo = otsuki_period(n, "1e-4")
        hi = otsuki_period(n, 1 / mp.sqrt(n) - mp.mpf("1e-4"))
        print(f"n={n} T(1e-4)={lo} dist={lo - mp.pi}  T(top-1e-4)={hi} dist={mp.sqrt(2) * mp.pi - hi}")
    for n in (3, 4, 5, 8):
        print("extent", n, euclidean_extent(n))
    print("hyp x(3, 0.2, 1)", hyperbolic_x(3, "0.2", 1))
    print("hyp x(3, 0.2, inf)", hyperbolic_x(3, "0.2", mp.inf))
    print("hyp x(3, 1, inf)", hyperbolic_x(3, 1, mp.inf))
    print("hyp x(2, 1, 3)", hyperbolic_x(2, 1, 3))
    print("euc x(3, 1, 2)", euclidean_x(3, 1, 2))
    print("euc x(4, 0.7, 3)", euclidean_x(4, "0.7", 3))
    print("sinh(1), cosh(1)", mp.sinh(1), mp.cosh(1))
