#!/usr/bin/env python3
"""Independent high-precision reference values frozen into the unit tests.

States come from the matrix exponential of the first-order system rather than
the cosine/sine closed form; integrals use mpmath quadrature at 30 digits.
"""
import mpmath as mp

mp.mp.dps = 30
PI = mp.pi


def state(u0, u1, r, t, omega2):
    """(u, u_t) at time t for u'' + L u' + (L^2/4 + omega2) u = 0."""
    L = mp.log(1 + r * r)
    a = mp.matrix([[0, 1], [-(L * L / 4 + omega2), -L]])
    m = mp.expm(a * t)
    return m[0, 0] * u0 + m[0, 1] * u1, m[1, 0] * u0 + m[1, 1] * u1


def ode_state(u0, u1, r, t):
    return state(u0, u1, r, t, PI**2 / 4)


def paper_state(u0, u1, r, t):
    return state(u0, u1, r, t, PI**2 / 16)


def radial(f, dim, lo=0, hi=mp.inf, pts=None):
    nodes = [lo] + (pts or []) + [hi]
    return (2 * PI) ** (-dim) * 4 * PI * mp.quad(lambda r: f(r) * r ** (dim - 1), nodes) \
        if dim == 3 else None


def gauss_hat(r):
    return PI**1.5 * mp.exp(-r * r / 4)


def show(name, value):
    print(f"{name} = {mp.nstr(value, 20)}")


def main():
    u0 = mp.mpc(0.3, 0.1)
    u1 = mp.mpc(-0.2, 0.5)
    for r, t in [(1.3, 2.7), (0.0, 4.0), (7.5, 0.6)]:
        u, v = ode_state(u0, u1, mp.mpf(r), mp.mpf(t))
        show(f"ode_state(r={r}, t={t}).u", u)
        show(f"ode_state(r={r}, t={t}).v", v)
    u, v = paper_state(u0, u1, mp.mpf(1.3), mp.mpf(2.7))
    show("paper_state(r=1.3, t=2.7).u", u)
    show("paper_state(r=1.3, t=2.7).v", v)

    for t in [50, 500]:
        show(f"I0({t})", mp.quad(lambda r: (1 + r * r) ** (-t), [0, 1 / mp.sqrt(t), 1]))
    show("J2(50)", mp.quad(lambda r: (1 + r * r) ** (-50) * r * r, [1, 1.1, 2, mp.inf]))
    show("I2(7.5)", mp.quad(lambda r: (1 + r * r) ** (-7.5) * r * r, [0, 0.5, 1]))

    for t in [5, 20]:
        f = lambda r: (1 + r * r) ** (-t) * mp.sin(t * mp.sqrt(mp.log(1 + r * r))) ** 2 * r * r
        pts = [0] + [mp.sqrt(mp.expm1((k * PI / (4 * t)) ** 2)) for k in range(1, 40)] + [mp.inf]
        show(f"optimality_integral(3, {t})", 4 * PI * mp.quad(f, pts))

    show("f_osc(3, 4)", mp.quad(lambda y: mp.exp(-y * y) * mp.cos(2 * y) ** 2 * y * y, [0, 2, 4, mp.inf]))
    show("a_const(4)", mp.quad(lambda y: mp.exp(-y * y) * y**3, [0, 2, mp.inf]))

    for t in [0, 5]:
        def dens(r):
            u, v = ode_state(0, gauss_hat(r), r, t)
            L = mp.log(1 + r * r)
            return abs(v) ** 2 + (L * L + PI * PI) / 4 * abs(u) ** 2
        show(f"total_energy(gaussian, N=3, t={t})", radial(dens, 3, pts=[1, 2, 4]))
    show("squared_l2(gaussian, N=3, t=5)",
         radial(lambda r: abs(ode_state(0, gauss_hat(r), r, 5)[0]) ** 2, 3, pts=[1, 2, 4]))

    def profile_density(t):
        def g(r):
            L = mp.log(1 + r * r)
            u = 4 / PI * gauss_hat(r) * mp.exp(-L * t / 2) * mp.sin(PI * t / 4)
            f3 = 4 / PI * PI**1.5 * mp.exp(-L * t / 2) * mp.sin(t * mp.sqrt(L))
            return abs(u - f3) ** 2
        return g
    show("profile_error_low(gaussian, N=3, t=10)", radial(profile_density(10), 3, 0, 1, [0.25, 0.5]))
    show("profile_error_high(gaussian, N=3, t=10)", radial(profile_density(10), 3, 1, mp.inf, [2, 4, 8]))

    # ||u||_{1,1} for exp(-|x - e_1|^2) in R^3, in spherical coordinates about the origin.
    moment = 2 * PI * mp.quad(
        lambda rr, th: mp.exp(-rr * rr) * rr * rr * mp.sin(th)
        * mp.sqrt(rr * rr + 2 * rr * mp.cos(th) + 1), [0, 1, 2, mp.inf], [0, PI])
    show("shifted_gaussian(1).l11, N=3", PI**1.5 + moment)
    pair = lambda r: mp.exp(-r * r) - 2**1.5 * mp.exp(-2 * r * r)
    root = mp.sqrt(mp.log(2**1.5) / 1)  # sign change of the pair profile
    show("zero_mean_pair.l1, N=3", 4 * PI * mp.quad(lambda r: abs(pair(r)) * r * r, [0, root, mp.inf]))
    show("zero_mean_pair.l11, N=3",
         4 * PI * mp.quad(lambda r: (1 + r) * abs(pair(r)) * r * r, [0, root, mp.inf]))
    show("gaussian(1).l11, N=3", PI**1.5 + 2 * PI)


if __name__ == "__main__":
    main()
