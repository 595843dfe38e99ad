"""Independent high-precision reference values frozen into tests/oracle.rs."""

from mpmath import mp, mpf, mpc, exp, acosh, sqrt, quad, im, conj, log, pi, sinh

mp.dps = 40


def cc_arc(alpha):
    """Endpoint (|z|, t) of the unit-speed arc of curvature alpha on [0, 1]."""
    z = lambda s: (exp(1j * alpha * s) - 1) / (1j * alpha)
    dz = lambda s: exp(1j * alpha * s)
    t = quad(lambda s: im(conj(z(s)) * dz(s)), [0, 1])
    return abs(z(1)), t


def ball_distance(p, q):
    """Distance in the complex unit ball with holomorphic sectional curvature -4."""
    inner = 1 - sum(conj(a) * b for a, b in zip(p, q))
    pp = 1 - sum(abs(a) ** 2 for a in p)
    qq = 1 - sum(abs(b) ** 2 for b in q)
    return acosh(abs(inner) / sqrt(pp * qq))


def separated_pair(offset):
    """Upper half plane ideal triangle (inf, -1, 1): points at height
    2 e^{-offset} above -1 and 1."""
    y = 2 * exp(-offset)
    return acosh(1 + mpf(4) / (2 * y * y))


if __name__ == "__main__":
    for a in [mpf(1), mpf(3), mpf(6)]:
        r, t = cc_arc(a)
        print(f"arc alpha={a}: r={mp.nstr(r, 20)} t={mp.nstr(t, 20)} length=1")
    p = [mpc(0.3, 0.1), mpc(0, -0.2)]
    q = [mpc(-0.4, 0), mpc(0.25, 0.3)]
    print("ball distance", mp.nstr(ball_distance(p, q), 20))
    delta = 2 * log((1 + sqrt(5)) / 2)
    print("delta", mp.nstr(delta, 20))
    print("equilateral |vw|", mp.nstr(acosh(mpf(3) / 2), 20))
    print("separation", mp.nstr(separated_pair(1 + delta), 20))
    print("c1", mp.nstr(2 * exp(-(1 + delta)), 20))
    print("c2", mp.nstr(sqrt(17 * sinh(delta)), 20))
    c3 = log(sinh(2 + 3 * delta) / 2)
    print("c3", mp.nstr(c3, 20))
    print("c2'", mp.nstr(sqrt(17 * sinh(delta)) * exp(c3), 20))
    print("vertical embed t=0.7", mp.nstr(mp.asinh(mpf("0.7")), 20))
    print("horizontal embed |z|=0.9", mp.nstr(2 * mp.asinh(mpf("0.45")), 20))
    print("vertical cc t=1", mp.nstr(sqrt(2 * pi), 20))
