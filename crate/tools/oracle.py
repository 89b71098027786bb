"""Generate reference values with mpmath at 200-bit precision.

Output: CSV with columns function,args,re,im,precision_bits where args is a
space-separated list of real numbers. Complex arguments are flattened as
re im pairs.
"""
import sys
import mpmath as mp

PREC = 200
mp.mp.prec = PREC


def c(re, im=0.0):
    return mp.mpc(mp.mpf(re), mp.mpf(im))


rows = []


def emit(name, args, value, bits=PREC):
    value = mp.mpc(value)
    rows.append((name, " ".join(repr(float(a)) for a in args),
                 mp.nstr(value.real, 25), mp.nstr(value.imag, 25), bits))


for re, im in [(1.5, 2.0), (0.3, 0.1), (5.0, -7.0), (-2.5, 0.5), (1.0, 50.0),
               (0.5, -20.0), (10.0, 0.0), (-0.7, 3.0), (2.0, 1e-3), (0.25, 0.0),
               (-8.2, -1.5), (30.0, 40.0)]:
    emit("loggamma", [re, im], mp.loggamma(c(re, im)))

for re, im in [(1.5, 5.0), (1.0, 0.0), (2.0, 0.0), (0.1, 0.1), (-3.3, 2.0),
               (10.0, -10.0), (0.5, 30.0), (-0.5, 0.0)]:
    emit("digamma", [re, im], mp.digamma(c(re, im)))

# hyp2f1(a, b, c; x): args are are aim bre bim cre cim x
hyp = [
    ((-0.5, 0), (-0.5, 2.0), (1.0, 2.0), 0.3),
    ((-0.5, 0), (-0.5, 20.0), (1.0, 20.0), 0.998),
    ((-0.5, 0), (-0.5, 0.1), (1.0, 0.1), 0.9048374180359595),
    ((0.75, -0.5), (0.75, 0.5), (2.0, 0), -1.3810978455418157),
    ((0.75, -5.0), (0.75, 5.0), (2.0, 0), -100.0),
    ((0.75, -10.0), (0.75, 10.0), (2.0, 0), -13.0),
    ((0.75, -1.0), (0.75, 1.0), (2.0, 0), -2.0e6),
    ((0.5, 0), (1.0, 0), (2.0, 0), -13.154),
    ((-9.5, 0), (11.0, 0), (2.0, 0), -5.5),
    ((1.4, 0.1), (0.9, 0.1), (2.0, 0), 0.99),
    ((1.25, 5.0), (0.75, 5.0), (2.0, 0), 0.58),
    ((2.0, -3.0), (1.5, -3.0), (2.0, 0), 0.9),
    ((-0.5, 0), (-0.2, 0), (1.3, 0), 1.0),
    ((-0.5, 0), (-2.0, 0), (-0.5, 0), 1.0),
    ((0.3, 0.7), (-1.1, 2.0), (0.2, -0.4), 0.45),
    ((1.0, 0), (1.0, 0), (2.0, 0), -0.75),
    ((1.25, 0), (1.75, 0), (2.0, 0), 0.9),
    ((2.5, 0), (0.5, 0), (2.0, 0), -0.5),
    ((-0.5, 0), (0.5, 0), (2.0, 0), 0.1353352832366127),
]
for (a, b, cc, x) in hyp:
    emit("hyp2f1", [a[0], a[1], b[0], b[1], cc[0], cc[1], x],
         mp.hyp2f1(c(*a), c(*b), c(*cc), mp.mpf(x)))


def a_coef(s):
    s = mp.mpf(s)
    i = mp.mpc(0, 1)
    return -mp.gamma(1 - i * s) * mp.gamma(1.5 + i * s) / (mp.gamma(1 + i * s) * mp.gamma(1.5 - i * s))


def f_fn(s, y):
    s = mp.mpf(s)
    y = mp.mpf(y)
    return mp.hyp2f1(-0.5, -0.5 + 1j * s, 1 + 1j * s, mp.exp(-2 * y))


def w_fn(s, y):
    s = mp.mpf(s)
    y = mp.mpf(y)
    return mp.exp((1 - 1j * s) * y) / mp.sqrt(mp.exp(2 * y) - 1) * f_fn(s, y)


for s in [0.0, 0.7, 3.0, 17.0, 45.0]:
    emit("a_coefficient", [s], a_coef(s))
for s, y in [(0.0, 1.0), (6.0, 0.5), (2.0, 0.05), (25.0, 0.3), (1.0, 3.0)]:
    emit("f_hypergeo", [s, y], f_fn(s, y))
for s, y in [(2.0, 1.0), (0.5, 0.2), (10.0, 2.0)]:
    emit("w_solution", [s, y], w_fn(s, y))

for m, z in [(0, 2.0), (1, 2.0), (2, 3.5), (1, 1.05)]:
    emit("legendre_p", [m, z], mp.legenp(0.5, m, z, type=3))
for m, z in [(0, 2.0), (1, 2.0), (2, 3.5), (0, 40.0)]:
    emit("legendre_q", [m, z], mp.legenq(0.5, m, z, type=3))

# Re k(s, y, eta) via the defining formula at high precision.
for s, y, eta in [(1.3, 0.8, 2.1), (5.0, 0.2, 3.0), (0.4, 2.5, 0.5)]:
    k = a_coef(s) * mp.exp(-1j * s * (y + eta)) * f_fn(s, y) * f_fn(s, eta) \
        + mp.exp(1j * s * (y - eta)) * mp.conj(f_fn(s, y)) * f_fn(s, eta)
    emit("kernel_k", [s, y, eta], k)


# G(x, y, xi, eta) from the definition form of k, 30 digits.
def green(x, y, xi, eta):
    with mp.workdps(30):
        y, eta = mp.mpf(y), mp.mpf(eta)
        sep = abs(mp.mpf(x) - mp.mpf(xi))
        pref = mp.exp(y + eta) / mp.sqrt((mp.exp(2 * y) - 1) * (mp.exp(2 * eta) - 1))

        def integrand(s):
            k = a_coef(s) * mp.exp(-1j * s * (y + eta)) * f_fn(s, y) * f_fn(s, eta) \
                + mp.exp(1j * s * (y - eta)) * mp.conj(f_fn(s, y)) * f_fn(s, eta)
            m = mp.sqrt(s * s + mp.mpf(1) / 4)
            return mp.re(k) * mp.exp(-sep * m) / m

        cut = 80 / sep
        return pref / (2 * mp.pi) * mp.quad(integrand, mp.linspace(0, cut, 81))


for x, y, xi, eta in [(0.0, 1.0, 1.0, 1.0), (0.0, 1.0, 1.0, 2.0), (0.5, 0.3, 2.0, 1.5), (0.0, 2.0, 3.0, 0.7)]:
    emit("green", [x, y, xi, eta], green(x, y, xi, eta), bits=100)

w = sys.stdout
w.write("function,args,re,im,precision_bits\n")
for name, args, re, im, bits in rows:
    w.write(f"{name},{args},{re},{im},{bits}\n")
