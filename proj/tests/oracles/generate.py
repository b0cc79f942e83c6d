#!/usr/bin/env python3
"""Independent reference values for the unit tests.

Each value is computed without the library: matrix exponentials of the
truncated generator, numerical Laplace inversion, hitting-time
convolutions and direct 2D quadrature of the stated formulas. Writes
oracle_values.hpp next to this script.
"""
import math
import pathlib

import mpmath as mp
import numpy as np
from scipy import integrate, sparse
from scipy.sparse.linalg import expm_multiply
from scipy.special import erfcx, i0e

mp.mp.dps = 30
SQRT2 = math.sqrt(2.0)
values = []


def emit(name, value, note):
    values.append((name, float(value), note))


# Difference chain: generator on a reflecting window, P_w(w_t = 0).
def diff_generator(k, weights, M, attraction=True):
    n = 2 * M + 1
    Q = sparse.lil_matrix((n, n))
    R = len(weights)
    for i in range(n):
        w = i - M
        for s in range(-R, R + 1):
            if s == 0:
                continue
            j = i + s
            if j < 0 or j >= n:
                continue
            rate = 2.0 * weights[abs(s) - 1] * (k + (1.0 if (attraction and s == -w) else 0.0))
            Q[i, j] += rate
            Q[i, i] -= rate
    return Q.tocsc()


def hit_origin(k, weights, t, M):
    Q = diff_generator(k, weights, M)
    e0 = np.zeros(2 * M + 1)
    e0[M] = 1.0
    return expm_multiply(Q * t, e0), M


nn = [0.5]
r2 = [0.25, 0.25]

u, M = hit_origin(1.0, nn, 1.0, 60)
for w in (0, 1, 2, 5):
    emit(f"diff_nn_k1_t1_w{w}", u[M + w], "expm, NN, k=1, t=1")
u, M = hit_origin(0.5, r2, 2.0, 80)
for w in (0, 1, 3):
    emit(f"diff_r2_k05_t2_w{w}", u[M + w], "expm, range-2, k=0.5, t=2")
# Free walk: each direction at rate 1, so P(0 -> 0) = e^{-2t} I_0(2t).
emit("free_nn_t1", i0e(2.0), "Bessel formula")

# Scaled chain N=10, gamma=1, t=0.5.
N, g, t = 10, 1.0, 0.5
kN = 1.0 / (SQRT2 * g * N)
alpha = g * N**3 * t / SQRT2
u, M = hit_origin(kN, nn, alpha, 160)
for w in (0, 3, 5):
    emit(f"scaled_N10_w{w}", u[M + w], "expm, k_N = 1/(sqrt2 N), time N^3 t / sqrt2")


# Sticky BM with weight theta: the atom's Laplace transform is
# 1 / (lam + sqrt(2 lam) / theta).
def atom_by_inversion(theta, t):
    return mp.invertlaplace(lambda s: 1 / (s + mp.sqrt(2 * s) / theta), t, method="talbot")


def atom_closed(theta, t):
    return float(mp.exp(2 * t / theta**2) * mp.erfc(mp.sqrt(2 * t) / theta))


for theta, tt in ((SQRT2, 0.5), (1 / SQRT2, 1.0), (2.0, 0.1)):
    tag = f"{theta:.4f}".replace(".", "p")
    emit(f"sticky_atom_th{tag}_t{str(tt).replace('.', 'p')}", atom_by_inversion(theta, tt), "Talbot inversion")


# P_v(X_t = 0) = int_0^t f_hit(s) atom(t - s) ds.
def hit_by_convolution(theta, v, t):
    f = lambda s: abs(v) / mp.sqrt(2 * mp.pi * s**3) * mp.exp(-v * v / (2 * s)) * atom_closed(theta, t - s)
    return mp.quad(f, [0, t / 4, t / 2, t])


emit("sticky_hit_thsqrt2_v0p5_t0p5", hit_by_convolution(SQRT2, 0.5, 0.5), "hitting-time convolution")
emit("sticky_hit_th1_v1_t2", hit_by_convolution(1.0, 1.0, 2.0), "hitting-time convolution")
# d/dt E X_t^2 = P(X_t != 0).
emit("sticky_m2_th1_t1", mp.quad(lambda s: 1 - atom_closed(1.0, s), [0, 1]), "int_0^t (1 - atom)")


# Potential kernel: (1/2pi) int (1 - cos nk) / phihat(k) dk.
def potential(n, weights):
    # 1 - cos x = 2 sin^2(x/2) avoids cancellation near k = 0; the integrand is even.
    phihat = lambda k: sum(4 * w * mp.sin((r + 1) * k / 2) ** 2 for r, w in enumerate(weights))
    return mp.quad(lambda k: 2 * mp.sin(n * k / 2) ** 2 / phihat(k), [0, mp.pi]) / mp.pi


for n in (1, 2, 5):
    emit(f"potential_r2_n{n}", potential(n, r2), "quadrature")
emit("potential_skew_n3", potential(3, [0.3, 0.1, 0.05]), "quadrature")


# Duality function d(m, n) = n! Gamma(k) / ((n - m)! Gamma(k + m)).
def dsingle(m, n, k):
    return mp.factorial(n) * mp.gamma(k) / (mp.factorial(n - m) * mp.gamma(k + m))


emit("dual_m2_n5_k05", dsingle(2, 5, 0.5), "mpmath")
emit("dual_m3_n3_k2", dsingle(3, 3, 2.0), "mpmath")
emit("dual_m100_n150_k03", dsingle(100, 150, 0.3), "mpmath")


# Test-function integrals (raised cosine and polynomial bump, a = 0.7).
def raised(x, c=0.0, a=1.0):
    return 0.5 * (1 + math.cos(math.pi * (x - c) / a)) if abs(x - c) <= a else 0.0


def bump(x, c=0.0, a=0.7):
    z = (x - c) / a
    return (1 - z * z) ** 3 if abs(z) <= 1 else 0.0


q = lambda f, lo, hi: integrate.quad(f, lo, hi, epsabs=1e-13, epsrel=1e-12, limit=200)[0]
emit("bump07_int", q(lambda x: bump(x), -0.7, 0.7), "quad")
emit("bump07_l2", q(lambda x: bump(x) ** 2, -0.7, 0.7), "quad")
dbump = lambda x: -6 * (x / 0.7) * (1 - (x / 0.7) ** 2) ** 2 / 0.7
emit("bump07_dirichlet", q(lambda x: dbump(x) ** 2, -0.7, 0.7), "quad")


# Limit variances with phi = raised cosine on [-1, 1].
def P(d, theta, t):
    a = SQRT2 / theta
    return math.exp(-d * d / (2 * t)) * erfcx(a * math.sqrt(t) + abs(d) / math.sqrt(2 * t))


def dbl(f):
    # Split the inner integral at the diagonal, where |x - y| has its kink.
    inner = lambda x: q(lambda y: f(y, x), -1, x) + q(lambda y: f(y, x), x, 1)
    return q(inner, -1, 1)


for gm, tt in ((1.0, 0.5), (0.5, 0.1)):
    th_cf = 1 / (SQRT2 * gm)
    atom = P(0.0, th_cf, tt)
    l2 = 0.75
    lit = -SQRT2 * gm * gm * dbl(lambda y, x: raised(x) * raised(y) * P(x - y, th_cf, tt)) + SQRT2 * gm * (1 - atom) * l2
    tag = f"g{str(gm).replace('.', 'p')}_t{str(tt).replace('.', 'p')}"
    emit(f"limvar_{tag}", lit, "nested quad of the closed form")

    # (u, v) form: (sqrt2 g / 2) int [phi(u/2)^2 (1 - atom) - int dens(v) phi((u+v)/2) phi((u-v)/2) dv] du
    dens = lambda v: P(v, th_cf, tt) / th_cf
    g_uv = lambda v, uu: dens(v) * raised((uu + v) / 2) * raised((uu - v) / 2)
    inner = q(lambda uu: q(lambda v: g_uv(v, uu), -2, 0) + q(lambda v: g_uv(v, uu), 0, 2), -2, 2)
    first = q(lambda uu: raised(uu / 2) ** 2, -2, 2) * (1 - atom)
    emit(f"limvar_alt_{tag}", SQRT2 * gm / 2 * (first - inner), "nested quad of the (u, v) form")

    th = SQRT2 * gm
    chain = th * (1 - P(0.0, th, tt)) * l2 - dbl(lambda y, x: raised(x) * raised(y) * P(x - y, th, tt))
    emit(f"limvar_chain_{tag}", chain, "nested quad, theta = sqrt2 gamma")


# Finite-N variance from the pair covariance
# Cov(eta_x, eta_y) = (1 + d/k)(k sigma/(k+1) - rho^2) p(x-y) + d (rho^2/k + rho), d = 1{x=y}.
def finite_var(N, gm, tt, rho, sigma):
    k = 1.0 / (SQRT2 * gm * N)
    alpha = gm * N**3 * tt / SQRT2
    M = 3 * N + 60
    Q = diff_generator(k, nn, M)
    e0 = np.zeros(2 * M + 1)
    e0[M] = 1.0
    p = expm_multiply(Q * alpha, e0)
    xs = [x for x in range(-N, N + 1) if abs(x / N) <= 1]
    f = {x: raised(x / N) for x in xs}
    s = 0.0
    for x in xs:
        for y in xs:
            same = 1.0 if x == y else 0.0
            cov = (1 + same / k) * (k * sigma / (k + 1) - rho * rho) * p[M + x - y] + same * (rho * rho / k + rho)
            s += f[x] * f[y] * cov
    return s / N**2


emit("finvar_N10_g1_t0p1", finite_var(10, 1.0, 0.1, 1.0, 1.0), "covariance sum with expm")
emit("finvar_N8_g0p5_t0p3_stat", finite_var(8, 0.5, 0.3, 2.0, 4.0 * (1 + SQRT2 * 0.5 * 8)),
     "stationary sigma = rho^2 (k+1)/k")


# Difference-chain Dirichlet form by direct assembly:
# E(g) = (1/2) sum_w sum_r nu(w) q(w, w+r) (g(w+r) - g(w))^2,
# nu = 1/N + sqrt2 g delta_0, q = 2 p(r) (N^2/2 + (N^3 g/sqrt2) 1{r = -w}).
def form_E(gvals, lo, N, gm, weights):
    R = len(weights)
    G = lambda i: gvals[i - lo] if lo <= i < lo + len(gvals) else 0.0
    total = 0.0
    for w in range(lo - R, lo + len(gvals) + R):
        nu = 1.0 / N + (SQRT2 * gm if w == 0 else 0.0)
        for s in range(-R, R + 1):
            if s == 0:
                continue
            rate = 2 * weights[abs(s) - 1] * (N * N / 2 + (N**3 * gm / SQRT2 if s == -w else 0.0))
            total += 0.5 * nu * rate * (G(w + s) - G(w)) ** 2
    return total


rng = np.random.default_rng(20241016)
form_g = rng.uniform(-1, 1, 11)
emit("form_E_r2_N8_g0p7", form_E(list(form_g), -5, 8, 0.7, r2), "direct assembly")
values.append(("form_g", None, ",".join(repr(float(x)) for x in form_g)))


# Dual form by the Fourier integral (1/4N^3)(1/2pi) int |ghat|^2 / phihat.
def dual_fourier(gvals, N, weights):
    phihat = lambda k: sum(4 * w * mp.sin((r + 1) * k / 2) ** 2 for r, w in enumerate(weights))
    def f(k):
        z = sum(gv * mp.e ** (1j * j * k) for j, gv in enumerate(gvals))
        return abs(z) ** 2 / phihat(k)
    return mp.quad(f, [-mp.pi, 0, mp.pi]) / (2 * mp.pi) / (4 * N**3)


emit("dualform_dipole_nn_N4", dual_fourier([1, -1], 4, nn), "Fourier quadrature")
emit("dualform_quad_r2_N6", dual_fourier([1, -3, 2.5, -0.5], 6, r2), "Fourier quadrature")

# Stationary marginal: negative binomial with shape k and mean rho.
def nb(n, rho, k):
    return mp.gamma(k + n) / (mp.factorial(n) * mp.gamma(k)) * (k / (k + rho)) ** k * (rho / (k + rho)) ** n


emit("nb_n3_rho2_k0p5", nb(3, 2.0, 0.5), "mpmath")
emit("nb_n0_rho1_k3", nb(0, 1.0, 3.0), "mpmath")

out = ["#pragma once", "", "// Generated by generate.py; do not edit.", "", "namespace oracle {", ""]
for name, value, note in values:
    if value is None:
        out.append(f"inline constexpr double {name}[] = {{{note}}};")
    else:
        out.append(f"inline constexpr double {name} = {value!r};  // {note}")
out += ["", "}  // namespace oracle", ""]
pathlib.Path(__file__).with_name("oracle_values.hpp").write_text("\n".join(out))
print("\n".join(out))
