# Copyright 2026 The gaussphase Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Independent high-precision reference values frozen into the unit tests.

Run with mpmath installed; prints C++ initializer rows. The computations go through
definitions (Fock sums, P-function quadrature, the original w-integral) rather than
the transformed integrals used by the library.
"""
import mpmath as mp

mp.mp.dps = 30


def xi(T):
    T = mp.mpf(T)
    R = 1 - T
    f = lambda w: (1 - mp.sqrt(w) * mp.besseli(0, mp.log(w) / 2)) / (1 - (R + T * w) ** 2) ** 1.5
    return R / mp.sqrt(T * (1 + R)) + T * mp.quad(f, [0, 0.5, 0.9, 0.99, 1])


def displacement(alpha, m, n):
    # <m|D(alpha)|n> for real alpha.
    x = alpha * alpha
    if m >= n:
        k = m - n
        with mp.workdps(160):
            lag = mp.fsum((-1) ** j * mp.binomial(n + k, n - j) * x ** j / mp.factorial(j) for j in range(n + 1))
        return mp.sqrt(mp.factorial(n) / mp.factorial(m)) * alpha ** k * mp.exp(-x / 2) * lag
    return (-1) ** (n - m) * displacement(alpha, n, m)


def coherent_fidelity(alpha, n_beta, cutoff):
    alpha = mp.mpf(alpha)
    q = n_beta / (1 + mp.mpf(n_beta))
    p = [(1 - q) * q ** k for k in range(cutoff)]
    d = [[displacement(alpha, m, n) for n in range(cutoff)] for m in range(cutoff + 1)]
    total = mp.mpf(0)
    for n in range(cutoff):
        total += abs(mp.fsum(p[k] * d[n][k] * d[n + 1][k] for k in range(cutoff)))
    return total


def squeezed_fidelity(r0, T, cutoff):
    r0, T = mp.mpf(r0), mp.mpf(T)
    R = 1 - T
    lam = mp.tanh(r0)
    psi = [mp.mpf(0)] * (cutoff + 3)
    for j in range(0, cutoff + 3, 2):
        n = j // 2
        psi[j] = (-lam) ** n * mp.sqrt(mp.factorial(j)) / (2 ** n * mp.factorial(n) * mp.sqrt(mp.cosh(r0)))
    total = mp.mpf(0)
    for a in range(cutoff):
        b = a + 2
        s = mp.fsum(mp.sqrt(mp.binomial(a + k, k) * mp.binomial(b + k, k)) * R ** k * psi[a + k] * psi[b + k]
                    for k in range(cutoff - b))
        total += abs(s * T ** ((a + b) / mp.mpf(2)))
    return total


def displaced_thermal_entry(alpha, n_beta, n, m):
    # P-function quadrature: rho = int d^2 beta P(beta) |beta><beta|, P Gaussian about alpha.
    mp.mp.dps = 20
    alpha, n_beta = mp.mpf(alpha), mp.mpf(n_beta)

    def integrand(u, v):
        b = mp.mpc(u, v)
        weight = mp.exp(-abs(b - alpha) ** 2 / n_beta) / (mp.pi * n_beta)
        return weight * mp.exp(-abs(b) ** 2) * b ** n * mp.conj(b) ** m / mp.sqrt(mp.factorial(n) * mp.factorial(m))

    re = mp.quad(lambda u, v: mp.re(integrand(u, v)), [-8, alpha, 10], [-9, 0, 9])
    mp.mp.dps = 30
    return re


if __name__ == "__main__":
    for T in ["1", "0.5", mp.mpf(1) / 3, "0.1"]:
        print("xi", mp.nstr(mp.mpf(T), 17), mp.nstr(mp.re(xi(T)), 17))
    for alpha, nb in [(0.5, 0.1), (1, 0.5), (2, 1.5), (4, 2.5)]:
        print("F1", alpha, nb, mp.nstr(coherent_fidelity(alpha, nb, 160), 17))
    for r0, T in [(0.25, 0.3), (0.5, 0.5), (1, 0.8), (1, 1)]:
        print("F2", r0, T, mp.nstr(squeezed_fidelity(r0, T, 260), 17))
    for n, m in [(0, 0), (1, 0), (2, 1), (3, 3), (4, 1)]:
        print("rho", n, m, mp.nstr(displaced_thermal_entry(1, 0.5, n, m), 15))
