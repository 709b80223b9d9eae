#!/usr/bin/env python3
# Copyright 2026 The softfusion Authors. All rights reserved.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Independent high-precision oracles for the frozen test constants.

Nothing here imports the C++ library. Values printed by this script are
copied into tests/oracle_values.hpp. Re-run after changing any input.
"""
import itertools
import math

import mpmath as mp
import numpy as np
from scipy.optimize import linprog

mp.mp.dps = 40


def stirling_lngamma(a, terms=30):
    # ln Gamma(a) via the Stirling series with Bernoulli numbers.
    a = mp.mpf(a)
    s = (a - mp.mpf(1) / 2) * mp.log(a) - a + mp.log(2 * mp.pi) / 2
    for k in range(1, terms):
        b = mp.bernoulli(2 * k)
        s += b / (2 * k * (2 * k - 1) * a ** (2 * k - 1))
    return s


def upper_tail_quad(a, x):
    # Q(a, x) = int_x^inf s^(a-1) e^-s ds / Gamma(a), by quadrature.
    a = mp.mpf(a)
    x = mp.mpf(x)
    f = lambda s: mp.exp((a - 1) * mp.log(s) - s - mp.loggamma(a))
    peak = max(a - 1, x)
    pts = [x] + [peak + k * mp.sqrt(a) for k in range(1, 40) if peak + k * mp.sqrt(a) > x] + [mp.inf]
    return mp.quad(f, pts)


def normal_tail(z):
    return mp.erfc(z / mp.sqrt(2)) / 2


def inv_q_bisect(p):
    lo, hi = mp.mpf(-40), mp.mpf(40)
    for _ in range(300):
        mid = (lo + hi) / 2
        if normal_tail(mid) > p:
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2


def sinr_threshold(n, rate, upsilon):
    qinv = inv_q_bisect(mp.mpf(upsilon))
    g = lambda tau: mp.log(1 + tau, 2) - mp.sqrt(1 / (n * (1 + tau) ** 2)) * qinv / mp.log(2) - rate
    return mp.findroot(g, (mp.mpf('1e-9'), mp.mpf(10)), solver='anderson')


def outage(pa, pj, tau, sb2):
    return 1 - mp.exp(-tau * sb2 / pa) / (1 + tau * pj / pa)


def reg_q(a, x):
    return mp.gammainc(a, x, mp.inf, regularized=True)


def pfa(pj, w, t, n, sw2):
    k = w * n
    return reg_q(k, k * t / (sw2 + pj))


def pmd(pa, pj, w, t, n, sw2):
    k = w * n
    return 1 - reg_q(k, k * t / (sw2 + pj + pa))


def game_value_lp(a):
    # Row player maximizes; scipy LP over (x, v).
    a = np.asarray(a, dtype=float)
    r, c = a.shape
    cost = np.zeros(r + 1)
    cost[-1] = -1.0
    a_ub = np.hstack([-a.T, np.ones((c, 1))])
    b_ub = np.zeros(c)
    a_eq = np.hstack([np.ones((1, r)), np.zeros((1, 1))])
    res = linprog(cost, A_ub=a_ub, b_ub=b_ub, A_eq=a_eq, b_eq=[1.0],
                  bounds=[(0, None)] * r + [(None, None)], method='highs')
    return -res.fun


def main():
    out = {}
    out['LN_GAMMA_12800'] = stirling_lngamma(12800)
    out['LN_GAMMA_12800_MPMATH'] = mp.loggamma(12800)
    out['Q_200_200'] = upper_tail_quad(200, 200)
    out['Q_200_200_MPMATH'] = reg_q(200, 200)
    out['INV_Q_0_1'] = inv_q_bisect(mp.mpf('0.1'))
    tau = sinr_threshold(200, mp.mpf('0.4'), mp.mpf('0.1'))
    out['TAU_TABLE2'] = tau
    out['TAU_N1E6'] = sinr_threshold(10**6, mp.mpf('0.4'), mp.mpf('0.1'))
    out['OUTAGE_2_2_0407'] = outage(2, 2, mp.mpf('0.407'), 1)
    out['OUTAGE_2_0_0407'] = outage(2, 0, mp.mpf('0.407'), 1)
    out['PFA_W4_N200_PJ2_T38312'] = pfa(2, 4, mp.mpf('3.8312'), 200, 1)
    out['PMD_W1_N200_PA2_PJ2_T38312'] = pmd(2, 2, 1, mp.mpf('3.8312'), 200, 1)
    out['PFA_W1_N200_PJ2_T38312'] = pfa(2, 1, mp.mpf('3.8312'), 200, 1)
    # t* for the reference pair P_A = P_J = 2.
    mu0, mu1 = mp.mpf(3), mp.mpf(5)
    out['TSTAR_FIG2'] = mu0 * mu1 * mp.log(mu1 / mu0) / 2
    # Geometric weights, p = 0.5 over {1,4,16,64}.
    support = [1, 4, 16, 64]
    raw = [(1 - mp.mpf('0.5')) ** (w - 1) * mp.mpf('0.5') for w in support]
    tot = sum(raw)
    for w, v in zip(support, raw):
        out[f'GEOM_P05_W{w}'] = v / tot
    # Uniform 3x3 outage average, tau = 0.407.
    grid = [1, 2, 3]
    out['OUTAGE_UNIFORM_3X3'] = sum(outage(a, j, mp.mpf('0.407'), 1) for a in grid for j in grid) / 9
    # 36-term average: {1,2,3}^2 power grid, W in {1,2}, t in {2.5, 4}, N = 20,
    # uniform on both sides.
    acts = [(w, t) for w in (1, 2) for t in (mp.mpf('2.5'), mp.mpf(4))]
    out['PFA_AVG_36'] = sum(pfa(j, w, t, 20, 1) for a in grid for j in grid for w, t in acts) / 36
    out['PMD_AVG_36'] = sum(pmd(a, j, w, t, 20, 1) for a in grid for j in grid for w, t in acts) / 36
    # Matrix games.
    m44 = [[(i * j) % 5 - 2 for j in range(1, 5)] for i in range(1, 5)]
    out['GAME_4X4_MOD5'] = game_value_lp(m44)
    m33 = [[3, -1, 2], [-2, 4, 0], [1, 0, -3]]
    out['GAME_3X3_FIXED'] = game_value_lp(m33)
    for k, v in out.items():
        print(f'inline constexpr double k{k} = {mp.nstr(v, 17)};')


if __name__ == '__main__':
    main()
