# Copyright 2026 The b2frame Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#  http://www.apache.org/licenses/LICENSE-2.0
#
# THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
# KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
# WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
# MERCHANTABLITY OR NON-INFRINGEMENT.
# See the Apache 2 License for the specific language governing permissions and
# limitations under the License.

"""Independent oracle for values frozen into the C++ tests.

Everything is rebuilt from the definition of B2 with sympy (exact) or numpy
(float), without reference to the C++ code. Run with python3; prints one
labelled value per line.
"""
import numpy as np
import sympy as sp
from sympy import Rational as R

x = sp.symbols('x')


def b2(t):
    return max(1 - abs(t), 0)


def b2_branch(arg, xs):
    v = arg.subs(x, xs)
    if v <= -1 or v >= 1:
        return sp.Integer(0)
    return 1 + arg if v < 0 else 1 - arg


def g_matrix(m, a, b, xv):
    # row i: l = m-1-i, column j: k = j-(m-1); entry B2(x + l/b + k a)
    n = 2 * m - 1
    return sp.Matrix(n, n, lambda i, j: sp.Max(0, 1 - sp.Abs(xv + R(m - 1 - i) / b + (j - (m - 1)) * a)))


def g_symbolic(m, a, b, xs):
    n = 2 * m - 1
    return sp.Matrix(n, n, lambda i, j: b2_branch(x + R(m - 1 - i) / b + (j - (m - 1)) * a, xs))


def dual_vector(m, a, b, xv):
    g = g_matrix(m, a, b, xv)
    rhs = sp.zeros(2 * m - 1, 1)
    rhs[m - 1] = b
    return list(g.LUsolve(rhs))


def det_pieces():
    for a, b in [(R(1, 10), R(7, 4)), (R(2, 13), R(26, 15))]:
        split = 1 - 2 / b + a
        for name, lo, hi in [("left", -a / 2, split), ("right", split, 0)]:
            d = sp.Matrix(g_symbolic(3, a, b, (lo + hi) / 2)[:4, :4]).det()
            coeffs = list(reversed(sp.Poly(sp.expand(d), x).all_coeffs()))
            print(f"det a={a} b={b} {name} [{lo}, {hi}]:", coeffs)


def dual_values():
    a, b = R(3, 10), R(3, 2)
    for xv in [R(-1, 10), R(-1, 20)]:
        print(f"dual (3/10,3/2) x={xv}:", dual_vector(3, a, b, xv))
    # one-sided limits at -a/2: right limit is h(x) as x -> -a/2+,
    # left limit is h(x+a) there (evenness maps (-a/2-e) to (a/2+e)).
    xs = -a / 2 + R(1, 1000)
    g = g_symbolic(3, a, b, xs)
    rhs = sp.Matrix([0, 0, b, 0, 0])
    sol = g.LUsolve(rhs)
    right = sp.nsimplify(sp.simplify(sol[2].subs(x, -a / 2)))
    left = sp.nsimplify(sp.simplify(sol[3].subs(x, -a / 2)))
    print("jump (3/10,3/2) at -a/2: left", left, "right", right)
    print("m=1 (1/2,3/4):", dual_vector(1, R(1, 2), R(3, 4), 0), dual_vector(1, R(1, 2), R(3, 4), R(-1, 4)))
    a, b = R(1, 4), R(3, 2)
    print("dual (1/4,3/2) x=-1/16:", dual_vector(3, a, b, R(-1, 16)))
    # m = 2 strip, Prop 2(d) region
    a, b = R(1, 2), R(9, 10)
    print("dual m=2 (1/2,9/10) x=-1/8:", dual_vector(2, a, b, R(-1, 8)))


def minors():
    a, b, xv = R(3, 5), R(23, 20), R(-1, 10)
    d = g_matrix(3, a, b, xv)[:4, :4]
    d32 = d.minor_submatrix(2, 1).det()
    d33 = d.minor_submatrix(2, 2).det()
    d34 = d.minor_submatrix(2, 3).det()
    print("minors (3/5,23/20) x=-1/10:", d32, d33, d34, "det", d.det())


def p1_det(xv, y):
    # P1_{l,k} = sum_{n=0}^{2} B2(x + l/2 + 2k/3 - 2n) y^n, rows l = 0, 2, 3
    rows = [0, 2, 3]
    m = np.array([[sum(b2(xv + l / 2 + 2 * k / 3 - 2 * n) * y ** n for n in range(3)) for k in range(3)]
                  for l in rows], dtype=complex)
    return np.linalg.det(m)


def psi(xv, nu, a, b, p, q):
    out = np.zeros((p, q), dtype=complex)
    for k in range(p):
        for l in range(q):
            s = 0
            for n in range(-50, 51):
                s += b2(xv + a * q * n + a * l + k / b) * np.exp(-2j * np.pi * a * q * n * nu)
            out[k, l] = s / np.sqrt(b)
    return out


def zz_values():
    print("|M1| at x=0.1, y=1:", p1_det(0.1, 1.0).real)
    print("|M1| at x=1/6, y=-1:", abs(p1_det(1 / 6, -1.0)))
    m = psi(0.1, 0.2, 0.5, 1.5, 3, 4)
    print("psi (1/2,3/2) x=0.1 nu=0.2 [0,0], [1,2], [2,3]:", m[0, 0], m[1, 2], m[2, 3])
    a, b, p, q, n = 0.25, 1.5, 3, 8, 8
    smin = 1e300
    smax = 0
    for i in range(n):
        for j in range(n):
            s = np.linalg.svd(psi((i + 0.5) * a / n, (j + 0.5) / (a * q) / n, a, b, p, q), compute_uv=False)
            smin = min(smin, s.min())
            smax = max(smax, s.max())
    print("rank sweep (1/4,3/2) 8x8: A_est", smin ** 2, "B_est", smax ** 2)
    # j = 3 block A at y = 1: P3 = sqrt(b) psi^T, rows 0-3 and 8-12, column order below
    a, b = 3 / 8, 1.5
    p3 = np.sqrt(b) * psi(0.2, 0.0, a, b, 9, 16).T
    m3 = p3[[0, 1, 2, 3, 8, 9, 10, 11, 12], :][:, [8, 0, 7, 6, 1, 5, 4, 3, 2]]
    print("j3 x=0.2 |A3| =", np.linalg.det(m3[:4, :4]).real, "|B3| =", np.linalg.det(m3[4:, 4:]).real,
          "max|O| =", np.abs(m3[4:, :4]).max())


def bessel_b2():
    a, b, grid = 0.5, 0.75, 512
    sup = 0
    for i in range(grid):
        xv = (i + 0.5) * a / grid
        tot = 0
        for n in range(-5, 6):
            tot += abs(sum(b2(xv - k * a) * b2(xv - k * a - n / b) for k in range(-10, 11)))
        sup = max(sup, tot)
    print("bessel B2 (1/2,3/4):", sup / b)


if __name__ == '__main__':
    det_pieces()
    dual_values()
    minors()
    zz_values()
    bessel_b2()
