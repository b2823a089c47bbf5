"""Writes the t = 0 holonomy of the demo model spec_intermediate_k8.json as golden germs.

Independent of the C++ library: the time-one map of y^(k+1)/(1 + lambda y^k) d/dy
is summed as a Lie series over Python fractions.
"""
import json
import sys
from fractions import Fraction


def mul(a, b, n):
    r = [Fraction(0)] * (n + 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b[: n + 1 - i]):
                r[i + j] += x * y
    return r


def field(k, lam, n):
    # y^(k+1) * sum_j (-lam y^k)^j
    F = [Fraction(0)] * (n + 1)
    e, c = k + 1, Fraction(1)
    while e <= n:
        F[e] = c
        e += k
        c *= -lam
    return F


def time_one(k, lam, n):
    F = field(k, lam, n)
    term = [Fraction(0)] * (n + 1)
    term[1] = Fraction(1)
    total = term[:]
    j = 1
    while any(term):
        d = [i * term[i] for i in range(1, n + 1)] + [Fraction(0)]  # term'
        term = [x / j for x in mul(F, d, n)]
        total = [a + b for a, b in zip(total, term)]
        j += 1
    return total


def germ_json(coeffs, n, conductor, slot):
    v = next(i for i, c in enumerate(coeffs) if c)
    enc = []
    for c in coeffs[v:]:
        if conductor == 1 or c == 0:
            enc.append({"conductor": 1, "coeffs": [str(c)]})
        else:
            cs = ["0"] * 2
            cs[slot] = str(c)
            enc.append({"conductor": conductor, "coeffs": cs})
    return {"kind": "germ", "valuation": v, "trunc": n, "coeffs": enc}


def main():
    n = int(sys.argv[1]) if len(sys.argv) > 1 else 18
    out = sys.argv[2] if len(sys.argv) > 2 else "demos/golden"
    k, lam = 8, Fraction(2, 5)  # a1 = -1, atau = i
    g1 = [Fraction(0)] * (n + 1)
    g1[1] = Fraction(-1)
    phi = time_one(k, lam, n)
    json.dump(germ_json(g1, n, 1, 0), open(f"{out}/rho_F0_loop_1.json", "w"), indent=1)
    json.dump(germ_json(phi, n, 4, 1), open(f"{out}/rho_F0_loop_tau.json", "w"), indent=1)


main()
