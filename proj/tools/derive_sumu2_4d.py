#!/usr/bin/env python3
"""Rebuild the pi and circ tables of presets/sumu2-4d.preset from l = S(L^-) L^+.

Usage: python3 tools/derive_sumu2_4d.py [preset path]
Prints the derived tables and exits 1 if they differ from the preset.
"""
import re
import sys
from itertools import product
from pathlib import Path

import sympy as sp

mu = sp.Symbol("mu")

# generators: a = alpha, A = alpha*, g = gamma, G = gamma*
RULES = {
    ("a", "g"): {("g", "a"): mu},
    ("a", "G"): {("G", "a"): mu},
    ("A", "g"): {("g", "A"): 1 / mu},
    ("A", "G"): {("G", "A"): 1 / mu},
    ("G", "g"): {("g", "G"): 1},
    ("A", "a"): {(): 1, ("g", "G"): -1},
    ("a", "A"): {(): 1, ("g", "G"): -mu**2},
}
COP = {
    "a": [(("a",), ("a",), 1), (("G",), ("g",), -mu)],
    "g": [(("g",), ("a",), 1), (("A",), ("g",), 1)],
    "A": [(("A",), ("A",), 1), (("g",), ("G",), -mu)],
    "G": [(("a",), ("G",), 1), (("G",), ("A",), 1)],
}
EPS = {"a": 1, "A": 1, "g": 0, "G": 0}
KAPPA = {"a": (("A",), 1), "A": (("a",), 1), "g": (("g",), -mu), "G": (("G",), -1 / mu)}
# u = [[a, -mu G], [g, A]]: generator -> (row, column, scale)
ENTRY = {"a": (0, 0, 1), "A": (1, 1, 1), "g": (1, 0, 1), "G": (0, 1, -1 / mu)}
BASIS = ["tau", "e3", "ep", "em"]
REPRESENTATIVES = {"tau": {("a",): mu**2, ("A",): 1}, "e3": {("a",): 1, ("A",): -1}, "ep": {("g",): 1}, "em": {("G",): 1}}


def add(d, w, c):
    c = d.get(w, 0) + c
    if c == 0:
        d.pop(w, None)
    else:
        d[w] = c


_nf = {}


def nf_word(w):
    if w in _nf:
        return _nf[w]
    for i in range(len(w) - 1):
        rhs = RULES.get((w[i], w[i + 1]))
        if rhs:
            res = {}
            for rw, c in rhs.items():
                for w2, c2 in nf_word(w[:i] + rw + w[i + 2 :]).items():
                    add(res, w2, c * c2)
            _nf[w] = res
            return res
    _nf[w] = {w: 1}
    return _nf[w]


def mul(x, y):
    r = {}
    for w1, c1 in x.items():
        for w2, c2 in y.items():
            for w3, c3 in nf_word(w1 + w2).items():
                add(r, w3, c1 * c2 * c3)
    return {w: c for w, c in r.items() if sp.simplify(c) != 0}


def cop_word(w):
    terms = {((), ()): 1}
    for s in w:
        new = {}
        for (l, r), c in terms.items():
            for l2, r2, c2 in COP[s]:
                add(new, (l + l2, r + r2), c * c2)
        terms = new
    return terms


def eps(x):
    return sp.simplify(sum(c * sp.prod([EPS[ch] for ch in w]) for w, c in x.items()))


def r_matrix():
    # R^{ij}_{kl} = (mu if i = j else 1) d_ik d_jl + (mu - 1/mu) [i > j] d_il d_jk
    R = {}
    for i, j, k, l in product(range(2), repeat=4):
        v = 0
        if i == k and j == l:
            v += mu if i == j else 1
        if i > j and i == l and j == k:
            v += mu - 1 / mu
        R[(i, j, k, l)] = v
    M = sp.Matrix(4, 4, lambda r, c: R[(r // 2, r % 2, c // 2, c % 2)])
    Mi = M.inv()
    Ri = {(i, j, k, l): sp.simplify(Mi[2 * i + j, 2 * k + l]) for i, j, k, l in product(range(2), repeat=4)}
    return R, Ri


def l_functionals():
    R, Ri = r_matrix()
    plus, minus = {}, {}
    for s in "aAgG":
        k, m, sc = ENTRY[s]
        plus[s] = sc * sp.Matrix(2, 2, lambda i, j: R[(k, i, m, j)])
        minus[s] = sc * sp.Matrix(2, 2, lambda i, j: Ri[(i, k, j, m)])
    return plus, minus


def on_word(L, w):
    M = sp.eye(2)
    for s in w:
        M = M * L[s]
    return M


def make_pi(plus, minus):
    cache = {}

    def ell(w):
        # l(w) = sum L^-(kappa(w1)) L^+(w2) on raw words, so the R normalization cancels
        M = sp.zeros(2)
        for (left, right), c in cop_word(w).items():
            kw, kc = (), 1
            for ch in reversed(left):
                kw += KAPPA[ch][0]
                kc *= KAPPA[ch][1]
            M += c * kc * on_word(minus, kw) * on_word(plus, right)
        return M

    def pi(x):
        v = sp.zeros(4, 1)
        for w, c in x.items():
            if w not in cache:
                M = ell(w) - sp.prod([EPS[ch] for ch in w]) * sp.eye(2)
                cache[w] = sp.Matrix([M[0, 0], M[0, 1], M[1, 0], M[1, 1]])
            v += c * cache[w]
        return v.applyfunc(sp.simplify)

    return pi


def derive():
    plus, minus = l_functionals()
    pi = make_pi(plus, minus)
    P = sp.Matrix.hstack(*[pi(REPRESENTATIVES[n]) for n in BASIS])
    Pinv = P.inv()

    def coords(x):
        return (Pinv * pi(x)).applyfunc(sp.simplify)

    pis = {g: coords({(g,): 1}) for g in "aAgG"}
    circ = {}
    for g in "aAgG":
        # theta_n o g = pi(r_n g) - eps(r_n) pi(g)
        cols = [coords(mul(REPRESENTATIVES[n], {(g,): 1})) - eps(REPRESENTATIVES[n]) * pis[g] for n in BASIS]
        circ[g] = sp.Matrix.hstack(*cols).applyfunc(sp.simplify)
    return pis, circ


def parse_preset(path):
    pis, circ = {}, {}
    for line in Path(path).read_text().splitlines():
        m = re.match(r"(pi|circ) (\w) = (.*)", line)
        if not m:
            continue
        expr = lambda s: sp.sympify(s.replace("^", "**"), locals={"mu": mu})
        if m.group(1) == "pi":
            pis[m.group(2)] = sp.Matrix([expr(x) for x in m.group(3).split(",")])
        else:
            rows = [[expr(x) for x in r.split(",")] for r in m.group(3).split(";")]
            circ[m.group(2)] = sp.Matrix(rows)
    return pis, circ


def main():
    preset = sys.argv[1] if len(sys.argv) > 1 else str(Path(__file__).resolve().parent.parent / "presets" / "sumu2-4d.preset")
    pis, circ = derive()
    want_pi, want_circ = parse_preset(preset)
    ok = True
    for g in "aAgG":
        print(f"pi {g} =", list(pis[g]))
        print(f"circ {g} =", circ[g].tolist())
        same = sp.simplify(pis[g] - want_pi[g]) == sp.zeros(4, 1) and sp.simplify(circ[g] - want_circ[g]) == sp.zeros(4, 4)
        print(f"  matches preset: {same}")
        ok = ok and same
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
