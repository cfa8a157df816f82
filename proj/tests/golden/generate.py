"""Regenerates the Poincare polynomial fixtures with sympy.

    python3 generate.py

Each output line is `<args> <degree>:<coeff> ...` in increasing degree.
"""
import sympy

t = sympy.symbols("t")


def exterior(degrees):
    p = sympy.Integer(1)
    for d in degrees:
        p *= 1 + t**d
    return sympy.Poly(sympy.expand(p), t)


def fmt(poly):
    terms = sorted((m[0], c) for m, c in poly.terms())
    return " ".join(f"{d}:{c}" for d, c in terms)


def sym_char0(m):
    if m % 2 == 1:
        return exterior(range(5, 2 * m, 4))
    return exterior(list(range(5, 2 * m - 2, 4)) + [m])


def stiefel(m, n):
    return exterior(range(2 * (m - n) + 1, 2 * m, 2))


with open("sym_char0.txt", "w") as f:
    for m in range(2, 13):
        f.write(f"{m} {fmt(sym_char0(m))}\n")

with open("stiefel.txt", "w") as f:
    for m in range(2, 10):
        for n in range(1, m):
            f.write(f"{m},{n} {fmt(stiefel(m, n))}\n")
