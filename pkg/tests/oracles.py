"""Reference implementations written independently of the package.

Plain tuples of Fractions, the four contractions typed in by hand, no
caching, no kernels. Slow on purpose.
"""
from fractions import Fraction as F

H = {0: ((0, 1), (1, 0)), 1: ((1, 0), (0, 1)), 2: ((1, 0), (0, 1)), 3: ((0, -1), (-1, 0))}
h = {0: (0, 0), 1: (0, 1), 2: (1, 1), 3: (2, 1)}


def T(q, p):
    (a, b), (c, d) = H[q]
    x, y = p
    return (F(a * x + b * y + h[q][0], 2), F(c * x + d * y + h[q][1], 2))


def standard(digits):
    p = (F(0), F(0))
    for q in reversed(digits):
        p = T(q, p)
    return p


def center(digits):
    p = (F(1, 2), F(1, 2))
    for q in reversed(digits):
        p = T(q, p)
    return p


def nested_box(digits):
    """Image of the unit square under T_q1 ... T_qk, as (xmin, xmax, ymin, ymax)."""
    corners = [(F(0), F(0)), (F(1), F(0)), (F(0), F(1)), (F(1), F(1))]
    for q in reversed(digits):
        corners = [T(q, c) for c in corners]
    xs = [c[0] for c in corners]
    ys = [c[1] for c in corners]
    return min(xs), max(xs), min(ys), max(ys)


def digits(k, n):
    out = []
    for _ in range(n):
        out.append(k % 4)
        k //= 4
    return tuple(reversed(out))
