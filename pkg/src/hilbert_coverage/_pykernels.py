"""Pure-Python integer kernels for the center map and its inverse.

A point is carried as integer numerators over ``2**d``. Applying ``T_q`` to
``(X, Y) / 2**d`` gives ``(H_q (X, Y) + h_q 2**d) / 2**(d + 1)``, so the whole
composition stays in integers. The compiled module ``_kernels`` exports the
same four functions.
"""


def rank_to_cell(rank, order):
    X = Y = 1
    d = 1
    for _ in range(order):
        q = rank & 3
        rank >>= 2
        if q == 0:
            X, Y = Y, X
        elif q == 1:
            Y += 1 << d
        elif q == 2:
            X += 1 << d
            Y += 1 << d
        else:
            X, Y = (2 << d) - Y, (1 << d) - X
        d += 1
    return (X - 1) >> 1, (Y - 1) >> 1


def cell_to_rank(i, j, order):
    X = 2 * i + 1
    Y = 2 * j + 1
    d = order + 1
    rank = 0
    for _ in range(order):
        half = 1 << (d - 1)
        left = X < half
        low = Y < half
        if left and low:
            q = 0
            X, Y = Y, X
        elif left:
            q = 1
            Y -= half
        elif not low:
            q = 2
            X -= half
            Y -= half
        else:
            q = 3
            X, Y = half - Y, (1 << d) - X
        rank = (rank << 2) | q
        d -= 1
    return rank


def curve_cells(order):
    return [rank_to_cell(k, order) for k in range(4 ** order)]


def standard_numerators(rank, order):
    """Numerators of the standard map image over ``2**order``."""
    X = Y = 0
    d = 0
    for _ in range(order):
        q = rank & 3
        rank >>= 2
        if q == 0:
            X, Y = Y, X
        elif q == 1:
            Y += 1 << d
        elif q == 2:
            X += 1 << d
            Y += 1 << d
        else:
            X, Y = (2 << d) - Y, (1 << d) - X
        d += 1
    return X, Y
