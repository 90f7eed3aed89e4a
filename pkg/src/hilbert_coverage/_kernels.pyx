# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled integer kernels; mirrors ``_pykernels`` for orders up to 30."""

ctypedef long long i64


cdef inline void _step(int q, int d, i64* X, i64* Y) noexcept nogil:
    cdef i64 t
    if q == 0:
        t = X[0]
        X[0] = Y[0]
        Y[0] = t
    elif q == 1:
        Y[0] += (<i64>1) << d
    elif q == 2:
        X[0] += (<i64>1) << d
        Y[0] += (<i64>1) << d
    else:
        t = X[0]
        X[0] = ((<i64>2) << d) - Y[0]
        Y[0] = ((<i64>1) << d) - t


cdef inline void _cell(i64 rank, int order, i64* i, i64* j) noexcept nogil:
    cdef i64 X = 1, Y = 1
    cdef int d = 1, level
    for level in range(order):
        _step(<int>(rank & 3), d, &X, &Y)
        rank >>= 2
        d += 1
    i[0] = (X - 1) >> 1
    j[0] = (Y - 1) >> 1


def rank_to_cell(i64 rank, int order):
    cdef i64 i, j
    _cell(rank, order, &i, &j)
    return i, j


def cell_to_rank(i64 i, i64 j, int order):
    cdef i64 X = 2 * i + 1, Y = 2 * j + 1, half, t, rank = 0
    cdef int d = order + 1, level, q
    for level in range(order):
        half = (<i64>1) << (d - 1)
        if X < half and Y < half:
            q = 0
            t = X
            X = Y
            Y = t
        elif X < half:
            q = 1
            Y -= half
        elif Y >= half:
            q = 2
            X -= half
            Y -= half
        else:
            q = 3
            t = X
            X = half - Y
            Y = ((<i64>1) << d) - t
        rank = (rank << 2) | q
        d -= 1
    return rank


def curve_cells(int order):
    cdef i64 k, n = (<i64>1) << (2 * order), i, j
    out = []
    for k in range(n):
        _cell(k, order, &i, &j)
        out.append((i, j))
    return out


def standard_numerators(i64 rank, int order):
    cdef i64 X = 0, Y = 0
    cdef int d = 0, level
    for level in range(order):
        _step(<int>(rank & 3), d, &X, &Y)
        rank >>= 2
        d += 1
    return X, Y
