"""Reference Smith normal form on Python integers.

The compiled kernel in ``_snf_c`` performs exactly the same sequence of
pivot choices and elementary operations, so both backends return identical
transforms whenever the compiled one does not overflow.
"""


def _identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def _min_entry(A, t, nr, nc):
    best = None
    bi = bj = -1
    for i in range(t, nr):
        row = A[i]
        for j in range(t, nc):
            a = row[j]
            if a:
                a = -a if a < 0 else a
                if best is None or a < best:
                    best, bi, bj = a, i, j
                    if a == 1:
                        return bi, bj
    if best is None:
        return None
    return bi, bj


def _swap_cols(M, i, j):
    for row in M:
        row[i], row[j] = row[j], row[i]


def snf(rows, ncols, want_transforms=False):
    """Return ``(diagonal, U, V)`` with ``U * A * V = diag`` for the given rows.

    ``diagonal`` has ``min(nrows, ncols)`` entries in divisibility order with
    trailing zeros. ``U`` and ``V`` are ``None`` unless requested.
    """
    A = [list(r) for r in rows]
    nr, nc = len(A), ncols
    U = _identity(nr) if want_transforms else None
    V = _identity(nc) if want_transforms else None
    k = min(nr, nc)
    t = 0
    while t < k:
        pos = _min_entry(A, t, nr, nc)
        if pos is None:
            break
        i, j = pos
        if i != t:
            A[i], A[t] = A[t], A[i]
            if U is not None:
                U[i], U[t] = U[t], U[i]
        if j != t:
            _swap_cols(A, t, j)
            if V is not None:
                _swap_cols(V, t, j)
        while True:
            rt = A[t]
            piv = rt[t]
            dirty = False
            for i in range(t + 1, nr):
                ri = A[i]
                a = ri[t]
                if not a:
                    continue
                q = a // piv
                if q:
                    ri[t:] = [x - q * y for x, y in zip(ri[t:], rt[t:])]
                    if U is not None:
                        ui, ut = U[i], U[t]
                        U[i] = [x - q * y for x, y in zip(ui, ut)]
                if ri[t]:
                    dirty = True
            for j in range(t + 1, nc):
                a = rt[j]
                if not a:
                    continue
                q = a // piv
                if q:
                    for i in range(t, nr):
                        ri = A[i]
                        if ri[t]:
                            ri[j] -= q * ri[t]
                    if V is not None:
                        for vrow in V:
                            if vrow[t]:
                                vrow[j] -= q * vrow[t]
                if rt[j]:
                    dirty = True
            if dirty:
                # smallest remainder in row t, then column t, row-major ties
                best = None
                bi = bj = -1
                for j in range(t + 1, nc):
                    a = abs(rt[j])
                    if a and (best is None or a < best):
                        best, bi, bj = a, t, j
                for i in range(t + 1, nr):
                    a = abs(A[i][t])
                    if a and (best is None or a < best):
                        best, bi, bj = a, i, t
                if bi != t:
                    A[bi], A[t] = A[t], A[bi]
                    if U is not None:
                        U[bi], U[t] = U[t], U[bi]
                else:
                    _swap_cols(A, t, bj)
                    if V is not None:
                        _swap_cols(V, t, bj)
                continue
            bad = -1
            for i in range(t + 1, nr):
                ri = A[i]
                for j in range(t + 1, nc):
                    if ri[j] % piv:
                        bad = i
                        break
                if bad >= 0:
                    break
            if bad < 0:
                break
            rb = A[bad]
            A[t] = [x + y for x, y in zip(rt, rb)]
            if U is not None:
                U[t] = [x + y for x, y in zip(U[t], U[bad])]
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            if U is not None:
                U[t] = [-x for x in U[t]]
        t += 1
    diagonal = [A[i][i] if i < t else 0 for i in range(k)]
    return diagonal, U, V
