# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""int64 Smith normal form kernel.

Mirrors ``_snf_py.snf`` operation for operation. Every multiply, add and
negate is overflow-checked; on overflow ``OverflowError`` is raised and the
caller reruns the Python version on arbitrary-precision integers.
"""

from libc.stdlib cimport malloc, free
from libc.string cimport memset

cdef extern from *:
    """
    #include <limits.h>
    static inline int ss_mulsub(long long *dst, long long q, long long v) {
        long long t;
        if (__builtin_mul_overflow(q, v, &t)) return 1;
        return __builtin_sub_overflow(*dst, t, dst);
    }
    static inline int ss_add(long long *dst, long long v) {
        return __builtin_add_overflow(*dst, v, dst);
    }
    static inline long long ss_floordiv(long long a, long long b) {
        long long q = a / b;
        if ((a % b != 0) && ((a < 0) != (b < 0))) q -= 1;
        return q;
    }
    """
    int ss_mulsub(long long *dst, long long q, long long v) nogil
    int ss_add(long long *dst, long long v) nogil
    long long ss_floordiv(long long a, long long b) nogil
    long long LLONG_MIN


cdef inline long long _abs(long long a) nogil:
    return -a if a < 0 else a


cdef inline void _swap_rows(long long *M, Py_ssize_t w, Py_ssize_t i, Py_ssize_t j) nogil:
    cdef Py_ssize_t c
    cdef long long tmp
    for c in range(w):
        tmp = M[i * w + c]
        M[i * w + c] = M[j * w + c]
        M[j * w + c] = tmp


cdef inline void _swap_cols(long long *M, Py_ssize_t h, Py_ssize_t w, Py_ssize_t i, Py_ssize_t j) nogil:
    cdef Py_ssize_t r
    cdef long long tmp
    for r in range(h):
        tmp = M[r * w + i]
        M[r * w + i] = M[r * w + j]
        M[r * w + j] = tmp


cdef int _negate_row(long long *M, Py_ssize_t w, Py_ssize_t i) nogil:
    cdef Py_ssize_t c
    for c in range(w):
        if M[i * w + c] == LLONG_MIN:
            return 1
        M[i * w + c] = -M[i * w + c]
    return 0


cdef int _run(long long *A, long long *U, long long *V,
              Py_ssize_t nr, Py_ssize_t nc, Py_ssize_t *rank) nogil:
    cdef Py_ssize_t k = nr if nr < nc else nc
    cdef Py_ssize_t t = 0, i, j, c, bi, bj, bad
    cdef long long a, best, piv, q
    cdef bint dirty, found
    while t < k:
        best = 0
        bi = -1
        bj = -1
        found = False
        for i in range(t, nr):
            for j in range(t, nc):
                a = _abs(A[i * nc + j])
                if a < 0:
                    return 1
                if a != 0 and (best == 0 or a < best):
                    best = a
                    bi = i
                    bj = j
                    if a == 1:
                        found = True
                        break
            if found:
                break
        if bi < 0:
            break
        if bi != t:
            _swap_rows(A, nc, bi, t)
            if U != NULL:
                _swap_rows(U, nr, bi, t)
        if bj != t:
            _swap_cols(A, nr, nc, t, bj)
            if V != NULL:
                _swap_cols(V, nc, nc, t, bj)
        while True:
            piv = A[t * nc + t]
            dirty = False
            for i in range(t + 1, nr):
                a = A[i * nc + t]
                if a == 0:
                    continue
                if a == LLONG_MIN or piv == LLONG_MIN:
                    return 1
                q = ss_floordiv(a, piv)
                if q != 0:
                    for c in range(t, nc):
                        if ss_mulsub(&A[i * nc + c], q, A[t * nc + c]):
                            return 1
                    if U != NULL:
                        for c in range(nr):
                            if ss_mulsub(&U[i * nr + c], q, U[t * nr + c]):
                                return 1
                if A[i * nc + t] != 0:
                    dirty = True
            for j in range(t + 1, nc):
                a = A[t * nc + j]
                if a == 0:
                    continue
                if a == LLONG_MIN or piv == LLONG_MIN:
                    return 1
                q = ss_floordiv(a, piv)
                if q != 0:
                    for i in range(t, nr):
                        if A[i * nc + t] != 0:
                            if ss_mulsub(&A[i * nc + j], q, A[i * nc + t]):
                                return 1
                    if V != NULL:
                        for i in range(nc):
                            if V[i * nc + t] != 0:
                                if ss_mulsub(&V[i * nc + j], q, V[i * nc + t]):
                                    return 1
                if A[t * nc + j] != 0:
                    dirty = True
            if dirty:
                best = 0
                bi = -1
                bj = -1
                for j in range(t + 1, nc):
                    a = _abs(A[t * nc + j])
                    if a < 0:
                        return 1
                    if a != 0 and (best == 0 or a < best):
                        best = a
                        bi = t
                        bj = j
                for i in range(t + 1, nr):
                    a = _abs(A[i * nc + t])
                    if a < 0:
                        return 1
                    if a != 0 and (best == 0 or a < best):
                        best = a
                        bi = i
                        bj = t
                if bi != t:
                    _swap_rows(A, nc, bi, t)
                    if U != NULL:
                        _swap_rows(U, nr, bi, t)
                else:
                    _swap_cols(A, nr, nc, t, bj)
                    if V != NULL:
                        _swap_cols(V, nc, nc, t, bj)
                continue
            bad = -1
            if piv != 1 and piv != -1:
                for i in range(t + 1, nr):
                    for j in range(t + 1, nc):
                        if A[i * nc + j] % piv != 0:
                            bad = i
                            break
                    if bad >= 0:
                        break
            if bad < 0:
                break
            for c in range(nc):
                if ss_add(&A[t * nc + c], A[bad * nc + c]):
                    return 1
            if U != NULL:
                for c in range(nr):
                    if ss_add(&U[t * nr + c], U[bad * nr + c]):
                        return 1
        if A[t * nc + t] < 0:
            if _negate_row(A, nc, t):
                return 1
            if U != NULL and _negate_row(U, nr, t):
                return 1
        t += 1
    rank[0] = t
    return 0


cdef long long *_identity(Py_ssize_t n):
    cdef long long *M = <long long *> malloc(max(n * n, 1) * sizeof(long long))
    cdef Py_ssize_t i
    if M == NULL:
        raise MemoryError()
    memset(M, 0, max(n * n, 1) * sizeof(long long))
    for i in range(n):
        M[i * n + i] = 1
    return M


cdef list _to_lists(long long *M, Py_ssize_t h, Py_ssize_t w):
    return [[M[i * w + j] for j in range(w)] for i in range(h)]


def snf(rows, Py_ssize_t ncols, bint want_transforms=False):
    """Same contract as ``_snf_py.snf``; raises OverflowError past int64."""
    cdef Py_ssize_t nr = len(rows), nc = ncols, i, j, rank = 0
    cdef Py_ssize_t k = nr if nr < nc else nc
    cdef long long *A = <long long *> malloc(max(nr * nc, 1) * sizeof(long long))
    cdef long long *U = NULL
    cdef long long *V = NULL
    cdef int status
    if A == NULL:
        raise MemoryError()
    try:
        for i in range(nr):
            row = rows[i]
            if len(row) != nc:
                raise ValueError("ragged matrix")
            for j in range(nc):
                # raises OverflowError for entries beyond int64
                A[i * nc + j] = row[j]
        if want_transforms:
            U = _identity(nr)
            V = _identity(nc)
        with nogil:
            status = _run(A, U, V, nr, nc, &rank)
        if status:
            raise OverflowError("int64 overflow in Smith normal form kernel")
        diagonal = [A[i * nc + i] if i < rank else 0 for i in range(k)]
        if want_transforms:
            return diagonal, _to_lists(U, nr, nr), _to_lists(V, nc, nc)
        return diagonal, None, None
    finally:
        free(A)
        if U != NULL:
            free(U)
        if V != NULL:
            free(V)
