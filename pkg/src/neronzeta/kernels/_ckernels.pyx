# cython: language_level=3, boundscheck=False, wraparound=False
"""Machine-word versions of the dense polynomial kernels.

Every arithmetic step is overflow-checked; on overflow, or when an input does
not fit in a signed 64-bit integer, OverflowError is raised and the caller
falls back to the exact pure-Python kernels.
"""

from libc.stdlib cimport malloc, free

cdef extern from *:
    """
    static inline int nz_mul_ovf(long long a, long long b, long long *r) {
        return __builtin_mul_overflow(a, b, r);
    }
    static inline int nz_add_ovf(long long a, long long b, long long *r) {
        return __builtin_add_overflow(a, b, r);
    }
    static inline int nz_sub_ovf(long long a, long long b, long long *r) {
        return __builtin_sub_overflow(a, b, r);
    }
    """
    int nz_mul_ovf(long long a, long long b, long long *r) nogil
    int nz_add_ovf(long long a, long long b, long long *r) nogil
    int nz_sub_ovf(long long a, long long b, long long *r) nogil


cdef long long* _load(object seq, Py_ssize_t n) except NULL:
    cdef long long* buf = <long long*> malloc((n if n > 0 else 1) * sizeof(long long))
    if buf == NULL:
        raise MemoryError()
    cdef Py_ssize_t i
    try:
        for i in range(n):
            buf[i] = seq[i]
    except OverflowError:
        free(buf)
        raise
    return buf


cdef list _dump(long long* buf, Py_ssize_t n):
    cdef Py_ssize_t i
    return [buf[i] for i in range(n)]


def convolve(a, b):
    cdef Py_ssize_t na = len(a), nb = len(b)
    if na == 0 or nb == 0:
        return []
    cdef Py_ssize_t n = na + nb - 1, i, j
    cdef long long *pa = _load(a, na)
    cdef long long *pb
    try:
        pb = _load(b, nb)
    except OverflowError:
        free(pa)
        raise
    cdef long long *out = <long long*> malloc(n * sizeof(long long))
    cdef long long prod
    cdef int bad = 0
    for i in range(n):
        out[i] = 0
    with nogil:
        for i in range(na):
            if pa[i] == 0:
                continue
            for j in range(nb):
                if nz_mul_ovf(pa[i], pb[j], &prod) or nz_add_ovf(out[i + j], prod, &out[i + j]):
                    bad = 1
                    break
            if bad:
                break
    free(pa)
    free(pb)
    try:
        if bad:
            raise OverflowError("int64 overflow in convolve")
        return _dump(out, n)
    finally:
        free(out)


def convolve_trunc(a, b, Py_ssize_t n):
    cdef Py_ssize_t na = min(len(a), n), nb = min(len(b), n), i, j, lim
    cdef long long *pa = _load(a, na)
    cdef long long *pb
    try:
        pb = _load(b, nb)
    except OverflowError:
        free(pa)
        raise
    cdef long long *out = <long long*> malloc((n if n > 0 else 1) * sizeof(long long))
    cdef long long prod
    cdef int bad = 0
    for i in range(n):
        out[i] = 0
    with nogil:
        for i in range(na):
            if pa[i] == 0:
                continue
            lim = n - i
            if nb < lim:
                lim = nb
            for j in range(lim):
                if nz_mul_ovf(pa[i], pb[j], &prod) or nz_add_ovf(out[i + j], prod, &out[i + j]):
                    bad = 1
                    break
            if bad:
                break
    free(pa)
    free(pb)
    try:
        if bad:
            raise OverflowError("int64 overflow in convolve_trunc")
        return _dump(out, n)
    finally:
        free(out)


def inverse_series(a, Py_ssize_t n):
    if len(a) == 0 or a[0] not in (1, -1):
        raise ValueError("constant term must be a unit")
    cdef Py_ssize_t na = len(a), k, i, lim
    cdef long long *pa = _load(a, na)
    cdef long long *inv = <long long*> malloc((n if n > 0 else 1) * sizeof(long long))
    cdef long long c0 = pa[0], acc, prod
    cdef int bad = 0
    with nogil:
        if n > 0:
            inv[0] = c0
        for k in range(1, n):
            acc = 0
            lim = na - 1
            if k < lim:
                lim = k
            for i in range(1, lim + 1):
                if nz_mul_ovf(pa[i], inv[k - i], &prod) or nz_add_ovf(acc, prod, &acc):
                    bad = 1
                    break
            if bad or nz_sub_ovf(0, acc, &acc) or nz_mul_ovf(acc, c0, &inv[k]):
                bad = 1
                break
    free(pa)
    try:
        if bad:
            raise OverflowError("int64 overflow in inverse_series")
        return _dump(inv, n)
    finally:
        free(inv)


def divmod_monic(a, m):
    if len(m) == 0 or m[len(m) - 1] != 1:
        raise ValueError("divisor must be monic")
    cdef Py_ssize_t na = len(a), dm = len(m) - 1, k, i, base
    if na <= dm:
        return [], list(a)
    cdef long long *r = _load(a, na)
    cdef long long *pm
    try:
        pm = _load(m, dm + 1)
    except OverflowError:
        free(r)
        raise
    cdef long long *q = <long long*> malloc((na - dm) * sizeof(long long))
    cdef long long c, prod
    cdef int bad = 0
    for i in range(na - dm):
        q[i] = 0
    with nogil:
        for k in range(na - 1, dm - 1, -1):
            c = r[k]
            if c == 0:
                continue
            base = k - dm
            q[base] = c
            for i in range(dm):
                if nz_mul_ovf(c, pm[i], &prod) or nz_sub_ovf(r[base + i], prod, &r[base + i]):
                    bad = 1
                    break
            if bad:
                break
            r[k] = 0
    free(pm)
    try:
        if bad:
            raise OverflowError("int64 overflow in divmod_monic")
        return _dump(q, na - dm), _dump(r, dm)
    finally:
        free(q)
        free(r)
