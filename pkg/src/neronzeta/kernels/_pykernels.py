"""Dense integer polynomial kernels, pure Python.

Polynomials are lists of ints in ascending degree.  These are the reference
implementations; the compiled module must agree with them exactly.
"""


def convolve(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def convolve_trunc(a, b, n):
    """First ``n`` coefficients of ``a * b``."""
    out = [0] * n
    for i, x in enumerate(a[:n]):
        if x:
            lim = min(len(b), n - i)
            for j in range(lim):
                out[i + j] += x * b[j]
    return out


def inverse_series(a, n):
    """Power-series inverse of ``a`` modulo T**n; requires a[0] in {1, -1}."""
    if not a or a[0] not in (1, -1):
        raise ValueError("constant term must be a unit")
    c0 = a[0]
    inv = [0] * n
    if n == 0:
        return inv
    inv[0] = c0
    for k in range(1, n):
        acc = 0
        for i in range(1, min(k, len(a) - 1) + 1):
            acc += a[i] * inv[k - i]
        inv[k] = -acc * c0
    return inv


def divmod_monic(a, m):
    """Quotient and remainder of ``a`` by the monic polynomial ``m``."""
    if not m or m[-1] != 1:
        raise ValueError("divisor must be monic")
    dm = len(m) - 1
    r = list(a)
    if len(r) <= dm:
        return [], r
    q = [0] * (len(r) - dm)
    for k in range(len(r) - 1, dm - 1, -1):
        c = r[k]
        if c:
            q[k - dm] = c
            base = k - dm
            for i in range(dm):
                r[base + i] -= c * m[i]
            r[k] = 0
    return q, r[:dm]
