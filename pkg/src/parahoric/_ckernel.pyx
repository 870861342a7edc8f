# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled twin of _kernel_py.step; same contract, same output bytes."""

from cpython cimport array
import array

KERNEL_NAME = "cython"


def step(ids, coeffs, long width, long lo, nbr, lengths, long shift, bint inverse):
    cdef long long[::1] cv = coeffs
    cdef long long[::1] nbrv = nbr
    cdef long long[::1] lenv = lengths
    cdef Py_ssize_t n = len(ids)
    cdef Py_ssize_t k, j
    cdef long long x, y, c
    cdef long width2 = width + shift
    cdef long lo2 = lo - shift if inverse else lo
    cdef bint up, keep_x

    out_index = {}
    out_ids = []
    cdef long long[::1] idv = array.array("q", ids)
    for k in range(n):
        x = idv[k]
        y = nbrv[x]
        if y not in out_index:
            out_index[y] = len(out_ids)
            out_ids.append(y)
        up = lenv[y] > lenv[x]
        keep_x = up if inverse else (not up)
        if keep_x and x not in out_index:
            out_index[x] = len(out_ids)
            out_ids.append(x)

    out = array.array("q", bytes(8 * len(out_ids) * width2))
    cdef long long[::1] ov = out
    cdef Py_ssize_t base, ry, rx
    for k in range(n):
        x = idv[k]
        y = nbrv[x]
        up = lenv[y] > lenv[x]
        base = k * width
        if not inverse:
            if up:
                ry = <Py_ssize_t> out_index[y] * width2
                for j in range(width):
                    c = cv[base + j]
                    if c:
                        ov[ry + j] += c
            else:
                ry = <Py_ssize_t> out_index[y] * width2
                rx = <Py_ssize_t> out_index[x] * width2
                for j in range(width):
                    c = cv[base + j]
                    if c:
                        ov[ry + j + shift] += c
                        ov[rx + j + shift] += c
                        ov[rx + j] -= c
        else:
            if up:
                ry = <Py_ssize_t> out_index[y] * width2
                rx = <Py_ssize_t> out_index[x] * width2
                for j in range(width):
                    c = cv[base + j]
                    if c:
                        ov[ry + j] += c
                        ov[rx + j] += c
                        ov[rx + j + shift] -= c
            else:
                ry = <Py_ssize_t> out_index[y] * width2
                for j in range(width):
                    c = cv[base + j]
                    if c:
                        ov[ry + j + shift] += c
    return out_ids, out, width2, lo2
