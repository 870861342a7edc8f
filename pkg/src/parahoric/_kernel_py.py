"""Pure-Python T-basis convolution step.

A T-expansion is held densely: a row per basis element (ids[k] is the ball id
of row k) and a flat int64 coefficient buffer of shape nrows x width, column j
holding the coefficient of v^(lo + j).  One step multiplies by a generator
T_s or its inverse on one side:

    T_x T_s     = T_{xs}                        if len(xs) > len(x)
                = (q_s - 1) T_x + q_s T_{xs}    otherwise
    T_x T_s^-1  = q_s^-1 T_{xs} + (q_s^-1 - 1) T_x   if len(xs) > len(x)
                = T_{xs}                        otherwise

with q_s = v^shift.  The compiled twin in _ckernel.pyx implements the exact
same contract; tests assert bit-identical outputs.
"""

from array import array

KERNEL_NAME = "python"


def step(ids, coeffs, width, lo, nbr, lengths, shift, inverse):
    """One generator step; returns (ids2, coeffs2, width2, lo2)."""
    n = len(ids)
    out_index = {}
    out_ids = []
    for k in range(n):
        x = ids[k]
        y = nbr[x]
        if y not in out_index:
            out_index[y] = len(out_ids)
            out_ids.append(y)
        keep_x = (lengths[y] > lengths[x]) if inverse else (lengths[y] <= lengths[x])
        if keep_x and x not in out_index:
            out_index[x] = len(out_ids)
            out_ids.append(x)
    width2 = width + shift
    lo2 = lo - shift if inverse else lo
    coeffs2 = array("q", bytes(8 * len(out_ids) * width2))
    for k in range(n):
        x = ids[k]
        y = nbr[x]
        up = lengths[y] > lengths[x]
        base = k * width
        if not inverse:
            if up:
                ry = out_index[y] * width2
                for j in range(width):
                    c = coeffs[base + j]
                    if c:
                        coeffs2[ry + j] += c
            else:
                ry = out_index[y] * width2
                rx = out_index[x] * width2
                for j in range(width):
                    c = coeffs[base + j]
                    if c:
                        coeffs2[ry + j + shift] += c
                        coeffs2[rx + j + shift] += c
                        coeffs2[rx + j] -= c
        else:
            if up:
                ry = out_index[y] * width2
                rx = out_index[x] * width2
                for j in range(width):
                    c = coeffs[base + j]
                    if c:
                        coeffs2[ry + j] += c
                        coeffs2[rx + j] += c
                        coeffs2[rx + j + shift] -= c
            else:
                ry = out_index[y] * width2
                for j in range(width):
                    c = coeffs[base + j]
                    if c:
                        coeffs2[ry + j + shift] += c
    return out_ids, coeffs2, width2, lo2
