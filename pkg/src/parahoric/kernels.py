"""Kernel selection and the chain driver shared by both kernel lanes.

The hot loop of every Hecke computation is a chain of generator
multiplications applied to a T-expansion.  The per-step arithmetic lives in
a kernel module: parahoric._ckernel (compiled, preferred) or
parahoric._kernel_py (pure fallback).  Selection happens at import; set
PARAHORIC_KERNEL=py or =c to force a lane.
"""

from __future__ import annotations

import os
from array import array

from . import _kernel_py

_forced = os.environ.get("PARAHORIC_KERNEL", "").strip().lower()

_ckernel = None
if _forced != "py":
    try:
        from . import _ckernel as _ck
        _ckernel = _ck
    except ImportError:
        _ckernel = None
        if _forced in ("c", "cython"):
            raise ImportError(
                "PARAHORIC_KERNEL=c requested but the compiled kernel is missing; "
                "reinstall with Cython available")

ACTIVE = _ckernel if _ckernel is not None else _kernel_py
KERNEL_NAME = ACTIVE.KERNEL_NAME


def available_kernels():
    out = {"python": _kernel_py}
    if _ckernel is not None:
        out["cython"] = _ckernel
    return out


def dense_from_dict(support):
    """support: {id: {exp: int}} -> (ids, coeffs, width, lo), deterministic."""
    ids = sorted(support)
    if not ids:
        return [], array("q"), 1, 0
    lo = min(min(p) for p in (support[i] for i in ids) if p)
    hi = max(max(p) for p in (support[i] for i in ids) if p)
    width = hi - lo + 1
    coeffs = array("q", bytes(8 * len(ids) * width))
    for k, i in enumerate(ids):
        base = k * width
        for e, c in support[i].items():
            coeffs[base + e - lo] = c
    return ids, coeffs, width, lo


def dict_from_dense(ids, coeffs, width, lo):
    out = {}
    for k, i in enumerate(ids):
        base = k * width
        poly = {}
        for j in range(width):
            c = coeffs[base + j]
            if c:
                poly[lo + j] = c
        if poly:
            out[i] = poly
    return out


def run_chain(ball, support, steps, shifts, side="right", kernel=None):
    """Apply a chain of generator steps to {id: {exp: int}}.

    steps: sequence of (gen, inverse) pairs; side: 'right' or 'left';
    shifts[g]: the exponent 2*e_g with q_g = v^(2 e_g).  Neighbor tables are
    materialized before the kernel runs.
    """
    kern = kernel if kernel is not None else ACTIVE
    if not support:
        return {}
    word = [g for g, _ in steps]
    ball.close_chain(sorted(support), word, side)
    nbrs = ball.nbr_right if side == "right" else ball.nbr_left
    ids, coeffs, width, lo = dense_from_dict(support)
    for g, inverse in steps:
        ids, coeffs, width, lo = kern.step(
            ids, coeffs, width, lo, nbrs[g], ball.length, shifts[g], inverse)
        if not ids:
            return {}
    return dict_from_dense(ids, coeffs, width, lo)
