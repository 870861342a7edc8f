"""Benchmark the convolution kernels against each other.

Two views:

  * raw chains: generator-word multiplication applied to a large
    T-expansion, which is exactly the code the compiled kernel replaces;
  * end to end: building Bernstein elements and certifying generator
    commutation, where Python-side bookkeeping (words, tables, exact
    rational assembly) shares the bill.
"""

from __future__ import annotations

import time

from .affine import ParahoricType
from .hecke import HeckeAlgebra, bernstein_function, commutes_with_generators
from .kernels import available_kernels, run_chain
from .rootdata import build_root_datum


def _dominant_mus(datum, cutoff):
    out = []
    box = range(-cutoff, cutoff + 1)

    def rec(prefix):
        if len(prefix) == datum.rank:
            v = tuple(prefix)
            if datum.is_dominant(v) and any(v):
                out.append(v)
            return
        for c in box:
            rec(prefix + [c])

    rec([])
    return out


def _end_to_end(datum, cutoff, kernel):
    from . import kernels
    old = kernels.ACTIVE
    kernels.ACTIVE = kernel
    try:
        alg = HeckeAlgebra(datum)
        I = ParahoricType.iwahori()
        t0 = time.time()
        total = 0
        for mu in _dominant_mus(datum, cutoff):
            z = bernstein_function(alg, mu, I)
            h = z.hecke(alg, I)
            assert commutes_with_generators(h)
            total += len(h.coeffs)
        return time.time() - t0, total
    finally:
        kernels.ACTIVE = old


def _raw_chain(datum, cutoff, kernel, repeats=20):
    alg = HeckeAlgebra(datum)
    I = ParahoricType.iwahori()
    mus = _dominant_mus(datum, cutoff)
    mu = max(mus, key=lambda m: alg.ctx.length(alg.ctx.translation(m)))
    h = bernstein_function(alg, mu, I).hecke(alg, I)
    support, _ = h._cleared()
    word, _ = alg.ctx.reduced_word(alg.ctx.translation(mu))
    steps = [(g, False) for g in word] + [(g, True) for g in reversed(word)]
    t0 = time.time()
    for _ in range(repeats):
        run_chain(alg.ball, support, steps, alg.shifts, "right", kernel=kernel)
    return (time.time() - t0) / repeats, len(support), len(steps)


def run_benchmark(type_tag="C2", cutoff=3):
    datum = build_root_datum(type_tag)
    kernels_map = available_kernels()
    print("benchmark: type %s, orbit cutoff %d" % (datum.label, cutoff))

    print("raw chain (the compiled surface):")
    raw = {}
    for name, mod in sorted(kernels_map.items()):
        elapsed, rows, steps = _raw_chain(datum, cutoff, mod)
        raw[name] = elapsed
        print("  %-8s %8.4fs per chain  (%d rows, %d steps)"
              % (name, elapsed, rows, steps))
    if "python" in raw and "cython" in raw:
        print("  speedup: %.1fx" % (raw["python"] / raw["cython"]))

    print("end to end (z_mu build + centrality):")
    full = {}
    for name, mod in sorted(kernels_map.items()):
        elapsed, size = _end_to_end(datum, cutoff, mod)
        full[name] = elapsed
        print("  %-8s %8.3fs   (total support %d)" % (name, elapsed, size))
    if "python" in full and "cython" in full:
        print("  speedup: %.1fx" % (full["python"] / full["cython"]))
    if "cython" not in kernels_map:
        print("  compiled kernel not built; only the python lane ran")
    return raw, full
