# cython: boundscheck=False, wraparound=False, initializedcheck=False, language_level=3
"""Compiled belief-propagation kernel.

One call advances the dense survivor table by one round for a slice of the
state space: dst[t] = OR over generators g of src[comp[g, t]], where comp is
the precomposed inverse transition table for this round's move.  Slices make
the caller's thread partitioning trivial, and the loop runs without the GIL.
"""

NAME = "compiled"


def step(const unsigned char[::1] src, unsigned char[::1] dst,
         const int[:, ::1] comp, Py_ssize_t t0, Py_ssize_t t1):
    cdef Py_ssize_t G = comp.shape[0]
    cdef Py_ssize_t t, g
    cdef unsigned char v
    with nogil:
        for t in range(t0, t1):
            v = 0
            for g in range(G):
                if src[comp[g, t]]:
                    v = 1
                    break
            dst[t] = v


def step_indirect(const unsigned char[::1] src, unsigned char[::1] dst,
                  const int[:, ::1] pinv, const int[::1] ainv,
                  Py_ssize_t t0, Py_ssize_t t1):
    """Like step, but composes the round table on the fly:
    dst[t] = OR_g src[pinv[g, ainv[t]]].  Used for moves that are not worth
    caching a composed table for."""
    cdef Py_ssize_t G = pinv.shape[0]
    cdef Py_ssize_t t, g, u
    cdef unsigned char v
    with nogil:
        for t in range(t0, t1):
            u = ainv[t]
            v = 0
            for g in range(G):
                if src[pinv[g, u]]:
                    v = 1
                    break
            dst[t] = v


def step_record(const unsigned char[::1] src, unsigned char[::1] dst,
                short[::1] gens, const int[:, ::1] comp,
                Py_ssize_t t0, Py_ssize_t t1):
    """Like step, but also records the first live predecessor's generator
    index per state, for witness reconstruction."""
    cdef Py_ssize_t G = comp.shape[0]
    cdef Py_ssize_t t, g
    cdef unsigned char v
    cdef short chosen
    with nogil:
        for t in range(t0, t1):
            v = 0
            chosen = 0
            for g in range(G):
                if src[comp[g, t]]:
                    v = 1
                    chosen = <short> g
                    break
            dst[t] = v
            gens[t] = chosen
