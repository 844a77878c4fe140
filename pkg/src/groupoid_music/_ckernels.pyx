# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled permutation kernels; same contracts as _pykernels."""

import numpy as np
cimport numpy as cnp
from cpython.bytes cimport PyBytes_FromStringAndSize

cnp.import_array()


def compose(p, q):
    cdef Py_ssize_t i, n = len(p)
    cdef int[::1] a = np.asarray(p, dtype=np.int32)
    cdef int[::1] b = np.asarray(q, dtype=np.int32)
    out = np.empty(n, dtype=np.int32)
    cdef int[::1] c = out
    for i in range(n):
        c[i] = b[a[i]]
    return tuple(out.tolist())


def inverse(p):
    cdef Py_ssize_t i, n = len(p)
    cdef int[::1] a = np.asarray(p, dtype=np.int32)
    out = np.empty(n, dtype=np.int32)
    cdef int[::1] c = out
    for i in range(n):
        c[a[i]] = i
    return tuple(out.tolist())


def closure(gens, Py_ssize_t degree, Py_ssize_t budget):
    cdef Py_ssize_t ngens = len(gens)
    cdef Py_ssize_t cap = 1024
    cdef Py_ssize_t count = 1, head = 0, g, i
    cdef Py_ssize_t nbytes = degree * sizeof(int)
    gen_arr = np.ascontiguousarray(np.asarray(gens, dtype=np.int32).reshape(ngens, degree))
    cdef int[:, ::1] G = gen_arr
    buf = np.empty((cap, degree), dtype=np.int32)
    cdef int[:, ::1] E = buf
    par = np.empty(cap, dtype=np.int64)
    via = np.empty(cap, dtype=np.int64)
    cdef long long[::1] P = par
    cdef long long[::1] V = via
    for i in range(degree):
        E[0, i] = i
    P[0] = -1
    V[0] = -1
    seen = {PyBytes_FromStringAndSize(<char*>&E[0, 0], nbytes): 0}
    while head < count:
        for g in range(ngens):
            if count >= cap:
                cap *= 2
                buf = np.resize(buf, (cap, degree))
                par = np.resize(par, cap)
                via = np.resize(via, cap)
                E = buf
                P = par
                V = via
            for i in range(degree):
                E[count, i] = G[g, E[head, i]]
            key = PyBytes_FromStringAndSize(<char*>&E[count, 0], nbytes)
            if key not in seen:
                seen[key] = count
                P[count] = head
                V[count] = g
                count += 1
                if count > budget:
                    return None
        head += 1
    elements = [tuple(row) for row in buf[:count].tolist()]
    return elements, par[:count].tolist(), via[:count].tolist()


cdef long long _gcd(long long a, long long b):
    while b:
        a, b = b, a % b
    return a


def element_orders(elements):
    if len(elements) == 0:
        return []
    arr = np.ascontiguousarray(np.asarray(elements, dtype=np.int32))
    cdef int[:, ::1] A = arr
    cdef Py_ssize_t k = A.shape[0], d = A.shape[1], r, s, i
    cdef long long order, length
    seen_arr = np.zeros(d, dtype=np.uint8)
    cdef unsigned char[::1] seen = seen_arr
    out = np.empty(k, dtype=np.int64)
    cdef long long[::1] O = out
    for r in range(k):
        for s in range(d):
            seen[s] = 0
        order = 1
        for s in range(d):
            if seen[s]:
                continue
            length = 0
            i = s
            while not seen[i]:
                seen[i] = 1
                i = A[r, i]
                length += 1
            order = order // _gcd(order, length) * length
        O[r] = order
    return out.tolist()
