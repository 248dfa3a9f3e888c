# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled grove enumeration; same contract as _kernels_py."""

from libc.stdlib cimport malloc, free


cdef inline int _find(int* parent, int x) nogil:
    while parent[x] != x:
        x = parent[x]
    return x


cdef void _walk(int k, int m, int nv, int n, int* eu, int* ev, int* parent,
                unsigned long long mask, list hits):
    cdef int a, b, w
    if k == m:
        for w in range(n, nv):
            if _find(parent, w) >= n:
                return
        hits.append(mask)
        return
    _walk(k + 1, m, nv, n, eu, ev, parent, mask, hits)
    a = _find(parent, eu[k])
    b = _find(parent, ev[k])
    if a == b:
        return
    if a > b:
        a, b = b, a
    parent[b] = a
    _walk(k + 1, m, nv, n, eu, ev, parent, mask | (1ULL << k), hits)
    parent[b] = b


def enumerate_groves(int nv, int n, eu, ev):
    cdef int m = len(eu)
    cdef int i, r
    if m > 62:
        raise ValueError("too many edges for a 64-bit mask")
    cdef int* ceu = <int*>malloc(max(m, 1) * sizeof(int))
    cdef int* cev = <int*>malloc(max(m, 1) * sizeof(int))
    cdef int* parent = <int*>malloc(max(nv, 1) * sizeof(int))
    cdef list hits = []
    try:
        for i in range(m):
            ceu[i] = eu[i]
            cev[i] = ev[i]
        for i in range(nv):
            parent[i] = i
        _walk(0, m, nv, n, ceu, cev, parent, 0, hits)
    finally:
        free(ceu)
        free(cev)
    out = {}
    cdef unsigned long long mask
    try:
        for mask in hits:
            for i in range(nv):
                parent[i] = i
            for i in range(m):
                if mask >> i & 1:
                    a = _find(parent, eu[i])
                    b = _find(parent, ev[i])
                    if a > b:
                        a, b = b, a
                    parent[b] = a
            seen = {}
            key = []
            for i in range(n):
                r = _find(parent, i)
                if r not in seen:
                    seen[r] = len(seen)
                key.append(seen[r])
            out.setdefault(tuple(key), []).append(mask)
    finally:
        free(parent)
    return out


cdef void _walk_keys(int k, int m, int nv, int n, int* eu, int* ev, int* parent,
                     int* lab, set out):
    cdef int a, b, w, i, r, j, nxt
    if k == m:
        for w in range(n, nv):
            if _find(parent, w) >= n:
                return
        # roots are minimal so first occurrences come in node order
        nxt = 0
        for i in range(n):
            r = _find(parent, i)
            if r == i:
                lab[i] = nxt
                nxt += 1
            else:
                lab[i] = lab[r]
        out.add(tuple([lab[i] for i in range(n)]))
        return
    _walk_keys(k + 1, m, nv, n, eu, ev, parent, lab, out)
    a = _find(parent, eu[k])
    b = _find(parent, ev[k])
    if a == b:
        return
    if a > b:
        a, b = b, a
    parent[b] = a
    _walk_keys(k + 1, m, nv, n, eu, ev, parent, lab, out)
    parent[b] = b


def grove_partitions(int nv, int n, eu, ev):
    cdef int m = len(eu)
    cdef int i
    cdef int* ceu = <int*>malloc(max(m, 1) * sizeof(int))
    cdef int* cev = <int*>malloc(max(m, 1) * sizeof(int))
    cdef int* parent = <int*>malloc(max(nv, 1) * sizeof(int))
    cdef int* lab = <int*>malloc(max(n, 1) * sizeof(int))
    cdef set out = set()
    try:
        for i in range(m):
            ceu[i] = eu[i]
            cev[i] = ev[i]
        for i in range(nv):
            parent[i] = i
        _walk_keys(0, m, nv, n, ceu, cev, parent, lab, out)
    finally:
        free(ceu)
        free(cev)
        free(parent)
        free(lab)
    return out
