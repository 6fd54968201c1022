# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
# distutils: language = c++
"""Compiled synchronisation-product exploration (see ``_explore_py``)."""

from cython.operator cimport dereference as deref
from libc.stdint cimport int64_t, uint64_t
from libcpp.unordered_map cimport unordered_map
from libcpp.unordered_set cimport unordered_set
from libcpp.vector cimport vector

import numpy as np


def explore(const int64_t[::1] off, const int64_t[::1] ol, const int64_t[::1] od,
            const int64_t[::1] base, int k, const int64_t[::1] init,
            const int64_t[::1] vglab, const int64_t[::1] voff, const int64_t[::1] cchild,
            const int64_t[::1] clab, const int64_t[::1] poff, const int64_t[::1] pvec,
            const int64_t[::1] pbase, const uint64_t[::1] radix, int64_t cap):
    cdef vector[int64_t] states
    cdef unordered_map[uint64_t, int64_t] index
    cdef unordered_set[uint64_t] emitted
    cdef vector[int64_t] tsrc, tlab, tdst
    cdef vector[int64_t] nxt = vector[int64_t](k)
    cdef vector[int64_t] lo_v, hi_v, pos_v
    cdef int64_t i = 0, n = 1, c, b, j, hi, l, pb, vi, v, cell, c2, l2, b2, x, y, ncell, g, nid, m
    cdef uint64_t key
    cdef bint ok
    cdef unordered_map[uint64_t, int64_t].iterator it

    key = 0
    for c in range(k):
        states.push_back(init[c])
        key += <uint64_t>init[c] * radix[c]
    index[key] = 0

    while i < n:
        emitted.clear()
        for c in range(k):
            b = base[c] + states[i * k + c]
            j = off[b]
            hi = off[b + 1]
            while j < hi:
                l = ol[j]
                pb = pbase[c] + l
                for vi in range(poff[pb], poff[pb + 1]):
                    v = pvec[vi]
                    ncell = voff[v + 1] - voff[v]
                    lo_v.resize(ncell)
                    hi_v.resize(ncell)
                    pos_v.resize(ncell)
                    ok = True
                    for m in range(ncell):
                        cell = voff[v] + m
                        c2 = cchild[cell]
                        l2 = clab[cell]
                        b2 = base[c2] + states[i * k + c2]
                        x = off[b2]
                        y = off[b2 + 1]
                        while x < y and ol[x] != l2:
                            x += 1
                        if x == y:
                            ok = False
                            break
                        lo_v[m] = x
                        while x < y and ol[x] == l2:
                            x += 1
                        hi_v[m] = x
                        pos_v[m] = lo_v[m]
                    if not ok:
                        continue
                    g = vglab[v]
                    while True:
                        key = 0
                        for c2 in range(k):
                            nxt[c2] = states[i * k + c2]
                        for m in range(ncell):
                            nxt[cchild[voff[v] + m]] = od[pos_v[m]]
                        for c2 in range(k):
                            key += <uint64_t>nxt[c2] * radix[c2]
                        it = index.find(key)
                        if it == index.end():
                            if n >= cap:
                                return None
                            nid = n
                            index[key] = nid
                            for c2 in range(k):
                                states.push_back(nxt[c2])
                            n += 1
                        else:
                            nid = deref(it).second
                        key = <uint64_t>g * <uint64_t>(cap + 1) + <uint64_t>nid
                        if emitted.find(key) == emitted.end():
                            emitted.insert(key)
                            tsrc.push_back(i)
                            tlab.push_back(g)
                            tdst.push_back(nid)
                        # odometer, last cell fastest (matches itertools.product)
                        m = ncell - 1
                        while m >= 0:
                            pos_v[m] += 1
                            if pos_v[m] < hi_v[m]:
                                break
                            pos_v[m] = lo_v[m]
                            m -= 1
                        if m < 0:
                            break
                while j < hi and ol[j] == l:
                    j += 1
        i += 1

    st = np.empty(n * k, dtype=np.int64)
    cdef int64_t[::1] stv = st
    for x in range(n * k):
        stv[x] = states[x]
    m = tsrc.size()
    a = np.empty(m, dtype=np.int64)
    bb = np.empty(m, dtype=np.int64)
    cc = np.empty(m, dtype=np.int64)
    cdef int64_t[::1] av = a, bv = bb, cv = cc
    for x in range(m):
        av[x] = tsrc[x]
        bv[x] = tlab[x]
        cv[x] = tdst[x]
    return st.reshape(n, k), a, bb, cc
