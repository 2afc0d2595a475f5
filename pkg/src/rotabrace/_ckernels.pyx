# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled search kernels; same signatures and results as ``_pykernels``."""

import numpy as np
cimport numpy as cnp

ctypedef cnp.int64_t idx_t


cdef inline cnp.ndarray _table(x):
    # private writable copy; callers may hand in read-only arrays
    return np.array(x, dtype=np.int64, order="C", copy=True)


def associativity_witness(table):
    cdef idx_t[:, ::1] t = _table(table)
    cdef Py_ssize_t n = t.shape[0], a, b, c
    cdef idx_t ab
    for a in range(n):
        for b in range(n):
            ab = t[a, b]
            for c in range(n):
                if t[ab, c] != t[a, t[b, c]]:
                    return (a, b, c)
    return None


def rb_witness(add, neg, idem, images):
    cdef idx_t[:, ::1] t = _table(add)
    cdef idx_t[::1] ng = _table(neg)
    cdef idx_t[::1] e = _table(idem)
    cdef idx_t[::1] R = _table(images)
    cdef Py_ssize_t n = t.shape[0], a, b
    cdef idx_t ra, left, nra
    for a in range(n):
        if t[a, e[R[a]]] != a:
            return (2, a, -1)
    for a in range(n):
        ra = R[a]
        left = t[a, ra]
        nra = ng[ra]
        for b in range(n):
            if R[t[t[left, b], nra]] != t[ra, R[b]]:
                return (1, a, b)
    return None


cdef class _RBSearch:
    cdef idx_t[:, ::1] t
    cdef idx_t[::1] ng, e, seq, R, trail, queue
    cdef idx_t[:, ::1] cands
    cdef idx_t[::1] ncands
    cdef Py_ssize_t n, ntrail
    cdef idx_t first
    cdef list out

    def __init__(self, add, neg, idem, seq, cands, first):
        self.t = _table(add)
        self.ng = _table(neg)
        self.e = _table(idem)
        self.seq = _table(seq)
        self.n = self.t.shape[0]
        cdef Py_ssize_t n = self.n, i, j
        padded = np.full((n, max(n, 1)), -1, dtype=np.int64)
        counts = np.zeros(n, dtype=np.int64)
        for i in range(n):
            for j, c in enumerate(cands[i]):
                padded[i, j] = c
            counts[i] = len(cands[i])
        self.cands = padded
        self.ncands = counts
        self.R = np.full(n, -1, dtype=np.int64)
        self.trail = np.zeros(n, dtype=np.int64)
        self.queue = np.zeros(n, dtype=np.int64)
        self.ntrail = 0
        self.first = first
        self.out = []

    cdef inline bint allowed(self, idx_t z, idx_t v):
        cdef idx_t rz0
        if self.t[z, self.e[v]] != z:
            return False
        if self.e[z] == z and self.e[v] != v:
            return False
        rz0 = self.R[self.e[z]]
        if rz0 != -1 and self.e[v] != rz0:
            return False
        return True

    cdef bint assign(self, idx_t a, idx_t c):
        cdef Py_ssize_t nq = 0, i, k
        cdef idx_t x, y, p, q, rp, z, v, rz
        self.R[a] = c
        self.trail[self.ntrail] = a
        self.ntrail += 1
        self.queue[nq] = a
        nq += 1
        while nq > 0:
            nq -= 1
            x = self.queue[nq]
            i = 0
            while i < self.ntrail:
                y = self.trail[i]
                i += 1
                for k in range(2):
                    if k == 0:
                        p = x
                        q = y
                    else:
                        p = y
                        q = x
                    rp = self.R[p]
                    z = self.t[self.t[self.t[p, rp], q], self.ng[rp]]
                    v = self.t[rp, self.R[q]]
                    rz = self.R[z]
                    if rz == -1:
                        if not self.allowed(z, v):
                            return False
                        self.R[z] = v
                        self.trail[self.ntrail] = z
                        self.ntrail += 1
                        self.queue[nq] = z
                        nq += 1
                    elif rz != v:
                        return False
        return True

    cdef inline void undo(self, Py_ssize_t mark):
        while self.ntrail > mark:
            self.ntrail -= 1
            self.R[self.trail[self.ntrail]] = -1

    cdef void dfs(self, Py_ssize_t d):
        cdef Py_ssize_t j, mark
        cdef idx_t a, c
        while d < self.n and self.R[self.seq[d]] != -1:
            d += 1
        if d == self.n:
            self.out.append(tuple(np.asarray(self.R).tolist()))
            return
        a = self.seq[d]
        for j in range(self.ncands[a]):
            c = self.cands[a, j]
            if d == 0 and self.first != -1 and c != self.first:
                continue
            if not self.allowed(a, c):
                continue
            mark = self.ntrail
            if self.assign(a, c):
                self.dfs(d + 1)
            self.undo(mark)


def enumerate_rb(add, neg, idem, seq, cands, first=-1):
    search = _RBSearch(add, neg, idem, seq, cands, first)
    if search.n:
        search.dfs(0)
    return search.out


cdef class _HomSearch:
    cdef idx_t[:, ::1] s, d
    cdef idx_t[::1] s_idem, d_idem, f, used, trail, queue
    cdef Py_ssize_t n, m, ntrail
    cdef bint bijective
    cdef idx_t first
    cdef list out

    def __init__(self, src, dst, src_idem, dst_idem, bijective, first):
        self.s = _table(src)
        self.d = _table(dst)
        self.s_idem = _table(src_idem)
        self.d_idem = _table(dst_idem)
        self.n = self.s.shape[0]
        self.m = self.d.shape[0]
        self.bijective = bijective
        self.first = first
        self.f = np.full(self.n, -1, dtype=np.int64)
        self.used = np.zeros(max(self.m, 1), dtype=np.int64)
        self.trail = np.zeros(self.n, dtype=np.int64)
        self.queue = np.zeros(self.n, dtype=np.int64)
        self.ntrail = 0
        self.out = []

    cdef inline bint allowed(self, idx_t z, idx_t v):
        if self.bijective and self.used[v]:
            return False
        if self.s_idem[z] == z and self.d_idem[v] != v:
            return False
        return True

    cdef inline void put(self, idx_t z, idx_t v):
        self.f[z] = v
        self.used[v] += 1
        self.trail[self.ntrail] = z
        self.ntrail += 1

    cdef bint assign(self, idx_t a, idx_t c):
        cdef Py_ssize_t nq = 0, i, k
        cdef idx_t x, y, p, q, z, v, fz
        self.put(a, c)
        self.queue[nq] = a
        nq += 1
        while nq > 0:
            nq -= 1
            x = self.queue[nq]
            i = 0
            while i < self.ntrail:
                y = self.trail[i]
                i += 1
                for k in range(2):
                    if k == 0:
                        p = x
                        q = y
                    else:
                        p = y
                        q = x
                    z = self.s[p, q]
                    v = self.d[self.f[p], self.f[q]]
                    fz = self.f[z]
                    if fz == -1:
                        if not self.allowed(z, v):
                            return False
                        self.put(z, v)
                        self.queue[nq] = z
                        nq += 1
                    elif fz != v:
                        return False
        return True

    cdef inline void undo(self, Py_ssize_t mark):
        cdef idx_t z
        while self.ntrail > mark:
            self.ntrail -= 1
            z = self.trail[self.ntrail]
            self.used[self.f[z]] -= 1
            self.f[z] = -1

    cdef void dfs(self, Py_ssize_t a):
        cdef Py_ssize_t mark
        cdef idx_t c
        while a < self.n and self.f[a] != -1:
            a += 1
        if a == self.n:
            self.out.append(tuple(np.asarray(self.f).tolist()))
            return
        for c in range(self.m):
            if a == 0 and self.first != -1 and c != self.first:
                continue
            if not self.allowed(a, c):
                continue
            mark = self.ntrail
            if self.assign(a, c):
                self.dfs(a + 1)
            self.undo(mark)


def enumerate_homs(src, dst, src_idem, dst_idem, bijective, first=-1):
    if bijective and len(src) != len(dst):
        return []
    search = _HomSearch(src, dst, src_idem, dst_idem, bijective, first)
    if search.n:
        search.dfs(0)
    return search.out


def braid_witness(first, second):
    cdef idx_t[:, ::1] L = _table(first)
    cdef idx_t[:, ::1] P = _table(second)
    cdef Py_ssize_t n = L.shape[0], x, y, z
    cdef idx_t u, w, w2, z2, a1, a2, y1, z1, b1, m1, b2, b3
    for x in range(n):
        for y in range(n):
            u = L[x, y]
            w = P[x, y]
            for z in range(n):
                w2 = L[w, z]
                z2 = P[w, z]
                a1 = L[u, w2]
                a2 = P[u, w2]
                y1 = L[y, z]
                z1 = P[y, z]
                b1 = L[x, y1]
                m1 = P[x, y1]
                b2 = L[m1, z1]
                b3 = P[m1, z1]
                if a1 != b1 or a2 != b2 or z2 != b3:
                    return (x, y, z)
    return None


cdef class _ConjSearch:
    cdef idx_t[:, ::1] R1, R2, S1, S2, ok
    cdef idx_t[:, ::1] cands
    cdef idx_t[::1] ncands, f, used, trail, queue
    cdef Py_ssize_t n, ntrail, nq

    def __init__(self, r1, r2, s1, s2, cands):
        self.R1 = _table(r1)
        self.R2 = _table(r2)
        self.S1 = _table(s1)
        self.S2 = _table(s2)
        self.n = self.R1.shape[0]
        cdef Py_ssize_t n = self.n, i, j
        padded = np.full((n, max(n, 1)), -1, dtype=np.int64)
        ok = np.zeros((n, max(n, 1)), dtype=np.int64)
        counts = np.zeros(n, dtype=np.int64)
        for i in range(n):
            for j, c in enumerate(cands[i]):
                padded[i, j] = c
                ok[i, c] = 1
            counts[i] = len(cands[i])
        self.cands = padded
        self.ok = ok
        self.ncands = counts
        self.f = np.full(n, -1, dtype=np.int64)
        self.used = np.zeros(max(n, 1), dtype=np.int64)
        self.trail = np.zeros(n, dtype=np.int64)
        self.queue = np.zeros(n, dtype=np.int64)
        self.ntrail = 0
        self.nq = 0

    cdef inline void put(self, idx_t z, idx_t v):
        self.f[z] = v
        self.used[v] = 1
        self.trail[self.ntrail] = z
        self.ntrail += 1

    cdef inline bint force(self, idx_t z, idx_t v):
        cdef idx_t fz = self.f[z]
        if fz == -1:
            if self.used[v] or not self.ok[z, v]:
                return False
            self.put(z, v)
            self.queue[self.nq] = z
            self.nq += 1
            return True
        return fz == v

    cdef bint assign(self, idx_t a, idx_t c):
        cdef Py_ssize_t i, k
        cdef idx_t x, y, p, q, fp, fq
        self.nq = 0
        self.put(a, c)
        self.queue[self.nq] = a
        self.nq += 1
        while self.nq > 0:
            self.nq -= 1
            x = self.queue[self.nq]
            i = 0
            while i < self.ntrail:
                y = self.trail[i]
                i += 1
                for k in range(2):
                    if k == 0:
                        p = x
                        q = y
                    else:
                        p = y
                        q = x
                    fp = self.f[p]
                    fq = self.f[q]
                    if not self.force(self.R1[p, q], self.S1[fp, fq]):
                        return False
                    if not self.force(self.R2[p, q], self.S2[fp, fq]):
                        return False
        return True

    cdef inline void undo(self, Py_ssize_t mark):
        cdef idx_t z
        while self.ntrail > mark:
            self.ntrail -= 1
            z = self.trail[self.ntrail]
            self.used[self.f[z]] = 0
            self.f[z] = -1

    cdef bint dfs(self, Py_ssize_t a):
        cdef Py_ssize_t j, mark
        cdef idx_t c
        while a < self.n and self.f[a] != -1:
            a += 1
        if a == self.n:
            return True
        for j in range(self.ncands[a]):
            c = self.cands[a, j]
            if self.used[c]:
                continue
            mark = self.ntrail
            if self.assign(a, c) and self.dfs(a + 1):
                return True
            self.undo(mark)
        return False


def find_conjugating_bijection(r1, r2, s1, s2, cands):
    search = _ConjSearch(r1, r2, s1, s2, cands)
    if search.dfs(0):
        return tuple(np.asarray(search.f).tolist())
    return None
