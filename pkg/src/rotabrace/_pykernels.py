"""Pure-Python search kernels.

Every function here has a twin with the same signature in ``_ckernels.pyx``.
Tables arrive as 2-D integer numpy arrays and are converted to nested lists,
which are much faster than numpy scalar indexing inside tight loops.
"""

import sys

sys.setrecursionlimit(max(sys.getrecursionlimit(), 10000))


def _rows(table):
    return [list(map(int, row)) for row in table]


def _vec(arr):
    return list(map(int, arr))


def associativity_witness(table):
    t = _rows(table)
    n = len(t)
    for a in range(n):
        ta = t[a]
        for b in range(n):
            ab = ta[b]
            tab = t[ab]
            tb = t[b]
            for c in range(n):
                if tab[c] != ta[tb[c]]:
                    return (a, b, c)
    return None


def rb_witness(add, neg, idem, images):
    """First violation of the two Rota-Baxter identities.

    Returns ``(2, a, -1)`` when ``a + R(a)^0 != a``, ``(1, a, b)`` when the
    product identity fails on the pair, or ``None``.
    """
    t = _rows(add)
    ng = _vec(neg)
    e = _vec(idem)
    R = _vec(images)
    n = len(t)
    for a in range(n):
        if t[a][e[R[a]]] != a:
            return (2, a, -1)
    for a in range(n):
        ra = R[a]
        left = t[t[a][ra]]
        nra = ng[ra]
        row = t[ra]
        for b in range(n):
            if R[t[left[b]][nra]] != row[R[b]]:
                return (1, a, b)
    return None


def enumerate_rb(add, neg, idem, seq, cands, first=-1):
    """All Rota-Baxter operators, by backtracking with forced-value propagation.

    ``seq`` is the branching order (idempotents first).  ``cands[a]`` lists the
    static candidates for ``R(a)``.  ``first`` restricts the image of
    ``seq[0]`` so callers can split the search tree across workers.
    """
    t = _rows(add)
    ng = _vec(neg)
    e = _vec(idem)
    seq = _vec(seq)
    cands = [_vec(c) for c in cands]
    n = len(t)
    is_idem = [e[a] == a for a in range(n)]
    R = [-1] * n
    trail = []
    out = []

    def allowed(z, v):
        if t[z][e[v]] != z:
            return False
        if is_idem[z] and not is_idem[v]:
            return False
        rz0 = R[e[z]]
        if rz0 != -1 and e[v] != rz0:
            return False
        return True

    def assign(a, c):
        R[a] = c
        trail.append(a)
        queue = [a]
        while queue:
            x = queue.pop()
            i = 0
            while i < len(trail):
                y = trail[i]
                i += 1
                for p, q in ((x, y), (y, x)):
                    rp = R[p]
                    z = t[t[t[p][rp]][q]][ng[rp]]
                    v = t[rp][R[q]]
                    rz = R[z]
                    if rz == -1:
                        if not allowed(z, v):
                            return False
                        R[z] = v
                        trail.append(z)
                        queue.append(z)
                    elif rz != v:
                        return False
        return True

    def undo(mark):
        while len(trail) > mark:
            R[trail.pop()] = -1

    def dfs(d):
        while d < n and R[seq[d]] != -1:
            d += 1
        if d == n:
            out.append(tuple(R))
            return
        a = seq[d]
        for c in cands[a]:
            if d == 0 and first != -1 and c != first:
                continue
            if not allowed(a, c):
                continue
            mark = len(trail)
            if assign(a, c):
                dfs(d + 1)
            undo(mark)

    dfs(0)
    return out


def enumerate_homs(src, dst, src_idem, dst_idem, bijective, first=-1):
    """All maps f with f(a*b) = f(a)*f(b); idempotents go to idempotents."""
    s = _rows(src)
    d_ = _rows(dst)
    n = len(s)
    m = len(d_)
    s_is_idem = [int(x) == a for a, x in enumerate(src_idem)]
    d_is_idem = [int(x) == a for a, x in enumerate(dst_idem)]
    if bijective and n != m:
        return []
    f = [-1] * n
    used = [0] * m
    trail = []
    out = []

    def allowed(z, v):
        if bijective and used[v]:
            return False
        if s_is_idem[z] and not d_is_idem[v]:
            return False
        return True

    def put(z, v):
        f[z] = v
        used[v] += 1
        trail.append(z)

    def assign(a, c):
        put(a, c)
        queue = [a]
        while queue:
            x = queue.pop()
            i = 0
            while i < len(trail):
                y = trail[i]
                i += 1
                for p, q in ((x, y), (y, x)):
                    z = s[p][q]
                    v = d_[f[p]][f[q]]
                    fz = f[z]
                    if fz == -1:
                        if not allowed(z, v):
                            return False
                        put(z, v)
                        queue.append(z)
                    elif fz != v:
                        return False
        return True

    def undo(mark):
        while len(trail) > mark:
            z = trail.pop()
            used[f[z]] -= 1
            f[z] = -1

    def dfs(a):
        while a < n and f[a] != -1:
            a += 1
        if a == n:
            out.append(tuple(f))
            return
        for c in range(m):
            if a == 0 and first != -1 and c != first:
                continue
            if not allowed(a, c):
                continue
            mark = len(trail)
            if assign(a, c):
                dfs(a + 1)
            undo(mark)

    dfs(0)
    return out


def braid_witness(first, second):
    """Check the braid relation for r(x, y) = (first[x][y], second[x][y]).

    Returns the first triple on which the two composites differ, else None.
    """
    L = _rows(first)
    P = _rows(second)
    n = len(L)
    for x in range(n):
        for y in range(n):
            # (r x id): (x, y, z) -> (u, w, z)
            u = L[x][y]
            w = P[x][y]
            for z in range(n):
                # left side: (r x id)(id x r)(r x id)
                w2 = L[w][z]
                z2 = P[w][z]
                a1 = L[u][w2]
                a2 = P[u][w2]
                # right side: (id x r)(r x id)(id x r)
                y1 = L[y][z]
                z1 = P[y][z]
                b1 = L[x][y1]
                m1 = P[x][y1]
                b2 = L[m1][z1]
                b3 = P[m1][z1]
                if a1 != b1 or a2 != b2 or z2 != b3:
                    return (x, y, z)
    return None


def find_conjugating_bijection(r1, r2, s1, s2, cands):
    """Search a bijection f with (f x f) r = s (f x f).

    ``r1, r2`` and ``s1, s2`` are the component tables of the two maps;
    ``cands[a]`` restricts the admissible images of ``a``.
    """
    R1 = _rows(r1)
    R2 = _rows(r2)
    S1 = _rows(s1)
    S2 = _rows(s2)
    cands = [_vec(c) for c in cands]
    n = len(R1)
    allowed_sets = [set(c) for c in cands]
    f = [-1] * n
    used = [False] * n
    trail = []

    def put(z, v):
        f[z] = v
        used[v] = True
        trail.append(z)

    def force(z, v, queue):
        fz = f[z]
        if fz == -1:
            if used[v] or v not in allowed_sets[z]:
                return False
            put(z, v)
            queue.append(z)
            return True
        return fz == v

    def assign(a, c):
        put(a, c)
        queue = [a]
        while queue:
            x = queue.pop()
            i = 0
            while i < len(trail):
                y = trail[i]
                i += 1
                for p, q in ((x, y), (y, x)):
                    fp = f[p]
                    fq = f[q]
                    if not force(R1[p][q], S1[fp][fq], queue):
                        return False
                    if not force(R2[p][q], S2[fp][fq], queue):
                        return False
        return True

    def undo(mark):
        while len(trail) > mark:
            z = trail.pop()
            used[f[z]] = False
            f[z] = -1

    def dfs(a):
        while a < n and f[a] != -1:
            a += 1
        if a == n:
            return True
        for c in cands[a]:
            if used[c]:
                continue
            mark = len(trail)
            if assign(a, c) and dfs(a + 1):
                return True
            undo(mark)
        return False

    if dfs(0):
        return tuple(f)
    return None
