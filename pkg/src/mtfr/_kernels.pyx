# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels. Mirrors ``_kernels_py`` exactly (signatures and results)."""

import time

from libc.stdlib cimport malloc, free, calloc, realloc
from libc.string cimport memcpy, memset


cdef int _peel(int n, int m, const int[:] arc_src, const int[:] arc_dst,
               const int[:] out_ptr, const int[:] out_arc,
               unsigned char* alive, const unsigned char* arc_alive,
               int* cnt, int* stack) noexcept nogil:
    """Peel ``alive`` in place to the survivor set; returns number of survivors."""
    cdef int a, v, w, k, top = 0, left = 0
    for v in range(n):
        cnt[v] = 0
    for a in range(m):
        if arc_alive[a] and alive[arc_src[a]] and alive[arc_dst[a]]:
            cnt[arc_dst[a]] += 1
    for v in range(n):
        if alive[v]:
            if cnt[v] == 0:
                alive[v] = 0
                stack[top] = v
                top += 1
            else:
                left += 1
    while top > 0:
        top -= 1
        v = stack[top]
        for k in range(out_ptr[v], out_ptr[v + 1]):
            a = out_arc[k]
            if not arc_alive[a]:
                continue
            w = arc_dst[a]
            if alive[w]:
                cnt[w] -= 1
                if cnt[w] == 0:
                    alive[w] = 0
                    left -= 1
                    stack[top] = w
                    top += 1
    return left


def survivors(int n, const int[:] arc_src, const int[:] arc_dst,
              const int[:] out_ptr, const int[:] out_arc,
              node_alive, arc_alive):
    cdef int m = arc_src.shape[0]
    cdef bytearray alive = bytearray(node_alive)
    cdef bytes arcs = bytes(arc_alive)
    cdef int* cnt = <int*>malloc((n + 1) * sizeof(int))
    cdef int* stack = <int*>malloc((n + 1) * sizeof(int))
    cdef unsigned char* ap = alive
    cdef const unsigned char* arp = arcs
    try:
        _peel(n, m, arc_src, arc_dst, out_ptr, out_arc, ap, arp, cnt, stack)
    finally:
        free(cnt)
        free(stack)
    return alive


cdef bint _next_combo(int* idx, int k, int n) noexcept nogil:
    cdef int i = k - 1
    while i >= 0 and idx[i] == n - k + i:
        i -= 1
    if i < 0:
        return False
    idx[i] += 1
    i += 1
    while i < k:
        idx[i] = idx[i - 1] + 1
        i += 1
    return True


def brute_force_nodes(int n, const int[:] arc_src, const int[:] arc_dst,
                      const int[:] out_ptr, const int[:] out_arc, int max_k):
    cdef int m = arc_src.shape[0]
    cdef int k, i
    cdef bint more
    cdef int* idx = <int*>malloc((n + 1) * sizeof(int))
    cdef int* cnt = <int*>malloc((n + 1) * sizeof(int))
    cdef int* stack = <int*>malloc((n + 1) * sizeof(int))
    cdef unsigned char* alive = <unsigned char*>malloc(n + 1)
    cdef unsigned char* arcs = <unsigned char*>malloc(m + 1)
    memset(arcs, 1, m + 1)
    try:
        for k in range(0, min(max_k, n) + 1):
            for i in range(k):
                idx[i] = i
            more = True
            while more:
                memset(alive, 1, n + 1)
                for i in range(k):
                    alive[idx[i]] = 0
                if _peel(n, m, arc_src, arc_dst, out_ptr, out_arc, alive, arcs, cnt, stack) == 0:
                    return [idx[i] for i in range(k)]
                more = k > 0 and _next_combo(idx, k, n)
        return None
    finally:
        free(idx)
        free(cnt)
        free(stack)
        free(alive)
        free(arcs)


def brute_force_groups(int n, const int[:] arc_src, const int[:] arc_dst,
                       const int[:] out_ptr, const int[:] out_arc,
                       const int[:] group_ptr, const int[:] group_arc, int max_k):
    cdef int m = arc_src.shape[0]
    cdef int g = group_ptr.shape[0] - 1
    cdef int k, i, j
    cdef bint more
    cdef int* idx = <int*>malloc((g + 1) * sizeof(int))
    cdef int* cnt = <int*>malloc((n + 1) * sizeof(int))
    cdef int* stack = <int*>malloc((n + 1) * sizeof(int))
    cdef unsigned char* alive = <unsigned char*>malloc(n + 1)
    cdef unsigned char* arcs = <unsigned char*>malloc(m + 1)
    try:
        for k in range(0, min(max_k, g) + 1):
            for i in range(k):
                idx[i] = i
            more = True
            while more:
                memset(alive, 1, n + 1)
                memset(arcs, 1, m + 1)
                for i in range(k):
                    for j in range(group_ptr[idx[i]], group_ptr[idx[i] + 1]):
                        arcs[group_arc[j]] = 0
                if _peel(n, m, arc_src, arc_dst, out_ptr, out_arc, alive, arcs, cnt, stack) == 0:
                    return [idx[i] for i in range(k)]
                more = k > 0 and _next_combo(idx, k, g)
        return None
    finally:
        free(idx)
        free(cnt)
        free(stack)
        free(alive)
        free(arcs)


cdef class _HittingSearch:
    cdef int n, m
    cdef const int[:] set_ptr
    cdef const int[:] set_elem
    cdef int* elem_ptr
    cdef int* elem_set
    cdef int* cover
    cdef int* avail
    cdef int* excl
    cdef int* chosen
    cdef int* excluded
    cdef unsigned char* used
    cdef int depth_top
    cdef public int best_size
    cdef public list best
    cdef public long long nodes
    cdef long long node_budget
    cdef double deadline
    cdef public bint aborted

    def __cinit__(self, int n, const int[:] set_ptr, const int[:] set_elem,
                  int bound, long long node_budget, double deadline):
        cdef int i, j, e
        self.n = n
        self.m = set_ptr.shape[0] - 1
        self.set_ptr = set_ptr
        self.set_elem = set_elem
        self.elem_ptr = <int*>calloc(n + 2, sizeof(int))
        self.elem_set = <int*>malloc((set_elem.shape[0] + 1) * sizeof(int))
        self.cover = <int*>calloc(self.m + 1, sizeof(int))
        self.avail = <int*>calloc(self.m + 1, sizeof(int))
        self.excl = <int*>calloc(n + 1, sizeof(int))
        self.chosen = <int*>calloc(n + 1, sizeof(int))
        self.excluded = <int*>calloc(set_elem.shape[0] + n + 1, sizeof(int))
        self.used = <unsigned char*>calloc(n + 1, 1)
        for i in range(self.m):
            self.avail[i] = set_ptr[i + 1] - set_ptr[i]
            for j in range(set_ptr[i], set_ptr[i + 1]):
                self.elem_ptr[set_elem[j] + 1] += 1
        for e in range(n):
            self.elem_ptr[e + 1] += self.elem_ptr[e]
        cdef int* fill = <int*>calloc(n + 1, sizeof(int))
        for i in range(self.m):
            for j in range(set_ptr[i], set_ptr[i + 1]):
                e = set_elem[j]
                self.elem_set[self.elem_ptr[e] + fill[e]] = i
                fill[e] += 1
        free(fill)
        self.depth_top = 0
        self.best_size = bound
        self.best = None
        self.nodes = 0
        self.node_budget = node_budget
        self.deadline = deadline
        self.aborted = False

    def __dealloc__(self):
        free(self.elem_ptr)
        free(self.elem_set)
        free(self.cover)
        free(self.avail)
        free(self.excl)
        free(self.chosen)
        free(self.excluded)
        free(self.used)

    cdef int _lower_bound(self):
        cdef int i, j, e, lb = 0
        cdef bint clash
        memset(self.used, 0, self.n + 1)
        for i in range(self.m):
            if self.cover[i]:
                continue
            clash = False
            for j in range(self.set_ptr[i], self.set_ptr[i + 1]):
                e = self.set_elem[j]
                if not self.excl[e] and self.used[e]:
                    clash = True
                    break
            if not clash:
                for j in range(self.set_ptr[i], self.set_ptr[i + 1]):
                    e = self.set_elem[j]
                    if not self.excl[e]:
                        self.used[e] = 1
                lb += 1
        return lb

    cdef void run(self, int depth):
        cdef int i, j, e, branch = -1, base, nex
        self.nodes += 1
        if self.nodes > self.node_budget or (
            (self.nodes & 1023) == 0 and time.monotonic() > self.deadline
        ):
            self.aborted = True
            return
        for i in range(self.m):
            if not self.cover[i] and (branch < 0 or self.avail[i] < self.avail[branch]):
                branch = i
        if branch < 0:
            if depth < self.best_size:
                self.best_size = depth
                self.best = sorted([self.chosen[i] for i in range(depth)])
            return
        if self.avail[branch] == 0:
            return
        if depth + self._lower_bound() >= self.best_size:
            return
        base = self.depth_top
        nex = 0
        for j in range(self.set_ptr[branch], self.set_ptr[branch + 1]):
            e = self.set_elem[j]
            if self.excl[e]:
                continue
            for i in range(self.elem_ptr[e], self.elem_ptr[e + 1]):
                self.cover[self.elem_set[i]] += 1
            self.chosen[depth] = e
            self.run(depth + 1)
            for i in range(self.elem_ptr[e], self.elem_ptr[e + 1]):
                self.cover[self.elem_set[i]] -= 1
            if self.aborted:
                break
            self.excl[e] += 1
            for i in range(self.elem_ptr[e], self.elem_ptr[e + 1]):
                self.avail[self.elem_set[i]] -= 1
            self.excluded[base + nex] = e
            nex += 1
            self.depth_top = base + nex
        for j in range(nex):
            e = self.excluded[base + j]
            self.excl[e] -= 1
            for i in range(self.elem_ptr[e], self.elem_ptr[e + 1]):
                self.avail[self.elem_set[i]] += 1
        self.depth_top = base

    def start(self):
        self.run(0)


def min_hitting_set(int n, const int[:] set_ptr, const int[:] set_elem,
                    int bound, long long node_budget, double deadline):
    cdef _HittingSearch search = _HittingSearch(n, set_ptr, set_elem, bound, node_budget, deadline)
    search.start()
    return search.best, search.nodes, not search.aborted


from libc.stdint cimport uint64_t


cdef struct _Table:
    unsigned long long cap
    unsigned long long size
    unsigned long long* keys
    uint64_t* vals


cdef inline unsigned long long _slot(_Table* t, unsigned long long key) noexcept nogil:
    """Slot holding ``key`` or the empty slot where it belongs (keys are stored +1)."""
    cdef unsigned long long h = (key * 0x9E3779B97F4A7C15ULL) & (t.cap - 1)
    while t.keys[h] != 0 and t.keys[h] != key + 1:
        h = (h + 1) & (t.cap - 1)
    return h


cdef int _table_init(_Table* t, unsigned long long cap) noexcept nogil:
    t.cap = cap
    t.size = 0
    t.keys = <unsigned long long*>calloc(cap, sizeof(unsigned long long))
    t.vals = <uint64_t*>malloc(cap * sizeof(uint64_t))
    return 0 if t.keys != NULL and t.vals != NULL else -1


cdef int _table_add(_Table* t, unsigned long long key, uint64_t c, bint* fresh) noexcept nogil:
    """Add ``c`` to the value of ``key``; sets ``fresh`` when the key is new."""
    cdef _Table old
    cdef unsigned long long i, h
    if 2 * (t.size + 1) > t.cap:
        old = t[0]
        if _table_init(t, old.cap * 2) != 0:
            free(old.keys)
            free(old.vals)
            return -1
        for i in range(old.cap):
            if old.keys[i] != 0:
                h = _slot(t, old.keys[i] - 1)
                t.keys[h] = old.keys[i]
                t.vals[h] = old.vals[i]
                t.size += 1
        free(old.keys)
        free(old.vals)
    h = _slot(t, key)
    if t.keys[h] == 0:
        t.keys[h] = key + 1
        t.vals[h] = c
        t.size += 1
        fresh[0] = True
    else:
        t.vals[h] += c
        fresh[0] = False
    return 0


cdef inline uint64_t _table_get(_Table* t, unsigned long long key) noexcept nogil:
    cdef unsigned long long h = _slot(t, key)
    return t.vals[h] if t.keys[h] != 0 else 0


def cycle_counts(int n, const int[:] arc_src, const int[:] arc_dst,
                 const int[:] out_ptr, const int[:] out_arc, node_alive, int max_k):
    cdef int m = arc_src.shape[0]
    cdef bytes alive_b = bytes(node_alive)
    cdef const unsigned char* alive = alive_b
    cdef int s, v, w, u, a, q, j, lw, k, top
    cdef unsigned long long mask, full, bit
    cdef uint64_t c
    cdef uint64_t* counts = <uint64_t*>calloc(n + 1, sizeof(uint64_t))
    cdef int* in_ptr = <int*>calloc(n + 2, sizeof(int))
    cdef int* in_src = <int*>malloc((m + 1) * sizeof(int))
    cdef int* fill = <int*>calloc(n + 1, sizeof(int))
    cdef int* local = <int*>malloc((n + 1) * sizeof(int))
    cdef int* members = <int*>malloc((n + 1) * sizeof(int))
    cdef int* stack = <int*>malloc((n + 1) * sizeof(int))
    cdef unsigned char* fwd = <unsigned char*>malloc(n + 1)
    cdef unsigned char* bwd = <unsigned char*>malloc(n + 1)
    cdef _Table dp
    cdef uint64_t* cyc = NULL
    cdef unsigned long long* queue = NULL
    cdef unsigned long long* closed = NULL
    cdef unsigned long long* grown
    cdef unsigned long long idx, nxt, head, tail, nclosed, i, qcap
    cdef bint fresh
    cdef int err = 0
    dp.keys = NULL
    dp.vals = NULL
    try:
        for a in range(m):
            in_ptr[arc_dst[a] + 1] += 1
        for v in range(n):
            in_ptr[v + 1] += in_ptr[v]
        for a in range(m):
            v = arc_dst[a]
            in_src[in_ptr[v] + fill[v]] = arc_src[a]
            fill[v] += 1
        for s in range(n):
            if not alive[s]:
                continue
            memset(fwd, 0, n + 1)
            memset(bwd, 0, n + 1)
            fwd[s] = 1
            top = 0
            stack[top] = s
            top += 1
            while top > 0:
                top -= 1
                v = stack[top]
                for q in range(out_ptr[v], out_ptr[v + 1]):
                    w = arc_dst[out_arc[q]]
                    if w >= s and alive[w] and not fwd[w]:
                        fwd[w] = 1
                        stack[top] = w
                        top += 1
            bwd[s] = 1
            stack[0] = s
            top = 1
            while top > 0:
                top -= 1
                v = stack[top]
                for q in range(in_ptr[v], in_ptr[v + 1]):
                    u = in_src[q]
                    if u >= s and alive[u] and not bwd[u]:
                        bwd[u] = 1
                        stack[top] = u
                        top += 1
            k = 0
            for v in range(n):
                local[v] = -1
                if v > s and fwd[v] and bwd[v]:
                    local[v] = k
                    members[k] = v
                    k += 1
            if k == 0:
                continue
            if k > max_k:
                raise ValueError(f"component of {k + 1} nodes exceeds cycle-count limit")
            full = (<unsigned long long>1) << k
            # reached (mask, j) states live in a hash table; the FIFO lists them
            # in insertion order, which is layer by layer since each step adds a node
            qcap = 1024
            queue = <unsigned long long*>malloc(qcap * sizeof(unsigned long long))
            cyc = <uint64_t*>calloc(full, sizeof(uint64_t))
            closed = <unsigned long long*>malloc(full * sizeof(unsigned long long))
            if queue == NULL or cyc == NULL or closed == NULL or _table_init(&dp, 4096) != 0:
                raise MemoryError()
            head = tail = nclosed = 0
            for q in range(out_ptr[s], out_ptr[s + 1]):
                lw = local[arc_dst[out_arc[q]]]
                if lw >= 0:
                    idx = ((<unsigned long long>1) << lw) * k + lw
                    _table_add(&dp, idx, 1, &fresh)
                    if fresh:
                        queue[tail] = idx
                        tail += 1
            with nogil:
                while head < tail and err == 0:
                    idx = queue[head]
                    head += 1
                    mask = idx // k
                    j = <int>(idx % k)
                    c = _table_get(&dp, idx)
                    v = members[j]
                    for q in range(out_ptr[v], out_ptr[v + 1]):
                        w = arc_dst[out_arc[q]]
                        if w == s:
                            if cyc[mask] == 0:
                                closed[nclosed] = mask
                                nclosed += 1
                            cyc[mask] += c
                            continue
                        lw = local[w]
                        if lw >= 0:
                            bit = (<unsigned long long>1) << lw
                            if not (mask & bit):
                                nxt = (mask | bit) * k + lw
                                if _table_add(&dp, nxt, c, &fresh) != 0:
                                    err = 1
                                    break
                                if fresh:
                                    if tail == qcap:
                                        qcap *= 2
                                        grown = <unsigned long long*>realloc(queue, qcap * sizeof(unsigned long long))
                                        if grown == NULL:
                                            err = 1
                                            break
                                        queue = grown
                                    queue[tail] = nxt
                                    tail += 1
                for i in range(nclosed):
                    mask = closed[i]
                    c = cyc[mask]
                    counts[s] += c
                    for j in range(k):
                        if (mask >> j) & 1:
                            counts[members[j]] += c
            if err:
                raise MemoryError()
            free(dp.keys)
            free(dp.vals)
            dp.keys = NULL
            dp.vals = NULL
            free(cyc)
            cyc = NULL
            free(queue)
            free(closed)
            queue = NULL
            closed = NULL
        return [counts[v] for v in range(n)]
    finally:
        free(dp.keys)
        free(dp.vals)
        free(cyc)
        free(queue)
        free(closed)
        free(counts)
        free(in_ptr)
        free(in_src)
        free(fill)
        free(local)
        free(members)
        free(stack)
        free(fwd)
        free(bwd)
