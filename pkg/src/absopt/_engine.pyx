# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled enumeration core.

Mirrors _engine_py.py exactly: same DFS order, same pruning, same witness
tie-breaking.  Restricted to at most 62 variables and weight sums below 2^62
(the dispatcher enforces both); everything else takes the pure path.
"""

from libc.stdlib cimport free, malloc
from libc.stdint cimport int64_t, uint64_t


cdef struct Ctx:
    int n
    int m
    bint dnf
    bint absolute
    int cmp
    int64_t alpha
    int* status
    int* rem
    int64_t* w
    int* occ_start
    int* occ_clause
    unsigned char* occ_sign
    unsigned char* path
    int* trail_c
    unsigned char* trail_k


cdef inline bint _reach(Ctx* ctx, int64_t lb, int64_t ub) nogil:
    if ctx.cmp == 0:
        if ctx.absolute:
            return ub >= ctx.alpha or lb <= -ctx.alpha
        return ub >= ctx.alpha
    if ctx.cmp == 1:
        if ctx.absolute:
            return (lb <= ctx.alpha and ctx.alpha <= ub) or (lb <= -ctx.alpha and -ctx.alpha <= ub)
        return lb <= ctx.alpha and ctx.alpha <= ub
    if ctx.absolute:
        return not (lb > ctx.alpha or ub < -ctx.alpha)
    return lb <= ctx.alpha


cdef inline bint _hit(Ctx* ctx, int64_t v) nogil:
    cdef int64_t a = v if v >= 0 else -v
    if ctx.cmp == 0:
        return a >= ctx.alpha if ctx.absolute else v >= ctx.alpha
    if ctx.cmp == 1:
        return a == ctx.alpha if ctx.absolute else v == ctx.alpha
    return a <= ctx.alpha if ctx.absolute else v <= ctx.alpha


cdef int _apply(Ctx* ctx, int depth, int val, int top,
                int64_t* dc, int64_t* dp, int64_t* dn) nogil:
    """Propagate one assignment, pushing undo records; returns the new top."""
    cdef int j, c, sign, r
    cdef int64_t wt
    for j in range(ctx.occ_start[depth], ctx.occ_start[depth + 1]):
        c = ctx.occ_clause[j]
        if ctx.status[c] != 0:
            continue
        sign = ctx.occ_sign[j]
        wt = ctx.w[c]
        if ctx.dnf:
            if sign == val:
                r = ctx.rem[c] - 1
                ctx.rem[c] = r
                if r == 0:
                    ctx.status[c] = 1
                    dc[0] += wt
                    if wt > 0:
                        dp[0] -= wt
                    elif wt < 0:
                        dn[0] -= wt
                    ctx.trail_c[top] = c
                    ctx.trail_k[top] = 1
                else:
                    ctx.trail_c[top] = c
                    ctx.trail_k[top] = 0
            else:
                ctx.status[c] = 2
                if wt > 0:
                    dp[0] -= wt
                elif wt < 0:
                    dn[0] -= wt
                ctx.trail_c[top] = c
                ctx.trail_k[top] = 2
        else:
            if sign == val:
                ctx.status[c] = 1
                dc[0] += wt
                if wt > 0:
                    dp[0] -= wt
                elif wt < 0:
                    dn[0] -= wt
                ctx.trail_c[top] = c
                ctx.trail_k[top] = 2
            else:
                r = ctx.rem[c] - 1
                ctx.rem[c] = r
                if r == 0:
                    ctx.status[c] = 2
                    if wt > 0:
                        dp[0] -= wt
                    elif wt < 0:
                        dn[0] -= wt
                    ctx.trail_c[top] = c
                    ctx.trail_k[top] = 1
                else:
                    ctx.trail_c[top] = c
                    ctx.trail_k[top] = 0
        top += 1
    return top


cdef void _unwind(Ctx* ctx, int frm, int to) nogil:
    cdef int j, c, k
    for j in range(to - 1, frm - 1, -1):
        c = ctx.trail_c[j]
        k = ctx.trail_k[j]
        if k == 0:
            ctx.rem[c] += 1
        elif k == 1:
            ctx.status[c] = 0
            ctx.rem[c] += 1
        else:
            ctx.status[c] = 0


cdef int _decide_rec(Ctx* ctx, int depth, int64_t cur, int64_t opos, int64_t oneg,
                     int top, int64_t* out_val) nogil:
    cdef int val, new_top, r
    cdef int64_t dc, dp, dn
    if not _reach(ctx, cur + oneg, cur + opos):
        return 0
    if depth == ctx.n:
        if _hit(ctx, cur):
            out_val[0] = cur
            return 1
        return 0
    for val in range(2):
        ctx.path[depth] = val
        dc = 0
        dp = 0
        dn = 0
        new_top = _apply(ctx, depth, val, top, &dc, &dp, &dn)
        r = _decide_rec(ctx, depth + 1, cur + dc, opos + dp, oneg + dn, new_top, out_val)
        _unwind(ctx, top, new_top)
        if r:
            return 1
    return 0


cdef struct Best:
    bint have
    int64_t maxv
    uint64_t argmax
    int64_t minv
    uint64_t argmin


cdef inline uint64_t _path_mask(Ctx* ctx) nogil:
    cdef uint64_t mask = 0
    cdef int i
    for i in range(ctx.n):
        if ctx.path[i]:
            mask |= (<uint64_t>1) << i
    return mask


cdef void _extremes_rec(Ctx* ctx, int depth, int64_t cur, int64_t opos, int64_t oneg,
                        int top, Best* best) nogil:
    cdef int val, new_top
    cdef int64_t dc, dp, dn
    if best.have and cur + opos <= best.maxv and cur + oneg >= best.minv:
        return
    if depth == ctx.n:
        if not best.have or cur > best.maxv:
            best.maxv = cur
            best.argmax = _path_mask(ctx)
        if not best.have or cur < best.minv:
            best.minv = cur
            best.argmin = _path_mask(ctx)
        best.have = 1
        return
    for val in range(2):
        ctx.path[depth] = val
        dc = 0
        dp = 0
        dn = 0
        new_top = _apply(ctx, depth, val, top, &dc, &dp, &dn)
        _extremes_rec(ctx, depth + 1, cur + dc, opos + dp, oneg + dn, new_top, best)
        _unwind(ctx, top, new_top)


cdef inline int _popcount64(uint64_t x) nogil:
    cdef int k = 0
    while x:
        x &= x - 1
        k += 1
    return k


cdef int _build(Ctx* ctx, int num_vars, list clauses, bint dnf,
                int64_t* cur0, int64_t* pos0, int64_t* neg0) except -1:
    cdef int m = len(clauses)
    cdef int c, i, k, total
    cdef uint64_t pos, neg, bit
    cdef int64_t wt
    ctx.n = num_vars
    ctx.m = m
    ctx.dnf = dnf
    ctx.status = NULL
    ctx.rem = NULL
    ctx.w = NULL
    ctx.occ_start = NULL
    ctx.occ_clause = NULL
    ctx.occ_sign = NULL
    ctx.path = NULL
    ctx.trail_c = NULL
    ctx.trail_k = NULL
    total = 0
    for c in range(m):
        pos = clauses[c][0]
        neg = clauses[c][1]
        total += _popcount64(pos) + _popcount64(neg)
    ctx.status = <int*>malloc(sizeof(int) * (m if m else 1))
    ctx.rem = <int*>malloc(sizeof(int) * (m if m else 1))
    ctx.w = <int64_t*>malloc(sizeof(int64_t) * (m if m else 1))
    ctx.occ_start = <int*>malloc(sizeof(int) * (num_vars + 2))
    ctx.occ_clause = <int*>malloc(sizeof(int) * (total if total else 1))
    ctx.occ_sign = <unsigned char*>malloc(total if total else 1)
    ctx.path = <unsigned char*>malloc(num_vars + 1)
    ctx.trail_c = <int*>malloc(sizeof(int) * (total if total else 1))
    ctx.trail_k = <unsigned char*>malloc(total if total else 1)
    if (ctx.status == NULL or ctx.rem == NULL or ctx.w == NULL or ctx.occ_start == NULL
            or ctx.occ_clause == NULL or ctx.occ_sign == NULL or ctx.path == NULL
            or ctx.trail_c == NULL or ctx.trail_k == NULL):
        raise MemoryError()
    # Occurrence lists in CSR form, grouped by variable.
    cdef int* counts = <int*>malloc(sizeof(int) * (num_vars + 1))
    if counts == NULL:
        raise MemoryError()
    for i in range(num_vars + 1):
        counts[i] = 0
    for c in range(m):
        pos = clauses[c][0]
        neg = clauses[c][1]
        for i in range(num_vars):
            bit = (<uint64_t>1) << i
            if pos & bit:
                counts[i] += 1
            if neg & bit:
                counts[i] += 1
    ctx.occ_start[0] = 0
    for i in range(num_vars):
        ctx.occ_start[i + 1] = ctx.occ_start[i] + counts[i]
        counts[i] = ctx.occ_start[i]
    cur0[0] = 0
    pos0[0] = 0
    neg0[0] = 0
    for c in range(m):
        pos = clauses[c][0]
        neg = clauses[c][1]
        wt = clauses[c][2]
        ctx.w[c] = wt
        k = 0
        for i in range(num_vars):
            bit = (<uint64_t>1) << i
            if pos & bit:
                ctx.occ_clause[counts[i]] = c
                ctx.occ_sign[counts[i]] = 1
                counts[i] += 1
                k += 1
            if neg & bit:
                ctx.occ_clause[counts[i]] = c
                ctx.occ_sign[counts[i]] = 0
                counts[i] += 1
                k += 1
        ctx.rem[c] = k
        if k == 0:
            if dnf:
                ctx.status[c] = 1
                cur0[0] += wt
            else:
                ctx.status[c] = 2
        else:
            ctx.status[c] = 0
            if wt > 0:
                pos0[0] += wt
            elif wt < 0:
                neg0[0] += wt
    free(counts)
    return 0


cdef void _release(Ctx* ctx):
    free(ctx.status)
    free(ctx.rem)
    free(ctx.w)
    free(ctx.occ_start)
    free(ctx.occ_clause)
    free(ctx.occ_sign)
    free(ctx.path)
    free(ctx.trail_c)
    free(ctx.trail_k)


def decide(int num_vars, list clauses, *, bint dnf, object alpha, bint absolute, int cmp_code):
    """Compiled counterpart of _engine_py.decide; cmp_code 0/1/2 = atleast/exact/atmost."""
    cdef Ctx ctx
    cdef int64_t cur0 = 0, pos0 = 0, neg0 = 0, out_val = 0
    cdef int found
    cdef uint64_t mask = 0
    cdef int i
    try:
        _build(&ctx, num_vars, clauses, dnf, &cur0, &pos0, &neg0)
        ctx.alpha = alpha
        ctx.absolute = absolute
        ctx.cmp = cmp_code
        found = _decide_rec(&ctx, 0, cur0, pos0, neg0, 0, &out_val)
        if not found:
            return False, None, None
        for i in range(num_vars):
            if ctx.path[i]:
                mask |= (<uint64_t>1) << i
        return True, int(mask), int(out_val)
    finally:
        _release(&ctx)


def extremes(int num_vars, list clauses, *, bint dnf):
    """Compiled counterpart of _engine_py.extremes."""
    cdef Ctx ctx
    cdef int64_t cur0 = 0, pos0 = 0, neg0 = 0
    cdef Best best
    best.have = 0
    best.maxv = 0
    best.argmax = 0
    best.minv = 0
    best.argmin = 0
    ctx.alpha = 0
    ctx.absolute = 0
    ctx.cmp = 0
    try:
        _build(&ctx, num_vars, clauses, dnf, &cur0, &pos0, &neg0)
        _extremes_rec(&ctx, 0, cur0, pos0, neg0, 0, &best)
        return int(best.maxv), int(best.argmax), int(best.minv), int(best.argmin)
    finally:
        _release(&ctx)
