# cython: language_level=3
"""Compiled kernels; behaviour identical to ``_kernels_py``."""

from libc.stdlib cimport malloc, free

cdef long DENSE_LIMIT = 1 << 20


def graded_mul(dict a, dict b, long trunc):
    cdef Py_ssize_t d, i, j, na, nb
    cdef long base, code, da, db, w
    cdef long *ca
    cdef long *cb
    cdef long *dga
    cdef long *dgb
    cdef list va, vb, dense
    cdef dict out
    if not a or not b:
        return {}
    d = len(next(iter(a)))
    base = trunc + 1
    # mixed-radix packing is carry-free because every surviving component is <= trunc
    w = 1
    for i in range(d):
        if w > DENSE_LIMIT:
            break
        w *= base
    na = len(a)
    nb = len(b)
    ca = <long *> malloc(na * sizeof(long))
    dga = <long *> malloc(na * sizeof(long))
    cb = <long *> malloc(nb * sizeof(long))
    dgb = <long *> malloc(nb * sizeof(long))
    va = []
    vb = []
    try:
        j = 0
        for key, val in a.items():
            code = 0
            da = 0
            for i in range(d - 1, -1, -1):
                code = code * base + <long> key[i]
                da += <long> key[i]
            ca[j] = code
            dga[j] = da
            va.append(val)
            j += 1
        j = 0
        for key, val in b.items():
            code = 0
            db = 0
            for i in range(d - 1, -1, -1):
                code = code * base + <long> key[i]
                db += <long> key[i]
            cb[j] = code
            dgb[j] = db
            vb.append(val)
            j += 1
        if w <= DENSE_LIMIT:
            dense = [None] * w
            for i in range(na):
                if dga[i] > trunc:
                    continue
                for j in range(nb):
                    if dga[i] + dgb[j] > trunc:
                        continue
                    code = ca[i] + cb[j]
                    cur = dense[code]
                    if cur is None:
                        dense[code] = va[i] * vb[j]
                    else:
                        dense[code] = cur + va[i] * vb[j]
            out = {}
            for code in range(w):
                cur = dense[code]
                if cur is not None and cur != 0:
                    out[_decode(code, base, d)] = cur
            return out
        out = {}
        for i in range(na):
            if dga[i] > trunc:
                continue
            for j in range(nb):
                if dga[i] + dgb[j] > trunc:
                    continue
                code = ca[i] + cb[j]
                out[code] = out.get(code, 0) + va[i] * vb[j]
        return {_decode(c, base, d): v for c, v in out.items() if v != 0}
    finally:
        free(ca)
        free(cb)
        free(dga)
        free(dgb)


cdef tuple _decode(long code, long base, Py_ssize_t d):
    cdef Py_ssize_t i
    cdef list parts = []
    for i in range(d):
        parts.append(code % base)
        code //= base
    return tuple(parts)


def word_mul(dict a, dict b, long trunc):
    cdef dict out = {}
    cdef list bl = [(k, len(k), v) for k, v in b.items()]
    cdef long room, lb
    for ka, va in a.items():
        room = trunc - len(ka)
        if room < 0:
            continue
        for kb, lb, vb in bl:
            if lb > room:
                continue
            key = ka + kb
            out[key] = out.get(key, 0) + va * vb
    return {k: v for k, v in out.items() if v != 0}


def perfect_matchings(int n):
    cdef list out = []
    cdef int *partner
    cdef int *stack_i
    cdef int *stack_j
    cdef int depth, i, j, half
    if n % 2:
        return out
    if n == 0:
        return [()]
    half = n // 2
    partner = <int *> malloc(n * sizeof(int))
    stack_i = <int *> malloc(half * sizeof(int))
    stack_j = <int *> malloc(half * sizeof(int))
    try:
        for i in range(n):
            partner[i] = -1
        depth = 0
        j = 0
        while True:
            # i = smallest unmatched point at this depth
            i = 0
            while partner[i] >= 0:
                i += 1
            if depth < half and j == 0:
                j = i + 1
            while j < n and partner[j] >= 0:
                j += 1
            if j < n:
                partner[i] = j
                partner[j] = i
                stack_i[depth] = i
                stack_j[depth] = j
                depth += 1
                if depth == half:
                    out.append(tuple([(stack_i[k], stack_j[k]) for k in range(half)]))
                    depth -= 1
                    partner[stack_i[depth]] = -1
                    partner[stack_j[depth]] = -1
                    j = stack_j[depth] + 1
                else:
                    j = 0
            else:
                if depth == 0:
                    break
                depth -= 1
                partner[stack_i[depth]] = -1
                partner[stack_j[depth]] = -1
                j = stack_j[depth] + 1
    finally:
        free(partner)
        free(stack_i)
        free(stack_j)
    return out


def set_partitions(int n):
    cdef list out = []
    cdef int *rgs
    cdef int *mx
    cdef int i, k, nb
    if n == 0:
        return [()]
    rgs = <int *> malloc(n * sizeof(int))
    mx = <int *> malloc(n * sizeof(int))
    try:
        for i in range(n):
            rgs[i] = 0
            mx[i] = 0
        while True:
            nb = mx[n - 1] + 1
            blocks = [[] for _ in range(nb)]
            for i in range(n):
                blocks[rgs[i]].append(i)
            out.append(tuple([tuple(bl) for bl in blocks]))
            # next restricted growth string: bump the rightmost position that can grow
            k = n - 1
            while k > 0 and rgs[k] > mx[k - 1]:
                k -= 1
            if k == 0:
                break
            rgs[k] += 1
            mx[k] = mx[k - 1] if mx[k - 1] > rgs[k] else rgs[k]
            for i in range(k + 1, n):
                rgs[i] = 0
                mx[i] = mx[k]
    finally:
        free(rgs)
        free(mx)
    return out


def inversions(first, second):
    cdef long count = 0
    cdef long i, j
    for i in first:
        for j in second:
            if j < i:
                count += 1
    return count
