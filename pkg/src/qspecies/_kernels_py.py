"""Pure-Python reference kernels.

Same names, signatures and output order as the compiled ``_kernels``
module; ``qspecies.kernels`` picks one at import time.
"""


def graded_mul(a, b, trunc):
    """Sparse Cauchy product of two ``{exponent tuple: coeff}`` maps.

    Terms whose total degree exceeds ``trunc`` are dropped, as are zeros.
    """
    out = {}
    bl = [(k, sum(k), v) for k, v in b.items()]
    for ka, va in a.items():
        da = sum(ka)
        if da > trunc:
            continue
        room = trunc - da
        for kb, db, vb in bl:
            if db > room:
                continue
            key = tuple(p + q for p, q in zip(ka, kb))
            out[key] = out.get(key, 0) + va * vb
    return {k: v for k, v in out.items() if v != 0}


def word_mul(a, b, trunc):
    """Concatenation product of two ``{word tuple: coeff}`` maps."""
    out = {}
    bl = [(k, len(k), v) for k, v in b.items()]
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


def perfect_matchings(n):
    """All perfect matchings of ``range(n)`` as tuples of pairs.

    The smallest unmatched point is paired with each larger point in
    increasing order, so the list is lexicographically sorted.
    """
    if n % 2:
        return []
    out = []
    partner = [-1] * n
    pairs = []

    def rec():
        i = 0
        while i < n and partner[i] >= 0:
            i += 1
        if i == n:
            out.append(tuple(pairs))
            return
        for j in range(i + 1, n):
            if partner[j] < 0:
                partner[i] = j
                partner[j] = i
                pairs.append((i, j))
                rec()
                pairs.pop()
                partner[i] = -1
                partner[j] = -1

    rec()
    return out


def set_partitions(n):
    """All set partitions of ``range(n)``, blocks sorted, in restricted-growth order."""
    if n == 0:
        return [()]
    out = []
    rgs = [0] * n

    def rec(i, nblocks):
        if i == n:
            blocks = [[] for _ in range(nblocks)]
            for e, b in enumerate(rgs):
                blocks[b].append(e)
            out.append(tuple(tuple(b) for b in blocks))
            return
        for b in range(nblocks + 1):
            rgs[i] = b
            rec(i + 1, max(nblocks, b + 1))

    rgs[0] = 0
    rec(1, 1)
    return out


def inversions(first, second):
    """Number of pairs ``(i, j)`` with ``i`` in ``first``, ``j`` in ``second`` and ``j < i``."""
    count = 0
    for i in first:
        for j in second:
            if j < i:
                count += 1
    return count
