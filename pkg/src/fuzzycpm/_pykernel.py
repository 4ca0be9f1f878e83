"""Pure-Python configuration scoring kernels.

Semantics are identical to the compiled ``_ckernel`` module; both take the
flat arrays produced by :func:`fuzzycpm.kernel.pack`.

Activities are indexed by topological position.  Configurations are
numbered in mixed radix over *declaration* order (first declared activity
most significant), which is the lexicographic order of
``itertools.product`` over the activities' support points.
"""


def enumerate_range(pred_ptr, pred_idx, sup_ptr, dur, bel, radix_pos,
                    lo, hi, offset, span):
    """Best belief per critical path length over configurations ``lo <= k < hi``.

    Returns a list ``out`` of length ``span`` with ``out[L - offset]`` the
    maximum configuration belief reaching length ``L`` (0 if none).  With
    ``span == 0`` a dict ``{L - offset: belief}`` is returned instead, for
    length ranges too wide for a dense list.
    """
    pred_ptr = [int(x) for x in pred_ptr]
    pred_idx = [int(x) for x in pred_idx]
    sup_ptr = [int(x) for x in sup_ptr]
    dur = [int(x) for x in dur]
    bel = [int(x) for x in bel]
    radix_pos = [int(x) for x in radix_pos]
    n = len(sup_ptr) - 1
    out = [0] * span if span else {}
    if lo >= hi or n == 0:
        return out

    sizes = [sup_ptr[radix_pos[j] + 1] - sup_ptr[radix_pos[j]] for j in range(n)]
    digit = [0] * n  # indexed by topo position
    rem = lo
    for j in range(n - 1, -1, -1):
        rem, digit[radix_pos[j]] = divmod(rem, sizes[j])

    ef = [0] * n
    pmin = [0] * n
    dirty = 0
    last = n - 1
    k = lo
    while True:
        for i in range(dirty, n):
            s = 0
            for e in range(pred_ptr[i], pred_ptr[i + 1]):
                v = ef[pred_idx[e]]
                if v > s:
                    s = v
            c = sup_ptr[i] + digit[i]
            ef[i] = s + dur[c]
            b = bel[c]
            if i and pmin[i - 1] < b:
                b = pmin[i - 1]
            pmin[i] = b
        slot = ef[last] - offset
        if pmin[last] > (out[slot] if span else out.get(slot, 0)):
            out[slot] = pmin[last]
        k += 1
        if k >= hi:
            return out
        # odometer increment; track the lowest topo position touched
        dirty = n
        j = n - 1
        while True:
            p = radix_pos[j]
            if p < dirty:
                dirty = p
            digit[p] += 1
            if digit[p] < sizes[j]:
                break
            digit[p] = 0
            j -= 1


def score_choices(pred_ptr, pred_idx, sup_ptr, dur, bel, radix_pos,
                  choices, offset, span):
    """Like :func:`enumerate_range` for explicit configurations.

    ``choices`` is a sequence of rows, each holding one support index per
    activity in declaration order.
    """
    pred_ptr = [int(x) for x in pred_ptr]
    pred_idx = [int(x) for x in pred_idx]
    sup_ptr = [int(x) for x in sup_ptr]
    dur = [int(x) for x in dur]
    bel = [int(x) for x in bel]
    radix_pos = [int(x) for x in radix_pos]
    n = len(sup_ptr) - 1
    out = [0] * span if span else {}
    ef = [0] * n
    digit = [0] * n
    for row in choices:
        for j in range(n):
            digit[radix_pos[j]] = int(row[j])
        b_min = None
        for i in range(n):
            s = 0
            for e in range(pred_ptr[i], pred_ptr[i + 1]):
                v = ef[pred_idx[e]]
                if v > s:
                    s = v
            c = sup_ptr[i] + digit[i]
            ef[i] = s + dur[c]
            if b_min is None or bel[c] < b_min:
                b_min = bel[c]
        slot = ef[n - 1] - offset
        if b_min > (out[slot] if span else out.get(slot, 0)):
            out[slot] = b_min
    return out
