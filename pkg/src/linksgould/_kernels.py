"""Pure-Python hot kernels.

Polynomials are plain dicts mapping packed monomial keys (see ``_layout``) to
ints.  ``sq`` is the per-context root-square table: ``sq[mask]`` lists the
(key offset, coeff) expansion of prod_{i in mask} s_i^2.

:mod:`linksgould._ckernels` provides compiled versions with the same
signatures; :mod:`linksgould.backend` picks one at import.
"""

from ._layout import KEY_BIAS, SMASK_MASK

NAME = "python"


def mul_acc(acc, a, b, sq):
    """acc += a * b, in place.  May leave zero coefficients in ``acc``."""
    get = acc.get
    for ka, ca in a.items():
        sa = ka & SMASK_MASK
        base = ka - sa - KEY_BIAS
        for kb, cb in b.items():
            sb = kb & SMASK_MASK
            k = base + kb - sb + (sa ^ sb)
            c = ca * cb
            ov = sa & sb
            if ov:
                for d, cc in sq[ov]:
                    kk = k + d
                    acc[kk] = get(kk, 0) + c * cc
            else:
                acc[k] = get(k, 0) + c


def mul_poly(a, b, sq):
    acc = {}
    mul_acc(acc, a, b, sq)
    return {k: c for k, c in acc.items() if c}


def add_into(acc, b):
    """acc += b in place, dropping cancelled terms."""
    for k, c in b.items():
        v = acc.get(k, 0) + c
        if v:
            acc[k] = v
        else:
            acc.pop(k, None)


def apply_local(rows, local_cols, stride, nn, sq):
    """Left-multiply a sparse operator by a two-strand block.

    ``rows`` maps row index -> {col index -> poly}.  The block acts on the
    pair digit ``(row // stride) % nn``; ``local_cols[lower]`` lists
    ``(upper, poly)`` for its nonzero entries.  Returns a new row map with
    cancelled entries removed.
    """
    out = {}
    for r, row in rows.items():
        lower = (r // stride) % nn
        targets = local_cols.get(lower)
        if not targets:
            continue
        base = r - lower * stride
        for upper, coef in targets:
            r2 = base + upper * stride
            dest = out.get(r2)
            if dest is None:
                dest = out[r2] = {}
            for col, val in row.items():
                acc = dest.get(col)
                if acc is None:
                    acc = dest[col] = {}
                mul_acc(acc, coef, val, sq)
    return prune(out)


def prune(rows):
    clean = {}
    for r, row in rows.items():
        new_row = {}
        for col, poly in row.items():
            poly = {k: c for k, c in poly.items() if c}
            if poly:
                new_row[col] = poly
        if new_row:
            clean[r] = new_row
    return clean
