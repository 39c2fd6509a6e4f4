# cython: language_level=3, boundscheck=False, wraparound=False
# distutils: language = c++
"""Compiled hot kernels, same signatures and results as ``_kernels``.

Coefficients are carried as int64 with overflow checks; any overflow (or an
input coefficient that does not fit) reruns the call with the pure-Python
kernel, so results stay exact.
"""

from libc.stdint cimport int64_t
from libcpp.unordered_map cimport unordered_map
from libcpp.vector cimport vector
from libcpp.algorithm cimport sort as csort
from cython.operator cimport dereference as deref, preincrement as inc

from . import _kernels as _py
from ._layout import KEY_BIAS as _KEY_BIAS, SMASK_MASK as _SMASK_MASK

NAME = "cython"

cdef extern from *:
    """
    static inline int lg_add_ovf(long long a, long long b, long long *r) {
        return __builtin_add_overflow(a, b, r);
    }
    static inline int lg_mul_ovf(long long a, long long b, long long *r) {
        return __builtin_mul_overflow(a, b, r);
    }
    """
    bint lg_add_ovf(long long a, long long b, long long *r) nogil
    bint lg_mul_ovf(long long a, long long b, long long *r) nogil

cdef int64_t KEY_BIAS = _KEY_BIAS
cdef int64_t SMASK = _SMASK_MASK

cdef struct Term:
    int64_t key
    int64_t c

ctypedef vector[Term] Poly
ctypedef unordered_map[int64_t, int64_t] Acc


cdef bint to_poly(dict d, Poly* out) except -1:
    """False when a coefficient does not fit in int64."""
    cdef Term t
    out.clear()
    out.reserve(len(d))
    for k, c in d.items():
        if not (-0x7fffffffffffffff <= c <= 0x7fffffffffffffff):
            return False
        t.key = k
        t.c = c
        out.push_back(t)
    return True


cdef struct SqTable:
    vector[Term] terms[16]


cdef bint load_sq(tuple sq, SqTable* tab) except -1:
    cdef Term t
    for mask in range(len(sq)):
        tab.terms[mask].clear()
        for d, c in sq[mask]:
            if not (-0x7fffffffffffffff <= c <= 0x7fffffffffffffff):
                return False
            t.key = d
            t.c = c
            tab.terms[mask].push_back(t)
    return True


cdef bint mul_into(Acc* acc, Poly* a, Poly* b, SqTable* tab) nogil:
    """acc += a * b; returns True on int64 overflow."""
    cdef size_t i, j, n, t
    cdef int64_t ka, kb, sa, sb, ov, base, k, c, cc, v
    cdef long long tmp
    for i in range(a.size()):
        ka = a[0][i].key
        sa = ka & SMASK
        base = ka - sa - KEY_BIAS
        for j in range(b.size()):
            kb = b[0][j].key
            sb = kb & SMASK
            k = base + kb - sb + (sa ^ sb)
            if lg_mul_ovf(a[0][i].c, b[0][j].c, &tmp):
                return True
            c = tmp
            ov = sa & sb
            if ov:
                n = tab.terms[ov].size()
                for t in range(n):
                    if lg_mul_ovf(c, tab.terms[ov][t].c, &tmp):
                        return True
                    cc = tmp
                    v = acc[0][k + tab.terms[ov][t].key]
                    if lg_add_ovf(v, cc, &tmp):
                        return True
                    acc[0][k + tab.terms[ov][t].key] = tmp
            else:
                v = acc[0][k]
                if lg_add_ovf(v, c, &tmp):
                    return True
                acc[0][k] = tmp
    return False


cdef dict acc_to_dict(Acc* acc):
    cdef dict out = {}
    cdef Acc.iterator it = acc.begin()
    while it != acc.end():
        if deref(it).second != 0:
            out[deref(it).first] = deref(it).second
        inc(it)
    return out


def mul_poly(dict a, dict b, tuple sq):
    cdef Poly pa, pb
    cdef SqTable tab
    cdef Acc acc
    if not (to_poly(a, &pa) and to_poly(b, &pb) and load_sq(sq, &tab)):
        return _py.mul_poly(a, b, sq)
    acc.reserve(pa.size() * pb.size())
    if mul_into(&acc, &pa, &pb, &tab):
        return _py.mul_poly(a, b, sq)
    return acc_to_dict(&acc)


def mul_acc(dict acc, dict a, dict b, tuple sq):
    """acc += a * b, in place.  May leave zero coefficients in ``acc``."""
    prod = mul_poly(a, b, sq)
    get = acc.get
    for k, c in prod.items():
        acc[k] = get(k, 0) + c


cdef struct Block:
    int64_t upper
    Poly poly


def apply_local(dict rows, dict local_cols, int64_t stride, int64_t nn, tuple sq):
    """Left-multiply a sparse operator by a two-strand block (see ``_kernels``)."""
    cdef SqTable tab
    cdef vector[vector[Block]] blocks
    cdef Block blk
    cdef Poly pv
    cdef vector[Poly] rowpolys
    cdef vector[int64_t] rowcols
    cdef unordered_map[int64_t, size_t] slot
    cdef vector[Acc] accs
    cdef vector[int64_t] slot_r2, slot_col
    cdef int64_t r, lower, base, r2, col, key, dim
    cdef size_t i, j, s
    cdef Acc* acc
    cdef vector[int64_t] order
    cdef dict out = {}
    cdef dict dest
    if not load_sq(sq, &tab):
        return _py.apply_local(rows, local_cols, stride, nn, sq)
    blocks.resize(nn)
    for low, targets in local_cols.items():
        for upper, coef in targets:
            blk.upper = upper
            if not to_poly(coef, &blk.poly):
                return _py.apply_local(rows, local_cols, stride, nn, sq)
            blocks[low].push_back(blk)
    dim = 0
    for r in rows:
        if r >= dim:
            dim = r + 1
    for row in rows.values():
        for col in row:
            if col >= dim:
                dim = col + 1
    dim = max(dim, stride * nn)
    for r, row in rows.items():
        lower = (r // stride) % nn
        if blocks[lower].size() == 0:
            continue
        base = r - lower * stride
        rowpolys.clear()
        rowcols.clear()
        for col, val in row.items():
            if not to_poly(val, &pv):
                return _py.apply_local(rows, local_cols, stride, nn, sq)
            rowpolys.push_back(pv)
            rowcols.push_back(col)
        for i in range(blocks[lower].size()):
            r2 = base + blocks[lower][i].upper * stride
            for j in range(rowpolys.size()):
                key = r2 * dim + rowcols[j]
                if slot.count(key):
                    s = slot[key]
                else:
                    s = accs.size()
                    slot[key] = s
                    accs.push_back(Acc())
                    slot_r2.push_back(r2)
                    slot_col.push_back(rowcols[j])
                acc = &accs[s]
                if mul_into(acc, &blocks[lower][i].poly, &rowpolys[j], &tab):
                    return _py.apply_local(rows, local_cols, stride, nn, sq)
    for s in range(accs.size()):
        order.push_back(slot_r2[s] * dim + slot_col[s])
    csort(order.begin(), order.end())
    for key in order:
        s = slot[key]
        poly = acc_to_dict(&accs[s])
        if not poly:
            continue
        r2 = slot_r2[s]
        dest = out.get(r2)
        if dest is None:
            dest = out[r2] = {}
        dest[slot_col[s]] = poly
    return out


def prune(rows):
    return _py.prune(rows)
