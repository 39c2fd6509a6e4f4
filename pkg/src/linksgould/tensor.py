"""Sparse operators on the w-strand space and the (1,1)-tangle closure.

A basis state of w strands is a w-tuple of 1-based local states; internally
it is the integer sum (a_i - 1) N^(w - i), so strand 1 is the most
significant digit.  Operators are stored by row: row -> {col -> poly}, where
a poly is the raw term dict of a Delta-free :class:`RingElem`.
"""

from __future__ import annotations

from . import backend
from .ring import RingElem
from .statemodel import StateModel


class DiagonalityViolation(ArithmeticError):
    """The closed tangle is not a scalar multiple of the identity."""


def encode(state, N: int) -> int:
    r = 0
    for a in state:
        if not 1 <= a <= N:
            raise ValueError(f"local state {a} out of range 1..{N}")
        r = r * N + (a - 1)
    return r


def decode(r: int, N: int, w: int) -> tuple:
    out = []
    for _ in range(w):
        r, d = divmod(r, N)
        out.append(d + 1)
    return tuple(reversed(out))


class SparseOperator:
    """Sparse linear map on (C^N)^(tensor w) with ring-valued entries."""

    __slots__ = ("w", "N", "ctx", "rows")

    def __init__(self, w: int, N: int, ctx, rows=None):
        if w < 1:
            raise ValueError("an operator needs at least one strand")
        self.w = w
        self.N = N
        self.ctx = ctx
        self.rows = rows if rows is not None else {}

    @classmethod
    def identity(cls, model: StateModel, w: int) -> "SparseOperator":
        one = RingElem.const(model.ctx, 1).terms
        return cls(w, model.N, model.ctx, {r: {r: dict(one)} for r in range(model.N ** w)})

    @classmethod
    def from_entries(cls, w: int, N: int, ctx, entries: dict) -> "SparseOperator":
        """Build from {(row tuple, col tuple): RingElem}; Delta-free entries only."""
        rows: dict = {}
        for (r, c), v in entries.items():
            if v.dpow:
                raise ValueError("operator entries must be Delta-free")
            if v:
                rows.setdefault(encode(r, N), {})[encode(c, N)] = dict(v.terms)
        return cls(w, N, ctx, rows)

    @property
    def dim(self) -> int:
        return self.N ** self.w

    def nnz(self) -> int:
        return sum(len(row) for row in self.rows.values())

    def entry(self, row, col) -> RingElem:
        terms = self.rows.get(encode(row, self.N), {}).get(encode(col, self.N))
        return RingElem(self.ctx, dict(terms) if terms else {}, _canonical=True)

    def entries(self) -> dict:
        """{(row tuple, col tuple): RingElem} in sorted order."""
        out = {}
        for r in sorted(self.rows):
            row = self.rows[r]
            for c in sorted(row):
                out[decode(r, self.N, self.w), decode(c, self.N, self.w)] = \
                    RingElem(self.ctx, row[c], _canonical=True)
        return out

    def first_difference(self, other: "SparseOperator"):
        """The smallest (row, col) where the operators differ, or None."""
        if (self.w, self.N) != (other.w, other.N):
            raise ValueError("operators act on different spaces")
        diffs = []
        for r in set(self.rows) | set(other.rows):
            a = self.rows.get(r, {})
            b = other.rows.get(r, {})
            for c in set(a) | set(b):
                if a.get(c) != b.get(c):
                    diffs.append((r, c))
        if not diffs:
            return None
        r, c = min(diffs)
        return decode(r, self.N, self.w), decode(c, self.N, self.w)

    def __eq__(self, other):
        if not isinstance(other, SparseOperator):
            return NotImplemented
        return (self.w, self.N) == (other.w, other.N) and self.rows == other.rows

    def __repr__(self):
        return f"SparseOperator(w={self.w}, N={self.N}, nnz={self.nnz()})"


def apply_crossing(z: SparseOperator, pos: int, positive: bool, model: StateModel) -> SparseOperator:
    """(I^(pos-1) x sigma^(+-1) x I^(w-pos-1)) . z"""
    if not 1 <= pos <= z.w - 1:
        raise ValueError(f"crossing position {pos} out of range 1..{z.w - 1}")
    if z.N != model.N:
        raise ValueError(f"operator has local dimension {z.N}, model has {model.N}")
    stride = model.N ** (z.w - pos - 1)
    rows = backend.apply_local(z.rows, model.local_cols(positive), stride,
                               model.N * model.N, model.ctx.sqtable)
    return SparseOperator(z.w, z.N, z.ctx, rows)


def apply_word(z: SparseOperator, letters, model: StateModel) -> SparseOperator:
    """Apply the letters in order; the first letter acts first."""
    for e in letters:
        z = apply_crossing(z, abs(e), e > 0, model)
    return z


def close_to_tangle(z: SparseOperator, model: StateModel, open_strand: int | None = None) -> dict:
    """Close every strand but ``open_strand`` (default: rightmost).

    Strands left of the open one close around the left with the handle C,
    strands right of it around the right with C-bar (the handle for which
    the mirrored curl sum_c sigma^(ac)_(bc) Cbar_c is the identity).
    Returns {(a, b): RingElem} with the open strand's row state a and column
    state b; zero entries are omitted.
    """
    w, N = z.w, z.N
    if open_strand is None:
        open_strand = w
    if not 1 <= open_strand <= w:
        raise ValueError(f"open strand {open_strand} out of range 1..{w}")
    ostride = N ** (w - open_strand)
    C = [c.terms for c in model.C]
    Cbar = [c.terms for c in model.C_inv]
    sq = model.ctx.sqtable
    weights: dict = {}

    def weight(closed: int) -> dict:
        wt = weights.get(closed)
        if wt is None:
            wt = RingElem.const(model.ctx, 1).terms
            for i, d in enumerate(decode(closed, N, w)):
                if i < open_strand - 1:
                    wt = backend.mul_poly(wt, C[d - 1], sq)
                elif i > open_strand - 1:
                    wt = backend.mul_poly(wt, Cbar[d - 1], sq)
            weights[closed] = wt
        return wt

    acc: dict = {}
    for r, row in z.rows.items():
        a = (r // ostride) % N
        closed = r - a * ostride
        for c, poly in row.items():
            b = (c // ostride) % N
            if c - b * ostride != closed:
                continue
            dest = acc.setdefault((a + 1, b + 1), {})
            backend.mul_acc(dest, weight(closed), poly, sq)
    out = {}
    for k in sorted(acc):
        v = RingElem(model.ctx, acc[k])
        if v:
            out[k] = v
    return out


def extract_scalar(t: dict, N: int | None = None, ctx=None) -> RingElem:
    """lambda with t = lambda * identity; raises DiagonalityViolation otherwise.

    ``N`` is needed to notice a partially-zero diagonal; ``ctx`` is needed
    only to return a typed zero for the empty map.
    """
    lam = None
    for (a, b), v in sorted(t.items()):
        if a != b:
            if v:
                raise DiagonalityViolation(f"off-diagonal entry T[{a},{b}] = {v!r}")
            continue
        if lam is None:
            lam = v
        elif v != lam:
            raise DiagonalityViolation(f"T[{a},{a}] = {v!r} differs from {lam!r}")
    if lam is None or not lam:
        if any(v for v in t.values()):
            raise DiagonalityViolation("diagonal vanishes but the map does not")
        if ctx is None:
            if lam is not None:
                return lam
            raise ValueError("a context is required to return the zero scalar")
        return RingElem.const(ctx, 0)
    if N is not None:
        diag = sum(1 for (a, b), v in t.items() if a == b and v)
        if diag != N:
            raise DiagonalityViolation(f"only {diag} of {N} diagonal entries are nonzero")
    return lam


__all__ = [
    "SparseOperator", "DiagonalityViolation", "apply_crossing", "apply_word",
    "close_to_tangle", "extract_scalar", "encode", "decode",
]
