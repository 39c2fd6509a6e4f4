"""State-model parameters (sigma, C) for LG^m, m = 1..4.

The tables in ``data/statemodels.json`` keep the typographic structure of the
published parameters: each record is one displayed coefficient together with
every index position it heads.  ``build`` compiles them into ring elements in
the internal variables (Q, p) and checks the model before handing it out.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from importlib import resources

from .ring import (
    Monomial,
    RingContext,
    RingElem,
    _bracket_numerator,
    delta,
    invert_vars,
    to_int,
    to_rep,
)

SIGMA_COUNTS = {1: 5, 2: 26, 3: 139, 4: 758}


class TableCorruption(ValueError):
    """A shipped table fails one of the model invariants."""


class ModelInconsistency(ValueError):
    pass


class NotScalable(ValueError):
    pass


@dataclass(frozen=True)
class EntrySpec:
    """One displayed coefficient and the index positions it heads.

    ``qpow`` is in Q = q^(1/2) units; ``bracket_powers`` maps an offset i to
    twice the power of [alpha + i]; ``extra`` holds literal Laurent
    polynomials in q, again keyed by Q exponent.
    """

    rows: tuple
    sign: int = 1
    dpow: int = 0
    qpow: int = 0
    alpha_x: int = 0
    bracket_powers: dict = field(default_factory=dict)
    extra: tuple = ()

    @classmethod
    def from_record(cls, rec: dict) -> "EntrySpec":
        return cls(
            rows=tuple(tuple(r) for r in rec["at"]),
            sign=rec["sign"],
            dpow=rec["delta"],
            qpow=rec["q2"],
            alpha_x=rec["alpha"],
            bracket_powers={int(k): v for k, v in rec["brackets"].items()},
            extra=tuple(tuple((e, c) for e, c in poly) for poly in rec["extra"]),
        )

    def root_degree(self) -> int:
        return sum(v % 2 for v in self.bracket_powers.values())

    def rep_factor(self) -> tuple[int, Fraction]:
        """The q^(x alpha + y) factor as (x, y)."""
        return self.alpha_x, Fraction(self.qpow, 2)

    def compile(self, ctx: RingContext) -> RingElem:
        if sum(self.bracket_powers.values()) % 2:
            raise TableCorruption(f"unpaired bracket roots in entry at {self.rows[0]}")
        x, y = self.rep_factor()
        mono = to_int(ctx, x, y)
        val = RingElem.monomial(ctx, mono.eQ, mono.ep, c=self.sign)
        half_deltas = 2 * self.dpow
        for i, twice in sorted(self.bracket_powers.items()):
            num = RingElem(ctx, _bracket_numerator(ctx.shift2, i), _canonical=True)
            val = val * num ** (twice // 2)
            if twice % 2:
                val = val * RingElem.root(ctx, i)
            half_deltas -= twice
        for poly in self.extra:
            val = val * RingElem(ctx, {Monomial(e, 0).key(): c for e, c in poly})
        d = half_deltas // 2
        if d >= 0:
            return val * delta(ctx) ** d
        return RingElem(ctx, val.terms, -d)


@dataclass(frozen=True, eq=False)
class StateModel:
    """Braid generator and positive handle for one m, in internal variables.

    Indices are 1-based as printed.  ``sigma[(a, b, c, d)]`` is the component
    with upper indices (a, b) and lower indices (c, d); as a matrix on the
    pair space the upper pair labels the row.
    """

    m: int
    ctx: RingContext
    sigma: dict
    sigma_inv: dict
    C: tuple
    C_inv: tuple
    kappa_sigma: Monomial
    kappa_C: Monomial
    specs: tuple = ()

    @property
    def N(self) -> int:
        return len(self.C)

    @property
    def nnz(self) -> int:
        return len(self.sigma)

    def local_cols(self, positive: bool = True) -> dict:
        """Block for the kernels: lower pair -> ((upper pair, poly), ...), 0-based."""
        cache = self.__dict__.setdefault("_local", {})
        if positive not in cache:
            cache[positive] = _local_block(self.sigma if positive else self.sigma_inv, self.N)
        return cache[positive]


def _local_block(entries: dict, N: int) -> dict:
    cols: dict[int, list] = {}
    for (a, b, c, d), v in sorted(entries.items()):
        upper = (a - 1) * N + (b - 1)
        lower = (c - 1) * N + (d - 1)
        cols.setdefault(lower, []).append((upper, v.terms))
    return {k: tuple(v) for k, v in cols.items()}


@lru_cache(maxsize=None)
def _tables_text() -> str:
    return resources.files("linksgould").joinpath("data/statemodels.json").read_text()


def _read_tables() -> dict:
    return json.loads(_tables_text())


def apply_corrections(tables: dict) -> dict:
    """Apply the listed typographical corrections in place.

    Each correction names one index position; the record heading it gets
    ``field`` changed from ``old`` to ``new``.  A mismatch on ``old`` means
    the table and the correction list have drifted apart.
    """
    for fix in tables.get("corrections", ()):
        at = list(fix["at"])
        recs = [r for r in tables[str(fix["m"])]["sigma"] if at in r["at"]]
        if len(recs) != 1:
            raise TableCorruption(f"correction target {tuple(at)} not found once")
        rec = recs[0]
        if rec[fix["field"]] != fix["old"]:
            raise TableCorruption(
                f"correction at {tuple(at)}: {fix['field']} is {rec[fix['field']]}, "
                f"expected {fix['old']}")
        rec[fix["field"]] = fix["new"]
    return tables


def load_tables(raw: bool = False) -> dict:
    tables = _read_tables()
    return tables if raw else apply_corrections(tables)


def corrections() -> list:
    return list(_read_tables().get("corrections", ()))


def entry_specs(m: int, raw: bool = False) -> tuple[list[EntrySpec], list[EntrySpec]]:
    rec = load_tables(raw)[str(m)]
    return ([EntrySpec.from_record(r) for r in rec["sigma"]],
            [EntrySpec.from_record(r) for r in rec["handle"]])


def _kappa(ctx: RingContext, rec: dict) -> Monomial:
    return to_int(ctx, rec["alpha"], Fraction(rec["q2"], 2))


def compile_sigma(specs, ctx: RingContext) -> dict:
    sigma: dict = {}
    for spec in specs:
        val = spec.compile(ctx)
        if val.dpow:
            raise TableCorruption(f"entry at {spec.rows[0]} is not Delta-free: {val!r}")
        if 1 in val.s_degree_parities():
            raise TableCorruption(f"entry at {spec.rows[0]} has odd root degree")
        for idx in spec.rows:
            if idx in sigma:
                raise TableCorruption(f"index {idx} listed twice")
            sigma[idx] = val
    return sigma


def compile_handle(specs, ctx: RingContext, N: int) -> tuple:
    C: list = [None] * N
    for spec in specs:
        val = spec.compile(ctx)
        for (a,) in spec.rows:
            if C[a - 1] is not None:
                raise TableCorruption(f"handle index {a} listed twice")
            C[a - 1] = val
    if any(c is None for c in C):
        raise TableCorruption("handle has missing diagonal components")
    return tuple(C)


def inverse_generator(sigma: dict) -> dict:
    """Candidate inverse: sigma-bar^{ac}_{bd} = sigma^{ca}_{db} with q -> 1/q."""
    return {(c, a, d, b): invert_vars(v, roots=True) for (a, c, b, d), v in sigma.items()}


def pair_product(x: dict, y: dict) -> dict:
    """Matrix product of two pair-space operators keyed (a, b, c, d)."""
    by_row: dict = {}
    for (c, d, e, f), v in y.items():
        by_row.setdefault((c, d), []).append(((e, f), v))
    out: dict = {}
    for (a, b, c, d), u in x.items():
        for (e, f), v in by_row.get((c, d), ()):
            k = (a, b, e, f)
            out[k] = out[k] + u * v if k in out else u * v
    return {k: v for k, v in out.items() if v}


def is_identity(x: dict) -> tuple[bool, object]:
    for k, v in sorted(x.items()):
        a, b, c, d = k
        if (a, b) == (c, d):
            if not v.is_one():
                return False, k
        elif v:
            return False, k
    diag = {(a, b) for (a, b, c, d) in x if (a, b) == (c, d)}
    return True, diag


def check_inverse(sigma: dict, sigma_inv: dict, N: int):
    for left, right in ((sigma, sigma_inv), (sigma_inv, sigma)):
        prod = pair_product(left, right)
        ok, info = is_identity(prod)
        if not ok:
            raise ModelInconsistency(f"sigma * sigma-bar differs from identity at {info}")
        if len(info) != N * N:
            missing = sorted({(a, b) for a in range(1, N + 1) for b in range(1, N + 1)} - info)
            raise ModelInconsistency(f"sigma * sigma-bar misses diagonal {missing[0]}")


def build(m: int) -> StateModel:
    return _build(m)


@lru_cache(maxsize=None)
def _build(m: int) -> StateModel:
    if m not in SIGMA_COUNTS:
        raise ValueError(f"no state model for m={m}; shipped: 1..4")
    ctx = RingContext(m)
    N = 2 ** m
    sig_specs, c_specs = entry_specs(m)
    sigma = compile_sigma(sig_specs, ctx)
    if len(sigma) != SIGMA_COUNTS[m]:
        raise TableCorruption(f"sigma has {len(sigma)} components, expected {SIGMA_COUNTS[m]}")
    for idx in sigma:
        if not all(1 <= i <= N for i in idx):
            raise TableCorruption(f"index {idx} out of range 1..{N}")
    C = compile_handle(c_specs, ctx, N)
    if sum(C, RingElem.const(ctx, 0)):
        raise TableCorruption("trace of the handle is nonzero")
    C_inv = tuple(invert_vars(c) for c in C)
    for a, (c, ci) in enumerate(zip(C, C_inv), 1):
        if not (c * ci).is_one():
            raise TableCorruption(f"C * C-bar differs from 1 at {a}")
    sigma_inv = inverse_generator(sigma)
    try:
        check_inverse(sigma, sigma_inv, N)
    except ModelInconsistency as exc:
        raise TableCorruption(str(exc)) from None
    rec = load_tables()[str(m)]
    return StateModel(
        m=m, ctx=ctx, sigma=sigma, sigma_inv=sigma_inv, C=C, C_inv=C_inv,
        kappa_sigma=_kappa(ctx, rec["kappa_sigma"]),
        kappa_C=_kappa(ctx, rec["kappa_C"]),
        specs=tuple(sig_specs) + tuple(c_specs),
    )


def _scale(x: dict, mono: Monomial, sign: int = 1) -> dict:
    ctx = next(iter(x.values())).ctx
    k = RingElem.monomial(ctx, mono.eQ, mono.ep, c=sign)
    return {i: v * k for i, v in x.items()}


def monomial_inverse(mono: Monomial) -> Monomial:
    return Monomial(-mono.eQ, -mono.ep, 0)


def unscaled(model: StateModel) -> tuple[dict, list]:
    """(R-check, S) = (kappa_sigma^-1 sigma, kappa_C^-1 C)."""
    ks = monomial_inverse(model.kappa_sigma)
    kc = RingElem.monomial(model.ctx, *monomial_inverse(model.kappa_C)[:2])
    return _scale(model.sigma, ks), [c * kc for c in model.C]


def _sqrt_monomial(coeff: int, mono: Monomial, what: str) -> Monomial:
    if coeff != 1 or mono.eQ % 2 or mono.ep % 2 or mono.smask:
        raise NotScalable(f"{what} = {coeff}*{mono} has no monomial square root")
    return Monomial(mono.eQ // 2, mono.ep // 2, 0)


def compute_scalings(rcheck: dict, s) -> tuple[Monomial, Monomial]:
    """Scalings (kappa_sigma, kappa_C) that make (R-check, S) satisfy R1.

    X1 = sum_c S_c R^{c1}_{c1}, X2 = sum_c S_c (R^-1)^{c1}_{c1};
    kappa_sigma = (X2 / X1)^(1/2), kappa_C = (X1 X2)^(-1/2).
    """
    ctx = next(iter(rcheck.values())).ctx
    N = len(s)
    rinv = inverse_generator(rcheck)
    try:
        check_inverse(rcheck, rinv, N)
    except ModelInconsistency as exc:
        raise NotScalable(f"R-check inverse is not available: {exc}") from None
    zero = RingElem.const(ctx, 0)
    x1 = sum((s[c - 1] * rcheck[(c, 1, c, 1)] for c in range(1, N + 1)
              if (c, 1, c, 1) in rcheck), zero)
    x2 = sum((s[c - 1] * rinv[(c, 1, c, 1)] for c in range(1, N + 1)
              if (c, 1, c, 1) in rinv), zero)
    m1, m2 = x1.as_monomial(), x2.as_monomial()
    if m1 is None or m2 is None:
        raise NotScalable(f"X1 = {x1!r}, X2 = {x2!r} are not both monomials")
    (c1, e1), (c2, e2) = m1, m2
    if abs(c1) != 1 or abs(c2) != 1:
        raise NotScalable(f"X1 = {x1!r}, X2 = {x2!r} have non-unit coefficients")
    ratio = Monomial(e2.eQ - e1.eQ, e2.ep - e1.ep, 0)
    prod = Monomial(e1.eQ + e2.eQ, e1.ep + e2.ep, 0)
    ks = _sqrt_monomial(c1 * c2, ratio, "X2/X1")
    kc = monomial_inverse(_sqrt_monomial(c1 * c2, prod, "X1*X2"))
    return ks, kc


def hrho_exponents(m: int, n: int, doubled: bool = False) -> list[int]:
    """Exponent of K_i in the standard q^(h_rho) (theta = 0), i = 1..m+n."""
    if m < 1 or n < 1:
        raise ValueError("m and n must be positive")
    ex = [m - i for i in range(1, m + 1)] + [(m + 1) - i for i in range(m + 1, m + n + 1)]
    return [2 * e for e in ex] if doubled else ex


def compose_S(kmats, exponents, grading=None) -> list[Monomial]:
    """S = prod_i pi(K_i)^(2 e_i), entrywise on diagonal monomial lists.

    ``grading`` (a list of +-1) strips the grading afterwards; the result is
    then a list of (sign, Monomial) pairs.
    """
    if len(kmats) != len(exponents):
        raise ValueError(f"{len(kmats)} Cartan diagonals for {len(exponents)} exponents")
    dims = {len(k) for k in kmats}
    if len(dims) > 1:
        raise ValueError(f"Cartan diagonals have mismatched lengths {sorted(dims)}")
    if not kmats:
        raise ValueError("no Cartan diagonals supplied")
    N = dims.pop()
    out = []
    for j in range(N):
        eQ = ep = 0
        for K, e in zip(kmats, exponents):
            mono = Monomial(*K[j])
            eQ += 2 * e * mono.eQ
            ep += 2 * e * mono.ep
        out.append(Monomial(eQ, ep, 0))
    if grading is None:
        return out
    if len(grading) != N:
        raise ValueError("grading length does not match the representation")
    return [(g, mono) for g, mono in zip(grading, out)]


def load_cartan(path=None) -> dict:
    """Read a Cartan-diagonal file: {m: {"K": [[{alpha, q2}, ...], ...], "grading": [...]}}."""
    if path is None:
        text = resources.files("linksgould").joinpath("data/cartan.json").read_text()
    else:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    raw = json.loads(text)
    out = {}
    for key, rec in raw.items():
        m = int(key)
        ctx = RingContext(m, rec.get("n", 1))
        kmats = [[to_int(ctx, e["alpha"], Fraction(e["q2"], 2)) for e in diag] for diag in rec["K"]]
        out[m] = {"K": kmats, "grading": rec.get("grading"), "n": rec.get("n", 1)}
    return out


def rep_round_trip(spec: EntrySpec, ctx: RingContext) -> bool:
    x, y = spec.rep_factor()
    return to_rep(ctx, to_int(ctx, x, y)) == (x, y)


__all__ = [
    "EntrySpec", "StateModel", "TableCorruption", "ModelInconsistency", "NotScalable",
    "build", "inverse_generator", "compute_scalings", "hrho_exponents", "compose_S",
    "load_cartan", "unscaled", "pair_product", "is_identity", "entry_specs",
    "rep_round_trip", "SIGMA_COUNTS", "load_tables", "apply_corrections", "corrections",
    "compile_sigma", "compile_handle", "check_inverse", "monomial_inverse",
]
