"""Exact checks of the state models and of computed invariants.

Every check returns a :class:`CheckReport` instead of raising, so a suite can
run to the end and list all failures.  Checks that build operators accept an
optional ``model`` to run against a modified :class:`StateModel`.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources

from .braid import BraidError, load_links
from .invariant import ANTISYMMETRIC, SYMMETRIC, InvariantResult, compute, sort_terms
from .ring import RingElem
from .statemodel import StateModel, build, is_identity, pair_product
from .tensor import SparseOperator, apply_crossing, apply_word, close_to_tangle

CHECKS = ("qybe", "matveev", "r1", "handles", "symmetry")


@dataclass(frozen=True)
class CheckReport:
    name: str
    m: int
    passed: bool
    detail: str = ""
    note: str = ""

    def __post_init__(self):
        # detail is the first failing entry, so it is present exactly on failure
        if self.passed == bool(self.detail):
            raise ValueError("detail must be given exactly when the check fails")

    def __str__(self):
        status = "PASS" if self.passed else "FAIL"
        tail = f": {self.detail or self.note}" if self.detail or self.note else ""
        return f"[{status}] {self.name} (m={self.m}){tail}"


def _model(m: int, model: StateModel | None) -> StateModel:
    return model if model is not None else build(m)


def _word_op(model: StateModel, letters, w: int) -> SparseOperator:
    return apply_word(SparseOperator.identity(model, w), letters, model)


def check_qybe(m: int, model: StateModel | None = None) -> CheckReport:
    """sigma_1 sigma_2 sigma_1 == sigma_2 sigma_1 sigma_2 on three strands."""
    model = _model(m, model)
    lhs = _word_op(model, (1, 2, 1), 3)
    rhs = _word_op(model, (2, 1, 2), 3)
    diff = lhs.first_difference(rhs)
    if diff is None:
        return CheckReport("qybe", m, True)
    row, col = diff
    return CheckReport("qybe", m, False,
                       f"triple products differ at row {row}, column {col}: "
                       f"{lhs.entry(row, col)!r} vs {rhs.entry(row, col)!r}")


def check_matveev(m: int, model: StateModel | None = None) -> CheckReport:
    """Passes when sigma_1 sigma_2^-1 sigma_1 and sigma_2 sigma_1^-1 sigma_2 differ.

    Equality would force the invariant to be trivial on knots; difference is
    only evidence of non-triviality, not a proof.
    """
    model = _model(m, model)
    lhs = _word_op(model, (1, -2, 1), 3)
    rhs = _word_op(model, (2, -1, 2), 3)
    diff = lhs.first_difference(rhs)
    if diff is not None:
        return CheckReport("matveev", m, True,
                           note=f"operators differ (first at row {diff[0]}, column {diff[1]}); "
                           "this is a sufficiency test only")
    return CheckReport("matveev", m, False,
                       "the delta-nabla operators coincide, so the invariant is trivial on knots")


def _identity_map_mismatch(t: dict, N: int):
    for a in range(1, N + 1):
        for b in range(1, N + 1):
            v = t.get((a, b))
            want = 1 if a == b else 0
            if v is None:
                if want:
                    return (a, b), 0
            elif v != want:
                return (a, b), v
    return None


def check_r1(m: int, model: StateModel | None = None) -> CheckReport:
    """Closing the left strand of a single positive or negative curl gives the identity."""
    model = _model(m, model)
    ident = SparseOperator.identity(model, 2)
    for positive, label in ((True, "sigma"), (False, "sigma-bar")):
        t = close_to_tangle(apply_crossing(ident, 1, positive, model), model, 2)
        bad = _identity_map_mismatch(t, model.N)
        if bad is not None:
            (a, b), v = bad
            return CheckReport("r1", m, False,
                               f"sum_c C_c {label}^(c{a})_(c{b}) = {v!r}, expected {int(a == b)}")
    return CheckReport("r1", m, True)


def check_handles(m: int, model: StateModel | None = None) -> CheckReport:
    """tr C = 0, C C-bar = I and sigma sigma-bar = sigma-bar sigma = I."""
    model = _model(m, model)
    ctx = model.ctx
    tr = sum(model.C, RingElem.const(ctx, 0))
    if tr:
        return CheckReport("handles", m, False, f"tr C = {tr!r}")
    for a, (c, ci) in enumerate(zip(model.C, model.C_inv), 1):
        prod = c * ci
        if not prod.is_one():
            return CheckReport("handles", m, False, f"(C C-bar)_{a} = {prod!r}")
    N = model.N
    for x, y, label in ((model.sigma, model.sigma_inv, "sigma sigma-bar"),
                        (model.sigma_inv, model.sigma, "sigma-bar sigma")):
        ok, info = is_identity(pair_product(x, y))
        if not ok:
            return CheckReport("handles", m, False, f"{label} differs from I at {info}")
        if len(info) != N * N:
            return CheckReport("handles", m, False, f"{label} has zero diagonal entries")
    return CheckReport("handles", m, True)


def expected_symmetry(m: int, comps: int) -> str | None:
    """Parity rule for p -> 1/p: knots symmetric; 2 components antisymmetric iff m odd."""
    if comps == 1:
        return SYMMETRIC
    if comps == 2:
        return ANTISYMMETRIC if m % 2 else SYMMETRIC
    return None


def check_symmetry(r: InvariantResult) -> CheckReport:
    want = expected_symmetry(r.m, r.components)
    name = f"symmetry[{r.link or ' '.join(map(str, r.word.letters)) or 'identity'}]"
    if want is None:
        return CheckReport(name, r.m, True,
                           note=f"{r.components} components: {r.symmetry} (no rule, informational)")
    if r.is_zero() or r.symmetry == want:
        return CheckReport(name, r.m, True)
    return CheckReport(name, r.m, False,
                       f"{r.components}-component result is {r.symmetry}, expected {want}")


def run_checks(m: int, names=CHECKS, model: StateModel | None = None) -> list[CheckReport]:
    """The model-level checks; ``symmetry`` runs over the golden corpus at this m."""
    out = []
    fns = {"qybe": check_qybe, "matveev": check_matveev, "r1": check_r1,
           "handles": check_handles}
    for name in names:
        if name == "symmetry":
            for entry in golden_entries(m):
                try:
                    link = load_links()[entry["link"]]
                except KeyError:
                    continue
                out.append(check_symmetry(compute(m, link.word, link=link.name)))
        elif name in fns:
            out.append(fns[name](m, model))
        else:
            raise ValueError(f"unknown check {name!r}; choose from {', '.join(CHECKS)}")
    return out


# golden corpus


def load_golden(path=None) -> list[dict]:
    if path is None:
        text = resources.files("linksgould").joinpath("data/golden.json").read_text()
    else:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    return json.loads(text)


def golden_entries(m: int | None = None, path=None) -> list[dict]:
    return [g for g in load_golden(path) if m is None or g["m"] == m]


def golden_terms(m: int, link: str, path=None) -> list[tuple]:
    for g in load_golden(path):
        if g["m"] == m and g["link"] == link:
            return sort_terms(tuple(t) for t in g["terms"])
    raise KeyError(f"no golden value for LG^{m} of {link}")


def _first_term_diff(got, want) -> str:
    g = {(e, ep): c for e, ep, c in got}
    w = {(e, ep): c for e, ep, c in want}
    for k in sorted(set(g) | set(w), key=lambda k: (k[1], k[0])):
        if g.get(k, 0) != w.get(k, 0):
            return f"q^{k[0]} p^{k[1]}: got {g.get(k, 0)}, expected {w.get(k, 0)}"
    return ""


def check_golden(m: int, link: str, table=None, golden=None) -> tuple[CheckReport, InvariantResult | None]:
    name = f"golden[{link}]"
    try:
        entry = load_links(table)[link]
    except KeyError:
        return CheckReport(name, m, False, f"link {link!r} is not in the link table"), None
    except BraidError as exc:
        return CheckReport(name, m, False, str(exc)), None
    try:
        want = golden_terms(m, link, golden)
    except KeyError as exc:
        return CheckReport(name, m, False, str(exc.args[0])), None
    r = compute(m, entry.word, link=link)
    got = list(r.terms)
    if got == want:
        return CheckReport(name, m, True), r
    return CheckReport(name, m, False, _first_term_diff(got, want)), r


def run_golden(m: int, table=None, golden=None, links=None) -> list[CheckReport]:
    """Compare every golden entry at this m (or only ``links``) with a fresh computation."""
    names = [g["link"] for g in golden_entries(m, golden)]
    if links is not None:
        names = list(links)
    return [check_golden(m, name, table, golden)[0] for name in names]


def all_passed(reports) -> bool:
    return all(r.passed for r in reports)


__all__ = [
    "CheckReport", "CHECKS", "check_qybe", "check_matveev", "check_r1", "check_handles",
    "check_symmetry", "expected_symmetry", "run_checks", "load_golden", "golden_entries",
    "golden_terms", "check_golden", "run_golden", "all_passed",
]
