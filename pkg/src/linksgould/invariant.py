"""LG^m of a braid closure: braid -> operator -> (1,1)-tangle -> scalar -> polynomial."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .braid import BraidWord, components, mirror
from .ring import RingElem, to_li
from .statemodel import build
from .tensor import SparseOperator, apply_word, close_to_tangle, extract_scalar

SYMMETRIC = "symmetric"
ANTISYMMETRIC = "antisymmetric"
NEITHER = "neither"


def classify(terms) -> str:
    """Behaviour of a term list under p -> 1/p.  The zero polynomial counts as symmetric."""
    d = {(e, ep): c for e, ep, c in terms}
    if all(d.get((e, -ep)) == c for (e, ep), c in d.items()):
        return SYMMETRIC
    if all(d.get((e, -ep)) == -c for (e, ep), c in d.items()):
        return ANTISYMMETRIC
    return NEITHER


def sort_terms(terms) -> list:
    return sorted(((e, ep, c) for e, ep, c in terms if c), key=lambda t: (t[1], t[0]))


@dataclass(frozen=True)
class InvariantResult:
    """A computed LG^m; ``terms`` are (q exponent, p exponent, coeff) sorted by (p, q)."""

    m: int
    word: BraidWord
    components: int
    terms: tuple
    symmetry: str
    link: str | None = None
    open_strand: int | None = None
    scalar: RingElem | None = field(default=None, compare=False, repr=False)

    @property
    def symmetric(self) -> str:
        return self.symmetry

    def is_zero(self) -> bool:
        return not self.terms

    def mirrored_terms(self) -> list:
        """Terms with both exponents negated: the value on the mirror image."""
        return sort_terms((-e, -ep, c) for e, ep, c in self.terms)

    def as_dict(self) -> dict:
        return {
            "m": self.m,
            "input": {"letters": list(self.word.letters), "strands": self.word.strands},
            "link": self.link,
            "components": self.components,
            "terms": [{"q": e, "p": ep, "c": c} for e, ep, c in self.terms],
            "symmetry": self.symmetry,
            "paper": render_paper(self),
        }


def tangle_operator(m: int, word: BraidWord) -> SparseOperator:
    model = build(m)
    return apply_word(SparseOperator.identity(model, word.strands), word.letters, model)


def compute(m: int, word: BraidWord, open_strand: int | None = None,
            link: str | None = None) -> InvariantResult:
    model = build(m)
    z = apply_word(SparseOperator.identity(model, word.strands), word.letters, model)
    t = close_to_tangle(z, model, open_strand)
    lam = extract_scalar(t, model.N, model.ctx)
    terms = tuple(to_li(lam))
    return InvariantResult(
        m=m, word=word, components=components(word), terms=terms,
        symmetry=classify(terms), link=link,
        open_strand=open_strand if open_strand is not None else word.strands,
        scalar=lam,
    )


def compute_mirror(m: int, word: BraidWord, open_strand: int | None = None) -> InvariantResult:
    return compute(m, mirror(word), open_strand)


# rendering


def _mono(c: int, e: int) -> str:
    if e == 0:
        return str(c)
    q = "q" if e == 1 else f"q^{e}"
    if c == 1:
        return q
    if c == -1:
        return "-" + q
    return f"{c}{q}"


def _qlist(poly: dict) -> tuple[str, str]:
    """(sign, body) with the sign pulled out when every coefficient agrees."""
    items = sorted(poly.items())
    sign = "+"
    if all(c < 0 for _, c in items):
        sign = "-"
        items = [(e, -c) for e, c in items]
    return sign, ", ".join(_mono(c, e) for e, c in items)


def render_paper_flagged(r: InvariantResult) -> tuple[str, bool]:
    """Grouped rendering and whether it had to fall back to a flat listing."""
    if not r.terms:
        return "0", False
    groups: dict[int, dict[int, int]] = {}
    for e, ep, c in r.terms:
        if ep <= 0:
            groups.setdefault(-ep, {})[e] = c
    all_even = all(ep % 2 == 0 for _, ep, _ in r.terms)
    var, unit = ("P", 2) if all_even else ("p", 1)
    sym = r.symmetry
    if sym == NEITHER:
        flat = ", ".join(_flat(c, e, ep) for e, ep, c in r.terms)
        return flat, True
    parts = []
    for k in sorted(groups):
        sign, body = _qlist(groups[k])
        if k == 0:
            parts.append(f"{sign} ({body})")
            continue
        j = k // unit
        op = "+" if sym == SYMMETRIC else "-"
        parts.append(f"{sign} ({var}^-{j}{op}{var}^{j})({body})")
    return ", ".join(parts), False


def _flat(c: int, e: int, ep: int) -> str:
    f = []
    if e:
        f.append("q" if e == 1 else f"q^{e}")
    if ep:
        f.append("p" if ep == 1 else f"p^{ep}")
    if not f:
        return str(c)
    body = "*".join(f)
    return body if c == 1 else ("-" + body if c == -1 else f"{c}*{body}")


def render_paper(r: InvariantResult) -> str:
    """ASCII rendering, grouped by |p exponent| as s_0 (A_0), s_1 (P^-1+P^1)(A_1), ..."""
    return render_paper_flagged(r)[0]


def render_machine(r: InvariantResult) -> str:
    return json.dumps(r.as_dict(), indent=2)


def result_from_json(text: str) -> InvariantResult:
    """Inverse of :func:`render_machine` (the scalar is not restored)."""
    d = json.loads(text)
    word = BraidWord(d["input"]["strands"], tuple(d["input"]["letters"]))
    terms = tuple((t["q"], t["p"], t["c"]) for t in d["terms"])
    return InvariantResult(m=d["m"], word=word, components=d["components"], terms=terms,
                           symmetry=d["symmetry"], link=d["link"])


__all__ = [
    "InvariantResult", "compute", "compute_mirror", "classify", "sort_terms",
    "render_paper", "render_paper_flagged", "render_machine", "result_from_json",
    "tangle_operator", "SYMMETRIC", "ANTISYMMETRIC", "NEITHER",
]
