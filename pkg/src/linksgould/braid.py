"""Braid words, their closures' component counts, and the named-link table."""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources


class BraidError(ValueError):
    """Bad braid text, a letter out of range, or an unknown link name."""


@dataclass(frozen=True)
class BraidWord:
    """``strands`` strands and signed Artin letters; +i is sigma_i, -i its inverse."""

    strands: int
    letters: tuple = ()

    def __post_init__(self):
        if self.strands < 1:
            raise BraidError("a braid needs at least one strand")
        letters = tuple(self.letters)
        for e in letters:
            if not isinstance(e, int) or isinstance(e, bool):
                raise BraidError(f"letter {e!r} is not an integer")
            if e == 0:
                raise BraidError("0 is not a braid letter")
            if abs(e) > self.strands - 1:
                raise BraidError(f"letter {e} needs {abs(e) + 1} strands, have {self.strands}")
        object.__setattr__(self, "letters", letters)

    def __len__(self):
        return len(self.letters)

    def __str__(self):
        return render(self)


@dataclass(frozen=True)
class LinkEntry:
    name: str
    word: BraidWord
    components: int
    note: str = ""


def parse(text: str, strands: int | None = None) -> BraidWord:
    """Whitespace (or comma) separated signed integers, e.g. ``"1 -2 1 -2"``."""
    letters = []
    for tok in text.replace(",", " ").split():
        try:
            letters.append(int(tok))
        except ValueError:
            raise BraidError(f"cannot read braid letter {tok!r}") from None
    if any(e == 0 for e in letters):
        raise BraidError("0 is not a braid letter")
    if strands is None:
        strands = 1 + max((abs(e) for e in letters), default=0)
    return BraidWord(strands, tuple(letters))


def render(word: BraidWord) -> str:
    return " ".join(str(e) for e in word.letters)


def permutation(word: BraidWord) -> list[int]:
    """Where each strand position ends up, 0-based."""
    perm = list(range(word.strands))
    for e in word.letters:
        i = abs(e) - 1
        perm[i], perm[i + 1] = perm[i + 1], perm[i]
    return perm


def components(word: BraidWord) -> int:
    perm = permutation(word)
    seen = [False] * len(perm)
    count = 0
    for start in range(len(perm)):
        if seen[start]:
            continue
        count += 1
        x = start
        while not seen[x]:
            seen[x] = True
            x = perm[x]
    return count


def component_of_strands(word: BraidWord) -> list[int]:
    """Component label (0-based, in order of first strand) for each strand."""
    perm = permutation(word)
    label = [-1] * len(perm)
    nxt = 0
    for start in range(len(perm)):
        if label[start] >= 0:
            continue
        x = start
        while label[x] < 0:
            label[x] = nxt
            x = perm[x]
        nxt += 1
    return label


def mirror(word: BraidWord) -> BraidWord:
    return BraidWord(word.strands, tuple(-e for e in word.letters))


def insert_r2(word: BraidWord, at: int, gen: int) -> BraidWord:
    """Insert sigma_gen sigma_gen^-1 (or the reverse, for gen < 0) before position ``at``."""
    if not 0 <= at <= len(word.letters):
        raise BraidError(f"insertion point {at} out of range")
    ls = list(word.letters)
    ls[at:at] = [gen, -gen]
    return BraidWord(word.strands, tuple(ls))


def add_curl(word: BraidWord, positive: bool = True) -> BraidWord:
    """Add a strand on the right and a kink sigma_w^(+-1) joining it to the old last strand."""
    w = word.strands
    return BraidWord(w + 1, word.letters + ((w if positive else -w),))


def load_links(path=None) -> dict[str, LinkEntry]:
    """Read a link table; ``None`` means the shipped one."""
    if path is None:
        text = resources.files("linksgould").joinpath("data/links.json").read_text()
    else:
        try:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise BraidError(f"cannot read link table {path}: {exc}") from None
    try:
        records = json.loads(text)
    except json.JSONDecodeError as exc:
        raise BraidError(f"link table is not valid JSON: {exc}") from None
    if not isinstance(records, list):
        raise BraidError("link table must be a JSON array")
    out = {}
    for rec in records:
        try:
            name = rec["name"]
            word = BraidWord(int(rec["strands"]), tuple(rec["letters"]))
            comps = int(rec["components"])
        except (KeyError, TypeError) as exc:
            raise BraidError(f"bad link record {rec!r}: {exc}") from None
        if components(word) != comps:
            raise BraidError(f"{name}: closure has {components(word)} components, table says {comps}")
        if name in out:
            raise BraidError(f"link {name} listed twice")
        out[name] = LinkEntry(name, word, comps, rec.get("note", ""))
    return out


def link_lookup(name: str, table=None) -> LinkEntry:
    links = load_links(table)
    try:
        return links[name]
    except KeyError:
        raise BraidError(f"unknown link {name!r}; known: {', '.join(sorted(links))}") from None


__all__ = [
    "BraidWord", "LinkEntry", "BraidError", "parse", "render", "components",
    "component_of_strands", "permutation", "mirror", "insert_r2", "add_curl",
    "load_links", "link_lookup",
]
