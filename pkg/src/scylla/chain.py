"""Free products of cyclic groups, chains, and the positive-power normal form.

A group is written as a sequence of ``<symbol><order>`` tokens, e.g. ``a3b0``
for Z/3 * Z.  Order 0 means an infinite factor.  Words use lower-case letters
for generators and upper-case letters for their inverses.

Chains are normalized before anything else happens to them: every word is
cyclically reduced, finite-factor syllables are rewritten with a positive
exponent in ``[1, o - 1]``, words lying inside a single finite factor (finite
abelian loops) are dropped, and words equal to the identity are dropped.
"""
from __future__ import annotations

import re
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from functools import cached_property

__all__ = [
    "ChainError",
    "Factor",
    "GroupSpec",
    "Letter",
    "Chain",
    "parse_group",
    "parse_chain",
    "next_letter",
    "prev_letter",
]

_GROUP_RE = re.compile(r"(?:[a-z][0-9]+)+")
_TOKEN_RE = re.compile(r"([a-z])([0-9]+)")
_WORD_RE = re.compile(r"[a-zA-Z]+")


class ChainError(ValueError):
    """An input group or chain breaks one of the validation rules."""


@dataclass(frozen=True)
class Factor:
    symbol: str
    order: int

    @property
    def is_finite(self) -> bool:
        return self.order > 0

    def __str__(self) -> str:
        return f"{self.symbol}{self.order}"


@dataclass(frozen=True)
class GroupSpec:
    """Ordered free product of cyclic factors."""

    factors: tuple[Factor, ...]

    def __post_init__(self):
        if not self.factors:
            raise ChainError("empty group specification")
        seen = set()
        for f in self.factors:
            if not (len(f.symbol) == 1 and f.symbol.islower()):
                raise ChainError(f"bad generator symbol {f.symbol!r}")
            if f.symbol in seen:
                raise ChainError(f"duplicate generator symbol {f.symbol!r}")
            if f.order == 1 or f.order < 0:
                raise ChainError(
                    f"order of {f.symbol!r} must be 0 (infinite) or at least 2, got {f.order}"
                )
            seen.add(f.symbol)

    @classmethod
    def from_orders(cls, orders: dict[str, int] | Iterable[tuple[str, int]]) -> GroupSpec:
        items = orders.items() if isinstance(orders, dict) else orders
        return cls(tuple(Factor(s, int(o)) for s, o in items))

    @property
    def symbols(self) -> tuple[str, ...]:
        return tuple(f.symbol for f in self.factors)

    @property
    def orders(self) -> tuple[int, ...]:
        return tuple(f.order for f in self.factors)

    def index(self, symbol: str) -> int:
        for j, f in enumerate(self.factors):
            if f.symbol == symbol:
                return j
        raise ChainError(f"unknown generator {symbol!r} for group {self}")

    def with_orders(self, **orders: int) -> GroupSpec:
        return GroupSpec(
            tuple(Factor(f.symbol, orders.get(f.symbol, f.order)) for f in self.factors)
        )

    def free_cover(self) -> GroupSpec:
        """The free group on the same generators (every order set to 0)."""
        return GroupSpec(tuple(Factor(f.symbol, 0) for f in self.factors))

    def __str__(self) -> str:
        return "".join(str(f) for f in self.factors)


def parse_group(spec_text: str) -> GroupSpec:
    """Parse ``"a3b0"``-style group text."""
    text = spec_text.strip()
    if not text:
        raise ChainError("empty group specification")
    if not _GROUP_RE.fullmatch(text):
        raise ChainError(f"malformed group specification {spec_text!r}; expected e.g. 'a3b0'")
    return GroupSpec(tuple(Factor(s, int(o)) for s, o in _TOKEN_RE.findall(text)))


@dataclass(frozen=True, order=True)
class Letter:
    """One occurrence of a generator (or its inverse) inside a chain."""

    index: int
    word: int = field(compare=False)
    position: int = field(compare=False)
    factor: int = field(compare=False)
    sign: int = field(compare=False)
    symbol: str = field(compare=False)

    @property
    def char(self) -> str:
        return self.symbol if self.sign > 0 else self.symbol.upper()

    def __str__(self) -> str:
        return f"{self.char}_{self.word},{self.position}"


@dataclass(frozen=True)
class Chain:
    """A normalized chain: words of letters with global indices.

    Letters are numbered word by word, so ``letters[k].index == k``.
    ``words[i]`` holds the global indices of the letters of word ``i``.
    """

    group: GroupSpec
    letters: tuple[Letter, ...]
    words: tuple[tuple[int, ...], ...]

    @cached_property
    def _next(self) -> tuple[int, ...]:
        nxt = [0] * len(self.letters)
        for w in self.words:
            for j, g in enumerate(w):
                nxt[g] = w[(j + 1) % len(w)]
        return tuple(nxt)

    @cached_property
    def _prev(self) -> tuple[int, ...]:
        prv = [0] * len(self.letters)
        for g, h in enumerate(self._next):
            prv[h] = g
        return tuple(prv)

    def next(self, x: int) -> int:
        return self._next[x]

    def prev(self, x: int) -> int:
        return self._prev[x]

    def letter(self, word: int, position: int) -> Letter:
        w = self.words[word]
        return self.letters[w[position % len(w)]]

    def first_letter(self, word: int) -> int:
        return self.words[word][0]

    def order(self, x: int) -> int:
        """Order of the factor containing letter ``x`` (0 if infinite)."""
        return self.group.factors[self.letters[x].factor].order

    def is_inverse_pair(self, x: int, y: int) -> bool:
        lx, ly = self.letters[x], self.letters[y]
        return lx.factor == ly.factor and lx.sign == -ly.sign

    @property
    def total_length(self) -> int:
        return len(self.letters)

    @cached_property
    def factor_counts(self) -> tuple[int, ...]:
        counts = [0] * len(self.group.factors)
        for l in self.letters:
            counts[l.factor] += 1
        return tuple(counts)

    @cached_property
    def letters_by_factor(self) -> tuple[tuple[int, ...], ...]:
        out: list[list[int]] = [[] for _ in self.group.factors]
        for l in self.letters:
            out[l.factor].append(l.index)
        return tuple(tuple(v) for v in out)

    @property
    def is_empty(self) -> bool:
        return not self.words

    def word_text(self, i: int) -> str:
        return "".join(self.letters[g].char for g in self.words[i])

    def word_texts(self) -> list[str]:
        return [self.word_text(i) for i in range(len(self.words))]

    def __len__(self) -> int:
        return len(self.letters)

    def __str__(self) -> str:
        return "+".join(self.word_texts())


def next_letter(chain: Chain, x: Letter) -> Letter:
    return chain.letters[chain.next(x.index)]


def prev_letter(chain: Chain, x: Letter) -> Letter:
    return chain.letters[chain.prev(x.index)]


def _syllables(group: GroupSpec, text: str) -> list[list[int]]:
    """Read a word into a freely reduced list of [factor, exponent] syllables."""
    syl: list[list[int]] = []
    for ch in text:
        j = group.index(ch.lower())
        e = 1 if ch.islower() else -1
        if syl and syl[-1][0] == j:
            syl[-1][1] += e
        else:
            syl.append([j, e])
        o = group.factors[j].order
        if o:
            syl[-1][1] %= o
        if syl[-1][1] == 0:
            syl.pop()
    return syl


def _cyclic_reduce(group: GroupSpec, syl: list[list[int]]) -> list[list[int]]:
    while len(syl) >= 2 and syl[0][0] == syl[-1][0]:
        j, e = syl.pop()
        syl[0][1] += e
        o = group.factors[j].order
        if o:
            syl[0][1] %= o
        if syl[0][1] == 0:
            syl.pop(0)
    return syl


def _split_words(word_texts: str | Sequence[str]) -> list[str]:
    if isinstance(word_texts, str):
        word_texts = [word_texts]
    words: list[str] = []
    for t in word_texts:
        words.extend(p.strip() for p in t.split("+"))
    return words


def parse_chain(group: GroupSpec, word_texts: str | Sequence[str]) -> Chain:
    """Parse words (or one ``'+'``-joined string) and normalize them.

    Raises ChainError for unknown symbols, malformed words, or a nonzero
    exponent sum in some infinite factor.
    """
    words = _split_words(word_texts)
    if not words:
        raise ChainError("no words given")
    normalized: list[list[list[int]]] = []
    sums = [0] * len(group.factors)
    for text in words:
        if not _WORD_RE.fullmatch(text):
            raise ChainError(f"malformed word {text!r}; use letters only, upper case = inverse")
        syl = _cyclic_reduce(group, _syllables(group, text))
        for j, e in syl:
            if not group.factors[j].is_finite:
                sums[j] += e
        if not syl:
            continue
        if len(syl) == 1 and group.factors[syl[0][0]].is_finite:
            continue  # finite abelian loop
        normalized.append(syl)
    for j, s in enumerate(sums):
        if s != 0:
            raise ChainError(
                f"nonzero exponent sum in infinite factor {group.factors[j].symbol!r} "
                f"({s}); the chain is not homologically trivial"
            )

    letters: list[Letter] = []
    index_words: list[tuple[int, ...]] = []
    for i, syl in enumerate(normalized):
        idx: list[int] = []
        pos = 0
        for j, e in syl:
            sign = 1 if e > 0 else -1
            for _ in range(abs(e)):
                g = len(letters)
                letters.append(Letter(g, i, pos, j, sign, group.factors[j].symbol))
                idx.append(g)
                pos += 1
        index_words.append(tuple(idx))
    return Chain(group, tuple(letters), tuple(index_words))
