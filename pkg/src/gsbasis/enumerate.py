"""Counting and streaming irreducible words through the forbidden-factor automaton."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Sequence

from gsbasis.errors import InvalidInput
from gsbasis.rewrite import RewriteSystem
from gsbasis.words import Word


@dataclass(frozen=True)
class GrowthSeries:
    """Counts ``c_0 .. c_L`` by length, and the total when it is known to be finite."""

    counts: tuple[int, ...]
    total: int | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "counts", tuple(self.counts))

    @property
    def max_len(self) -> int:
        return len(self.counts) - 1

    def first_difference(self, other: GrowthSeries) -> int | None:
        """Smallest length where the two censuses differ, comparing the common range."""
        for k, (a, b) in enumerate(zip(self.counts, other.counts)):
            if a != b:
                return k
        return None

    def to_text(self) -> str:
        lines = [f"{k}\t{c}" for k, c in enumerate(self.counts)]
        lines.append(f"total\t{self.total if self.total is not None else 'infinite'}")
        return "\n".join(lines) + "\n"

    def to_dict(self) -> dict:
        return {"counts": list(self.counts), "total": self.total}


@dataclass
class _Automaton:
    delta: list[list[int]]
    live: list[bool]
    order: list[int]  # generators from least to greatest


def _automaton(system: RewriteSystem) -> _Automaton:
    index = system.index
    index.build()
    live = [not e for e in index.ends]
    alphabet = system.alphabet
    order = sorted(range(alphabet.size), key=alphabet.weight)
    return _Automaton(index.delta, live, order)


def _live_graph_acyclic(auto: _Automaton) -> bool:
    # iterative DFS colouring over live states reachable from the start state
    WHITE, GREY, BLACK = 0, 1, 2
    colour = [WHITE] * len(auto.delta)
    if not auto.live[0]:
        return True
    stack = [(0, 0)]
    colour[0] = GREY
    while stack:
        s, g = stack.pop()
        if g == len(auto.order):
            colour[s] = BLACK
            continue
        stack.append((s, g + 1))
        t = auto.delta[s][auto.order[g]]
        if not auto.live[t]:
            continue
        if colour[t] == GREY:
            return False
        if colour[t] == WHITE:
            colour[t] = GREY
            stack.append((t, 0))
    return True


def growth(system: RewriteSystem, max_len: int) -> GrowthSeries:
    """Number of irreducible words of each length up to ``max_len``.

    ``total`` is filled in when no cycle is reachable among live automaton
    states, i.e. when there are only finitely many irreducible words.
    """
    if max_len < 0:
        raise InvalidInput("length bound must be nonnegative")
    auto = _automaton(system)
    acyclic = _live_graph_acyclic(auto)
    vec = {0: 1} if auto.live[0] else {}
    counts: list[int] = []
    # with an acyclic live graph the walk dies out after at most #states steps
    while vec and (acyclic or len(counts) <= max_len):
        counts.append(sum(vec.values()))
        nxt: dict[int, int] = {}
        for s, c in vec.items():
            row = auto.delta[s]
            for g in auto.order:
                t = row[g]
                if auto.live[t]:
                    nxt[t] = nxt.get(t, 0) + c
        vec = nxt
    total = sum(counts)
    counts = (counts + [0] * (max_len + 1))[:max_len + 1]
    return GrowthSeries(tuple(counts), total if acyclic else None)


def stream_irreducible(system: RewriteSystem, max_len: int, prefix: Sequence[int] = ()) -> Iterator[Word]:
    """Irreducible words of length at most ``max_len`` that start with ``prefix``.

    Words come shortest first and, within a length, lexicographically with
    smaller generators first, so the stream is sorted in deglex order.
    """
    if max_len < 0:
        raise InvalidInput("length bound must be nonnegative")
    prefix = system.alphabet.check(prefix)
    auto = _automaton(system)
    s = 0
    for g in prefix:
        s = auto.delta[s][g]
        if not auto.live[s]:
            return
    for target in range(len(prefix), max_len + 1):
        word = list(prefix)
        # stack of (state, next generator position)
        stack = [(s, 0)]
        if target == len(prefix):
            yield tuple(word)
            continue
        while stack:
            state, gi = stack[-1]
            if gi == len(auto.order):
                stack.pop()
                if len(word) > len(prefix):
                    word.pop()
                continue
            stack[-1] = (state, gi + 1)
            g = auto.order[gi]
            t = auto.delta[state][g]
            if not auto.live[t]:
                continue
            word.append(g)
            if len(word) == target:
                yield tuple(word)
                word.pop()
            else:
                stack.append((t, 0))


def brute_force_growth(system: RewriteSystem, max_len: int) -> tuple[int, ...]:
    """Generate-and-filter census; only for small alphabets and lengths."""
    counts = [1]
    level: list[Word] = [()]
    n = system.alphabet.size
    for _ in range(max_len):
        nxt = []
        for w in level:
            for g in range(n):
                v = w + (g,)
                if system.is_irreducible(v):
                    nxt.append(v)
        counts.append(len(nxt))
        level = nxt
    return tuple(counts)


# -- displayed block families in affine A_4 ------------------------------------

_A4_BLOCK_FAMILIES: dict[str, tuple[tuple[int, ...], tuple[int, ...] | None, tuple[int, ...] | None,
                                    tuple[tuple[int, ...], ...]]] = {
    # name: (repeated block, middle block, second repeated block, tails)
    "rotation": ((0, 1, 2, 3, 4), None, None, ((), (0,), (0, 1), (0, 1, 2), (0, 1, 2, 3))),
    "flag": ((0, 4, 1, 2, 3), None, None, ((), (0,), (0, 4), (0, 4, 1), (0, 4, 1, 2))),
    "flag-turn": ((0, 4, 1, 2, 3), (4, 0, 4), (1, 2, 3, 4, 0),
                  ((), (1,), (1, 2), (1, 2, 3), (1, 2, 3, 4))),
}


@dataclass(frozen=True)
class BlockWord:
    family: str
    exponents: tuple[int, ...]
    tail: Word
    word: Word
    irreducible: bool
    first_factor: tuple[int, int] | None = None  # (position, rule id) of the leftmost lhs


@dataclass
class BlockReport:
    words: list[BlockWord] = field(default_factory=list)
    # (word, observed reducible, first factor) for words that must be reducible
    negatives: list[tuple[Word, bool, tuple[int, int] | None]] = field(default_factory=list)

    @property
    def all_irreducible(self) -> bool:
        return all(b.irreducible for b in self.words)

    @property
    def negatives_hold(self) -> bool:
        return all(observed for _, observed, _ in self.negatives)

    @property
    def ok(self) -> bool:
        return self.all_irreducible and self.negatives_hold

    def failures(self) -> list[BlockWord]:
        return [b for b in self.words if not b.irreducible]


def block_family_words(bound: int) -> list[tuple[str, tuple[int, ...], Word, Word]]:
    """Expand the displayed affine ``A_4`` families for exponents ``0 .. bound``.

    Letters are labels ``0..4``, which are also the indices of the
    ``affine-a:4`` presets.
    """
    out = []
    for name, (block, middle, block2, tails) in _A4_BLOCK_FAMILIES.items():
        for n in range(bound + 1):
            if middle is None:
                for tail in tails:
                    out.append((name, (n,), tail, block * n + tail))
            else:
                for p in range(bound + 1):
                    for tail in tails:
                        out.append((name, (n, p), tail, block * n + middle + block2 * p + tail))
    return out


# words whose reducibility is part of the displayed analysis
A4_REDUCIBLE = (
    (0, 4, 1, 2, 3, 4, 0, 4, 3),
    (0, 1, 2, 3, 4, 0, 4, 1, 2, 3),
)


def check_block_words(system: RewriteSystem, n: int = 4, bound: int = 3) -> BlockReport:
    """Check the displayed block families against a completed affine ``A_4`` basis.

    ``system`` must be over the labels ``s0..s4`` (either ranking works for
    the membership test, but the families are stated for ``s0 > ... > s4``).
    """
    if n != 4:
        raise InvalidInput("block families are only displayed for affine A_4")
    if system.alphabet.size != 5:
        raise InvalidInput("block check needs a system over five generators")
    if bound < 0:
        raise InvalidInput("exponent bound must be nonnegative")
    report = BlockReport()
    for name, exps, tail, w in block_family_words(bound):
        hits = system.matches(w)
        report.words.append(BlockWord(name, exps, tail, w, not hits, hits[0] if hits else None))
    for w in A4_REDUCIBLE:
        hits = system.matches(w)
        report.negatives.append((w, bool(hits), hits[0] if hits else None))
    return report
