"""Alphabets, words, the degree-lexicographic order and word ambiguities."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from gsbasis.errors import InvalidInput

Word = tuple[int, ...]

EMPTY: Word = ()


class Order(enum.IntEnum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


@dataclass(frozen=True)
class Alphabet:
    """A finite generating set with display names and a strict ranking.

    ``ranking[0]`` is the greatest generator.  Generators themselves are the
    dense indices ``0 .. size-1``; names are only used for text I/O.
    """

    names: tuple[str, ...]
    ranking: tuple[int, ...]
    _weight: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        names = tuple(self.names)
        ranking = tuple(self.ranking)
        object.__setattr__(self, "names", names)
        object.__setattr__(self, "ranking", ranking)
        if not names:
            raise InvalidInput("alphabet must have at least one generator")
        if any(not n or any(c.isspace() for c in n) for n in names):
            raise InvalidInput(f"generator names must be nonempty and without whitespace: {names!r}")
        if len(set(names)) != len(names):
            raise InvalidInput(f"generator names must be distinct: {names!r}")
        if sorted(ranking) != list(range(len(names))):
            raise InvalidInput(f"ranking {ranking!r} is not a permutation of 0..{len(names) - 1}")
        weight = [0] * len(names)
        for pos, g in enumerate(ranking):
            weight[g] = len(names) - pos
        object.__setattr__(self, "_weight", tuple(weight))

    @classmethod
    def ascending(cls, names: Sequence[str]) -> Alphabet:
        """Alphabet where a higher index is a greater generator."""
        return cls(tuple(names), tuple(range(len(names) - 1, -1, -1)))

    @classmethod
    def descending(cls, names: Sequence[str]) -> Alphabet:
        """Alphabet where index 0 is the greatest generator."""
        return cls(tuple(names), tuple(range(len(names))))

    @property
    def size(self) -> int:
        return len(self.names)

    def weight(self, g: int) -> int:
        """Larger weight means greater generator."""
        return self._weight[g]

    def greater(self, a: int, b: int) -> bool:
        return self._weight[a] > self._weight[b]

    def key(self, w: Word) -> tuple[int, tuple[int, ...]]:
        """Sort key realising deglex: ``key(u) < key(v)`` iff ``u < v``."""
        wt = self._weight
        return (len(w), tuple(wt[g] for g in w))

    def check(self, w: Iterable[int]) -> Word:
        w = tuple(w)
        n = len(self.names)
        for g in w:
            if not isinstance(g, int) or not 0 <= g < n:
                raise InvalidInput(f"letter {g!r} is not a generator index below {n}")
        return w

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise InvalidInput(f"unknown generator {name!r}") from None

    def parse(self, text: str) -> Word:
        """Parse whitespace separated generator names; ``1`` is the empty word."""
        tokens = text.split()
        if tokens == ["1"] and "1" not in self.names:
            return EMPTY
        return tuple(self.index(t) for t in tokens)

    def format(self, w: Word) -> str:
        return " ".join(self.names[g] for g in w) if w else "1"

    def relabel(self, perm: Sequence[int]) -> Alphabet:
        """Alphabet whose generator ``perm[g]`` plays the role of ``g`` here."""
        names = [""] * self.size
        for g, h in enumerate(perm):
            names[h] = self.names[g]
        return Alphabet(tuple(names), tuple(perm[g] for g in self.ranking))


def deglex_compare(u: Sequence[int], v: Sequence[int], alphabet: Alphabet) -> Order:
    u = alphabet.check(u)
    v = alphabet.check(v)
    ku, kv = alphabet.key(u), alphabet.key(v)
    if ku == kv:
        return Order.EQUAL
    return Order.GREATER if ku > kv else Order.LESS


class Kind(enum.Enum):
    INTERSECTION = "intersection"
    INCLUSION = "inclusion"


@dataclass(frozen=True)
class Ambiguity:
    """Where two leading words meet.

    For an intersection ``witness = u + right_margin = left_margin + v``; for
    an inclusion ``witness = u = left_margin + v + right_margin``.
    """

    kind: Kind
    witness: Word
    left_margin: Word
    right_margin: Word


def find_ambiguities(u: Sequence[int], v: Sequence[int]) -> list[Ambiguity]:
    """All overlaps of ``u`` followed by ``v`` and all occurrences of ``v`` in ``u``.

    Results are ordered by the position in ``u`` where ``v`` starts.  The
    in-place inclusion of a word in itself is skipped.
    """
    u, v = tuple(u), tuple(v)
    if not u or not v:
        raise InvalidInput("ambiguities are only defined for nonempty words")
    out = []
    nu, nv = len(u), len(v)
    for p in range(nu):
        if p + nv <= nu:
            if u[p:p + nv] == v and not (p == 0 and nu == nv):
                out.append(Ambiguity(Kind.INCLUSION, u, u[:p], u[p + nv:]))
        elif p > 0:
            k = nu - p
            if u[p:] == v[:k]:
                out.append(Ambiguity(Kind.INTERSECTION, u + v[k:], u[:p], v[k:]))
    return out


def is_factor(small: Word, big: Word) -> bool:
    n = len(small)
    if n == 0:
        return True
    return any(big[i:i + n] == small for i in range(len(big) - n + 1))
