"""Brute-force group models and Cayley-graph breadth-first search.

Elements are stored as one-line notation tuples and multiplied as maps,
``(x * y)(i) = x(y(i))``, so a word evaluates left to right as a product of
generators.  The models:

* ``a``: permutations of ``1..l+1``; ``s_i`` swaps ``i`` and ``i+1``.
* ``b``: signed permutations of ``1..l``; ``s_l`` negates ``l``.
* ``d``: even-signed permutations; ``s_l`` sends ``l-1, l`` to ``-l, -(l-1)``.
* ``affine-a``: affine permutations of the integers with period ``N = n+1``
  in window notation; ``s_0`` swaps ``0`` and ``1`` (and their translates).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from gsbasis.coxeter import FAMILIES, MIN_SIZE, Preset
from gsbasis.enumerate import GrowthSeries
from gsbasis.errors import InvalidInput, ResourceLimit


@dataclass(frozen=True)
class GroupElement:
    family: str
    data: tuple[int, ...]


class GroupModel:
    """Concrete faithful model of a preset's Coxeter group."""

    def __init__(self, family: str, size: int) -> None:
        if family not in FAMILIES:
            raise InvalidInput(f"unknown family {family!r}")
        if size < MIN_SIZE[family]:
            raise InvalidInput(f"{family}:{size} is below the smallest supported size")
        self.family = family
        self.size = size
        self.degree = size + 1 if family in ("a", "affine-a") else size
        self._gens = tuple(self._make_generator(i) for i in range(self.rank))

    @classmethod
    def for_preset(cls, preset: Preset | str) -> GroupModel:
        if isinstance(preset, str):
            preset = Preset.parse(preset)
        return cls(preset.family, preset.size)

    @property
    def rank(self) -> int:
        return self.size + 1 if self.family == "affine-a" else self.size

    @property
    def finite(self) -> bool:
        return self.family != "affine-a"

    def identity(self) -> GroupElement:
        return GroupElement(self.family, tuple(range(1, self.degree + 1)))

    def _make_generator(self, index: int) -> tuple[int, ...]:
        n = self.degree
        w = list(range(1, n + 1))
        if self.family == "affine-a":
            if index == 0:
                w[0], w[-1] = w[-1] - n, w[0] + n
            else:
                w[index - 1], w[index] = w[index], w[index - 1]
            return tuple(w)
        if self.family == "a" or index < self.size - 1:
            w[index], w[index + 1] = w[index + 1], w[index]
        elif self.family == "b":
            w[-1] = -w[-1]
        else:
            w[-2], w[-1] = -w[-1], -w[-2]
        return tuple(w)

    def generator_action(self, index: int) -> GroupElement:
        """Simple reflection for generator index ``index`` (label ``index`` or ``index+1``)."""
        if not 0 <= index < self.rank:
            raise InvalidInput(f"generator index {index} out of range for {self.family}:{self.size}")
        return GroupElement(self.family, self._gens[index])

    def _apply(self, x: tuple[int, ...], i: int) -> int:
        # value of the map x at the integer i
        n = self.degree
        if self.family == "affine-a":
            q, r = divmod(i - 1, n)
            return x[r] + q * n
        if i < 0:
            return -x[-i - 1]
        return x[i - 1]

    def _mul(self, x: tuple[int, ...], y: tuple[int, ...]) -> tuple[int, ...]:
        return tuple(self._apply(x, v) for v in y)

    def compose(self, x: GroupElement, y: GroupElement) -> GroupElement:
        if x.family != self.family or y.family != self.family:
            raise InvalidInput("elements belong to a different model")
        return GroupElement(self.family, self._mul(x.data, y.data))

    def element_of(self, word: Sequence[int]) -> GroupElement:
        """Product of the generators of ``word`` from left to right."""
        x = self.identity().data
        for g in word:
            if not 0 <= g < self.rank:
                raise InvalidInput(f"generator index {g} out of range for {self.family}:{self.size}")
            x = self._mul(x, self._gens[g])
        return GroupElement(self.family, x)

    def order(self, x: GroupElement, limit: int = 64) -> int | None:
        """Multiplicative order of ``x``, or ``None`` if above ``limit``."""
        ident = self.identity().data
        y = x.data
        for k in range(1, limit + 1):
            if y == ident:
                return k
            y = self._mul(y, x.data)
        return None

    def coxeter_length(self, x: GroupElement) -> int:
        """Length via inversion counting (types ``a`` and ``affine-a``)."""
        w = x.data
        n = len(w)
        if self.family == "a":
            return sum(1 for i in range(n) for j in range(i + 1, n) if w[i] > w[j])
        if self.family == "affine-a":
            return sum(abs(math.floor((w[j] - w[i]) / n)) for i in range(n) for j in range(i + 1, n))
        raise InvalidInput(f"no closed length formula for family {self.family!r}")

    def group_order(self) -> int | None:
        return Preset(self.family, self.size).order_of_group()


def cayley_growth(model: GroupModel, max_len: int | None = None, max_elements: int = 5_000_000) -> GrowthSeries:
    """Sphere sizes of the Cayley graph around the identity.

    For a finite group ``max_len=None`` runs to exhaustion and the total is
    reported.  An infinite group needs a length bound.  Raises
    :class:`ResourceLimit` if more than ``max_elements`` are visited.
    """
    if max_len is None and not model.finite:
        raise InvalidInput("an infinite group needs a length bound")
    if max_len is not None and max_len < 0:
        raise InvalidInput("length bound must be nonnegative")
    gens = model._gens
    ident = model.identity().data
    prev: set[tuple[int, ...]] = set()
    frontier = {ident}
    counts = [1]
    seen = 1
    while frontier and (max_len is None or len(counts) <= max_len):
        nxt = set()
        for x in frontier:
            for g in gens:
                y = model._mul(x, g)
                if y not in prev and y not in frontier:
                    nxt.add(y)
        # in a Coxeter group every neighbour of a sphere lies in an adjacent sphere
        prev, frontier = frontier, nxt
        seen += len(nxt)
        if seen > max_elements:
            raise ResourceLimit(f"Cayley graph search exceeded {max_elements} elements")
        if nxt:
            counts.append(len(nxt))
    exhausted = not frontier
    if max_len is not None:
        counts = (counts + [0] * (max_len + 1))[:max_len + 1]
    return GrowthSeries(tuple(counts), sum(counts) if exhausted and model.finite else None)
