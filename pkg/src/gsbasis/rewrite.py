"""Oriented binomial rules, the leading-word index, and reduction to normal form."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator, Literal, Sequence

from gsbasis.errors import InvalidInput
from gsbasis.words import Alphabet, Word

Strategy = Literal["leftmost", "rightmost"]


@dataclass(frozen=True)
class Rule:
    """The binomial ``lhs - rhs`` with ``lhs`` its leading word.

    ``id`` is ``-1`` for a rule that does not (yet) belong to a system.
    """

    id: int
    lhs: Word
    rhs: Word

    @classmethod
    def oriented(cls, u: Sequence[int], v: Sequence[int], alphabet: Alphabet, id: int = -1) -> Rule:
        u, v = alphabet.check(u), alphabet.check(v)
        if u == v:
            raise InvalidInput("a relation with identical sides is the zero binomial")
        if alphabet.key(u) < alphabet.key(v):
            u, v = v, u
        return cls(id, u, v)

    def sides(self) -> tuple[Word, Word]:
        return self.lhs, self.rhs


def canonical_key(rule: Rule, alphabet: Alphabet) -> tuple:
    """Canonical rule order: deglex of lhs, then lhs lexicographic, then rhs."""
    return (alphabet.key(rule.lhs), rule.lhs, alphabet.key(rule.rhs), rule.rhs)


class FactorIndex:
    """Aho–Corasick automaton over rule left-hand sides.

    Patterns may be added and removed at any time; the automaton is rebuilt
    lazily the next time it is queried.  ``delta`` is the complete transition
    table, so the automaton doubles as the forbidden-factor DFA used for
    counting irreducible words.
    """

    def __init__(self, size: int) -> None:
        self.size = size
        self._patterns: dict[int, Word] = {}
        self._dirty = True
        self.delta: list[list[int]] = []
        # per state: (pattern length, pattern id) for every pattern ending there
        self.ends: list[tuple[tuple[int, int], ...]] = []
        self.depth: list[int] = []
        self.max_len = 0

    def __len__(self) -> int:
        return len(self._patterns)

    def add(self, pid: int, pattern: Word) -> None:
        if not pattern:
            raise InvalidInput("empty pattern")
        self._patterns[pid] = pattern
        self._dirty = True

    def remove(self, pid: int) -> None:
        del self._patterns[pid]
        self._dirty = True

    def build(self) -> None:
        if not self._dirty:
            return
        goto: list[dict[int, int]] = [{}]
        own: list[list[tuple[int, int]]] = [[]]
        depth = [0]
        for pid in sorted(self._patterns):
            pat = self._patterns[pid]
            s = 0
            for g in pat:
                nxt = goto[s].get(g)
                if nxt is None:
                    nxt = len(goto)
                    goto[s][g] = nxt
                    goto.append({})
                    own.append([])
                    depth.append(depth[s] + 1)
                s = nxt
            own[s].append((len(pat), pid))

        n_states = len(goto)
        fail = [0] * n_states
        delta = [[0] * self.size for _ in range(n_states)]
        ends: list[tuple[tuple[int, int], ...]] = [()] * n_states
        ends[0] = tuple(own[0])
        for g in range(self.size):
            delta[0][g] = goto[0].get(g, 0)
        queue = deque(goto[0].values())
        while queue:
            s = queue.popleft()
            f = fail[s]
            ends[s] = tuple(sorted(own[s] + list(ends[f]), key=lambda e: (-e[0], e[1])))
            row, frow = delta[s], delta[f]
            for g in range(self.size):
                nxt = goto[s].get(g)
                if nxt is None:
                    row[g] = frow[g]
                else:
                    row[g] = nxt
                    fail[nxt] = frow[g]
                    queue.append(nxt)
        self.delta = delta
        self.ends = ends
        self.depth = depth
        self.max_len = max((len(p) for p in self._patterns.values()), default=0)
        self._dirty = False

    def occurrences(self, w: Word) -> Iterator[tuple[int, int]]:
        """Yield ``(start, pattern id)`` for every occurrence, by end position."""
        self.build()
        delta, ends = self.delta, self.ends
        s = 0
        for i, g in enumerate(w, 1):
            s = delta[s][g]
            for plen, pid in ends[s]:
                yield i - plen, pid

    def dead_states(self) -> list[bool]:
        self.build()
        return [bool(e) for e in self.ends]


class RewriteSystem:
    """An ordered set of oriented rules over an alphabet, plus a factor index.

    A system is mutable until :meth:`seal` is called; completion works on an
    unsealed system and seals it when done.
    """

    def __init__(self, alphabet: Alphabet, rules: Iterable[Rule] = ()) -> None:
        self.alphabet = alphabet
        self._rules: dict[int, Rule] = {}
        self._index = FactorIndex(alphabet.size)
        self._next_id = 0
        self.sealed = False
        for r in rules:
            self.add(r.lhs, r.rhs, rule_id=r.id if r.id >= 0 else None)

    @classmethod
    def from_pairs(cls, alphabet: Alphabet, pairs: Iterable[tuple[Word, Word]]) -> RewriteSystem:
        """Build from ``(lhs, rhs)`` pairs; each pair must already be oriented."""
        sys_ = cls(alphabet)
        for lhs, rhs in pairs:
            sys_.add(lhs, rhs)
        return sys_

    # -- container protocol -------------------------------------------------

    def __len__(self) -> int:
        return len(self._rules)

    def __iter__(self) -> Iterator[Rule]:
        return iter(list(self._rules.values()))

    def __contains__(self, rule_id: object) -> bool:
        return rule_id in self._rules

    def __getitem__(self, rule_id: int) -> Rule:
        return self._rules[rule_id]

    @property
    def rules(self) -> list[Rule]:
        return list(self._rules.values())

    @property
    def index(self) -> FactorIndex:
        return self._index

    def canonical_rules(self) -> list[Rule]:
        return sorted(self._rules.values(), key=lambda r: canonical_key(r, self.alphabet))

    def pairs(self) -> set[tuple[Word, Word]]:
        return {(r.lhs, r.rhs) for r in self._rules.values()}

    # -- mutation -------------------------------------------------------------

    def _check_mutable(self) -> None:
        if self.sealed:
            raise InvalidInput("rewrite system is sealed")

    def add(self, lhs: Sequence[int], rhs: Sequence[int], rule_id: int | None = None) -> Rule:
        self._check_mutable()
        lhs, rhs = self.alphabet.check(lhs), self.alphabet.check(rhs)
        if not lhs:
            raise InvalidInput("rule left-hand side must be nonempty")
        if lhs == rhs:
            raise InvalidInput("rule with identical sides is the zero binomial")
        if self.alphabet.key(lhs) <= self.alphabet.key(rhs):
            raise InvalidInput(
                f"rule {self.alphabet.format(lhs)} -> {self.alphabet.format(rhs)} is not oriented: "
                "left side must be deglex-greater"
            )
        if rule_id is None:
            rule_id = self._next_id
        elif rule_id in self._rules:
            raise InvalidInput(f"duplicate rule id {rule_id}")
        self._next_id = max(self._next_id, rule_id + 1)
        rule = Rule(rule_id, lhs, rhs)
        self._rules[rule_id] = rule
        self._index.add(rule_id, lhs)
        return rule

    def remove(self, rule_id: int) -> Rule:
        self._check_mutable()
        rule = self._rules.pop(rule_id)
        self._index.remove(rule_id)
        return rule

    def set_rhs(self, rule_id: int, rhs: Word) -> Rule:
        self._check_mutable()
        old = self._rules[rule_id]
        if self.alphabet.key(old.lhs) <= self.alphabet.key(rhs):
            raise InvalidInput("replacement right-hand side must stay below the left-hand side")
        new = Rule(rule_id, old.lhs, rhs)
        self._rules[rule_id] = new
        return new

    def seal(self) -> RewriteSystem:
        self._index.build()
        self.sealed = True
        return self

    def copy(self) -> RewriteSystem:
        other = RewriteSystem(self.alphabet)
        for r in self._rules.values():
            other.add(r.lhs, r.rhs, rule_id=r.id)
        return other

    # -- reduction ------------------------------------------------------------

    def matches(self, w: Word) -> list[tuple[int, int]]:
        """All ``(position, rule id)`` pairs where a left-hand side occurs in ``w``."""
        return sorted(self._index.occurrences(w))

    def is_irreducible(self, w: Sequence[int]) -> bool:
        w = self.alphabet.check(w)
        return next(self._index.occurrences(w), None) is None

    def reduce_once(self, w: Sequence[int], strategy: Strategy = "leftmost") -> tuple[Word, int, int] | None:
        """Apply one rewrite step, or return ``None`` if ``w`` is irreducible.

        ``leftmost`` picks the smallest start position, ``rightmost`` the
        largest; ties go to the lowest rule id.
        """
        w = self.alphabet.check(w)
        found = self._pick(w, strategy)
        if found is None:
            return None
        pos, rid = found
        rule = self._rules[rid]
        return w[:pos] + rule.rhs + w[pos + len(rule.lhs):], rid, pos

    def _pick(self, w: Word, strategy: Strategy) -> tuple[int, int] | None:
        best = None
        if strategy == "leftmost":
            for pos, rid in self._index.occurrences(w):
                if best is None or (pos, rid) < best:
                    best = (pos, rid)
        elif strategy == "rightmost":
            for pos, rid in self._index.occurrences(w):
                if best is None or (-pos, rid) < (-best[0], best[1]):
                    best = (pos, rid)
        else:
            raise InvalidInput(f"unknown strategy {strategy!r}")
        return best

    def normal_form(self, w: Sequence[int], strategy: Strategy = "leftmost") -> Word:
        w = self.alphabet.check(w)
        if strategy == "leftmost":
            return self._normal_form_leftmost(w)
        while True:
            step = self.reduce_once(w, strategy)
            if step is None:
                return w
            w = step[0]

    def normal_form_steps(self, w: Sequence[int], strategy: Strategy = "leftmost") -> tuple[Word, int]:
        """Normal form together with the number of rewrite steps taken."""
        w = self.alphabet.check(w)
        steps = 0
        while True:
            step = self.reduce_once(w, strategy)
            if step is None:
                return w, steps
            w = step[0]
            steps += 1

    def _normal_form_leftmost(self, w: Word) -> Word:
        # Same result as iterating reduce_once(leftmost), but resumes the scan
        # instead of restarting: after a rewrite at p no occurrence can end at
        # or before p, so automaton states for the prefix w[:p] stay valid.
        index = self._index
        index.build()
        delta, ends, max_len = index.delta, index.ends, index.max_len
        rules = self._rules
        word = list(w)
        states = [0]
        i = 0
        while i < len(word):
            s = delta[states[-1]][word[i]]
            states.append(s)
            i += 1
            if not ends[s]:
                continue
            best = min((i - plen, pid) for plen, pid in ends[s])
            # an occurrence starting before best[0] must end before best[0] + max_len
            horizon = min(len(word), best[0] + max_len)
            j = i
            t = s
            while j < horizon:
                t = delta[t][word[j]]
                j += 1
                for plen, pid in ends[t]:
                    cand = (j - plen, pid)
                    if cand < best:
                        best = cand
            pos, rid = best
            rule = rules[rid]
            word[pos:pos + len(rule.lhs)] = rule.rhs
            del states[pos + 1:]
            i = pos
        return tuple(word)
