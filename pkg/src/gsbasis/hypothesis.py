"""Alternating words, equivalence modulo commutations and the chain pattern audit.

A basis rule *matches* when, up to commuting letters with ``m = 2``, it reads

    (m-1)(s,s') (m-1)(a1,b1) ... (m-1)(ak,bk) m(a,b)
      = m(s',s) (m-1)(a1,b1) ... (m-1)(ak,bk) (m-1)(a,b)

with ``s > s'``.  In strict mode every chain pair has ``a < b`` and its
second letter is fixed by the previous pair: the previous second letter when
that pair's ``m`` is even, the previous first letter when it is odd.
Neighbouring pairs must differ.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from gsbasis.coxeter import INF, CoxeterMatrix
from gsbasis.errors import InvalidInput
from gsbasis.rewrite import RewriteSystem, Rule
from gsbasis.words import Alphabet, Word

MODES = ("strict", "relaxed")


@dataclass(frozen=True)
class AlternatingWord:
    first: int
    second: int
    length: int

    def __post_init__(self) -> None:
        if self.length <= 0:
            raise InvalidInput("alternating word length must be positive")
        if self.first == self.second:
            raise InvalidInput("alternating word needs two distinct letters")

    @property
    def word(self) -> Word:
        return tuple(self.first if t % 2 == 0 else self.second for t in range(self.length))


def m_word(s: int, t: int, m: int) -> Word:
    """``s t s ...`` with ``m`` letters."""
    return AlternatingWord(s, t, m).word


def _m(matrix: CoxeterMatrix, a: int, b: int) -> int | None:
    v = matrix[a, b]
    return None if v == INF else int(v)


def trace_normal_form(w: Sequence[int], matrix: CoxeterMatrix) -> Word:
    """Lexicographically least word (by index) equal to ``w`` modulo commutations."""
    rest = list(w)
    out = []
    while rest:
        # letters that can be moved to the front: first occurrences whose
        # predecessors all commute with them
        best = None
        for i, g in enumerate(rest):
            if best is not None and g >= rest[best]:
                continue
            if all(matrix.commute(h, g) for h in rest[:i]):
                best = i
        out.append(rest.pop(best))
    return tuple(out)


def trace_equivalent(u: Sequence[int], v: Sequence[int], matrix: CoxeterMatrix) -> bool:
    if len(u) != len(v) or sorted(u) != sorted(v):
        return False
    return trace_normal_form(u, matrix) == trace_normal_form(v, matrix)


def strip_prefix(w: Sequence[int], prefix: Sequence[int], matrix: CoxeterMatrix) -> Word | None:
    """``q`` with ``w`` equivalent to ``prefix q``, or ``None`` if there is none."""
    rest = list(w)
    for g in prefix:
        for i, h in enumerate(rest):
            if h == g:
                break
            if not matrix.commute(h, g):
                return None
        else:
            return None
        del rest[i]
    return tuple(rest)


@dataclass(frozen=True)
class PatternInstance:
    """Head pair plus chain; the last chain pair is the closing ``m(a, b)`` pair."""

    head: tuple[int, int]
    chain: tuple[tuple[int, int], ...]
    parity: tuple[str, ...]  # parity of m for the pair each link was derived from

    def expand(self, matrix: CoxeterMatrix) -> tuple[Word, Word]:
        s, t = self.head
        m = _m(matrix, s, t)
        lhs = m_word(s, t, m - 1)
        rhs = m_word(t, s, m)
        for k, (a, b) in enumerate(self.chain):
            mm = _m(matrix, a, b)
            last = k == len(self.chain) - 1
            lhs += m_word(a, b, mm if last else mm - 1)
            rhs += m_word(a, b, mm - 1)
        return lhs, rhs

    def describe(self, alphabet: Alphabet) -> str:
        n = alphabet.names
        parts = [f"(m-1)({n[self.head[0]]},{n[self.head[1]]})"]
        for k, (a, b) in enumerate(self.chain):
            last = k == len(self.chain) - 1
            parts.append(f"{'m' if last else '(m-1)'}({n[a]},{n[b]})")
        return " ".join(parts)


class Verdict(enum.Enum):
    INITIAL = "initial-relation"
    MATCHED = "matched"
    NO_MATCH = "no-match"


@dataclass(frozen=True)
class MatchReport:
    rule_id: int
    verdict: Verdict
    instance: PatternInstance | None = None
    reason: str = ""
    # for NO_MATCH: the first relaxation under which the rule matches, if any
    relaxation: str | None = None
    relaxed_instance: PatternInstance | None = None


@dataclass(frozen=True)
class _Constraints:
    order: bool
    parity: bool


_STRICT = _Constraints(True, True)
_RELAXATIONS = (
    ("order-free", _Constraints(False, True)),
    ("parity-free", _Constraints(True, False)),
    ("order-and-parity-free", _Constraints(False, False)),
)


def _constraints(mode: str) -> _Constraints:
    if mode == "strict":
        return _STRICT
    if mode == "relaxed":
        return _RELAXATIONS[0][1]
    raise InvalidInput(f"mode must be one of {MODES}, got {mode!r}")


def is_initial_relation(rule: Rule, matrix: CoxeterMatrix, alphabet: Alphabet) -> bool:
    lhs, rhs = rule.lhs, rule.rhs
    if not rhs:
        return len(lhs) == 2 and lhs[0] == lhs[1]
    letters = set(lhs)
    if len(letters) != 2 or set(rhs) != letters:
        return False
    a, b = sorted(letters)
    m = _m(matrix, a, b)
    if m is None:
        return False
    s, t = (a, b) if alphabet.greater(a, b) else (b, a)
    return trace_equivalent(lhs, m_word(s, t, m), matrix) and trace_equivalent(rhs, m_word(t, s, m), matrix)


class _Search:
    def __init__(self, matrix: CoxeterMatrix, alphabet: Alphabet, cons: _Constraints) -> None:
        self.matrix = matrix
        self.alphabet = alphabet
        self.cons = cons
        self.longest: tuple[tuple[int, int], ...] = ()
        # states already shown not to close; success depends only on the state
        self.dead: set[tuple] = set()

    def run(self, lhs: Word, rhs: Word) -> PatternInstance | None:
        M, A = self.matrix, self.alphabet
        n = A.size
        for s in range(n):
            for t in range(n):
                if s == t or not A.greater(s, t):
                    continue
                m = _m(M, s, t)
                if m is None:
                    continue
                l1 = strip_prefix(lhs, m_word(s, t, m - 1), M)
                r1 = strip_prefix(rhs, m_word(t, s, m), M)
                if l1 is None or r1 is None or not l1:
                    continue
                found = self._chain((s, t), m, l1, r1, ((s, t),), ())
                if found is not None:
                    chain, parity = found
                    return PatternInstance((s, t), chain, parity)
        return None

    def _chain(self, prev: tuple[int, int], m_prev: int, lrest: Word, rrest: Word,
               path: tuple[tuple[int, int], ...], parity: tuple[str, ...]):
        M, A = self.matrix, self.alphabet
        if len(path) > len(self.longest):
            self.longest = path
        state = (prev, trace_normal_form(lrest, M), trace_normal_form(rrest, M))
        if state in self.dead:
            return None
        tag = "even" if m_prev % 2 == 0 else "odd"
        if self.cons.parity:
            seconds = [prev[1] if m_prev % 2 == 0 else prev[0]]
        else:
            seconds = list(range(A.size))
        for b in seconds:
            for a in range(A.size):
                if a == b or {a, b} == set(prev):
                    continue
                if self.cons.order and A.greater(a, b):
                    continue
                mm = _m(M, a, b)
                if mm is None:
                    continue
                # closing pair
                lf = strip_prefix(lrest, m_word(a, b, mm), M)
                if lf == ():
                    rf = strip_prefix(rrest, m_word(a, b, mm - 1), M)
                    if rf == ():
                        return path[1:] + ((a, b),), parity + (tag,)
                # middle pair
                l2 = strip_prefix(lrest, m_word(a, b, mm - 1), M)
                if not l2:
                    continue
                r2 = strip_prefix(rrest, m_word(a, b, mm - 1), M)
                if r2 is None:
                    continue
                found = self._chain((a, b), mm, l2, r2, path + ((a, b),), parity + (tag,))
                if found is not None:
                    return found
        self.dead.add(state)
        return None


def _format_pairs(pairs: Iterable[tuple[int, int]], alphabet: Alphabet) -> str:
    return "".join(f"({alphabet.names[a]},{alphabet.names[b]})" for a, b in pairs)


def matches_hypothesis(rule: Rule, matrix: CoxeterMatrix, alphabet: Alphabet, mode: str = "strict") -> MatchReport:
    """Classify one rule; the chain search is exhaustive, so ``NO_MATCH`` is definitive."""
    cons = _constraints(mode)
    if matrix.n != alphabet.size:
        raise InvalidInput("matrix and alphabet sizes differ")
    alphabet.check(rule.lhs)
    alphabet.check(rule.rhs)
    if is_initial_relation(rule, matrix, alphabet):
        return MatchReport(rule.id, Verdict.INITIAL)
    search = _Search(matrix, alphabet, cons)
    inst = search.run(rule.lhs, rule.rhs)
    if inst is not None:
        return MatchReport(rule.id, Verdict.MATCHED, inst)
    if search.longest:
        reason = f"no {mode} chain closes; longest partial chain {_format_pairs(search.longest, alphabet)}"
    else:
        reason = "no head pair (s,s') with s > s' fits both sides"
    for name, relaxed in _RELAXATIONS:
        if relaxed == cons:
            continue
        alt = _Search(matrix, alphabet, relaxed).run(rule.lhs, rule.rhs)
        if alt is not None:
            return MatchReport(rule.id, Verdict.NO_MATCH, None, reason, name, alt)
    return MatchReport(rule.id, Verdict.NO_MATCH, None, reason)


@dataclass
class AuditSummary:
    reports: list[MatchReport] = field(default_factory=list)

    def count(self, verdict: Verdict) -> int:
        return sum(1 for r in self.reports if r.verdict is verdict)

    @property
    def failures(self) -> list[MatchReport]:
        return [r for r in self.reports if r.verdict is Verdict.NO_MATCH]


def audit_basis(system: RewriteSystem, matrix: CoxeterMatrix, mode: str = "strict") -> list[MatchReport]:
    """One report per rule, in canonical rule order."""
    return [matches_hypothesis(r, matrix, system.alphabet, mode) for r in system.canonical_rules()]
