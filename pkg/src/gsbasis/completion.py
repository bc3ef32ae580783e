"""Compositions (critical pairs), Buchberger–Shirshov completion and closedness checks."""

from __future__ import annotations

import enum
import heapq
import itertools
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from gsbasis.errors import InvalidInput, PreconditionError
from gsbasis.rewrite import RewriteSystem, Rule, canonical_key
from gsbasis.words import Alphabet, Ambiguity, Kind, Word, find_ambiguities


class Status(enum.Enum):
    CLOSED = "closed"
    LENGTH_CAPPED = "length-capped"
    RULE_CAPPED = "rule-capped"
    STEP_CAPPED = "step-capped"


@dataclass(frozen=True)
class Caps:
    max_word_len: int | None = None
    max_rules: int | None = None
    max_steps: int | None = None

    def __post_init__(self) -> None:
        for name in ("max_word_len", "max_rules", "max_steps"):
            value = getattr(self, name)
            if value is not None and value <= 0:
                raise InvalidInput(f"{name} must be positive, got {value}")


@dataclass(frozen=True)
class CompositionResidue:
    f_id: int
    g_id: int
    ambiguity: Ambiguity
    raw: tuple[Word, Word]
    residue: Rule | None

    @property
    def trivial(self) -> bool:
        return self.residue is None


@dataclass(frozen=True)
class Derivation:
    """How a rule entered the system during completion."""

    rule_id: int
    lhs: Word
    rhs: Word
    origin: str  # "initial", "composition" or "collapse"
    parents: tuple[int, ...] = ()
    witness: Word | None = None


@dataclass
class CompletionStats:
    examined: int = 0
    nontrivial: int = 0
    added: int = 0
    removed: int = 0
    discarded: int = 0


@dataclass
class CompletionResult:
    system: RewriteSystem
    status: Status
    cap: int | None = None
    stats: CompletionStats = field(default_factory=CompletionStats)
    log: list[Derivation] = field(default_factory=list)


def _raw_sides(f: Rule, g: Rule, amb: Ambiguity) -> tuple[Word, Word]:
    a, b = amb.left_margin, amb.right_margin
    if amb.kind is Kind.INTERSECTION:
        if f.lhs + b != amb.witness or a + g.lhs != amb.witness or not a or not b:
            raise InvalidInput("intersection ambiguity does not match the rules")
        return f.rhs + b, a + g.rhs
    if f.lhs != amb.witness or a + g.lhs + b != amb.witness:
        raise InvalidInput("inclusion ambiguity does not match the rules")
    return f.rhs, a + g.rhs + b


def compose(f: Rule, g: Rule, amb: Ambiguity, system: RewriteSystem) -> CompositionResidue:
    """Reduce both sides of ``(f, g)_w`` and orient what is left, if anything."""
    raw = _raw_sides(f, g, amb)
    x = system.normal_form(raw[0])
    y = system.normal_form(raw[1])
    residue = None if x == y else Rule.oriented(x, y, system.alphabet)
    return CompositionResidue(f.id, g.id, amb, raw, residue)


def verify_closed(system: RewriteSystem) -> list[CompositionResidue]:
    """Every nontrivial composition among the rules; empty iff the rules form a GS basis."""
    rules = system.rules
    out = []
    for f in rules:
        for g in rules:
            for amb in find_ambiguities(f.lhs, g.lhs):
                res = compose(f, g, amb, system)
                if res.residue is not None:
                    out.append(res)
    return out


class _Builder:
    """Inserts relations one at a time while keeping the system interreduced."""

    def __init__(self, alphabet: Alphabet, max_word_len: int | None = None) -> None:
        self.system = RewriteSystem(alphabet)
        self.max_word_len = max_word_len
        self.log: list[Derivation] = []
        self.stats = CompletionStats()
        self.new_rules: list[int] = []
        self.length_capped = False

    def insert(self, u: Word, v: Word, origin: str, parents: tuple[int, ...] = (),
               witness: Word | None = None) -> None:
        sys_ = self.system
        work = [(u, v, origin, parents, witness)]
        while work:
            u, v, origin, parents, witness = work.pop()
            x, y = sys_.normal_form(u), sys_.normal_form(v)
            if x == y:
                continue
            rule = Rule.oriented(x, y, sys_.alphabet)
            if self.max_word_len is not None and len(rule.lhs) > self.max_word_len:
                self.length_capped = True
                self.stats.discarded += 1
                continue
            new = sys_.add(rule.lhs, rule.rhs)
            self.stats.added += 1
            self.new_rules.append(new.id)
            self.log.append(Derivation(new.id, new.lhs, new.rhs, origin, parents, witness))
            collapsed = []
            for other in sys_.rules:
                if other.id == new.id:
                    continue
                if _contains(other.lhs, new.lhs):
                    collapsed.append(other)
            for other in collapsed:
                sys_.remove(other.id)
                self.stats.removed += 1
                work.append((other.lhs, other.rhs, "collapse", (other.id, new.id), None))
            for other in sys_.rules:
                nf = sys_.normal_form(other.rhs)
                if nf != other.rhs:
                    sys_.set_rhs(other.id, nf)


def _contains(big: Word, small: Word) -> bool:
    n = len(small)
    return any(big[i:i + n] == small for i in range(len(big) - n + 1))


def _as_pairs(rules: Iterable[Rule | tuple[Sequence[int], Sequence[int]]]) -> list[tuple[Word, Word]]:
    out = []
    for r in rules:
        if isinstance(r, Rule):
            out.append((r.lhs, r.rhs))
        else:
            u, v = r
            out.append((tuple(u), tuple(v)))
    return out


def interreduce(rules: Iterable[Rule | tuple[Word, Word]], alphabet: Alphabet) -> list[Rule]:
    """Equivalent rule list in which no lhs contains another and every rhs is irreducible.

    Rules are returned in canonical order and renumbered from 0.  A rule whose
    sides become equal is dropped.
    """
    pairs = _as_pairs(rules)
    for lhs, rhs in pairs:
        alphabet.check(lhs)
        alphabet.check(rhs)
        if alphabet.key(lhs) <= alphabet.key(rhs):
            raise InvalidInput(f"rule {alphabet.format(lhs)} -> {alphabet.format(rhs)} is not oriented")
    builder = _Builder(alphabet)
    for lhs, rhs in sorted(pairs, key=lambda p: (alphabet.key(p[0]), p[0], alphabet.key(p[1]), p[1])):
        builder.insert(lhs, rhs, "initial")
    ordered = builder.system.canonical_rules()
    return [Rule(i, r.lhs, r.rhs) for i, r in enumerate(ordered)]


def complete(initial: Iterable[Rule | tuple[Word, Word]], alphabet: Alphabet,
             caps: Caps | None = None) -> CompletionResult:
    """Buchberger–Shirshov completion with eager interreduction.

    Pending ambiguities are processed smallest witness first (deglex), ties in
    insertion order.  A residue longer than ``caps.max_word_len`` is dropped
    and the result can then no longer be reported as closed.
    """
    caps = caps or Caps()
    pairs = _as_pairs(initial)
    for lhs, rhs in pairs:
        alphabet.check(lhs)
        alphabet.check(rhs)
        if not lhs or alphabet.key(lhs) <= alphabet.key(rhs):
            raise InvalidInput(f"initial rule {alphabet.format(lhs)} -> {alphabet.format(rhs)} is not oriented")

    builder = _Builder(alphabet, caps.max_word_len)
    sys_ = builder.system
    stats = builder.stats
    heap: list[tuple] = []
    seq = itertools.count()

    def schedule() -> None:
        fresh, builder.new_rules = builder.new_rules, []
        for rid in fresh:
            if rid not in sys_:
                continue
            new = sys_[rid]
            for other in sys_.rules:
                combos = [(new, other)] if other.id == new.id else [(new, other), (other, new)]
                for f, g in combos:
                    for amb in find_ambiguities(f.lhs, g.lhs):
                        heapq.heappush(heap, (alphabet.key(amb.witness), next(seq), f.id, g.id, amb))

    for lhs, rhs in pairs:
        builder.insert(lhs, rhs, "initial")
    schedule()

    status, cap = Status.CLOSED, None
    while heap:
        if caps.max_steps is not None and stats.examined >= caps.max_steps:
            status, cap = Status.STEP_CAPPED, caps.max_steps
            break
        _, _, fid, gid, amb = heapq.heappop(heap)
        if fid not in sys_ or gid not in sys_:
            continue
        f, g = sys_[fid], sys_[gid]
        stats.examined += 1
        res = compose(f, g, amb, sys_)
        if res.residue is None:
            continue
        stats.nontrivial += 1
        builder.insert(res.residue.lhs, res.residue.rhs, "composition", (fid, gid), amb.witness)
        if caps.max_rules is not None and len(sys_) > caps.max_rules:
            status, cap = Status.RULE_CAPPED, caps.max_rules
            break
        schedule()

    if status is Status.CLOSED and builder.length_capped:
        status, cap = Status.LENGTH_CAPPED, caps.max_word_len
    sys_.seal()
    return CompletionResult(sys_, status, cap, stats, builder.log)


def _overlaps(u: Word, v: Word) -> list[int]:
    """Lengths ``k`` of proper overlaps: a suffix of ``u`` equal to a prefix of ``v``."""
    return [k for k in range(1, min(len(u), len(v))) if u[-k:] == v[:k]]


def chained_composition_check(f: Rule, g: Rule, h: Rule, system: RewriteSystem,
                              v1_len: int | None = None, v2_len: int | None = None) -> bool:
    """Check that composing ``f`` with the composition of ``g`` and ``h`` is trivial.

    With ``f.lhs = a1 v1``, ``g.lhs = v1 b1 = a2 v2`` and ``h.lhs = v2 b2`` the
    composition reduces to ``a1 g.rhs b2`` against ``f.rhs ā2 h.rhs`` where
    ``a2 = v1 ā2``.  When ``(f, g)`` is already trivial the pair must be
    joinable.  Without explicit overlap lengths every admissible pair of
    overlaps is checked.
    """
    ks1 = _overlaps(f.lhs, g.lhs) if v1_len is None else [v1_len]
    ks2 = _overlaps(g.lhs, h.lhs) if v2_len is None else [v2_len]
    admissible = []
    for k1 in ks1:
        if not (0 < k1 < len(f.lhs) and k1 < len(g.lhs)) or f.lhs[-k1:] != g.lhs[:k1]:
            continue
        for k2 in ks2:
            if not (0 < k2 < len(h.lhs) and k2 < len(g.lhs)) or g.lhs[-k2:] != h.lhs[:k2]:
                continue
            a2_len = len(g.lhs) - k2
            if a2_len < k1:
                continue  # a2 must start with v1
            admissible.append((k1, k2))
    if not admissible:
        raise PreconditionError("no pair of overlaps with a2 = v1·ā2")

    checked = False
    result = True
    for k1, k2 in admissible:
        a1 = f.lhs[:-k1]
        b1 = g.lhs[k1:]
        a2 = g.lhs[:len(g.lhs) - k2]
        a2_bar = a2[k1:]
        b2 = h.lhs[k2:]
        if system.normal_form(a1 + g.rhs) != system.normal_form(f.rhs + b1):
            continue  # <f;g> not trivial: the chained check does not apply here
        checked = True
        if system.normal_form(a1 + g.rhs + b2) != system.normal_form(f.rhs + a2_bar + h.rhs):
            result = False
    if not checked:
        raise PreconditionError("composition of f and g is not trivial for any admissible overlap")
    return result


def canonical_pairs(system: RewriteSystem) -> list[tuple[Word, Word]]:
    return [(r.lhs, r.rhs) for r in sorted(system.rules, key=lambda r: canonical_key(r, system.alphabet))]
