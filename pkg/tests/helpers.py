"""Brute-force reference implementations used only by the tests.

Nothing here shares code with the library's matching or reduction logic.
"""

from __future__ import annotations

from functools import lru_cache

from gsbasis.completion import Caps
from gsbasis.coxeter import Preset, complete_preset
from gsbasis.hypothesis import m_word, trace_normal_form


def naive_occurrences(word, lhss):
    """(position, index) for every occurrence, by plain slicing."""
    out = []
    for idx, lhs in enumerate(lhss):
        n = len(lhs)
        for p in range(len(word) - n + 1):
            if tuple(word[p:p + n]) == tuple(lhs):
                out.append((p, idx))
    return sorted(out)


def all_rewrite_results(word, pairs, limit=100_000):
    """Every irreducible word reachable from ``word`` along any rewrite order."""
    word = tuple(word)
    seen = {word}
    stack = [word]
    finals = set()
    while stack:
        w = stack.pop()
        moved = False
        for lhs, rhs in pairs:
            n = len(lhs)
            for p in range(len(w) - n + 1):
                if w[p:p + n] == lhs:
                    moved = True
                    v = w[:p] + rhs + w[p + n:]
                    if v not in seen:
                        seen.add(v)
                        if len(seen) > limit:
                            raise RuntimeError("rewrite graph too large")
                        stack.append(v)
        if not moved:
            finals.add(w)
    return finals


def naive_deglex_greater(u, v, ranking):
    """``u > v`` with ``ranking[0]`` the greatest letter, written out longhand."""
    if len(u) != len(v):
        return len(u) > len(v)
    pos = {g: i for i, g in enumerate(ranking)}
    for a, b in zip(u, v):
        if a != b:
            return pos[a] < pos[b]
    return False


@lru_cache(maxsize=None)
def completed(name: str, max_len: int | None = None):
    preset = Preset.parse(name)
    result = complete_preset(preset, Caps(max_word_len=max_len))
    return preset, result


def pattern_instances(matrix, alphabet, max_len, order=True, parity=True):
    """Trace normal forms of both sides of every chain pattern instance up to ``max_len``."""
    out = set()
    n = alphabet.size

    def m(a, b):
        return int(matrix[a, b])

    def rec(prev, mprev, lhs, rhs):
        seconds = [prev[1] if mprev % 2 == 0 else prev[0]] if parity else range(n)
        for b in seconds:
            for a in range(n):
                if a == b or {a, b} == set(prev) or matrix[a, b] == float("inf"):
                    continue
                if order and alphabet.greater(a, b):
                    continue
                mm = m(a, b)
                closed_l = lhs + m_word(a, b, mm)
                if len(closed_l) <= max_len:
                    out.add((trace_normal_form(closed_l, matrix),
                             trace_normal_form(rhs + m_word(a, b, mm - 1), matrix)))
                mid_l = lhs + m_word(a, b, mm - 1)
                if len(mid_l) < max_len:
                    rec((a, b), mm, mid_l, rhs + m_word(a, b, mm - 1))

    for s in range(n):
        for t in range(n):
            if s != t and alphabet.greater(s, t) and matrix[s, t] != float("inf"):
                mm = m(s, t)
                rec((s, t), mm, m_word(s, t, mm - 1), m_word(t, s, mm))
    return out


def overlap_lengths(u, v):
    return [k for k in range(1, min(len(u), len(v))) if u[-k:] == v[:k]]


def sample_chained_triples(system, count, rng, attempts=200_000):
    """Random (f, g, h, k1, k2) with f·g and g·h overlapping and the g-overlaps disjoint."""
    rules = system.canonical_rules()
    by_first = {}
    for r in rules:
        by_first.setdefault(r.lhs[0], []).append(r)
    out = []
    for _ in range(attempts):
        if len(out) >= count:
            break
        g = rng.choice(rules)
        fs = [(f, k) for f in rules for k in overlap_lengths(f.lhs, g.lhs)]
        hs = [(h, k) for h in by_first.get(g.lhs[-1], []) for k in overlap_lengths(g.lhs, h.lhs)]
        if not fs or not hs:
            continue
        f, k1 = rng.choice(fs)
        h, k2 = rng.choice(hs)
        if len(g.lhs) - k2 < k1:
            continue
        out.append((f, g, h, k1, k2))
    return out
