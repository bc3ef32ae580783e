"""Coxeter matrices, presets, presentations and the closed-form basis families.

Families are written in the conventional generator labels (``s_1 .. s_l`` for
the finite types, ``s_0 .. s_n`` for the affine type) and converted to
indices at the end.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Literal, Sequence

from gsbasis.completion import Caps, complete, interreduce
from gsbasis.errors import InvalidInput
from gsbasis.rewrite import RewriteSystem, Rule, canonical_key
from gsbasis.words import Alphabet, Word

INF = math.inf

Family = Literal["a", "b", "d", "affine-a"]
FAMILIES: tuple[str, ...] = ("a", "b", "d", "affine-a")
MIN_SIZE = {"a": 1, "b": 2, "d": 3, "affine-a": 2}


@dataclass(frozen=True)
class CoxeterMatrix:
    """Symmetric matrix of braid orders; ``math.inf`` means no relation."""

    entries: tuple[tuple[float, ...], ...]

    def __post_init__(self) -> None:
        rows = tuple(tuple(r) for r in self.entries)
        object.__setattr__(self, "entries", rows)
        n = len(rows)
        if n == 0:
            raise InvalidInput("Coxeter matrix must be nonempty")
        for i, row in enumerate(rows):
            if len(row) != n:
                raise InvalidInput("Coxeter matrix must be square")
            for j, m in enumerate(row):
                if m != rows[j][i]:
                    raise InvalidInput(f"Coxeter matrix is not symmetric at ({i}, {j})")
                if i == j and m != 1:
                    raise InvalidInput(f"diagonal entry ({i}, {i}) must be 1")
                if i != j and not (m == INF or (m == int(m) and m >= 2)):
                    raise InvalidInput(f"off-diagonal entry ({i}, {j}) must be an integer >= 2 or infinity")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[float]]) -> CoxeterMatrix:
        return cls(tuple(tuple(INF if m == INF else int(m) for m in r) for r in rows))

    @property
    def n(self) -> int:
        return len(self.entries)

    def __getitem__(self, ij: tuple[int, int]) -> float:
        i, j = ij
        return self.entries[i][j]

    def commute(self, a: int, b: int) -> bool:
        return a != b and self.entries[a][b] == 2

    def relabel(self, perm: Sequence[int]) -> CoxeterMatrix:
        n = self.n
        rows = [[1] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                rows[perm[i]][perm[j]] = self.entries[i][j]
        return CoxeterMatrix.from_rows(rows)


def alternating(a: int, b: int, m: int) -> Word:
    return tuple(a if t % 2 == 0 else b for t in range(m))


@dataclass(frozen=True)
class Presentation:
    alphabet: Alphabet
    matrix: CoxeterMatrix
    relations: tuple[Rule, ...]


def presentation_from_matrix(matrix: CoxeterMatrix, alphabet: Alphabet) -> Presentation:
    """Involutions ``s s -> 1`` and one braid rule per finite off-diagonal entry."""
    if alphabet.size != matrix.n:
        raise InvalidInput(f"alphabet has {alphabet.size} generators but the matrix is {matrix.n}x{matrix.n}")
    rels = [Rule(i, (i, i), ()) for i in range(matrix.n)]
    for i in range(matrix.n):
        for j in range(i + 1, matrix.n):
            m = matrix[i, j]
            if m == INF:
                continue
            s, t = (i, j) if alphabet.greater(i, j) else (j, i)
            rels.append(Rule(len(rels), alternating(s, t, int(m)), alternating(t, s, int(m))))
    return Presentation(alphabet, matrix, tuple(rels))


# -- presets -----------------------------------------------------------------


def family_matrix(family: str, size: int) -> CoxeterMatrix:
    if family not in FAMILIES:
        raise InvalidInput(f"unknown family {family!r}")
    if size < MIN_SIZE[family]:
        raise InvalidInput(f"{family}:{size} is below the smallest supported size {MIN_SIZE[family]}")
    if family == "affine-a":
        n = size + 1
        rows = [[1 if i == j else 2 for j in range(n)] for i in range(n)]
        for i in range(n):
            j = (i + 1) % n
            rows[i][j] = rows[j][i] = 3 if n > 2 else INF
        return CoxeterMatrix.from_rows(rows)
    n = size
    rows = [[1 if i == j else 2 for j in range(n)] for i in range(n)]
    if family == "d":
        for i in range(n - 2):
            rows[i][i + 1] = rows[i + 1][i] = 3
        rows[n - 1][n - 3] = rows[n - 3][n - 1] = 3
    else:
        for i in range(n - 1):
            rows[i][i + 1] = rows[i + 1][i] = 3
        if family == "b":
            rows[n - 1][n - 2] = rows[n - 2][n - 1] = 4
    return CoxeterMatrix.from_rows(rows)


def family_names(family: str, size: int) -> tuple[str, ...]:
    if family == "affine-a":
        return tuple(f"s{i}" for i in range(size + 1))
    return tuple(f"s{i}" for i in range(1, size + 1))


@dataclass(frozen=True)
class Preset:
    """A named Coxeter group with a generator ranking.

    ``order="asc"`` makes the higher label the greater generator, matching the
    finite-type closed forms and the bundled affine A_3 basis; ``order="desc"``
    gives ``s_0 > s_1 > ... > s_n`` as used for the affine closed form.
    """

    family: str
    size: int
    order: str = "asc"
    matrix: CoxeterMatrix = field(init=False, repr=False, compare=False)
    alphabet: Alphabet = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if self.order not in ("asc", "desc"):
            raise InvalidInput(f"order must be 'asc' or 'desc', got {self.order!r}")
        object.__setattr__(self, "matrix", family_matrix(self.family, self.size))
        names = family_names(self.family, self.size)
        alphabet = Alphabet.ascending(names) if self.order == "asc" else Alphabet.descending(names)
        object.__setattr__(self, "alphabet", alphabet)

    @classmethod
    def parse(cls, text: str) -> Preset:
        parts = text.strip().lower().split(":")
        if len(parts) not in (2, 3) or parts[0] not in FAMILIES:
            raise InvalidInput(f"bad preset {text!r}; expected a:<l>, b:<l>, d:<l> or affine-a:<n> (optionally :asc/:desc)")
        try:
            size = int(parts[1])
        except ValueError:
            raise InvalidInput(f"bad preset size in {text!r}") from None
        order = parts[2] if len(parts) == 3 else "asc"
        return cls(parts[0], size, order)

    @property
    def name(self) -> str:
        base = f"{self.family}:{self.size}"
        return base if self.order == "asc" else base + ":desc"

    @property
    def ranking(self) -> tuple[int, ...]:
        return self.alphabet.ranking

    def presentation(self) -> Presentation:
        return presentation_from_matrix(self.matrix, self.alphabet)

    @property
    def first_label(self) -> int:
        return 0 if self.family == "affine-a" else 1

    def label_word(self, labels: Sequence[int]) -> Word:
        off = self.first_label
        return tuple(x - off for x in labels)

    def order_of_group(self) -> int | None:
        l = self.size
        if self.family == "a":
            return math.factorial(l + 1)
        if self.family == "b":
            return 2 ** l * math.factorial(l)
        if self.family == "d":
            return 2 ** (l - 1) * math.factorial(l)
        return None


def preset_matrix(family: str, size: int, order: str = "asc") -> tuple[CoxeterMatrix, tuple[int, ...]]:
    p = Preset(family, size, order)
    return p.matrix, p.ranking


def complete_preset(preset: Preset, caps: Caps | None = None):
    pres = preset.presentation()
    return complete(pres.relations, pres.alphabet, caps)


# -- word builders -------------------------------------------------------------


def word_sij(i: int, j: int, *, descending: bool = False) -> tuple[int, ...]:
    """Label word ``s_{ij}``.

    Default: ``s_i s_{i-1} ... s_j`` if ``i > j``, ``s_i`` if ``i == j`` and
    ``s_i s_{i+1} ... s_j`` if ``i < j``.  With ``descending=True`` only the
    falling form is allowed and ``s_{i,i+1}`` is the empty word.
    """
    if i > j:
        return tuple(range(i, j - 1, -1))
    if i == j:
        return (i,)
    if descending:
        if j == i + 1:
            return ()
        raise InvalidInput(f"s_{{{i},{j}}} is undefined in the descending convention")
    return tuple(range(i, j + 1))


def word_shat(i: int, j: int) -> tuple[int, ...]:
    """``ŝ_{ij} = s_i s_{i-1} s_{i+1} s_i ... s_{j+1} s_j`` for ``j >= i-1``."""
    if j < i - 1:
        raise InvalidInput(f"ŝ_{{{i},{j}}} needs j >= i-1")
    out: tuple[int, ...] = ()
    for t in range(i - 1, j + 1):
        out += (t + 1, t)
    return out


def _d_branch(l: int, j: int) -> tuple[int, ...]:
    # s_{l,j} = s_l s_{l-2} ... s_j in type D
    if j == l:
        return ()
    if j == l - 1:
        return (l,)
    if j > l - 2:
        raise InvalidInput(f"s_{{{l},{j}}} is undefined in type D")
    return (l,) + tuple(range(l - 2, j - 1, -1))


# -- closed-form families --------------------------------------------------------


@dataclass(frozen=True)
class Instance:
    """One instantiated family member, as label words ``left = right``."""

    family: str
    params: tuple[int, ...]
    left: tuple[int, ...]
    right: tuple[int, ...]


def _a_instances(l: int, prefix: str = "A") -> list[Instance]:
    out = []
    for i in range(1, l + 1):
        out.append(Instance(f"{prefix}1", (i,), (i, i), ()))
    for i in range(1, l + 1):
        for j in range(1, i - 1):
            out.append(Instance(f"{prefix}2", (i, j), (i, j), (j, i)))
    for i in range(1, l):
        out.append(Instance(f"{prefix}3", (i,), (i + 1, i, i + 1), (i, i + 1, i)))
    for i in range(1, l):
        for j in range(1, i + 1):
            w = word_sij(i + 1, j, descending=True)
            out.append(Instance(f"{prefix}4", (i, j), w + (i + 1,), (i,) + w))
    return out


def _b_instances(l: int) -> list[Instance]:
    sd = lambda i, j: word_sij(i, j, descending=True)  # noqa: E731
    out = []
    for i in range(1, l + 1):
        out.append(Instance("B1", (i,), (i, i), ()))
    for i in range(1, l + 1):
        for j in range(1, i - 1):
            out.append(Instance("B2", (i, j), (i, j), (j, i)))
    for i in range(1, l - 1):
        out.append(Instance("B3", (i,), (i + 1, i, i + 1), (i, i + 1, i)))
    for i in range(1, l - 1):
        for j in range(1, i + 1):
            out.append(Instance("B4", (i, j), sd(i + 1, j) + (i + 1,), (i,) + sd(i + 1, j)))
    out.append(Instance("B5", (), (l, l - 1, l, l - 1), (l - 1, l, l - 1, l)))
    for j in range(1, l):
        out.append(Instance("B6", (j,), sd(l, j) + sd(l, j), (l - 1,) + sd(l, j) + sd(l, j + 1)))
    return out


def _d_instances(l: int, reading: str) -> list[Instance]:
    sd = lambda i, j: word_sij(i, j, descending=True)  # noqa: E731
    br = lambda j: _d_branch(l, j)  # noqa: E731
    out = _a_instances(l - 1, prefix="D:A")
    out.append(Instance("D1", (), (l, l), ()))
    out.append(Instance("D2", (), (l, l - 1), (l - 1, l)))
    out.append(Instance("D3", (), (l, l - 2, l), (l - 2, l, l - 2)))
    for j in range(1, l - 1):
        out.append(Instance("D4", (j,), br(j) + sd(l - 1, j), (l - 1,) + br(j) + sd(l - 1, j + 1)))
    for j in range(1, l - 1):
        out.append(Instance("D5", (j,), br(j) + (l - 1, l), (l - 2,) + br(j) + (l - 1,)))
    for k in range(1, l - 1):
        for j in range(1, k):
            if reading == "printed":
                left = br(j) + sd(l - 1, k)
            else:
                left = br(j) + sd(l - 1, k) + br(k)
            out.append(Instance("D6", (j, k), left, (l - 2,) + br(j) + sd(l - 1, k) + br(k + 1)))
    for i in range(1, l):
        out.append(Instance("D7", (i,), (i, i), ()))
    for i in range(1, l + 1):
        for j in range(1, i - 2):
            out.append(Instance("D8", (i, j), (i, j), (j, i)))
    for i in range(1, l - 1):
        out.append(Instance("D9", (i,), (i + 1, i, i + 1), (i, i + 1, i)))
    for i in range(1, l - 1):
        for j in range(1, i + 1):
            out.append(Instance("D10", (i, j), sd(i + 1, j) + (i + 1,), (i,) + sd(i + 1, j)))
    if reading != "printed":
        # s_i read as the generator preceding s_{i+1} in the s_{l,j} chain, i.e. s_{l-2}
        for j in range(1, l - 1):
            out.append(Instance("D10", (l - 1, j), br(j) + (l,), (l - 2,) + br(j)))
    return out


def _affine_instances(n: int) -> list[Instance]:
    S, H = word_sij, word_shat
    out = []
    for i in range(n + 1):
        out.append(Instance("init", (i,), (i, i), ()))
    for i in range(n + 1):
        for j in range(i + 2, n + 1):
            if not (i == 0 and j == n):
                out.append(Instance("init", (i, j), (i, j), (j, i)))
    for i in range(n):
        out.append(Instance("init", (i,), (i, i + 1, i), (i + 1, i, i + 1)))
    out.append(Instance("init", (), (0, n, 0), (n, 0, n)))

    for i in range(n - 1):
        for j in range(i + 2, n + 1):
            if i == 0 and j == n:
                continue
            out.append(Instance("R1", (i, j), S(i, j) + (i,), (i + 1,) + S(i, j)))
    for j in range(2, n - 1):
        for k in range(n, j + 1, -1):
            out.append(Instance("R2", (j, k), (0,) + S(n, k) + (j,), (j, 0) + S(n, k)))
    for j in range(n - 1, -1, -1):
        out.append(Instance("R3", (j,), (0,) + S(n, j) + (j + 1,), (j, 0) + S(n, j)))
    for j in range(2, n):
        out.append(Instance("R4", (j,), (0,) + S(n, j) + (0,), (n, 0) + S(n, j)))
    for j in range(2, n + 1):
        for k in range(n):
            out.append(Instance("R5", (j, k), (0,) + S(n, j) + H(1, k) + (k + 1,), (n, 0) + S(n, j) + H(1, k)))
    for j in range(1, n):
        out.append(Instance("R6", (j,), S(0, j) + (n, 0, n), (1,) + S(0, j) + (n, 0)))
    for j in range(2, n):
        for k in range(j - 1, n + 1):
            out.append(Instance("R7", (j, k), (0,) + S(n, j) + (1, 0) + S(n, k) + (1,),
                                (n, 0) + S(n, j) + (1, 0) + S(n, k)))
    for j in range(2, n):
        for k in range(j + 1, n + 1):
            for l in range(1, n):
                tail = (0,) + S(n, j) + (1, 0) + S(n, k) + H(2, l)
                out.append(Instance("R8", (j, k, l), tail + (l + 1,), (n,) + tail))
    for j in range(1, n):
        for k in range(n - 1, j + 1, -1):
            out.append(Instance("R9", (j, k), S(0, j) + (n, k, 0) + S(n, k),
                                (1,) + S(0, j) + (n, 0) + S(n - 1, k) + (k + 1,)))
    for j in range(1, n):
        for k in range(n - 1, j + 1, -1):
            for l in range(k - 1, 1, -1):
                out.append(Instance("R10", (j, k, l), S(0, j) + (n,) + S(k, l) + (0,) + S(n, l),
                                    (1,) + S(0, j) + (n, 0) + S(n - 1, l) + S(k + 1, l + 1)))
    return out


def closed_form_instances(family: str, size: int, reading: str = "resolved") -> list[Instance]:
    """Every family member over its index ranges, in the family's own labels.

    The affine families are written for the ranking ``s_0 > ... > s_n`` and
    already include the initial relations.  ``reading`` only affects type D:
    ``"printed"`` keeps D6 and D10 literally, ``"resolved"`` uses the forms
    that agree with completion.
    """
    if reading not in ("resolved", "printed"):
        raise InvalidInput(f"reading must be 'resolved' or 'printed', got {reading!r}")
    if size < MIN_SIZE[family]:
        raise InvalidInput(f"{family}:{size} is below the smallest supported size")
    if family == "a":
        return _a_instances(size)
    if family == "b":
        return _b_instances(size)
    if family == "d":
        return _d_instances(size, reading)
    if family == "affine-a":
        return _affine_instances(size)
    raise InvalidInput(f"unknown family {family!r}")


def native_order(family: str) -> str:
    """The ranking the closed-form families are written for."""
    return "desc" if family == "affine-a" else "asc"


def _instance_map(preset: Preset) -> list[int]:
    """Label-index permutation taking native family indices to the preset's."""
    n = preset.alphabet.size
    if preset.order == native_order(preset.family):
        return list(range(n))
    # reversing the labels is a diagram automorphism of the affine cycle that
    # swaps the two rankings; finite types have no such automorphism
    if preset.family != "affine-a":
        raise InvalidInput(f"closed forms for {preset.family} are only stated for the ascending ranking")
    return [n - 1 - g for g in range(n)]


def instance_rules(preset: Preset, instances: Sequence[Instance]) -> list[tuple[Instance, Rule | None]]:
    """Map each instance into the preset's indices and orient it (``None`` if both sides agree)."""
    perm = _instance_map(preset)
    out = []
    for inst in instances:
        u = tuple(perm[g] for g in preset.label_word(inst.left))
        v = tuple(perm[g] for g in preset.label_word(inst.right))
        out.append((inst, None if u == v else Rule.oriented(u, v, preset.alphabet)))
    return out


def closed_form_basis(preset: Preset | str, reading: str = "resolved") -> list[Rule]:
    """Closed-form basis instantiated for ``preset``, oriented and interreduced."""
    if isinstance(preset, str):
        preset = Preset.parse(preset)
    pairs = [r for _, r in instance_rules(preset, closed_form_instances(preset.family, preset.size, reading))
             if r is not None]
    pairs += list(preset.presentation().relations)
    return interreduce(pairs, preset.alphabet)


@dataclass
class InstanceVerdict:
    instance: Instance
    rule: Rule | None
    verdict: str  # "basis", "implied", "false" or "empty"


@dataclass
class ClosedFormAudit:
    preset: Preset
    reading: str
    completed: list[Rule]
    closed_form: list[Rule]
    verdicts: list[InstanceVerdict]
    missing: list[Rule]  # in the completed basis, absent from the closed form
    extra: list[Rule]  # in the closed form, absent from the completed basis
    missing_true_only: list[Rule]  # still missing once false instances are dropped

    @property
    def equal(self) -> bool:
        return not self.missing and not self.extra

    def family_summary(self) -> dict[str, dict[str, int]]:
        out: dict[str, dict[str, int]] = {}
        for v in self.verdicts:
            counts = out.setdefault(v.instance.family, {"basis": 0, "implied": 0, "false": 0, "empty": 0})
            counts[v.verdict] += 1
        return out


def audit_closed_form(preset: Preset | str, reading: str = "resolved", caps: Caps | None = None) -> ClosedFormAudit:
    """Compare the instantiated families against the completion of the presentation."""
    if isinstance(preset, str):
        preset = Preset.parse(preset)
    result = complete_preset(preset, caps)
    system = result.system
    completed = system.canonical_rules()
    basis = system.pairs()
    verdicts = []
    for inst, rule in instance_rules(preset, closed_form_instances(preset.family, preset.size, reading)):
        if rule is None:
            verdicts.append(InstanceVerdict(inst, None, "empty"))
        elif (rule.lhs, rule.rhs) in basis:
            verdicts.append(InstanceVerdict(inst, rule, "basis"))
        elif system.normal_form(rule.lhs) == system.normal_form(rule.rhs):
            verdicts.append(InstanceVerdict(inst, rule, "implied"))
        else:
            verdicts.append(InstanceVerdict(inst, rule, "false"))
    cf = closed_form_basis(preset, reading)
    cf_pairs = {(r.lhs, r.rhs) for r in cf}
    key = lambda r: canonical_key(r, preset.alphabet)  # noqa: E731
    missing = sorted((r for r in completed if (r.lhs, r.rhs) not in cf_pairs), key=key)
    extra = sorted((r for r in cf if (r.lhs, r.rhs) not in basis), key=key)
    true_rules = [v.rule for v in verdicts if v.verdict in ("basis", "implied")]
    cf_true = {(r.lhs, r.rhs) for r in interreduce(true_rules + list(preset.presentation().relations), preset.alphabet)}
    missing_true = [r for r in missing if (r.lhs, r.rhs) not in cf_true]
    return ClosedFormAudit(preset, reading, completed, cf, verdicts, missing, extra, missing_true)


def relabel_rules(rules: Sequence[Rule], perm: Sequence[int], alphabet: Alphabet) -> list[Rule]:
    """Rename generator ``g`` to ``perm[g]`` and re-orient under ``alphabet``."""
    out = []
    for r in rules:
        out.append(Rule.oriented(tuple(perm[g] for g in r.lhs), tuple(perm[g] for g in r.rhs), alphabet, r.id))
    return out


def system_from_rules(alphabet: Alphabet, rules: Sequence[Rule]) -> RewriteSystem:
    return RewriteSystem.from_pairs(alphabet, [(r.lhs, r.rhs) for r in rules]).seal()
