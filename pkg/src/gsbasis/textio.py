"""Reading and writing presentations, Coxeter matrices, bases and derivation logs.

Presentation text format::

    # comment
    generators: s0 s1 s2
    ranking: s2 s1 s0        # optional, greatest first; default: last listed is greatest
    s0 s0 = 1
    s1 s0 s1 = s0 s1 s0

Basis files are JSON with a fixed key order, so equal bases serialize to
identical bytes.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

from gsbasis.completion import Derivation, Status
from gsbasis.coxeter import CoxeterMatrix
from gsbasis.errors import InvalidInput
from gsbasis.rewrite import RewriteSystem, Rule, canonical_key
from gsbasis.words import Alphabet, Word

BASIS_FORMAT = "gsbasis-basis/1"


class ParseError(InvalidInput):
    def __init__(self, message: str, line: int | None = None, source: str = "<input>") -> None:
        self.line = line
        self.source = source
        where = f"{source}:{line}: " if line is not None else f"{source}: "
        super().__init__(where + message)


@dataclass(frozen=True)
class PresentationText:
    alphabet: Alphabet
    relations: tuple[tuple[Word, Word], ...]

    def oriented_rules(self) -> list[Rule]:
        """Relations as oriented rules; relations with equal sides are skipped."""
        return [Rule.oriented(u, v, self.alphabet, i) for i, (u, v) in enumerate(self.relations) if u != v]


def _strip_comment(line: str) -> str:
    return line.split("#", 1)[0].strip()


def parse_presentation(text: str, source: str = "<input>") -> PresentationText:
    names: list[str] | None = None
    ranking_names: list[str] | None = None
    raw: list[tuple[int, str, str]] = []
    for lineno, line in enumerate(text.splitlines(), 1):
        body = _strip_comment(line)
        if not body:
            continue
        head, sep, rest = body.partition(":")
        key = head.strip().lower()
        if sep and key in ("generators", "ranking"):
            tokens = rest.split()
            if key == "generators":
                if names is not None:
                    raise ParseError("generators declared twice", lineno, source)
                if not tokens:
                    raise ParseError("no generators declared", lineno, source)
                names = tokens
            else:
                if ranking_names is not None:
                    raise ParseError("ranking declared twice", lineno, source)
                ranking_names = tokens
            continue
        if "=" not in body:
            raise ParseError(f"expected 'word = word', got {body!r}", lineno, source)
        left, _, right = body.partition("=")
        if "=" in right:
            raise ParseError("more than one '=' in relation", lineno, source)
        raw.append((lineno, left.strip(), right.strip()))
    if names is None:
        raise ParseError("missing 'generators:' line", None, source)
    try:
        if ranking_names is None:
            alphabet = Alphabet.ascending(names)
        else:
            if sorted(ranking_names) != sorted(names):
                raise ParseError("ranking must list every generator exactly once", None, source)
            alphabet = Alphabet(tuple(names), tuple(names.index(n) for n in ranking_names))
    except ParseError:
        raise
    except InvalidInput as exc:
        raise ParseError(str(exc), None, source) from None
    relations = []
    for lineno, left, right in raw:
        if not left or not right:
            raise ParseError("both sides of a relation must be nonempty (use 1 for the identity)", lineno, source)
        try:
            u, v = alphabet.parse(left), alphabet.parse(right)
        except InvalidInput as exc:
            raise ParseError(str(exc), lineno, source) from None
        if u == v:
            raise ParseError("relation has identical sides", lineno, source)
        relations.append((u, v))
    return PresentationText(alphabet, tuple(relations))


def format_presentation(alphabet: Alphabet, relations: Iterable[tuple[Word, Word]]) -> str:
    lines = [
        "generators: " + " ".join(alphabet.names),
        "ranking: " + " ".join(alphabet.names[g] for g in alphabet.ranking),
    ]
    for u, v in relations:
        lines.append(f"{alphabet.format(u)} = {alphabet.format(v)}")
    return "\n".join(lines) + "\n"


def parse_matrix(text: str, source: str = "<input>") -> CoxeterMatrix:
    """Whitespace separated square integer grid; ``0`` stands for infinity."""
    rows = []
    for lineno, line in enumerate(text.splitlines(), 1):
        body = _strip_comment(line)
        if not body:
            continue
        try:
            row = [int(t) for t in body.split()]
        except ValueError:
            raise ParseError(f"non-integer entry in {body!r}", lineno, source) from None
        if any(m < 0 for m in row):
            raise ParseError("entries must be nonnegative", lineno, source)
        rows.append([math.inf if m == 0 else m for m in row])
    try:
        return CoxeterMatrix.from_rows(rows)
    except InvalidInput as exc:
        raise ParseError(str(exc), None, source) from None


def format_matrix(matrix: CoxeterMatrix) -> str:
    return "\n".join(" ".join("0" if m == math.inf else str(int(m)) for m in row) for row in matrix.entries) + "\n"


# -- basis files ---------------------------------------------------------------


@dataclass
class BasisFile:
    system: RewriteSystem
    status: str = Status.CLOSED.value
    matrix: CoxeterMatrix | None = None
    preset: str | None = None


def basis_to_dict(system: RewriteSystem, status: Status | str = Status.CLOSED,
                  matrix: CoxeterMatrix | None = None, preset: str | None = None) -> dict:
    alphabet = system.alphabet
    rules = sorted(system.rules, key=lambda r: canonical_key(r, alphabet))
    out = {
        "format": BASIS_FORMAT,
        "generators": list(alphabet.names),
        "ranking": list(alphabet.ranking),
        "status": status.value if isinstance(status, Status) else status,
        "preset": preset,
        "matrix": None if matrix is None else [[0 if m == math.inf else int(m) for m in row] for row in matrix.entries],
        "rules": [[list(r.lhs), list(r.rhs)] for r in rules],
    }
    return out


def dump_basis(system: RewriteSystem, status: Status | str = Status.CLOSED,
               matrix: CoxeterMatrix | None = None, preset: str | None = None) -> str:
    d = basis_to_dict(system, status, matrix, preset)
    rules = d.pop("rules")
    head = json.dumps(d, separators=(", ", ": "))[:-1]
    body = ",\n".join("  " + json.dumps(r, separators=(",", ":")) for r in rules)
    return head + ', "rules": [\n' + body + "\n]}\n"


def load_basis(text: str, source: str = "<input>") -> BasisFile:
    try:
        d = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", exc.lineno, source) from None
    if not isinstance(d, dict) or d.get("format") != BASIS_FORMAT:
        raise ParseError(f"not a basis file (expected format {BASIS_FORMAT!r})", None, source)
    try:
        alphabet = Alphabet(tuple(d["generators"]), tuple(d["ranking"]))
        system = RewriteSystem(alphabet)
        for lhs, rhs in d["rules"]:
            system.add(tuple(lhs), tuple(rhs))
        matrix = None
        if d.get("matrix") is not None:
            matrix = CoxeterMatrix.from_rows([[math.inf if m == 0 else m for m in row] for row in d["matrix"]])
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed basis file: {exc}", None, source) from None
    return BasisFile(system.seal(), d.get("status", Status.CLOSED.value), matrix, d.get("preset"))


def looks_like_json(text: str) -> bool:
    return text.lstrip().startswith("{")


def read_text(path: str | Path) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InvalidInput(f"cannot read {path}: {exc.strerror}") from None


# -- derivation log --------------------------------------------------------------


def format_log(log: Sequence[Derivation], alphabet: Alphabet) -> str:
    """One JSON object per line: new rule, origin, parent ids and witness."""
    lines = []
    for d in log:
        rec = {
            "rule": d.rule_id,
            "lhs": alphabet.format(d.lhs),
            "rhs": alphabet.format(d.rhs),
            "origin": d.origin,
            "parents": list(d.parents),
            "witness": None if d.witness is None else alphabet.format(d.witness),
        }
        lines.append(json.dumps(rec))
    return "\n".join(lines) + ("\n" if lines else "")
