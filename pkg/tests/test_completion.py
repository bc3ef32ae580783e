from __future__ import annotations

import random

import pytest

from gsbasis.completion import (Caps, Status, chained_composition_check, complete, compose, interreduce,
                                verify_closed)
from gsbasis.coxeter import Preset, closed_form_basis, complete_preset
from gsbasis.enumerate import growth
from gsbasis.errors import InvalidInput, PreconditionError
from gsbasis.oracle import GroupModel, cayley_growth
from gsbasis.rewrite import RewriteSystem, Rule
from gsbasis.textio import dump_basis, parse_presentation
from gsbasis.words import Alphabet, find_ambiguities
from helpers import all_rewrite_results, completed, sample_chained_triples

from importlib.resources import files


def fixture_rules():
    text = (files("gsbasis") / "data" / "affine_a3_basis.txt").read_text()
    pres = parse_presentation(text)
    return pres.alphabet, pres.oriented_rules()


def initial_system(name):
    preset = Preset.parse(name)
    return preset, RewriteSystem(preset.alphabet, preset.presentation().relations).seal()


def test_braid_self_overlap_is_trivial():
    preset, sys_ = initial_system("affine-a:3")
    f = next(r for r in sys_.rules if r.lhs == (1, 0, 1))
    (amb,) = find_ambiguities(f.lhs, f.lhs)
    res = compose(f, f, amb, sys_)
    assert res.trivial
    assert res.raw == ((0, 1, 0, 0, 1), (1, 0, 0, 1, 0))
    # cross-check with every rewrite order
    pairs = [(r.lhs, r.rhs) for r in sys_.rules]
    assert all_rewrite_results(res.raw[0], pairs) == all_rewrite_results(res.raw[1], pairs)


def test_commutation_overlap_trivial_with_extra_rule():
    preset = Preset.parse("affine-a:3:desc")
    rels = list(preset.presentation().relations)
    rels.append(Rule(len(rels), (0, 1, 2, 0), (1, 0, 1, 2)))
    sys_ = RewriteSystem(preset.alphabet, rels).seal()
    f = next(r for r in sys_.rules if r.lhs == (0, 1, 0))
    g = next(r for r in sys_.rules if r.lhs == (0, 2))
    (amb,) = find_ambiguities(f.lhs, g.lhs)
    assert amb.witness == (0, 1, 0, 2)
    assert compose(f, g, amb, sys_).trivial


@pytest.mark.parametrize("i", [0, 1])
def test_first_derived_affine_rule(i):
    preset, sys_ = initial_system("affine-a:4:desc")
    f = next(r for r in sys_.rules if r.lhs == (i, i + 1, i))
    g = next(r for r in sys_.rules if r.lhs == (i, i + 2))
    (amb,) = find_ambiguities(f.lhs, g.lhs)
    res = compose(f, g, amb, sys_)
    assert res.residue.lhs == (i, i + 1, i + 2, i)
    assert res.residue.rhs == (i + 1, i, i + 1, i + 2)


def test_compose_rejects_foreign_ambiguity():
    preset, sys_ = initial_system("a:3")
    f = next(r for r in sys_.rules if r.lhs == (1, 0, 1))
    g = next(r for r in sys_.rules if r.lhs == (2, 0))
    (amb,) = find_ambiguities((1, 0, 1), (1, 0, 1))
    with pytest.raises(InvalidInput):
        compose(f, g, amb, sys_)


def test_a3_completion_is_closed_with_seven_rules():
    preset, result = completed("a:3")
    assert result.status is Status.CLOSED
    assert len(result.system) == 7
    assert {(r.lhs, r.rhs) for r in closed_form_basis(preset)} == result.system.pairs()


def test_affine_a3_completion_reproduces_published_list():
    alphabet, rules = fixture_rules()
    preset, result = completed("affine-a:3", 12)
    assert result.status is Status.CLOSED
    assert alphabet == preset.alphabet
    assert result.system.pairs() == {(r.lhs, r.rhs) for r in rules}
    assert len(rules) == 27


def test_single_involution_is_closed():
    A = Alphabet.ascending(["s0"])
    result = complete([((0, 0), ())], A)
    assert result.status is Status.CLOSED
    assert result.system.pairs() == {((0, 0), ())}


def test_zero_cap_rejected():
    with pytest.raises(InvalidInput):
        Caps(max_word_len=0)


def test_unoriented_initial_rule_rejected():
    A = Alphabet.ascending(["a", "b"])
    with pytest.raises(InvalidInput):
        complete([((0,), (1,))], A)


def test_length_cap_downgrades_status():
    preset = Preset.parse("affine-a:3")
    result = complete_preset(preset, Caps(max_word_len=6))
    assert result.status is Status.LENGTH_CAPPED
    assert result.cap == 6
    assert all(len(r.lhs) <= 6 for r in result.system.rules)


def test_rule_and_step_caps():
    preset = Preset.parse("affine-a:4:desc")
    r = complete_preset(preset, Caps(max_rules=20))
    assert r.status is Status.RULE_CAPPED and r.cap == 20
    s = complete_preset(preset, Caps(max_steps=5))
    assert s.status is Status.STEP_CAPPED


def test_published_list_verifies_closed():
    alphabet, rules = fixture_rules()
    sys_ = RewriteSystem(alphabet, rules).seal()
    assert verify_closed(sys_) == []


def test_initial_affine_relations_are_not_closed():
    _, sys_ = initial_system("affine-a:3")
    residues = verify_closed(sys_)
    assert residues
    assert (3, 0, 1, 0) in {r.residue.lhs for r in residues}


def test_closed_form_instantiation_for_affine_n3_is_not_closed():
    # frozen from the completion cross-check: false family members collapse the system
    preset = Preset.parse("affine-a:3:desc")
    sys_ = RewriteSystem(preset.alphabet, closed_form_basis(preset)).seal()
    assert len(verify_closed(sys_)) > 0


def test_interreduce_drops_redundant_rule():
    A = Alphabet.ascending(["s1"])
    out = interreduce([((0, 0), ()), ((0, 0, 0), (0,))], A)
    assert [(r.lhs, r.rhs) for r in out] == [((0, 0), ())]


def test_interreduce_keeps_reduced_system():
    A = Alphabet.ascending(["s1", "s2"])
    rules = [((1, 0, 1), (0, 1, 0)), ((1, 1), ())]
    out = interreduce(rules, A)
    assert {(r.lhs, r.rhs) for r in out} == set(rules)


def test_interreduce_published_list_unchanged_and_idempotent():
    alphabet, rules = fixture_rules()
    once = interreduce(rules, alphabet)
    assert {(r.lhs, r.rhs) for r in once} == {(r.lhs, r.rhs) for r in rules}
    assert interreduce(once, alphabet) == once
    # pairwise factor scan
    for r in rules:
        for s in rules:
            if r is not s:
                n = len(s.lhs)
                assert all(r.lhs[p:p + n] != s.lhs for p in range(len(r.lhs) - n + 1))


@pytest.mark.parametrize("name", ["a:4", "b:4", "d:4", "affine-a:3", "affine-a:4:desc"])
def test_completed_systems_are_interreduced(name):
    _, result = completed(name)
    sys_ = result.system
    for r in sys_.rules:
        assert sys_.is_irreducible(r.rhs)
        others = [s for s in sys_.rules if s.id != r.id]
        for s in others:
            n = len(s.lhs)
            assert all(r.lhs[p:p + n] != s.lhs for p in range(len(r.lhs) - n + 1))


def test_chained_composition_on_commutation_chain():
    preset, result = completed("affine-a:4:desc")
    sys_ = result.system
    get = lambda lhs: next(r for r in sys_.rules if r.lhs == lhs)  # noqa: E731
    f, g, h = get((0, 1, 0)), get((0, 2)), get((2, 4))
    assert chained_composition_check(f, g, h, sys_) is True


def test_chained_composition_margin_violation():
    A = Alphabet.descending(["s0", "s1", "s2", "s3"])
    sys_ = RewriteSystem.from_pairs(A, [((0, 1, 2), (1,)), ((1, 2, 3), (2,)), ((2, 3, 0), (3,))]).seal()
    f, g, h = sys_.rules
    with pytest.raises(PreconditionError):
        chained_composition_check(f, g, h, sys_)


def test_chained_composition_of_rule_with_itself():
    _, result = completed("a:2")
    sys_ = result.system
    f = next(r for r in sys_.rules if r.lhs == (1, 0, 1))
    assert chained_composition_check(f, f, f, sys_, 1, 1) is True
    # brute force: the nested composition's two sides reach the same normal forms
    pairs = [(r.lhs, r.rhs) for r in sys_.rules]
    left = (1, 0) + f.rhs + (0, 1)
    right = f.rhs + (0,) + f.rhs
    assert all_rewrite_results(left, pairs) == all_rewrite_results(right, pairs)


def test_chained_composition_property_sample():
    rng = random.Random(1)
    for name in ("a:4", "b:3", "d:4", "affine-a:3", "affine-a:4:desc"):
        _, result = completed(name)
        triples = sample_chained_triples(result.system, 100, rng)
        assert triples
        for f, g, h, k1, k2 in triples:
            assert chained_composition_check(f, g, h, result.system, k1, k2)


def test_completion_is_deterministic():
    preset = Preset.parse("affine-a:3")
    a = complete_preset(preset)
    b = complete_preset(preset)
    assert dump_basis(a.system, a.status) == dump_basis(b.system, b.status)
    assert [(d.lhs, d.rhs, d.origin, d.parents) for d in a.log] == [(d.lhs, d.rhs, d.origin, d.parents) for d in b.log]


@pytest.mark.parametrize("name", ["a:3", "affine-a:3", "affine-a:4:desc"])
def test_every_logged_rule_holds_in_the_group(name):
    preset, result = completed(name)
    model = GroupModel.for_preset(preset)
    assert result.log
    for d in result.log:
        assert model.element_of(d.lhs) == model.element_of(d.rhs)
        assert d.origin in ("initial", "composition", "collapse")
        if d.origin == "composition":
            assert len(d.parents) == 2 and d.witness


@pytest.mark.parametrize("name", ["a:2", "a:3", "a:4", "b:2", "b:3", "d:3", "d:4", "affine-a:3", "affine-a:4:desc"])
def test_closed_systems_satisfy_both_sides_of_the_census(name):
    preset, result = completed(name)
    assert verify_closed(result.system) == []
    model = GroupModel.for_preset(preset)
    assert growth(result.system, 8).counts == cayley_growth(model, 8).counts


def test_initial_affine_system_overcounts():
    preset, sys_ = initial_system("affine-a:3")
    assert verify_closed(sys_)
    ours = growth(sys_, 6).counts
    ref = cayley_growth(GroupModel.for_preset(preset), 6).counts
    assert all(a >= b for a, b in zip(ours, ref))
    assert any(a > b for a, b in zip(ours, ref))
