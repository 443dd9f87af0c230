import json

import pytest

from sevidence import gk
from sevidence.gk import (BOX, CONTR_L, WEAK_L, DerivationError, GKDerivation, Sequent,
                          check_derivation, compute_families, equalize_all, equalize_box_premises,
                          is_valid_derivation, prove, prove_sequent)
from sevidence.kripke import countermodel, is_valid
from sevidence.parser import parse_formula
from sevidence.printer import format_formula
from sevidence.syntax import Atom, Box, Polarity, annotate_polarity, boxes

P = Atom("P")


def M(text):
    return parse_formula(text, "modal")


def box_rules(d):
    return [n for n in d.nodes() if n.rule == BOX]


PROVABLE = [
    "[](P -> Q) -> []P -> []Q",
    "P -> P",
    "[]P -> []P",
    "[](P -> P)",
    "[]P & []Q -> [](P & Q)",
    "[](P & Q) -> []P",
    "[]bot -> []P",
    "~[]bot -> ~[]~P | ~[]P",
    "[][](P -> P)",
    "[]P | []Q -> [](P | Q)",
]
UNPROVABLE = ["[]P -> P", "[]P -> [][]P", "[](P | Q) -> []P | []Q", "P", "~[]bot", "[]P -> []Q"]


@pytest.mark.parametrize("text", PROVABLE)
def test_provable(text):
    goal = M(text)
    d = prove(goal)
    assert d is not None
    check_derivation(d)
    assert d.sequent == Sequent((), (goal,))
    assert is_valid(goal)


@pytest.mark.parametrize("text", UNPROVABLE)
def test_unprovable(text):
    goal = M(text)
    assert prove(goal) is None
    m = countermodel(goal)
    assert m is not None and not m.holds(goal)


def test_reflexivity_countermodel_is_small():
    m = countermodel(M("[]P -> P"))
    assert m.n_worlds <= 2


def test_identity_is_axiom_plus_imp_r():
    d = prove(M("P -> P"))
    assert d.rule == gk.IMP_R
    assert d.children[0].rule == gk.AX_P


def test_k_axiom_box_rule_weakens_nothing():
    d = prove(M("[](P -> Q) -> []P -> []Q"))
    (node,) = box_rules(d)
    assert sorted(format_formula(f) for f in node.sequent.ante) == ["[](P -> Q)", "[]P"]
    assert format_formula(node.principal) == "[]Q"
    parent = next(n for n in d.nodes() if node in n.children)
    assert parent.rule == gk.IMP_R


def test_duplicate_antecedent():
    d = prove_sequent((P, P), (P,))
    check_derivation(d)
    assert d.rule in (WEAK_L, CONTR_L)
    assert d.sequent == Sequent((P, P), (P,))


def test_checker_rejects_bad_rule():
    bad = GKDerivation(Sequent((P,), (Atom("Q"),)), gk.AX_P, P)
    assert not is_valid_derivation(bad)
    box = Box(P)
    bad_box = GKDerivation(Sequent((P,), (box,)), BOX, box,
                           (GKDerivation(Sequent((P,), (P,)), gk.AX_P, P),))
    with pytest.raises(DerivationError):
        check_derivation(bad_box)


def test_serialization():
    d = prove(M("[](P -> Q) -> []P -> []Q"))
    doc = json.loads(d.to_json())
    assert doc["schema"] == gk.DERIVATION_SCHEMA
    assert doc["root"]["rule"] == d.rule
    assert d.format().splitlines()[0].startswith("=> ")


def test_derivation_formulas_share_root_occurrences():
    goal = M("[](P -> Q) -> []P -> []Q")
    d = prove(goal)
    root_occs = {b.occ for b in boxes(goal)}
    for n in d.nodes():
        for f in n.sequent.ante + n.sequent.succ:
            assert {b.occ for b in boxes(f)} <= root_occs


class TestFamilies:
    def test_necessitation(self):
        goal = M("[](P -> P)")
        fams = compute_families(prove(goal))
        (fam,) = fams.families.values()
        assert fam.polarity is Polarity.POSITIVE and fam.essential

    def test_k_axiom(self):
        goal = M("[](P -> Q) -> []P -> []Q")
        fams = compute_families(prove(goal))
        a, b, c = goal.left, goal.right.left, goal.right.right
        assert len(fams.families) == 3
        assert fams.of(a.occ).polarity is Polarity.NEGATIVE and not fams.of(a.occ).essential
        assert fams.of(b.occ).polarity is Polarity.NEGATIVE and not fams.of(b.occ).essential
        assert fams.of(c.occ).polarity is Polarity.POSITIVE and fams.of(c.occ).essential

    def test_box_rule_does_not_relate_its_own_boxes(self):
        # the box rule relates the bodies, which contain no boxes here
        goal = M("[]P -> []P")
        fams = compute_families(prove(goal))
        assert len(fams.families) == 2

    def test_polarity_uniform(self):
        for text in PROVABLE:
            goal = M(text)
            d = prove(goal)
            fams = compute_families(d)
            pol = annotate_polarity(goal)
            for occ, p in pol.items():
                assert fams.of(occ).polarity is p


class TestEqualize:
    GOAL = "[]P | ([]P & []Q) -> []P"

    def test_pads_short_premise(self):
        d = prove(M(self.GOAL))
        fams = compute_families(d)
        (fam,) = [f for f in fams.essential() if len(f.box_nodes) == 2]
        assert sorted(len(n.children[0].sequent.ante) for n in fam.box_nodes) == [1, 2]
        e = equalize_box_premises(d, fam)
        check_derivation(e)
        assert e.sequent == d.sequent
        fam2 = compute_families(e).of(fam.members[0])
        assert [len(n.children[0].sequent.ante) for n in fam2.box_nodes] == [2, 2]
        count = lambda t, rule: sum(n.rule == rule for n in t.nodes())  # noqa: E731
        assert count(e, WEAK_L) == count(d, WEAK_L) + 1
        assert count(e, CONTR_L) == count(d, CONTR_L) + 1

    def test_already_equal(self):
        d = prove(M("[](P -> Q) -> []P -> []Q"))
        (fam,) = compute_families(d).essential()
        assert equalize_box_premises(d, fam) is d
        assert equalize_all(d) is d

    def test_empty_premise(self):
        d = prove(M("[](P -> P)"))
        (fam,) = compute_families(d).essential()
        with pytest.raises(DerivationError):
            equalize_box_premises(d, fam)
