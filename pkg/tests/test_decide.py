"""Decision pipeline: necessary condition, witness search and
verification, closed-form fastpath, four-map obstruction."""

import random
from fractions import Fraction

import pytest

from lipeq import IfsSpec, decide, verify_witness, Witness, SearchBudget
from lipeq.decide import (check_necessary, find_witness,
                          closed_form_witnesses, branch4_obstruction)
from lipeq.exactnum import ExactRatio, DeclaredBase

from conftest import (make_one45, make_equal_spec, make_endratio_spec,
                      random_equal_spec)


class TestNecessary:
    def test_equal_end_ratios(self):
        nec = check_necessary(make_one45())
        assert nec.ok and nec.pq == (1, 1)

    def test_dependent_end_ratios(self):
        spec = make_endratio_spec(Fraction(1, 4), Fraction(1, 8),
                                  r2=Fraction(1, 3))
        nec = check_necessary(spec)
        assert nec.ok and nec.pq == (3, 2)

    def test_independent_end_ratios(self):
        spec = make_endratio_spec(Fraction(1, 2), Fraction(1, 3),
                                  r2=Fraction(1, 12))
        assert not check_necessary(spec).ok


class TestWitnessVerification:
    def test_one45_right_witness(self):
        spec = make_one45()
        w = Witness("right", 2, 2, 0, (2, 1), "manual")
        verify_witness(spec, w)

    def test_wrong_diameter_rejected(self):
        spec = make_one45()
        with pytest.raises(Exception):
            verify_witness(spec, Witness("right", 2, 3, 0, (2, 1), "manual"))

    def test_inadmissible_last_letter_rejected(self):
        spec = make_one45()
        # rho_2 rho_3^2 = rho_3 rho_1 rho_2 holds but a right witness
        # must not end in a touching letter
        with pytest.raises(Exception):
            verify_witness(spec, Witness("right", 2, 2, 0, (1, 2), "manual"))

    def test_left_witness(self):
        # mirror of the standard example touches at letter 1
        spec = make_one45().mirror()
        w = Witness("left", 1, 2, 0, (2, 3), "manual")
        verify_witness(spec, w)


class TestSearch:
    def test_search_agrees_with_fastpath(self):
        spec = make_one45()
        w, status = find_witness(spec, 2, "right", SearchBudget())
        assert status == "found"
        verify_witness(spec, w)

    def test_minimal_witness_preferred(self):
        # the search finds the one-letter witness rho_2 rho_3 = rho_3 rho_1
        spec = make_one45()
        w, status = find_witness(spec, 2, "right", SearchBudget(1, 1))
        assert status == "found" and w.word == (1,)

    def test_exhausted_budget(self):
        spec = make_endratio_spec(Fraction(1, 4), Fraction(1, 8),
                                  r2=Fraction(1, 3))
        w, status = find_witness(spec, 1, "left", SearchBudget(1, 1))
        assert w is None
        assert status == "exhausted"

    def test_sound_no(self):
        # end ratios 1/2, 1/3 admit no witness at all; the rational
        # relaxation proves it rather than exhausting the budget
        spec = make_endratio_spec(Fraction(1, 2), Fraction(1, 3),
                                  r2=Fraction(1, 12))
        w, status = find_witness(spec, 1, "right", SearchBudget())
        assert w is None and status == "none"


class TestFastpath:
    def test_one45(self):
        ws = closed_form_witnesses(make_one45())
        assert set(ws) == {2}
        assert ws[2].side == "right"
        assert ws[2].k == 2 and ws[2].kp == 0 and ws[2].word == (2, 1)

    def test_random_equal_ratio_specs(self):
        rng = random.Random(3)
        for _ in range(15):
            spec = random_equal_spec(rng)
            ws = closed_form_witnesses(spec)
            assert set(ws) == set(spec.touching.letters)
            for w in ws.values():
                verify_witness(spec, w)


class TestVerdicts:
    def test_one45_equivalent(self, one45):
        v = decide(one45)
        assert v.status == "equivalent"
        assert set(v.witnesses) == {2}

    def test_dichotomy_positive(self):
        rng = random.Random(17)
        for _ in range(5):
            spec = make_endratio_spec(Fraction(1, 4), Fraction(1, 8), rng)
            assert decide(spec).status == "equivalent"

    def test_dichotomy_negative(self):
        rng = random.Random(18)
        for _ in range(5):
            spec = make_endratio_spec(Fraction(1, 2), Fraction(1, 3), rng)
            v = decide(spec)
            assert v.status == "not_equivalent"

    def test_verdict_witnesses_verified(self):
        rng = random.Random(19)
        for _ in range(10):
            spec = random_equal_spec(rng)
            v = decide(spec)
            assert v.status == "equivalent"
            for w in v.witnesses.values():
                verify_witness(spec, w)


class TestBranch4:
    def make_branch4(self):
        # four maps, rho_1 = rho_4, touching exactly at letter 2, with
        # the measure-independence flag set by the user
        g = DeclaredBase(
            "g", "0.21931712193719233471", digits=18)
        rho = [ExactRatio(Fraction(1, 8)), ExactRatio(1, (("g", 1),)),
               ExactRatio(1, (("g", 1),)), ExactRatio(Fraction(1, 8))]
        t2 = Fraction(1, 4)
        gval = rho[1].value({"g": g})
        t = [Fraction(0), t2, t2 + gval, Fraction(7, 8)]
        return IfsSpec(rho, t, role="touching", bases={"g": g},
                       mu_independent=True)

    def test_obstruction_fires(self):
        spec = self.make_branch4()
        assert branch4_obstruction(spec)
        v = decide(spec)
        assert v.status == "not_equivalent"

    def test_without_flag_not_concluded_negative(self):
        spec = self.make_branch4()
        spec.mu_independent = False
        assert not branch4_obstruction(spec)
