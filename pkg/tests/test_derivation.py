"""
``cyclicbasis.libs.proof.derivation`` の証明書の構成のテスト。
"""

import unittest

from hypothesis import given, settings, strategies as st

from cyclicbasis.sweep import sweep_identities, sweep_letters, sweep_params
from cyclicbasis.libs.words.word import Identity, Letter, Word, parse_identity
from cyclicbasis.libs.semigroup.classify import decide
from cyclicbasis.libs.semigroup.cyclic import CyclicParams, satisfies_oracle
from cyclicbasis.libs.proof.basis import AxiomKind, BasisAxiom, COM, PHI, aux_equal_power, aux_equal_power_tail
from cyclicbasis.libs.proof.certificate import Axiom, Certificate, MulLeft, MulRight, Reflexivity, Substitute, Symmetry
from cyclicbasis.libs.proof.certificate import check_certificate, step_conclusion
from cyclicbasis.libs.proof import derivation
from cyclicbasis.libs.proof.derivation import DERIVATIONError, NotSatisfied

PSI1 = BasisAxiom(AxiomKind.PSI, 1)

letters = st.sampled_from((Letter("x"), Letter("y"), Letter("x1")))
words = st.lists(letters, min_size=1, max_size=7).map(lambda ls: Word(tuple(ls)))


def derive_checked(test: unittest.TestCase, p: CyclicParams, text: str) -> Certificate:
    identity = parse_identity(text)
    cert = derivation.derive(p, identity)
    test.assertIsInstance(cert, Certificate)
    assert isinstance(cert, Certificate)
    result = check_certificate(cert, identity)
    test.assertTrue(result.accepted, f"step {result.step}: {result.reason}")
    test.assertEqual(cert.conclusion, identity)
    return cert


class TestDeriveExamples(unittest.TestCase):
    def test_phi_is_one_step(self) -> None:
        cert = derive_checked(self, CyclicParams(2, 1), "x x1 x2 = x1 x2")
        self.assertEqual(cert.steps, (Axiom(PHI),))

    def test_single_letter(self) -> None:
        cert = derive_checked(self, CyclicParams(3, 2), "x^3 = x^5")
        self.assertEqual(cert.steps[0], Axiom(PHI))
        self.assertIsInstance(cert.steps[1], Substitute)
        self.assertEqual(cert.steps[2], Symmetry(1))
        self.assertEqual(len(cert), 3)

    def test_uniform_uses_psi(self) -> None:
        cert = derive_checked(self, CyclicParams(4, 1), "x y^2 = x^2 y")
        self.assertEqual(cert.axioms_used(), {PSI1})
        # 向きを2回そろえても対称が重ならない
        self.assertEqual(cert.steps, (Axiom(PSI1),))

        cert = derive_checked(self, CyclicParams(5, 1), "x y^2 x1 = x^2 y x1")
        self.assertEqual(cert.axioms_used(), {PSI1})

        cert = derive_checked(self, CyclicParams(7, 1), "x^2 y^3 = x^3 y^2")
        self.assertEqual(cert.axioms_used(), {BasisAxiom(AxiomKind.PSI, 2)})

    def test_uniform_with_smaller_psi(self) -> None:
        # psi[2] は C(6,1) に無いので psi[1] を使う
        cert = derive_checked(self, CyclicParams(6, 1), "x^2 y^3 = x^3 y^2")
        self.assertIn(PSI1, cert.axioms_used())
        self.assertNotIn(BasisAxiom(AxiomKind.PSI, 2), cert.axioms_used())

    def test_uniform_from_both_sides(self) -> None:
        derive_checked(self, CyclicParams(4, 1), "x^2 y = x y^2")
        derive_checked(self, CyclicParams(5, 1), "y x1 x^2 = x1 y^2 x")
        derive_checked(self, CyclicParams(6, 1), "x y^2 x1^3 = x^2 y x1^3")

    def test_balanced(self) -> None:
        cert = derive_checked(self, CyclicParams(3, 1), "x y = y x")
        self.assertEqual(cert.steps, (Axiom(COM),))

        cert = derive_checked(self, CyclicParams(3, 1), "x = x")
        self.assertEqual(cert.steps, (Reflexivity(Word((Letter("x"),))),))

    def test_balanced_embedded_swap(self) -> None:
        cert = derivation.derive_balanced(parse_identity("x y x = x^2 y"))
        self.assertEqual(cert.params, CyclicParams(1, 1))
        self.assertTrue(check_certificate(cert, parse_identity("x y x = x^2 y")).accepted)
        self.assertEqual(cert.axioms_used(), {COM})
        self.assertEqual(sum(isinstance(step, MulLeft) for step in cert.steps), 1)

        with self.assertRaises(DERIVATIONError):
            derivation.derive_balanced(parse_identity("x^2 = x"))

    def test_long_with_several_letters(self) -> None:
        cert = derive_checked(self, CyclicParams(1, 2), "x^2 = y^2")
        self.assertEqual({axiom.kind for axiom in cert.axioms_used()}, {AxiomKind.COM, AxiomKind.PHI})

        derive_checked(self, CyclicParams(3, 2), "x^2 y^3 x1 = y x1^3 x^4")
        derive_checked(self, CyclicParams(2, 3), "x y^4 = y x^4")
        derive_checked(self, CyclicParams(1, 1), "x y = x1")

    def test_not_satisfied(self) -> None:
        result = derivation.derive(CyclicParams(5, 1), parse_identity("x y^2 = x^2 y"))
        self.assertIsInstance(result, NotSatisfied)
        assert isinstance(result, NotSatisfied)
        self.assertEqual(result.verdict.reason, "uniform length bound fails")

        result = derivation.derive(CyclicParams(3, 3), parse_identity("x^3 = x^5"))
        self.assertIsInstance(result, NotSatisfied)


class TestAuxiliary(unittest.TestCase):
    def test_equal_power(self) -> None:
        for p in sweep_params(7):
            if p.h > p.d:
                continue
            with self.subTest(p=p):
                cert = derivation.derive_aux_equal_power(p)
                self.assertTrue(check_certificate(cert, aux_equal_power(p.d)).accepted)
                self.assertEqual(cert.axioms_used(), {COM, PHI})

    def test_equal_power_tail(self) -> None:
        for p in sweep_params(7):
            if p.h <= p.d:
                continue
            with self.subTest(p=p):
                cert = derivation.derive_aux_equal_power_tail(p)
                self.assertTrue(check_certificate(cert, aux_equal_power_tail(p)).accepted)
                self.assertEqual(cert.axioms_used(), {COM, PHI})

    def test_equal_power_without_right_multiplication(self) -> None:
        # h = d なら y^{d-h} は空なので右から掛けない
        cert = derivation.derive_aux_equal_power(CyclicParams(2, 2))
        self.assertTrue(check_certificate(cert, parse_identity("x^2 = y^2")).accepted)
        self.assertFalse(any(isinstance(step, MulRight) for step in cert.steps))

    def test_preconditions(self) -> None:
        with self.assertRaises(DERIVATIONError):
            derivation.derive_aux_equal_power(CyclicParams(3, 2))
        with self.assertRaises(DERIVATIONError):
            derivation.derive_aux_equal_power_tail(CyclicParams(2, 2))


class TestDeriveProperties(unittest.TestCase):
    def test_complete_on_sweep(self) -> None:
        # h+d <= 6 、文字 x, y 、両辺の長さ 5 までで成り立つ恒等式は全て導出できる
        identities = list(sweep_identities(sweep_letters(2), 5))
        for p in sweep_params(6):
            for identity in identities:
                if not satisfies_oracle(p, identity).holds:
                    continue
                cert = derivation.derive(p, identity)
                if not isinstance(cert, Certificate):
                    self.fail(f"{p} {identity}: {cert}")
                result = check_certificate(cert, identity)
                if not result.accepted:
                    self.fail(f"{p} {identity}: step {result.step}: {result.reason}")

    def test_axioms_belong_to_basis(self) -> None:
        identities = list(sweep_identities(sweep_letters(2), 4))
        for p in sweep_params(6):
            for identity in identities:
                cert = derivation.derive(p, identity)
                if isinstance(cert, NotSatisfied):
                    continue
                for axiom in cert.axioms_used():
                    self.assertTrue(axiom.is_valid_for(p), f"{p} {identity}: {axiom.tag}")
                if p.h <= p.d + 2:
                    self.assertNotIn(AxiomKind.PSI, {axiom.kind for axiom in cert.axioms_used()})

    @settings(max_examples=300, deadline=None)
    @given(st.integers(1, 6), st.integers(1, 3), words, words)
    def test_measure_decreases(self, h: int, d: int, lhs: Word, rhs: Word) -> None:
        p = CyclicParams(h, d)
        identity = Identity(lhs, rhs)
        measures: list[int] = []
        cert = derivation.derive(p, identity, measures)
        if isinstance(cert, NotSatisfied):
            self.assertFalse(decide(p, identity).holds)
            return
        self.assertTrue(check_certificate(cert, identity).accepted)
        for before, after in zip(measures, measures[1:]):
            self.assertLess(after, before)

    def test_intermediate_steps_hold(self) -> None:
        cases = [
            (CyclicParams(4, 1), "x y^2 = x^2 y"),
            (CyclicParams(6, 1), "x^2 y^3 = x^3 y^2"),
            (CyclicParams(3, 2), "x^2 y^3 x1 = y x1^3 x^4"),
            (CyclicParams(1, 3), "x^4 y = y^7 x"),
            (CyclicParams(2, 2), "x^3 y^2 = y^4 x^3"),
            (CyclicParams(5, 1), "y x1 x^2 = x1 y^2 x"),
        ]
        for p, text in cases:
            identity = parse_identity(text)
            cert = derivation.derive(p, identity)
            assert isinstance(cert, Certificate)
            for i in range(len(cert)):
                with self.subTest(p=p, identity=text, step=i):
                    self.assertTrue(satisfies_oracle(p, step_conclusion(cert, i)).holds)


if __name__ == "__main__":
    unittest.main()
