"""
``cyclicbasis.sweep`` の総当たりのテスト。
"""

import unittest
from unittest.mock import patch

from cyclicbasis.config import Settings
from cyclicbasis import sweep
from cyclicbasis.libs.words.word import Letter, parse_identity
from cyclicbasis.libs.semigroup.classify import Classification, Verdict
from cyclicbasis.libs.semigroup.cyclic import BudgetError, CyclicParams


class TestEnumeration(unittest.TestCase):
    def test_sweep_letters(self) -> None:
        self.assertEqual(sweep.sweep_letters(1), (Letter("x"),))
        self.assertEqual(sweep.sweep_letters(3), (Letter("x"), Letter("y"), Letter("x1")))

    def test_sweep_words(self) -> None:
        words = list(sweep.sweep_words(sweep.sweep_letters(2), 5))
        self.assertEqual(len(words), 2 + 4 + 8 + 16 + 32)
        self.assertEqual(str(words[0]), "x")
        self.assertEqual(str(words[2]), "x^2")
        self.assertEqual(len(set(words)), len(words))

    def test_sweep_params(self) -> None:
        params = list(sweep.sweep_params(4))
        self.assertEqual(
            params,
            [CyclicParams(1, 1), CyclicParams(1, 2), CyclicParams(1, 3), CyclicParams(2, 1), CyclicParams(2, 2), CyclicParams(3, 1)],
        )
        self.assertEqual(len(list(sweep.sweep_params(6))), 15)


class TestCheckIdentity(unittest.TestCase):
    def test_agreement(self) -> None:
        self.assertEqual(sweep.check_identity(CyclicParams(4, 1), parse_identity("x y^2 = x^2 y"), 1000, True), (True, None))
        self.assertEqual(sweep.check_identity(CyclicParams(5, 1), parse_identity("x y^2 = x^2 y"), 1000, True), (False, None))

    def test_budget(self) -> None:
        with self.assertRaises(BudgetError):
            sweep.check_identity(CyclicParams(5, 1), parse_identity("x y^2 = x^2 y"), 10, False)


class TestRunSweep(unittest.TestCase):
    def test_acceptance_sweep(self) -> None:
        # h+d <= 6 、文字 x, y 、両辺の長さ 5 まで
        report = sweep.run_sweep(Settings(max_sum=6, max_letters=2, max_length=5))
        self.assertIsNone(report.disagreement, str(report.disagreement))
        self.assertTrue(report.ok)
        self.assertEqual(len(report.rows), 15)
        self.assertEqual(report.identities, 15 * 62**2)
        self.assertEqual(report.certificates, report.holds)
        # C(1,1) では全て成り立つ
        self.assertEqual(report.rows[0].holds, 62**2)

    def test_three_letters(self) -> None:
        report = sweep.run_sweep(Settings(max_sum=5, max_letters=3, max_length=3))
        self.assertTrue(report.ok, str(report.disagreement))

    def test_disagreement_stops_sweep(self) -> None:
        def never_holds(p: CyclicParams, identity: object) -> Verdict:
            return Verdict(False, Classification.NOT_D_BALANCED, None, "corrupted")

        with patch("cyclicbasis.sweep.decide", side_effect=never_holds):
            report = sweep.run_sweep(Settings(max_sum=3, max_length=2), derive_certificates=False)

        self.assertFalse(report.ok)
        assert report.disagreement is not None
        self.assertEqual(report.disagreement.params, CyclicParams(1, 1))
        self.assertEqual(report.disagreement.identity, parse_identity("x = x"))
        self.assertEqual(len(report.rows), 1)


if __name__ == "__main__":
    unittest.main()
