"""
``cyclicbasis.libs.words.word`` の ``Word``, ``Identity`` と語の操作のテスト。
"""

import unittest

from hypothesis import given, settings, strategies as st

from cyclicbasis.libs.words import word
from cyclicbasis.libs.words.word import Letter, WORDError, make_word

x, y, x1 = Letter("x"), Letter("y"), Letter("x1")

words = st.lists(st.sampled_from([x, y, x1]), min_size=1, max_size=8).map(lambda ls: word.Word(tuple(ls)))


class TestParse(unittest.TestCase):
    def test_parse_word(self) -> None:
        self.assertEqual(word.parse_word("x^2 y"), make_word("x", "x", "y"))
        self.assertEqual(word.parse_word("x1"), make_word("x1"))
        self.assertEqual(word.parse_word("  x   y^3 "), make_word("x", "y", "y", "y"))
        # 指数の後は空白なしで続けてよい
        self.assertEqual(word.parse_word("x^2y"), word.parse_word("x^2 y"))
        self.assertEqual(word.parse_word("x1^2y^3x"), word.parse_word("x1^2 y^3 x"))

    def test_parse_word_errors(self) -> None:
        # 指数0は空の因子になるので受け付けない
        with self.assertRaises(WORDError) as cm:
            word.parse_word("x^0")
        self.assertEqual(cm.exception.position, 2)

        with self.assertRaises(WORDError) as cm:
            word.parse_word("x ^2")
        self.assertEqual(cm.exception.position, 2)

        with self.assertRaises(WORDError) as cm:
            word.parse_word("x y^")
        self.assertEqual(cm.exception.position, 4)

        with self.assertRaises(WORDError):
            word.parse_word("   ")
        with self.assertRaises(WORDError):
            word.parse_word("X")
        with self.assertRaises(WORDError):
            word.parse_word("xy*")
        with self.assertRaises(WORDError) as cm:
            word.parse_word("x^2*y")
        self.assertEqual(cm.exception.position, 3)
        with self.assertRaises(WORDError) as cm:
            word.parse_word("x^2^3")
        self.assertEqual(cm.exception.position, 4)

    def test_length_limit(self) -> None:
        # 巨大な指数は展開する前に弾く
        with self.assertRaises(WORDError) as cm:
            word.parse_word("x^999999999")
        self.assertEqual(cm.exception.position, 0)
        with self.assertRaises(WORDError) as cm:
            word.parse_identity("x = y^99999999999999999999")
        self.assertIn("longer than", str(cm.exception))

        self.assertEqual(word.parse_word("x^2 y", max_length=3), make_word("x", "x", "y"))
        with self.assertRaises(WORDError) as cm:
            word.parse_word("x^2 y^2", max_length=3)
        self.assertEqual(cm.exception.position, 4)
        with self.assertRaises(WORDError):
            word.parse_identity("x y = y x y x", max_length=3)

    def test_parse_identity(self) -> None:
        identity = word.parse_identity("x y = y x")
        self.assertEqual(identity.lhs, make_word("x", "y"))
        self.assertEqual(identity.rhs, make_word("y", "x"))

        # 右辺の位置はテキスト全体での位置
        with self.assertRaises(WORDError) as cm:
            word.parse_identity("x = y^0")
        self.assertEqual(cm.exception.position, 6)

        with self.assertRaises(WORDError):
            word.parse_identity("x = y = z")
        with self.assertRaises(WORDError):
            word.parse_identity("x y")
        with self.assertRaises(WORDError):
            word.parse_identity("x = ")

    def test_error_message_has_position(self) -> None:
        with self.assertRaises(WORDError) as cm:
            word.parse_word("x $")
        self.assertIn("position 2", str(cm.exception))


class TestRender(unittest.TestCase):
    def test_render_word(self) -> None:
        self.assertEqual(word.render_word(make_word("x", "x", "y")), "x^2 y")
        self.assertEqual(word.render_word(make_word("x")), "x")
        # 離れた同じ文字はまとめない
        self.assertEqual(word.render_word(make_word("x", "y", "x")), "x y x")

    def test_render_identity(self) -> None:
        identity = word.parse_identity("x x1 x2 = x1   x2")
        self.assertEqual(word.render_identity(identity), "x x1 x2 = x1 x2")
        self.assertEqual(str(identity), "x x1 x2 = x1 x2")

    @given(words)
    def test_render_then_parse(self, w: word.Word) -> None:
        self.assertEqual(word.parse_word(word.render_word(w)), w)


class TestOccurrences(unittest.TestCase):
    def test_occ(self) -> None:
        self.assertEqual(word.occ(x, make_word("x", "x", "y")), 2)
        self.assertEqual(word.occ(Letter("z"), make_word("x", "x", "y")), 0)
        self.assertEqual(word.occ(y, make_word("x", "y", "x", "y", "y")), 3)

    @given(words)
    def test_occ_sums_to_length(self, w: word.Word) -> None:
        self.assertEqual(sum(word.occ(letter, w) for letter in w.content), len(w))

    def test_is_balanced(self) -> None:
        self.assertTrue(word.is_balanced(word.parse_identity("x y = y x")))
        self.assertFalse(word.is_balanced(word.parse_identity("x^2 y = x y")))
        self.assertTrue(word.is_balanced(word.parse_identity("x = x")))

    def test_is_d_balanced(self) -> None:
        self.assertTrue(word.is_d_balanced(word.parse_identity("x^3 = x^5"), 2))
        self.assertFalse(word.is_d_balanced(word.parse_identity("x^3 = x^5"), 3))
        self.assertTrue(word.is_d_balanced(word.parse_identity("x y^7 = x^4"), 1))
        with self.assertRaises(WORDError):
            word.is_d_balanced(word.parse_identity("x = x"), 0)

    def test_unbalanced_letters(self) -> None:
        self.assertEqual(word.unbalanced_letters(word.parse_identity("x y^2 = x^2 y")), {x, y})
        self.assertEqual(word.unbalanced_letters(word.parse_identity("x y = y x")), frozenset())
        self.assertEqual(word.unbalanced_letters(word.parse_identity("x y = y")), {x})

    def test_sort_canonical(self) -> None:
        self.assertEqual(word.sort_canonical(make_word("y", "x", "y")), make_word("x", "y", "y"))
        self.assertEqual(word.sort_canonical(make_word("x")), make_word("x"))
        # x < x1 （辞書式順）
        self.assertEqual(word.sort_canonical(make_word("x1", "x", "x1")), make_word("x", "x1", "x1"))

    @given(words, words)
    def test_balanced_iff_same_canonical_form(self, u: word.Word, v: word.Word) -> None:
        balanced = word.is_balanced(word.Identity(u, v))
        self.assertEqual(balanced, word.sort_canonical(u) == word.sort_canonical(v))


class TestWord(unittest.TestCase):
    def test_word(self) -> None:
        w = make_word("x", "y") + make_word("x")
        self.assertEqual(len(w), 3)
        self.assertEqual(list(w), [x, y, x])
        self.assertEqual(w.content, {x, y})
        with self.assertRaises(WORDError):
            word.Word(())

    def test_power(self) -> None:
        self.assertEqual(word.power(y, 3), make_word("y", "y", "y"))
        with self.assertRaises(WORDError):
            word.power(y, 0)

    def test_identity(self) -> None:
        identity = word.parse_identity("y x1 = x")
        self.assertEqual(identity.letters, (x, x1, y))
        self.assertEqual(identity.swapped(), word.parse_identity("x = y x1"))

    def test_substitute(self) -> None:
        w = word.parse_word("x y x")
        mapping = {x: make_word("y"), y: word.parse_word("x^2")}
        # 同時に置き換える
        self.assertEqual(word.substitute(w, mapping), word.parse_word("y x^2 y"))
        with self.assertRaises(WORDError):
            word.substitute(w, {x: make_word("y")})

    @settings(max_examples=200)
    @given(words, words, words)
    def test_substitute_is_homomorphism(self, u: word.Word, v: word.Word, image: word.Word) -> None:
        mapping = {x: image, y: make_word("y"), x1: make_word("x", "y")}
        self.assertEqual(
            word.substitute(u + v, mapping),
            word.substitute(u, mapping) + word.substitute(v, mapping),
        )


if __name__ == "__main__":
    unittest.main()
