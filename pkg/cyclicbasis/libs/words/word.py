"""
文字・語・恒等式を扱うモジュール。

語のテキスト表記::

    word     := factor+
    factor   := IDENT ('^' INT)?      例: "x^2 y", "x1 x2"
    identity := word '=' word         例: "x y = y x"

因子は空白で区切る。指数の直後に限り空白を省ける（"x^2y"）。指数は 1 以上の整数のみ。（空語は恒等式の辺になれない）
展開後の長さが MAX_WORD_LENGTH を超える語は読み取らない。
"""

from collections import Counter
from collections.abc import Iterator, Mapping
from dataclasses import dataclass
from itertools import groupby
import re

from kivy.logger import Logger as wordLogger


# 文字名: 英小文字で始まり、英字・数字・アンダースコアが続く
LETTER_PATTERN = re.compile(r"[a-z][A-Za-z0-9_]*")
# 因子: 文字名と省略可能な指数
FACTOR_PATTERN = re.compile(r"([a-z][A-Za-z0-9_]*)(?:\^([0-9]+))?")
# 読み取る語の長さの上限（指数を展開した文字数）
MAX_WORD_LENGTH: int = 1_000_000


#### words API用のエラーハンドラ
class WORDError(Exception):
    """
    wordsのエラーハンドラ

    :var int|None position: 構文エラーの位置（テキスト先頭からの文字数）
    """

    def __init__(self, *args: object, position: int | None = None) -> None:
        super().__init__(*args)
        self.position = position

        wordLogger.error(f"WORDError: {args} position={position}")

    def __str__(self) -> str:
        message = super().__str__()
        return message if self.position is None else f"{message} (position {self.position})"


@dataclass(order=True, eq=True, frozen=True)
class Letter:
    """
    文字のデータクラス。名前の辞書式順序で比較する。

    :param str name: 文字名
    """

    name: str

    def __post_init__(self) -> None:
        if not isinstance(self.name, str) or not LETTER_PATTERN.fullmatch(self.name):
            raise WORDError(f"invalid letter name: {self.name!r}")

    def __str__(self) -> str:
        return self.name


@dataclass(eq=True, frozen=True)
class Word:
    """
    語（空でない文字の列）のデータクラス。

    :param tuple[Letter, ...] letters: 文字の列
    """

    letters: tuple[Letter, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "letters", tuple(self.letters))
        if not self.letters:
            raise WORDError("empty word")

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[Letter]:
        return iter(self.letters)

    def __add__(self, other: "Word") -> "Word":
        return Word(self.letters + other.letters)

    def __str__(self) -> str:
        return render_word(self)

    @property
    def content(self) -> frozenset[Letter]:
        """
        語に現れる文字の集合 con(w)。
        """

        return frozenset(self.letters)


@dataclass(eq=True, frozen=True)
class Identity:
    """
    恒等式 u = v のデータクラス。

    :param Word lhs: 左辺
    :param Word rhs: 右辺
    """

    lhs: Word
    rhs: Word

    def __str__(self) -> str:
        return render_identity(self)

    @property
    def letters(self) -> tuple[Letter, ...]:
        """
        両辺に現れる文字（辞書式順）。
        """

        return tuple(sorted(self.lhs.content | self.rhs.content))

    def swapped(self) -> "Identity":
        """
        両辺を入れ替えた恒等式 v = u 。
        """

        return Identity(self.rhs, self.lhs)


def make_word(*names: str) -> Word:
    """
    文字名の列から語を作る。

    :param str names: 文字名
    :return: 語
    :rtype: Word
    """

    return Word(tuple(Letter(name) for name in names))


def power(letter: Letter, k: int) -> Word:
    """
    文字のべき乗 letter^k 。

    :param Letter letter: 文字
    :param int k: 指数（1以上）
    :return: 語
    :rtype: Word
    :raises WORDError: 指数が1未満の場合
    """

    if k < 1:
        raise WORDError(f"exponent must be positive: {k}")

    return Word((letter,) * k)


def _scan(text: str, offset: int = 0, max_length: int = MAX_WORD_LENGTH) -> tuple[Letter, ...]:
    """
    テキストを因子ごとに読み取り、指数を展開した文字の列を返す。

    :param str text: 語のテキスト
    :param int offset: エラー位置に加えるオフセット
    :param int max_length: 展開後の長さの上限
    """

    result: list[Letter] = []
    pos = 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue

        match = FACTOR_PATTERN.match(text, pos)
        if match is None:
            raise WORDError(f"unexpected character {text[pos]!r}", position=offset + pos)

        end = match.end()
        if end < len(text) and not text[end].isspace():
            if text[end] == "^":
                raise WORDError("exponent expected after '^'", position=offset + end + 1)
            # 指数の直後なら次の因子を続けて書ける（x^2y）
            if match.group(2) is None:
                raise WORDError("factors must be separated by whitespace", position=offset + end)

        name, exponent = match.group(1), match.group(2)
        # 桁数で先に弾く（巨大な整数を作らない）
        if exponent is not None and len(exponent.lstrip("0")) > len(str(max_length)):
            raise WORDError(f"word longer than {max_length} letters", position=offset + match.start())
        k = 1 if exponent is None else int(exponent)
        if k < 1:
            raise WORDError("exponent must be positive", position=offset + match.start(2))
        if len(result) + k > max_length:
            raise WORDError(f"word longer than {max_length} letters", position=offset + match.start())

        result.extend([Letter(name)] * k)
        pos = end

    if not result:
        raise WORDError("empty word", position=offset)

    return tuple(result)


def parse_word(text: str, max_length: int = MAX_WORD_LENGTH) -> Word:
    """
    語のテキストを読み取る。

    :param str text: 例 ``"x^2 y"``
    :param int max_length: 展開後の長さの上限
    :return: 指数を展開した語。例 [x, x, y]
    :rtype: Word
    :raises WORDError: 構文エラー、指数0、空、長さが上限を超える場合
    """

    return Word(_scan(text, max_length=max_length))


def parse_identity(text: str, max_length: int = MAX_WORD_LENGTH) -> Identity:
    """
    恒等式のテキストを読み取る。

    :param str text: 例 ``"x y = y x"``
    :param int max_length: 各辺の展開後の長さの上限
    :return: 恒等式
    :rtype: Identity
    :raises WORDError: ``=`` がちょうど1つでない場合、または各辺の構文エラー
    """

    if text.count("=") != 1:
        position = text.find("=", text.find("=") + 1) if "=" in text else len(text)
        raise WORDError("identity needs exactly one '='", position=position)

    left, right = text.split("=")

    return Identity(Word(_scan(left, 0, max_length)), Word(_scan(right, len(left) + 1, max_length)))


def render_word(w: Word) -> str:
    """
    語を指数表記のテキストにする。連続する同じ文字を最大限まとめる。

    :param Word w: 語
    :return: 例 ``"x^2 y"``
    :rtype: str
    """

    factors = []
    for letter, run in groupby(w.letters):
        k = len(list(run))
        factors.append(letter.name if k == 1 else f"{letter.name}^{k}")

    return " ".join(factors)


def render_identity(identity: Identity) -> str:
    return f"{render_word(identity.lhs)} = {render_word(identity.rhs)}"


def occ(x: Letter, w: Word) -> int:
    """
    語 w における文字 x の出現回数 occ(x, w)。
    """

    return w.letters.count(x)


def occurrences(w: Word) -> Counter[Letter]:
    return Counter(w.letters)


def unbalanced_letters(identity: Identity) -> frozenset[Letter]:
    """
    両辺での出現回数が異なる文字の集合。

    :param Identity identity: 恒等式
    :return: 不均衡な文字の集合。均衡な恒等式なら空。
    :rtype: frozenset[Letter]
    """

    left, right = occurrences(identity.lhs), occurrences(identity.rhs)

    return frozenset(x for x in left.keys() | right.keys() if left[x] != right[x])


def is_balanced(identity: Identity) -> bool:
    """
    すべての文字が両辺に同じ回数現れるか。
    """

    return not unbalanced_letters(identity)


def is_d_balanced(identity: Identity, d: int) -> bool:
    """
    すべての文字の出現回数が両辺で d を法として合同か。

    :param Identity identity: 恒等式
    :param int d: 周期（1以上）
    :rtype: bool
    :raises WORDError: d が1未満の場合
    """

    if d < 1:
        raise WORDError(f"period must be positive: {d}")

    left, right = occurrences(identity.lhs), occurrences(identity.rhs)

    return all((left[x] - right[x]) % d == 0 for x in left.keys() | right.keys())


def sort_canonical(w: Word) -> Word:
    """
    文字名の辞書式順に並べ替えた語（可換律の下での標準形）。
    """

    return Word(tuple(sorted(w.letters)))


def substitute(w: Word, mapping: Mapping[Letter, Word]) -> Word:
    """
    語の各文字を同時に語で置き換える。

    :param Word w: 語
    :param Mapping[Letter, Word] mapping: 置換。 w の全ての文字を含むこと。
    :return: 置換後の語
    :rtype: Word
    :raises WORDError: 置換に含まれない文字がある場合
    """

    result: list[Letter] = []
    for letter in w.letters:
        if letter not in mapping:
            raise WORDError(f"substitution does not cover letter {letter}")
        result.extend(mapping[letter].letters)

    return Word(tuple(result))


if __name__ == "__main__":
    print(__file__)
