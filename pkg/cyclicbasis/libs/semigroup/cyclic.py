"""
有限巡回半群 C_{h,d} = <a | a^h = a^{h+d}> の演算を扱うモジュール。

元 a^e は正規化した指数 e (1 <= e <= h+d-1) で表す。
総当たりで恒等式の成立を確かめるオラクルもここに置く。
"""

from collections.abc import Mapping
from dataclasses import dataclass
from functools import reduce

import numpy as np
from kivy.logger import Logger as semigroupLogger

from cyclicbasis.libs.words.word import Identity, Letter, Word, WORDError

# オラクルの評価回数の上限（初期値）
DEFAULT_BUDGET: int = 10_000_000
# オラクルが一度に numpy で評価する代入の数
CHUNK_SIZE: int = 1 << 16


#### semigroup API用のエラーハンドラ
class SEMIGROUPError(Exception):
    """semigroupのエラーハンドラ"""

    def __init__(self, *args: object) -> None:
        super().__init__(*args)

        semigroupLogger.error(f"SEMIGROUPError: {args}")


class BudgetError(SEMIGROUPError):
    """
    オラクルの評価回数が上限を超える場合のエラー。

    :var int required: 必要な評価回数 (h+d-1)^n
    :var int budget: 評価回数の上限
    """

    def __init__(self, required: int, budget: int) -> None:
        super().__init__(f"oracle needs {required} evaluations, budget is {budget}")
        self.required = required
        self.budget = budget


@dataclass(order=True, eq=True, frozen=True)
class CyclicParams:
    """
    巡回半群 C_{h,d} のパラメータ。

    :param int h: 指数（index）
    :param int d: 周期（period）
    """

    h: int
    d: int

    def __post_init__(self) -> None:
        if not (isinstance(self.h, int) and isinstance(self.d, int)) or self.h < 1 or self.d < 1:
            raise SEMIGROUPError(f"index and period must be positive integers: h={self.h}, d={self.d}")

    def __str__(self) -> str:
        return f"C({self.h},{self.d})"

    @property
    def size(self) -> int:
        """
        元の個数 h+d-1 。
        """

        return self.h + self.d - 1


@dataclass(order=True, eq=True, frozen=True)
class Element:
    """
    C_{h,d} の元 a^exponent 。

    :param int exponent: 正規化した指数
    """

    exponent: int

    def __str__(self) -> str:
        return "a" if self.exponent == 1 else f"a^{self.exponent}"


ElementSubstitution = Mapping[Letter, Element]
"""
文字から C_{h,d} の元への代入 φ 。
"""


def normalize(p: CyclicParams, e: int) -> Element:
    """
    a^e を正規形にする。 e < h ならそのまま、そうでなければ h + ((e-h) mod d)。

    :param CyclicParams p: パラメータ
    :param int e: 指数（1以上）
    :return: 元
    :rtype: Element
    :raises SEMIGROUPError: e が1未満の場合
    """

    if e < 1:
        raise SEMIGROUPError(f"exponent must be positive: {e}")

    return Element(e if e < p.h else p.h + (e - p.h) % p.d)


def multiply(p: CyclicParams, e1: Element, e2: Element) -> Element:
    return normalize(p, e1.exponent + e2.exponent)


def elements(p: CyclicParams) -> list[Element]:
    """
    C_{h,d} の全ての元 a, a^2, ..., a^{h+d-1} 。
    """

    return [Element(e) for e in range(1, p.size + 1)]


def evaluate(p: CyclicParams, w: Word, phi: ElementSubstitution) -> Element:
    """
    代入 φ による語の値 wφ 。文字の像を左から順に掛ける。

    :param CyclicParams p: パラメータ
    :param Word w: 語
    :param ElementSubstitution phi: 代入
    :return: 語の値
    :rtype: Element
    :raises SEMIGROUPError: 代入に含まれない文字がある場合
    """

    missing = w.content - phi.keys()
    if missing:
        raise SEMIGROUPError(f"substitution misses letters: {', '.join(sorted(x.name for x in missing))}")

    return reduce(lambda acc, x: multiply(p, acc, phi[x]), w.letters[1:], phi[w.letters[0]])


def parse_substitution(p: CyclicParams, text: str) -> dict[Letter, Element]:
    """
    ``x=3,y=1`` 形式の代入を読み取る。

    :param CyclicParams p: パラメータ
    :param str text: 代入のテキスト
    :return: 代入
    :rtype: dict[Letter, Element]
    :raises SEMIGROUPError: 書式の誤り、指数が [1, h+d-1] の外の場合
    """

    phi: dict[Letter, Element] = {}
    for item in text.split(","):
        name, sep, value = item.partition("=")
        if not sep:
            raise SEMIGROUPError(f"expected letter=exponent: {item.strip()!r}")
        try:
            letter = Letter(name.strip())
            exponent = int(value.strip())
        except (WORDError, ValueError) as e:
            raise SEMIGROUPError(f"invalid substitution item {item.strip()!r}: {e}") from e
        if not 1 <= exponent <= p.size:
            raise SEMIGROUPError(f"exponent {exponent} outside 1..{p.size} for {letter}")
        if letter in phi:
            raise SEMIGROUPError(f"letter {letter} assigned twice")
        phi[letter] = Element(exponent)

    return phi


def render_substitution(phi: ElementSubstitution) -> str:
    return ",".join(f"{x.name}={phi[x].exponent}" for x in sorted(phi))


@dataclass(frozen=True)
class OracleVerdict:
    """
    オラクルの判定結果。

    :param bool holds: 全ての代入で両辺の値が等しいか
    :param tuple counterexample: 反例の代入（文字, 元）の組。成立時は空。
    :param int evaluations: 評価した代入の数
    """

    holds: bool
    counterexample: tuple[tuple[Letter, Element], ...] = ()
    evaluations: int = 0

    @property
    def substitution(self) -> dict[Letter, Element]:
        return dict(self.counterexample)


def oracle_cost(p: CyclicParams, identity: Identity) -> int:
    """
    全代入の数 (h+d-1)^n 。 n は恒等式に現れる文字の数。
    """

    return p.size ** len(identity.letters)


def _normalize_array(p: CyclicParams, e: np.ndarray) -> np.ndarray:
    return np.where(e < p.h, e, p.h + (e - p.h) % p.d)


def _evaluate_array(p: CyclicParams, w: Word, columns: Mapping[Letter, np.ndarray]) -> np.ndarray:
    # multiply の左畳み込みを代入の束に対してまとめて行う
    value = columns[w.letters[0]]
    for letter in w.letters[1:]:
        value = _normalize_array(p, value + columns[letter])

    return value


def satisfies_oracle(p: CyclicParams, identity: Identity, budget: int = DEFAULT_BUDGET) -> OracleVerdict:
    """
    全ての代入を調べて、恒等式が C_{h,d} で成り立つか判定する。

    代入の列挙順: 文字を辞書式順に並べ、指数 1 から数える。先頭の文字が最も速く変わる。
    反例はこの順序で最初のものを返す。

    :param CyclicParams p: パラメータ
    :param Identity identity: 恒等式
    :param int budget: 評価回数の上限
    :return: 判定結果
    :rtype: OracleVerdict
    :raises BudgetError: (h+d-1)^n が上限を超える場合
    """

    required = oracle_cost(p, identity)
    if required > budget:
        raise BudgetError(required, budget)

    names = identity.letters
    m = p.size
    for start in range(0, required, CHUNK_SIZE):
        index = np.arange(start, min(start + CHUNK_SIZE, required), dtype=np.int64)
        columns = {letter: (index // m**j) % m + 1 for j, letter in enumerate(names)}

        mismatch = np.flatnonzero(_evaluate_array(p, identity.lhs, columns) != _evaluate_array(p, identity.rhs, columns))
        if mismatch.size:
            k = int(mismatch[0])
            counterexample = tuple((letter, Element(int(columns[letter][k]))) for letter in names)
            semigroupLogger.debug(f"satisfies_oracle: {identity} fails in {p} at {counterexample}")
            return OracleVerdict(False, counterexample, start + k + 1)

    return OracleVerdict(True, (), required)


if __name__ == "__main__":
    print(__file__)
