"""
恒等式が有限巡回半群で成り立つかを閉じた形で判定するモジュール。

- 冪零巡回半群 C_{h,1}: 均衡、または long か uniform なら成り立つ。
- 巡回群 C_{1,d}: d-均衡なら成り立つ。
- C_{h,d}: 均衡、または d-均衡かつ (long、または h > d+2 で uniform) なら成り立つ。
"""

from dataclasses import dataclass
from enum import StrEnum

from kivy.logger import Logger as classifyLogger

from cyclicbasis.libs.words.word import Identity, Letter, is_balanced, is_d_balanced, occurrences, unbalanced_letters
from cyclicbasis.libs.semigroup.cyclic import CyclicParams, SEMIGROUPError


class Classification(StrEnum):
    """
    判定の分類の列挙クラス。
    """

    BALANCED = "balanced"
    D_BALANCED_LONG = "d-balanced, long"
    D_BALANCED_UNIFORM = "d-balanced, uniform"
    NOT_D_BALANCED = "not d-balanced"
    NEITHER_LONG_NOR_UNIFORM = "neither long nor uniform"


HOLDING: frozenset[Classification] = frozenset(
    {Classification.BALANCED, Classification.D_BALANCED_LONG, Classification.D_BALANCED_UNIFORM}
)


@dataclass(frozen=True)
class Verdict:
    """
    判定結果のデータクラス。

    :param bool holds: 成り立つか
    :param Classification classification: 分類
    :param Letter|int|None witness: 分類の根拠。 d-均衡でない文字、または長さの値。
    :param str reason: 人が読むための説明
    """

    holds: bool
    classification: Classification
    witness: Letter | int | None = None
    reason: str = ""

    def __post_init__(self) -> None:
        if self.holds != (self.classification in HOLDING):
            raise SEMIGROUPError(f"inconsistent verdict: holds={self.holds}, {self.classification}")


def is_long(h: int, identity: Identity) -> bool:
    """
    両辺の長さが h 以上か。
    """

    return len(identity.lhs) >= h and len(identity.rhs) >= h


def min_unbalanced_occurrence(identity: Identity) -> int:
    """
    不均衡な文字 x についての min{occ(x,u), occ(x,v)} の最小値 m 。

    :param Identity identity: 均衡でない恒等式
    :rtype: int
    :raises SEMIGROUPError: 均衡な恒等式の場合（最小値を取る集合が空）
    """

    unbalanced = unbalanced_letters(identity)
    if not unbalanced:
        raise SEMIGROUPError(f"balanced identity has no unbalanced letter: {identity}")

    left, right = occurrences(identity.lhs), occurrences(identity.rhs)

    return min(min(left[x], right[x]) for x in unbalanced)


def is_uniform(h: int, identity: Identity) -> bool:
    """
    uniform か。両辺の内容と長さが等しく、長さが h - m 以上。

    :param int h: 指数
    :param Identity identity: 均衡でない恒等式
    :rtype: bool
    :raises SEMIGROUPError: 均衡な恒等式の場合
    """

    m = min_unbalanced_occurrence(identity)

    return (
        identity.lhs.content == identity.rhs.content
        and len(identity.lhs) == len(identity.rhs)
        and len(identity.lhs) >= h - m
    )


def holds_in_nilpotent(h: int, identity: Identity) -> bool:
    """
    冪零巡回半群 C_{h,1} で成り立つか。
    """

    return is_balanced(identity) or is_long(h, identity) or is_uniform(h, identity)


def holds_in_group(d: int, identity: Identity) -> bool:
    """
    巡回群 C_{1,d} で成り立つか。
    """

    return is_d_balanced(identity, d)


def holds_in_infinite(identity: Identity) -> bool:
    """
    無限巡回半群（正の整数の加法）で成り立つか。
    """

    return is_balanced(identity)


def _failure_reason(h: int, identity: Identity) -> str:
    # d-均衡だが long でも uniform でもない理由
    if identity.lhs.content != identity.rhs.content:
        return "contents differ"
    if len(identity.lhs) != len(identity.rhs):
        return "lengths differ"
    if is_uniform(h, identity):
        return "sides shorter than index"
    return "uniform length bound fails"


def decide(p: CyclicParams, identity: Identity) -> Verdict:
    """
    恒等式が C_{h,d} で成り立つかを判定する。

    均衡な恒等式は d を見ずに成立とする。d-均衡でない場合は辞書式順で最初の文字を根拠にする。

    :param CyclicParams p: パラメータ
    :param Identity identity: 恒等式
    :return: 判定結果
    :rtype: Verdict
    """

    if is_balanced(identity):
        verdict = Verdict(True, Classification.BALANCED, None, "balanced")

    elif not is_d_balanced(identity, p.d):
        left, right = occurrences(identity.lhs), occurrences(identity.rhs)
        letter = min(x for x in unbalanced_letters(identity) if (left[x] - right[x]) % p.d != 0)
        verdict = Verdict(False, Classification.NOT_D_BALANCED, letter, f"letter {letter} is not {p.d}-balanced")

    elif is_long(p.h, identity):
        verdict = Verdict(
            True,
            Classification.D_BALANCED_LONG,
            min(len(identity.lhs), len(identity.rhs)),
            str(Classification.D_BALANCED_LONG),
        )

    elif p.h > p.d + 2 and is_uniform(p.h, identity):
        verdict = Verdict(
            True,
            Classification.D_BALANCED_UNIFORM,
            min_unbalanced_occurrence(identity),
            str(Classification.D_BALANCED_UNIFORM),
        )

    else:
        verdict = Verdict(
            False,
            Classification.NEITHER_LONG_NOR_UNIFORM,
            min(len(identity.lhs), len(identity.rhs)),
            _failure_reason(p.h, identity),
        )

    classifyLogger.debug(f"decide: {identity} in {p}: {verdict.classification}")

    return verdict


if __name__ == "__main__":
    print(__file__)
