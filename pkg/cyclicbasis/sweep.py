"""
小さな C_{h,d} と短い恒等式を総当たりして、判定・オラクル・導出・検査の結果が一致するかを調べる。
"""

from collections.abc import Iterator
from dataclasses import dataclass, field
from itertools import product

from kivy.logger import Logger as sweepLogger

from cyclicbasis.config import Settings
from cyclicbasis.libs.words.word import Identity, Letter, Word
from cyclicbasis.libs.semigroup.cyclic import CyclicParams, satisfies_oracle
from cyclicbasis.libs.semigroup.classify import decide
from cyclicbasis.libs.proof.basis import X, Y, fresh_letters
from cyclicbasis.libs.proof.certificate import check_certificate
from cyclicbasis.libs.proof.derivation import DERIVATIONError, NotSatisfied, derive


def sweep_letters(n: int) -> tuple[Letter, ...]:
    """
    総当たりに使う文字 x, y, x1, x2, ... の先頭 n 個。
    """

    return ((X, Y) + fresh_letters(max(n - 2, 0)))[:n]


def sweep_words(letters: tuple[Letter, ...], max_length: int) -> Iterator[Word]:
    """
    文字の並びで作れる長さ max_length までの全ての語。短い順、同じ長さでは辞書式順。

    :param tuple letters: 使う文字
    :param int max_length: 語の長さの上限
    :rtype: Iterator[Word]
    """

    for n in range(1, max_length + 1):
        for combination in product(letters, repeat=n):
            yield Word(combination)


def sweep_identities(letters: tuple[Letter, ...], max_length: int) -> Iterator[Identity]:
    words = list(sweep_words(letters, max_length))
    for lhs in words:
        for rhs in words:
            yield Identity(lhs, rhs)


def sweep_params(max_sum: int) -> Iterator[CyclicParams]:
    """
    h+d <= max_sum を満たす全ての (h, d) 。 h の昇順、同じ h では d の昇順。
    """

    for h in range(1, max_sum):
        for d in range(1, max_sum - h + 1):
            yield CyclicParams(h, d)


@dataclass(frozen=True)
class Disagreement:
    """
    結果の食い違い。

    :param CyclicParams params: パラメータ
    :param Identity identity: 恒等式
    :param str what: 何が食い違ったか
    """

    params: CyclicParams
    identity: Identity
    what: str

    def __str__(self) -> str:
        return f"{self.params} {self.identity}: {self.what}"


@dataclass
class SweepRow:
    """
    1つの (h, d) についての集計。
    """

    params: CyclicParams
    identities: int = 0
    holds: int = 0
    certificates: int = 0


@dataclass
class SweepReport:
    """
    総当たりの結果。最初の食い違いで止まる。

    :param list rows: (h, d) ごとの集計
    :param Disagreement|None disagreement: 最初の食い違い
    """

    rows: list[SweepRow] = field(default_factory=list)
    disagreement: Disagreement | None = None

    @property
    def ok(self) -> bool:
        return self.disagreement is None

    @property
    def identities(self) -> int:
        return sum(row.identities for row in self.rows)

    @property
    def holds(self) -> int:
        return sum(row.holds for row in self.rows)

    @property
    def certificates(self) -> int:
        return sum(row.certificates for row in self.rows)


def check_identity(p: CyclicParams, identity: Identity, budget: int, derive_certificates: bool) -> tuple[bool, str | None]:
    """
    1つの恒等式について、全ての手段の結果が一致するか調べる。

    :param CyclicParams p: パラメータ
    :param Identity identity: 恒等式
    :param int budget: オラクルの評価回数の上限
    :param bool derive_certificates: 導出と検査も行うか
    :return: (オラクルで成り立つか, 食い違いの説明。一致すれば ``None``)
    :rtype: tuple[bool, str|None]
    :raises BudgetError: オラクルの評価回数が上限を超える場合
    """

    holds = satisfies_oracle(p, identity, budget).holds

    verdict = decide(p, identity)
    if verdict.holds != holds:
        return holds, f"decide says {verdict.holds} ({verdict.reason}), oracle says {holds}"

    nilpotent = satisfies_oracle(CyclicParams(p.h, 1), identity, budget).holds
    group = satisfies_oracle(CyclicParams(1, p.d), identity, budget).holds
    if (nilpotent and group) != holds:
        return holds, f"C({p.h},1) says {nilpotent}, C(1,{p.d}) says {group}, oracle says {holds}"

    if not derive_certificates:
        return holds, None

    try:
        result = derive(p, identity)
    except DERIVATIONError as e:
        return holds, f"derive failed: {e}"

    if isinstance(result, NotSatisfied):
        return holds, None if not holds else f"derive refused a holding identity: {result.verdict.reason}"
    if not holds:
        return holds, "derive produced a certificate for a failing identity"

    checked = check_certificate(result, identity)
    if not checked.accepted:
        return holds, f"checker rejected step {checked.step}: {checked.reason}"

    return holds, None


def run_sweep(settings: Settings, derive_certificates: bool = True) -> SweepReport:
    """
    h+d <= max_sum の全ての C_{h,d} と、 max_letters 個の文字で作る両辺の長さ max_length までの
    全ての恒等式を調べる。

    :param Settings settings: 総当たりの範囲とオラクルの上限
    :param bool derive_certificates: 成り立つ恒等式の導出と検査も行うか
    :return: 結果
    :rtype: SweepReport
    :raises BudgetError: オラクルの評価回数が上限を超える場合
    """

    report = SweepReport()
    letters = sweep_letters(settings.max_letters)
    identities = list(sweep_identities(letters, settings.max_length))

    for p in sweep_params(settings.max_sum):
        row = SweepRow(p)
        report.rows.append(row)

        for identity in identities:
            row.identities += 1
            holds, what = check_identity(p, identity, settings.budget, derive_certificates)
            if what is not None:
                report.disagreement = Disagreement(p, identity, what)
                sweepLogger.warning(f"run_sweep: disagreement: {report.disagreement}")
                return report
            if holds:
                row.holds += 1
                if derive_certificates:
                    row.certificates += 1

        sweepLogger.debug(f"run_sweep: {p}: {row.identities} identities, {row.holds} hold")

    return report


if __name__ == "__main__":
    print(__file__)
