"""
C_{h,d} の恒等式基底を作るモジュール。

- com: x y = y x
- phi: x^d x1 ... xh = x1 ... xh
- psi[r]: x^r y^{r+d} x1 ... x_{h-3r-d} = x^{r+d} y^r x1 ... x_{h-3r-d}  (h > d+2, 1 <= r <= (h-d)/3)

補助の恒等式（com と phi から導出できる）:

- x^d = y^d  (h <= d)
- y^d x1 ... x_{h-d} = x^d x1 ... x_{h-d}  (h > d)
"""

from dataclasses import dataclass
from enum import StrEnum

from kivy.logger import Logger as basisLogger

from cyclicbasis.libs.words.word import Identity, Letter, Word, make_word, power
from cyclicbasis.libs.semigroup.cyclic import CyclicParams

# 先頭の文字
X: Letter = Letter("x")
Y: Letter = Letter("y")


#### basis API用のエラーハンドラ
class BASISError(Exception):
    """basisのエラーハンドラ"""

    def __init__(self, *args: object) -> None:
        super().__init__(*args)

        basisLogger.error(f"BASISError: {args}")


class AxiomKind(StrEnum):
    """
    基底の恒等式の種類の列挙クラス。
    """

    COM = "com"
    PHI = "phi"
    PSI = "psi"


@dataclass(order=True, eq=True, frozen=True)
class BasisAxiom:
    """
    基底の恒等式への参照。

    :param AxiomKind kind: 種類
    :param int|None r: psi のパラメータ。 com, phi では ``None`` 。
    """

    kind: AxiomKind
    r: int | None = None

    def __post_init__(self) -> None:
        if (self.kind == AxiomKind.PSI) != (self.r is not None):
            raise BASISError(f"only psi takes a parameter: {self.kind}, r={self.r}")

    @property
    def tag(self) -> str:
        """
        表示用のタグ。 ``com``, ``phi``, ``psi[r]`` 。
        """

        return f"psi[{self.r}]" if self.kind == AxiomKind.PSI else str(self.kind)

    def is_valid_for(self, p: CyclicParams) -> bool:
        """
        C_{h,d} の基底に含まれるか。
        """

        return self.kind != AxiomKind.PSI or (self.r in psi_range(p))


COM = BasisAxiom(AxiomKind.COM)
PHI = BasisAxiom(AxiomKind.PHI)


def fresh_letters(k: int) -> tuple[Letter, ...]:
    """
    末尾用の文字 x1, ..., xk 。
    """

    return tuple(Letter(f"x{i}") for i in range(1, k + 1))


def psi_range(p: CyclicParams) -> range:
    """
    psi[r] の r の範囲。 h <= d+2 なら空。
    """

    if p.h <= p.d + 2:
        return range(0)

    return range(1, (p.h - p.d) // 3 + 1)


def commutative_law() -> Identity:
    """
    可換律 x y = y x 。
    """

    return Identity(make_word("x", "y"), make_word("y", "x"))


def phi(p: CyclicParams) -> Identity:
    """
    x^d x1 ... xh = x1 ... xh 。

    :param CyclicParams p: パラメータ
    :rtype: Identity
    """

    tail = Word(fresh_letters(p.h))

    return Identity(power(X, p.d) + tail, tail)


def psi(p: CyclicParams, r: int) -> Identity:
    """
    x^r y^{r+d} x1 ... x_{h-3r-d} = x^{r+d} y^r x1 ... x_{h-3r-d} 。

    :param CyclicParams p: パラメータ
    :param int r: 1 <= r <= (h-d)/3
    :rtype: Identity
    :raises BASISError: h <= d+2 または r が範囲外の場合
    """

    if r not in psi_range(p):
        raise BASISError(f"psi[{r}] is not defined for {p}")

    tail = fresh_letters(p.h - 3 * r - p.d)
    lhs = (X,) * r + (Y,) * (r + p.d) + tail
    rhs = (X,) * (r + p.d) + (Y,) * r + tail

    return Identity(Word(lhs), Word(rhs))


def axiom_identity(axiom: BasisAxiom, p: CyclicParams) -> Identity:
    """
    基底の恒等式への参照から恒等式を得る。

    :raises BASISError: C_{h,d} の基底に含まれない場合
    """

    if not axiom.is_valid_for(p):
        raise BASISError(f"{axiom.tag} is not an axiom of {p}")

    match axiom.kind:
        case AxiomKind.COM:
            return commutative_law()
        case AxiomKind.PHI:
            return phi(p)
        case _:
            return psi(p, axiom.r or 0)


def basis(p: CyclicParams) -> list[tuple[BasisAxiom, Identity]]:
    """
    C_{h,d} の恒等式基底。 com, phi, psi[1], ..., psi[(h-d)/3] の順。

    :param CyclicParams p: パラメータ
    :return: (参照, 恒等式) のリスト
    :rtype: list[tuple[BasisAxiom, Identity]]
    """

    axioms = [COM, PHI] + [BasisAxiom(AxiomKind.PSI, r) for r in psi_range(p)]

    return [(axiom, axiom_identity(axiom, p)) for axiom in axioms]


def aux_equal_power(d: int) -> Identity:
    """
    x^d = y^d （h <= d で成り立つ）。
    """

    return Identity(power(X, d), power(Y, d))


def aux_equal_power_tail(p: CyclicParams) -> Identity:
    """
    y^d x1 ... x_{h-d} = x^d x1 ... x_{h-d} （h > d で成り立つ）。

    :raises BASISError: h <= d の場合
    """

    if p.h <= p.d:
        raise BASISError(f"equal power with tail needs h > d: {p}")

    tail = Word(fresh_letters(p.h - p.d))

    return Identity(power(Y, p.d) + tail, power(X, p.d) + tail)


if __name__ == "__main__":
    print(__file__)
