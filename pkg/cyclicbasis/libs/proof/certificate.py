"""
導出証明（証明書）を扱うモジュール。

証明書は推論規則の適用の列で、各ステップは自分より前のステップだけを参照する。
最後のステップの恒等式が証明された恒等式になる。

推論規則:

- axiom: 基底の恒等式
- refl: w = w
- subst: 前のステップの両辺に同時代入
- mul_left / mul_right: 前のステップの両辺に左 / 右から語を掛ける
- sym: 前のステップの両辺を入れ替える
- trans: u = w と w = v から u = v
"""

from collections.abc import Mapping, Sequence
from dataclasses import dataclass
from pathlib import Path
from typing import Any
import json

from kivy.logger import Logger as certificateLogger

from cyclicbasis.libs.words.word import Identity, Letter, Word, WORDError, parse_identity, parse_word, render_identity
from cyclicbasis.libs.words.word import MAX_WORD_LENGTH, render_word, substitute
from cyclicbasis.libs.semigroup.cyclic import CyclicParams, SEMIGROUPError
from cyclicbasis.libs.proof.basis import AxiomKind, BasisAxiom, axiom_identity


#### certificate API用のエラーハンドラ
class CERTIFICATEError(Exception):
    """certificateのエラーハンドラ"""

    def __init__(self, *args: object) -> None:
        super().__init__(*args)

        certificateLogger.error(f"CERTIFICATEError: {args}")


@dataclass(frozen=True)
class Axiom:
    axiom: BasisAxiom


@dataclass(frozen=True)
class Reflexivity:
    word: Word


@dataclass(frozen=True)
class Substitute:
    """
    同時代入のステップ。

    像は文字の列のまま持つ。（空の像も表現でき、検査で却下される）

    :param int step: 参照するステップ
    :param tuple images: (文字, 像の文字の列) の組
    """

    step: int
    images: tuple[tuple[Letter, tuple[Letter, ...]], ...]

    @classmethod
    def of(cls, step: int, mapping: Mapping[Letter, Word | Sequence[Letter]]) -> "Substitute":
        """
        辞書から代入のステップを作る。文字の辞書式順に並べる。
        """

        return cls(step, tuple(sorted((x, tuple(w)) for x, w in mapping.items())))


@dataclass(frozen=True)
class MulLeft:
    step: int
    word: Word


@dataclass(frozen=True)
class MulRight:
    step: int
    word: Word


@dataclass(frozen=True)
class Symmetry:
    step: int


@dataclass(frozen=True)
class Transitivity:
    left: int
    right: int


Step = Axiom | Reflexivity | Substitute | MulLeft | MulRight | Symmetry | Transitivity


@dataclass(frozen=True)
class Certificate:
    """
    証明書のデータクラス。

    :param CyclicParams params: 対象の半群のパラメータ
    :param tuple[Step, ...] steps: ステップの列（空でない）
    """

    params: CyclicParams
    steps: tuple[Step, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "steps", tuple(self.steps))
        if not self.steps:
            raise CERTIFICATEError("certificate has no steps")

    def __len__(self) -> int:
        return len(self.steps)

    @property
    def conclusion(self) -> Identity:
        """
        最後のステップの恒等式。
        """

        return step_conclusion(self, len(self.steps) - 1)

    def axioms_used(self) -> set[BasisAxiom]:
        return {step.axiom for step in self.steps if isinstance(step, Axiom)}


@dataclass(frozen=True)
class CheckResult:
    """
    証明書の検査結果。

    :param bool accepted: 受理したか
    :param int|None step: 却下の原因のステップ番号
    :param str reason: 却下の理由
    """

    accepted: bool
    step: int | None = None
    reason: str = ""


def _earlier(index: int, ref: int, earlier: Sequence[Identity]) -> Identity:
    if not isinstance(ref, int) or not 0 <= ref < index:
        raise CERTIFICATEError(f"step {index} references step {ref}, which is not an earlier step")

    return earlier[ref]


def _within(index: int, length: int, max_length: int) -> None:
    if length > max_length:
        raise CERTIFICATEError(f"step {index}: conclusion longer than {max_length} letters")


def conclude(
    p: CyclicParams, step: Step, earlier: Sequence[Identity], max_length: int = MAX_WORD_LENGTH
) -> Identity:
    """
    前のステップの恒等式から、1つのステップの恒等式を求める。

    :param CyclicParams p: パラメータ
    :param Step step: ステップ。番号は ``len(earlier)`` とみなす。
    :param Sequence[Identity] earlier: 前のステップの恒等式
    :param int max_length: 両辺の長さの上限。作る前に長さを調べる。
    :return: ステップの恒等式
    :rtype: Identity
    :raises CERTIFICATEError: 規則の適用条件を満たさない場合
    """

    index = len(earlier)

    match step:
        case Axiom(axiom=axiom):
            if not isinstance(axiom, BasisAxiom) or not axiom.is_valid_for(p):
                raise CERTIFICATEError(f"step {index}: {getattr(axiom, 'tag', axiom)} is not an axiom of {p}")
            _within(index, p.h + p.d, max_length)
            return axiom_identity(axiom, p)

        case Reflexivity(word=word):
            return Identity(word, word)

        case Substitute(step=ref, images=images):
            previous = _earlier(index, ref, earlier)
            mapping: dict[Letter, Word] = {}
            for letter, image in images:
                if not image:
                    raise CERTIFICATEError(f"step {index}: empty image for letter {letter}")
                mapping[letter] = Word(image)
            missing = set(previous.letters) - mapping.keys()
            if missing:
                names = ", ".join(sorted(x.name for x in missing))
                raise CERTIFICATEError(f"step {index}: substitution does not cover {names}")
            for side in (previous.lhs, previous.rhs):
                _within(index, sum(len(mapping[x]) for x in side), max_length)
            return Identity(substitute(previous.lhs, mapping), substitute(previous.rhs, mapping))

        case MulLeft(step=ref, word=word):
            previous = _earlier(index, ref, earlier)
            _within(index, len(word) + max(len(previous.lhs), len(previous.rhs)), max_length)
            return Identity(word + previous.lhs, word + previous.rhs)

        case MulRight(step=ref, word=word):
            previous = _earlier(index, ref, earlier)
            _within(index, len(word) + max(len(previous.lhs), len(previous.rhs)), max_length)
            return Identity(previous.lhs + word, previous.rhs + word)

        case Symmetry(step=ref):
            return _earlier(index, ref, earlier).swapped()

        case Transitivity(left=left, right=right):
            first, second = _earlier(index, left, earlier), _earlier(index, right, earlier)
            if first.rhs != second.lhs:
                raise CERTIFICATEError(
                    f"step {index}: middle words differ: {render_word(first.rhs)} vs {render_word(second.lhs)}"
                )
            return Identity(first.lhs, second.rhs)

        case _:
            raise CERTIFICATEError(f"step {index}: unknown rule {step!r}")


def step_conclusion(cert: Certificate, i: int) -> Identity:
    """
    i 番目のステップの恒等式。

    :param Certificate cert: 証明書
    :param int i: ステップ番号
    :rtype: Identity
    :raises CERTIFICATEError: 番号が範囲外、または i 番目までのステップが不正な場合
    """

    if not 0 <= i < len(cert.steps):
        raise CERTIFICATEError(f"step index out of range: {i}")

    conclusions: list[Identity] = []
    for step in cert.steps[: i + 1]:
        conclusions.append(conclude(cert.params, step, conclusions))

    return conclusions[i]


def check_certificate(cert: Certificate, goal: Identity, max_length: int = MAX_WORD_LENGTH) -> CheckResult:
    """
    証明書を検査する。

    全てのステップが正しく、最後のステップの恒等式が目標と字面で一致すれば受理する。

    :param Certificate cert: 証明書
    :param Identity goal: 目標の恒等式
    :param int max_length: 各ステップの両辺の長さの上限
    :return: 検査結果。却下時は最初に失敗したステップ番号と理由。
    :rtype: CheckResult
    """

    conclusions: list[Identity] = []
    for index, step in enumerate(cert.steps):
        try:
            conclusions.append(conclude(cert.params, step, conclusions, max_length))
        except CERTIFICATEError as e:
            return CheckResult(False, index, str(e))

    last = len(conclusions) - 1
    if conclusions[last] != goal:
        return CheckResult(False, last, f"conclusion {render_identity(conclusions[last])} is not the goal {goal}")

    certificateLogger.debug(f"check_certificate: accepted {goal} in {len(cert.steps)} steps")

    return CheckResult(True)


def _axiom_to_json(axiom: BasisAxiom) -> Any:
    return {"psi": axiom.r} if axiom.kind == AxiomKind.PSI else str(axiom.kind)


def step_to_json(step: Step) -> dict[str, Any]:
    """
    ステップを証明書ファイルの書式（辞書）にする。
    """

    match step:
        case Axiom(axiom=axiom):
            return {"rule": "axiom", "axiom": _axiom_to_json(axiom)}
        case Reflexivity(word=word):
            return {"rule": "refl", "word": render_word(word)}
        case Substitute(step=ref, images=images):
            return {
                "rule": "subst",
                "step": ref,
                "map": {x.name: render_word(Word(image)) if image else "" for x, image in images},
            }
        case MulLeft(step=ref, word=word):
            return {"rule": "mul_left", "step": ref, "word": render_word(word)}
        case MulRight(step=ref, word=word):
            return {"rule": "mul_right", "step": ref, "word": render_word(word)}
        case Symmetry(step=ref):
            return {"rule": "sym", "step": ref}
        case Transitivity(left=left, right=right):
            return {"rule": "trans", "left": left, "right": right}
        case _:
            raise CERTIFICATEError(f"unknown rule {step!r}")


def certificate_to_json(cert: Certificate, goal: Identity) -> dict[str, Any]:
    """
    証明書を証明書ファイルの書式（辞書）にする。

    :param Certificate cert: 証明書
    :param Identity goal: 目標の恒等式
    :rtype: dict
    """

    return {
        "params": {"h": cert.params.h, "d": cert.params.d},
        "goal": render_identity(goal),
        "steps": [step_to_json(step) for step in cert.steps],
    }


def _field(data: Any, key: str, kind: type, location: str) -> Any:
    if not isinstance(data, dict) or key not in data:
        raise CERTIFICATEError(f"{location}: missing field {key!r}")
    value = data[key]
    if not isinstance(value, kind) or (kind is int and isinstance(value, bool)):
        raise CERTIFICATEError(f"{location}.{key}: expected {kind.__name__}")
    return value


def _word(text: str, location: str, max_length: int = MAX_WORD_LENGTH) -> Word:
    try:
        return parse_word(text, max_length)
    except WORDError as e:
        raise CERTIFICATEError(f"{location}: {e}") from e


def _axiom_from_json(value: Any, location: str) -> BasisAxiom:
    if value in ("com", "phi"):
        return BasisAxiom(AxiomKind(value))
    if isinstance(value, dict) and set(value) == {"psi"}:
        return BasisAxiom(AxiomKind.PSI, _field(value, "psi", int, location))
    raise CERTIFICATEError(f"{location}: unknown axiom {value!r}")


def step_from_json(data: Any, location: str = "step", max_length: int = MAX_WORD_LENGTH) -> Step:
    """
    証明書ファイルの書式（辞書）からステップを読み取る。

    :param data: ステップの辞書
    :param str location: エラー表示用の位置
    :param int max_length: 語の長さの上限
    :rtype: Step
    :raises CERTIFICATEError: 書式の誤り
    """

    rule = _field(data, "rule", str, location)

    match rule:
        case "axiom":
            return Axiom(_axiom_from_json(data.get("axiom"), f"{location}.axiom"))
        case "refl":
            return Reflexivity(_word(_field(data, "word", str, location), f"{location}.word", max_length))
        case "subst":
            ref = _field(data, "step", int, location)
            images: dict[Letter, tuple[Letter, ...]] = {}
            for name, text in _field(data, "map", dict, location).items():
                where = f"{location}.map.{name}"
                if not isinstance(text, str):
                    raise CERTIFICATEError(f"{where}: expected str")
                try:
                    letter = Letter(name)
                except WORDError as e:
                    raise CERTIFICATEError(f"{where}: {e}") from e
                images[letter] = () if not text.strip() else tuple(_word(text, where, max_length))
            return Substitute.of(ref, images)
        case "mul_left":
            word = _word(_field(data, "word", str, location), f"{location}.word", max_length)
            return MulLeft(_field(data, "step", int, location), word)
        case "mul_right":
            word = _word(_field(data, "word", str, location), f"{location}.word", max_length)
            return MulRight(_field(data, "step", int, location), word)
        case "sym":
            return Symmetry(_field(data, "step", int, location))
        case "trans":
            return Transitivity(_field(data, "left", int, location), _field(data, "right", int, location))
        case _:
            raise CERTIFICATEError(f"{location}.rule: unknown rule {rule!r}")


def certificate_from_json(data: Any, max_length: int = MAX_WORD_LENGTH) -> tuple[Certificate, Identity]:
    """
    証明書ファイルの書式（辞書）から証明書と目標を読み取る。

    :param data: 証明書ファイルの内容
    :param int max_length: 語の長さの上限。 h+d もこれを超えてはならない。（phi の左辺の長さ）
    :rtype: tuple[Certificate, Identity]
    :raises CERTIFICATEError: 書式の誤り
    """

    params_data = _field(data, "params", dict, "$")
    try:
        params = CyclicParams(_field(params_data, "h", int, "$.params"), _field(params_data, "d", int, "$.params"))
    except SEMIGROUPError as e:
        raise CERTIFICATEError(f"$.params: {e}") from e
    if params.h + params.d > max_length:
        raise CERTIFICATEError(f"$.params: h+d = {params.h + params.d} exceeds the word length limit {max_length}")

    try:
        goal = parse_identity(_field(data, "goal", str, "$"), max_length)
    except WORDError as e:
        raise CERTIFICATEError(f"$.goal: {e}") from e

    steps_data = _field(data, "steps", list, "$")
    if not steps_data:
        raise CERTIFICATEError("$.steps: empty")

    steps = [step_from_json(step, f"$.steps[{i}]", max_length) for i, step in enumerate(steps_data)]

    return Certificate(params, tuple(steps)), goal


def save_certificate(cert: Certificate, goal: Identity, path: Path) -> None:
    """
    証明書ファイルを保存する。

    :param Certificate cert: 証明書
    :param Identity goal: 目標の恒等式
    :param Path path: 証明書ファイルのパスオブジェクト
    """

    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8") as f:
        json.dump(certificate_to_json(cert, goal), f, indent=4)

    certificateLogger.info(f"save_certificate: saved to {path}")


def load_certificate(path: Path, max_length: int = MAX_WORD_LENGTH) -> tuple[Certificate, Identity]:
    """
    証明書ファイルを読み込む。

    :param Path path: 証明書ファイルのパスオブジェクト
    :param int max_length: 語の長さの上限
    :return: 証明書と目標の恒等式
    :rtype: tuple[Certificate, Identity]
    :raises CERTIFICATEError: JSON として読めない、または書式の誤り
    :raises OSError: ファイルを読めない場合
    """

    with path.open("r", encoding="utf-8") as f:
        try:
            data = json.load(f)
        except json.JSONDecodeError as e:
            raise CERTIFICATEError(f"line {e.lineno} column {e.colno}: {e.msg}") from e
        except UnicodeDecodeError as e:
            raise CERTIFICATEError(f"byte {e.start}: not UTF-8") from e

    certificateLogger.info(f"load_certificate: loaded from {path}")

    return certificate_from_json(data, max_length)


if __name__ == "__main__":
    print(__file__)
