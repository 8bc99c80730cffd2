"""
巡回半群の恒等式基底ツールのコマンドライン。

- decide: 恒等式が C_{h,d} で成り立つかを閉じた形で判定する。
- oracle: 全ての代入を調べて判定する。
- derive: 恒等式基底からの証明書を作る。
- check: 証明書ファイルを検査する。
- basis: C_{h,d} の恒等式基底を表示する。
- eval: 代入による語の値を計算する。
- selftest: 判定・オラクル・導出・検査の結果が一致するか総当たりで調べる。

終了コード: 0 成立・受理、1 不成立・却下、2 使い方・構文の誤り、3 評価回数の上限超過、4 入出力の誤り。
"""

import argparse
import json
import sys
from collections.abc import Callable, Sequence
from dataclasses import dataclass
from pathlib import Path
from typing import Any

from kivy.logger import Logger as cliLogger, LOG_LEVELS

from cyclicbasis.config import CONFIGError, OutputFormat, Settings, load_config
from cyclicbasis.sweep import run_sweep
from cyclicbasis.libs.words.word import WORDError, Letter, parse_identity, parse_word, render_identity
from cyclicbasis.libs.semigroup.cyclic import BudgetError, CyclicParams, SEMIGROUPError
from cyclicbasis.libs.semigroup.cyclic import evaluate, parse_substitution, render_substitution, satisfies_oracle
from cyclicbasis.libs.semigroup.classify import decide
from cyclicbasis.libs.proof.basis import BASISError, basis
from cyclicbasis.libs.proof.certificate import CERTIFICATEError, certificate_to_json, check_certificate
from cyclicbasis.libs.proof.certificate import load_certificate, save_certificate
from cyclicbasis.libs.proof.derivation import DERIVATIONError, NotSatisfied, derive

# 終了コード
EXIT_OK: int = 0
EXIT_FAILS: int = 1
EXIT_USAGE: int = 2
EXIT_BUDGET: int = 3
EXIT_IO: int = 4


def positive_int(text: str) -> int:
    """
    1以上の整数の引数。
    """

    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be at least 1: {value}")

    return value


@dataclass(frozen=True)
class CliConfig:
    """
    コマンドの設定。設定ファイルの値をコマンドラインの指定で上書きしたもの。

    :param str command: コマンド名
    :param int h: 指数。 C_{h,d} を使わないコマンドでは 0 。
    :param int d: 周期。 C_{h,d} を使わないコマンドでは 0 。
    :param str text: 恒等式または語のテキスト
    :param str substitution: 代入のテキスト
    :param Path|None certificate: 証明書ファイル
    :param str|None goal: check の目標の恒等式。 ``None`` なら証明書ファイルの goal 。
    :param bool counterexample: decide で反例も表示するか
    :param bool derive_certificates: selftest で導出と検査も行うか
    :param Settings settings: 設定
    """

    command: str
    settings: Settings
    h: int = 0
    d: int = 0
    text: str = ""
    substitution: str = ""
    certificate: Path | None = None
    goal: str | None = None
    counterexample: bool = False
    derive_certificates: bool = True

    @property
    def params(self) -> CyclicParams:
        return CyclicParams(self.h, self.d)

    @classmethod
    def from_args(cls, args: argparse.Namespace, settings: Settings) -> "CliConfig":
        """
        解析済みの引数と設定ファイルから作る。

        :param argparse.Namespace args: 解析済みの引数
        :param Settings settings: 設定ファイルの設定
        :rtype: CliConfig
        :raises CONFIGError: 上書き後の設定が不正な場合
        """

        settings = settings.override(
            budget=args.budget,
            format=OutputFormat(args.format) if args.format else None,
            log_level=args.log_level,
            max_sum=getattr(args, "max_sum", None),
            max_letters=getattr(args, "max_letters", None),
            max_length=getattr(args, "max_length", None),
        )

        return cls(
            command=args.command,
            settings=settings,
            h=getattr(args, "h", 0),
            d=getattr(args, "d", 0),
            text=getattr(args, "identity", None) or getattr(args, "word", ""),
            substitution=getattr(args, "substitution", ""),
            certificate=getattr(args, "certificate", None) or getattr(args, "output", None),
            goal=getattr(args, "goal", None),
            counterexample=getattr(args, "counterexample", False),
            derive_certificates=getattr(args, "derive", True),
        )


def emit(config: CliConfig, lines: Sequence[str], data: dict[str, Any]) -> None:
    """
    結果を出力する。 json 形式では1つのオブジェクト、 text 形式では行ごと。
    """

    if config.settings.format == OutputFormat.JSON:
        print(json.dumps({"command": config.command} | data, ensure_ascii=False))
    else:
        for line in lines:
            print(line)


def _params_json(p: CyclicParams) -> dict[str, int]:
    return {"h": p.h, "d": p.d}


def cmd_decide(config: CliConfig) -> int:
    """
    恒等式が C_{h,d} で成り立つかを閉じた形で判定する。

    :return: 成り立てば 0 、成り立たなければ 1
    """

    p = config.params
    identity = parse_identity(config.text, config.settings.max_word_length)
    verdict = decide(p, identity)

    counterexample = None
    skipped = None
    if config.counterexample and not verdict.holds:
        try:
            found = satisfies_oracle(p, identity, config.settings.budget)
            counterexample = render_substitution(found.substitution) if not found.holds else None
        except BudgetError as e:
            # 判定は済んでいるので反例だけ省く
            skipped = e.required

    lines = [f"{'holds' if verdict.holds else 'fails'} ({verdict.reason})"]
    if counterexample:
        lines.append(f"counterexample: {counterexample}")
    if skipped is not None:
        lines.append(f"counterexample skipped (needs {skipped} evaluations)")

    witness = verdict.witness.name if isinstance(verdict.witness, Letter) else verdict.witness
    emit(
        config,
        lines,
        {
            "params": _params_json(p),
            "identity": render_identity(identity),
            "holds": verdict.holds,
            "classification": str(verdict.classification),
            "witness": witness,
            "reason": verdict.reason,
            "counterexample": counterexample,
            "counterexample_skipped": skipped,
        },
    )

    return EXIT_OK if verdict.holds else EXIT_FAILS


def cmd_oracle(config: CliConfig) -> int:
    """
    全ての代入を調べて判定する。成り立たなければ列挙順で最初の反例を表示する。

    :return: 成り立てば 0 、成り立たなければ 1
    :raises BudgetError: 評価回数が上限を超える場合
    """

    p = config.params
    identity = parse_identity(config.text, config.settings.max_word_length)
    verdict = satisfies_oracle(p, identity, config.settings.budget)

    counterexample = None if verdict.holds else render_substitution(verdict.substitution)
    if counterexample is None:
        lines = [f"holds ({verdict.evaluations} substitutions)"]
    else:
        lines = [f"fails: {counterexample}"]

    emit(
        config,
        lines,
        {
            "params": _params_json(p),
            "identity": render_identity(identity),
            "holds": verdict.holds,
            "evaluations": verdict.evaluations,
            "counterexample": counterexample,
        },
    )

    return EXIT_OK if verdict.holds else EXIT_FAILS


def cmd_derive(config: CliConfig) -> int:
    """
    証明書を作る。 -o を指定するとファイルに保存し、指定しなければ証明書の書式で標準出力に出す。

    :return: 作れたら 0 、恒等式が成り立たなければ 1
    :raises OSError: 保存に失敗した場合
    """

    p = config.params
    identity = parse_identity(config.text, config.settings.max_word_length)
    result = derive(p, identity)

    if isinstance(result, NotSatisfied):
        emit(
            config,
            [f"not satisfied: {result.verdict.reason}"],
            {
                "params": _params_json(p),
                "identity": render_identity(identity),
                "holds": False,
                "classification": str(result.verdict.classification),
                "reason": result.verdict.reason,
            },
        )
        return EXIT_FAILS

    axioms = sorted(axiom.tag for axiom in result.axioms_used())
    cliLogger.info(f"cmd_derive: {len(result)} steps using {', '.join(axioms) or 'no axiom'}")

    if config.certificate is None:
        # 標準出力は証明書の書式のまま。ステップ数は標準エラー出力へ
        print(json.dumps(certificate_to_json(result, identity), indent=4, ensure_ascii=False))
        print(f"{len(result)} steps", file=sys.stderr)
        return EXIT_OK

    save_certificate(result, identity, config.certificate)
    emit(
        config,
        [f"{len(result)} steps written to {config.certificate}"],
        {
            "params": _params_json(p),
            "identity": render_identity(identity),
            "steps": len(result),
            "axioms": axioms,
            "path": str(config.certificate),
        },
    )

    return EXIT_OK


def cmd_check(config: CliConfig) -> int:
    """
    証明書ファイルを検査する。

    :return: 受理なら 0 、却下なら 1
    :raises CERTIFICATEError: 証明書ファイルの書式の誤り
    :raises OSError: 読み込みに失敗した場合
    """

    if config.certificate is None:
        raise CERTIFICATEError("no certificate file given")

    limit = config.settings.max_word_length
    cert, recorded = load_certificate(config.certificate, limit)
    goal = parse_identity(config.goal, limit) if config.goal is not None else recorded
    result = check_certificate(cert, goal, limit)

    if result.accepted:
        lines = [f"accepted ({len(cert)} steps)"]
    else:
        lines = [f"rejected at step {result.step}: {result.reason}"]

    emit(
        config,
        lines,
        {
            "params": _params_json(cert.params),
            "goal": render_identity(goal),
            "accepted": result.accepted,
            "step": result.step,
            "reason": result.reason,
        },
    )

    return EXIT_OK if result.accepted else EXIT_FAILS


def cmd_basis(config: CliConfig) -> int:
    """
    C_{h,d} の恒等式基底を表示する。
    """

    axioms = basis(config.params)
    emit(
        config,
        [f"{axiom.tag}: {render_identity(identity)}" for axiom, identity in axioms],
        {
            "params": _params_json(config.params),
            "basis": [{"axiom": axiom.tag, "identity": render_identity(identity)} for axiom, identity in axioms],
        },
    )

    return EXIT_OK


def cmd_eval(config: CliConfig) -> int:
    p = config.params
    word = parse_word(config.text, config.settings.max_word_length)
    value = evaluate(p, word, parse_substitution(p, config.substitution))

    emit(config, [str(value)], {"params": _params_json(p), "word": config.text, "value": value.exponent})

    return EXIT_OK


def cmd_selftest(config: CliConfig) -> int:
    """
    判定・オラクル・導出・検査の結果が一致するか総当たりで調べ、 (h, d) ごとの集計を表示する。

    :return: 食い違いが無ければ 0 、あれば 1
    """

    settings = config.settings
    report = run_sweep(settings, config.derive_certificates)

    lines = [f"{'params':<8} {'identities':>10} {'holds':>8} {'certificates':>12}"]
    lines += [f"{str(row.params):<8} {row.identities:>10} {row.holds:>8} {row.certificates:>12}" for row in report.rows]
    lines.append(f"{'total':<8} {report.identities:>10} {report.holds:>8} {report.certificates:>12}")
    if report.disagreement is not None:
        lines.append(f"disagreement: {report.disagreement}")

    disagreement = report.disagreement
    emit(
        config,
        lines,
        {
            "bounds": {
                "max_sum": settings.max_sum,
                "max_letters": settings.max_letters,
                "max_length": settings.max_length,
            },
            "rows": [
                {
                    "params": _params_json(row.params),
                    "identities": row.identities,
                    "holds": row.holds,
                    "certificates": row.certificates,
                }
                for row in report.rows
            ],
            "identities": report.identities,
            "holds": report.holds,
            "certificates": report.certificates,
            "disagreement": None
            if disagreement is None
            else {
                "params": _params_json(disagreement.params),
                "identity": render_identity(disagreement.identity),
                "what": disagreement.what,
            },
        },
    )

    return EXIT_OK if report.ok else EXIT_FAILS


COMMANDS: dict[str, Callable[[CliConfig], int]] = {
    "decide": cmd_decide,
    "oracle": cmd_oracle,
    "derive": cmd_derive,
    "check": cmd_check,
    "basis": cmd_basis,
    "eval": cmd_eval,
    "selftest": cmd_selftest,
}


def build_parser() -> argparse.ArgumentParser:
    """
    引数の解析器を作る。 -h は指数に使うので、ヘルプは --help のみ。
    """

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--help", action="help", help="ヘルプを表示する")
    common.add_argument("--config", type=Path, help="設定ファイル（初期値 config/config.toml）")
    common.add_argument("--format", choices=[str(f) for f in OutputFormat], help="出力形式")
    common.add_argument("--log-level", choices=list(LOG_LEVELS), help="ログレベル")
    common.add_argument("--budget", type=positive_int, help="オラクルの評価回数の上限")

    params = argparse.ArgumentParser(add_help=False)
    params.add_argument("-h", "--index", dest="h", type=positive_int, required=True, metavar="H", help="指数 h")
    params.add_argument("-d", "--period", dest="d", type=positive_int, required=True, metavar="D", help="周期 d")

    parser = argparse.ArgumentParser(
        prog="cyclicbasis",
        description="有限巡回半群 C_{h,d} の恒等式の判定と、恒等式基底からの証明書の作成・検査",
        add_help=False,
    )
    parser.add_argument("--help", action="help", help="ヘルプを表示する")
    commands = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    sub = commands.add_parser("decide", parents=[common, params], add_help=False, help="閉じた形で判定する")
    sub.add_argument("identity", help='恒等式。例 "x y^2 = x^2 y"')
    sub.add_argument("--counterexample", action="store_true", help="成り立たなければオラクルの反例も表示する")

    sub = commands.add_parser("oracle", parents=[common, params], add_help=False, help="全ての代入を調べて判定する")
    sub.add_argument("identity", help="恒等式")

    sub = commands.add_parser("derive", parents=[common, params], add_help=False, help="証明書を作る")
    sub.add_argument("identity", help="恒等式")
    sub.add_argument("-o", "--output", type=Path, help="証明書ファイル。省略すると標準出力。")

    sub = commands.add_parser("check", parents=[common], add_help=False, help="証明書ファイルを検査する")
    sub.add_argument("certificate", type=Path, help="証明書ファイル")
    sub.add_argument("goal", nargs="?", help="目標の恒等式。省略すると証明書ファイルの goal 。")

    commands.add_parser("basis", parents=[common, params], add_help=False, help="恒等式基底を表示する")

    sub = commands.add_parser("eval", parents=[common, params], add_help=False, help="語の値を計算する")
    sub.add_argument("word", help='語。例 "x^2 y"')
    sub.add_argument("substitution", help='代入。例 "x=3,y=1"')

    sub = commands.add_parser("selftest", parents=[common], add_help=False, help="総当たりで結果の一致を調べる")
    sub.add_argument("--max-sum", type=positive_int, help="h+d の上限")
    sub.add_argument("--max-letters", type=positive_int, help="文字の数")
    sub.add_argument("--max-length", type=positive_int, help="語の長さの上限")
    sub.add_argument("--no-derive", dest="derive", action="store_false", help="導出と検査を省く")

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    """
    コマンドを実行する。

    :param Sequence[str]|None argv: 引数。 ``None`` なら sys.argv 。
    :return: 終了コード
    :rtype: int
    """

    try:
        args = build_parser().parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE

    try:
        config = CliConfig.from_args(args, load_config(args.config))
        cliLogger.setLevel(LOG_LEVELS[config.settings.log_level])
        return COMMANDS[config.command](config)

    except BudgetError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_BUDGET
    except (WORDError, SEMIGROUPError, BASISError, CERTIFICATEError, CONFIGError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except DERIVATIONError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_FAILS
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    print(__file__)
