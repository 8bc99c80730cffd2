"""
設定ファイル config/config.toml を読み込む。
"""

from dataclasses import dataclass, fields, replace
from enum import StrEnum
from pathlib import Path
from typing import Any
import tomllib

from kivy.logger import Logger as configLogger, LOG_LEVELS

from cyclicbasis.libs.words.word import MAX_WORD_LENGTH

# 設定ファイル
CONFIG_FILENAME: str = "config/config.toml"

# 設定ファイルが無かった時の設定
ORACLE_BUDGET: int = 10_000_000
SWEEP_MAX_SUM: int = 6
SWEEP_MAX_LETTERS: int = 2
SWEEP_MAX_LENGTH: int = 5
WORD_LENGTH_LIMIT: int = MAX_WORD_LENGTH
OUTPUT_FORMAT: str = "text"
LOG_LEVEL: str = "warning"


#### config API用のエラーハンドラ
class CONFIGError(Exception):
    """configのエラーハンドラ"""

    def __init__(self, *args: object) -> None:
        super().__init__(*args)

        configLogger.error(f"CONFIGError: {args}")


class OutputFormat(StrEnum):
    """
    出力形式の列挙クラス。
    """

    TEXT = "text"
    JSON = "json"


@dataclass(frozen=True)
class Settings:
    """
    設定のデータクラス。

    :param int budget: オラクルの評価回数の上限
    :param int max_sum: 自己検査で調べる h+d の上限
    :param int max_letters: 自己検査で使う文字の数
    :param int max_length: 自己検査で使う語の長さの上限
    :param int max_word_length: 読み取る語（証明書の語を含む）の長さの上限
    :param OutputFormat format: 出力形式
    :param str log_level: ログレベル
    """

    budget: int = ORACLE_BUDGET
    max_sum: int = SWEEP_MAX_SUM
    max_letters: int = SWEEP_MAX_LETTERS
    max_length: int = SWEEP_MAX_LENGTH
    max_word_length: int = WORD_LENGTH_LIMIT
    format: OutputFormat = OutputFormat(OUTPUT_FORMAT)
    log_level: str = LOG_LEVEL

    def __post_init__(self) -> None:
        for name in ("budget", "max_sum", "max_letters", "max_length", "max_word_length"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, int) or value < 1:
                raise CONFIGError(f"{name} must be a positive integer: {value!r}")
        if self.max_sum < 2:
            raise CONFIGError(f"max_sum must be at least 2: {self.max_sum}")
        if self.format not in set(OutputFormat):
            raise CONFIGError(f"unknown format: {self.format!r}")
        if self.log_level not in LOG_LEVELS:
            raise CONFIGError(f"unknown log level: {self.log_level!r}")

    def override(self, **values: Any) -> "Settings":
        """
        ``None`` でない値だけを差し替えた設定を返す。コマンドラインの指定に使う。
        """

        return replace(self, **{name: value for name, value in values.items() if value is not None})


def from_toml(config: dict[str, Any]) -> Settings:
    """
    設定ファイルの内容から設定を作る。書かれていないキーは初期値のまま。

    :param dict config: tomllib で読み込んだ内容
    :rtype: Settings
    :raises CONFIGError: 値が不正な場合
    """

    known = {f.name for f in fields(Settings)}
    for key in config.keys() - known:
        configLogger.warning(f"from_toml: unknown key ignored: {key}")

    values = {key: value for key, value in config.items() if key in known}
    if "format" in values:
        try:
            values["format"] = OutputFormat(values["format"])
        except ValueError as e:
            raise CONFIGError(f"unknown format: {values['format']!r}") from e

    return Settings(**values)


def load_config(path: Path | str | None = None) -> Settings:
    """
    設定ファイルを読み込む。

    パスを指定しなかった場合に限り、ファイルが無ければ初期値を使う。

    :param Path|str|None path: 設定ファイル。 ``None`` なら config/config.toml 。
    :return: 設定
    :rtype: Settings
    :raises CONFIGError: 指定したファイルが無い、 TOML として読めない、値が不正な場合
    """

    if path is None:
        path = Path(CONFIG_FILENAME)
        if not path.exists():
            configLogger.debug(f"load_config: {path} not found, using defaults")
            return Settings()

    path = Path(path)
    try:
        with open(path, "rb") as f:
            config = tomllib.load(f)
    except FileNotFoundError as e:
        raise CONFIGError(f"config file not found: {path}") from e
    except tomllib.TOMLDecodeError as e:
        raise CONFIGError(f"invalid config file {path}: {e}") from e

    configLogger.debug(f"load_config: {path}")

    return from_toml(config)


if __name__ == "__main__":
    print(__file__)
