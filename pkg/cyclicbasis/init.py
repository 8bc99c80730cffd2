"""
巡回半群の恒等式基底ツールで使用するフォルダ・ファイルを準備する。
"""

from pathlib import Path

from cyclicbasis.config import CONFIG_FILENAME, LOG_LEVEL, ORACLE_BUDGET, OUTPUT_FORMAT
from cyclicbasis.config import SWEEP_MAX_LENGTH, SWEEP_MAX_LETTERS, SWEEP_MAX_SUM, WORD_LENGTH_LIMIT

CONFIG_CONTENT: str = f'''# オラクル（総当たり判定）の評価回数の上限
# 代入の数 (h+d-1)^n がこれを超えると終了コード3で止まる。
# 例：budget = {ORACLE_BUDGET}
budget = {ORACLE_BUDGET}
# 自己検査 (selftest) で調べる h+d の上限
# 例：max_sum = {SWEEP_MAX_SUM}
max_sum = {SWEEP_MAX_SUM}
# 自己検査で使う文字の数（x, y, x1, ...）
# 例：max_letters = {SWEEP_MAX_LETTERS}
max_letters = {SWEEP_MAX_LETTERS}
# 自己検査で使う語の長さの上限
# 例：max_length = {SWEEP_MAX_LENGTH}
max_length = {SWEEP_MAX_LENGTH}
# 読み取る語の長さの上限（指数を展開した文字数）
# 証明書ファイルの語や h+d がこれを超えると書式の誤り（終了コード2）になる。
# 例：max_word_length = {WORD_LENGTH_LIMIT}
max_word_length = {WORD_LENGTH_LIMIT}
# 出力形式
# - "text"は、人が読むための出力。
# - "json"は、1つの JSON オブジェクトの出力。
# 例：format = "{OUTPUT_FORMAT}"
format = "{OUTPUT_FORMAT}"
# ログレベル
# "trace", "debug", "info", "warning", "error", "critical" のいずれか。
# 例：log_level = "{LOG_LEVEL}"
log_level = "{LOG_LEVEL}"'''


def setup_folders() -> None:
    """
    フォルダを準備する。
    """
    Path(CONFIG_FILENAME).parent.mkdir(exist_ok=True)


def setup_files() -> None:
    """
    ファイルを準備する。
    """
    Path(CONFIG_FILENAME).write_text(CONFIG_CONTENT + "\n", encoding="utf-8")


def main() -> None:
    """
    必要なフォルダとファイルを準備する。
    """
    setup_folders()
    setup_files()


if __name__ == "__main__":
    print(__file__)
    main()
