"""
有限巡回半群 C_{h,d} の恒等式を判定し、恒等式基底から導出証明を作るパッケージ。

``kivy.logger`` を取り込む前に ``Kivy`` の環境変数を設定しておく。
"""

import os

# コマンドライン引数を Kivy に解析させない。（解析されると sys.exit(2) になる）
os.environ.setdefault("KIVY_NO_ARGS", "1")
# ~/.kivy/config.ini を読み書きしない。
os.environ.setdefault("KIVY_NO_CONFIG", "1")
# ログファイルは作らない。コンソール（標準エラー出力）のみ。
os.environ.setdefault("KIVY_NO_FILELOG", "1")

