#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
qdfsim コマンドラインエントリポイント

サブコマンド:
    solve        行列ファイルと y を読み込みパイプラインを 1 回実行
    sweep        合成問題の (N, κ, ε, profile, seed) 直積を実行し CSV を出力
    hcurve       γ ごとの |h| vs |λ| 曲線を CSV で出力
    bench-signs  spectral shift と WZP 比較法の符号復元ベンチマーク
"""

import os
import sys
import logging
import argparse
from typing import List, Optional

try:
    from cli.commands import COMMAND_TABLE, exit_code_for, run_command
    from cli.manifest import RunManifest
    from config.settings import load_settings
except ImportError:
    sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))
    from cli.commands import COMMAND_TABLE, exit_code_for, run_command
    from cli.manifest import RunManifest
    from config.settings import load_settings

logger = logging.getLogger(__name__)


def _add_pipeline_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--epsilon", type=float, help="目標誤差 ε (0 < ε ≤ 4/7)")
    parser.add_argument("--c0", type=float, help="回転定数 C0 (0 < C0 < 2)")
    parser.add_argument("--backend", choices=["ideal", "circuit"], help="QSVE バックエンド")
    parser.add_argument("--postselect", choices=["exact", "bernoulli", "amplify"], help="ポストセレクションのモード")
    parser.add_argument("--seed", type=int, help="乱数シード")


def parse_args(argv: Optional[List[str]] = None) -> argparse.Namespace:
    """コマンドライン引数をパース"""
    # 共通オプション
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", type=str, default=None, help="settings.yaml のパス")
    common.add_argument("--log-level", type=str, default=None,
                        choices=["DEBUG", "INFO", "WARNING", "ERROR"], help="ログレベル")
    common.add_argument("--out", type=str, default=None, help="出力ディレクトリ")

    parser = argparse.ArgumentParser(description="Quantum data-fitting simulator (classical)")

    subparsers = parser.add_subparsers(dest="command", required=True, help="実行するコマンド")

    solve_parser = subparsers.add_parser("solve", parents=[common], help="1 問題を解いて report.json を出力")
    solve_parser.add_argument("--matrix", type=str, help="行列ファイル (.csv / .json / .npy)")
    solve_parser.add_argument("--y", type=str, help="ベクトルファイル (.csv / .json / .npy)")
    solve_parser.add_argument("--complex-columns", action="store_true",
                              help="CSV を (re, im) の列ペアとして読む")
    solve_parser.add_argument("--kappa", type=float, help="条件数 (上界でも可)")
    solve_parser.add_argument("--gamma", type=float, help="γ を手動指定 (manual モード)")
    _add_pipeline_args(solve_parser)

    sweep_parser = subparsers.add_parser("sweep", parents=[common], help="合成問題のスイープ")
    sweep_parser.add_argument("--N", type=int, nargs="+", default=None, help="次元 N の一覧")
    sweep_parser.add_argument("--kappas", type=float, nargs="+", default=None, help="κ の一覧")
    sweep_parser.add_argument("--epsilons", type=float, nargs="+", default=None, help="ε の一覧")
    sweep_parser.add_argument("--seeds", type=int, nargs="+", default=None, help="シードの一覧")
    sweep_parser.add_argument("--profile", type=str, nargs="+", default=None,
                              help="固有値符号プロファイル (all-positive, all-negative, mixed, zero-mean)")
    sweep_parser.add_argument("--workers", type=int, default=None, help="並列スレッド数")
    sweep_parser.add_argument("--db-path", type=str, default=None, help="結果を保存する DuckDB ファイル")
    sweep_parser.add_argument("--store", action="store_true",
                              help="settings.yaml の database.path (または DB_PATH) に結果を保存")
    _add_pipeline_args(sweep_parser)

    hcurve_parser = subparsers.add_parser("hcurve", parents=[common], help="|h| vs |λ| 曲線")
    hcurve_parser.add_argument("--gammas", type=float, nargs="+", default=None, help="γ の一覧")
    hcurve_parser.add_argument("--kappa", type=float, help="条件数 κ")
    hcurve_parser.add_argument("--spectral-norm", type=float, default=None, help="‖F‖* (既定 1.0)")
    hcurve_parser.add_argument("--n-points", type=int, default=None, help="|λ| グリッドの点数")
    hcurve_parser.add_argument("--c0", type=float, help="回転定数 C0")

    bench_parser = subparsers.add_parser("bench-signs", parents=[common], help="符号復元の比較ベンチマーク")
    bench_parser.add_argument("--kappas", type=float, nargs="+", default=[2.0, 10.0, 100.0], help="κ の一覧")
    bench_parser.add_argument("--N", type=int, nargs="+", default=None, help="次元 N (先頭の値を使用)")
    bench_parser.add_argument("--delta", type=float, default=None, help="QSVE 精度 δ")
    bench_parser.add_argument("--profile", type=str, nargs="+", default=None, help="固有値符号プロファイル")
    bench_parser.add_argument("--backend", choices=["ideal", "circuit"], help="QSVE バックエンド")
    bench_parser.add_argument("--seed", type=int, help="乱数シード")

    return parser.parse_args(argv)


def main(argv: Optional[List[str]] = None) -> int:
    """メイン関数"""
    args = parse_args(argv)

    # ロギング設定
    logging.basicConfig(
        level=getattr(logging, args.log_level or "INFO"),
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
    )

    try:
        settings = load_settings(args.config)
        if args.log_level is None:
            logging.getLogger().setLevel(str(settings["logging"]["level"]).upper())
        manifest = RunManifest.from_args(args, settings)
    except Exception as e:
        code = exit_code_for(e)
        logger.error(f"Invalid configuration: {e}")
        print(f"[ERROR] {e}")
        return code

    logger.info(f"Running command '{manifest.command}' (out={manifest.out})")
    return run_command(COMMAND_TABLE[manifest.command], manifest)


if __name__ == "__main__":
    sys.exit(main())
