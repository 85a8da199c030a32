#monoid_shift/cli.py
# -*- coding: utf-8 -*-
"""
命令行入口：每个分析对应一个子命令，--json 输出是稳定的机器可读格式。

退出码：0 成功或结果为正；1 分析结果为负；2 解析、校验或参数错误；3 内部错误。
"""
import argparse
import json
import logging
import os
import sys
import traceback
from typing import Callable, Dict, List, Optional, Tuple

from config_manager import resolve_settings, save_config
from utils import save_data_to_json

from .presentation import (
    Presentation, PresentationError, ValidationReport, catalog, catalog_names,
    load_presentation, serialize_presentation,
)
from .reconstruction import ReconstructionError, ScaleTooSmallError, certify_isomorphism, reconstruct_ball
from .rewrite import RewriteError, RewritingSystem, format_word, parse_word
from .structure import StructureAnalyzer, StructureError
from .subshift import PropertyACheckParams, Subshift, SubshiftError

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_INPUT = 2
EXIT_INTERNAL = 3

INPUT_ERRORS = (PresentationError, RewriteError, StructureError, SubshiftError, ReconstructionError)

Result = Tuple[int, Dict[str, object], str]


class InputFailure(Exception):
    """携带校验报告的输入失败"""

    def __init__(self, payload: Dict[str, object], text: str):
        super().__init__(text)
        self.payload = payload
        self.text = text


def resolve_presentation(source: str) -> Presentation:
    """source 是 .smp 文件路径；文件不存在而名称在内置目录中时取目录中的展示"""
    if os.path.exists(source):
        loaded = load_presentation(source)
    elif source in catalog_names():
        loaded = catalog(source)
    else:
        raise PresentationError(f"找不到展示文件 {source}，也不是内置名称 ({', '.join(catalog_names())})")
    if isinstance(loaded, ValidationReport):
        lines = [f"{issue.location}: {issue.kind}: {issue.detail}" for issue in loaded.issues]
        raise InputFailure({"presentation": source, **loaded.to_dict()}, "\n".join(lines))
    return loaded


def _pick(value, default):
    return default if value is None else value


def cmd_validate(args, settings) -> Result:
    presentation = resolve_presentation(args.presentation)
    payload = {"presentation": presentation.name, "ok": True, "issues": [],
               "left": list(presentation.left), "right": list(presentation.right)}
    return EXIT_OK, payload, f"ok: {presentation.name} (|ℒ|={len(presentation.left)}, |ℛ|={len(presentation.right)})"


def cmd_catalog(args, settings) -> Result:
    presentation = resolve_presentation(args.presentation)
    text = serialize_presentation(presentation)
    return EXIT_OK, {"presentation": presentation.name, "text": text}, text.rstrip("\n")


def cmd_reduce(args, settings) -> Result:
    presentation = resolve_presentation(args.presentation)
    form = RewritingSystem(presentation).reduce(parse_word(args.word))
    payload = {"presentation": presentation.name, "word": args.word, "normal_form": form.serialize()}
    return EXIT_OK, payload, form.serialize()


def cmd_analyze(args, settings) -> Result:
    presentation = resolve_presentation(args.presentation)
    analysis = settings["analysis"]
    report = StructureAnalyzer(presentation).check_theorem_hypotheses(
        max_len=_pick(args.max_len, analysis["max_len"]),
        samples=_pick(args.samples, analysis["samples"]),
        seed=_pick(args.seed, analysis["seed"]),
        threads=args.threads,
    )
    flags = ["factorization_ok", "unit_intersection_ok", "right_inverses_ok", "left_inverses_ok",
             "plus_map_injective", "minus_map_injective"]
    lines = [f"{flag}: {getattr(report, flag)}" for flag in flags]
    lines += [f"bound {name}: measured {b['measured']} / claimed {b['claimed']}" for name, b in report.bounds.items()]
    lines += [f"violation: {v}" for v in report.violations]
    return (EXIT_OK if report.ok else EXIT_NEGATIVE), report.to_dict(), "\n".join(lines)


def cmd_language(args, settings) -> Result:
    presentation = resolve_presentation(args.presentation)
    subshift = Subshift(presentation, threads=args.threads)
    counts = subshift.language_counts(args.max_n)
    payload: Dict[str, object] = {"presentation": presentation.name, "counts": [[n, c] for n, c in counts]}
    lines = [f"{n}\t{c}" for n, c in counts]
    if args.enumerate:
        words = {str(n): [format_word(w) for w in subshift.language_enumerate(n)] for n in range(args.max_n + 1)}
        payload["words"] = words
        for n in range(args.max_n + 1):
            lines.append(f"# n={n}")
            lines.extend(words[str(n)])
    return EXIT_OK, payload, "\n".join(lines)


def cmd_contexts(args, settings) -> Result:
    presentation = resolve_presentation(args.presentation)
    subshift = Subshift(presentation, threads=args.threads)
    word = parse_word(args.word)
    probe = _pick(args.probe, settings["windows"]["probe"])
    context = subshift.finite_context(word, probe)
    pairs = [[format_word(u), format_word(v)] for u, v in context.pairs()]
    signature = subshift.context_signature(word)
    payload = {"presentation": presentation.name, "word": args.word, "probe": probe,
               "signature": signature.serialize(), "count": len(pairs), "pairs": pairs}
    lines = [f"signature: {signature.serialize()}", f"pairs: {len(pairs)}"]
    lines += [f"({u}, {v})" for u, v in pairs]
    return EXIT_OK, payload, "\n".join(lines)


def cmd_property_a(args, settings) -> Result:
    presentation = resolve_presentation(args.presentation)
    defaults = settings["property_a"]
    params = PropertyACheckParams(
        n=_pick(args.n, defaults["n"]),
        margin=_pick(args.margin, defaults["margin"]),
        max_len=_pick(args.max_len, defaults["max_len"]),
        probe=_pick(args.probe, defaults["probe"]),
    )
    report = Subshift(presentation, threads=args.threads).property_a_check(params)
    lines = [f"params: {params.to_dict()}", f"words checked: {report.words_checked}",
             f"violations: {report.violation_count}", report.note]
    lines += [f"  {format_word(a)}  ~  {format_word(b)}" for a, b in report.violations]
    return (EXIT_OK if report.ok else EXIT_NEGATIVE), report.to_dict(), "\n".join(lines)


def cmd_reconstruct(args, settings) -> Result:
    presentation = resolve_presentation(args.presentation)
    defaults = settings["reconstruct"]
    word_len = _pick(args.word_len, defaults["word_len"])
    probe = _pick(args.probe, defaults["probe"])
    subshift = Subshift(presentation, threads=args.threads)
    table = reconstruct_ball(subshift, word_len, probe, strict=args.strict)
    certificate = certify_isomorphism(subshift, table)
    payload = certificate.to_dict()
    payload["table"] = {"classes": len(table.classes), "well_defined": table.well_defined,
                        "diagnostics": [d.to_dict() for d in table.diagnostics]}
    lines = [f"scale: word_len={word_len}, probe={probe}", f"classes: {len(table.classes)}",
             f"homomorphism_ok: {certificate.homomorphism_ok}", f"injective_ok: {certificate.injective_ok}",
             f"surjective_at_scale_ok: {certificate.surjective_at_scale_ok}"]
    lines += [f"failure: {f}" for f in certificate.failures]
    return (EXIT_OK if certificate.valid else EXIT_NEGATIVE), payload, "\n".join(lines)


def cmd_periodic(args, settings) -> Result:
    presentation = resolve_presentation(args.presentation)
    subshift = Subshift(presentation, threads=args.threads)
    probe = _pick(args.probe, settings["windows"]["probe"])
    n = _pick(args.n, settings["windows"]["n"])
    summary = subshift.periodic_classes_connected(args.max_period, n, probe)
    lines = [f"cycles: {', '.join(summary['cycles']) or '-'}", f"single class: {summary['single_class']}"]
    lines += [f"failure: {f['from']} -> {f['to']}: {f['reason']}" for f in summary["failures"]]
    return (EXIT_OK if summary["single_class"] else EXIT_NEGATIVE), summary, "\n".join(lines)


def cmd_emit_dot(args, settings) -> Result:
    analyzer = StructureAnalyzer(resolve_presentation(args.presentation))
    right, mirror = analyzer.right_automaton.to_dot(), analyzer.left_automaton.to_dot()
    return EXIT_OK, {"right": right, "mirror": mirror}, right + mirror


COMMANDS: Dict[str, Tuple[Callable, str]] = {
    "validate": (cmd_validate, "解析并校验展示文件"),
    "catalog": (cmd_catalog, "以 .smp 格式输出展示 (可用内置名称)"),
    "reduce": (cmd_reduce, "把单词归约为范式"),
    "analyze": (cmd_analyze, "检查结构条件并报告见证长度"),
    "language": (cmd_language, "可容许单词计数与枚举"),
    "contexts": (cmd_contexts, "单词的有限探针上下文"),
    "property-a": (cmd_property_a, "有界 (a,n,H) 性质检查"),
    "reconstruct": (cmd_reconstruct, "有界尺度上重建幺半群并给出同构证书"),
    "periodic": (cmd_periodic, "周期点及其连接检查"),
    "emit-dot": (cmd_emit_dot, "以 DOT 格式输出两个碰撞自动机"),
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("presentation", help=".smp 文件路径或内置名称")
    common.add_argument("--json", action="store_true", help="输出 JSON")
    common.add_argument("--output", help="同时把 JSON 结果写入文件")
    common.add_argument("--config", default="config.json", help="配置文件路径")
    common.add_argument("--write-config", action="store_true", dest="write_config",
                        help="把合并后的配置写回 --config 指向的文件")
    common.add_argument("--threads", type=int, default=None, help="并发线程数，默认取配置")
    common.add_argument("--verbose", action="store_true", help="输出 INFO 级日志")

    parser = argparse.ArgumentParser(prog="monoid-shift", description="碰撞表幺半群与其子移位的分析工具")
    subparsers = parser.add_subparsers(dest="command", required=True)
    sub = {name: subparsers.add_parser(name, parents=[common], help=help_text)
           for name, (_, help_text) in COMMANDS.items()}

    sub["reduce"].add_argument("--word", required=True, help="以空白分隔的生成元")
    sub["analyze"].add_argument("--max-len", type=int, dest="max_len")
    sub["analyze"].add_argument("--samples", type=int)
    sub["analyze"].add_argument("--seed", type=int)
    sub["language"].add_argument("--max-n", type=int, dest="max_n", required=True)
    sub["language"].add_argument("--enumerate", action="store_true")
    sub["contexts"].add_argument("--word", required=True)
    sub["contexts"].add_argument("--probe", type=int)
    sub["property-a"].add_argument("--n", type=int)
    sub["property-a"].add_argument("--margin", type=int)
    sub["property-a"].add_argument("--max-len", type=int, dest="max_len")
    sub["property-a"].add_argument("--probe", type=int)
    sub["reconstruct"].add_argument("--word-len", type=int, dest="word_len")
    sub["reconstruct"].add_argument("--probe", type=int)
    sub["reconstruct"].add_argument("--strict", action="store_true", help="类乘积不良定义时直接失败")
    sub["periodic"].add_argument("--max-period", type=int, dest="max_period", default=4)
    sub["periodic"].add_argument("--n", type=int)
    sub["periodic"].add_argument("--probe", type=int)
    return parser


def _emit(args, payload: Dict[str, object], text: str):
    if args.json:
        print(json.dumps(payload, ensure_ascii=False, indent=2, sort_keys=True))
    elif text:
        print(text)
    if args.output:
        save_data_to_json(payload, args.output)


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_INPUT if e.code else EXIT_OK
    if args.verbose:
        logging.getLogger().setLevel(logging.INFO)
    settings = resolve_settings(args.config)
    if args.write_config and not save_config(settings, args.config):
        return EXIT_INPUT
    args.threads = _pick(args.threads, settings["threads"])
    handler = COMMANDS[args.command][0]
    try:
        code, payload, text = handler(args, settings)
    except InputFailure as e:
        _emit(args, e.payload, e.text)
        return EXIT_INPUT
    except ScaleTooSmallError as e:
        _emit(args, {"error": str(e), "diagnostic": e.diagnostic.to_dict()}, f"scale too small: {e}")
        return EXIT_NEGATIVE
    except INPUT_ERRORS as e:
        _emit(args, {"error": str(e), "type": type(e).__name__}, f"error: {e}")
        return EXIT_INPUT
    except Exception as e:
        logging.error(f"内部错误: {e}\n{traceback.format_exc()}")
        print(f"internal error: {e}", file=sys.stderr)
        return EXIT_INTERNAL
    _emit(args, payload, text)
    return code
