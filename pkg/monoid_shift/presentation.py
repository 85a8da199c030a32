#monoid_shift/presentation.py
# -*- coding: utf-8 -*-
"""
碰撞表展示 (presentation) 的数据结构、解析、序列化与内置目录

文本格式：
    # 注释行
    left: λ λ′
    right: ρ ρ′
    λ ρ = 1
    λ ρ′ = 0
右侧取值为 0、1 或任一已声明的生成元。
"""
import logging
import os
import re
from dataclasses import asdict, dataclass, field
from typing import Callable, Dict, List, Optional, Tuple, Union

from utils import read_file
from .common import shortlex_key

LEFT = "L"
RIGHT = "R"
RESERVED_SYMBOLS = ("0", "1")

_DECLARATION_RE = re.compile(r"^(left|right)\s*:(.*)$")
_RULE_RE = re.compile(r"^(\S+)\s+(\S+)\s*=\s*(\S+)$")


class PresentationError(ValueError):
    """展示不合法或目录中不存在时抛出"""


@dataclass(frozen=True)
class GeneratorId:
    """生成元：符号及其所在侧 (L / R)"""
    symbol: str
    side: str


@dataclass(frozen=True)
class Outcome:
    """碰撞结果：zero / one / gen(symbol)"""
    kind: str
    symbol: Optional[str] = None

    @classmethod
    def zero(cls) -> "Outcome":
        return cls("zero")

    @classmethod
    def one(cls) -> "Outcome":
        return cls("one")

    @classmethod
    def gen(cls, symbol: str) -> "Outcome":
        return cls("gen", symbol)

    @classmethod
    def from_token(cls, token: str) -> "Outcome":
        if token == "0":
            return cls.zero()
        if token == "1":
            return cls.one()
        return cls.gen(token)

    @property
    def is_zero(self) -> bool:
        return self.kind == "zero"

    @property
    def is_one(self) -> bool:
        return self.kind == "one"

    @property
    def is_gen(self) -> bool:
        return self.kind == "gen"

    def to_token(self) -> str:
        if self.is_zero:
            return "0"
        if self.is_one:
            return "1"
        return self.symbol


@dataclass
class ValidationIssue:
    """单条校验问题"""
    kind: str        # missing-pair / duplicate-rule / unknown-symbol / empty-side / reserved-symbol / duplicate-symbol / syntax
    location: int    # 行号，从 1 开始；0 表示文件级问题
    detail: str

    def to_dict(self) -> Dict[str, object]:
        return asdict(self)


@dataclass
class ValidationReport:
    """解析校验报告，issues 为空即合法"""
    issues: List[ValidationIssue] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.issues

    def add(self, kind: str, location: int, detail: str):
        self.issues.append(ValidationIssue(kind, location, detail))

    def kinds(self) -> List[str]:
        return [issue.kind for issue in self.issues]

    def to_dict(self) -> Dict[str, object]:
        return {"ok": self.ok, "issues": [issue.to_dict() for issue in self.issues]}


@dataclass(frozen=True)
class Presentation:
    """
    碰撞表展示 Γ = (ℒ, ℛ, T)。
    Args:
        left: ℒ 的生成元，按声明顺序
        right: ℛ 的生成元，按声明顺序
        table: (λ, ρ) -> Outcome，必须覆盖 ℒ×ℛ 全部组合
        name: 标签，不参与相等比较
    """
    left: Tuple[str, ...]
    right: Tuple[str, ...]
    table: Dict[Tuple[str, str], Outcome]
    name: str = field(default="", compare=False)
    _order: Dict[str, int] = field(default_factory=dict, init=False, repr=False, compare=False)

    def __post_init__(self):
        problems = _structural_problems(self.left, self.right, self.table)
        if problems:
            raise PresentationError("; ".join(problems))
        object.__setattr__(self, "left", tuple(self.left))
        object.__setattr__(self, "right", tuple(self.right))
        object.__setattr__(self, "_order", {symbol: index for index, symbol in enumerate(self.left + self.right)})

    def __hash__(self) -> int:
        return hash((self.left, self.right, tuple(self.table[(l, r)] for l in self.left for r in self.right)))

    @property
    def generators(self) -> Tuple[str, ...]:
        """所有生成元：先 ℒ 后 ℛ，这是全部搜索的并列打破顺序"""
        return self.left + self.right

    def generator_ids(self) -> List[GeneratorId]:
        return [GeneratorId(symbol, LEFT) for symbol in self.left] + [GeneratorId(symbol, RIGHT) for symbol in self.right]

    def is_declared(self, symbol: str) -> bool:
        return symbol in self._order

    def side_of(self, symbol: str) -> str:
        if not self.is_declared(symbol):
            raise PresentationError(f"未声明的生成元: {symbol}")
        return LEFT if self._order[symbol] < len(self.left) else RIGHT

    def is_left(self, symbol: str) -> bool:
        return self.side_of(symbol) == LEFT

    def outcome(self, left_symbol: str, right_symbol: str) -> Outcome:
        try:
            return self.table[(left_symbol, right_symbol)]
        except KeyError:
            raise PresentationError(f"({left_symbol}, {right_symbol}) 不是 ℒ×ℛ 中的组合") from None

    def order_key(self) -> Callable[[Tuple[str, ...]], Tuple[int, Tuple[int, ...]]]:
        """按长度、再按声明顺序字典序比较单词 (shortlex)"""
        return shortlex_key(self._order)

    def to_dict(self) -> Dict[str, object]:
        return {
            "name": self.name,
            "left": list(self.left),
            "right": list(self.right),
            "table": [[l, r, self.table[(l, r)].to_token()] for l in self.left for r in self.right],
        }


def _structural_problems(left, right, table) -> List[str]:
    problems = []
    if not left or not right:
        problems.append("ℒ 与 ℛ 都必须非空")
    declared = set(left) | set(right)
    if len(declared) != len(left) + len(right):
        problems.append("生成元重复声明或两侧相交")
    for symbol in declared:
        if symbol in RESERVED_SYMBOLS or not symbol or re.search(r"\s", symbol):
            problems.append(f"非法生成元符号: {symbol!r}")
    for l in left:
        for r in right:
            outcome = table.get((l, r))
            if outcome is None:
                problems.append(f"缺少 ({l}, {r}) 的规则")
            elif outcome.is_gen and outcome.symbol not in declared:
                problems.append(f"({l}, {r}) 的结果 {outcome.symbol} 未声明")
    if len(table) != len(left) * len(right):
        problems.append("规则表包含 ℒ×ℛ 之外的组合")
    return problems


def parse_presentation(text: str, name: str = "") -> Union[Presentation, ValidationReport]:
    """解析 .smp 文本；存在任何问题时返回列出全部问题的 ValidationReport"""
    report = ValidationReport()
    declarations: Dict[str, Tuple[List[str], int]] = {}
    rules: List[Tuple[str, str, str, int]] = []

    for line_number, raw_line in enumerate(text.splitlines(), start=1):
        line = raw_line.strip()
        if not line or line.startswith("#"):
            continue
        declaration = _DECLARATION_RE.match(line)
        if declaration:
            side, symbols = declaration.group(1), declaration.group(2).split()
            if side in declarations:
                report.add("syntax", line_number, f"重复的 {side}: 声明")
                continue
            declarations[side] = (symbols, line_number)
            continue
        rule = _RULE_RE.match(line)
        if rule:
            rules.append((rule.group(1), rule.group(2), rule.group(3), line_number))
            continue
        report.add("syntax", line_number, f"无法解析的行: {line}")

    left, left_line = declarations.get("left", ([], 0))
    right, right_line = declarations.get("right", ([], 0))
    if not left:
        report.add("empty-side", left_line, "ℒ 为空或缺少 left: 声明")
    if not right:
        report.add("empty-side", right_line, "ℛ 为空或缺少 right: 声明")

    seen_symbols = set()
    for symbols, line_number in ((left, left_line), (right, right_line)):
        for symbol in symbols:
            if symbol in RESERVED_SYMBOLS:
                report.add("reserved-symbol", line_number, f"{symbol} 是保留符号")
            elif symbol in seen_symbols:
                report.add("duplicate-symbol", line_number, f"{symbol} 重复声明")
            seen_symbols.add(symbol)

    left_set, right_set = set(left), set(right)
    table: Dict[Tuple[str, str], Outcome] = {}
    for l, r, rhs, line_number in rules:
        if l not in left_set:
            report.add("unknown-symbol", line_number, f"{l} 不是已声明的 ℒ 生成元")
            continue
        if r not in right_set:
            report.add("unknown-symbol", line_number, f"{r} 不是已声明的 ℛ 生成元")
            continue
        if rhs not in RESERVED_SYMBOLS and rhs not in seen_symbols:
            report.add("unknown-symbol", line_number, f"结果 {rhs} 未声明")
            continue
        if (l, r) in table:
            report.add("duplicate-rule", line_number, f"({l}, {r}) 已有规则")
            continue
        table[(l, r)] = Outcome.from_token(rhs)

    for l in left:
        for r in right:
            if (l, r) not in table and l not in RESERVED_SYMBOLS and r not in RESERVED_SYMBOLS:
                report.add("missing-pair", 0, f"缺少 ({l}, {r}) 的规则")

    if not report.ok:
        logging.warning(f"展示 {name or '<text>'} 校验失败，共{len(report.issues)}个问题")
        return report
    return Presentation(tuple(left), tuple(right), table, name)


def serialize_presentation(presentation: Presentation) -> str:
    """序列化为 .smp 文本，与 parse_presentation 互逆"""
    lines = []
    if presentation.name:
        lines.append(f"# {presentation.name}")
    lines.append("left: " + " ".join(presentation.left))
    lines.append("right: " + " ".join(presentation.right))
    for l in presentation.left:
        for r in presentation.right:
            lines.append(f"{l} {r} = {presentation.table[(l, r)].to_token()}")
    return "\n".join(lines) + "\n"


def load_presentation(path: str) -> Union[Presentation, ValidationReport]:
    """从文件读取展示，文件名 (不含扩展名) 作为标签"""
    if not os.path.exists(path):
        raise PresentationError(f"文件不存在: {path}")
    name = os.path.splitext(os.path.basename(path))[0]
    return parse_presentation(read_file(path), name=name)


def from_rules(left, right, rules: Dict[Tuple[str, str], str], name: str = "") -> Presentation:
    """以 (λ, ρ) -> "0"/"1"/符号 的字典构造展示"""
    table = {pair: Outcome.from_token(token) for pair, token in rules.items()}
    return Presentation(tuple(left), tuple(right), table, name)


def _rows(left, right, rows: List[str]) -> Dict[Tuple[str, str], str]:
    """把逐行的表格展开为规则字典，每行是该 λ 对各 ρ 的结果"""
    rules = {}
    for l, row in zip(left, rows):
        for r, token in zip(right, row.split()):
            rules[(l, r)] = token
    return rules


def _polycyclic2() -> Presentation:
    """二元多循环幺半群 P₂：λρ = λ′ρ′ = 1，λρ′ = λ′ρ = 0"""
    left, right = ("λ", "λ′"), ("ρ", "ρ′")
    return from_rules(left, right, _rows(left, right, [
        "1 0",
        "0 1",
    ]), "polycyclic2")


def _example2() -> Presentation:
    """λ 对 ρ、ρ′ 都为 1；λ′ρ′ = λ″ρ″ = 1，其余为 0"""
    left, right = ("λ", "λ′", "λ″"), ("ρ", "ρ′", "ρ″")
    return from_rules(left, right, _rows(left, right, [
        "1 1 0",
        "0 1 0",
        "0 0 1",
    ]), "example2")


def _example3() -> Presentation:
    """
    λρ = λ′ρ = λ′ρ′ = λ″ρ″ = 1，其余为 0。
    λ″ρ′ 未给定，取 0，使每行每列都含 0。
    """
    left, right = ("λ", "λ′", "λ″"), ("ρ", "ρ′", "ρ″")
    return from_rules(left, right, _rows(left, right, [
        "1 0 0",
        "1 1 0",
        "0 0 1",
    ]), "example3")


def _example4() -> Presentation:
    """
    λρ = λ′ρ′ = λ″ρ″ = 1，λρ′ = λ，λ′ρ″ = λ′，λ″ρ = λ″，其余为 0。
    原表对 (λ″, ρ′) 给出 0 与 λ″ 两个结果，λ″ρ 则没有给出；保留 λ″ρ′ = 0，
    第三条单生成元规则读作唯一空缺的 λ″ρ = λ″。
    """
    left, right = ("λ", "λ′", "λ″"), ("ρ", "ρ′", "ρ″")
    return from_rules(left, right, _rows(left, right, [
        "1 λ 0",
        "0 1 λ′",
        "λ″ 0 1",
    ]), "example4")


_CATALOG: Dict[str, Tuple[Callable[[], Presentation], str]] = {
    "polycyclic2": (_polycyclic2, "published"),
    "example2": (_example2, "published"),
    "example3": (_example3, "reconstructed"),
    "example4": (_example4, "reconstructed"),
}


def catalog_names() -> List[str]:
    return list(_CATALOG)


def catalog(name: str) -> Presentation:
    """按名称取内置展示"""
    if name not in _CATALOG:
        raise PresentationError(f"未知的目录名称 {name!r}，可用: {', '.join(_CATALOG)}")
    return _CATALOG[name][0]()


def catalog_status(name: str) -> str:
    """"published" 表示表格完整给出，"reconstructed" 表示补全过缺格"""
    if name not in _CATALOG:
        raise PresentationError(f"未知的目录名称 {name!r}，可用: {', '.join(_CATALOG)}")
    return _CATALOG[name][1]
