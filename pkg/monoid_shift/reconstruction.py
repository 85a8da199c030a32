#monoid_shift/reconstruction.py
# -*- coding: utf-8 -*-
"""
从符号数据在有限尺度上重建关联幺半群 M_{C(Γ)}，并与展示给出的幺半群比对。
类以有限上下文为键而不是以 reduce 值为键，因此比对是两边独立计算结果的比较。
"""
import json
import logging
from dataclasses import dataclass, field
from itertools import product
from typing import Dict, List, Optional, Tuple

from .common import parallel_map
from .rewrite import ZERO, NormalForm, RewriteError, Word, format_word
from .subshift import FiniteContext, Subshift, YPointDescription

ZERO_CLASS = -1


class ReconstructionError(ValueError):
    """Y 点描述不规范或不属于当前展示时抛出"""


class ScaleTooSmallError(ReconstructionError):
    """类乘积在当前尺度上不是良定义的"""

    def __init__(self, message: str, diagnostic: "ProductDiagnostic"):
        super().__init__(message)
        self.diagnostic = diagnostic


@dataclass
class ProductDiagnostic:
    """member 与 representative 同类，但与 partner 相乘后落入不同的类"""
    member: Word
    representative: Word
    partner: Word
    side: str        # "left": member·partner；"right": partner·member

    def to_dict(self) -> Dict[str, str]:
        return {"member": format_word(self.member), "representative": format_word(self.representative),
                "partner": format_word(self.partner), "side": self.side}


@dataclass
class ContextClass:
    index: int
    representative: Word
    members: List[Word] = field(default_factory=list)
    context: Optional[FiniteContext] = field(default=None, repr=False, compare=False)

    def to_dict(self) -> Dict[str, object]:
        return {"index": self.index, "representative": format_word(self.representative),
                "members": [format_word(word) for word in self.members]}


@dataclass
class ContextClassTable:
    """长度 ≤ word_len 的可容许单词按有限上下文划分的类，以及类之间的部分乘法表"""
    presentation: str
    word_len: int
    probe: int
    classes: List[ContextClass] = field(default_factory=list)
    product: Dict[Tuple[int, int], int] = field(default_factory=dict)
    diagnostics: List[ProductDiagnostic] = field(default_factory=list)
    word_index: Dict[Word, int] = field(default_factory=dict, repr=False)

    @property
    def well_defined(self) -> bool:
        return not self.diagnostics

    def class_of(self, word) -> int:
        try:
            return self.word_index[tuple(word)]
        except KeyError:
            raise ReconstructionError(f"{format_word(tuple(word))} 不在尺度 {self.word_len} 的球内或不可容许") from None

    def multiply(self, i: int, j: int) -> Optional[int]:
        """类乘积；ZERO_CLASS 表示零，None 表示超出表的范围"""
        return self.product.get((i, j))

    def to_dict(self) -> Dict[str, object]:
        return {
            "presentation": self.presentation,
            "scale": {"word_len": self.word_len, "probe": self.probe},
            "classes": [c.to_dict() for c in self.classes],
            "product": [[i, j, k] for (i, j), k in sorted(self.product.items())],
            "well_defined": self.well_defined,
            "diagnostics": [d.to_dict() for d in self.diagnostics],
        }


@dataclass
class IsoCertificate:
    """类 ↦ reduce(代表) 的同构证书；三个标志都为真时有效"""
    presentation: str
    word_len: int
    probe: int
    mapping: Dict[str, str]
    homomorphism_ok: bool
    injective_ok: bool
    surjective_at_scale_ok: bool
    failures: List[str] = field(default_factory=list)

    @property
    def valid(self) -> bool:
        return self.homomorphism_ok and self.injective_ok and self.surjective_at_scale_ok

    def to_dict(self) -> Dict[str, object]:
        return {
            "presentation": self.presentation,
            "scale": {"word_len": self.word_len, "probe": self.probe},
            "valid": self.valid,
            "homomorphism_ok": self.homomorphism_ok,
            "injective_ok": self.injective_ok,
            "surjective_at_scale_ok": self.surjective_at_scale_ok,
            "classes": len(self.mapping),
            "mapping": self.mapping,
            "failures": list(self.failures),
        }

    def to_json(self, indent: int = 2) -> str:
        return json.dumps(self.to_dict(), ensure_ascii=False, indent=indent)


@dataclass
class QuotientReport:
    """范式按有限上下文分组；每组恰一个元素即投影 M -> [M] 在该尺度上单射"""
    presentation: str
    max_len: int
    probe: int
    elements: int
    classes: int
    collisions: List[Tuple[NormalForm, NormalForm]] = field(default_factory=list)

    @property
    def injective(self) -> bool:
        return not self.collisions

    def to_dict(self) -> Dict[str, object]:
        return {
            "presentation": self.presentation,
            "scale": {"max_len": self.max_len, "probe": self.probe},
            "elements": self.elements,
            "classes": self.classes,
            "injective": self.injective,
            "collisions": [[a.serialize(), b.serialize()] for a, b in self.collisions],
        }


def _require_canonical(subshift: Subshift, point: YPointDescription) -> NormalForm:
    rewriting = subshift.rewriting
    try:
        rewriting.check_word(point.core + point.left_cycle.letters + point.right_cycle.letters)
    except RewriteError as e:
        raise ReconstructionError(f"Y 点不属于当前展示: {e}") from e
    for label, cycle in (("左", point.left_cycle), ("右", point.right_cycle)):
        if not rewriting.reduce(cycle.letters).is_unit:
            raise ReconstructionError(f"{label}侧循环 {cycle.serialize()} 的乘积不是 𝟏，请先用 embed_in_Y 规范化")
    form = rewriting.reduce(point.core)
    if form.is_zero:
        raise ReconstructionError(f"核心 {format_word(point.core)} 不可容许")
    return form


def y_class_of(subshift: Subshift, point: YPointDescription) -> NormalForm:
    """规范描述两侧的周期乘积为 𝟏，所以类就是 reduce(core)"""
    return _require_canonical(subshift, point)


def symbolic_product(subshift: Subshift, first: YPointDescription,
                     second: YPointDescription) -> Tuple[NormalForm, Optional[YPointDescription]]:
    """
    返回 (元素, 定义点)。元素非零时定义点为 (单位循环, core₁ ++ 单位单词 ++ core₂, 单位循环)，
    其可容许性恰好等价于乘积非零；乘积为零时不返回定义点。
    """
    element = subshift.rewriting.multiply(y_class_of(subshift, first), y_class_of(subshift, second))
    if element.is_zero:
        return ZERO, None
    unit = subshift.periodic_point_from_unit()
    return element, YPointDescription(unit, first.core + unit.letters + second.core, unit)


def reconstruct_ball(subshift: Subshift, word_len: int, m: int, strict: bool = False) -> ContextClassTable:
    """
    把长度 ≤ word_len 的可容许单词按 finite_context(·, m) 划分，代表取 shortlex 最小者；
    对代表长度之和 ≤ word_len 的类对建立乘法表，并对全部成员检查良定义性。
    """
    if word_len < 0 or m < 0:
        raise ReconstructionError("word_len 与 m 必须非负")
    rewriting = subshift.rewriting
    words = subshift.admissible_words(word_len)
    contexts = parallel_map(lambda word: subshift.finite_context(word, m), words,
                            subshift.threads, label="单词上下文")

    table = ContextClassTable(subshift.presentation.name, word_len, m)
    by_context: Dict[FiniteContext, int] = {}
    for word, context in zip(words, contexts):
        index = by_context.get(context)
        if index is None:
            index = len(table.classes)
            by_context[context] = index
            table.classes.append(ContextClass(index, word, [], context))
        table.classes[index].members.append(word)
        table.word_index[word] = index
    logging.info(f"尺度 ({word_len}, {m}): {len(words)}个单词分为{len(table.classes)}个上下文类")

    def context_of(word: Word) -> Optional[FiniteContext]:
        form = rewriting.reduce(word)
        return None if form.is_zero else subshift.element_context(form, m)

    def record(diagnostic: ProductDiagnostic):
        if strict:
            raise ScaleTooSmallError(
                f"尺度 ({word_len}, {m}) 下类乘积不是良定义的: {diagnostic.to_dict()}", diagnostic)
        table.diagnostics.append(diagnostic)

    for a in table.classes:
        for b in table.classes:
            if len(a.representative) + len(b.representative) > word_len:
                continue
            expected = context_of(a.representative + b.representative)
            table.product[(a.index, b.index)] = ZERO_CLASS if expected is None else by_context[expected]
            for member in a.members[1:]:
                if context_of(member + b.representative) != expected:
                    record(ProductDiagnostic(member, a.representative, b.representative, "left"))
            for member in b.members[1:]:
                if context_of(a.representative + member) != expected:
                    record(ProductDiagnostic(member, b.representative, a.representative, "right"))

    if table.diagnostics:
        logging.warning(f"尺度 ({word_len}, {m}) 过小: {len(table.diagnostics)}处类乘积不一致")
    return table


def _normal_forms(subshift: Subshift, max_len: int) -> List[NormalForm]:
    """全部规范单词长度 ≤ max_len 的非零范式"""
    p = subshift.presentation
    forms = []
    for total in range(max_len + 1):
        for plus_len in range(total + 1):
            for plus in product(p.right, repeat=plus_len):
                for minus in product(p.left, repeat=total - plus_len):
                    forms.append(NormalForm.pair(plus, minus))
    return forms


def certify_isomorphism(subshift: Subshift, table: ContextClassTable) -> IsoCertificate:
    """只报告，不抛出；失败原因写入 failures"""
    rewriting = subshift.rewriting
    mapping = {c.index: rewriting.reduce(c.representative) for c in table.classes}
    failures: List[str] = []

    homomorphism_ok = table.well_defined
    if not homomorphism_ok:
        failures.append(f"类乘积有 {len(table.diagnostics)} 处不是良定义的")
    for (i, j), k in sorted(table.product.items()):
        expected = rewriting.multiply(mapping[i], mapping[j])
        actual = ZERO if k == ZERO_CLASS else mapping[k]
        if expected != actual:
            homomorphism_ok = False
            failures.append(f"[{format_word(table.classes[i].representative)}]·[{format_word(table.classes[j].representative)}]"
                            f" 映到 {actual}，应为 {expected}")

    injective_ok = True
    for c in table.classes:
        forms = {rewriting.reduce(member) for member in c.members}
        if len(forms) > 1:
            injective_ok = False
            failures.append(f"类 [{format_word(c.representative)}] 含有 {len(forms)} 个不同范式")
    if len(set(mapping.values())) != len(mapping):
        injective_ok = False
        failures.append("不同的类映到同一个范式")

    image = set(mapping.values())
    missing = [form for form in _normal_forms(subshift, table.word_len) if form not in image]
    surjective_ok = not missing
    if missing:
        failures.append(f"{len(missing)} 个范式未被覆盖，例如 {missing[0]}")

    certificate = IsoCertificate(
        presentation=table.presentation,
        word_len=table.word_len,
        probe=table.probe,
        mapping={format_word(c.representative): mapping[c.index].serialize() for c in table.classes},
        homomorphism_ok=homomorphism_ok,
        injective_ok=injective_ok,
        surjective_at_scale_ok=surjective_ok,
        failures=failures,
    )
    logging.info(f"同构证书 ({table.word_len}, {table.probe}): {'有效' if certificate.valid else '无效'}")
    return certificate


def quotient_projection(subshift: Subshift, max_len: int, m: int) -> QuotientReport:
    """元素层面的投影 M -> [M]：规范单词长度 ≤ max_len 的范式在探针 m 下是否两两可区分"""
    forms = _normal_forms(subshift, max_len)
    groups: Dict[FiniteContext, List[NormalForm]] = {}
    for form in forms:
        groups.setdefault(subshift.element_context(form, m), []).append(form)
    collisions = []
    for members in groups.values():
        for other in members[1:]:
            collisions.append((members[0], other))
    return QuotientReport(subshift.presentation.name, max_len, m, len(forms), len(groups), collisions)
