#monoid_shift/structure.py
# -*- coding: utf-8 -*-
"""
结构判定：可零化性、单侧逆、M⁺/M⁻ 成员、上下文可区分性与单射性检查。

右乘只需考虑 ℛ 单词：γ = γ⁺γ⁻ 与 α⁻ 的碰撞只经过 γ⁺，追加 ℒ 字母不会产生零。
于是每个问题都是碰撞自动机在 "配置" 上的可达性问题。配置是尚未抵消的一侧字母栈
(栈顶在末尾)，或者吸收态 Zero / Positive (镜像为 Negative)；长度不超过 1 的配置
恰好就是自动机的状态。配置数有限，所以广度优先搜索给出精确判定与最短见证。
"""
import json
import logging
import random
from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from itertools import product
from typing import Callable, Dict, List, Optional, Sequence, Tuple, Union

from .common import parallel_map
from .presentation import LEFT, RIGHT, GeneratorId, Presentation
from .rewrite import NormalForm, RewritingSystem, Word, format_word


class StructureError(ValueError):
    """判定过程的前置条件不满足时抛出"""


class Special(Enum):
    ZERO = "Zero"
    ONE = "One"
    POSITIVE = "Positive"
    NEGATIVE = "Negative"


State = Union[Special, str]
Config = Union[Special, Word]


class CollisionAutomaton:
    """
    碰撞自动机。
    Args:
        presentation: 碰撞表展示
        mirror: False 时状态为 {Zero, One, Positive} ∪ ℒ，由右侧追加的 ℛ 字母驱动；
                True 时为镜像自动机，状态 {Zero, One, Negative} ∪ ℛ，由左侧添加的 ℒ 字母驱动
    """

    def __init__(self, presentation: Presentation, mirror: bool = False):
        self.presentation = presentation
        self.mirror = mirror
        self.letters: Tuple[str, ...] = presentation.right if mirror else presentation.left
        self.inputs: Tuple[str, ...] = presentation.left if mirror else presentation.right
        self.escape = Special.NEGATIVE if mirror else Special.POSITIVE
        self._letter_set = frozenset(self.letters)

    @property
    def states(self) -> List[State]:
        return [Special.ZERO, Special.ONE, self.escape] + list(self.letters)

    def collide(self, state: State, letter: str) -> Tuple[State, Optional[str]]:
        """返回 (新状态, 穿出的对侧字母)；Zero 与逃逸态是吸收态"""
        if state is Special.ZERO or state is self.escape:
            return state, None
        if state is Special.ONE:
            return self.escape, letter
        if self.mirror:
            outcome = self.presentation.outcome(letter, state)
        else:
            outcome = self.presentation.outcome(state, letter)
        if outcome.is_zero:
            return Special.ZERO, None
        if outcome.is_one:
            return Special.ONE, None
        if outcome.symbol in self._letter_set:
            return outcome.symbol, None
        return self.escape, outcome.symbol

    def start(self, word: Word) -> Config:
        """一侧单词对应的初始配置；镜像时栈顶是单词的第一个字母"""
        return tuple(reversed(word)) if self.mirror else tuple(word)

    def advance(self, config: Config, letter: str) -> Config:
        if isinstance(config, Special):
            return config
        body = list(config)
        current = letter
        while body:
            state, emitted = self.collide(body.pop(), current)
            if state is Special.ZERO:
                return Special.ZERO
            if state is Special.ONE:
                return tuple(body)
            if emitted is None:
                body.append(state)
                return tuple(body)
            current = emitted
        return self.escape

    def to_dot(self) -> str:
        """DOT 格式的状态图，边标签为 "输入 / 穿出字母" """
        name = "mirror" if self.mirror else "right"
        lines = [f"digraph {name} {{", "  rankdir=LR;"]
        for state in self.states:
            shape = "doublecircle" if state is Special.ZERO else "circle"
            lines.append(f'  "{_state_label(state)}" [shape={shape}];')
        for state in self.states:
            for letter in self.inputs:
                target, emitted = self.collide(state, letter)
                label = letter if emitted is None else f"{letter} / {emitted}"
                lines.append(f'  "{_state_label(state)}" -> "{_state_label(target)}" [label="{label}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def _state_label(state: State) -> str:
    return state.value if isinstance(state, Special) else state


def shortest_probe(automaton: CollisionAutomaton, words: Sequence[Word],
                   accept: Callable[[Tuple[Config, ...]], bool],
                   max_depth: Optional[int] = None) -> Optional[Word]:
    """
    在若干一侧单词的配置积上做广度优先搜索，返回使 accept 成立的最短探针单词。
    输入字母按声明顺序展开，因此结果确定；镜像时返回值已按单词顺序排列。
    """
    start = tuple(automaton.start(word) for word in words)
    if accept(start):
        return ()
    parents: Dict[Tuple[Config, ...], Optional[Tuple[Tuple[Config, ...], str]]] = {start: None}
    queue = deque([(start, 0)])
    while queue:
        configs, depth = queue.popleft()
        if max_depth is not None and depth >= max_depth:
            continue
        for letter in automaton.inputs:
            nxt = tuple(automaton.advance(config, letter) for config in configs)
            if nxt in parents:
                continue
            parents[nxt] = (configs, letter)
            if accept(nxt):
                return _trace(parents, nxt, automaton.mirror)
            queue.append((nxt, depth + 1))
    return None


def _trace(parents, node, mirror: bool) -> Word:
    applied = []
    while parents[node] is not None:
        node, letter = parents[node]
        applied.append(letter)
    # applied 是逆施加顺序；镜像时字母从右向左施加，逆序恰好是单词顺序
    return tuple(applied) if mirror else tuple(reversed(applied))


@dataclass
class WitnessReport:
    """见证搜索结果"""
    exists: bool
    witness: Optional[Word]
    length: Optional[int]
    bound_claimed: int
    within_bound: Optional[bool]

    @classmethod
    def build(cls, witness: Optional[Word], bound: int) -> "WitnessReport":
        if witness is None:
            return cls(False, None, None, bound, None)
        return cls(True, witness, len(witness), bound, len(witness) <= bound)

    def to_dict(self) -> Dict[str, object]:
        return {
            "exists": self.exists,
            "witness": None if self.witness is None else format_word(self.witness),
            "length": self.length,
            "bound_claimed": self.bound_claimed,
            "within_bound": self.within_bound,
        }


@dataclass
class InjectivityReport:
    """α⁺ ↦ Γ₋(α⁺) 或 α⁻ ↦ Γ₊(α⁻) 在长度 max_len 以内的单射性检查"""
    side: str                      # "plus" / "minus"
    max_len: int
    probe_bound: int
    words: int
    pairs_checked: int
    indistinguishable: List[Tuple[Word, Word]] = field(default_factory=list)
    max_separation: int = 0

    @property
    def injective(self) -> bool:
        return not self.indistinguishable

    @property
    def within_bound(self) -> bool:
        return self.max_separation <= self.probe_bound

    def to_dict(self) -> Dict[str, object]:
        return {
            "side": self.side,
            "max_len": self.max_len,
            "probe_bound": self.probe_bound,
            "words": self.words,
            "pairs_checked": self.pairs_checked,
            "injective": self.injective,
            "indistinguishable": [[format_word(a), format_word(b)] for a, b in self.indistinguishable],
            "max_separation": self.max_separation,
            "within_bound": self.within_bound,
        }


@dataclass
class HypothesisReport:
    """充分条件的汇总报告，violations 为空当且仅当全部成立"""
    presentation: str
    factorization_ok: bool
    unit_intersection_ok: bool
    right_inverses_ok: bool
    left_inverses_ok: bool
    plus_map_injective: bool
    minus_map_injective: bool
    right_inverses: Dict[str, WitnessReport] = field(default_factory=dict)
    left_inverses: Dict[str, WitnessReport] = field(default_factory=dict)
    right_annihilators: Dict[str, WitnessReport] = field(default_factory=dict)
    left_annihilators: Dict[str, WitnessReport] = field(default_factory=dict)
    separations: Dict[str, WitnessReport] = field(default_factory=dict)
    plus_injectivity: Optional[InjectivityReport] = None
    minus_injectivity: Optional[InjectivityReport] = None
    bounds: Dict[str, Dict[str, object]] = field(default_factory=dict)
    violations: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_dict(self) -> Dict[str, object]:
        def witnesses(reports: Dict[str, WitnessReport]) -> Dict[str, object]:
            return {key: report.to_dict() for key, report in reports.items()}
        return {
            "presentation": self.presentation,
            "ok": self.ok,
            "factorization_ok": self.factorization_ok,
            "unit_intersection_ok": self.unit_intersection_ok,
            "right_inverses_ok": self.right_inverses_ok,
            "left_inverses_ok": self.left_inverses_ok,
            "plus_map_injective": self.plus_map_injective,
            "minus_map_injective": self.minus_map_injective,
            "right_inverses": witnesses(self.right_inverses),
            "left_inverses": witnesses(self.left_inverses),
            "right_annihilators": witnesses(self.right_annihilators),
            "left_annihilators": witnesses(self.left_annihilators),
            "separations": witnesses(self.separations),
            "plus_injectivity": self.plus_injectivity.to_dict() if self.plus_injectivity else None,
            "minus_injectivity": self.minus_injectivity.to_dict() if self.minus_injectivity else None,
            "bounds": self.bounds,
            "violations": list(self.violations),
        }

    def to_json(self, indent: int = 2) -> str:
        return json.dumps(self.to_dict(), ensure_ascii=False, indent=indent)


def _is_zero(config: Config) -> bool:
    return config is Special.ZERO


class StructureAnalyzer:
    """
    展示 Γ 上的结构判定。
    Args:
        presentation: 碰撞表展示
        rewriting: 可选，复用已有的重写系统
    """

    def __init__(self, presentation: Presentation, rewriting: Optional[RewritingSystem] = None):
        self.presentation = presentation
        self.rewriting = rewriting or RewritingSystem(presentation)
        self.right_automaton = CollisionAutomaton(presentation, mirror=False)
        self.left_automaton = CollisionAutomaton(presentation, mirror=True)
        left_size, right_size = len(presentation.left), len(presentation.right)
        # 两侧逆元与零化见证的声称上界都是 |ℛ|
        self.witness_bound = right_size
        self.separation_bound = 2 * left_size * right_size

    @staticmethod
    def _require_nonzero(element: NormalForm):
        if element.is_zero:
            raise StructureError("零元素不在判定范围内")

    def right_annihilable(self, element: NormalForm) -> WitnessReport:
        """是否存在 ℛ 单词 w 使 e·w = 0；只有 e.minus 参与碰撞"""
        self._require_nonzero(element)
        witness = shortest_probe(self.right_automaton, [element.minus], lambda c: _is_zero(c[0]))
        return WitnessReport.build(witness, self.witness_bound)

    def left_annihilable(self, element: NormalForm) -> WitnessReport:
        self._require_nonzero(element)
        witness = shortest_probe(self.left_automaton, [element.plus], lambda c: _is_zero(c[0]))
        return WitnessReport.build(witness, self.witness_bound)

    def in_m_plus(self, element: NormalForm) -> bool:
        return not self.right_annihilable(element).exists

    def in_m_minus(self, element: NormalForm) -> bool:
        return not self.left_annihilable(element).exists

    def right_inverse(self, element: NormalForm) -> WitnessReport:
        """e.plus 必须为空；搜索到配置 () 即 e·w = 𝟏"""
        self._require_nonzero(element)
        if element.plus:
            raise StructureError(f"右逆只对纯 ℒ 元素定义: {element}")
        witness = shortest_probe(self.right_automaton, [element.minus], lambda c: c[0] == ())
        return WitnessReport.build(witness, self.witness_bound)

    def left_inverse(self, element: NormalForm) -> WitnessReport:
        self._require_nonzero(element)
        if element.minus:
            raise StructureError(f"左逆只对纯 ℛ 元素定义: {element}")
        witness = shortest_probe(self.left_automaton, [element.plus], lambda c: c[0] == ())
        return WitnessReport.build(witness, self.witness_bound)

    def unit_intersection_trivial(self) -> Tuple[bool, List[str]]:
        """
        M⁺ ∩ M⁻ = {𝟏} 当且仅当每个 λ 可被右零化且每个 ρ 可被左零化。
        纯 ℛ 单词总在 M⁺，纯 ℒ 单词总在 M⁻；非平凡的 α⁺α⁻ 落在交集中当且仅当
        α⁺ 不可左零化且 α⁻ 不可右零化，而单词的可零化性由其最外侧字母决定。
        """
        violations = []
        for symbol in self.presentation.left:
            if not self.right_annihilable(self.rewriting.letter(symbol)).exists:
                violations.append(f"{symbol} 不可右零化")
        for symbol in self.presentation.right:
            if not self.left_annihilable(self.rewriting.letter(symbol)).exists:
                violations.append(f"{symbol} 不可左零化")
        return not violations, violations

    def context_distinguishable(self, g: GeneratorId, h: GeneratorId) -> WitnessReport:
        """同侧两个生成元的单侧上下文是否不同；见证是只让其中一个变零的最短探针"""
        if g.side != h.side:
            raise StructureError(f"{g.symbol} 与 {h.symbol} 不在同一侧")
        for generator in (g, h):
            if self.presentation.side_of(generator.symbol) != generator.side:
                raise StructureError(f"{generator.symbol} 不在声明的一侧 {generator.side}")
        automaton = self.right_automaton if g.side == LEFT else self.left_automaton
        witness = shortest_probe(automaton, [(g.symbol,), (h.symbol,)],
                                 lambda c: _is_zero(c[0]) != _is_zero(c[1]))
        return WitnessReport.build(witness, self.separation_bound)

    def _injectivity(self, automaton: CollisionAutomaton, side: str, max_len: int) -> InjectivityReport:
        """
        对长度 ≤ max_len 的全部一侧单词做 Moore 划分细化，输出为 "是否为零"。
        这些单词的配置集合在转移下封闭，所以稳定后的划分就是精确的单侧上下文等价。
        第 k 轮首次分开的两个单词，其最短分离探针长度恰为 k。
        """
        if max_len < 1:
            raise StructureError("max_len 必须至少为 1")
        words: List[Word] = [()]
        for length in range(1, max_len + 1):
            words.extend(product(automaton.letters, repeat=length))
        configs = [automaton.start(word) for word in words]
        states: List[Config] = [Special.ZERO, automaton.escape] + configs
        block = {state: int(_is_zero(state)) for state in states}
        word_blocks = 1
        max_separation = 0
        rounds = 0
        while True:
            signatures = {state: (block[state],) + tuple(block[automaton.advance(state, letter)]
                                                         for letter in automaton.inputs)
                          for state in states}
            numbering: Dict[Tuple[int, ...], int] = {}
            refined = {state: numbering.setdefault(signature, len(numbering))
                       for state, signature in signatures.items()}
            rounds += 1
            if len(numbering) == len(set(block.values())):
                break
            block = refined
            current = len({block[config] for config in configs})
            if current > word_blocks:
                max_separation = rounds
                word_blocks = current

        members: Dict[int, List[Word]] = {}
        for word, config in zip(words, configs):
            members.setdefault(block[config], []).append(word)
        indistinguishable = []
        for group in members.values():
            for i in range(len(group)):
                for j in range(i + 1, len(group)):
                    indistinguishable.append((group[i], group[j]))
        report = InjectivityReport(
            side=side,
            max_len=max_len,
            probe_bound=self.separation_bound,
            words=len(words),
            pairs_checked=len(words) * (len(words) - 1) // 2,
            indistinguishable=indistinguishable,
            max_separation=max_separation,
        )
        logging.info(f"{side} 单射性检查: {len(words)}个单词，{len(indistinguishable)}对不可区分，"
                     f"最长分离探针 {max_separation}，细化 {rounds} 轮")
        return report

    def plus_map_injectivity(self, max_len: int) -> InjectivityReport:
        return self._injectivity(self.left_automaton, "plus", max_len)

    def minus_map_injectivity(self, max_len: int) -> InjectivityReport:
        return self._injectivity(self.right_automaton, "minus", max_len)

    def factorization_sample(self, samples: int, seed: int = 0, max_word_len: int = 30) -> bool:
        """随机单词在随机改写顺序下结果一致，且范式形如 ℛ*ℒ*"""
        rng = random.Random(seed)
        generators = self.presentation.generators
        left, right = set(self.presentation.left), set(self.presentation.right)
        for _ in range(samples):
            word = tuple(rng.choice(generators) for _ in range(rng.randint(0, max_word_len)))
            reduced = self.rewriting.reduce(word)
            if reduced != self.rewriting.reduce_by_random_redexes(word, rng):
                logging.warning(f"改写顺序导致不同结果: {format_word(word)}")
                return False
            if not reduced.is_zero and (not set(reduced.plus) <= right or not set(reduced.minus) <= left):
                return False
        return True

    def check_theorem_hypotheses(self, max_len: int = 4, samples: int = 200, seed: int = 0,
                                 threads: int = 1) -> HypothesisReport:
        """汇总全部条件；只报告，不抛出"""
        p = self.presentation
        letter = self.rewriting.letter
        logging.info(f"开始检查展示 {p.name or '<anonymous>'} 的结构条件")

        right_inverses = {symbol: self.right_inverse(letter(symbol)) for symbol in p.left}
        left_inverses = {symbol: self.left_inverse(letter(symbol)) for symbol in p.right}
        right_annihilators = {symbol: self.right_annihilable(letter(symbol)) for symbol in p.left}
        left_annihilators = {symbol: self.left_annihilable(letter(symbol)) for symbol in p.right}
        separations = {}
        side_pairs: Dict[str, List[WitnessReport]] = {LEFT: [], RIGHT: []}
        for side, symbols in ((LEFT, p.left), (RIGHT, p.right)):
            for i, g in enumerate(symbols):
                for h in symbols[i + 1:]:
                    separation = self.context_distinguishable(GeneratorId(g, side), GeneratorId(h, side))
                    separations[f"{g}|{h}"] = separation
                    side_pairs[side].append(separation)

        plus_report, minus_report = parallel_map(
            lambda task: task(max_len),
            [self.plus_map_injectivity, self.minus_map_injectivity],
            threads, label="单射性检查")

        factorization_ok = self.factorization_sample(samples, seed)
        unit_ok, unit_violations = self.unit_intersection_trivial()
        violations = []
        if not factorization_ok:
            violations.append("随机样本上的因子分解检查失败")
        violations.extend(unit_violations)
        violations.extend(f"{symbol} 没有右逆" for symbol, r in right_inverses.items() if not r.exists)
        violations.extend(f"{symbol} 没有左逆" for symbol, r in left_inverses.items() if not r.exists)
        violations.extend(f"plus 单词 {format_word(a)} 与 {format_word(b)} 的左上下文相同"
                          for a, b in plus_report.indistinguishable)
        violations.extend(f"minus 单词 {format_word(a)} 与 {format_word(b)} 的右上下文相同"
                          for a, b in minus_report.indistinguishable)

        def measured(reports, claimed) -> Dict[str, object]:
            lengths = [r.length for r in reports if r.exists]
            value = max(lengths) if lengths else 0
            return {"claimed": claimed, "measured": value, "within": value <= claimed}

        bounds = {
            "right_inverse": measured(right_inverses.values(), self.witness_bound),
            "left_inverse": measured(left_inverses.values(), self.witness_bound),
            "right_annihilation": measured(right_annihilators.values(), self.witness_bound),
            "left_annihilation": measured(left_annihilators.values(), self.witness_bound),
            "separation_left": measured(side_pairs[LEFT], self.separation_bound),
            "separation_right": measured(side_pairs[RIGHT], self.separation_bound),
        }

        report = HypothesisReport(
            presentation=p.name,
            factorization_ok=factorization_ok,
            unit_intersection_ok=unit_ok,
            right_inverses_ok=all(r.exists for r in right_inverses.values()),
            left_inverses_ok=all(r.exists for r in left_inverses.values()),
            plus_map_injective=plus_report.injective,
            minus_map_injective=minus_report.injective,
            right_inverses=right_inverses,
            left_inverses=left_inverses,
            right_annihilators=right_annihilators,
            left_annihilators=left_annihilators,
            separations=separations,
            plus_injectivity=plus_report,
            minus_injectivity=minus_report,
            bounds=bounds,
            violations=violations,
        )
        logging.info(f"结构条件检查完成，违反项 {len(violations)} 个")
        return report
