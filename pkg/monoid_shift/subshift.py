#monoid_shift/subshift.py
# -*- coding: utf-8 -*-
"""
子移位 C(Γ)：可容许性、语言计数、有限探针上下文、ω± 与 X_n 窗口检查、
周期点、Y 点构造以及有界的 (a, n, H) 性质检查。

所有 "无穷上下文" 的概念都用长度不超过探针长度 m (或 M) 的有限探针代替，
报告中始终带有所用尺度；这些检查只能在有限尺度上证伪或佐证。
"""
import json
import logging
import math
import threading
from dataclasses import asdict, dataclass, field
from itertools import product
from typing import Dict, Iterator, List, Optional, Set, Tuple

from .common import parallel_map
from .presentation import Presentation
from .rewrite import NormalForm, RewriteError, RewritingSystem, Word, format_word
from .structure import Special, StructureAnalyzer, shortest_probe


class SubshiftError(ValueError):
    """输入单词不可容许、参数非法或构造失败时抛出"""


@dataclass(frozen=True)
class CyclicWord:
    """在旋转意义下的非空循环单词"""
    letters: Word

    def __post_init__(self):
        if not self.letters:
            raise SubshiftError("循环单词不能为空")
        object.__setattr__(self, "letters", tuple(self.letters))

    def __len__(self) -> int:
        return len(self.letters)

    def rotate(self, k: int) -> "CyclicWord":
        k %= len(self.letters)
        return CyclicWord(self.letters[k:] + self.letters[:k])

    def rotations(self) -> List["CyclicWord"]:
        return [self.rotate(k) for k in range(len(self.letters))]

    def power(self, k: int) -> Word:
        return self.letters * k

    def same_cycle(self, other: "CyclicWord") -> bool:
        return len(self) == len(other) and any(r.letters == other.letters for r in self.rotations())

    def serialize(self) -> str:
        return f"({format_word(self.letters)})"


@dataclass(frozen=True)
class YPointDescription:
    """
    双向无穷序列 …cc·core·cc…：core 左侧紧接 left_cycle 的完整周期，
    右侧从 right_cycle 的第一个字母开始。
    """
    left_cycle: CyclicWord
    core: Word
    right_cycle: CyclicWord

    def letter_at(self, index: int) -> str:
        if 0 <= index < len(self.core):
            return self.core[index]
        if index < 0:
            return self.left_cycle.letters[index % len(self.left_cycle)]
        return self.right_cycle.letters[(index - len(self.core)) % len(self.right_cycle)]

    def window(self, start: int, width: int) -> Word:
        return tuple(self.letter_at(start + k) for k in range(width))

    def windows(self, width: int) -> Iterator[Word]:
        """覆盖全部不同窗口的宽度为 width 的窗口序列"""
        for start in range(-(width + len(self.left_cycle)), len(self.core) + len(self.right_cycle) + 1):
            yield self.window(start, width)

    def serialize(self) -> str:
        return f"{self.left_cycle.serialize()}^∞ · {format_word(self.core)} · {self.right_cycle.serialize()}^∞"

    def to_dict(self) -> Dict[str, str]:
        return {
            "left_cycle": format_word(self.left_cycle.letters),
            "core": format_word(self.core),
            "right_cycle": format_word(self.right_cycle.letters),
        }


@dataclass(frozen=True)
class PropertyACheckParams:
    """
    Args:
        n: 窗口大小
        margin: 共享前后缀长度 H
        max_len: 最大单词长度 L_max，必须 ≥ 3H + 2
        probe: 探针长度 m
    """
    n: int
    margin: int
    max_len: int
    probe: int

    def __post_init__(self):
        for label, value in (("n", self.n), ("margin", self.margin), ("max_len", self.max_len), ("probe", self.probe)):
            if value < 1:
                raise SubshiftError(f"参数 {label} 必须为正整数，得到 {value}")
        if self.max_len < 3 * self.margin + 2:
            raise SubshiftError(f"max_len={self.max_len} 小于 3·margin+2={3 * self.margin + 2}")

    @property
    def min_len(self) -> int:
        return 3 * self.margin + 2

    @classmethod
    def defaults(cls, presentation: Presentation) -> "PropertyACheckParams":
        """n = H = 2，m = 2·|ℒ|·|ℛ|，L_max 取最小允许值"""
        return cls(2, 2, 8, 2 * len(presentation.left) * len(presentation.right))

    def to_dict(self) -> Dict[str, int]:
        return asdict(self)


@dataclass
class WindowReport:
    """X_n 有界窗口检查结果"""
    word: Word
    n: int
    probe: int
    positions_ok: List[bool] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(self.positions_ok)

    def failing_positions(self) -> List[int]:
        return [i for i, passed in enumerate(self.positions_ok) if not passed]

    def to_dict(self) -> Dict[str, object]:
        return {"word": format_word(self.word), "n": self.n, "probe": self.probe,
                "positions_ok": list(self.positions_ok), "ok": self.ok}


class ProbeSpace:
    """
    长度 ≤ m 的全部可容许探针单词。
    u·w·v 是否可容许只取决于 u 的 minus 部分与 v 的 plus 部分，
    所以上下文按这两类 "键" 存储：每个左键对应一个右键族 (族编号全局去重)。
    """

    def __init__(self, subshift: "Subshift", m: int):
        self.subshift = subshift
        self.m = m
        rewriting = subshift.rewriting
        self.words: List[Word] = subshift.admissible_words(m)
        self.left_members: Dict[Word, List[Word]] = {}
        self.right_members: Dict[Word, List[Word]] = {}
        for word in self.words:
            form = rewriting.reduce(word)
            self.left_members.setdefault(form.minus, []).append(word)
            self.right_members.setdefault(form.plus, []).append(word)
        self.left_keys: List[Word] = list(self.left_members)
        self.right_keys: List[Word] = list(self.right_members)
        self._families: Dict[Word, int] = {}
        self._interned: Dict[frozenset, int] = {}
        self.family_sets: List[frozenset] = []
        self._contexts: Dict[NormalForm, "FiniteContext"] = {}
        self._lock = threading.Lock()

    def family(self, minus: Word) -> int:
        """能接在 minus 右侧而不产生零的右键集合的编号"""
        with self._lock:
            if minus in self._families:
                return self._families[minus]
        multiply = self.subshift.rewriting.multiply
        left = NormalForm.pair((), minus)
        members = frozenset(key for key in self.right_keys
                            if not multiply(left, NormalForm.pair(key, ())).is_zero)
        with self._lock:
            if members not in self._interned:
                self._interned[members] = len(self.family_sets)
                self.family_sets.append(members)
            index = self._interned[members]
            self._families[minus] = index
        return index

    def context(self, element: NormalForm) -> "FiniteContext":
        if element.is_zero:
            raise SubshiftError("零元素没有上下文")
        with self._lock:
            cached = self._contexts.get(element)
        if cached is not None:
            return cached
        multiply = self.subshift.rewriting.multiply
        rows = []
        for key in self.left_keys:
            product_form = multiply(NormalForm.pair((), key), element)
            rows.append(-1 if product_form.is_zero else self.family(product_form.minus))
        context = FiniteContext(self.m, tuple(rows), self)
        with self._lock:
            self._contexts[element] = context
        return context


@dataclass(frozen=True)
class FiniteContext:
    """有限探针上下文 {(u, v) : |u|, |v| ≤ m, u·w·v 可容许}，以每个左键的右键族编号表示"""
    probe: int
    rows: Tuple[int, ...]
    space: ProbeSpace = field(compare=False, hash=False, repr=False)

    def pairs(self) -> Iterator[Tuple[Word, Word]]:
        for key, family in zip(self.space.left_keys, self.rows):
            if family < 0:
                continue
            for left_word in self.space.left_members[key]:
                for right_key in self.space.right_keys:
                    if right_key in self.space.family_sets[family]:
                        for right_word in self.space.right_members[right_key]:
                            yield left_word, right_word

    def __iter__(self) -> Iterator[Tuple[Word, Word]]:
        return self.pairs()

    def __len__(self) -> int:
        total = 0
        for key, family in zip(self.space.left_keys, self.rows):
            if family < 0:
                continue
            right_count = sum(len(self.space.right_members[k]) for k in self.space.family_sets[family])
            total += len(self.space.left_members[key]) * right_count
        return total

    def __contains__(self, pair) -> bool:
        left_word, right_word = pair
        if len(left_word) > self.probe or len(right_word) > self.probe:
            return False
        rewriting = self.space.subshift.rewriting
        left_form, right_form = rewriting.reduce(left_word), rewriting.reduce(right_word)
        if left_form.is_zero or right_form.is_zero:
            return False
        family = self.rows[self.space.left_keys.index(left_form.minus)]
        return family >= 0 and right_form.plus in self.space.family_sets[family]


@dataclass
class PropertyAReport:
    """有界 (a, n, H) 性质检查报告；只能佐证，不能证明"""
    presentation: str
    params: PropertyACheckParams
    words_checked: int
    groups: int
    pairs_compared: int
    violations: List[Tuple[Word, Word]] = field(default_factory=list)
    violation_count: int = 0
    note: str = "bounded check at the stated scale: can refute, only corroborates"

    @property
    def ok(self) -> bool:
        return self.violation_count == 0

    def to_dict(self) -> Dict[str, object]:
        return {
            "presentation": self.presentation,
            "params": self.params.to_dict(),
            "words_checked": self.words_checked,
            "groups": self.groups,
            "pairs_compared": self.pairs_compared,
            "ok": self.ok,
            "violation_count": self.violation_count,
            "violations": [[format_word(a), format_word(b)] for a, b in self.violations],
            "note": self.note,
        }

    def to_json(self, indent: int = 2) -> str:
        return json.dumps(self.to_dict(), ensure_ascii=False, indent=indent)


class Subshift:
    """
    展示 Γ 决定的子移位 C(Γ)。
    Args:
        presentation: 碰撞表展示
        threads: 可并行部分使用的线程数，默认 1 以保证确定性
    """

    def __init__(self, presentation: Presentation, threads: int = 1):
        self.presentation = presentation
        self.threads = threads
        self.rewriting = RewritingSystem(presentation)
        self.structure = StructureAnalyzer(presentation, self.rewriting)
        self._probe_spaces: Dict[int, ProbeSpace] = {}
        self._follow_cache: Dict[Tuple[NormalForm, NormalForm, int], bool] = {}
        self._precede_cache: Dict[Tuple[NormalForm, NormalForm, int], bool] = {}
        self._unit_cycle: Optional[CyclicWord] = None
        self._lock = threading.Lock()

    @property
    def default_probe(self) -> int:
        return 2 * len(self.presentation.left) * len(self.presentation.right)

    # ---------- 语言 ----------

    def admissible(self, word) -> bool:
        return self.rewriting.admissible(word)

    def _require_admissible(self, word) -> NormalForm:
        form = self.rewriting.reduce(word)
        if form.is_zero:
            raise SubshiftError(f"单词不可容许: {format_word(tuple(word))}")
        return form

    def _step_minus(self, minus: Word, symbol: str) -> Optional[Word]:
        """只跟踪 minus 部分：已产出的 plus 字母不再参与后续碰撞"""
        form = self.rewriting.multiply(NormalForm.pair((), minus), self.rewriting.letter(symbol))
        return None if form.is_zero else form.minus

    def language_count(self, n: int) -> int:
        """长度恰为 n 的可容许单词数，按 minus 部分做动态规划"""
        if n < 0:
            raise SubshiftError("长度必须非负")
        counts: Dict[Word, int] = {(): 1}
        for _ in range(n):
            next_counts: Dict[Word, int] = {}
            for minus, multiplicity in counts.items():
                for symbol in self.presentation.generators:
                    nxt = self._step_minus(minus, symbol)
                    if nxt is not None:
                        next_counts[nxt] = next_counts.get(nxt, 0) + multiplicity
            counts = next_counts
        return sum(counts.values())

    def language_counts(self, max_n: int) -> List[Tuple[int, int]]:
        return [(n, self.language_count(n)) for n in range(max_n + 1)]

    def language_enumerate(self, n: int) -> Iterator[Word]:
        """按声明顺序的字典序逐个产出长度为 n 的可容许单词"""
        if n < 0:
            raise SubshiftError("长度必须非负")
        generators = self.presentation.generators

        def extend(prefix: Word, minus: Word) -> Iterator[Word]:
            if len(prefix) == n:
                yield prefix
                return
            for symbol in generators:
                nxt = self._step_minus(minus, symbol)
                if nxt is not None:
                    yield from extend(prefix + (symbol,), nxt)

        yield from extend((), ())

    def admissible_words(self, max_len: int) -> List[Word]:
        """长度 ≤ max_len 的全部可容许单词，按 shortlex 顺序"""
        words: List[Word] = []
        for n in range(max_len + 1):
            words.extend(self.language_enumerate(n))
        return words

    # ---------- 上下文 ----------

    def context_signature(self, word) -> NormalForm:
        """有限上下文只依赖于 reduce(w)"""
        return self._require_admissible(word)

    def probe_space(self, m: int) -> ProbeSpace:
        if m < 0:
            raise SubshiftError("探针长度必须非负")
        with self._lock:
            space = self._probe_spaces.get(m)
        if space is None:
            space = ProbeSpace(self, m)
            with self._lock:
                space = self._probe_spaces.setdefault(m, space)
            logging.info(f"探针空间 m={m}: {len(space.words)}个探针单词")
        return space

    def finite_context(self, word, m: int) -> FiniteContext:
        form = self._require_admissible(word)
        return self.probe_space(m).context(form)

    def element_context(self, element: NormalForm, m: int) -> FiniteContext:
        return self.probe_space(m).context(element)

    # ---------- ω± 与 X_n ----------

    def _extends_right(self, a: NormalForm, x: NormalForm, probe: int) -> bool:
        """不存在 |u| ≤ probe 的左探针使 u·a ≠ 0 而 u·x = 0"""
        if x.is_zero:
            return False
        witness = shortest_probe(self.structure.left_automaton, [a.plus, x.plus],
                                 lambda c: c[0] is not Special.ZERO and c[1] is Special.ZERO,
                                 max_depth=probe)
        return witness is None

    def _extends_left(self, a: NormalForm, x: NormalForm, probe: int) -> bool:
        if x.is_zero:
            return False
        witness = shortest_probe(self.structure.right_automaton, [a.minus, x.minus],
                                 lambda c: c[0] is not Special.ZERO and c[1] is Special.ZERO,
                                 max_depth=probe)
        return witness is None

    def _follows(self, window: Word, symbol: str, probe: int) -> bool:
        """symbol ∈ ω⁺(window)，按 reduce(window) 缓存"""
        a = self.rewriting.reduce(window)
        if a.is_zero:
            return False
        key = (a, self.rewriting.letter(symbol), probe)
        cached = self._follow_cache.get(key)
        if cached is None:
            cached = self._extends_right(a, self.rewriting.multiply(a, key[1]), probe)
            self._follow_cache[key] = cached
        return cached

    def _precedes(self, window: Word, symbol: str, probe: int) -> bool:
        """symbol ∈ ω⁻(window)"""
        a = self.rewriting.reduce(window)
        if a.is_zero:
            return False
        key = (a, self.rewriting.letter(symbol), probe)
        cached = self._precede_cache.get(key)
        if cached is None:
            cached = self._extends_left(a, self.rewriting.multiply(key[1], a), probe)
            self._precede_cache[key] = cached
        return cached

    def omega_plus(self, a, extension: int, probe: int) -> Set[Word]:
        """长度为 extension 的 b，使每个 |u| ≤ probe 且 u·a 可容许的 u 都有 u·a·b 可容许"""
        form = self._require_admissible(a)
        return {b for b in self.language_enumerate(extension)
                if self._extends_right(form, self.rewriting.multiply(form, self.rewriting.reduce(b)), probe)}

    def omega_minus(self, a, extension: int, probe: int) -> Set[Word]:
        form = self._require_admissible(a)
        return {b for b in self.language_enumerate(extension)
                if self._extends_left(form, self.rewriting.multiply(self.rewriting.reduce(b), form), probe)}

    def xn_window_check(self, word, n: int, probe: int) -> WindowReport:
        """位置 i 通过当且仅当 w_i ∈ ω⁺(w[i-n, i)) 且 w_i ∈ ω⁻(w(i, i+n])，窗口在两端截断"""
        word = self.rewriting.check_word(word)
        if n < 0 or probe < 0:
            raise SubshiftError("n 与探针长度必须非负")
        if len(word) <= 2 * n:
            raise SubshiftError(f"单词长度 {len(word)} 必须大于 2n = {2 * n}")
        self._require_admissible(word)
        positions = []
        for i, symbol in enumerate(word):
            positions.append(self._follows(word[max(0, i - n):i], symbol, probe)
                             and self._precedes(word[i + 1:i + 1 + n], symbol, probe))
        return WindowReport(word, n, probe, positions)

    # ---------- 周期点与 Y 点 ----------

    def periodic_point_from_unit(self) -> CyclicWord:
        if self._unit_cycle is None:
            try:
                self._unit_cycle = CyclicWord(self.rewriting.unit_factorization())
            except RewriteError as e:
                raise SubshiftError(str(e)) from e
        return self._unit_cycle

    def cycle_admissible(self, cycle: CyclicWord) -> bool:
        """有界幂次检查：cycle^k (k ≤ |cycle| + 2) 均可容许"""
        self.rewriting.check_word(cycle.letters)
        return all(self.admissible(cycle.power(k)) for k in range(1, len(cycle) + 3))

    def unit_rotation(self, cycle: CyclicWord) -> Optional[CyclicWord]:
        """乘积为 𝟏 的第一个旋转"""
        for rotation in cycle.rotations():
            if self.rewriting.reduce(rotation.letters).is_unit:
                return rotation
        return None

    def point_admissible(self, point: YPointDescription, width: int = 12) -> bool:
        """宽度 ≤ width 的全部窗口可容许 (只需检查宽度恰为 width 的窗口)"""
        self.rewriting.check_word(point.core + point.left_cycle.letters + point.right_cycle.letters)
        return all(self.admissible(window) for window in point.windows(width))

    def embed_in_Y(self, word) -> YPointDescription:
        word = tuple(word)
        self._require_admissible(word)
        unit = self.periodic_point_from_unit()
        return YPointDescription(unit, word, unit)

    def join_words(self, u, v) -> Word:
        """w = (u 的 minus 部分的右逆) ++ (v 的 plus 部分的左逆)，使 u·w·v ≠ 0"""
        left_form = self._require_admissible(u)
        right_form = self._require_admissible(v)
        right_inverse = self.structure.right_inverse(NormalForm.pair((), left_form.minus))
        left_inverse = self.structure.left_inverse(NormalForm.pair(right_form.plus, ()))
        if not right_inverse.exists:
            raise SubshiftError(f"{format_word(left_form.minus)} 没有右逆")
        if not left_inverse.exists:
            raise SubshiftError(f"{format_word(right_form.plus)} 没有左逆")
        joint = right_inverse.witness + left_inverse.witness
        if not self.admissible(tuple(u) + joint + tuple(v)):
            raise SubshiftError(f"连接失败: {format_word(tuple(u))} · {format_word(joint)} · {format_word(tuple(v))}")
        return joint

    def connect_periodic(self, p: CyclicWord, q: CyclicWord, n: int = 2, probe: Optional[int] = None,
                         width: int = 12) -> YPointDescription:
        """
        构造从周期点 p 出发、最终进入周期点 q 的点 (p^∞ · core · q^∞)。
        两个循环都必须有乘积为 𝟏 的旋转，并通过有界 X_n 窗口检查。
        """
        probe = self.default_probe if probe is None else probe
        aligned = []
        for cycle in (p, q):
            try:
                if not self.cycle_admissible(cycle):
                    raise SubshiftError(f"循环 {cycle.serialize()} 的幂不可容许")
            except RewriteError as e:
                raise SubshiftError(f"循环 {cycle.serialize()} 不属于当前展示: {e}") from e
            rotation = self.unit_rotation(cycle)
            if rotation is None:
                raise SubshiftError(f"循环 {cycle.serialize()} 没有乘积为 𝟏 的旋转，不在 X_C 中")
            repetitions = max(3, math.ceil((2 * n + 1) / len(rotation)) + 2)
            if not self.xn_window_check(rotation.power(repetitions), n, probe).ok:
                raise SubshiftError(f"循环 {cycle.serialize()} 未通过 X_{n} 窗口检查 (探针 {probe})")
            aligned.append(rotation)
        core = self.join_words(aligned[0].letters, aligned[1].letters)
        point = YPointDescription(aligned[0], core, aligned[1])
        if not self.point_admissible(point, width):
            raise SubshiftError(f"连接点的窗口不可容许: {point.serialize()}")
        return point

    def periodic_points(self, max_period: int, n: int = 2, probe: Optional[int] = None) -> List[CyclicWord]:
        """周期 ≤ max_period 的本原循环 (每个旋转类取声明顺序最小者)，其重复通过有界 X_n 检查"""
        probe = self.default_probe if probe is None else probe
        key = self.presentation.order_key()
        found = []
        for period in range(1, max_period + 1):
            for letters in product(self.presentation.generators, repeat=period):
                cycle = CyclicWord(letters)
                rotations = cycle.rotations()
                if any(key(r.letters) < key(letters) for r in rotations):
                    continue
                if sum(1 for r in rotations if r.letters == letters) > 1:
                    continue
                if not self.cycle_admissible(cycle):
                    continue
                repetitions = max(3, math.ceil((2 * n + 1) / period) + 2)
                if self.xn_window_check(cycle.power(repetitions), n, probe).ok:
                    found.append(cycle)
        logging.info(f"周期 ≤ {max_period} 的周期点: {len(found)}个")
        return found

    def periodic_classes_connected(self, max_period: int, n: int = 2,
                                   probe: Optional[int] = None) -> Dict[str, object]:
        """在给定尺度上，任意两个周期点之间都能构造连接点，即周期点类只有一个"""
        cycles = self.periodic_points(max_period, n, probe)
        failures = []
        for p in cycles:
            for q in cycles:
                try:
                    self.connect_periodic(p, q, n, probe)
                except SubshiftError as e:
                    failures.append({"from": format_word(p.letters), "to": format_word(q.letters), "reason": str(e)})
        return {
            "max_period": max_period,
            "n": n,
            "probe": self.default_probe if probe is None else probe,
            "cycles": [format_word(c.letters) for c in cycles],
            "pairs": len(cycles) * len(cycles),
            "failures": failures,
            "single_class": bool(cycles) and not failures,
        }

    # ---------- (a, n, H) 性质 ----------

    def xn_words(self, n: int, min_len: int, max_len: int, probe: int) -> List[Word]:
        """长度在 [min_len, max_len] 且通过 xn_window_check 的可容许单词，深度优先并在窗口条件上剪枝"""
        generators = self.presentation.generators
        results: List[Word] = []

        def tail_ok(word: Word) -> bool:
            return all(self._precedes(word[j + 1:], word[j], probe)
                       for j in range(max(0, len(word) - n), len(word)))

        def extend(word: Word, minus: Word):
            i = len(word)
            if i >= min_len and tail_ok(word):
                results.append(word)
            if i == max_len:
                return
            for symbol in generators:
                nxt = self._step_minus(minus, symbol)
                if nxt is None:
                    continue
                candidate = word + (symbol,)
                if not self._follows(candidate[max(0, i - n):i], symbol, probe):
                    continue
                # 位置 i - n 的右窗口此时已完整
                j = i - n
                if j >= 0 and not self._precedes(candidate[j + 1:i + 1], candidate[j], probe):
                    continue
                extend(candidate, nxt)

        extend((), ())
        return results

    def property_a_check(self, params: PropertyACheckParams) -> PropertyAReport:
        """
        共享前 H 个与后 H 个字母、并通过 X_n 窗口检查的单词对，其有限上下文必须相同。
        上下文只依赖于 reduce 值，所以每组内按范式比较，再把不一致的范式对展开成全部单词对。
        """
        words = self.xn_words(params.n, params.min_len, params.max_len, params.probe)
        logging.info(f"(a,n,H) 检查: {len(words)}个 X_{params.n} 单词，参数 {params.to_dict()}")
        groups: Dict[Tuple[Word, Word], Dict[NormalForm, List[Word]]] = {}
        for word in words:
            affix = (word[:params.margin], word[-params.margin:])
            groups.setdefault(affix, {}).setdefault(self.rewriting.reduce(word), []).append(word)

        space = self.probe_space(params.probe)
        key = self.presentation.order_key()

        def compare(members: Dict[NormalForm, List[Word]]) -> Tuple[int, List[Tuple[Word, Word]]]:
            forms = list(members)
            contexts = [space.context(form) for form in forms]
            compared, found = 0, []
            for i in range(len(forms)):
                for j in range(i + 1, len(forms)):
                    compared += 1
                    if contexts[i] == contexts[j]:
                        continue
                    for a in members[forms[i]]:
                        for b in members[forms[j]]:
                            found.append((a, b) if key(a) < key(b) else (b, a))
            return compared, found

        results = parallel_map(compare, list(groups.values()), self.threads, label="前后缀分组")
        violations: List[Tuple[Word, Word]] = []
        compared_total = 0
        for compared, found in results:
            compared_total += compared
            violations.extend(found)
        violations.sort(key=lambda pair: (key(pair[0]), key(pair[1])))
        report = PropertyAReport(
            presentation=self.presentation.name,
            params=params,
            words_checked=len(words),
            groups=len(groups),
            pairs_compared=compared_total,
            violations=violations,
            violation_count=len(violations),
        )
        logging.info(f"(a,n,H) 检查完成: 违反 {len(violations)} 对")
        return report
