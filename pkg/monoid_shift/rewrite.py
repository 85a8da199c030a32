#monoid_shift/rewrite.py
# -*- coding: utf-8 -*-
"""
重写系统：把单词归约为范式 α⁺α⁻ (α⁺ ∈ ℛ*, α⁻ ∈ ℒ*) 或零，并计算乘积。
规则 λρ -> T(λ, ρ) 长度递减且合流，因此一次从左到右的栈扫描即可得到范式。
"""
import logging
import random
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from typing_extensions import TypeAlias

from .presentation import Presentation

Word: TypeAlias = Tuple[str, ...]


class RewriteError(ValueError):
    """单词含未声明字母、零元素没有单词表示、或 𝟏 无法表示时抛出"""


def parse_word(text: str) -> Word:
    """按空白切分的生成元序列"""
    return tuple(text.split())


def format_word(word: Word) -> str:
    return " ".join(word)


@dataclass(frozen=True)
class NormalForm:
    """范式：零，或 (plus ∈ ℛ*, minus ∈ ℒ*)；(ε, ε) 即单位元 𝟏"""
    plus: Word = ()
    minus: Word = ()
    is_zero: bool = False

    @classmethod
    def zero(cls) -> "NormalForm":
        return ZERO

    @classmethod
    def pair(cls, plus: Word, minus: Word) -> "NormalForm":
        return cls(tuple(plus), tuple(minus), False)

    @property
    def is_unit(self) -> bool:
        return not self.is_zero and not self.plus and not self.minus

    @property
    def length(self) -> int:
        return len(self.plus) + len(self.minus)

    def serialize(self) -> str:
        """零写作 "0"，否则写作 "<plus>|<minus>"，字母之间以空格分隔"""
        if self.is_zero:
            return "0"
        return f"{format_word(self.plus)}|{format_word(self.minus)}"

    @classmethod
    def parse(cls, text: str) -> "NormalForm":
        text = text.strip()
        if text == "0":
            return ZERO
        if "|" not in text:
            raise RewriteError(f"无法解析的范式: {text!r}")
        plus, minus = text.split("|", 1)
        return cls.pair(parse_word(plus), parse_word(minus))

    def __str__(self) -> str:
        return self.serialize()


ZERO = NormalForm((), (), True)
UNIT = NormalForm((), (), False)


class RewritingSystem:
    """
    展示 Γ 上的重写系统。
    Args:
        presentation: 碰撞表展示
    """

    def __init__(self, presentation: Presentation):
        self.presentation = presentation
        self._left = frozenset(presentation.left)
        self._right = frozenset(presentation.right)
        self._letters: Dict[str, NormalForm] = {}
        for symbol in presentation.left:
            self._letters[symbol] = NormalForm.pair((), (symbol,))
        for symbol in presentation.right:
            self._letters[symbol] = NormalForm.pair((symbol,), ())

    def check_word(self, word) -> Word:
        word = tuple(word)
        for symbol in word:
            if symbol not in self._letters:
                raise RewriteError(f"单词包含未声明的字母: {symbol}")
        return word

    def letter(self, symbol: str) -> NormalForm:
        """单个生成元的范式"""
        try:
            return self._letters[symbol]
        except KeyError:
            raise RewriteError(f"未声明的字母: {symbol}") from None

    def _absorb(self, plus: List[str], minus: List[str], symbol: str) -> bool:
        """把一个字母接在 (plus, minus) 右端；返回 False 表示结果为零"""
        if symbol in self._left:
            minus.append(symbol)
            return True
        current = symbol
        while minus:
            outcome = self.presentation.outcome(minus.pop(), current)
            if outcome.is_zero:
                return False
            if outcome.is_one:
                return True
            if outcome.symbol in self._left:
                minus.append(outcome.symbol)
                return True
            # 产出 ℛ 字母，继续与栈中下一个 ℒ 字母碰撞
            current = outcome.symbol
        plus.append(current)
        return True

    def reduce(self, word) -> NormalForm:
        """一次从左到右扫描，线性时间"""
        word = self.check_word(word)
        plus: List[str] = []
        minus: List[str] = []
        for symbol in word:
            if not self._absorb(plus, minus, symbol):
                return ZERO
        return NormalForm.pair(plus, minus)

    def admissible(self, word) -> bool:
        return not self.reduce(word).is_zero

    def multiply(self, a: NormalForm, b: NormalForm) -> NormalForm:
        """a.minus 与 b.plus 逐个碰撞，结果等于 reduce(word(a) ++ word(b))"""
        if a.is_zero or b.is_zero:
            return ZERO
        if not a.minus or not b.plus:
            return NormalForm.pair(a.plus + b.plus, a.minus + b.minus)
        plus = list(a.plus)
        minus = list(a.minus)
        for symbol in b.plus:
            if not self._absorb(plus, minus, symbol):
                return ZERO
        minus.extend(b.minus)
        return NormalForm.pair(plus, minus)

    def canonical_word(self, element: NormalForm) -> Word:
        if element.is_zero:
            raise RewriteError("零元素没有单词表示")
        return element.plus + element.minus

    def reduce_by_random_redexes(self, word, rng: Optional[random.Random] = None) -> NormalForm:
        """按随机顺序改写任意可约位置直到不可约；合流性保证结果与 reduce 相同"""
        rng = rng or random.Random(0)
        current = list(self.check_word(word))
        while True:
            redexes = [i for i in range(len(current) - 1)
                       if current[i] in self._left and current[i + 1] in self._right]
            if not redexes:
                break
            i = rng.choice(redexes)
            outcome = self.presentation.outcome(current[i], current[i + 1])
            if outcome.is_zero:
                return ZERO
            replacement = [] if outcome.is_one else [outcome.symbol]
            current[i:i + 2] = replacement
        split = 0
        while split < len(current) and current[split] in self._right:
            split += 1
        if any(symbol in self._right for symbol in current[split:]):
            raise RewriteError(f"不可约单词不是 ℛ*ℒ* 形状: {format_word(tuple(current))}")
        return NormalForm.pair(current[:split], current[split:])

    def unit_factorization(self) -> Word:
        """
        最短的非空单词 w 使 reduce(w) = 𝟏，并列时按生成元声明顺序取最小。
        广度优先搜索，长度上界 2·|ℒ|·|ℛ|；中间状态一旦含 ℛ 字母就不可能回到 𝟏。
        """
        bound = 2 * len(self.presentation.left) * len(self.presentation.right)
        frontier: List[Tuple[NormalForm, Word]] = [(UNIT, ())]
        seen = set()
        for depth in range(1, bound + 1):
            next_frontier = []
            for state, word in frontier:
                for symbol in self.presentation.generators:
                    product = self.multiply(state, self._letters[symbol])
                    if product.is_zero or product.plus:
                        continue
                    candidate = word + (symbol,)
                    if product.is_unit:
                        logging.info(f"单位元分解: {format_word(candidate)} (长度{depth})")
                        return candidate
                    if product in seen or len(product.minus) > bound - depth:
                        continue
                    seen.add(product)
                    next_frontier.append((product, candidate))
            frontier = next_frontier
            if not frontier:
                break
        raise RewriteError(f"unit not expressible: 长度 {bound} 以内没有非空单词归约为 𝟏")
