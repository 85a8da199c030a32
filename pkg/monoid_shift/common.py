#monoid_shift/common.py
# -*- coding: utf-8 -*-
"""
通用并发与排序工具
"""
import logging
from concurrent.futures import ThreadPoolExecutor, as_completed
from typing import Callable, Dict, List, Sequence, Tuple, TypeVar

T = TypeVar("T")
R = TypeVar("R")


def parallel_map(func: Callable[[T], R], items: Sequence[T], threads: int = 1, label: str = "任务") -> List[R]:
    """
    按输入顺序返回 func(item) 的结果列表。
    :param func: 对单个元素执行的函数
    :param items: 输入序列
    :param threads: 线程数，<=1 时串行执行
    :param label: 日志中使用的任务名称
    :return: 与 items 一一对应的结果
    """
    if threads <= 1 or len(items) <= 1:
        return [func(item) for item in items]

    logging.info(f"开始并发处理{len(items)}个{label}，最大并发数: {threads}")
    results_dict: Dict[int, R] = {}
    with ThreadPoolExecutor(max_workers=threads) as executor:
        future_to_index = {executor.submit(func, item): index for index, item in enumerate(items)}
        for future in as_completed(future_to_index):
            index = future_to_index[future]
            try:
                results_dict[index] = future.result()
            except Exception as e:
                logging.error(f"{label}{index}并发处理异常: {e}")
                raise
    logging.info(f"{label}并发处理完成，共{len(results_dict)}个")
    return [results_dict[index] for index in range(len(items))]


def shortlex_key(order: Dict[str, int]) -> Callable[[Tuple[str, ...]], Tuple[int, Tuple[int, ...]]]:
    """生成按 (长度, 声明顺序字典序) 比较单词的排序键"""
    def key(word: Tuple[str, ...]) -> Tuple[int, Tuple[int, ...]]:
        return len(word), tuple(order[symbol] for symbol in word)
    return key

