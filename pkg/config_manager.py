# config_manager.py
# -*- coding: utf-8 -*-
import copy
import json
import logging
import os

DEFAULT_SETTINGS = {
    "threads": 1,
    "analysis": {"max_len": 4, "samples": 200, "seed": 0},
    "property_a": {"n": 2, "margin": 2, "max_len": 10, "probe": 4},
    "reconstruct": {"word_len": 3, "probe": 4},
    "windows": {"n": 2, "probe": 4},
}


def load_config(config_file: str) -> dict:
    """从指定的 config_file 加载配置，若不存在或无法解析则返回空字典。"""
    if os.path.exists(config_file):
        try:
            with open(config_file, 'r', encoding='utf-8') as f:
                return json.load(f)
        except (OSError, json.JSONDecodeError) as e:
            logging.warning(f"读取配置文件 {config_file} 失败，使用默认配置: {e}")
    return {}

def save_config(config_data: dict, config_file: str) -> bool:
    """将 config_data 保存到 config_file 中，返回 True/False 表示是否成功。"""
    try:
        with open(config_file, 'w', encoding='utf-8') as f:
            json.dump(config_data, f, ensure_ascii=False, indent=4)
        return True
    except OSError as e:
        logging.error(f"保存配置文件 {config_file} 失败: {e}")
        return False

def merge_settings(base: dict, override: dict) -> dict:
    """把 override 逐层覆盖到 base 的副本上，未知的键原样保留"""
    merged = copy.deepcopy(base)
    for key, value in override.items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = merge_settings(merged[key], value)
        else:
            merged[key] = value
    return merged

def resolve_settings(config_file: str) -> dict:
    """默认配置叠加配置文件中的值"""
    return merge_settings(DEFAULT_SETTINGS, load_config(config_file))
