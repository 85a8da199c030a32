# utils.py
# -*- coding: utf-8 -*-
import json
import logging
import os

def read_file(filename: str) -> str:
    """读取 UTF-8 文本，去掉 BOM 并统一换行；读取失败时记录日志并返回空字符串。"""
    try:
        with open(filename, 'r', encoding='utf-8-sig', newline=None) as f:
            return f.read()
    except FileNotFoundError:
        logging.warning(f"[read_file] 文件不存在: {filename}")
    except (OSError, UnicodeDecodeError) as e:
        logging.error(f"[read_file] 读取 {filename} 失败: {e}")
    return ""

def save_data_to_json(data: dict, file_path: str) -> bool:
    """按键排序写出 JSON 报告，必要时创建父目录，返回是否成功。"""
    parent = os.path.dirname(file_path)
    try:
        if parent:
            os.makedirs(parent, exist_ok=True)
        with open(file_path, 'w', encoding='utf-8') as f:
            json.dump(data, f, ensure_ascii=False, indent=2, sort_keys=True)
            f.write("\n")
        return True
    except (OSError, TypeError) as e:
        logging.error(f"[save_data_to_json] 写出 {file_path} 失败: {e}")
        return False
