# tests/test_presentation.py
# -*- coding: utf-8 -*-
"""
展示解析、校验、序列化与内置目录的单元测试
"""
import sys
import os
import unittest
import tempfile

from hypothesis import given, settings, strategies as st

# 添加项目根目录到系统路径
sys.path.insert(0, os.path.dirname(os.path.dirname(__file__)))

from monoid_shift.presentation import (
    LEFT, RIGHT, GeneratorId, Outcome, Presentation, PresentationError, ValidationReport,
    catalog, catalog_names, catalog_status, from_rules, load_presentation,
    parse_presentation, serialize_presentation,
)

PRESENTATIONS_DIR = os.path.join(os.path.dirname(os.path.dirname(__file__)), "presentations")

POLYCYCLIC_TEXT = """
# 二元多循环幺半群
left: λ λ′
right: ρ ρ′
λ ρ = 1
λ ρ′ = 0
λ′ ρ = 0
λ′ ρ′ = 1
"""


@st.composite
def presentations(draw):
    """随机的小型碰撞表，结果可以是 0、1 或任一侧的生成元"""
    left = tuple(f"l{i}" for i in range(draw(st.integers(1, 3))))
    right = tuple(f"r{i}" for i in range(draw(st.integers(1, 3))))
    tokens = ["0", "1"] + list(left) + list(right)
    rules = {(l, r): draw(st.sampled_from(tokens)) for l in left for r in right}
    return from_rules(left, right, rules, "random")


class TestParsePresentation(unittest.TestCase):
    """解析与校验测试类"""

    def test_parse_polycyclic(self):
        """测试解析二元多循环表"""
        parsed = parse_presentation(POLYCYCLIC_TEXT, name="p2")
        self.assertIsInstance(parsed, Presentation)
        self.assertEqual(parsed, catalog("polycyclic2"))
        self.assertEqual(parsed.name, "p2")
        self.assertEqual(parsed.outcome("λ", "ρ"), Outcome.one())
        self.assertTrue(parsed.outcome("λ′", "ρ").is_zero)

    def test_missing_pair(self):
        """缺少一个组合时报告 missing-pair"""
        text = POLYCYCLIC_TEXT.replace("λ′ ρ′ = 1\n", "")
        report = parse_presentation(text)
        self.assertIsInstance(report, ValidationReport)
        self.assertFalse(report.ok)
        self.assertEqual(report.kinds(), ["missing-pair"])
        self.assertIn("λ′", report.issues[0].detail)

    def test_duplicate_rule_location(self):
        """重复规则报告所在行号"""
        text = "left: λ\nright: ρ\nλ ρ = 1\nλ ρ = 0\n"
        report = parse_presentation(text)
        self.assertEqual(report.kinds(), ["duplicate-rule"])
        self.assertEqual(report.issues[0].location, 4)

    def test_unknown_symbol(self):
        text = "left: λ\nright: ρ\nλ ρ = 1\nμ ρ = 0\n"
        report = parse_presentation(text)
        self.assertIn("unknown-symbol", report.kinds())

    def test_unknown_outcome(self):
        text = "left: λ\nright: ρ\nλ ρ = σ\n"
        report = parse_presentation(text)
        self.assertIn("unknown-symbol", report.kinds())

    def test_empty_side(self):
        text = "left: λ\nλ ρ = 1\n"
        report = parse_presentation(text)
        self.assertIn("empty-side", report.kinds())

    def test_reserved_symbol(self):
        text = "left: 0 λ\nright: ρ\nλ ρ = 1\n"
        report = parse_presentation(text)
        self.assertIn("reserved-symbol", report.kinds())

    def test_duplicate_symbol(self):
        text = "left: λ\nright: λ\nλ λ = 1\n"
        report = parse_presentation(text)
        self.assertIn("duplicate-symbol", report.kinds())

    def test_all_issues_collected(self):
        """一次解析列出全部问题，而不是遇到第一个就停止"""
        text = "left: λ λ′\nright: ρ\nλ ρ 1\nλ ρ = 1\n"
        report = parse_presentation(text)
        self.assertIn("syntax", report.kinds())
        self.assertIn("missing-pair", report.kinds())
        self.assertEqual(report.issues[0].location, 3)
        self.assertFalse(report.to_dict()["ok"])
        self.assertEqual(report.to_dict()["issues"][0], {"kind": "syntax", "location": 3, "detail": report.issues[0].detail})

    def test_direct_construction_rejects_incomplete_table(self):
        """直接构造时缺格或结果未声明都会抛出 PresentationError"""
        with self.assertRaises(PresentationError):
            from_rules(("λ",), ("ρ",), {})
        with self.assertRaises(PresentationError):
            from_rules(("λ",), ("ρ",), {("λ", "ρ"): "σ"})
        with self.assertRaises(PresentationError):
            from_rules(("λ",), ("λ",), {("λ", "λ"): "1"})


class TestPresentationModel(unittest.TestCase):
    """展示的查询接口测试类"""

    def setUp(self):
        self.presentation = catalog("example4")

    def test_sides(self):
        self.assertEqual(self.presentation.side_of("λ″"), LEFT)
        self.assertEqual(self.presentation.side_of("ρ′"), RIGHT)
        self.assertTrue(self.presentation.is_left("λ"))
        with self.assertRaises(PresentationError):
            self.presentation.side_of("σ")

    def test_generator_order(self):
        """生成元顺序为先 ℒ 后 ℛ"""
        self.assertEqual(self.presentation.generators, ("λ", "λ′", "λ″", "ρ", "ρ′", "ρ″"))
        ids = self.presentation.generator_ids()
        self.assertEqual(ids[0], GeneratorId("λ", LEFT))
        self.assertEqual(ids[-1], GeneratorId("ρ″", RIGHT))

    def test_shortlex_key(self):
        key = self.presentation.order_key()
        words = [("ρ",), ("λ", "λ"), ("λ′",), ()]
        self.assertEqual(sorted(words, key=key), [(), ("λ′",), ("ρ",), ("λ", "λ")])

    def test_gen_outcome(self):
        self.assertEqual(self.presentation.outcome("λ", "ρ′"), Outcome.gen("λ"))
        self.assertEqual(self.presentation.outcome("λ", "ρ′").to_token(), "λ")

    def test_hashable(self):
        self.assertEqual(len({catalog("example4"), self.presentation}), 1)


class TestSerialization(unittest.TestCase):
    """序列化与文件读取测试类"""

    def test_catalog_round_trip(self):
        """内置目录的每个展示都能原样解析回来"""
        for name in catalog_names():
            presentation = catalog(name)
            parsed = parse_presentation(serialize_presentation(presentation), name=name)
            self.assertEqual(parsed, presentation, name)

    @settings(max_examples=50, deadline=None)
    @given(presentations())
    def test_random_round_trip(self, presentation):
        self.assertEqual(parse_presentation(serialize_presentation(presentation)), presentation)

    def test_presentation_files_match_catalog(self):
        """presentations/ 下的文件与内置目录一致"""
        for name in catalog_names():
            loaded = load_presentation(os.path.join(PRESENTATIONS_DIR, f"{name}.smp"))
            self.assertEqual(loaded, catalog(name), name)
            self.assertEqual(loaded.name, name)

    def test_bicyclic_file(self):
        loaded = load_presentation(os.path.join(PRESENTATIONS_DIR, "bicyclic.smp"))
        self.assertIsInstance(loaded, Presentation)
        self.assertEqual(loaded.left, ("λ",))
        self.assertTrue(loaded.outcome("λ", "ρ").is_one)

    def test_load_missing_file(self):
        with self.assertRaises(PresentationError):
            load_presentation(os.path.join(tempfile.gettempdir(), "no-such-presentation.smp"))

    def test_load_invalid_file(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, "broken.smp")
            with open(path, "w", encoding="utf-8") as f:
                f.write("left: λ\nright: ρ\n")
            report = load_presentation(path)
        self.assertIsInstance(report, ValidationReport)
        self.assertEqual(report.kinds(), ["missing-pair"])


class TestCatalog(unittest.TestCase):
    """内置目录测试类"""

    def test_names_and_status(self):
        self.assertEqual(catalog_names(), ["polycyclic2", "example2", "example3", "example4"])
        self.assertEqual(catalog_status("polycyclic2"), "published")
        self.assertEqual(catalog_status("example4"), "reconstructed")

    def test_unknown_name(self):
        with self.assertRaises(PresentationError):
            catalog("example9")
        with self.assertRaises(PresentationError):
            catalog_status("example9")

    def test_every_row_and_column_has_zero(self):
        """目录中每行每列都含 0"""
        for name in catalog_names():
            p = catalog(name)
            for l in p.left:
                self.assertTrue(any(p.outcome(l, r).is_zero for r in p.right), f"{name} 行 {l}")
            for r in p.right:
                self.assertTrue(any(p.outcome(l, r).is_zero for l in p.left), f"{name} 列 {r}")

    def test_every_left_generator_has_unit_partner(self):
        for name in catalog_names():
            p = catalog(name)
            for l in p.left:
                self.assertTrue(any(p.outcome(l, r).is_one for r in p.right), f"{name} 行 {l}")


def run_tests():
    """运行所有测试"""
    loader = unittest.TestLoader()
    suite = unittest.TestSuite()
    for case in (TestParsePresentation, TestPresentationModel, TestSerialization, TestCatalog):
        suite.addTests(loader.loadTestsFromTestCase(case))
    runner = unittest.TextTestRunner(verbosity=2)
    return runner.run(suite).wasSuccessful()


if __name__ == '__main__':
    success = run_tests()
    if not success:
        sys.exit(1)
    print("\n所有测试通过！ ✅")
