# tests/test_cli.py
# -*- coding: utf-8 -*-
"""
命令行子命令与退出码测试
"""
import sys
import os
import io
import json
import tempfile
import unittest
from contextlib import redirect_stdout, redirect_stderr

# 添加项目根目录到系统路径
sys.path.insert(0, os.path.dirname(os.path.dirname(__file__)))

from monoid_shift.cli import EXIT_INPUT, EXIT_NEGATIVE, EXIT_OK, main
from monoid_shift.presentation import catalog, serialize_presentation

PRESENTATIONS_DIR = os.path.join(os.path.dirname(os.path.dirname(__file__)), "presentations")


class TestCli(unittest.TestCase):
    """命令行测试类"""

    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.config = os.path.join(self.tmp.name, "config.json")

    def tearDown(self):
        self.tmp.cleanup()

    def run_cli(self, *argv):
        stdout, stderr = io.StringIO(), io.StringIO()
        with redirect_stdout(stdout), redirect_stderr(stderr):
            code = main(list(argv) + ["--config", self.config])
        return code, stdout.getvalue()

    def run_json(self, *argv):
        code, output = self.run_cli(*argv, "--json")
        return code, json.loads(output)

    def test_reduce(self):
        code, output = self.run_cli("reduce", "polycyclic2", "--word", "λ ρ")
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(output.strip(), "|")
        code, data = self.run_json("reduce", "polycyclic2", "--word", "λ ρ′")
        self.assertEqual(data["normal_form"], "0")

    def test_reduce_undeclared_letter(self):
        code, data = self.run_json("reduce", "polycyclic2", "--word", "λ σ")
        self.assertEqual(code, EXIT_INPUT)
        self.assertEqual(data["type"], "RewriteError")

    def test_language(self):
        code, data = self.run_json("language", "polycyclic2", "--max-n", "2")
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(data["counts"], [[0, 1], [1, 4], [2, 14]])
        code, data = self.run_json("language", "polycyclic2", "--max-n", "1", "--enumerate")
        self.assertEqual(data["words"]["1"], ["λ", "λ′", "ρ", "ρ′"])

    def test_validate_files(self):
        for name in ("polycyclic2", "example2", "example3", "example4", "bicyclic"):
            code, _ = self.run_cli("validate", os.path.join(PRESENTATIONS_DIR, f"{name}.smp"))
            self.assertEqual(code, EXIT_OK, name)

    def test_validate_invalid_file(self):
        path = os.path.join(self.tmp.name, "broken.smp")
        with open(path, "w", encoding="utf-8") as f:
            f.write("left: λ λ′\nright: ρ\nλ ρ = 1\nλ ρ = 0\n")
        code, data = self.run_json("validate", path)
        self.assertEqual(code, EXIT_INPUT)
        self.assertFalse(data["ok"])
        kinds = [issue["kind"] for issue in data["issues"]]
        self.assertIn("duplicate-rule", kinds)
        self.assertIn("missing-pair", kinds)

    def test_unknown_presentation(self):
        code, _ = self.run_cli("validate", "no-such-presentation")
        self.assertEqual(code, EXIT_INPUT)

    def test_usage_error(self):
        code, _ = self.run_cli("reduce", "polycyclic2")
        self.assertEqual(code, EXIT_INPUT)

    def test_catalog(self):
        code, output = self.run_cli("catalog", "example4")
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(output, serialize_presentation(catalog("example4")))

    def test_analyze(self):
        code, data = self.run_json("analyze", "polycyclic2", "--max-len", "3", "--samples", "20")
        self.assertEqual(code, EXIT_OK)
        self.assertTrue(data["ok"])
        self.assertEqual(data["bounds"]["right_inverse"]["measured"], 1)
        code, data = self.run_json("analyze", os.path.join(PRESENTATIONS_DIR, "bicyclic.smp"),
                                   "--max-len", "2", "--samples", "10")
        self.assertEqual(code, EXIT_NEGATIVE)
        self.assertFalse(data["unit_intersection_ok"])

    def test_contexts(self):
        code, data = self.run_json("contexts", "polycyclic2", "--word", "λ ρ", "--probe", "1")
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(data["signature"], "|")
        self.assertEqual(data["count"], 23)

    def test_property_a(self):
        code, data = self.run_json("property-a", "polycyclic2", "--max-len", "8", "--probe", "4")
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(data["violation_count"], 0)
        code, _ = self.run_cli("property-a", "polycyclic2", "--max-len", "3")
        self.assertEqual(code, EXIT_INPUT)

    def test_reconstruct(self):
        code, data = self.run_json("reconstruct", "polycyclic2", "--word-len", "3", "--probe", "4")
        self.assertEqual(code, EXIT_OK)
        self.assertTrue(data["valid"])
        self.assertTrue(data["table"]["well_defined"])
        code, data = self.run_json("reconstruct", "polycyclic2", "--word-len", "2", "--probe", "0")
        self.assertEqual(code, EXIT_NEGATIVE)
        self.assertFalse(data["injective_ok"])

    def test_periodic(self):
        code, data = self.run_json("periodic", "polycyclic2", "--max-period", "2", "--probe", "4")
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(data["cycles"], ["λ ρ", "λ′ ρ′"])
        self.assertTrue(data["single_class"])

    def test_emit_dot(self):
        code, output = self.run_cli("emit-dot", "polycyclic2")
        self.assertEqual(code, EXIT_OK)
        self.assertIn("digraph right {", output)
        self.assertIn("digraph mirror {", output)

    def test_output_file(self):
        path = os.path.join(self.tmp.name, "counts.json")
        code, _ = self.run_cli("language", "example2", "--max-n", "1", "--output", path)
        self.assertEqual(code, EXIT_OK)
        with open(path, encoding="utf-8") as f:
            self.assertEqual(json.load(f)["counts"], [[0, 1], [1, 6]])

    def test_config_defaults_applied(self):
        """配置文件中的默认值在未给出命令行参数时生效"""
        with open(self.config, "w", encoding="utf-8") as f:
            json.dump({"property_a": {"max_len": 3}}, f)
        code, _ = self.run_cli("property-a", "polycyclic2")
        self.assertEqual(code, EXIT_INPUT)
        code, _ = self.run_cli("property-a", "polycyclic2", "--max-len", "8", "--probe", "4")
        self.assertEqual(code, EXIT_OK)

    def test_write_config(self):
        """--write-config 把默认值与文件中的值合并后写回"""
        with open(self.config, "w", encoding="utf-8") as f:
            json.dump({"threads": 2}, f)
        code, _ = self.run_cli("validate", "polycyclic2", "--write-config")
        self.assertEqual(code, EXIT_OK)
        with open(self.config, encoding="utf-8") as f:
            written = json.load(f)
        self.assertEqual(written["threads"], 2)
        self.assertEqual(written["reconstruct"], {"word_len": 3, "probe": 4})


if __name__ == '__main__':
    unittest.main(verbosity=2)
