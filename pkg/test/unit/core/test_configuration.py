import os
import tempfile
import unittest

import jsonschema
import pytest

from src.core.configuration import CONFIG_NAME, Configuration, load_schema, parse_sfstri_yaml


def test_defaults():
    config = Configuration()
    assert config.output_dir == "."
    assert config.log_level == "WARNING"
    assert config.farey_depth == 64
    assert config.grid.pmax == 12
    assert config.grid.chi_min == -4
    assert config.grid.workers == 1
    assert config.use_case_options.build.enabled
    assert config.fail_on_issues


def test_schema_accepts_the_defaults():
    jsonschema.validate(Configuration().model_dump(), load_schema())


class TestParseYaml(unittest.TestCase):
    def setUp(self):
        self.dir = tempfile.mkdtemp()
        self.path = os.path.join(self.dir, CONFIG_NAME)

    def tearDown(self):
        if os.path.exists(self.path):
            os.remove(self.path)
        os.rmdir(self.dir)

    def write(self, text):
        with open(self.path, "w", encoding="utf-8") as f:
            f.write(text)

    def test_missing_file_gives_defaults(self):
        self.assertEqual(parse_sfstri_yaml(self.dir), Configuration())

    def test_empty_file_gives_defaults(self):
        self.write("")
        self.assertEqual(parse_sfstri_yaml(self.dir), Configuration())

    def test_values_are_read(self):
        self.write("log_level: DEBUG\ngrid:\n  pmax: 5\n  workers: 2\nuse_case_options:\n  grid:\n    enabled: false\n")
        config = parse_sfstri_yaml(self.dir)
        self.assertEqual(config.log_level, "DEBUG")
        self.assertEqual(config.grid.pmax, 5)
        self.assertEqual(config.grid.workers, 2)
        self.assertEqual(config.grid.chi_min, -4)
        self.assertFalse(config.use_case_options.grid.enabled)

    def test_syntax_error_exits_with_two(self):
        self.write("grid: [unclosed\n")
        with self.assertRaises(SystemExit) as ctx:
            parse_sfstri_yaml(self.dir)
        self.assertEqual(ctx.exception.code, 2)

    def test_schema_violation_exits_with_two(self):
        self.write("grid:\n  workers: 0\n")
        with self.assertRaises(SystemExit) as ctx:
            parse_sfstri_yaml(self.dir)
        self.assertEqual(ctx.exception.code, 2)


@pytest.mark.parametrize("text", ["log_level: LOUD\n", "farey_depth: deep\n", "fail_on_issues: 3\n"])
def test_rejected_values(text, tmp_path):
    (tmp_path / CONFIG_NAME).write_text(text, encoding="utf-8")
    with pytest.raises(SystemExit):
        parse_sfstri_yaml(str(tmp_path))
