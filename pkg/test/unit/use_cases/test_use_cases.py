import os
import tempfile
import unittest
from argparse import Namespace

from src.core.configuration import Configuration
from src.core.triangulation import read_triangulation, write_triangulation
from src.use_cases.bound import Bound
from src.use_cases.build import Build
from src.use_cases.grid import Grid, run_instance
from src.use_cases.homology import Homology
from src.use_cases.lst import LayeredSolidTorus
from src.use_cases.norm import Norm
from src.use_cases.subdivide import Subdivide
from src.use_cases.verify import Verify
from src.use_cases.walk import Walk


def _last(text):
    return text.strip().splitlines()[-1]


def test_norm_report():
    uc = Norm(Configuration(), Namespace(slope="2/5"))
    text = uc.report()
    assert "[0;2,2] norm=4" in text
    assert "complement 3/5: norm=4" in text
    assert _last(text) == "RESULT ok norm slope=2/5 norm=4"


def test_walk_report():
    uc = Walk(Configuration(), Namespace(slope="2/5", depth=None))
    text = uc.report()
    assert "length: 3" in text
    assert _last(text) == "RESULT ok walk slope=2/5 length=3"
    assert uc.ok


def test_bound_report():
    uc = Bound(Configuration(), Namespace(seifert="sfs o a=0 b=1 fibres=2/1,3/1"))
    text = uc.report()
    assert "upper bound: 622" in text
    assert _last(text) == "RESULT ok bound upper=622 proxy=7"


def test_options_follow_configuration():
    config = Configuration()
    config.use_case_options.norm.enabled = False
    assert not Norm(config, Namespace(slope="1/2")).options.enabled
    assert Walk(config, Namespace(slope="1/2", depth=None)).options.enabled


def test_grid_instance_row():
    row = run_instance("sfs o a=0 b=1 fibres=2/1")
    assert row.passed
    assert row.tets <= row.bound
    assert row.line().startswith("pass  sfs o a=0 b=1 fibres=2/1")


class TestFileUseCases(unittest.TestCase):
    def setUp(self):
        self.dir = tempfile.mkdtemp()
        self.config = Configuration(output_dir=self.dir)

    def tearDown(self):
        for name in os.listdir(self.dir):
            os.remove(os.path.join(self.dir, name))
        os.rmdir(self.dir)

    def test_lst_writes_a_verified_file(self):
        uc = LayeredSolidTorus(self.config, Namespace(p=5, q=2, out=None))
        text = uc.report()
        self.assertTrue(uc.ok)
        self.assertIn("peripheral kernel: 5 mu + 2 lambda", text)
        path = os.path.join(self.dir, "lst_5_2.tri")
        self.assertTrue(os.path.exists(path))
        self.assertTrue(_last(text).startswith("RESULT ok lst p=5 q=2"))

    def test_build_then_verify_round_trip(self):
        out = os.path.join(self.dir, "spot.tri")
        build = Build(self.config, Namespace(seifert="sfs o a=0 b=1 fibres=2/1,3/1", out=out))
        text = build.report()
        self.assertTrue(build.ok)
        self.assertIn("h1=Z", _last(text))

        verify = Verify(self.config, Namespace(file=out))
        text = verify.report()
        self.assertTrue(verify.ok)
        self.assertIn("H1: Z", text)
        self.assertIn("valid=yes", _last(text))

        homology = Homology(self.config, Namespace(file=out, k=1))
        self.assertEqual(_last(homology.report()), "RESULT ok homology k=1 group=Z")

    def test_subdivide_reports_invariance(self):
        path = os.path.join(self.dir, "lst.tri")
        LayeredSolidTorus(self.config, Namespace(p=3, q=1, out=path)).report()
        tet_count = read_triangulation(path).tet_count
        out = os.path.join(self.dir, "fine.tri")
        uc = Subdivide(self.config, Namespace(file=path, n=1, out=out))
        text = uc.report()
        self.assertTrue(uc.ok)
        self.assertIn("invariant", text)
        self.assertEqual(read_triangulation(out).tet_count, 24 * tet_count)

    def test_verify_flags_invalid_complex(self):
        from src.core.triangulation import TriangulationBuilder, VertexPerm

        b = TriangulationBuilder(1)
        b.glue(0, 3, 0, VertexPerm((1, 0, 3, 2)))
        path = os.path.join(self.dir, "bad.tri")
        write_triangulation(b.build(), path)
        uc = Verify(self.config, Namespace(file=path))
        text = uc.report()
        self.assertFalse(uc.ok)
        self.assertIn("identified with itself in reverse", text)
        self.assertTrue(_last(text).startswith("RESULT fail verify"))

    def test_grid_on_a_small_range(self):
        self.config.grid.b_max = 1
        self.config.grid.max_fibres = 1
        self.config.grid.orientable_only = True
        uc = Grid(self.config, Namespace(pmax=3, chi_min=1, workers=1))
        text = uc.report()
        self.assertTrue(uc.ok)
        self.assertIn("instances: 4 passed: 4 failed: 0", text)
