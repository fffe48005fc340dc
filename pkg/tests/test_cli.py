import io
import json
import os
import subprocess
import sys
import xml.etree.ElementTree as ET

import pytest

from altcurve.cli import dumps, main


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


class TestClassify:
    def test_loop_json(self):
        code, text = run("classify", "--alpha", "7", "--beta", "7", "--json", "--oracle")
        assert code == 0
        d = json.loads(text)
        assert d["class"] == "Loop" and d["oracle_class"] == "Loop" and d["region"] == "E"
        assert set(d) == {"alpha", "beta", "I", "phi", "class", "roots_u", "roots_t", "region", "notes", "oracle_class"}

    def test_cusp_root(self):
        d = json.loads(run("classify", "--alpha", "6", "--beta", "6", "--json")[1])
        assert d["class"] == "Cusp" and d["roots_t"] == [0.5]

    def test_geometry_flag(self):
        code, text = run("classify", "--alpha", "4", "--beta", "4", "--json", "--oracle",
                         "--geometry", "1,1;4,5;0,2")
        assert code == 0 and json.loads(text)["class"] == "DoubleInflection"

    def test_collinear_geometry(self):
        d = json.loads(run("classify", "--alpha", "4", "--beta", "4", "--json", "--geometry", "0,0;1,0;2,0")[1])
        assert d["class"] == "Collinear"

    @pytest.mark.parametrize(
        "argv",
        [
            ("classify", "--alpha", "x", "--beta", "1"),
            ("classify", "--alpha", "nan", "--beta", "1"),
            ("classify", "--beta", "1"),
            ("classify", "--alpha", "1", "--beta", "1", "--geometry", "0,0;1,1"),
            ("classify", "--alpha", "1", "--beta", "1", "--geometry", "0,0;1"),
        ],
    )
    def test_bad_flags(self, argv, capsys):
        assert run(*argv)[0] == 2

    def test_human_output(self):
        code, text = run("classify", "--alpha", "1", "--beta", "1")
        assert code == 0 and "class: Convex" in text


class TestEval:
    def test_csv(self):
        code, text = run("eval", "--alpha", "6", "--beta", "6", "--points", "0,0;1,0;1,1", "--samples", "5", "--csv")
        assert code == 0
        rows = [r.split(",") for r in text.splitlines()]
        assert rows[0] == ["t", "x", "y", "kappa"] and len(rows) == 6
        assert rows[3][3] == "nan"
        assert rows[1][1:3] == ["0", "0"] and rows[-1][1:3] == ["1", "1"]

    def test_json_four_points(self):
        code, text = run("eval", "--alpha", "3", "--beta", "3", "--points", "0,0;1,0;2,1;2,2", "--samples", "3")
        d = json.loads(text)
        assert code == 0 and len(d["t"]) == 3 and d["kappa"][1] is not None

    @pytest.mark.parametrize("points", ["0,0;1,1", "0,0;1;2,2", "a,b;1,1;2,2"])
    def test_malformed(self, points, capsys):
        assert run("eval", "--alpha", "1", "--beta", "1", "--points", points)[0] == 2

    def test_samples_too_small(self, capsys):
        assert run("eval", "--alpha", "1", "--beta", "1", "--points", "0,0;1,0;1,1", "--samples", "1")[0] == 2


class TestFiles:
    def test_diagram(self, tmp_path):
        svg, csv = tmp_path / "d.svg", tmp_path / "d.csv"
        code, _ = run("diagram", "--range=-2,6", "--resolution", "32", "--out", str(svg), "--csv", str(csv))
        assert code == 0
        root = ET.parse(svg).getroot()
        assert root.get("viewBox") == "-2 -6 8 8"
        assert len(csv.read_text().splitlines()) == 1 + 32 * 32

    def test_diagram_unwritable(self, tmp_path, capsys):
        assert run("diagram", "--resolution", "16", "--out", str(tmp_path / "no" / "d.svg"))[0] == 4

    def test_diagram_bad_range(self, tmp_path, capsys):
        assert run("diagram", "--range", "5,1", "--out", str(tmp_path / "d.svg"))[0] == 2
        assert run("diagram", "--resolution", "4", "--out", str(tmp_path / "d.svg"))[0] == 2

    def test_examples(self, tmp_path):
        code, _ = run("examples", "--outdir", str(tmp_path / "gal"))
        assert code == 0
        names = sorted(os.listdir(tmp_path / "gal"))
        assert names == [f"{c}.svg" for c in "abcdefghi"]
        meta = ET.parse(tmp_path / "gal" / "d.svg").getroot().find("{http://www.w3.org/2000/svg}metadata").text
        assert json.loads(meta)["class"] == "Loop"

    def test_examples_unwritable(self, tmp_path, capsys):
        blocker = tmp_path / "file"
        blocker.write_text("x")
        assert run("examples", "--outdir", str(blocker))[0] == 4


class TestDegenerate:
    def test_json(self):
        code, text = run("degenerate", "--a", "1", "--b", "-4", "--m", "2", "--json")
        d = json.loads(text)
        assert code == 0
        assert d["inflections"] == 1 and d["inflection_t"] == pytest.approx([1 / 3])
        assert d["cusp"] is False and d["loop"] is False

    def test_zero_offset(self, capsys):
        assert run("degenerate", "--a", "1", "--b", "1", "--m", "0")[0] == 2
        assert run("degenerate", "--a", "0", "--b", "1", "--m", "1")[0] == 2


class TestDumps:
    def test_seventeen_digits(self):
        assert dumps(0.1) == "0.10000000000000001"
        assert json.loads(dumps({"x": [1.0 / 3.0, float("nan"), True, None, 2]})) == {"x": [1.0 / 3.0, None, True, None, 2]}

    def test_rejects_unknown(self):
        with pytest.raises(TypeError):
            dumps(object())


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "altcurve", "classify", "--alpha", "4", "--beta", "4", "--json"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["class"] == "DoubleInflection"
