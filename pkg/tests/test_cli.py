"""Tests for the CLI, catalog verification and SVG map rendering."""

import argparse
import json
from fractions import Fraction

import pytest

from tricurves.cli import (
    CatalogEntry,
    MapSpec,
    catalog_verify,
    load_catalog,
    main,
    parse_fraction,
    render_map,
)

F = Fraction


class TestParseFraction:
    def test_accepts_fractions(self):
        assert parse_fraction("5/3") == F(5, 3)
        assert parse_fraction("7") == F(7)

    def test_rejects_decimals_with_hint(self):
        with pytest.raises(argparse.ArgumentTypeError, match="fraction"):
            parse_fraction("1.25")

    def test_rejects_garbage(self):
        with pytest.raises(argparse.ArgumentTypeError):
            parse_fraction("abc")


class TestCatalog:
    def test_loads_and_has_unique_ids(self):
        entries = load_catalog()
        assert len(entries) > 50
        ids = {e.id for e in entries}
        assert len(ids) == len(entries)

    def test_families_present(self):
        entries = load_catalog()
        fams = {e.family for e in entries}
        assert fams == {"IT", "RT", "Special", "NewNonSpecial", "Sporadic"}
        # Table 1 instantiations K=4..8, n<=3 for both kinds
        for K in range(4, 9):
            for kind in ("it", "rt"):
                assert sum(1 for e in entries
                           if e.id.startswith(f"{kind}_{K}_")) >= 3

    def test_table2_degrees(self):
        entries = {e.id: e for e in load_catalog()}
        degrees = {
            "table2_m4": 100, "table2_m5": 3344, "table2_m6": 196,
            "table2_m6b": 189, "table2_m7": 220, "table2_m8": 1386,
            "table2_m9": 559, "table2_m11": 1420, "table2_m12": 437,
            "table2_m15": 6384, "table2_m16": 1196, "table2_m21": 2301,
            "table2_m22": 2610, "table2_m26": 10440, "table2_m31": 2926,
        }
        for eid, deg in degrees.items():
            assert entries[eid].data["degree"] == deg

    def test_deep_entry_skipped_by_default(self):
        entries = {e.id: e for e in load_catalog()}
        report = catalog_verify(entries["table2_m99"])
        assert report.skipped and report.passed

    def test_family_entry_verifies(self):
        entries = {e.id: e for e in load_catalog()}
        for eid in ("it_3_1_1", "it_4_2_1", "rt_4_3_2", "rt_4_5_4"):
            report = catalog_verify(entries[eid])
            assert report.passed, report.to_json()

    def test_new_nonspecial_verifies(self):
        entries = {e.id: e for e in load_catalog()}
        report = catalog_verify(entries["new_nonspecial_4"])
        assert report.passed, report.to_json()

    def test_special_k4_verifies(self):
        entries = {e.id: e for e in load_catalog()}
        report = catalog_verify(entries["special_4"])
        assert report.passed, report.to_json()
        fields = {c.field for c in report.checks}
        assert "deficiency" in fields and "degree_identity" in fields

    def test_sporadic_wpp_verifies(self):
        entries = {e.id: e for e in load_catalog()}
        report = catalog_verify(entries["table2_m4"])
        assert report.passed, report.to_json()

    def test_corrupted_degree_fails_with_evidence(self):
        entries = {e.id: e for e in load_catalog()}
        data = dict(entries["table2_m4"].data)
        data["degree"] = 101
        bad = CatalogEntry("bad", "Sporadic", data)
        report = catalog_verify(bad)
        assert not report.passed
        failing = [c for c in report.checks if not c.ok]
        assert any("degree" in c.field for c in failing)

    def test_unknown_family_reported(self):
        report = catalog_verify(CatalogEntry("x", "Nope", {"m": 2}))
        assert not report.passed


class TestRenderMap:
    def test_deterministic(self):
        spec = MapSpec(k_range=(3, 4), n_max=2)
        assert render_map(spec) == render_map(spec)

    def test_centers_exact(self):
        svg = render_map(MapSpec(k_range=(3, 5), n_max=3))
        # IT centers at (KN/(M+N), K), RT centers at ((M+N)/M, K)
        assert 'data-id="IT_4(2,1)" data-s="4/3" data-t="4"' in svg
        assert 'data-id="RT_4(2,1)" data-s="3/2" data-t="4"' in svg
        assert 'data-id="IT_5(8,3)" data-s="15/11" data-t="5"' in svg
        assert 'data-id="RT_5(8,3)" data-s="11/8" data-t="5"' in svg

    def test_default_viewport(self):
        spec = MapSpec()
        assert spec.s_range == (F(1), F(3))
        assert spec.t_range == (F(5, 2), F(6))

    def test_empty_viewport_rejected(self):
        with pytest.raises(ValueError):
            render_map(MapSpec(s_range=(F(3), F(1))))

    def test_from_dict(self):
        spec = MapSpec.from_dict(
            {"viewport": {"s": ["1", "3"], "t": ["5/2", "6"]},
             "k_range": [3, 4], "samples": 8})
        assert spec.t_range == (F(5, 2), F(6))
        assert spec.samples == 8


class TestCommands:
    def test_verify_single_entry_exit_zero(self, capsys):
        assert main(["verify", "--entry", "it_3_1_1"]) == 0
        out = capsys.readouterr().out
        assert out.startswith("PASS it_3_1_1")

    def test_verify_json_lines(self, capsys):
        assert main(["verify", "--entry", "rt_4_2_1", "--json"]) == 0
        line = capsys.readouterr().out.strip()
        doc = json.loads(line)
        assert doc["id"] == "rt_4_2_1" and doc["passed"]

    def test_verify_missing_entry(self, capsys):
        assert main(["verify", "--entry", "nope"]) == 2

    def test_reduce(self, capsys):
        assert main(["reduce", "--slopes", "5/2", "4"]) == 0
        out = capsys.readouterr().out
        assert "(5/2, 4)" in out and "(5/3, 3)" in out

    def test_wpp_roundtrip(self, capsys):
        assert main(["wpp", "--slopes", "8/5", "15/4"]) == 0
        assert "P(8,15,43)" in capsys.readouterr().out
        assert main(["wpp", "--weights", "8", "15", "43"]) == 0
        assert "(8/5, 15/4)" in capsys.readouterr().out

    def test_degree(self, capsys):
        assert main(["degree", "--weights", "7", "9", "10",
                     "--m", "4", "--dmax", "150"]) == 0
        out = capsys.readouterr().out
        assert "degree = 100" in out and "C^2 = -8/63" in out

    def test_degree_not_found(self, capsys):
        assert main(["degree", "--weights", "7", "9", "10",
                     "--m", "4", "--dmax", "50"]) == 1

    def test_certify(self, capsys):
        assert main(["certify", "--slopes", "3/2", "5"]) == 0
        assert "MDS" in capsys.readouterr().out

    def test_detect_known_point(self, capsys):
        assert main(["detect", "--slopes", "3/2", "3", "--m", "2"]) == 0
        assert "IT_3(1,1)" in capsys.readouterr().out

    def test_detect_triangle(self, capsys):
        assert main(["detect", "--triangle", "0,0", "1,0", "2,3",
                     "--m", "2"]) == 0
        assert "C^2 = -1" in capsys.readouterr().out

    def test_search(self, capsys):
        assert main(["search", "--region", "1", "2", "3", "5",
                     "--mmax", "3"]) == 0
        out = capsys.readouterr().out
        assert "IT_3(1,1): m=2" in out and "IT_4(2,1): m=3" in out

    def test_map_to_file(self, tmp_path, capsys):
        spec = tmp_path / "spec.json"
        spec.write_text(json.dumps(
            {"viewport": {"s": ["1", "2"], "t": ["5/2", "9/2"]},
             "k_range": [3, 4], "samples": 6}))
        out = tmp_path / "map.svg"
        assert main(["map", "--spec", str(spec), "-o", str(out)]) == 0
        svg = out.read_text()
        assert svg.startswith("<svg") and svg.rstrip().endswith("</svg>")
