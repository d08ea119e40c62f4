#!/usr/bin/env python3
"""
Tests for command dispatch, exit statuses and the command line
"""

import json

import pytest
import yaml

from command_runner import Command, CommandRunner
from config_manager import ConfigurationManager
from errors import UsageError
from fs_manager import FileSystemManager
from main import main
from template_renderer import TemplateRenderer


@pytest.fixture
def runner():
    return CommandRunner(config_manager=ConfigurationManager(env_file="missing.env"))


def write_json(path, data):
    path.write_text(json.dumps(data))
    return str(path)


def test_compare_presets(runner):
    report, code = runner.run(Command("compare", {"first": "preset:sphere", "second": "preset:plane"}))
    assert code == 0
    assert report["verdict"] == "Equal"
    assert report["input"] == {"first": "preset:sphere", "second": "preset:plane"}
    assert [c["canonicalEnds"] for c in report["classes"]] == ["empty", "empty"]


def test_classify_preset_reports_euler_characteristic(runner):
    report, code = runner.run(Command("classify", {"preset": "sphere"}))
    assert code == 0
    assert report["eulerCharacteristic"] == 2
    report, _ = runner.run(Command("classify", {"preset": "cantor_tree"}))
    assert "eulerCharacteristic" not in report
    assert report["class"]["planarKind"] == "CantorCompact"


def test_classify_descriptor_file(runner, tmp_path):
    path = write_json(tmp_path / "surface.json", {"genus": "inf", "orient": "O", "ends": "conv(cantor(p), scat(2, 1, np))"})
    report, code = runner.run(Command("classify", {"descriptor": path}))
    assert code == 0
    assert report["class"]["planarKind"] == "CantorMinusPoint"


@pytest.mark.parametrize("cmd, code, error_type", [
    (Command("frobnicate"), 2, "UsageError"),
    (Command("compare", {"first": "preset:sphere"}), 2, "UsageError"),
    (Command("family", {"m": 20}), 2, "UsageError"),
    (Command("family", {"m": 2, "mode": "list"}), 2, "UsageError"),
    (Command("cover", {"catalog": "Z/99"}), 2, "UsageError"),
    (Command("classify", {"descriptor": "does/not/exist.json"}), 2, "UsageError"),
    (Command("rank", {"expr": "sum()"}), 1, "ParseError"),
    (Command("classify", {"preset": "klein_bottle"}), 1, "DescriptorError"),
    (Command("fractal", {"which": "carpet", "op": "retract", "point": ["5/6", "1/2"]}), 1, "FractalError"),
    (Command("fractal", {"which": "torus", "op": "member", "point": ["0", "0"]}), 1, "FractalError"),
    (Command("obstruction", {"p": 4, "m": 1}), 1, "CoverError"),
    (Command("lift", {"witness": True, "denominator": 0}), 2, "UsageError"),
])
def test_error_statuses(runner, cmd, code, error_type):
    report, status = runner.run(cmd)
    assert status == code
    assert report["errorType"] == error_type
    assert report["command"] == cmd.name


def test_family_check(runner):
    report, code = runner.run(Command("family", {"m": 3, "mode": "check"}))
    assert code == 0
    assert report["descriptors"] == 7
    assert report["distinct"] == report["pairs"] == 21


def test_family_emit(runner):
    report, _ = runner.run(Command("family", {"m": 2, "mode": "emit"}))
    assert [entry["ranks"] for entry in report["descriptors"]] == [[1], [2], [1, 2]]


def test_family_limit_follows_configuration():
    config = ConfigurationManager(env_file="missing.env")
    config.set("family", "max_m", 2)
    _, code = CommandRunner(config_manager=config).run(Command("family", {"m": 3}))
    assert code == 2


def test_rank(runner):
    report, code = runner.run(Command("rank", {"expr": "sum(scat(w, 1, np), pt(p))"}))
    assert code == 0
    assert report["rank"] == "w + 1"
    assert report["kernel"] == "empty"


def test_fractal_operations(runner):
    report, _ = runner.run(Command("fractal", {"which": "carpet", "op": "retract", "point": ["5/6", "1/2"],
                                               "no_member_check": True}))
    assert report["retract"] == ["1/6", "1/6"]
    assert report["memberChecked"] is False
    report, _ = runner.run(Command("fractal", {"which": "gasket", "op": "member", "point": ["1/2", "1/2"]}))
    assert report["member"] is True
    report, _ = runner.run(Command("fractal", {"which": "carpet", "op": "rho", "point": ["1/2"]}))
    assert report["rho"] == "1/6"
    report, _ = runner.run(Command("fractal", {"which": "gasket", "op": "witness"}))
    assert report["witness"]["retractedProfileZero"] is True
    report, _ = runner.run(Command("fractal", {"which": "menger", "op": "sweep", "count": 20, "seed": 1}))
    assert report["sweep"]["idempotent"] == 20


def test_cover_from_catalog_and_file(runner, tmp_path):
    report, code = runner.run(Command("cover", {"catalog": "Q8"}))
    assert code == 0
    assert report["order"] == 8
    assert report["regular"] is True
    path = write_json(tmp_path / "z.json", {"type": "translations", "generators": [[1]]})
    report, code = runner.run(Command("cover", {"group": path}))
    assert code == 0
    assert report["order"] == 21
    assert report["interior"] == 19


def test_lift_loop_file(runner, tmp_path):
    loop = [[0, [0, 1]], [[0, "-1/2"], [0, 1]], [[0, "-1/2"], [0, 2]]]
    path = write_json(tmp_path / "loop.json", loop)
    report, code = runner.run(Command("lift", {"loop": path, "denominator": 10}))
    assert code == 0
    assert report["lift"]["case"] == "case1"
    assert report["lift"]["match"] is True


def test_lift_witness(runner):
    report, code = runner.run(Command("lift", {"witness": True}))
    assert code == 0
    assert report["witness"]["winding"] == 1
    assert report["witness"]["profileD"] == 40


def test_main_prints_deterministic_json(capsys):
    assert main(["compare", "preset:sphere", "preset:plane"]) == 0
    first = capsys.readouterr().out
    assert main(["compare", "preset:sphere", "preset:plane"]) == 0
    assert capsys.readouterr().out == first
    assert json.loads(first)["verdict"] == "Equal"


def test_main_summary(capsys):
    assert main(["--summary", "compare", "preset:sphere", "preset:plane"]) == 0
    assert "Verdict: Equal" in capsys.readouterr().out


def test_main_error_statuses(capsys):
    assert main(["rank", "sum()"]) == 1
    assert capsys.readouterr().err.startswith("Error:")
    assert main(["family", "99"]) == 2
    with pytest.raises(SystemExit) as info:
        main(["frobnicate"])
    assert info.value.code == 2


def test_main_writes_yaml_report(tmp_path, capsys):
    target = tmp_path / "out" / "plane.yaml"
    assert main(["--output", str(target), "classify", "--preset", "plane"]) == 0
    assert "Report written to" in capsys.readouterr().out
    report = yaml.safe_load(target.read_text())
    assert report["class"]["canonicalEnds"] == "empty"


def test_main_rejects_bad_config(tmp_path, capsys):
    config = tmp_path / "settings.json"
    config.write_text(json.dumps({"covering": {"element_cap": 0}}))
    assert main(["--config", str(config), "obstruction", "2", "3"]) == 1
    assert "covering.element_cap" in capsys.readouterr().err


def test_render_summary_fallback_and_registration(tmp_path):
    renderer = TemplateRenderer()
    assert renderer.render_summary("nothing", {}) == "nothing: done\n"
    custom = tmp_path / "nothing.txt.j2"
    custom.write_text("{{ command }} -> {{ report.value }}\n")
    renderer.register_template("nothing.txt.j2", str(custom))
    assert renderer.render_summary("nothing", {"value": 3}) == "nothing -> 3\n"


def test_fs_manager_rejects_malformed_files(tmp_path):
    fs = FileSystemManager()
    broken = tmp_path / "broken.json"
    broken.write_text("{not json")
    with pytest.raises(UsageError):
        fs.read_structured(str(broken))
    with pytest.raises(UsageError):
        fs.load_descriptor(write_json(tmp_path / "list.json", [1, 2]))


def test_registered_template_shadows_bundled_one(tmp_path):
    renderer = TemplateRenderer()
    custom = tmp_path / "short.txt.j2"
    custom.write_text("{{ report.verdict }}\n")
    renderer.register_template("compare.txt.j2", str(custom))
    assert renderer.render_summary("compare", {"verdict": "Equal"}) == "Equal\n"
