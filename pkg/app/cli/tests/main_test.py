import csv
import json

import pytest
import yaml

from app.cli.main import main


def rows(path):
    with open(path, newline="", encoding="utf-8") as f:
        return list(csv.DictReader(f))


def test_consumption(capsys):
    assert main(["consumption", "--preset", "tree-node"]) == 0
    assert "total:    22.67 J/day" in capsys.readouterr().out
    assert main(["consumption", "--preset", "gas-node"]) == 0
    assert "total:    227.92 J/day" in capsys.readouterr().out


@pytest.mark.parametrize("preset, wh", [("tree-node", "2.298"), ("gas-node", "2.311")])
def test_size(capsys, preset, wh):
    assert main(["size", "--preset", preset]) == 0
    assert f"= {wh} Wh (charge-rate term binds)" in capsys.readouterr().out


def test_size_of_a_non_rechargeable_pack(capsys):
    assert main(["size", "--preset", "tree-node", "--target-days", "926"]) == 0
    assert "3 alkaline cells" in capsys.readouterr().out


def test_autonomy(capsys):
    assert main(["autonomy", "--preset", "tree-node"]) == 0
    assert "autonomy: 1318.8 days" in capsys.readouterr().out


def test_autonomy_without_charging(capsys):
    assert main(["autonomy", "--preset", "tree-node", "--chemistry", "alkaline",
                 "--capacity-j", "21000", "--n", "0"]) == 0
    assert "autonomy: 926.5 days" in capsys.readouterr().out
    assert main(["autonomy", "--preset", "gas-node", "--capacity-j", "208000", "--n", "0"]) == 0
    assert "autonomy: 912.6 days" in capsys.readouterr().out


def test_autonomy_is_unlimited_above_the_bound(capsys):
    assert main(["autonomy", "--preset", "tree-node", "--capacity-wh", "2.88"]) == 0
    assert "autonomy: inf" in capsys.readouterr().out


def test_size_reports_the_fewest_visits_and_the_shortest_charge(capsys):
    assert main(["size", "--preset", "tree-node"]) == 0
    out = capsys.readouterr().out
    assert "with 1.80 Wh: unlimited from 16 interventions per year" in out
    assert "with 1.80 Wh: each intervention refills one interval after 383 s" in out


def test_size_with_rounded_daily_energy(capsys):
    assert main(["size", "--preset", "tree-node", "--daily-energy-j", "22.7"]) == 0
    assert "capacity bound: 8285.5 J = 2.302 Wh (charge-rate term binds)" in capsys.readouterr().out


def test_size_uses_the_overridden_battery(tmp_path, capsys):
    path = tmp_path / "mini.yaml"
    path.write_text(yaml.safe_dump({"name": "mini", "node": {"sleep_power_mw": 0.025},
                                    "battery": {"chemistry": "lco", "capacity_wh": 1.0}}), encoding="utf-8")
    # LCO loses 3% a year on top of the sleep draw, LTO nothing
    assert main(["size", "--config", str(path)]) == 0
    assert "mini: 2.46 J/day" in capsys.readouterr().out
    assert main(["size", "--config", str(path), "--chemistry", "lto"]) == 0
    assert "mini: 2.16 J/day" in capsys.readouterr().out


def test_autonomy_from_amp_hours(capsys):
    assert main(["autonomy", "--preset", "tree-node", "--capacity-ah", "0.5"]) == 0
    out = capsys.readouterr().out
    assert "6480 J (1.80 Wh)" in out
    assert "autonomy: 1318.8 days" in out


def test_verify(capsys):
    assert main(["verify", "--preset", "tree-node"]) == 0
    out = capsys.readouterr().out
    assert "tree-node: 3650 days, verdict agree" in out
    assert "simulated depletion:  day 1215" in out
    assert "averaged autonomy:    1318.8 days, 103.8 days later" in out


def test_verify_large_battery(capsys):
    assert main(["verify", "--preset", "tree-node", "--capacity-wh", "2.88"]) == 0
    out = capsys.readouterr().out
    assert "verdict non-depletion-confirmed" in out
    assert "simulated depletion:  none" in out


def test_verify_rejects_a_fleet():
    assert main(["verify", "--preset", "tree-fleet"]) == 2


def test_simulate(tmp_path, capsys):
    out = tmp_path / "run"
    assert main(["simulate", "--preset", "tree-node", "--seed", "1", "--out", str(out)]) == 0
    assert "tree-node: depletion day 1215" in capsys.readouterr().out
    summary = json.loads((out / "summary.json").read_text())
    assert summary["depletion_day"] == {"tree-node": 1215}
    manifest = json.loads((out / "manifest.json").read_text())
    assert manifest["seed"] == 1
    assert manifest["config_hash"].startswith("sha256:")
    assert manifest["artifacts"] == ["interventions.csv", "summary.json", "trace.csv"]
    interventions = rows(out / "interventions.csv")
    assert interventions and all(row["aligned"] == "true" for row in interventions)


def test_simulate_large_battery(tmp_path):
    out = tmp_path / "run"
    assert main(["simulate", "--preset", "tree-node", "--capacity-wh", "2.88", "--out", str(out)]) == 0
    assert json.loads((out / "summary.json").read_text())["depletion_day"] == {"tree-node": None}


def test_simulate_is_reproducible(tmp_path):
    first, second = tmp_path / "a", tmp_path / "b"
    for out in (first, second):
        assert main(["simulate", "--preset", "tree-fleet", "--seed", "7", "--out", str(out)]) == 0
    for name in ("trace.csv", "interventions.csv", "summary.json"):
        assert (first / name).read_bytes() == (second / name).read_bytes()


def test_reproduce_capacity_vs_n(tmp_path):
    assert main(["reproduce", "capacity-vs-n", "--out", str(tmp_path)]) == 0
    table = rows(tmp_path / "capacity-vs-n.csv")
    row = next(r for r in table if r["profile"] == "tree-node" and r["chemistry"] == "lco-1C"
               and r["interventions_per_year"] == "12")
    assert float(row["min_capacity_j"]) == pytest.approx(8273.45, abs=0.01)
    assert len(table) == 2 * 2 * 52


def test_reproduce_autonomy_vs_time(tmp_path):
    assert main(["reproduce", "autonomy-vs-time", "--out", str(tmp_path), "--svg"]) == 0
    table = rows(tmp_path / "autonomy-vs-time.csv")
    row = next(r for r in table if r["capacity_wh"] == "1.8" and r["charge_rate_c"] == "1.0"
               and r["charge_time_s"] == "300.0")
    assert float(row["autonomy_days"]) == pytest.approx(1318.8, abs=0.05)
    assert (tmp_path / "autonomy-vs-time.svg").is_file()


def test_reproduce_soc(tmp_path):
    assert main(["reproduce", "soc", "--out", str(tmp_path)]) == 0
    table = rows(tmp_path / "soc.csv")
    large = [float(r["soc"]) for r in table if r["capacity_wh"] == "2.88"]
    assert len(large) == 3650
    assert min(large) > 0
    small = [float(r["soc"]) for r in table if r["capacity_wh"] == "0.36"]
    assert min(small) == 0


def test_assess_wpt(capsys):
    assert main(["assess-wpt"]) == 0
    out = capsys.readouterr().out
    assert "RF at 0.3 m from 27 dBm: 10.0 dBm" in out
    assert main(["assess-wpt", "--require-feasible"]) == 3


def test_presets(capsys):
    assert main(["presets"]) == 0
    out = capsys.readouterr().out
    assert "tree-node" in out and "gas-node" in out and "tree-fleet" in out


def test_bad_config_exits_with_two(tmp_path, capsys):
    path = tmp_path / "bad.yaml"
    path.write_text(yaml.safe_dump({"name": "bad", "node": {"sleep_power_mw": 0.025},
                                    "battery": {"capacity_wh": 1.0, "voltage": 3.7}}), encoding="utf-8")
    assert main(["consumption", "--config", str(path)]) == 2
    assert "battery.voltage" in capsys.readouterr().err


def test_unknown_preset_exits_with_two():
    assert main(["consumption", "--preset", "oak-node"]) == 2


def test_unwritable_output_exits_with_four(tmp_path):
    blocker = tmp_path / "file"
    blocker.write_text("", encoding="utf-8")
    assert main(["simulate", "--preset", "tree-node", "--out", str(blocker / "run")]) == 4
