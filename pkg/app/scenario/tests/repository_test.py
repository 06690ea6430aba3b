import pytest
import yaml

from app.errors import ConfigError, UnknownPresetError
from app.scenario import builders, repository
from app.settings import Settings


@pytest.fixture
def tree():
    return repository.load_preset("tree-node")


def minimal(**changes):
    data = {
        "name": "mini",
        "node": {"sleep_power_mw": 0.025},
        "battery": {"chemistry": "lco", "capacity_wh": 1.0},
    }
    data.update(changes)
    return data


def test_bundled_presets():
    assert repository.list_presets() == ["gas-node", "tree-fleet", "tree-node"]


def test_preset_daily_energy(tree):
    assert builders.node_daily_energy(tree) == pytest.approx(22.67, abs=0.01)
    assert builders.node_daily_energy(repository.load_preset("gas-node")) == pytest.approx(227.92, abs=0.01)


@pytest.mark.parametrize("name", ["tree-node", "gas-node", "tree-fleet"])
def test_presets_round_trip(name):
    config = repository.load_preset(name)
    assert repository.parse_config(yaml.safe_load(repository.dump_config(config))) == config


def test_unknown_key_reports_its_path():
    data = minimal(battery={"chemistry": "lco", "capacity_wh": 1.0, "capacity_kwh": 1.0})
    with pytest.raises(ConfigError) as error:
        repository.parse_config(data)
    assert error.value.key_path == "battery.capacity_kwh"


def test_unitless_key_is_rejected():
    with pytest.raises(ConfigError) as error:
        repository.parse_config(minimal(node={"sleep_power": 0.025}))
    assert error.value.key_path.startswith("node.")


def test_exactly_one_capacity():
    with pytest.raises(ConfigError):
        repository.parse_config(minimal(battery={"chemistry": "lco", "capacity_wh": 1.0, "capacity_j": 3600.0}))
    with pytest.raises(ConfigError):
        repository.parse_config(minimal(battery={"chemistry": "lco"}))


def test_document_must_be_a_mapping():
    with pytest.raises(ConfigError):
        repository.parse_config(["not", "a", "mapping"])


def test_unknown_preset():
    with pytest.raises(UnknownPresetError):
        repository.load_preset("oak-node")


def test_preset_dir_from_environment(tmp_path, monkeypatch):
    (tmp_path / "mini.yaml").write_text(yaml.safe_dump(minimal()), encoding="utf-8")
    monkeypatch.setenv("AERPROV_PRESET_DIR", str(tmp_path))
    settings = Settings()
    assert repository.list_presets(settings) == ["mini"]
    assert repository.load_preset("mini", settings).battery.capacity_in_joules == pytest.approx(3600.0)


def test_broken_yaml(tmp_path):
    path = tmp_path / "broken.yaml"
    path.write_text("name: [unclosed", encoding="utf-8")
    with pytest.raises(ConfigError):
        repository.load_config(path)
    with pytest.raises(ConfigError):
        repository.load_config(tmp_path / "missing.yaml")


def test_config_hash(tree):
    assert repository.config_hash(tree) == repository.config_hash(repository.load_preset("tree-node"))
    assert repository.config_hash(tree) != repository.config_hash(repository.load_preset("gas-node"))
    assert repository.config_hash(tree).startswith("sha256:")


def test_provisioning_params_with_overrides(tree):
    params = builders.provisioning_params(tree)
    assert params.battery.capacity_j == pytest.approx(6480.0)
    assert params.interventions_per_year == 12
    alkaline = builders.with_overrides(tree.battery, capacity_j=21000.0, chemistry="alkaline")
    params = builders.provisioning_params(tree, interventions_per_year=0, battery=alkaline)
    assert params.battery.charge_rate_c == 0
    assert params.battery.capacity_j == 21000.0


def test_unknown_chemistry(tree):
    battery = builders.with_overrides(tree.battery, chemistry="nimh")
    with pytest.raises(ConfigError) as error:
        builders.battery_spec(tree, battery)
    assert error.value.key_path == "battery.chemistry"


def test_chemistry_override_in_the_document():
    config = repository.parse_config(minimal(chemistries={"lco": {"label": "LCO fast", "nominal_voltage_v": 3.7,
                                                                  "charge_rate_c": 2.0}}))
    spec = builders.battery_spec(config)
    assert spec.charge_rate_c == 2.0
    assert spec.chemistry_label == "LCO fast"


def test_default_fleet_is_one_node_on_the_calendar(tree):
    scenario = builders.fleet_scenario(tree)
    assert [node.id for node in scenario.nodes] == ["tree-node"]
    assert scenario.policy.kind == "fixed-calendar"
    assert scenario.policy.interventions_per_year == 12
    assert scenario.uav.max_charge_time_s == 300.0
    assert builders.fleet_scenario(tree, interventions_per_year=24).policy.interventions_per_year == 24


def test_default_fleet_needs_visits(tree):
    with pytest.raises(ConfigError) as error:
        builders.fleet_scenario(tree, interventions_per_year=0)
    assert error.value.key_path == "provisioning.interventions_per_year"


def test_explicit_fleet():
    config = repository.load_preset("tree-fleet")
    scenario = builders.fleet_scenario(config)
    nodes = {node.id: node for node in scenario.nodes}
    assert len(nodes) == 5
    assert nodes["beech-01"].battery.stored_j == pytest.approx(0.6 * 6480.0)
    assert nodes["beech-02"].report_mode == "threshold"
    assert scenario.policy.kind == "soc-triggered"
    assert scenario.uav.alignment.fine_residual_sigma_mm == 4.0
