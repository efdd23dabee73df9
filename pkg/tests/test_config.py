"""Config file parsing: typed keys, defaults, and typo rejection."""

import math

import pytest

from vlc_noma.config import ConfigError, ExperimentConfig, load_config, parse_config_text


def test_defaults_match_simulation_table():
    cfg = ExperimentConfig()
    assert cfg.room_length == 6.0 and cfg.room_width == 6.0 and cfg.room_height == 3.0
    assert cfg.led_power == 1.0
    assert cfg.semi_angle_deg == 60.0
    assert cfg.conversion_efficiency == 0.44
    assert cfg.pd_area == 1e-4
    assert cfg.pd_responsivity == 0.54
    assert cfg.fov_deg == 60.0
    assert cfg.filter_gain == 1.0
    assert cfg.refractive_index == 1.5
    assert cfg.noise_power == 1e-14
    assert len(cfg.fixed_positions) == 6


def test_derived_objects_mirror_scalars():
    cfg = ExperimentConfig(led_power=2.0, fov_deg=45.0)
    assert cfg.room().led_position() == (3.0, 3.0, 3.0)
    led = cfg.led()
    assert led.transmit_power == 2.0
    assert led.semi_angle == pytest.approx(math.radians(60.0))
    pd = cfg.photodiode()
    assert pd.fov == pytest.approx(math.radians(45.0))
    assert pd.concentrator_index == 1.5


def test_grids():
    cfg = ExperimentConfig(snr_db_min=10.0, snr_db_max=12.0, snr_db_step=1.0,
                           users_min=2, users_max=4)
    assert cfg.snr_db_grid() == (10.0, 11.0, 12.0)
    assert cfg.user_counts() == (2, 3, 4)


def test_parse_overrides_and_comments():
    cfg = parse_config_text(
        """
        # physical overrides
        led_power = 2.5
        noise_power = 2e-14

        trials = 32
        seed = 99
        power_grid = 0.5, 1, 2
        fixed_positions = 1,1,0; 2,2,0
        """
    )
    assert cfg.led_power == 2.5
    assert cfg.noise_power == 2e-14
    assert cfg.trials == 32
    assert cfg.seed == 99
    assert cfg.power_grid == (0.5, 1.0, 2.0)
    assert cfg.fixed_positions == ((1.0, 1.0, 0.0), (2.0, 2.0, 0.0))
    assert cfg.room_length == 6.0  # untouched default


def test_unknown_key_is_an_error():
    with pytest.raises(ConfigError, match="unknown key"):
        parse_config_text("led_povver = 1.0\n")


def test_duplicate_key_is_an_error():
    with pytest.raises(ConfigError, match="duplicate"):
        parse_config_text("seed = 1\nseed = 2\n")


def test_bad_value_is_an_error():
    with pytest.raises(ConfigError, match="bad value"):
        parse_config_text("led_power = bright\n")
    with pytest.raises(ConfigError, match="bad value"):
        parse_config_text("fixed_positions = 1,2\n")
    with pytest.raises(ConfigError):
        parse_config_text("just some words\n")


def test_semantic_validation():
    with pytest.raises(ConfigError):
        parse_config_text("trials = 0\n")
    with pytest.raises(ConfigError):
        parse_config_text("power_grid = 2, 1\n")
    with pytest.raises(ConfigError):
        parse_config_text("users_min = 5\nusers_max = 3\n")
    with pytest.raises(ConfigError, match="outside the room"):
        parse_config_text("fixed_positions = 7,1,0\n")


def test_load_config_roundtrip(tmp_path):
    path = tmp_path / "run.cfg"
    path.write_text("seed = 5\ntrials = 10\nled_power = 0.5\n")
    cfg = load_config(str(path))
    assert (cfg.seed, cfg.trials, cfg.led_power) == (5, 10, 0.5)
