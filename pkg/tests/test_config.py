import pytest

from bongard_forge.config import ENV_VAR, Config, config_from_dict, config_to_dict, load_config


def test_defaults_without_file(monkeypatch):
    monkeypatch.delenv(ENV_VAR, raising=False)
    assert load_config() == Config()


def test_toml_overrides(tmp_path, monkeypatch):
    path = tmp_path / "c.toml"
    path.write_text("[render]\nstroke_width = 5\n\n[generate]\nhard_negative_count = 3\n")
    cfg = load_config(path)
    assert cfg.render.stroke_width == 5.0 and isinstance(cfg.render.stroke_width, float)
    assert cfg.generate.hard_negative_count == 3
    assert cfg.render.canvas == (512, 512)
    monkeypatch.setenv(ENV_VAR, str(path))
    assert load_config() == cfg
    assert config_from_dict(config_to_dict(cfg)) == cfg


@pytest.mark.parametrize("text", ["[render]\nwidth = 3\n", "[colours]\nink = 1\n"])
def test_unknown_keys_rejected(tmp_path, text):
    path = tmp_path / "c.toml"
    path.write_text(text)
    with pytest.raises(ValueError):
        load_config(path)
