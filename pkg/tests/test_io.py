import xml.etree.ElementTree as ET

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nhskin import ConfigError, ValidationError, obc_spectrum
from nhskin.io import (load_config, model_from_config, model_to_config,
                       parse_config, read_csv, write_csv, write_gbz_csv,
                       write_spectrum_csv, write_svg_heatmap,
                       write_svg_scatter)

finite_floats = st.floats(allow_nan=False, allow_infinity=False,
                          width=64)


@given(values=st.lists(finite_floats, min_size=1, max_size=50))
@settings(max_examples=50, deadline=None)
def test_csv_roundtrip_is_exact(tmp_path_factory, values):
    path = tmp_path_factory.mktemp("csv") / "vals.csv"
    write_csv(path, ["v"], ((float(v),) for v in values))
    _, rows = read_csv(path)
    back = [float(r[0]) for r in rows]
    assert back == values   # bit-exact, not approximately equal


def test_spectrum_csv_roundtrip(tmp_path, model_a):
    spec = obc_spectrum(model_a)
    path = tmp_path / "spectrum.csv"
    write_spectrum_csv(path, spec)
    header, rows = read_csv(path)
    assert header == ["index", "Re_E", "Im_E"]
    back = np.array([complex(float(r[1]), float(r[2])) for r in rows])
    assert np.array_equal(back, spec.eigenvalues)


def test_gbz_csv_columns(tmp_path, model_a):
    from nhskin import gbz_compute
    g = gbz_compute(model_a.with_(gamma=0.0, n_cells=40))
    path = tmp_path / "gbz.csv"
    write_gbz_csv(path, g)
    header, rows = read_csv(path)
    assert header == ["band_pair", "Re_beta", "Im_beta", "Re_E", "Im_E"]
    assert len(rows) == len(g.betas)
    back = np.array([complex(float(r[1]), float(r[2])) for r in rows])
    assert np.array_equal(back, g.betas)


def test_svg_heatmap_is_valid_xml(tmp_path):
    path = tmp_path / "h.svg"
    write_svg_heatmap(path, np.arange(12.0).reshape(3, 4), title="demo")
    root = ET.parse(path).getroot()
    assert root.tag.endswith("svg")
    rects = [e for e in root.iter() if e.tag.endswith("rect")]
    assert len(rects) == 12


def test_svg_heatmap_rejects_1d(tmp_path):
    with pytest.raises(ValidationError):
        write_svg_heatmap(tmp_path / "h.svg", np.arange(5.0))


def test_svg_scatter_is_valid_xml(tmp_path):
    path = tmp_path / "s.svg"
    write_svg_scatter(path, [0.1, -0.5], [0.2, 0.3])
    root = ET.parse(path).getroot()
    circles = [e for e in root.iter() if e.tag.endswith("circle")]
    assert len(circles) == 3   # unit circle + 2 points


def test_parse_config_happy_path():
    cfg = parse_config("""
# comment
[model]
family = GT
t1 = 1
t2 = 2
t3 = 3
t4 = 4

[evolve]
horizon = 5
""")
    assert cfg["model"]["t3"] == "3"
    assert cfg["evolve"]["horizon"] == "5"


def test_parse_config_unknown_key_is_line_anchored():
    text = "[model]\nfamily = GT\nbogus = 1\n"
    with pytest.raises(ConfigError, match=r"<config>:3: unknown key 'bogus'"):
        parse_config(text)


def test_parse_config_unknown_section():
    with pytest.raises(ConfigError, match=r":1: unknown section"):
        parse_config("[nope]\n")


def test_parse_config_key_outside_section():
    with pytest.raises(ConfigError, match=r":1: key outside"):
        parse_config("t1 = 1\n")


def test_parse_config_duplicate_key():
    with pytest.raises(ConfigError, match=r":3: duplicate key"):
        parse_config("[model]\nt1 = 1\nt1 = 2\n")


def test_parse_config_missing_equals():
    with pytest.raises(ConfigError, match=r":2: expected"):
        parse_config("[model]\njust words\n")


def test_model_config_roundtrip(model_b):
    text = model_to_config(model_b)
    back = model_from_config(parse_config(text))
    assert back == model_b


def test_model_from_config_requires_model_section():
    with pytest.raises(ConfigError, match="no \\[model\\]"):
        model_from_config({})


def test_model_from_config_missing_keys():
    with pytest.raises(ConfigError, match="missing keys"):
        model_from_config(parse_config("[model]\nfamily = GT\n"))


def test_load_config_uses_filename_in_errors(tmp_path):
    p = tmp_path / "run.cfg"
    p.write_text("[model]\nwhat = 1\n")
    with pytest.raises(ConfigError, match=r"run\.cfg:2"):
        load_config(p)
