import json
import shutil

import pytest

from theta.data import DataError, data_dir, load


def test_bundled_is_consistent(pd):
    pd.check()
    assert len(pd.figure1) == 87 and len(pd.appendix_a) == 79 and len(pd.appendix_b) == 90
    assert pd.columns == pd.vars10 == (1, 2, 3, 4, 5, 8, 9, 14, 15, 60)
    assert len(pd.vars21) == 21 and len(pd.group1_indices) == 48


def test_support_table(pd):
    assert pd.support_table == {"P1": (1, 20), "P2": (21, 27), "P3": (28, 31), "P4": (32, 35),
                                "P5": (36, 36), "P6": (37, 37)}


def test_env_override(tmp_path, monkeypatch):
    monkeypatch.setenv("THETA_DATA_DIR", str(tmp_path))
    assert data_dir() == tmp_path
    with pytest.raises(DataError, match="missing"):
        load()


def _copy(tmp_path):
    d = tmp_path / "d"
    shutil.copytree(data_dir(), d)
    return d


def test_rejects_duplicate_generator(tmp_path):
    d = _copy(tmp_path)
    fig = json.loads((d / "figure1.json").read_text())
    fig["generators"][1]["marked"] = fig["generators"][2]["marked"]
    (d / "figure1.json").write_text(json.dumps(fig))
    with pytest.raises(DataError):
        load(d)
    load(d, check=False)


def test_rejects_bad_measure_value(tmp_path):
    d = _copy(tmp_path)
    c = json.loads((d / "appendix_c.json").read_text())
    c["rows"][0]["values"][0] = 2
    (d / "appendix_c.json").write_text(json.dumps(c))
    with pytest.raises(DataError):
        load(d)
