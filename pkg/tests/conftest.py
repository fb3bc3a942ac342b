import pytest


@pytest.fixture(autouse=True)
def output_dir(monkeypatch, tmp_path):
    """Keep every file the code writes inside the test's tmp dir."""
    out = tmp_path / "out"
    monkeypatch.setenv("COMBCACHE_OUTPUT_DIR", str(out))
    return out
