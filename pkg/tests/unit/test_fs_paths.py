import os
from pathlib import Path

from combcache.shared import fs


def test_base_path(monkeypatch, tmp_path):
    monkeypatch.setenv('COMBCACHE_OUTPUT_DIR', str(tmp_path))
    assert fs.output_base_dir() == str(tmp_path)

    monkeypatch.delenv('COMBCACHE_OUTPUT_DIR')
    assert fs.output_base_dir() == os.path.join(os.getcwd(), '__output')


def test_check_base(output_dir):
    _none = fs._check_base(None)
    _empty = fs._check_base('')
    _directory_name = fs._check_base('directory_name')
    for o in (_none, _empty, _directory_name):
        assert isinstance(o, Path)

    assert str(_none) == fs.output_base_dir() == str(output_dir)
    assert str(_empty) != fs.output_base_dir()
    assert str(_directory_name) == 'directory_name'


def test_ensure_return_type():
    path_str = 'foo/bar/baz'
    path = Path(path_str)

    for p in (path_str, path):
        assert isinstance(fs._ensure_return_type(p, as_path=True), Path)
        assert isinstance(fs._ensure_return_type(p, as_path=False), str)


def test_make_path(output_dir):
    p = 'foo/bar'
    assert fs._make_path(None, False, p) == str(output_dir / p)
    assert fs._make_path('', False, p) == p
    assert fs._make_path('.', False, p) == p
    assert fs._make_path('/abs/jazz', False, p) == '/abs/jazz/' + p


def test_predefined_paths(output_dir):
    assert fs.transcripts_dir() == str(output_dir / fs.TRANSCRIPTS_DIR)
    assert fs.tables_dir(as_path=True) == output_dir / fs.TABLES_DIR


def test_resolve_output(output_dir, tmp_path):
    resolved = fs.resolve_output('sweep.csv', fs.tables_dir())
    assert resolved == str(output_dir / fs.TABLES_DIR / 'sweep.csv')
    assert os.path.isdir(output_dir / fs.TABLES_DIR)

    absolute = tmp_path / 'elsewhere' / 'run.jsonl'
    assert fs.resolve_output(str(absolute), fs.transcripts_dir()) == str(absolute)
    assert os.path.isdir(tmp_path / 'elsewhere')
