import json

import pytest

from grtor.config import Settings, load_settings
from grtor.engine.checks import CheckReport
from grtor.engine.linalg import HomologyEntry, HomologyResult, Z
from grtor.errors import ConfigError
from grtor.report import (
    RunManifest,
    envelope,
    homology_frame,
    load_schema,
    payload_hash,
    summarize,
    verdict_frame,
    write_csv,
    write_json,
)


def write_config(tmp_path, text):
    path = tmp_path / 'config.yaml'
    path.write_text(text, encoding='utf-8')
    return path


def test_defaults_when_file_is_missing(tmp_path):
    settings = load_settings(tmp_path / 'nada.yaml')
    assert settings == Settings()


def test_file_values(tmp_path):
    path = write_config(
        tmp_path,
        'ring: q\nseed: 7\nsample:\n  samples: 5\ncoend:\n  n_max: 3\n',
    )
    settings = load_settings(path)
    assert settings.ring == 'q'
    assert settings.seed == 7
    assert settings.sample.samples == 5
    assert settings.sample.seed == 7
    assert settings.coend.n_max == 3
    assert settings.ring_obj.is_field


def test_environment_overrides_file(tmp_path, monkeypatch):
    path = write_config(tmp_path, 'ring: q\nseed: 7\n')
    monkeypatch.setenv('GRTOR_RING', 'fp:3')
    monkeypatch.setenv('GRTOR_SEED', '11')
    monkeypatch.setenv('GRTOR_THREADS', '4')
    settings = load_settings(path)
    assert settings.ring == 'fp:3'
    assert settings.seed == 11
    assert settings.sample.seed == 11
    assert settings.threads == 4


def test_config_path_from_environment(tmp_path, monkeypatch):
    path = write_config(tmp_path, 'degree_bound: 2\n')
    monkeypatch.setenv('GRTOR_CONFIG', str(path))
    assert load_settings().degree_bound == 2


@pytest.mark.parametrize(
    'text',
    [
        'ring: [z\n',
        '- z\n',
        'ring: fp:4\n',
        'sample:\n  amostras: 3\n',
        'coend: 3\n',
        'seed: abc\n',
    ],
)
def test_invalid_configuration(tmp_path, text):
    with pytest.raises(ConfigError):
        load_settings(write_config(tmp_path, text))


def test_invalid_environment_integer(tmp_path, monkeypatch):
    monkeypatch.setenv('GRTOR_SEED', 'muitos')
    with pytest.raises(ConfigError):
        load_settings(tmp_path / 'nada.yaml')


def test_flags_take_precedence():
    settings = Settings().with_flags(ring='q', seed=3, threads=None)
    assert settings.ring == 'q'
    assert settings.seed == 3
    assert settings.sample.seed == 3
    assert settings.threads == 1


def manifest(**extra):
    return RunManifest('tor', {'functor': 'dual(id)'}, 'z', 1, **extra)


def test_hash_ignores_wall_time():
    one = envelope(manifest(wall_time=0.5), {'x': 1})
    two = envelope(manifest(wall_time=9.0), {'x': 1})
    assert payload_hash(one) == payload_hash(two)
    three = envelope(manifest(), {'x': 2})
    assert payload_hash(one) != payload_hash(three)


def test_hash_ignores_timings():
    one = envelope(manifest(timings={'5': 0.1}), {'x': 1})
    two = envelope(manifest(timings={'5': 7.3}), {'x': 1})
    assert payload_hash(one) == payload_hash(two)


def test_write_json_is_canonical(tmp_path):
    doc = envelope(manifest().stop(), {'b': 1, 'a': [1, 2]})
    path = write_json(tmp_path / 'out' / 'r.json', doc)
    loaded = json.loads(path.read_text(encoding='utf-8'))
    assert loaded['result'] == {'a': [1, 2], 'b': 1}
    assert '_started' not in loaded['manifest']
    assert loaded['manifest']['command'] == 'tor'


def test_verdict_frame_follows_schema(tmp_path):
    report = CheckReport('teste', bound='n<=2')
    report.add('a', {'n': 1}, True)
    report.add('b', {'n': 2}, False, 'diferente')
    df = verdict_frame([report])
    assert list(df.columns) == load_schema('verdicts')
    assert list(df['verdict']) == ['PASS', 'FAIL']
    assert df['params'].iloc[0] == 'n=1'
    path = write_csv(tmp_path / 'v.csv', df)
    assert path.read_text(encoding='utf-8').splitlines()[0] == (
        'report,bound,check,params,verdict,detail'
    )
    assert '[FALHA] teste (n<=2) - 1 falha(s)' in summarize([report])


def test_homology_frame():
    result = HomologyResult(
        Z, {0: HomologyEntry(0, 1), 1: HomologyEntry(1, 0, (2, 4))}
    )
    df = homology_frame(result, functor='dual(id)', r=0)
    assert list(df.columns) == load_schema('homology')
    assert list(df['torsion']) == ['', '2 4']


def test_missing_schema():
    with pytest.raises(ConfigError):
        load_schema('inexistente')
