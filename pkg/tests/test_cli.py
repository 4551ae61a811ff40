import json

import pytest

from grtor.cli import build_parser, dispatch, parse_degrees
from grtor.errors import UsageError
from grtor.report import payload_hash


def test_parse_degrees():
    assert parse_degrees('0..3') == [0, 1, 2, 3]
    assert parse_degrees('0,2') == [0, 2]
    for bad in ('a..b', '', '-1,2'):
        with pytest.raises(UsageError):
            parse_degrees(bad)


def test_common_options_live_on_the_last_level():
    args = build_parser().parse_args(
        ['bar', 'check-d2', '--n-max', '2', '--ring', 'q']
    )
    assert args.ring == 'q'
    assert args.n_max == 2


def test_bar_check_passes(capsys):
    assert dispatch(['bar', 'check-d2', '--n-max', '2', '--r-max', '1']) == 0
    assert '[OK]' in capsys.readouterr().out


def test_words_reduce(capsys):
    assert dispatch(['words', 'reduce', 'x1*x1^-1*x2']) == 0
    assert capsys.readouterr().out.strip() == 'x2'


def test_words_is_basis(capsys):
    assert dispatch(['words', 'is-basis', 'x1*x2', 'x2']) == 0
    assert capsys.readouterr().out.strip() == 'true'


def test_tor_writes_json_and_csv(tmp_path):
    out = tmp_path / 'tor.json'
    table = tmp_path / 'tor.csv'
    code = dispatch(['tor', '--functor', 'dual(id)', '--degrees', '0..1',
                     '--json', str(out), '--csv', str(table)])
    assert code == 0
    doc = json.loads(out.read_text(encoding='utf-8'))
    assert doc['manifest']['command'] == 'tor'
    assert doc['manifest']['ring'] == 'z'
    degrees = doc['result']['degrees']
    assert degrees[0] == {'degree': 0, 'free_rank': 1, 'torsion': []}
    assert degrees[1] == {'degree': 1, 'free_rank': 0, 'torsion': []}
    assert table.read_text(encoding='utf-8').startswith(
        'functor,r,ring,degree,free_rank,torsion'
    )


def test_json_hash_is_reproducible(tmp_path):
    hashes = []
    for k in range(2):
        out = tmp_path / f'run{k}.json'
        argv = ['tor', '--functor', 'dual(id)', '--degrees', '0..2',
                '--json', str(out)]
        assert dispatch(argv) == 0
        hashes.append(payload_hash(json.loads(out.read_text('utf-8'))))
    assert hashes[0] == hashes[1]


def test_failed_check_exits_with_one(capsys):
    assert dispatch(['xi', 'verify', '--x', 'hom-zmod2']) == 1
    assert '[FALHA]' in capsys.readouterr().out


@pytest.mark.parametrize(
    'argv',
    [
        ['tor', '--functor', 'dual(id)', '--bogus'],
        ['tor', '--functor', 'dual(id)', '--ring', 'fp:4'],
        ['tor', '--functor', 'id'],
        ['tor', '--functor', 'dual(id', '--degrees', '0'],
        ['words', 'reduce', 'x1', '--csv', 'nunca.csv'],
        ['xi', 'verify', '--x', 'id'],
        [],
    ],
)
def test_usage_and_input_errors_exit_with_two(argv):
    assert dispatch(argv) == 2


def test_error_message_goes_to_stderr(capsys):
    dispatch(['tor', '--functor', 'dual(id)', '--ring', 'w'])
    assert '[ERRO]' in capsys.readouterr().err


def test_help_exits_with_zero():
    assert dispatch(['--help']) == 0


def test_suite_hash_is_reproducible(tmp_path):
    docs = []
    for k in range(2):
        out = tmp_path / f'suite{k}.json'
        argv = ['suite', '--only', '5', '--json', str(out)]
        assert dispatch(argv) == 0
        docs.append(json.loads(out.read_text('utf-8')))
    assert payload_hash(docs[0]) == payload_hash(docs[1])
    assert set(docs[0]['manifest']['timings']) == {'5'}
    assert all('seconds' not in row for row in docs[0]['result']['criteria'])


def test_unexpected_error_exits_with_two(monkeypatch, capsys):
    def boom(*args, **kwargs):
        raise ZeroDivisionError('divisão por zero')

    monkeypatch.setattr('grtor.cli.tor', boom)
    assert dispatch(['tor', '--functor', 'dual(id)']) == 2
    assert 'ZeroDivisionError' in capsys.readouterr().err
