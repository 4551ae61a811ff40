from dataclasses import replace

import pytest

from grtor.config import Settings
from grtor.report import suite_frame
from grtor.suite import CRITERIA, run_suite


def light_settings():
    settings = Settings()
    return replace(
        settings,
        sample=replace(settings.sample, samples=10),
        suite=replace(settings.suite, d2_n_max=3, d2_r_max=1,
                      homotopy_n_max=3, homotopy_r_max=1, gcat_samples=20,
                      gcat_max_rank=3, snf_samples=30, snf_max_dim=5),
    )


def test_ten_criteria():
    assert sorted(CRITERIA) == list(range(1, 11))


@pytest.mark.parametrize('number', [1, 2, 4, 5, 7, 9, 10])
def test_light_criteria_pass(number):
    (row,) = run_suite(light_settings(), only=[number])
    assert row.criterion == number
    assert row.verdict == 'PASS', row.report.failures


def test_suite_frame():
    rows = run_suite(light_settings(), only=[5, 10])
    df = suite_frame([row.to_dict() for row in rows])
    assert list(df['criterion']) == [5, 10]
    assert list(df['verdict']) == ['PASS', 'PASS']
    assert list(df['failures']) == [0, 0]


@pytest.mark.slow
def test_full_suite():
    rows = run_suite(Settings())
    assert [row.verdict for row in rows] == ['PASS'] * 10
