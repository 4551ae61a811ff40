import pytest


@pytest.fixture(autouse=True)
def clean_env(monkeypatch):
    for name in ('GRTOR_RING', 'GRTOR_SEED', 'GRTOR_THREADS',
                 'GRTOR_CONFIG'):
        monkeypatch.delenv(name, raising=False)
