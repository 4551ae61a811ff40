# grtor/config.py
# -*- coding: utf-8 -*-
"""
Configuração do grtor.

Precedência: padrões embutidos < config.yaml (caminho em GRTOR_CONFIG)
< variáveis de ambiente (.env incluído) < flags da linha de comando.
"""

from __future__ import annotations

import logging
import os
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Any

import yaml
from dotenv import load_dotenv
from yaml.loader import SafeLoader

from grtor.engine.linalg import Ring
from grtor.engine.torgr import SampleSpec
from grtor.errors import ConfigError, RingError

logger = logging.getLogger(__name__)

PROJECT_ROOT = Path(__file__).resolve().parents[1]
DEFAULT_CONFIG = PROJECT_ROOT / 'config.yaml'


@dataclass(frozen=True)
class CoendBounds:
    n_min: int = 2
    n_max: int = 4


@dataclass(frozen=True)
class SuiteBounds:
    """Limites da bateria de aceitação."""

    d2_n_max: int = 6
    d2_r_max: int = 2
    homotopy_n_max: int = 8
    homotopy_r_max: int = 3
    gcat_samples: int = 200
    gcat_max_rank: int = 4
    snf_samples: int = 500
    snf_max_dim: int = 12
    snf_max_entry: int = 9


@dataclass(frozen=True)
class Settings:
    ring: str = 'z'
    seed: int = 20240101
    threads: int = 1
    sample: SampleSpec = field(default_factory=SampleSpec)
    coend: CoendBounds = field(default_factory=CoendBounds)
    degree_bound: int = 4
    suite: SuiteBounds = field(default_factory=SuiteBounds)

    @property
    def ring_obj(self) -> Ring:
        return Ring.parse(self.ring)

    def with_flags(self, **flags: Any) -> 'Settings':
        """Sobrepõe as flags não nulas da linha de comando."""
        given = {k: v for k, v in flags.items() if v is not None}
        out = replace(self, **given)
        if 'seed' in given:
            out = replace(out, sample=replace(out.sample, seed=out.seed))
        return out

    def to_dict(self) -> dict[str, Any]:
        return {
            'ring': self.ring,
            'seed': self.seed,
            'threads': self.threads,
            'sample': vars(self.sample).copy(),
            'coend': vars(self.coend).copy(),
            'degree_bound': self.degree_bound,
            'suite': vars(self.suite).copy(),
        }


# =============================================================================
# Leitura
# =============================================================================


def read_yaml(path: Path) -> dict[str, Any]:
    """Lê o config.yaml; arquivo ausente devolve {}."""
    try:
        with open(path, 'r', encoding='utf-8') as f:
            data = yaml.load(f, Loader=SafeLoader) or {}
    except FileNotFoundError:
        logger.info('%s não encontrado; usando padrões', path)
        return {}
    except yaml.YAMLError as err:
        raise ConfigError(f'{path}: YAML malformado ({err})') from err
    if not isinstance(data, dict):
        raise ConfigError(f'{path}: esperado um mapeamento no topo')
    return data


def _section(cls, raw: Any, name: str):
    if raw is None:
        return cls()
    if not isinstance(raw, dict):
        raise ConfigError(f'seção {name!r} precisa ser um mapeamento')
    known = set(cls.__dataclass_fields__)
    unknown = set(raw) - known
    if unknown:
        raise ConfigError(f'chaves desconhecidas em {name!r}: '
                          f'{sorted(unknown)}')
    try:
        return cls(**{k: int(v) for k, v in raw.items()})
    except (TypeError, ValueError) as err:
        raise ConfigError(f'seção {name!r}: {err}') from err


def _int_env(name: str, default: int) -> int:
    value = os.getenv(name)
    if value is None or not value.strip():
        return default
    try:
        return int(value)
    except ValueError as err:
        raise ConfigError(f'{name}={value!r} não é inteiro') from err


def load_settings(path: str | Path | None = None) -> Settings:
    # 1. Ambiente (.env não sobrescreve o que já está definido)
    load_dotenv()
    if path is None:
        path = os.getenv('GRTOR_CONFIG') or DEFAULT_CONFIG

    # 2. Arquivo
    data = read_yaml(Path(path))
    try:
        ring = str(data.get('ring', 'z'))
        seed = int(data.get('seed', 20240101))
        degree_bound = int(data.get('degree_bound', 4))
    except (TypeError, ValueError) as err:
        raise ConfigError(f'{path}: {err}') from err
    ring = os.getenv('GRTOR_RING') or ring
    try:
        Ring.parse(ring)
    except RingError as err:
        raise ConfigError(str(err)) from err
    seed = _int_env('GRTOR_SEED', seed)
    sample = _section(SampleSpec, data.get('sample'), 'sample')

    # 3. Ambiente por cima do arquivo
    settings = Settings(
        ring=ring,
        seed=seed,
        threads=max(1, _int_env('GRTOR_THREADS', 1)),
        sample=replace(sample, seed=seed),
        coend=_section(CoendBounds, data.get('coend'), 'coend'),
        degree_bound=degree_bound,
        suite=_section(SuiteBounds, data.get('suite'), 'suite'),
    )
    logger.debug('configuração: %s', settings.to_dict())
    return settings
