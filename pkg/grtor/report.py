# grtor/report.py
# -*- coding: utf-8 -*-
"""
Saídas do grtor: manifesto de execução, JSON canônico e projeções CSV.

O JSON é a fonte da verdade ({"manifest": ..., "result": ...}); o CSV é
uma projeção das tabelas de veredito, com colunas na ordem de
schemas/<tabela>.yaml.
"""

from __future__ import annotations

import hashlib
import json
import logging
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any, Iterable

import pandas as pd
import yaml
from yaml.loader import SafeLoader

import grtor
from grtor.config import PROJECT_ROOT
from grtor.engine.checks import CheckReport
from grtor.engine.linalg import HomologyResult
from grtor.errors import ConfigError

logger = logging.getLogger(__name__)

PATH_SCHEMAS = PROJECT_ROOT / 'schemas'


@dataclass
class RunManifest:
    command: str
    parameters: dict[str, Any]
    ring: str
    seed: int
    bounds: dict[str, Any] = field(default_factory=dict)
    timings: dict[str, float] = field(default_factory=dict)
    version: str = grtor.__version__
    wall_time: float = 0.0
    _started: float = field(default_factory=time.perf_counter, repr=False)

    def stop(self) -> 'RunManifest':
        self.wall_time = round(time.perf_counter() - self._started, 3)
        return self

    def to_dict(self) -> dict[str, Any]:
        out = asdict(self)
        out.pop('_started')
        return out


def canonical(payload: Any) -> str:
    return json.dumps(payload, sort_keys=True, ensure_ascii=False, indent=2,
                      default=str)


def envelope(manifest: RunManifest, result: Any) -> dict[str, Any]:
    return {'manifest': manifest.to_dict(), 'result': result}


def payload_hash(doc: dict[str, Any]) -> str:
    """sha256 do JSON canônico, sem tempos de parede."""
    clean = json.loads(canonical(doc))
    manifest = clean.get('manifest', {})
    for key in ('wall_time', 'timings'):
        manifest.pop(key, None)
    return hashlib.sha256(canonical(clean).encode('utf-8')).hexdigest()


def write_json(path: str | Path, doc: dict[str, Any]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(canonical(doc) + '\n', encoding='utf-8')
    logger.info('JSON gravado em %s', path)
    return path


# =============================================================================
# Tabelas
# =============================================================================


def load_schema(table: str) -> list[str]:
    """Nomes das colunas em schemas/<table>.yaml."""
    path = PATH_SCHEMAS / f'{table}.yaml'
    try:
        with open(path, 'r', encoding='utf-8') as f:
            data = yaml.load(f, Loader=SafeLoader) or {}
    except FileNotFoundError as err:
        raise ConfigError(f'schema ausente: {path}') from err
    return [col['name'] for col in data.get('fields', [])]


def _params_text(params: dict[str, Any]) -> str:
    return ', '.join(f'{k}={v}' for k, v in params.items())


def verdict_frame(reports: Iterable[CheckReport]) -> pd.DataFrame:
    rows = []
    for report in reports:
        for row in report.rows:
            rows.append(
                {
                    'report': report.title,
                    'bound': report.bound,
                    'check': row.check,
                    'params': _params_text(row.params),
                    'verdict': row.verdict,
                    'detail': row.detail,
                }
            )
    return _ordered(pd.DataFrame(rows), 'verdicts')


def homology_frame(result: HomologyResult, **labels: Any) -> pd.DataFrame:
    rows = [
        {
            **labels,
            'ring': result.ring.label,
            'degree': entry.degree,
            'free_rank': entry.free_rank,
            'torsion': ' '.join(str(d) for d in entry.torsion),
        }
        for entry in (result.entries[n] for n in sorted(result.entries))
    ]
    return _ordered(pd.DataFrame(rows), 'homology')


def suite_frame(rows: list[dict[str, Any]]) -> pd.DataFrame:
    return _ordered(pd.DataFrame(rows), 'suite')


def _ordered(df: pd.DataFrame, table: str) -> pd.DataFrame:
    cols = load_schema(table)
    for c in cols:
        if c not in df.columns:
            df[c] = None
    return df[cols]


def write_csv(path: str | Path, df: pd.DataFrame) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    df.to_csv(path, index=False)
    logger.info('CSV gravado em %s (%d linhas)', path, len(df))
    return path


def render(df: pd.DataFrame) -> str:
    if df.empty:
        return '(vazio)'
    return df.to_string(index=False)


def summarize(reports: Iterable[CheckReport]) -> str:
    """Uma linha por relatório: [OK]/[FALHA] título (limite)."""
    lines = []
    for report in reports:
        tag = '[OK]' if report.passed else '[FALHA]'
        bad = len(report.failures)
        extra = f' - {bad} falha(s)' if bad else ''
        lines.append(f'   {tag} {report.title} ({report.bound}){extra}')
    return '\n'.join(lines)
