# grtor/engine/checks.py
# -*- coding: utf-8 -*-
"""
Estruturas comuns dos verificadores: linha de veredito, relatório e o
executor de células em paralelo.
"""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Callable, Iterable, TypeVar

logger = logging.getLogger(__name__)

PASS = 'PASS'
FAIL = 'FAIL'

K = TypeVar('K')
V = TypeVar('V')


@dataclass(frozen=True)
class CheckRow:
    check: str
    params: dict[str, Any]
    verdict: str
    detail: str = ''

    @property
    def passed(self) -> bool:
        return self.verdict == PASS

    def to_dict(self) -> dict[str, Any]:
        return {
            'check': self.check,
            'params': dict(self.params),
            'verdict': self.verdict,
            'detail': self.detail,
        }


@dataclass
class CheckReport:
    title: str
    rows: list[CheckRow] = field(default_factory=list)
    bound: str | None = None

    @property
    def passed(self) -> bool:
        return all(row.passed for row in self.rows)

    @property
    def failures(self) -> list[CheckRow]:
        return [row for row in self.rows if not row.passed]

    def add(
        self, check: str, params: dict[str, Any], ok: bool, detail: str = ''
    ) -> CheckRow:
        row = CheckRow(check, params, PASS if ok else FAIL, detail)
        self.rows.append(row)
        return row

    def extend(self, other: 'CheckReport') -> None:
        self.rows.extend(other.rows)

    def to_dict(self) -> dict[str, Any]:
        return {
            'title': self.title,
            'bound': self.bound,
            'passed': self.passed,
            'rows': [row.to_dict() for row in self.rows],
        }


def run_cells(
    fn: Callable[[K], V], keys: Iterable[K], threads: int = 1
) -> list[V]:
    """
    Avalia `fn` em cada chave, na ordem das chaves.

    Com threads > 1 usa um ThreadPoolExecutor; o resultado é o mesmo
    e na mesma ordem que a execução serial.
    """
    keys = list(keys)
    if threads <= 1 or len(keys) <= 1:
        return [fn(key) for key in keys]
    logger.debug('%d células em %d threads', len(keys), threads)
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, keys))
