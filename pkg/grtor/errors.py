# grtor/errors.py
# -*- coding: utf-8 -*-
"""
Hierarquia de exceções do grtor.

Uma verificação matemática que falha NÃO é exceção: vira uma linha FAIL
no relatório. Exceções sinalizam uso incorreto ou dado corrompido.
"""

from __future__ import annotations


class GrtorError(Exception):
    """Base de todos os erros do pacote."""


class WordError(GrtorError):
    """Índice de gerador inválido (< 1 ou acima do posto declarado)."""


class RankMismatchError(GrtorError):
    """Postos incompatíveis numa composição ou produto."""


class ParseError(GrtorError):
    """Erro de sintaxe; `position` é o deslocamento (base 0) no texto."""

    def __init__(self, message: str, position: int = 0):
        super().__init__(f'{message} (posição {position})')
        self.position = position


class GInvariantError(GrtorError):
    """Par (u, H) que não satisfaz B = u(A) * H."""


class RingError(GrtorError):
    """Operação indisponível sobre o anel pedido."""


class ShapeError(GrtorError):
    """Formatos de matriz incompatíveis."""


class NotInSpanError(GrtorError):
    """Sistema linear sem solução exata."""


class VarianceError(GrtorError):
    """Mistura de variâncias (co/contra) numa expressão de funtor."""


class DegreeError(GrtorError):
    """Grau polinomial diferente do esperado."""


class FunctorialityError(GrtorError):
    """Valores tabulados que violam a funtorialidade (ex.: d² != 0)."""


class XiShapeError(GrtorError):
    """Aplicação xi(A, T) com formato incompatível com X."""


class ConfigError(GrtorError):
    """Arquivo de configuração malformado."""


class UsageError(GrtorError):
    """Uso incorreto da linha de comando."""
