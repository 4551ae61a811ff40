# grtor/__init__.py
"""grtor - álgebra homológica exata sobre a categoria gr dos grupos livres."""

__version__ = '0.1.0'
