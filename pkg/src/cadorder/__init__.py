"""
cadorder - variable ordering heuristics for cylindrical algebraic decomposition
"""

# Read version from pyproject.toml (single source of truth)
try:
    from importlib.metadata import version
    __version__ = version("cadorder")
except Exception:
    __version__ = "unknown"

__all__ = ["__version__"]
