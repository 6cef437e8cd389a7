import importlib
import importlib.util
import sys
from pathlib import Path
from typing import Callable, Optional

from munch import Munch

from ..config import HEURISTIC_NAMES, default_config
from ..result import USAGE, Ok, Result
from ..stringcase import spinalcase
from ..types import Object
from .base import Heuristic


class HeuristicFactory(Object):
    """
    Factory for creating heuristics

    Registers every class decorated with @heuristic found in the builtin
    strategies package and in the directories of strategies_path.
    """

    def __init__(self, config: Optional[Munch] = None, strategies_path: Optional[str] = None,
                 clock: Optional[Callable[[], float]] = None):
        """
        Args:
            config: run configuration handed to every heuristic
            strategies_path: Colon-separated list of extra directories to search for strategy modules
            clock: time source of the projection steps, for tests
        """
        super().__init__()
        self._config = config if config is not None else default_config()
        self._strategies_path = strategies_path if strategies_path is not None else self._config.get("strategies_path")
        self._clock = clock
        self._heuristics: dict[str, type[Heuristic]] = {}

    def init(self) -> Result[None]:
        from ..decorators import _pending_heuristics

        builtin = Path(__file__).parent / "strategies"
        for module_file in sorted(builtin.glob("*.py")):
            if module_file.name.startswith("_"):
                continue
            try:
                importlib.import_module(f"{__package__}.strategies.{module_file.stem}")
            except Exception as e:
                return Result.error(f"HeuristicFactory: init: could not load {module_file}", e)

        for path_str in (self._strategies_path or "").split(":"):
            path_str = path_str.strip()
            if not path_str:
                continue
            strategies_dir = Path(path_str)
            if not strategies_dir.is_dir():
                return Result.error(f"HeuristicFactory: init: no strategies directory {strategies_dir}", kind=USAGE)
            for module_file in sorted(strategies_dir.glob("*.py")):
                if module_file.name.startswith("_"):
                    continue
                module_name = f"{strategies_dir.name}.{module_file.stem}"
                if module_name in sys.modules:
                    continue
                try:
                    spec = importlib.util.spec_from_file_location(module_name, module_file)
                    module = importlib.util.module_from_spec(spec)
                    sys.modules[spec.name] = module
                    spec.loader.exec_module(module)
                except Exception as e:
                    return Result.error(f"HeuristicFactory: init: could not load {module_file}", e)

        for heuristic_class in _pending_heuristics:
            self._heuristics[spinalcase(heuristic_class.__name__)] = heuristic_class
        return Ok(None)

    def dispose(self) -> Result[None]:
        self._heuristics.clear()
        return Ok(None)

    @property
    def names(self) -> list[str]:
        """Builtin heuristics in report order, then any extra ones alphabetically"""
        builtin = [name for name in HEURISTIC_NAMES if name in self._heuristics]
        return builtin + sorted(set(self._heuristics) - set(builtin))

    def create_heuristic(self, name: str) -> Result[Heuristic]:
        key = spinalcase(name)
        heuristic_class = self._heuristics.get(key)
        if heuristic_class is None:
            known = ", ".join(self.names)
            return Result.error(f"unknown heuristic '{name}', known: {known}", kind=USAGE)
        res = heuristic_class.create(self._config, self._clock)
        if not res:
            return Result.error(f"HeuristicFactory: failed to create heuristic '{key}'", res)
        return res
