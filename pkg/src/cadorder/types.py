"""
types shared by every module: object lifecycle, variables and orderings
"""

from abc import ABC, abstractmethod
from dataclasses import dataclass
from itertools import permutations
from typing import TYPE_CHECKING, Iterable, Sequence

from .result import Result, Ok, USAGE

if TYPE_CHECKING:
    from .polyarith import PolySet


class Object(ABC):
    """
    Any stateful class of the library subclasses this.
    1. instances are created with the create classmethod
    2. create calls the constructor, which only stores arguments
    3. create then calls init, which validates and may fail
    4. dispose releases caches
    """

    @abstractmethod
    def init(self) -> Result[None]:
        """Initialize the object - called after __init__ by create()"""

    @abstractmethod
    def dispose(self) -> Result[None]:
        pass

    @classmethod
    def create(cls, *args, **kwargs) -> Result["Object"]:
        obj = cls(*args, **kwargs)

        res = obj.init()
        if not res:
            return Result.error(f"failed to initialize instance {cls.__name__}", res)
        return Ok(obj)


@dataclass(frozen=True, order=True)
class Variable:
    """A problem variable x_index; ordering and tie-breaks use the index only"""
    index: int
    name: str = ""

    def __post_init__(self):
        if self.index < 1:
            raise ValueError(f"variable index must be positive, got {self.index}")
        if not self.name:
            object.__setattr__(self, "name", f"x{self.index}")

    @property
    def position(self) -> int:
        """Slot of the variable in exponent vectors"""
        return self.index - 1

    def __str__(self):
        return self.name


def make_variables(names: Sequence[str]) -> tuple[Variable, ...]:
    return tuple(Variable(i + 1, name) for i, name in enumerate(names))


@dataclass(frozen=True)
class VariableOrdering:
    """Projection order: the first variable is projected first (the greatest one)"""
    variables: tuple[Variable, ...]

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        if len(set(self.variables)) != len(self.variables):
            raise ValueError(f"ordering repeats a variable: {self}")

    @property
    def indices(self) -> tuple[int, ...]:
        return tuple(v.index for v in self.variables)

    @property
    def sort_key(self) -> tuple[int, ...]:
        """Lexicographic index order, the tie-break of every chooser"""
        return self.indices

    def __len__(self) -> int:
        return len(self.variables)

    def __iter__(self):
        return iter(self.variables)

    def __getitem__(self, item):
        return self.variables[item]

    def __str__(self):
        return ",".join(v.name for v in self.variables)

    def is_permutation_of(self, variables: Iterable[Variable]) -> bool:
        """Same variables by index, names aside"""
        return sorted(self.indices) == sorted(v.index for v in variables)


def all_orderings(variables: Iterable[Variable]) -> list[VariableOrdering]:
    """Every permutation, in lexicographic index order"""
    return [VariableOrdering(p) for p in permutations(sorted(variables))]


def parse_ordering(text: str, variables: Sequence[Variable], kind: str = USAGE) -> Result[VariableOrdering]:
    """Resolve 'x3,x1,x2' against declared variables"""
    by_name = {v.name: v for v in variables}
    picked = []
    for name in (part.strip() for part in text.split(",")):
        if name not in by_name:
            return Result.error(f"unknown variable '{name}' in ordering '{text}'", kind=kind)
        picked.append(by_name[name])
    if len(set(picked)) != len(picked) or len(picked) != len(variables):
        known = ",".join(v.name for v in variables)
        return Result.error(f"ordering '{text}' is not a permutation of {known}", kind=kind)
    return Ok(VariableOrdering(tuple(picked)))


@dataclass(frozen=True)
class ProblemInstance:
    """A named polynomial set with its variables, indexed by first appearance"""
    problem_id: str
    variables: tuple[Variable, ...]
    polys: "PolySet"

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(sorted(self.variables)))
        if len(self.variables) != self.polys.nvars:
            raise ValueError(f"{len(self.variables)} variables for a set over {self.polys.nvars}")

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(v.name for v in self.variables)

    @classmethod
    def of(cls, polys: "PolySet", names: Sequence[str] | None = None, problem_id: str = "") -> "ProblemInstance":
        names = names or [f"x{i + 1}" for i in range(polys.nvars)]
        return cls(problem_id, make_variables(names), polys)
