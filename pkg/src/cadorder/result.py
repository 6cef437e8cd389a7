from abc import abstractmethod
from dataclasses import dataclass
from typing import Any, Generic, Optional, TypeVar, Union


def as_tree(obj: Any) -> dict | list | str | int | float | bool | None:
    """
    Convert an object to a tree structure that yaml/json can dump.
    """
    if hasattr(obj, "as_tree"):
        return obj.as_tree

    match obj:
        case dict():
            return {str(key): as_tree(value) for key, value in obj.items()}
        case list() | tuple():
            return [as_tree(value) for value in obj]
        case set() | frozenset():
            return sorted(str(value) for value in obj)
        case int() | float() | str() | bool() | None:
            return obj
        case _:
            return str(obj)


""" Rust like Result[T] pattern, errors carry a kind used for process exit codes"""

# error kinds, mapped to exit codes by the cli
USAGE = "usage"
DATA = "data"
LIMIT = "limit"

_CONSTRUCTOR_TOKEN = "Error class constructor should not be called directly. Use Error.create() instead."


def _adapt_error(value: Optional[Union[str, dict, list, Exception, "Error", "Err"]]) -> Optional[Union[str, dict, list, "Error"]]:
    """Normalize anything accepted as an error payload"""
    if value is None:
        return None
    match value:
        case Error():
            return value
        case Err():
            return value.error
        case str() | dict():
            return value
        case list():
            return [_adapt_error(item) for item in value]
        case Exception():
            return f"{type(value).__name__}: {value}"
        case _:
            return {
                "message": "unknown type provided for Error constructor",
                "type": type(value).__name__, "value": str(value)}


class Error:
    """ Inner representation of an error, chained through prev_error"""
    def __init__(self, _constructor_token: str, error, prev_error=None, kind: Optional[str] = None):
        if _constructor_token != _CONSTRUCTOR_TOKEN:
            raise ValueError(_CONSTRUCTOR_TOKEN)
        self._error = error
        self._prev_error = prev_error
        self._kind = kind

    @property
    def error(self):
        return self._error

    @property
    def prev_error(self):
        return self._prev_error

    @property
    def kind(self) -> Optional[str]:
        """Kind of the innermost tagged error of the chain"""
        inner = None
        if isinstance(self._prev_error, Error):
            inner = self._prev_error.kind
        return inner if inner is not None else self._kind

    @property
    def message(self) -> str:
        """Outermost message followed by the chain, one context per segment"""
        parts = [str(self._error)]
        prev = self._prev_error
        while prev is not None:
            if isinstance(prev, Error):
                parts.append(str(prev.error))
                prev = prev.prev_error
            else:
                parts.append(str(prev))
                prev = None
        return ": ".join(parts)

    @property
    def as_tree(self) -> dict:
        tree = {"error": as_tree(self._error)}
        if self._prev_error is not None:
            tree["prev_error"] = as_tree(self._prev_error)
        if self._kind is not None:
            tree["kind"] = self._kind
        return tree

    def __repr__(self):
        return f"Error({self._error!r}, prev_error={self._prev_error!r})"

    def __str__(self):
        return self.message

    @classmethod
    def create(cls, value, prev_error=None, kind: Optional[str] = None) -> "Error":
        """Create an Error instance with the given value and optional previous error."""
        return cls(_CONSTRUCTOR_TOKEN, _adapt_error(value), _adapt_error(prev_error), kind)


T = TypeVar("T")


class Result(Generic[T]):
    """Base class for Ok and Err"""
    def __bool__(self) -> bool:
        return self.is_ok

    @property
    @abstractmethod
    def is_ok(self) -> bool:
        """True for Ok, False for Err"""

    @property
    @abstractmethod
    def unwrapped(self) -> T:
        """The Ok value. Only call after checking the result."""

    @classmethod
    def error(
        cls,
        err: Union["Error", str, list, dict, Exception],
        prev_error: Optional[Union["Result", "Error", Exception]] = None,
        kind: Optional[str] = None,
    ) -> "Result[T]":
        """Helper to create an Err result
        Usage:
            return Result.error("resultant needs positive degree", kind=DATA)
            res = project_step(polys, v)
            if not res:
                return Result.error("projection failed", res)
        """
        return Err.create(err, prev_error, kind)


@dataclass(frozen=True)
class Ok(Result[T]):
    _value: T

    @property
    def is_ok(self) -> bool:
        return True

    @property
    def unwrapped(self) -> T:
        return self._value

    @property
    def as_tree(self) -> dict:
        return {"value": as_tree(self._value)}


@dataclass(frozen=True)
class Err(Result[T]):
    _error: Error

    def __post_init__(self):
        if not isinstance(self._error, Error):
            object.__setattr__(self, '_error', Error.create(self._error))

    @property
    def is_ok(self) -> bool:
        return False

    @property
    def error(self) -> Error:
        return self._error

    @property
    def kind(self) -> Optional[str]:
        return self._error.kind

    @property
    def message(self) -> str:
        return self._error.message

    @property
    def unwrapped(self) -> T:
        raise ValueError(f"cannot unwrap an Err result: {self._error.message}")

    @property
    def as_tree(self) -> dict:
        return {"error": self._error.as_tree}

    def __repr__(self) -> str:
        return f"Err({self._error!r})"

    @classmethod
    def create(cls, error, prev_error=None, kind: Optional[str] = None) -> "Err[T]":
        """Create an Err result with chained error tree structure"""
        return cls(_error=Error.create(error, prev_error, kind))
