"""
Output files are written once: to a temporary sibling, then renamed over the target.
"""

import csv
import io
import os
import tempfile
from pathlib import Path
from typing import Iterable, Sequence

from .result import DATA, Ok, Result


def write_bytes(path: Path, data: bytes) -> Result[None]:
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        fd, tmp = tempfile.mkstemp(prefix=f".{path.name}.", dir=path.parent)
        try:
            with os.fdopen(fd, "wb") as f:
                f.write(data)
            os.replace(tmp, path)
        except BaseException:
            os.unlink(tmp)
            raise
    except OSError as e:
        return Result.error(f"failed to write {path}", e, kind=DATA)
    return Ok(None)


def write_text(path: Path, text: str) -> Result[None]:
    return write_bytes(path, text.encode("utf-8"))


def csv_text(rows: Iterable[dict], fieldnames: Sequence[str]) -> str:
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=list(fieldnames), lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({key: _cell(row.get(key)) for key in fieldnames})
    return buffer.getvalue()


def write_csv(path: Path, rows: Iterable[dict], fieldnames: Sequence[str]) -> Result[None]:
    return write_text(path, csv_text(rows, fieldnames))


def _cell(value):
    match value:
        case bool():
            return "true" if value else "false"
        case float():
            return repr(value)
        case None:
            return ""
        case _:
            return value
