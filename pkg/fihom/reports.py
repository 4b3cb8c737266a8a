"""Machine-readable command reports.

JSON output is the full model with sorted keys; TSV output flattens each table
into rows under a ``# name`` header. Both are deterministic for a given input.
"""

from __future__ import annotations

import json
from enum import IntEnum
from typing import Any

from pydantic import BaseModel, Field

SCHEMA_VERSION = 1


class ExitStatus(IntEnum):
    OK = 0
    FAILED = 1
    INPUT_ERROR = 2
    INCONCLUSIVE = 3


# Which status wins when several apply.
_PRECEDENCE = {
    ExitStatus.OK: 0,
    ExitStatus.INCONCLUSIVE: 1,
    ExitStatus.FAILED: 2,
    ExitStatus.INPUT_ERROR: 3,
}


def _plain(value: Any) -> Any:
    if isinstance(value, BaseModel):
        return value.model_dump(mode="json")
    if isinstance(value, list | tuple):
        return [_plain(v) for v in value]
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    return value


class Report(BaseModel):
    schema_version: int = SCHEMA_VERSION
    command: str
    arguments: dict[str, Any] = Field(default_factory=dict)
    tables: dict[str, Any] = Field(default_factory=dict)
    caveats: list[str] = Field(default_factory=list)
    errors: list[str] = Field(default_factory=list)
    status: ExitStatus = ExitStatus.OK

    def add_table(self, name: str, value: Any) -> None:
        self.tables[name] = _plain(value)

    def escalate(self, status: ExitStatus) -> None:
        if _PRECEDENCE[status] > _PRECEDENCE[self.status]:
            self.status = status

    def record(self, holds: bool | None, what: str) -> None:
        """Fold one check into the status: False fails, None is inconclusive."""
        if holds is False:
            self.errors.append(f"check failed: {what}")
            self.escalate(ExitStatus.FAILED)
        elif holds is None:
            self.caveats.append(f"left open by the truncation: {what}")
            self.escalate(ExitStatus.INCONCLUSIVE)

    def caveat(self, message: str) -> None:
        if message not in self.caveats:
            self.caveats.append(message)

    def error(self, message: str, status: ExitStatus = ExitStatus.FAILED) -> None:
        self.errors.append(message)
        self.escalate(status)

    def to_json(self) -> str:
        return json.dumps(self.model_dump(mode="json"), sort_keys=True, indent=2) + "\n"

    def to_tsv(self) -> str:
        lines = [
            f"# schema_version\t{self.schema_version}",
            f"# command\t{self.command}",
            f"# status\t{int(self.status)}",
        ]
        lines.extend(f"# caveat\t{c}" for c in self.caveats)
        lines.extend(f"# error\t{e}" for e in self.errors)
        for name in sorted(self.tables):
            lines.append(f"# {name}")
            lines.extend(_tsv_rows(self.tables[name]))
        return "\n".join(lines) + "\n"


def _cell(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, str):
        return value
    return json.dumps(value, sort_keys=True, separators=(",", ":"))


def _tsv_rows(table: Any) -> list[str]:
    rows = _row_list(table)
    if rows is None:
        if isinstance(table, dict):
            return [f"{k}\t{_cell(table[k])}" for k in sorted(table)]
        return [_cell(table)]
    if not rows:
        return []
    header = list(rows[0])
    for row in rows[1:]:
        header.extend(k for k in row if k not in header)
    out = ["\t".join(header)]
    out.extend("\t".join(_cell(row.get(k)) for k in header) for row in rows)
    return out


def _row_list(table: Any) -> list[dict[str, Any]] | None:
    """The list of row dicts inside a table, when it has one."""
    if isinstance(table, list) and all(isinstance(r, dict) for r in table):
        return table
    if isinstance(table, dict):
        for key in ("rows", "cells", "checks"):
            if isinstance(table.get(key), list) and all(isinstance(r, dict) for r in table[key]):
                return table[key]
    return None
