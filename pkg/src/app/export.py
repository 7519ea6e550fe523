"""CSV and JSON serialization of results, locale-independent and deterministic."""

import csv
import io
import json
from collections.abc import Sequence
from enum import Enum
from typing import Any

from pydantic import BaseModel

from src import __version__

ARTIFACT = f"qcorr-damping {__version__}"


def format_value(value: Any) -> str:
    """10 significant digits for floats, lowercase booleans, empty for missing."""
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, Enum):
        return str(value.value)
    if isinstance(value, float):
        return format(value + 0.0, ".10g")
    return str(value)


def _format_param(value: Any) -> str:
    if isinstance(value, list):
        return ",".join(format_value(v) for v in value)
    return format_value(value)


def metadata_lines(
    command: str, parameters: dict[str, Any], extra: Sequence[str] = ()
) -> list[str]:
    """'#'-prefixed header lines describing how the file was produced."""
    params = " ".join(f"{key}={_format_param(value)}" for key, value in parameters.items())
    lines = [f"# command: {command}", f"# parameters: {params}", f"# version: {ARTIFACT}"]
    lines.extend(f"# {line}" for line in extra)
    return lines


def to_csv(
    rows: Sequence[BaseModel],
    command: str,
    parameters: dict[str, Any],
    extra: Sequence[str] = (),
) -> str:
    """Metadata lines, a one-line header, then one line per row."""
    buffer = io.StringIO()
    for line in metadata_lines(command, parameters, extra):
        buffer.write(line + "\n")
    if rows:
        writer = csv.writer(buffer, lineterminator="\n")
        fields = list(rows[0].model_dump().keys())
        writer.writerow(fields)
        for row in rows:
            dumped = row.model_dump()
            writer.writerow([format_value(dumped[f]) for f in fields])
    return buffer.getvalue()


def to_json(
    data: BaseModel | Sequence[BaseModel],
    command: str,
    parameters: dict[str, Any],
    exclude: set[str] | None = None,
) -> str:
    """Payload under 'data' with the same field names as the models."""
    if isinstance(data, BaseModel):
        body: Any = data.model_dump(mode="json", exclude=exclude)
    else:
        body = [item.model_dump(mode="json", exclude=exclude) for item in data]
    document = {
        "command": command,
        "parameters": parameters,
        "version": ARTIFACT,
        "data": body,
    }
    return json.dumps(document, indent=2) + "\n"
