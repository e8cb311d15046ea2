import math
from pathlib import Path
from typing import Any, Mapping, Optional, Union

import numpy as np
import orjson
from pydantic import BaseModel

OPTIONS = orjson.OPT_INDENT_2 | orjson.OPT_SERIALIZE_NUMPY | orjson.OPT_APPEND_NEWLINE
FLOAT_FORMAT = "#.17g"


def _fixed_floats(value: Any) -> Any:
    """Replace finite floats by 17-significant-digit JSON fragments"""
    if isinstance(value, np.ndarray):
        value = value.tolist()
    if isinstance(value, Mapping):
        return {key: _fixed_floats(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [_fixed_floats(item) for item in value]
    if isinstance(value, (float, np.floating)) and math.isfinite(value):
        return orjson.Fragment(format(float(value), FLOAT_FORMAT))
    return value


def dumps_report(report: Union[BaseModel, Mapping[str, Any]]) -> bytes:
    """
    JSON bytes of a report

    Keys keep declaration order and every finite float is written with 17
    significant digits, so equal reports give byte-identical output and floats
    read back exactly. Non-finite floats become null.
    """
    payload = report.model_dump(mode="json") if isinstance(report, BaseModel) else report
    return orjson.dumps(_fixed_floats(payload), option=OPTIONS)


def write_report(
    report: Union[BaseModel, Mapping[str, Any]], path: Optional[Union[str, Path]]
) -> bytes:
    data = dumps_report(report)
    if path is not None:
        Path(path).write_bytes(data)
    return data
