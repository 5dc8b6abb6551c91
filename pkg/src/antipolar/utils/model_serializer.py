import json
from typing import Any, Dict, List

import numpy as np
from pydantic import BaseModel


def _json_default(o: Any):
    if isinstance(o, np.integer):
        return int(o)
    if isinstance(o, np.floating):
        return float(o)
    if isinstance(o, np.bool_):
        return bool(o)
    if isinstance(o, np.ndarray):
        return o.tolist()
    if isinstance(o, BaseModel):
        return o.model_dump(mode="json")
    raise TypeError(f"Object of type {type(o).__name__} is not JSON serializable")


class ModelSerializer:

    @staticmethod
    def format_value(value: Any) -> str:
        """
        Text form of a scalar for tabular output: floats with 17 significant digits
        (exact round trip for doubles), booleans lower-case, None as an empty cell.
        """
        if value is None:
            return ""
        if isinstance(value, (bool, np.bool_)):
            return "true" if value else "false"
        if isinstance(value, (float, np.floating)):
            return f"{float(value):.17g}"
        return str(value)

    @staticmethod
    def flatten(model: BaseModel, columns: List[str]) -> Dict[str, str]:
        """
        Projects a model onto `columns`. Nested tuples such as f = (f0, f1, f2, f3) are
        addressed as f0..f3.
        """
        data = model.model_dump(mode="json")
        row = {}
        for column in columns:
            if column in data:
                row[column] = ModelSerializer.format_value(data[column])
                continue
            prefix, index = column.rstrip("0123456789"), column[len(column.rstrip("0123456789")):]
            seq = data.get(prefix)
            if index and isinstance(seq, (list, tuple)):
                row[column] = ModelSerializer.format_value(seq[int(index)])
            else:
                row[column] = ""
        return row

    @staticmethod
    def to_json(obj: Any, indent: int = 2) -> str:
        """JSON text for a model or plain structure that may hold numpy scalars and arrays."""
        if isinstance(obj, BaseModel):
            obj = obj.model_dump(mode="json")
        return json.dumps(obj, default=_json_default, indent=indent, sort_keys=False)
