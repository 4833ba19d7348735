import csv
import io
import json
from typing import Any, Callable, Dict, List, Sequence

from .census     import CensusRow
from .decorators import handler_decorator

EMITTERS: Dict[str, Callable[[Sequence[str], List[List[Any]]], str]] = {}
_emitter = handler_decorator(EMITTERS)

class UnknownFormatError(ValueError):
    pass

@_emitter("csv")
def _emit_csv(fields: Sequence[str], rows: List[List[Any]]) -> str:
    out    = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(fields)
    writer.writerows(rows)
    return out.getvalue()

@_emitter("json")
def _emit_json(fields: Sequence[str], rows: List[List[Any]]) -> str:
    objects = [dict(zip(fields, row)) for row in rows]
    return json.dumps(objects, indent=2) + "\n"

def formats() -> List[str]:
    return sorted(EMITTERS)

def emit_table(
        fields: Sequence[str],
        rows:   List[List[Any]],
        format: str) -> str:
    if not format in EMITTERS:
        raise UnknownFormatError(f"unknown format {format!r}, expected one "
            f"of {', '.join(formats())}")
    return EMITTERS[format](fields, rows)

def emit(rows: List[CensusRow], format: str) -> str:
    return emit_table(CensusRow.FIELDS, [row.values() for row in rows], format)

def parse_json_rows(text: str) -> List[CensusRow]:
    return [CensusRow.from_dict(data) for data in json.loads(text)]
