"""Machine-readable report emission: rational strings, envelopes, tables.

Every number that is not an integer travels as an exact "p/q" string; no
float ever reaches an output stream. JSON serialization is deterministic
(sorted keys, fixed indentation) so identical inputs under the same tool
version produce byte-identical reports.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterable, Mapping, Optional, Sequence, Union

from . import __version__
from .configs import PeriodicConfiguration, make_config

# Provenance tags: a figure either comes straight out of a built-in
# reference table or is computed on the spot by enumeration/algebra.
TABULATED = "tabulated"
COMPUTED = "computed"


def frac_str(x: Union[int, Fraction]) -> str:
    """Lowest-terms "p/q" rendering; the denominator is always written."""
    f = Fraction(x)
    return f"{f.numerator}/{f.denominator}"


def jsonable(value: Any) -> Any:
    """Recursive conversion to JSON-ready data; rationals become "p/q"."""
    if isinstance(value, bool):
        return value
    if isinstance(value, int):
        return value
    if isinstance(value, Fraction):
        return frac_str(value)
    if isinstance(value, str) or value is None:
        return value
    if isinstance(value, Mapping):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, set, frozenset)):
        seq = sorted(value) if isinstance(value, (set, frozenset)) else value
        return [jsonable(v) for v in seq]
    raise TypeError(f"cannot serialize {type(value).__name__} into a report")


@dataclass(frozen=True)
class ReportEnvelope:
    """Wrapper around one command's results.

    command echoes the argv that produced the report, inputs the parsed
    parameters, results the module-specific payload. provenance says
    whether the headline figures were computed here or read off a
    built-in table.
    """

    command: tuple[str, ...]
    inputs: Mapping[str, Any]
    results: Mapping[str, Any]
    provenance: str = COMPUTED
    version: str = field(default=__version__)

    def body(self) -> dict[str, Any]:
        return {
            "command": list(self.command),
            "version": self.version,
            "provenance": self.provenance,
            "inputs": jsonable(self.inputs),
            "results": jsonable(self.results),
        }

    def to_json(self) -> str:
        return json.dumps(self.body(), sort_keys=True, indent=2, ensure_ascii=False) + "\n"

    def to_text(self) -> str:
        lines = [f"# {' '.join(self.command)}"]
        lines.extend(_text_lines(jsonable(self.results), ""))
        return "\n".join(lines) + "\n"


def _text_lines(value: Any, prefix: str) -> list[str]:
    if isinstance(value, dict):
        out: list[str] = []
        for k in sorted(value):
            v = value[k]
            name = f"{prefix}{k}" if not prefix else f"{prefix}.{k}"
            if isinstance(v, (dict, list)):
                out.extend(_text_lines(v, name))
            else:
                out.append(f"{name} = {v}")
        return out
    if isinstance(value, list):
        if all(not isinstance(v, (dict, list)) for v in value):
            return [f"{prefix} = {' '.join(str(v) for v in value)}"]
        out = []
        for i, v in enumerate(value):
            out.extend(_text_lines(v, f"{prefix}[{i}]"))
        return out
    return [f"{prefix} = {value}"]


# --- configuration interchange ---------------------------------------------------


def config_payload(pc: PeriodicConfiguration, d2: Optional[int] = None) -> dict[str, Any]:
    """The interchange form of a periodic configuration."""
    return {
        "basis": [list(row) for row in pc.basis],
        "offsets": [list(o) for o in pc.offsets],
        "d2": pc.context_d2 if d2 is None else d2,
    }


def parse_config(data: Mapping[str, Any], d2: Optional[int] = None) -> PeriodicConfiguration:
    """Rebuild a configuration from its interchange form.

    Accepts either the bare payload or a full report envelope whose
    results carry one (so a `pc build` output file can be fed back in).
    """
    if "results" in data and "basis" not in data:
        inner = data["results"]
        if not isinstance(inner, Mapping) or "basis" not in inner:
            raise ValueError("envelope results do not contain a configuration")
        data = inner
    try:
        basis = [tuple(int(c) for c in row) for row in data["basis"]]
        offsets = [tuple(int(c) for c in o) for o in data["offsets"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed configuration payload: {exc}") from None
    if len(basis) != 3 or any(len(r) != 3 for r in basis):
        raise ValueError("basis must be three rows of three integers")
    if any(len(o) != 3 for o in offsets):
        raise ValueError("offsets must be triples of integers")
    ctx = d2 if d2 is not None else data.get("d2")
    return make_config(basis, offsets, None if ctx is None else int(ctx))


def load_config_file(path: str, d2: Optional[int] = None) -> PeriodicConfiguration:
    with open(path, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    if not isinstance(data, Mapping):
        raise ValueError("configuration file must hold a JSON object")
    return parse_config(data, d2)


def parse_site_list(data: Any) -> list[tuple[int, int, int]]:
    """Site lists arrive as [[x,y,z], ...] or wrapped in {"sites": ...}."""
    if isinstance(data, Mapping):
        data = data.get("sites")
    if not isinstance(data, (list, tuple)):
        raise ValueError('expected a JSON array of sites or {"sites": [...]}')
    sites = []
    for entry in data:
        if not isinstance(entry, (list, tuple)) or len(entry) != 3:
            raise ValueError("each site must be a 3-element integer array")
        sites.append((int(entry[0]), int(entry[1]), int(entry[2])))
    return sites


def load_site_file(path: str) -> list[tuple[int, int, int]]:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_site_list(json.load(fh))


# --- the density table ------------------------------------------------------------


def table_densities(extra_l: Sequence[int] = (3,)) -> list[tuple[int, Union[int, str], Fraction]]:
    """Rows (d2, census or cardinality marker, density), all computed.

    The nine built-in thresholds always appear; extra_l appends the
    close-packing thresholds 2l^2 for the listed l when not already
    covered (l=1 and l=2 coincide with thresholds 2 and 8).
    """
    from .families import census_marker, densest_density
    from .forces import SUPPORTED_D2

    d2s = list(SUPPORTED_D2)
    for l in extra_l:
        t = 2 * l * l
        if t not in d2s:
            d2s.append(t)
    return [(d2, census_marker(d2), densest_density(d2)) for d2 in sorted(d2s)]


# --- CSV ---------------------------------------------------------------------------

SUBLATTICE_CSV_HEADER = "b11,b12,b13,b21,b22,b23,b31,b32,b33,class_id,stabilizer_order"


def sublattice_csv_rows(classes: Iterable[Any]) -> list[str]:
    """One CSV line per sublattice: nine basis integers, class id, stabilizer order."""
    rows = [SUBLATTICE_CSV_HEADER]
    for idx, cl in enumerate(classes, start=1):
        for member in cl.members:
            cells = [str(x) for row in member for x in row]
            cells.append(str(idx))
            cells.append(str(cl.stabilizer_order))
            rows.append(",".join(cells))
    return rows
