"""Python front end for the dtcompile neutral-atom compiler."""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Any

from ._core import (
    Circuit,
    ConfigError,
    DtcError,
    GeometryError,
    InfeasibleError,
    ParseError,
    RoutingError,
    aod_move_duration,
    asap_stages,
    default_config,
    gen_benchmark,
    greedy_mis,
    hungarian,
    parse_circuit,
    remote_cz_duration,
    render_svg,
)
from . import _core

__all__ = [
    "Circuit",
    "CompileResult",
    "ConfigError",
    "DtcError",
    "GeometryError",
    "InfeasibleError",
    "ParseError",
    "RoutingError",
    "aod_move_duration",
    "asap_stages",
    "compile",
    "default_config",
    "fidelity",
    "gen_benchmark",
    "greedy_mis",
    "hungarian",
    "parse_circuit",
    "remote_cz_duration",
    "render_svg",
    "validate",
]

MODES = ("static", "dynamic", "aod-baseline")


@dataclass(frozen=True)
class CompileResult:
    schedule_json: str
    report: dict[str, Any]

    @property
    def schedule(self) -> dict[str, Any]:
        return json.loads(self.schedule_json)


def compile(circuit: Circuit | str, mode: str = "dynamic", config: str = "") -> CompileResult:
    """Compile a circuit (object or source text) in one of MODES."""
    if isinstance(circuit, str):
        circuit = parse_circuit(circuit)
    schedule_json, report_json = _core.compile(circuit, mode, config)
    return CompileResult(schedule_json, json.loads(report_json))


def validate(schedule: CompileResult | str) -> list[tuple[int, str, str]]:
    """Replay diagnostics; an empty list means the schedule is legal."""
    text = schedule.schedule_json if isinstance(schedule, CompileResult) else schedule
    return _core.validate(text)


def fidelity(schedule: CompileResult | str) -> dict[str, Any]:
    text = schedule.schedule_json if isinstance(schedule, CompileResult) else schedule
    return json.loads(_core.fidelity(text))
