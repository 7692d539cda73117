"""Experiment configuration: JSON schema, validation, and resolution into
the domain objects the sweep engine consumes.

Config files are plain JSON (the one structured format used across this
repo). Every validation error carries the JSON path of the offending field.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Any

import numpy as np

from .bath import BathSpec, custom_bath, skrzypczyk_bath
from .spectra import DensityOperator, DiagonalHamiltonian
from .weight import EnergyEigenstateWeight, GaussianWeight, TimeStateWeight, WeightModel

SWEEP_PARAMETERS = ("N", "sigma_over_omega")
OUTPUT_FORMATS = ("csv", "json")


class ConfigError(ValueError):
    """Invalid configuration; message is annotated with the field path."""


def _fail(path: str, message: str) -> ConfigError:
    return ConfigError(f"{path}: {message}")


def _require(mapping: Any, key: str, path: str) -> Any:
    if not isinstance(mapping, dict):
        raise _fail(path, "expected an object")
    if key not in mapping:
        raise _fail(f"{path}.{key}" if path else key, "missing required field")
    return mapping[key]


def _check_keys(mapping: dict, allowed: set[str], path: str) -> None:
    unknown = set(mapping) - allowed
    if unknown:
        raise _fail(path, f"unknown field(s): {', '.join(sorted(unknown))}")


def _as_real(value: Any, path: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise _fail(path, "expected a number")
    value = float(value)
    if not math.isfinite(value):
        raise _fail(path, "must be finite")
    return value


def _as_positive(value: Any, path: str) -> float:
    value = _as_real(value, path)
    if value <= 0:
        raise _fail(path, "must be > 0")
    return value


def _as_int(value: Any, path: str, minimum: int = 0) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise _fail(path, "expected an integer")
    if value < minimum:
        raise _fail(path, f"must be >= {minimum}")
    return value


@dataclass(frozen=True)
class SweepSpec:
    parameter: str
    values: tuple[float, ...]


@dataclass(frozen=True)
class OutputSpec:
    path: str | None
    format: str


@dataclass(frozen=True, eq=False)
class ExperimentConfig:
    """Fully validated experiment description.

    Fixed parameters are held resolved; the swept parameter (bath size N or
    the Gaussian sigma/omega ratio) is substituted per point through
    :meth:`bath_spec` and :meth:`weight_model`.
    """

    hamiltonian: DiagonalHamiltonian
    state: DensityOperator
    temperature: float
    bath_model: str
    bath_n: int
    bath_omega: float | None
    bath_gaps: tuple[float, ...] | None
    weight_kind: str
    weight_sigma: float | None
    weight_t: float
    sweep: SweepSpec | None
    output: OutputSpec | None
    seed: int | None

    @property
    def reference_omega(self) -> float:
        """System gap used to scale sigma/omega sweep values."""
        return float(self.hamiltonian.energies[1] - self.hamiltonian.energies[0])

    def bath_spec(self, n: int | None = None) -> BathSpec:
        if self.bath_model == "custom":
            if n is not None:
                raise ConfigError("sweep.parameter: N sweeps need a skrzypczyk bath")
            return custom_bath(self.temperature, self.bath_gaps)
        size = self.bath_n if n is None else n
        if size == 0:
            # Degenerate bathless point: a BathSpec with no qubits.
            return BathSpec(T=self.temperature, gaps=np.empty(0))
        return skrzypczyk_bath(size, self.temperature, self.bath_omega)

    def weight_model(self, sigma_over_omega: float | None = None) -> WeightModel:
        if sigma_over_omega is not None:
            if self.weight_kind != "gaussian":
                raise ConfigError(
                    "sweep.parameter: sigma_over_omega sweeps need a gaussian weight"
                )
            return GaussianWeight(sigma=sigma_over_omega * self.reference_omega)
        if self.weight_kind == "gaussian":
            return GaussianWeight(sigma=self.weight_sigma)
        if self.weight_kind == "time_state":
            return TimeStateWeight(t=self.weight_t)
        return EnergyEigenstateWeight()


def _parse_state(raw: Any, dim: int, path: str) -> DensityOperator:
    if raw == "plus":
        return DensityOperator(np.full((dim, dim), 1.0 / dim, dtype=np.complex128))
    if isinstance(raw, dict) and set(raw) == {"computational"}:
        index = _as_int(raw["computational"], f"{path}.computational")
        if index >= dim:
            raise _fail(f"{path}.computational", f"index {index} out of range for dim {dim}")
        mat = np.zeros((dim, dim), dtype=np.complex128)
        mat[index, index] = 1.0
        return DensityOperator(mat)
    if isinstance(raw, dict) and set(raw) == {"matrix"}:
        rows = raw["matrix"]
        if not isinstance(rows, list) or len(rows) != dim:
            raise _fail(f"{path}.matrix", f"expected {dim} rows")
        mat = np.zeros((dim, dim), dtype=np.complex128)
        for i, row in enumerate(rows):
            if not isinstance(row, list) or len(row) != dim:
                raise _fail(f"{path}.matrix[{i}]", f"expected {dim} entries")
            for j, cell in enumerate(row):
                cell_path = f"{path}.matrix[{i}][{j}]"
                if isinstance(cell, list):
                    if len(cell) != 2:
                        raise _fail(cell_path, "complex entries are [re, im] pairs")
                    mat[i, j] = complex(_as_real(cell[0], cell_path), _as_real(cell[1], cell_path))
                else:
                    mat[i, j] = _as_real(cell, cell_path)
        try:
            return DensityOperator(mat)
        except ValueError as exc:
            raise _fail(f"{path}.matrix", str(exc)) from exc
    raise _fail(path, 'expected "plus", {"computational": k}, or {"matrix": [[...]]}')


def _parse_sweep_values(raw: dict, parameter: str, path: str) -> tuple[float, ...]:
    if ("values" in raw) == ("range" in raw):
        raise _fail(path, 'provide exactly one of "values" or "range"')
    if "values" in raw:
        values = raw["values"]
        if not isinstance(values, list) or not values:
            raise _fail(f"{path}.values", "expected a non-empty list")
        out = [_as_real(v, f"{path}.values[{i}]") for i, v in enumerate(values)]
    else:
        rng = raw["range"]
        rpath = f"{path}.range"
        _check_keys(rng, {"from", "to", "steps", "spacing"}, rpath)
        start = _as_real(_require(rng, "from", rpath), f"{rpath}.from")
        stop = _as_real(_require(rng, "to", rpath), f"{rpath}.to")
        steps = _as_int(_require(rng, "steps", rpath), f"{rpath}.steps", minimum=1)
        spacing = rng.get("spacing", "linear")
        if spacing not in ("linear", "log"):
            raise _fail(f"{rpath}.spacing", 'expected "linear" or "log"')
        if spacing == "log":
            if start <= 0:
                raise _fail(f"{rpath}.from", "log spacing needs positive endpoints")
            out = list(np.geomspace(start, stop, steps))
        else:
            out = list(np.linspace(start, stop, steps))
    if any(b <= a for a, b in zip(out, out[1:])):
        raise _fail(path, "sweep values must be strictly increasing")
    if parameter == "N":
        ints = []
        for i, v in enumerate(out):
            if v != int(v) or v < 0:
                raise _fail(f"{path}.values[{i}]", "N values must be integers >= 0")
            ints.append(float(int(v)))
        return tuple(ints)
    for i, v in enumerate(out):
        if v <= 0:
            raise _fail(f"{path}.values[{i}]", "sigma_over_omega values must be > 0")
    return tuple(float(v) for v in out)


def parse_config(data: dict) -> ExperimentConfig:
    """Validate a decoded JSON object into an :class:`ExperimentConfig`."""
    if not isinstance(data, dict):
        raise ConfigError("top level: expected an object")
    _check_keys(
        data, {"system", "bath", "weight", "temperature", "sweep", "output", "seed"}, "top level"
    )

    temperature = _as_positive(_require(data, "temperature", ""), "temperature")

    system = _require(data, "system", "")
    _check_keys(system, {"gaps", "state"}, "system")
    raw_gaps = _require(system, "gaps", "system")
    if not isinstance(raw_gaps, list) or not raw_gaps:
        raise _fail("system.gaps", "expected a non-empty list of positive gaps")
    gaps = [_as_positive(g, f"system.gaps[{i}]") for i, g in enumerate(raw_gaps)]
    # Gaps are successive level spacings above a zero ground level.
    energies = np.concatenate([[0.0], np.cumsum(gaps)])
    hamiltonian = DiagonalHamiltonian(energies)
    state = _parse_state(_require(system, "state", "system"), hamiltonian.dim, "system.state")

    bath = _require(data, "bath", "")
    model = _require(bath, "model", "bath")
    if model == "skrzypczyk":
        _check_keys(bath, {"model", "N", "omega"}, "bath")
        bath_n = _as_int(_require(bath, "N", "bath"), "bath.N", minimum=0)
        bath_omega = _as_positive(_require(bath, "omega", "bath"), "bath.omega")
        bath_gaps = None
    elif model == "custom":
        _check_keys(bath, {"model", "gaps"}, "bath")
        raw = _require(bath, "gaps", "bath")
        if not isinstance(raw, list) or not raw:
            raise _fail("bath.gaps", "expected a non-empty list of positive gaps")
        bath_gaps = tuple(_as_positive(g, f"bath.gaps[{i}]") for i, g in enumerate(raw))
        bath_n = len(bath_gaps)
        bath_omega = None
    else:
        raise _fail("bath.model", 'expected "skrzypczyk" or "custom"')

    weight = _require(data, "weight", "")
    kind = _require(weight, "kind", "weight")
    weight_sigma: float | None = None
    weight_t = 0.0
    if kind == "gaussian":
        _check_keys(weight, {"kind", "sigma"}, "weight")
        weight_sigma = _as_positive(_require(weight, "sigma", "weight"), "weight.sigma")
    elif kind == "time_state":
        _check_keys(weight, {"kind", "t"}, "weight")
        weight_t = _as_real(weight.get("t", 0.0), "weight.t")
    elif kind == "energy_eigenstate":
        _check_keys(weight, {"kind"}, "weight")
    else:
        raise _fail("weight.kind", 'expected "gaussian", "time_state", or "energy_eigenstate"')

    sweep = None
    if data.get("sweep") is not None:
        raw = data["sweep"]
        _check_keys(raw, {"parameter", "values", "range"}, "sweep")
        parameter = _require(raw, "parameter", "sweep")
        if parameter not in SWEEP_PARAMETERS:
            raise _fail("sweep.parameter", f"expected one of {SWEEP_PARAMETERS}")
        if parameter == "N" and model != "skrzypczyk":
            raise _fail("sweep.parameter", "N sweeps need a skrzypczyk bath")
        if parameter == "sigma_over_omega" and kind != "gaussian":
            raise _fail("sweep.parameter", "sigma_over_omega sweeps need a gaussian weight")
        sweep = SweepSpec(parameter=parameter, values=_parse_sweep_values(raw, parameter, "sweep"))

    output = None
    if data.get("output") is not None:
        raw = data["output"]
        _check_keys(raw, {"path", "format"}, "output")
        fmt = raw.get("format", "csv")
        if fmt not in OUTPUT_FORMATS:
            raise _fail("output.format", f"expected one of {OUTPUT_FORMATS}")
        path = raw.get("path")
        if path is not None and not isinstance(path, str):
            raise _fail("output.path", "expected a string")
        output = OutputSpec(path=path, format=fmt)

    seed = None
    if data.get("seed") is not None:
        seed = _as_int(data["seed"], "seed", minimum=0)
        if seed >= 1 << 64:
            raise _fail("seed", "must fit in 64 unsigned bits")

    return ExperimentConfig(
        hamiltonian=hamiltonian,
        state=state,
        temperature=temperature,
        bath_model=model,
        bath_n=bath_n,
        bath_omega=bath_omega,
        bath_gaps=bath_gaps,
        weight_kind=kind,
        weight_sigma=weight_sigma,
        weight_t=weight_t,
        sweep=sweep,
        output=output,
        seed=seed,
    )


def load_config(path: str | Path) -> ExperimentConfig:
    """Read and validate a JSON config file."""
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"{path}: {exc}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from exc
    return parse_config(data)
