"""Scenario files: strict YAML documents describing one model instance.

Every document has three top-level keys::

    schema_version: "1"
    kind: hub
    body: {v_p: 0, t_p: 3, v_c: 10, t_c: 1, i_c: 20, n: 10}

Unknown keys anywhere are rejected, so a misspelt parameter name fails
loudly instead of silently falling back to a default. Response functions of
parametric hubs are named families with coefficient lists; scenario files
never carry code.
"""

from __future__ import annotations

import dataclasses
import math
import types
import typing
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Union

import numpy as np
import yaml

from .core import Ecosystem, Edge, Participant, TransactionTerms
from .errors import ParseError, SchemaMismatch, UnknownField
from .extensions import ComparisonParams, FederatorTerms
from .hub import HubParams, ParametricHubModel
from .viability import AverageProfile

SCHEMA_VERSION = "1"


# -- response-function families ---------------------------------------------

FAMILY_ARITY = {"linear": 2, "quadratic": 2, "saturating": 1}


@dataclass(frozen=True)
class FunctionSpec:
    """A named one-argument function.

    linear: a + b*x; quadratic: v*x - q*x**2; saturating: c*(1 - 1/(x+1)).
    """

    family: str
    coefficients: tuple[float, ...]

    def __post_init__(self):
        if self.family not in FAMILY_ARITY:
            raise ValueError(f"unknown family {self.family!r}; expected one of {sorted(FAMILY_ARITY)}")
        if len(self.coefficients) != FAMILY_ARITY[self.family]:
            raise ValueError(
                f"family {self.family!r} takes {FAMILY_ARITY[self.family]} coefficients, "
                f"got {len(self.coefficients)}"
            )

    def __call__(self, x):
        c = self.coefficients
        if self.family == "linear":
            return c[0] + c[1] * x
        if self.family == "quadratic":
            return c[0] * x - c[1] * x * x
        return c[0] * (1.0 - 1.0 / (x + 1.0))

    def derivative(self, x):
        c = self.coefficients
        if self.family == "linear":
            return c[1] + 0.0 * x
        if self.family == "quadratic":
            return c[0] - 2.0 * c[1] * x
        return c[0] / ((x + 1.0) * (x + 1.0))


# -- bodies -----------------------------------------------------------------


@dataclass(frozen=True)
class ParticipantSpec:
    id: str
    investment: float = 0.0


@dataclass(frozen=True)
class TermsSpec:
    v_p: float
    v_c: float
    t_p: float
    t_c: float
    x: float | None = None

    def to_terms(self) -> TransactionTerms:
        return TransactionTerms(self.v_p, self.v_c, self.t_p, self.t_c, self.x)


@dataclass(frozen=True)
class EdgeSpec:
    provider: str
    consumer: str
    v_p: float
    v_c: float
    t_p: float
    t_c: float
    x: float | None = None


@dataclass(frozen=True)
class EcosystemBody:
    participants: tuple[ParticipantSpec, ...]
    edges: tuple[EdgeSpec, ...]
    time_window: str = ""

    def to_ecosystem(self) -> Ecosystem:
        return Ecosystem(
            tuple(Participant(p.id, p.investment) for p in self.participants),
            tuple(
                Edge(e.provider, e.consumer, TransactionTerms(e.v_p, e.v_c, e.t_p, e.t_c, e.x))
                for e in self.edges
            ),
            self.time_window,
        )


@dataclass(frozen=True)
class HubBody:
    v_p: float
    t_p: float
    v_c: float
    t_c: float
    i_c: float
    n: int
    n_range: tuple[int, ...] | None = None

    def __post_init__(self):
        if self.n_range is not None and len(self.n_range) != 2:
            raise ValueError("n_range must be [first, last]")
        self.to_params()

    def to_params(self) -> HubParams:
        return HubParams(self.v_p, self.t_p, self.v_c, self.t_c, self.i_c, self.n)


@dataclass(frozen=True)
class ParametricHubBody:
    n_of_x: FunctionSpec
    v_c_of_n: FunctionSpec
    t_c_of_n: FunctionSpec
    bracket: tuple[float, ...]
    v_p: float = 0.0
    t_p: float = 0.0
    derivatives: str = "analytic"
    grid_step: float = 1e-3

    def __post_init__(self):
        if len(self.bracket) != 2 or not self.bracket[0] < self.bracket[1]:
            raise ValueError("bracket must be [low, high] with low < high")
        if self.derivatives not in ("analytic", "central-difference"):
            raise ValueError("derivatives must be 'analytic' or 'central-difference'")
        if not self.grid_step > 0:
            raise ValueError("grid_step must be positive")

    def to_model(self) -> ParametricHubModel:
        analytic = self.derivatives == "analytic"
        return ParametricHubModel(
            n_of_x=self.n_of_x,
            v_c_of_n=self.v_c_of_n,
            t_c_of_n=self.t_c_of_n,
            v_p=self.v_p,
            t_p=self.t_p,
            dn_dx=self.n_of_x.derivative if analytic else None,
            dvc_dn=self.v_c_of_n.derivative if analytic else None,
            dtc_dn=self.t_c_of_n.derivative if analytic else None,
        )


@dataclass(frozen=True)
class ViabilityBody:
    v_c: float
    t_c: float
    i_c: float
    t_p: float
    n: int | None = None
    m: int | None = None
    n_max: int = 10
    m_max: int = 10

    def profile(self) -> AverageProfile:
        if self.n is None or self.m is None:
            raise ValueError("viability body needs n and m for a point check")
        return AverageProfile(self.n, self.m, self.v_c, self.t_c, self.i_c, self.t_p)


@dataclass(frozen=True)
class ConsumerEngagementSpec:
    t_c_eco: float
    t_c_std: float


@dataclass(frozen=True)
class ProviderEngagementSpec:
    v_p_eco: float
    v_p_std: float
    t_p_eco: float
    t_p_std: float


@dataclass(frozen=True)
class CompareBody:
    delta_v: float
    t_p_g: float
    alpha: float
    beta: float | None = None
    t_d: float | None = None
    consumer: ConsumerEngagementSpec | None = None
    provider: ProviderEngagementSpec | None = None

    def to_params(self) -> ComparisonParams:
        return ComparisonParams(self.delta_v, self.t_p_g, self.alpha, self.beta, self.t_d)


@dataclass(frozen=True)
class FederatorSpec:
    f_p: float
    f_c: float
    t_f: float


@dataclass(frozen=True)
class FederatorBody:
    terms: TermsSpec
    federator: FederatorSpec

    def to_federator(self) -> FederatorTerms:
        return FederatorTerms(self.federator.f_p, self.federator.f_c, self.federator.t_f)


BODIES = {
    "ecosystem": EcosystemBody,
    "hub": HubBody,
    "parametric_hub": ParametricHubBody,
    "viability": ViabilityBody,
    "compare": CompareBody,
    "federator": FederatorBody,
}


@dataclass(frozen=True)
class Scenario:
    kind: str
    body: Any
    schema_version: str = SCHEMA_VERSION

    def to_dict(self) -> dict:
        return {"schema_version": self.schema_version, "kind": self.kind, "body": _dump(self.body)}

    def dumps(self) -> str:
        return yaml.safe_dump(self.to_dict(), sort_keys=False)


# -- strict conversion ------------------------------------------------------


def _describe(value) -> str:
    return type(value).__name__


def _convert(tp, value, path: str):
    origin = typing.get_origin(tp)
    if origin in (Union, types.UnionType):
        args = [a for a in typing.get_args(tp) if a is not type(None)]
        if value is None:
            return None
        return _convert(args[0], value, path)
    if origin is tuple:
        (item_tp, _) = typing.get_args(tp)
        if not isinstance(value, list):
            raise ParseError(f"{path}: expected a list, got {_describe(value)}")
        return tuple(_convert(item_tp, v, f"{path}[{i}]") for i, v in enumerate(value))
    if dataclasses.is_dataclass(tp):
        return _build(tp, value, path)
    if tp is float:
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ParseError(f"{path}: expected a number, got {_describe(value)}")
        if not math.isfinite(value):
            raise ParseError(f"{path}: expected a finite number")
        return float(value)
    if tp is int:
        if isinstance(value, bool) or not isinstance(value, int):
            raise ParseError(f"{path}: expected an integer, got {_describe(value)}")
        return value
    if tp is str:
        if not isinstance(value, str):
            raise ParseError(f"{path}: expected a string, got {_describe(value)}")
        return value
    raise TypeError(f"unsupported field type {tp!r}")


def _build(cls, data, path: str):
    if not isinstance(data, dict):
        raise ParseError(f"{path}: expected a mapping, got {_describe(data)}")
    hints = typing.get_type_hints(cls)
    fields = {f.name: f for f in dataclasses.fields(cls)}
    for key in data:
        if key not in fields:
            raise UnknownField(str(key), f"{path}.{key}")
    kwargs = {}
    for name, f in fields.items():
        if name in data:
            kwargs[name] = _convert(hints[name], data[name], f"{path}.{name}")
        elif f.default is dataclasses.MISSING and f.default_factory is dataclasses.MISSING:
            raise ParseError(f"{path}: missing required field {name!r}")
    try:
        return cls(**kwargs)
    except ValueError as exc:
        raise ParseError(f"{path}: {exc}") from exc


def _dump(obj):
    if dataclasses.is_dataclass(obj):
        out = {}
        for f in dataclasses.fields(obj):
            value = getattr(obj, f.name)
            if value is not None:
                out[f.name] = _dump(value)
        return out
    if isinstance(obj, tuple):
        return [_dump(v) for v in obj]
    if isinstance(obj, np.generic):
        return obj.item()
    return obj


def parse_scenario(data, source: str = "<scenario>") -> Scenario:
    if not isinstance(data, dict):
        raise ParseError(f"{source}: top level must be a mapping")
    for key in data:
        if key not in ("schema_version", "kind", "body"):
            raise UnknownField(str(key), str(key))
    if "schema_version" not in data:
        raise ParseError(f"{source}: missing schema_version")
    version = data["schema_version"]
    if version != SCHEMA_VERSION:
        raise SchemaMismatch(version, SCHEMA_VERSION)
    kind = data.get("kind")
    if kind not in BODIES:
        raise ParseError(f"{source}: kind must be one of {sorted(BODIES)}, got {kind!r}")
    if "body" not in data:
        raise ParseError(f"{source}: missing body")
    body = _build(BODIES[kind], data["body"], "body")
    return Scenario(kind=kind, body=body)


def loads_scenario(text: str, source: str = "<scenario>") -> Scenario:
    try:
        data = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        mark = getattr(exc, "problem_mark", None)
        where = f"line {mark.line + 1}, column {mark.column + 1}" if mark else "unknown position"
        raise ParseError(f"{source}: {where}: {getattr(exc, 'problem', exc)}") from exc
    return parse_scenario(data, source)


def load_scenario(path) -> Scenario:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise ParseError(f"{path}: {exc}") from exc
    return loads_scenario(text, str(path))
