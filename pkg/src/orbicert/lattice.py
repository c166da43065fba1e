"""Intersection arithmetic on a plane blown up at finitely many points.

Classes live in the lattice spanned by the hyperplane pullback H and the
exceptional classes E_Q of the blown-up points, with Gram matrix
diag(1, -1, ..., -1).  A class is stored as h*H - sum(e[Q]*E_Q), so the
strict transform of a degree d curve through a set of points has h = d and
stored coefficient 1 at each of those points.

A SurfaceConfig records the boundary shape combinatorially: component
degrees, which components are paired with an auxiliary curve that pins the
blown-up points, and the incidence table of those points.  Paired
components carry exactly degree^2 points (transversal intersections plus
padding), which forces their strict transforms to have self-intersection
zero.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Union

Coeff = Union[int, Fraction]

CONFIG_FORMAT_VERSION = 1


class ConfigError(ValueError):
    """The combinatorial surface description violates an invariant."""


@dataclass(frozen=True)
class DivisorClass:
    """Lattice vector h*H - sum over points of e[Q]*E_Q."""

    h: Coeff
    e_items: tuple[tuple[str, Coeff], ...] = ()

    @staticmethod
    def make(h: Coeff, e: Mapping[str, Coeff] | None = None) -> "DivisorClass":
        items = tuple(
            sorted((str(q), c) for q, c in (e or {}).items() if c != 0)
        )
        return DivisorClass(h, items)

    @property
    def e(self) -> dict[str, Coeff]:
        return dict(self.e_items)

    def coefficient(self, point: str) -> Coeff:
        for q, c in self.e_items:
            if q == point:
                return c
        return 0

    def is_integral(self) -> bool:
        vals = [self.h, *(c for _, c in self.e_items)]
        return all(
            isinstance(v, int) or (isinstance(v, Fraction) and v.denominator == 1)
            for v in vals
        )

    def __add__(self, other: "DivisorClass") -> "DivisorClass":
        e = self.e
        for q, c in other.e_items:
            e[q] = e.get(q, 0) + c
        return DivisorClass.make(self.h + other.h, e)

    def __sub__(self, other: "DivisorClass") -> "DivisorClass":
        return self + (-1) * other

    def __mul__(self, scalar: Coeff) -> "DivisorClass":
        return DivisorClass.make(
            self.h * scalar, {q: c * scalar for q, c in self.e_items}
        )

    __rmul__ = __mul__

    def __neg__(self) -> "DivisorClass":
        return (-1) * self

    def __str__(self) -> str:
        parts = [f"{self.h}H"]
        for q, c in self.e_items:
            parts.append(f"- {c}E({q})" if c >= 0 else f"+ {-c}E({q})")
        return " ".join(parts)


def intersect(a: DivisorClass, b: DivisorClass) -> Coeff:
    """Intersection pairing: a.h*b.h - sum of products of stored e's."""
    total = a.h * b.h
    be = dict(b.e_items)
    for q, c in a.e_items:
        other = be.get(q)
        if other is not None:
            total -= c * other
    return total


def exceptional_class(point: str) -> DivisorClass:
    """The class of the exceptional curve over a point (square -1)."""
    return DivisorClass.make(0, {point: -1})


@dataclass(frozen=True)
class Component:
    """One boundary curve: plane degree, optional pairing curve degree."""

    degree: int
    paired: bool = False
    pairing_degree: int | None = None
    role: str = "boundary"

    def __post_init__(self) -> None:
        if self.degree < 1:
            raise ConfigError(f"component degree {self.degree} must be positive")
        if self.paired:
            pd = self.degree if self.pairing_degree is None else self.pairing_degree
            if not 1 <= pd <= self.degree:
                raise ConfigError(
                    f"pairing degree {pd} must lie in [1, {self.degree}]"
                )
            object.__setattr__(self, "pairing_degree", pd)
        elif self.pairing_degree is not None:
            raise ConfigError("unpaired component cannot carry a pairing degree")


@dataclass(frozen=True)
class BlownPoint:
    ident: str
    on: frozenset[int]

    @staticmethod
    def make(ident: str, on: Iterable[int]) -> "BlownPoint":
        return BlownPoint(str(ident), frozenset(int(i) for i in on))


@dataclass
class SurfaceConfig:
    """Combinatorial description of the blown-up plane and its boundary."""

    components: tuple[Component, ...]
    points: tuple[BlownPoint, ...]
    no_three_meet: bool = True
    allow_single_component: bool = False
    padded: bool = False
    name: str = ""
    default_weights: tuple[str, ...] | None = None
    default_multiplicities: tuple[str, ...] | None = None
    metadata: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        self.validate()

    # -- invariants ---------------------------------------------------------

    def validate(self) -> None:
        if not self.components:
            raise ConfigError("at least one component is required")
        counts = {i: 0 for i, c in enumerate(self.components) if c.paired}
        seen: set[str] = set()
        for pt in self.points:
            if pt.ident in seen:
                raise ConfigError(f"duplicate point id {pt.ident!r}")
            seen.add(pt.ident)
            if len(pt.on) != 1:
                raise ConfigError(
                    f"point {pt.ident!r} must lie on exactly one component"
                )
            (idx,) = pt.on
            if not 0 <= idx < len(self.components):
                raise ConfigError(f"point {pt.ident!r} on unknown component {idx}")
            if not self.components[idx].paired:
                raise ConfigError(
                    f"point {pt.ident!r} lies on unpaired component {idx}"
                )
            counts[idx] += 1
        for idx, got in counts.items():
            want = self.components[idx].degree ** 2
            if got != want:
                raise ConfigError(
                    f"component {idx} needs {want} points after padding, has {got}"
                )

    # -- construction ---------------------------------------------------------

    @staticmethod
    def build(
        paired_degrees: Iterable[int],
        pairing_degrees: Iterable[int] | None = None,
        hyperplane: bool = True,
        **kwargs,
    ) -> "SurfaceConfig":
        """Assemble a config with auto-generated points, one per incidence.

        Each paired component of degree d receives d*b transversal points
        plus d*(d-b) padding points, where b is its pairing degree.
        """
        degrees = list(paired_degrees)
        pairings = list(pairing_degrees) if pairing_degrees else degrees[:]
        if len(pairings) != len(degrees):
            raise ConfigError("one pairing degree per paired component")
        comps = [
            Component(degree=d, paired=True, pairing_degree=b)
            for d, b in zip(degrees, pairings)
        ]
        if hyperplane:
            comps.append(Component(degree=1, paired=False, role="hyperplane"))
        points = []
        padded = False
        for i, comp in enumerate(comps):
            if not comp.paired:
                continue
            d, b = comp.degree, comp.pairing_degree
            padded = padded or b < d
            for k in range(d * d):
                points.append(BlownPoint.make(f"P{i + 1}.{k + 1}", [i]))
        return SurfaceConfig(
            components=tuple(comps),
            points=tuple(points),
            padded=padded,
            **kwargs,
        )

    @property
    def r(self) -> int:
        return len(self.components)

    def points_on(self, index: int) -> list[BlownPoint]:
        return [p for p in self.points if index in p.on]

    # -- serialization ------------------------------------------------------

    def to_json_dict(self) -> dict:
        doc: dict = {
            "version": CONFIG_FORMAT_VERSION,
            "components": [
                {
                    "degree": c.degree,
                    "paired": c.paired,
                    **({"pairing_degree": c.pairing_degree} if c.paired else {}),
                    "role": c.role,
                }
                for c in self.components
            ],
            "points": [
                {"id": p.ident, "on": sorted(p.on)} for p in self.points
            ],
            "no_three_meet": self.no_three_meet,
            "allow_single_component": self.allow_single_component,
            "padded": self.padded,
        }
        if self.name:
            doc["name"] = self.name
        if self.default_weights is not None:
            doc["weights"] = list(self.default_weights)
        if self.default_multiplicities is not None:
            doc["multiplicities"] = list(self.default_multiplicities)
        if self.metadata:
            doc["metadata"] = self.metadata
        return doc

    @staticmethod
    def from_json_dict(doc: Mapping) -> "SurfaceConfig":
        version = doc.get("version", CONFIG_FORMAT_VERSION)
        if version != CONFIG_FORMAT_VERSION:
            raise ConfigError(f"unsupported config version {version}")
        comps = []
        for raw in doc.get("components", []):
            comps.append(
                Component(
                    degree=int(raw["degree"]),
                    paired=bool(raw.get("paired", False)),
                    pairing_degree=(
                        int(raw["pairing_degree"])
                        if raw.get("paired", False) and "pairing_degree" in raw
                        else None
                    ),
                    role=str(raw.get("role", "boundary")),
                )
            )
        if doc.get("hyperplane", False):
            comps.append(Component(degree=1, paired=False, role="hyperplane"))
        padded = bool(doc.get("padded", False))
        if "points" in doc:
            points = tuple(
                BlownPoint.make(raw["id"], raw["on"]) for raw in doc["points"]
            )
        else:
            points = []
            for i, comp in enumerate(comps):
                if not comp.paired:
                    continue
                padded = padded or comp.pairing_degree < comp.degree
                for k in range(comp.degree**2):
                    points.append(BlownPoint.make(f"P{i + 1}.{k + 1}", [i]))
            points = tuple(points)
        weights = doc.get("weights")
        mults = doc.get("multiplicities")
        return SurfaceConfig(
            components=tuple(comps),
            points=points,
            no_three_meet=bool(doc.get("no_three_meet", True)),
            allow_single_component=bool(doc.get("allow_single_component", False)),
            padded=padded,
            name=str(doc.get("name", "")),
            default_weights=(
                tuple(str(w) for w in weights) if weights is not None else None
            ),
            default_multiplicities=(
                tuple(str(m) for m in mults) if mults is not None else None
            ),
            metadata=dict(doc.get("metadata", {})),
        )

    @staticmethod
    def from_json(text: str) -> "SurfaceConfig":
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"malformed config JSON: {exc}") from exc
        if not isinstance(doc, dict):
            raise ConfigError("config JSON must be an object")
        return SurfaceConfig.from_json_dict(doc)

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2, sort_keys=True)


def canonical_class(cfg: SurfaceConfig) -> DivisorClass:
    """-3H + sum of exceptional classes, i.e. stored coefficients -1."""
    return DivisorClass.make(-3, {p.ident: -1 for p in cfg.points})


def chi(cfg: SurfaceConfig, d: DivisorClass) -> Fraction:
    """Euler characteristic 1 + d.(d - K)/2 on the rational surface.

    Integral classes must produce an integer; a parity failure here means
    the lattice arithmetic is corrupted, so it is asserted.
    """
    k = canonical_class(cfg)
    pairing = intersect(d, d - k)
    value = 1 + Fraction(pairing) / 2
    if d.is_integral():
        assert value.denominator == 1, f"chi({d}) = {value} not integral"
    return value


def strict_transform(cfg: SurfaceConfig, component_index: int) -> DivisorClass:
    """Class of a component's strict transform: d*H minus its points."""
    if not 0 <= component_index < len(cfg.components):
        raise ConfigError(f"no component {component_index}")
    comp = cfg.components[component_index]
    e = {p.ident: 1 for p in cfg.points if component_index in p.on}
    return DivisorClass.make(comp.degree, e)
