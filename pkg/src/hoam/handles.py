"""FormHandle: a named function on H, on H x R, or on C minus a lattice."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

from .covering_group import PointHTheta

DOMAINS = ("upper_half_plane", "covering_group", "torus_complement")


class RegionError(ValueError):
    """Evaluation requested outside a form's validity region."""


@dataclass(frozen=True)
class FormHandle:
    name: str
    evaluator: Callable
    domain_kind: str = "upper_half_plane"
    weight_info: tuple = (0, "strict")
    eigen_info: Optional[tuple] = None
    validity: Optional[Callable] = field(default=None, compare=False)
    description: str = ""

    def __post_init__(self):
        if self.domain_kind not in DOMAINS:
            raise ValueError(f"unknown domain kind {self.domain_kind!r}")

    def valid(self, point) -> bool:
        if self.validity is None:
            return True
        return bool(self.validity(self._coerce(point)))

    def _coerce(self, point):
        if self.domain_kind == "covering_group":
            return point if isinstance(point, PointHTheta) else PointHTheta(complex(point), 0.0)
        if isinstance(point, PointHTheta):
            return point.z
        return complex(point)

    def __call__(self, point):
        p = self._coerce(point)
        if self.validity is not None and not self.validity(p):
            raise RegionError(f"{self.name}: point {point} outside the validity region")
        return self.evaluator(p)

    def evaluate_xyt(self, z: complex, theta: float):
        if self.domain_kind == "covering_group":
            return self(PointHTheta(z, theta))
        return self(z)

    def scaled(self, c, name: str | None = None) -> "FormHandle":
        ev = self.evaluator
        return FormHandle(name or f"{c}*{self.name}", lambda p: c * ev(p), self.domain_kind,
                          self.weight_info, self.eigen_info, self.validity, self.description)


def constant_form(value=1.0, domain_kind: str = "upper_half_plane") -> FormHandle:
    return FormHandle(f"const({value})", lambda p: value, domain_kind)
