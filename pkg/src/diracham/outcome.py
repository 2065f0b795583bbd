"""Solver results and the certificates attached to negative answers."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Union


@dataclass(frozen=True)
class Exhaustive:
    """Negative answer established by exhaustive search (or a degenerate size)."""

    method: str
    n: int
    detail: str = ""

    def to_json(self) -> dict:
        return {"type": "exhaustive", "method": self.method, "n": self.n, "detail": self.detail}


@dataclass(frozen=True)
class Hamiltonian:
    cycle: tuple[int, ...]
    strategy: str
    info: dict[str, Any] = field(default_factory=dict, compare=False)

    hamiltonian = True
    certificate = None


@dataclass(frozen=True)
class NonHamiltonian:
    certificate: Any
    strategy: str
    info: dict[str, Any] = field(default_factory=dict, compare=False)

    hamiltonian = False
    cycle = None


SolveOutcome = Union[Hamiltonian, NonHamiltonian]
