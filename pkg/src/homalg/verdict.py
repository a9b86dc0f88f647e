"""Truncation-honest homological verdicts."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class Finite:
    d: int

    def __str__(self):
        return f"Finite({self.d})"


@dataclass(frozen=True)
class InfiniteCertified:
    """Syzygy periodicity ``Omega^j M ≅ Omega^i M <shift>`` with ``i < j``."""

    i: int
    j: int
    shift: int
    module: str = "M"
    witness: dict = field(default=None, compare=False, repr=False)

    @property
    def evidence(self):
        return f"Omega^{self.j}({self.module}) ≅ Omega^{self.i}({self.module})<{self.shift}>"

    def __str__(self):
        return f"InfiniteCertified: {self.evidence}"


@dataclass(frozen=True)
class Unknown:
    bound: int

    def __str__(self):
        return f"Unknown(bound={self.bound})"


def is_finite(v) -> bool:
    return isinstance(v, Finite)


def truth(v):
    """Three-valued reading of "finite": True, False, or None (unknown)."""
    if isinstance(v, Finite):
        return True
    if isinstance(v, InfiniteCertified):
        return False
    return None


def short(v) -> str:
    if isinstance(v, Finite):
        return f"Finite({v.d})"
    if isinstance(v, InfiniteCertified):
        return "InfiniteCertified"
    if isinstance(v, Unknown):
        return "Unknown"
    return str(v)


@dataclass(frozen=True)
class Linearity:
    """Outcome of a linearity check of a minimal resolution."""

    linear: bool
    stage: int  # first failing stage, or last stage checked
    complete: bool = False  # resolution terminated within the bound

    def __str__(self):
        if not self.linear:
            return f"FailsAt({self.stage})"
        if self.complete:
            return f"Linear(complete, length {self.stage})"
        return f"LinearUpTo({self.stage})"
