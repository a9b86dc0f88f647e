"""Instances ``(A, e, bound)`` with lazily computed, shared analysis."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations

from ..algebra import GradedBasicAlgebra, corner
from ..cartan import cartan_reduction
from ..ext import ext_algebra, ext_algebra_global_dimension, ext_quiver
from ..modules import semisimple_module
from ..resolution import (
    DEFAULT_BOUND,
    BoundError,
    global_dimension,
    is_koszul,
    is_linear_resolution,
)
from ..textformat import load_algebra


@dataclass
class Instance:
    algebra: GradedBasicAlgebra
    support: tuple  # labels of e
    bound: int = DEFAULT_BOUND
    presentation: object = None
    seed: int | None = None
    key: str = ""
    cache: object = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        self.support = tuple(sorted({str(x) for x in self.support}, key=self.algebra.label_index))
        if not self.key:
            name = self.algebra.name or (self.presentation.name if self.presentation else "A")
            self.key = f"{name}|e={{{','.join(self.support)}}}"

    @cached_property
    def analysis(self) -> Analysis:
        return Analysis(self)

    def with_bound(self, bound: int) -> Instance:
        return Instance(self.algebra, self.support, bound, self.presentation, self.seed, self.key, self.cache)

    def serialize(self) -> str:
        """Re-runnable text: the algebra plus ``# e =`` and ``# bound =`` lines."""
        body = self.presentation.to_text() if self.presentation is not None else self.algebra.serialize()
        head = f"# instance {self.key}\n# e = {','.join(self.support)}\n# bound = {self.bound}\n"
        return head + body


def instance_from_text(text: str, cache=None) -> Instance:
    """Inverse of :meth:`Instance.serialize`."""
    support, bound, key = (), DEFAULT_BOUND, ""
    for line in text.splitlines():
        s = line.strip()
        if s.startswith("# e ="):
            support = tuple(x for x in s[5:].strip().split(",") if x)
        elif s.startswith("# bound ="):
            bound = int(s[9:])
        elif s.startswith("# instance "):
            key = s[len("# instance ") :]
    alg, pres = load_algebra(text)
    return Instance(alg, support, bound, pres, key=key, cache=cache)


def support_subsets(alg: GradedBasicAlgebra, include_empty=False):
    labels = alg.labels
    start = 0 if include_empty else 1
    for k in range(start, len(labels) + 1):
        yield from combinations(labels, k)


class Analysis:
    """Verdicts for one instance, each computed at most once."""

    def __init__(self, inst: Instance):
        self.inst = inst

    @property
    def alg(self):
        return self.inst.algebra

    @cached_property
    def gldim_A(self):
        return global_dimension(self.alg, self.inst.bound, self.inst.cache)

    @cached_property
    def complement(self):
        return tuple(x for x in self.alg.labels if x not in self.inst.support)

    @cached_property
    def gamma(self):
        return corner(self.alg, self.complement)

    @cached_property
    def gldim_Gamma(self):
        return global_dimension(self.gamma, self.inst.bound, self.inst.cache)

    @cached_property
    def Y(self):
        return ext_algebra(self.alg, self.inst.support, self.inst.bound, self.inst.cache)

    @cached_property
    def _gldim_Y(self):
        return ext_algebra_global_dimension(self.Y, self.inst.bound, self.inst.cache)

    @property
    def gldim_Y(self):
        return self._gldim_Y[0]

    @property
    def gldim_Y_advisory(self):
        return self._gldim_Y[1]

    @cached_property
    def quiver(self):
        return ext_quiver(self.alg, self.inst.support, self.inst.cache)

    @cached_property
    def koszul(self):
        return is_koszul(self.alg, self.inst.bound, self.inst.cache)

    @cached_property
    def linear_Se(self):
        if not self.inst.support:
            return None
        return is_linear_resolution(semisimple_module(self.alg, self.inst.support), self.inst.bound, self.inst.cache)

    @cached_property
    def cartan(self):
        try:
            return cartan_reduction(self.alg, self.inst.support, self.inst.bound, self.inst.cache, self.Y, self.gldim_Y)
        except BoundError:
            return None
