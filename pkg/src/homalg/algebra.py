"""Finite-dimensional graded basic algebras given by structure constants.

Basis elements carry a tag ``(u, v, deg)`` meaning ``e_u x e_v = x`` and
``x`` is homogeneous of degree ``deg``.  The first ``n`` basis elements are
the primitive idempotents ``e_0, ..., e_{n-1}`` in label order; the rest are
sorted by degree.  Products are stored sparsely:
``table[(i, j)] = ((k, c), ...)`` lists the nonzero terms of ``b_i * b_j``.
"""

from __future__ import annotations

import hashlib
from functools import cached_property

from .fields import QQ, Field


class AlgebraError(ValueError):
    pass


class GradedBasicAlgebra:
    def __init__(self, field: Field, labels, tags, table, name: str | None = None):
        self.field = field
        self.labels = tuple(str(x) for x in labels)
        if len(set(self.labels)) != len(self.labels):
            raise AlgebraError("duplicate idempotent labels")
        self.n = len(self.labels)
        self.tags = tuple(tuple(t) for t in tags)
        self.dim = len(self.tags)
        self.name = name
        for i in range(self.n):
            if self.tags[i] != (i, i, 0):
                raise AlgebraError(f"basis element {i} must be the idempotent e_{self.labels[i]}")
        for i, (u, v, d) in enumerate(self.tags[self.n :], self.n):
            if d <= 0:
                raise AlgebraError(f"basis element {i} has degree {d}; degree 0 is spanned by idempotents")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise AlgebraError(f"basis element {i} has bad idempotent tags")
        full = {}
        for x, (u, v, _) in enumerate(self.tags):
            full[(u, x)] = ((x, 1),)
            full[(x, v)] = ((x, 1),)
        norm = field.norm
        for (i, j), terms in table.items():
            if i < self.n or j < self.n:
                continue
            terms = tuple((k, norm(c)) for k, c in terms if norm(c))
            if terms:
                full[(i, j)] = terms
        self.table = full

    # ------------------------------------------------------------------
    @cached_property
    def by_u(self):
        """Basis indices grouped by left idempotent (the basis of ``e_u A``)."""
        out = [[] for _ in range(self.n)]
        for x, (u, _, _) in enumerate(self.tags):
            out[u].append(x)
        return out

    @cached_property
    def positive(self):
        return tuple(range(self.n, self.dim))

    @cached_property
    def positive_by_u(self):
        out = [[] for _ in range(self.n)]
        for x in self.positive:
            out[self.tags[x][0]].append(x)
        return out

    @cached_property
    def right_products(self):
        """``right_products[x]`` maps ``b`` to the terms of ``x * b`` (b positive)."""
        out = [{} for _ in range(self.dim)]
        for (i, j), terms in self.table.items():
            if j >= self.n:
                out[i][j] = terms
        return out

    @cached_property
    def max_degree(self):
        return max((t[2] for t in self.tags), default=0)

    def graded_dims(self):
        dims = [0] * (self.max_degree + 1)
        for _, _, d in self.tags:
            dims[d] += 1
        return dims

    def label_index(self, label) -> int:
        try:
            return self.labels.index(str(label))
        except ValueError:
            raise AlgebraError(f"unknown idempotent label {label!r}") from None

    def is_zero(self):
        return self.n == 0

    # ------------------------------------------------------------------
    def product_terms(self, i, j):
        return self.table.get((i, j), ())

    def element(self, coeffs=None) -> AlgebraElement:
        return AlgebraElement(self, coeffs or {})

    def basis_element(self, i) -> AlgebraElement:
        return AlgebraElement(self, {i: 1})

    def idempotent(self, label) -> AlgebraElement:
        return self.basis_element(self.label_index(label))

    def one(self) -> AlgebraElement:
        return AlgebraElement(self, {i: 1 for i in range(self.n)})

    # ------------------------------------------------------------------
    def check(self, exhaustive: bool = True):
        """Verify the structural invariants; raise :class:`AlgebraError`."""
        tags = self.tags
        for (i, j), terms in self.table.items():
            ui, vi, di = tags[i]
            uj, vj, dj = tags[j]
            if vi != uj:
                raise AlgebraError(f"b{i}*b{j} nonzero but tags do not compose")
            for k, _ in terms:
                if tags[k] != (ui, vj, di + dj):
                    raise AlgebraError(f"b{i}*b{j} has a term b{k} with the wrong tag")
        if not exhaustive:
            return
        for x in range(self.dim):
            for y in self.by_u[tags[x][1]]:
                xy = self.table.get((x, y), ())
                for z in self.by_u[tags[y][1]]:
                    left = {}
                    for k, c in xy:
                        for m, c2 in self.table.get((k, z), ()):
                            left[m] = left.get(m, 0) + c * c2
                    right = {}
                    for k, c in self.table.get((y, z), ()):
                        for m, c2 in self.table.get((x, k), ()):
                            right[m] = right.get(m, 0) + c * c2
                    norm = self.field.norm
                    left = {m: norm(c) for m, c in left.items() if norm(c)}
                    right = {m: norm(c) for m, c in right.items() if norm(c)}
                    if left != right:
                        raise AlgebraError(f"associativity fails on (b{x}, b{y}, b{z})")

    # ------------------------------------------------------------------
    def serialize(self) -> str:
        """Structure-constant text form (re-loadable with ``textformat``)."""
        lines = ["algebra", f"field {self.field.name}", "labels " + " ".join(self.labels)]
        for i, (u, v, d) in enumerate(self.tags):
            lines.append(f"elem {i} {self.labels[u]} {self.labels[v]} {d}")
        fmt = self.field.fmt
        for (i, j) in sorted(self.table):
            terms = " + ".join(f"{fmt(c)}*{k}" for k, c in sorted(self.table[(i, j)]))
            lines.append(f"prod {i} {j} -> {terms}")
        return "\n".join(lines) + "\n"

    @cached_property
    def fingerprint(self) -> str:
        return hashlib.sha256(self.serialize().encode()).hexdigest()[:16]

    def __repr__(self):
        name = f" {self.name}" if self.name else ""
        return f"<GradedBasicAlgebra{name} n={self.n} dim={self.dim} over {self.field}>"

    def __reduce__(self):
        return (GradedBasicAlgebra, (self.field, self.labels, self.tags, self.table, self.name))


class AlgebraElement:
    """Element of a :class:`GradedBasicAlgebra` as a sparse coefficient map."""

    __slots__ = ("algebra", "coeffs")

    def __init__(self, algebra: GradedBasicAlgebra, coeffs):
        norm = algebra.field.norm
        if not isinstance(coeffs, dict):
            coeffs = {i: c for i, c in enumerate(coeffs)}
        self.algebra = algebra
        self.coeffs = {i: norm(c) for i, c in coeffs.items() if norm(c)}

    def _check(self, other):
        if not isinstance(other, AlgebraElement) or other.algebra is not self.algebra:
            raise AlgebraError("elements belong to different algebras")

    def __mul__(self, other):
        if not isinstance(other, AlgebraElement):
            return AlgebraElement(self.algebra, {i: c * other for i, c in self.coeffs.items()})
        self._check(other)
        out = {}
        table = self.algebra.table
        for i, a in self.coeffs.items():
            for j, b in other.coeffs.items():
                for k, c in table.get((i, j), ()):
                    out[k] = out.get(k, 0) + a * b * c
        return AlgebraElement(self.algebra, out)

    def __rmul__(self, scalar):
        return AlgebraElement(self.algebra, {i: c * scalar for i, c in self.coeffs.items()})

    def __add__(self, other):
        self._check(other)
        out = dict(self.coeffs)
        for i, c in other.coeffs.items():
            out[i] = out.get(i, 0) + c
        return AlgebraElement(self.algebra, out)

    def __neg__(self):
        return AlgebraElement(self.algebra, {i: -c for i, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __eq__(self, other):
        return (
            isinstance(other, AlgebraElement)
            and other.algebra is self.algebra
            and other.coeffs == self.coeffs
        )

    def __hash__(self):
        return hash(tuple(sorted(self.coeffs.items())))

    def is_zero(self):
        return not self.coeffs

    @property
    def vector(self):
        return tuple(self.coeffs.get(i, 0) for i in range(self.algebra.dim))

    def degrees(self):
        return sorted({self.algebra.tags[i][2] for i in self.coeffs})

    def __repr__(self):
        if not self.coeffs:
            return "0"
        fmt = self.algebra.field.fmt
        return " + ".join(f"{fmt(c)}*b{i}" for i, c in sorted(self.coeffs.items()))


def zero_algebra(field: Field = QQ) -> GradedBasicAlgebra:
    return GradedBasicAlgebra(field, (), (), {}, name="0")


def corner(alg: GradedBasicAlgebra, keep) -> GradedBasicAlgebra:
    """The idempotent subalgebra ``f A f`` for ``f`` the sum of ``keep``."""
    keep_idx = sorted({alg.label_index(x) for x in keep})
    if not keep_idx:
        return zero_algebra(alg.field)
    relabel = {old: new for new, old in enumerate(keep_idx)}
    retained = [x for x, (u, v, _) in enumerate(alg.tags) if u in relabel and v in relabel]
    # idempotents come first already; keep that order, then the rest by (degree, index)
    idem = [x for x in retained if x < alg.n]
    rest = sorted((x for x in retained if x >= alg.n), key=lambda x: (alg.tags[x][2], x))
    order = idem + rest
    new_index = {old: new for new, old in enumerate(order)}
    tags = [(relabel[alg.tags[x][0]], relabel[alg.tags[x][1]], alg.tags[x][2]) for x in order]
    table = {}
    for (i, j), terms in alg.table.items():
        if i in new_index and j in new_index:
            table[(new_index[i], new_index[j])] = tuple((new_index[k], c) for k, c in terms)
    out = GradedBasicAlgebra(alg.field, [alg.labels[i] for i in keep_idx], tags, table)
    out.embedding = tuple(order)
    return out


def opposite(alg: GradedBasicAlgebra) -> GradedBasicAlgebra:
    """Same basis, tags swapped, and ``x o y := y x``."""
    tags = [(v, u, d) for (u, v, d) in alg.tags]
    table = {(j, i): terms for (i, j), terms in alg.table.items()}
    name = f"{alg.name}^op" if alg.name else None
    return GradedBasicAlgebra(alg.field, alg.labels, tags, table, name=name)
