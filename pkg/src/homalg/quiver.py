"""Quivers with homogeneous relations, compiled to structure-constant algebras."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from dataclasses import field as dc_field

from .algebra import GradedBasicAlgebra
from .fields import QQ, Field
from .kernels import rref_rows


class PresentationError(ValueError):
    pass


class UnsupportedInputError(PresentationError):
    pass


class NotCertifiedFiniteDimensional(PresentationError):
    pass


@dataclass(frozen=True)
class Arrow:
    label: str
    source: str
    target: str


class Quiver:
    def __init__(self, vertices, arrows):
        self.vertices = tuple(str(v) for v in vertices)
        if len(set(self.vertices)) != len(self.vertices):
            raise PresentationError("duplicate vertex label")
        self.arrows = tuple(a if isinstance(a, Arrow) else Arrow(*map(str, a)) for a in arrows)
        labels = [a.label for a in self.arrows]
        if len(set(labels)) != len(labels):
            raise PresentationError("duplicate arrow label")
        vs = set(self.vertices)
        for a in self.arrows:
            if a.source not in vs or a.target not in vs:
                raise PresentationError(f"arrow {a.label} has an undeclared endpoint")
        self.arrow = {a.label: a for a in self.arrows}
        self._out = {v: sorted((a for a in self.arrows if a.source == v), key=lambda a: a.label) for v in self.vertices}

    def check_vertex(self, v):
        if v is not None and str(v) not in self.vertices:
            raise PresentationError(f"unknown vertex {v!r}")


@dataclass(frozen=True)
class Path:
    """A path read left to right: ``start --a1--> ... --ak--> end``."""

    start: str
    arrows: tuple = ()
    end: str = ""

    def __len__(self):
        return len(self.arrows)

    def __str__(self):
        return "*".join(self.arrows) if self.arrows else f"e_{self.start}"


def path_from_arrows(q: Quiver, labels) -> Path:
    labels = tuple(labels)
    if not labels:
        raise PresentationError("empty path")
    for lab in labels:
        if lab not in q.arrow:
            raise PresentationError(f"unknown arrow {lab!r}")
    for a, b in itertools.pairwise(labels):
        if q.arrow[a].target != q.arrow[b].source:
            raise PresentationError(f"arrows {a} and {b} do not compose")
    return Path(q.arrow[labels[0]].source, labels, q.arrow[labels[-1]].target)


def enumerate_paths(q: Quiver, d: int, src=None, tgt=None):
    """All paths of length ``d``, sorted lexicographically by arrow labels."""
    if d < 0:
        raise ValueError("negative path length")
    q.check_vertex(src)
    q.check_vertex(tgt)
    starts = [str(src)] if src is not None else list(q.vertices)
    frontier = [Path(v, (), v) for v in starts]
    for _ in range(d):
        frontier = [Path(p.start, p.arrows + (a.label,), a.target) for p in frontier for a in q._out[p.end]]
    if tgt is not None:
        frontier = [p for p in frontier if p.end == str(tgt)]
    order = {v: i for i, v in enumerate(q.vertices)}
    return sorted(frontier, key=lambda p: (p.arrows, order[p.start]))


@dataclass
class Relation:
    terms: tuple  # ((coeff, Path), ...)

    @property
    def degree(self):
        return len(self.terms[0][1])

    @property
    def source(self):
        return self.terms[0][1].start

    @property
    def target(self):
        return self.terms[0][1].end

    def __str__(self):
        return " + ".join(f"{c}*{p}" for c, p in self.terms)


def make_relation(q: Quiver, terms, field: Field = QQ) -> Relation:
    merged = {}
    for coeff, labels in terms:
        p = path_from_arrows(q, labels) if not isinstance(labels, Path) else labels
        merged[p] = field.norm(merged.get(p, 0) + field.coerce(coeff))
    items = tuple((c, p) for p, c in merged.items() if c)
    if not items:
        raise PresentationError("relation has no nonzero coefficient")
    lengths = {len(p) for _, p in items}
    if len(lengths) != 1:
        raise UnsupportedInputError("inhomogeneous relation: paths of different lengths")
    if lengths.pop() < 2:
        raise UnsupportedInputError("relations must have path length at least 2")
    if len({(p.start, p.end) for _, p in items}) != 1:
        raise UnsupportedInputError("relation paths are not parallel")
    return Relation(items)


@dataclass
class Presentation:
    quiver: Quiver
    relations: list = dc_field(default_factory=list)
    degcap: int = 30
    field: Field = QQ
    name: str | None = None

    def __post_init__(self):
        if self.degcap < 2:
            raise PresentationError("degree cap must be at least 2")

    def to_text(self) -> str:
        fmt = self.field.fmt
        lines = [f"field {'Q' if self.field.characteristic == 0 else 'F ' + str(self.field.characteristic)}"]
        lines += [f"vertex {v}" for v in self.quiver.vertices]
        lines += [f"arrow {a.label} {a.source} {a.target}" for a in self.quiver.arrows]
        for r in self.relations:
            lines.append("relation " + " + ".join(f"{fmt(c)}*{'*'.join(p.arrows)}" for c, p in r.terms))
        lines.append(f"degcap {self.degcap}")
        return "\n".join(lines) + "\n"


def ideal_component(pres: Presentation, d: int):
    """Row-reduced basis of the degree-``d`` part of the relation ideal.

    Returns ``(paths, rows, pivots)``: the degree-``d`` paths (coordinates),
    the nonzero rref rows, and their pivot columns.
    """
    q = pres.quiver
    paths = enumerate_paths(q, d)
    index = {p: i for i, p in enumerate(paths)}
    gens = []
    for r in pres.relations:
        if r.degree > d:
            continue
        rest = d - r.degree
        for a in range(rest + 1):
            lefts = enumerate_paths(q, a, tgt=r.source)
            rights = enumerate_paths(q, rest - a, src=r.target)
            for lp in lefts:
                for rp in rights:
                    v = [0] * len(paths)
                    for c, p in r.terms:
                        w = Path(lp.start, lp.arrows + p.arrows + rp.arrows, rp.end)
                        v[index[w]] += c
                    gens.append(v)
    if not gens:
        return paths, [], []
    red, pivots = rref_rows(gens, len(paths), pres.field)
    return paths, red[: len(pivots)], pivots


MAX_DIM = 5000  # larger algebras are rejected before certification completes


def _apply_arrows(steps, vec, d, labels, field):
    """Normal form of ``vec * a1 * ... * ak`` starting in degree ``d``."""
    for lab in labels:
        if not vec:
            return {}
        table = steps[d] if d < len(steps) else {}
        out = {}
        for k, c in vec.items():
            for j, c2 in table.get((k, lab), ()):
                out[j] = out.get(j, 0) + c * c2
        vec = {j: field.norm(c) for j, c in out.items() if field.norm(c)}
        d += 1
    return vec


def compile_presentation(pres: Presentation) -> GradedBasicAlgebra:
    """Build the structure-constant algebra ``kQ/I``.

    Graded pieces are built one degree at a time as the previous piece
    times the arrows, modulo the relations.  The basis consists of the
    standard paths for the order of :func:`enumerate_paths` (the paths not
    leading a relation), which are closed under taking prefixes.  Finite
    dimensionality is certified by a vanishing piece at or below the
    degree cap; otherwise :class:`NotCertifiedFiniteDimensional`.
    """
    q = pres.quiver
    field = pres.field
    vindex = {v: i for i, v in enumerate(q.vertices)}
    levels = [enumerate_paths(q, 0)]  # standard paths per degree
    parents = [[None] * len(levels[0])]  # (index in previous degree, arrow)
    steps = []  # steps[d][(k, arrow)] = normal form of levels[d][k] * arrow
    total = len(levels[0])
    for d in range(1, pres.degcap + 1):
        prev = levels[d - 1]
        cols = sorted(
            ((Path(b.start, b.arrows + (a.label,), a.target), k, a.label) for k, b in enumerate(prev) for a in q._out[b.end]),
            key=lambda c: (c[0].arrows, vindex[c[0].start]),
        )
        where = {(k, lab): i for i, (_, k, lab) in enumerate(cols)}
        gens = []
        for r in pres.relations:
            if r.degree > d:
                continue
            for pi, p in enumerate(levels[d - r.degree]):
                if p.end != r.source:
                    continue
                v = [0] * len(cols)
                for c, w in r.terms:
                    head = _apply_arrows(steps, {pi: 1}, d - r.degree, w.arrows[:-1], field)
                    for k, c2 in head.items():
                        v[where[(k, w.arrows[-1])]] += c * c2
                if any(v):
                    gens.append(v)
        if gens:
            rows, pivots = rref_rows(gens, len(cols), field)
            rows = rows[: len(pivots)]
        else:
            rows, pivots = [], []
        pivset = set(pivots)
        basis = [i for i in range(len(cols)) if i not in pivset]
        new_index = {i: n for n, i in enumerate(basis)}
        step = {}
        for i, (_, k, lab) in enumerate(cols):
            if i in new_index:
                step[(k, lab)] = ((new_index[i], 1),)
            else:
                row = rows[pivots.index(i)]
                step[(k, lab)] = tuple((new_index[f], field.norm(-row[f])) for f in basis if row[f])
        steps.append(step)
        if not basis:
            break
        total += len(basis)
        if total > MAX_DIM:
            raise NotCertifiedFiniteDimensional(f"dimension exceeds {MAX_DIM} by degree {d}; not compiled")
        levels.append([cols[i][0] for i in basis])
        parents.append([(cols[i][1], cols[i][2]) for i in basis])
    else:
        raise NotCertifiedFiniteDimensional(
            f"no vanishing graded piece up to degree {pres.degcap}; raise degcap or check relations"
        )
    offset = [0]
    for lev in levels:
        offset.append(offset[-1] + len(lev))
    tags = [(vindex[p.start], vindex[p.end], d) for d, lev in enumerate(levels) for p in lev]
    table = {}
    for dx in range(1, len(levels)):
        for ix in range(len(levels[dx])):
            x = offset[dx] + ix
            # prod[(dy, iy)] = normal form of x * y, built along prefixes of y
            end = levels[dx][ix].end
            prod = {(0, v): {ix: 1} for v, e in enumerate(levels[0]) if e.start == end}
            for dy in range(1, len(levels)):
                for iy, (k, lab) in enumerate(parents[dy]):
                    base = prod.get((dy - 1, k))
                    if base is None:
                        continue
                    vec = _apply_arrows(steps, base, dx + dy - 1, (lab,), field)
                    prod[(dy, iy)] = vec
                    if vec:
                        table[(x, offset[dy] + iy)] = tuple((offset[dx + dy] + j, c) for j, c in sorted(vec.items()))
    alg = GradedBasicAlgebra(field, q.vertices, tags, table, name=pres.name)
    alg.basis_paths = tuple(str(p) for lev in levels for p in lev)
    return alg
