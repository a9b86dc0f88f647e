"""Ext groups, Yoneda products, Yoneda algebras ``Y(e)`` and Ext-modules.

Conventions:

* ``Ext^t(M, S_j)`` is read off a minimal resolution: one basis class per
  summand of ``P_t`` labelled ``j`` (the Hom complex has zero differential).
* The Yoneda product of ``f in Ext^i(S_a, S_b)`` and ``g in Ext^j(S_b, S_c)``
  is ``g * f = g o lift(f)_j``; ``f`` is lifted to a chain map by solving the
  commuting squares stage by stage.  No signs are introduced.
* In ``Y(e)`` a class in ``Ext^t(S_a, S_b)`` has idempotent tags
  ``(u, v) = (b, a)``, so that ``x * y`` is nonzero only if ``v(x) = u(y)``.
* Left ``Y(e)``-modules are encoded as right modules over ``Y(e)^op``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import networkx as nx

from .algebra import GradedBasicAlgebra, opposite, zero_algebra
from .kernels import rref_rows
from .modules import GradedRightModule, projective_sum, simple_module
from .resolution import (
    DEFAULT_BOUND,
    BoundError,
    ProjectiveList,
    Resolution,
    find_periodicity,
    global_dimension,
    minimal_resolution,
)
from .verdict import Unknown

CERTIFIED_FINITE = "CertifiedFiniteDim"
APPARENTLY_FINITE = "ApparentlyFiniteDim"
NOT_FINITE_UP_TO_BOUND = "NotFiniteDimUpToBound"
TRAILING_WINDOW = 5


class ExtError(ValueError):
    pass


@dataclass(frozen=True)
class ExtClass:
    """Basis class: the indicator of summand ``summand`` of ``P_t``."""

    t: int
    summand: int
    target: int  # idempotent index j of S_j
    internal: int  # internal degree (shift of the summand)


def ext_group(res: Resolution, j: int, t: int):
    """``(dimension, basis)`` of ``Ext^t(M, S_j)`` from a minimal resolution."""
    if t > res.computed and not res.terminated:
        raise BoundError(f"Ext^{t} needs stage {t}; resolution computed to {res.computed}")
    if t >= len(res.terms):
        return 0, []
    basis = [ExtClass(t, c, i, d) for c, (i, d) in enumerate(res.terms[t]) if i == j]
    return len(basis), basis


# ----------------------------------------------------------------------
# chain-map lifting


class Lift:
    """Chain map lifting a class ``f: P_i(src) -> S_b`` into ``P_*(S_b)``.

    ``images[s][c]`` is the image of the generator of summand ``c`` of
    ``P_{i+s}(src)`` as a vector of ``P_s(S_b)``.
    """

    def __init__(self, src: Resolution, f: ExtClass, tgt: Resolution, rng=None):
        self.src = src
        self.f = f
        self.tgt = tgt
        self.rng = rng
        alg = src.algebra
        b = f.target
        if tgt.module.dim != 1 or tgt.module.tags[0] != (b, 0):
            raise ExtError("lift target must be the resolution of the simple S_b")
        P0 = tgt.P[0] if tgt.P else projective_sum(alg, [(b, 0)])
        gen = P0.coord_index[(0, b)]
        first = [{} for _ in src.terms[f.t]]
        first[f.summand] = {gen: 1}
        self.images = [first]
        self._alg = alg

    def extend(self, s_max: int):
        src, tgt, f = self.src, self.tgt, self.f
        field = self._alg.field
        delta = f.internal
        while len(self.images) <= s_max:
            s = len(self.images)
            stage = f.t + s
            if stage >= len(src.terms):
                if src.terminated:
                    self.images.append([])
                    continue
                raise BoundError(f"source resolution needed to stage {stage}")
            if s >= len(tgt.terms):
                if not tgt.terminated:
                    raise BoundError(f"target resolution needed to stage {s}")
                self.images.append([{} for _ in src.terms[stage]])
                continue
            prev = self.images[s - 1]
            P_prev_src = src.P[stage - 1]
            P_prev_tgt = tgt.P[s - 1]
            out = []
            for c, (ic, dc) in enumerate(src.terms[stage]):
                z = {}
                for m, coeff in src.generator_image(stage, c).items():
                    r, x = P_prev_src.coords[m]
                    y = prev[r]
                    if not y:
                        continue
                    for k, c2 in P_prev_tgt.act(y, x).items():
                        z[k] = z.get(k, 0) + coeff * c2
                z = {k: field.norm(v) for k, v in z.items() if field.norm(v)}
                if not z:
                    out.append({})
                    continue
                piece = (ic, dc - delta)
                solver, cols, rows = tgt.solver(s, piece)
                pos = P_prev_tgt.position
                rhs = [0] * len(rows)
                for k, v in z.items():
                    rhs[pos[k]] = v
                sol = solver.solve(rhs)
                if sol is None:
                    raise ExtError("lifting system is inconsistent; resolution is not exact")
                if self.rng is not None:
                    for kv in solver.kernel():
                        a = self.rng.randint(-2, 2)
                        if a:
                            sol = [x + a * y for x, y in zip(sol, kv)]
                out.append({cols[n]: field.norm(x) for n, x in enumerate(sol) if field.norm(x)})
            self.images.append(out)
        return self

    def compose(self, g: ExtClass):
        """Coordinates of ``g o lift_j`` over the summands of ``P_{i+j}(src)``."""
        self.extend(g.t)
        stage = self.images[g.t]
        if g.t >= len(self.tgt.terms):
            return {}
        Pg = self.tgt.P[g.t]
        idx = Pg.coord_index.get((g.summand, g.target))
        out = {}
        for c, vec in enumerate(stage):
            x = vec.get(idx)
            if x:
                out[c] = x
        return out


def yoneda_product(g: ExtClass, g_res: Resolution, f: ExtClass, f_res: Resolution, rng=None):
    """``g * f`` as ``{summand of P_{i+j}(source of f): coefficient}``.

    ``f`` lives over ``f_res`` (source module) with target ``S_b``; ``g``
    over ``g_res``, the resolution of ``S_b``.
    """
    if g_res.module.tags != ((f.target, 0),) or g_res.module.dim != 1:
        raise ExtError("classes are not composable through a common simple")
    return Lift(f_res, f, g_res, rng).compose(g)


# ----------------------------------------------------------------------
# Yoneda algebra


@dataclass
class FinitenessReport:
    status: str
    dims: list
    evidence: str = ""
    certified_infinite: bool = False

    def __str__(self):
        extra = f" [certified infinite: {self.evidence}]" if self.certified_infinite else ""
        return f"{self.status}{extra}"


@dataclass
class ExtAlgebra:
    """``Y(e) = Ext^*(S_e, S_e)`` truncated at Ext degree ``bound``."""

    base: GradedBasicAlgebra
    support: tuple  # idempotent indices of A, in order
    bound: int
    algebra: GradedBasicAlgebra
    classes: list  # (a, ExtClass) per basis element of ``algebra``
    internal: list  # internal degree per basis element
    resolutions: dict  # a -> Resolution of S_a
    report: FinitenessReport
    products_checked: bool = False
    extra: dict = field(default_factory=dict)

    @cached_property
    def opposite(self) -> GradedBasicAlgebra:
        return opposite(self.algebra)

    def dims(self):
        return list(self.report.dims)

    def index_of(self, a, cls: ExtClass):
        return self._index[(a, cls.t, cls.summand)]

    @cached_property
    def _index(self):
        return {(a, c.t, c.summand): k for k, (a, c) in enumerate(self.classes)}

    def is_complete(self) -> bool:
        return self.report.status == CERTIFIED_FINITE


def _support_indices(alg, support):
    if support is None:
        return tuple(range(alg.n))
    return tuple(sorted({alg.label_index(x) for x in support}))


def ext_algebra(alg: GradedBasicAlgebra, support=None, bound: int = DEFAULT_BOUND, cache=None, rng=None) -> ExtAlgebra:
    """Assemble ``Y(e)`` with all Yoneda products up to Ext degree ``bound``."""
    E = _support_indices(alg, support)
    if not E:
        Z = zero_algebra(alg.field)
        rep = FinitenessReport(CERTIFIED_FINITE, [0] * (bound + 1))
        return ExtAlgebra(alg, E, bound, Z, [], [], {}, rep)
    eset = set(E)
    res = {a: minimal_resolution(simple_module(alg, alg.labels[a]), bound, cache) for a in E}
    requested, bound = bound, min(r.reach(bound) for r in res.values())
    lab_pos = {a: k for k, a in enumerate(E)}
    classes = []
    for t in range(bound + 1):
        for a in E:
            r = res[a]
            if t >= len(r.terms):
                continue
            for c, (b, d) in enumerate(r.terms[t]):
                if b in eset:
                    classes.append((a, ExtClass(t, c, b, d)))
    # idempotents first: the t = 0 classes are exactly e_a, one per a in E
    tags = [(lab_pos[c.target], lab_pos[a], c.t) for a, c in classes]
    index = {(a, c.t, c.summand): k for k, (a, c) in enumerate(classes)}
    table = {}
    for y, (a, f) in enumerate(classes):
        if f.t == 0:
            continue
        lift = None
        b = f.target
        for x, (a2, g) in enumerate(classes):
            if a2 != b or g.t == 0 or f.t + g.t > bound:
                continue
            if lift is None:
                lift = Lift(res[a], f, res[b], rng)
            prod = lift.compose(g)
            if prod:
                table[(x, y)] = tuple((index[(a, f.t + g.t, c)], v) for c, v in sorted(prod.items()))
    labels = [alg.labels[a] for a in E]
    name = f"Y({','.join(labels)})"
    Y = GradedBasicAlgebra(alg.field, labels, tags, table, name=name)
    dims = [0] * (bound + 1)
    for _, c in classes:
        dims[c.t] += 1
    report = _finiteness(alg, E, res, dims, bound)
    out = ExtAlgebra(alg, E, bound, Y, classes, [c.internal for _, c in classes], res, report)
    out.extra["requested_bound"] = requested
    return out


def _finiteness(alg, E, res, dims, bound) -> FinitenessReport:
    if all(res[a].terminated for a in E):
        return FinitenessReport(CERTIFIED_FINITE, dims)
    eset = set(E)
    for a in E:
        r = res[a]
        if r.terminated:
            continue
        cert = find_periodicity(r, f"S_{alg.labels[a]}", upto=bound)
        if cert is None:
            continue
        for t in range(cert.i, len(r.terms)):
            if any(b in eset for b, _ in r.terms[t]):
                ev = f"{cert.evidence}; Ext^{t}(S_{alg.labels[a]}, S_e) != 0 recurs with period {cert.j - cert.i}"
                return FinitenessReport(NOT_FINITE_UP_TO_BOUND, dims, ev, certified_infinite=True)
    if bound + 1 >= TRAILING_WINDOW and not any(dims[bound + 1 - TRAILING_WINDOW :]):
        return FinitenessReport(APPARENTLY_FINITE, dims)
    return FinitenessReport(NOT_FINITE_UP_TO_BOUND, dims)


def ext_algebra_global_dimension(Y: ExtAlgebra, bound: int | None = None, cache=None):
    """gl.dim of ``Y(e)``; only meaningful when ``Y(e)`` is complete.

    Returns ``(verdict, advisory)``; ``advisory`` is true when the algebra
    was only apparently finite dimensional.
    """
    bound = Y.bound if bound is None else bound
    if Y.report.status == CERTIFIED_FINITE:
        return global_dimension(Y.algebra, bound, cache), False
    if Y.report.status == APPARENTLY_FINITE:
        return global_dimension(Y.algebra, bound, cache), True
    return Unknown(bound), False


# ----------------------------------------------------------------------
# Ext-modules G(T) = Ext^*(T, S_e)


def ext_module(T: GradedRightModule, Y: ExtAlgebra, cache=None, rng=None) -> GradedRightModule:
    """``G(T)`` as a right module over ``Y(e)^op`` (i.e. a left ``Y(e)``-module).

    Basis: classes of ``Ext^i(T, S_b)`` for ``b`` in the support, tagged
    ``(position of b, i)``.
    """
    alg = Y.base
    if T.algebra is not alg:
        raise ExtError("module is not over the base algebra of Y(e)")
    bound = Y.bound
    E = Y.support
    lab_pos = {a: k for k, a in enumerate(E)}
    Yop = Y.opposite
    res_T = minimal_resolution(T, bound, cache)
    bound = res_T.reach(bound)
    basis = []
    for t in range(min(bound, res_T.computed) + 1):
        for c, (b, d) in enumerate(res_T.terms[t]):
            if b in lab_pos:
                basis.append(ExtClass(t, c, b, d))
    where = {(f.t, f.summand): k for k, f in enumerate(basis)}
    tags = [(lab_pos[f.target], f.t) for f in basis]
    action = []
    for f in basis:
        row = {}
        lift = None
        for yk, (a, g) in enumerate(Y.classes):
            if g.t == 0 or a != f.target or f.t + g.t > bound:
                continue
            if lift is None:
                lift = Lift(res_T, f, Y.resolutions[f.target], rng)
            prod = lift.compose(g)
            if prod:
                row[yk] = tuple((where[(f.t + g.t, c)], v) for c, v in sorted(prod.items()))
        action.append(row)
    mod = GradedRightModule(Yop, tags, action, name=f"G({T.name or 'T'})")
    mod.classes = basis
    mod.bound = bound
    return mod


# ----------------------------------------------------------------------
# Ext-quiver


@dataclass
class ExtQuiver:
    vertices: tuple  # labels
    edges: list  # (i_label, j_label, dim Ext^1(S_i, S_j))
    acyclic: bool

    def graph(self):
        g = nx.DiGraph()
        g.add_nodes_from(self.vertices)
        g.add_edges_from((i, j) for i, j, _ in self.edges)
        return g


def ext_quiver(alg: GradedBasicAlgebra, support=None, cache=None) -> ExtQuiver:
    """Edge ``i -> j`` iff ``Ext^1(S_i, S_j) != 0`` (self-loops are cycles)."""
    E = _support_indices(alg, support)
    eset = set(E)
    edges = []
    for a in E:
        r = minimal_resolution(simple_module(alg, alg.labels[a]), 1, cache)
        P1 = r.terms[1] if len(r.terms) > 1 else ProjectiveList()
        for b in E:
            m = P1.multiplicity(b)
            if m and b in eset:
                edges.append((alg.labels[a], alg.labels[b], m))
    q = ExtQuiver(tuple(alg.labels[a] for a in E), edges, True)
    q.acyclic = nx.is_directed_acyclic_graph(q.graph())
    return q


# ----------------------------------------------------------------------
# independent Ext oracles (non-minimal resolutions)


def _naive_step(M: GradedRightModule):
    """Cover by one projective summand per basis vector (non-minimal)."""
    from .resolution import _kernel_module

    summands = list(M.tags)
    P = projective_sum(M.algebra, summands)
    images = [M.act({r: 1}, x) for r, x in P.coords]
    K, emb = _kernel_module(P, images, M)
    return summands, P, K, emb


def _rank(rows, ncols, field):
    if not rows or not ncols:
        return 0
    return len(rref_rows(rows, ncols, field)[1])


def ext_dims_naive(M: GradedRightModule, j: int, top: int):
    """``dim Ext^t(M, S_j)`` for ``t <= top`` via a non-minimal resolution.

    Each stage covers the module by one summand per basis vector; the Ext
    dimensions are the cohomology of the Hom complex computed from ranks.
    """
    field = M.algebra.field
    # per stage: summands, P_t, and the image in P_{t-1} of each generator
    stages = []
    cur, prev_emb = M, None
    for _ in range(top + 2):
        if cur.dim == 0:
            break
        summands, P, K, emb = _naive_step(cur)
        stages.append((summands, P, prev_emb))
        prev_emb, cur = emb, K
    homdims = [sum(1 for s, _ in st[0] if s == j) for st in stages]
    ranks = []
    for t in range(len(stages) - 1):
        summ_t, P_t, _ = stages[t]
        summ_n, _, gen_imgs = stages[t + 1]
        cols = [r for r, (s, _) in enumerate(summ_t) if s == j]
        colpos = {r: k for k, r in enumerate(cols)}
        rows = []
        for c, (s, _) in enumerate(summ_n):
            if s != j:
                continue
            v = [0] * len(cols)
            for m, coeff in gen_imgs[c].items():
                r, x = P_t.coords[m]
                if x == j and r in colpos:
                    v[colpos[r]] = coeff
            rows.append(v)
        ranks.append(_rank(rows, len(cols), field))
    out = []
    for t in range(top + 1):
        if t >= len(stages):
            out.append(0)
            continue
        r_out = ranks[t] if t < len(ranks) else 0
        r_in = ranks[t - 1] if t >= 1 else 0
        out.append(homdims[t] - r_out - r_in)
    return out


def ext_dims_redundant(res: Resolution, j: int, stage: int, label: int, top: int):
    """Ext dimensions from the minimal resolution with a redundant summand.

    ``e_label A`` is added to ``P_stage`` and ``P_{stage+1}`` with the
    identity between them; the Hom complex is then no longer zero and the
    Ext dimensions are recomputed from ranks.
    """
    field = res.algebra.field
    terms = [list(res.terms[t]) if t < len(res.terms) else [] for t in range(top + 2)]
    extra = (label, 0)
    terms[stage].append(extra)
    terms[stage + 1].append(extra)
    homdims = [sum(1 for s, _ in terms[t] if s == j) for t in range(top + 2)]
    out = []
    ranks = []
    for t in range(top + 1):
        cols = [r for r, (s, _) in enumerate(terms[t]) if s == j]
        colpos = {r: k for k, r in enumerate(cols)}
        rows = []
        for c, (s, _) in enumerate(terms[t + 1]):
            if s != j:
                continue
            v = [0] * len(cols)
            if t == stage and c == len(terms[t + 1]) - 1:
                v[colpos[len(terms[t]) - 1]] = 1
            elif c < len(res.terms[t + 1]) if t + 1 < len(res.terms) else False:
                Pt = res.P[t]
                for m, coeff in res.generator_image(t + 1, c).items():
                    r, x = Pt.coords[m]
                    if x == j and r in colpos:
                        v[colpos[r]] = coeff
            rows.append(v)
        ranks.append(_rank(rows, len(cols), field))
    for t in range(top + 1):
        r_in = ranks[t - 1] if t >= 1 else 0
        out.append(homdims[t] - ranks[t] - r_in)
    return out
