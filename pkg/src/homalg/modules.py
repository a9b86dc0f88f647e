"""Graded right modules over a :class:`GradedBasicAlgebra`.

A module is a graded vector space whose basis vectors are tagged with
``(support, degree)``; ``support`` is the idempotent index ``u`` with
``v e_u = v``.  The right action of every positive-degree algebra basis
element is stored in full (corner and Ext algebras need not be generated in
degree one):

    action[i][b] = ((j, c), ...)      # v_i * b = sum c v_j

Vectors are sparse dicts ``{basis index: coefficient}``.
"""

from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass
from functools import cached_property
from itertools import product as iproduct

from .algebra import AlgebraError, GradedBasicAlgebra, corner
from .kernels import rref_rows
from .linalg import kernel_from_rref


class ModuleError(ValueError):
    pass


class GradedRightModule:
    def __init__(self, algebra: GradedBasicAlgebra, tags, action, name: str | None = None):
        self.algebra = algebra
        self.tags = tuple(tuple(t) for t in tags)
        self.dim = len(self.tags)
        self.name = name
        norm = algebra.field.norm
        self.action = [{} for _ in range(self.dim)]
        for i, row in enumerate(action):
            for b, terms in row.items():
                terms = tuple((j, norm(c)) for j, c in terms if norm(c))
                if terms:
                    self.action[i][b] = terms

    # ------------------------------------------------------------------
    @cached_property
    def pieces(self):
        """Basis indices grouped by ``(support, degree)``, sorted."""
        out = {}
        for i, t in enumerate(self.tags):
            out.setdefault(t, []).append(i)
        return dict(sorted(out.items()))

    @cached_property
    def position(self):
        """Index of each basis vector inside its graded piece."""
        pos = [0] * self.dim
        for idx in self.pieces.values():
            for k, i in enumerate(idx):
                pos[i] = k
        return pos

    def graded_dims(self):
        return {t: len(v) for t, v in self.pieces.items()}

    def dim_vector(self):
        out = [0] * self.algebra.n
        for s, _ in self.tags:
            out[s] += 1
        return out

    def degrees(self):
        return sorted({d for _, d in self.tags})

    def is_zero(self):
        return self.dim == 0

    # ------------------------------------------------------------------
    def act(self, vec, b):
        """``vec * b`` for an algebra basis index ``b``."""
        alg = self.algebra
        if b < alg.n:
            return {i: c for i, c in vec.items() if self.tags[i][0] == b}
        out = {}
        action = self.action
        for i, c in vec.items():
            for j, c2 in action[i].get(b, ()):
                out[j] = out.get(j, 0) + c * c2
        norm = alg.field.norm
        return {j: norm(c) for j, c in out.items() if norm(c)}

    def act_element(self, vec, elem):
        out = {}
        for b, c in elem.coeffs.items():
            for j, c2 in self.act(vec, b).items():
                out[j] = out.get(j, 0) + c * c2
        norm = self.algebra.field.norm
        return {j: norm(c) for j, c in out.items() if norm(c)}

    def check(self):
        """Exhaustive module-axiom check; raises :class:`ModuleError`."""
        alg = self.algebra
        tags = alg.tags
        for i, (s, d) in enumerate(self.tags):
            for b, terms in self.action[i].items():
                u, v, db = tags[b]
                if u != s:
                    raise ModuleError(f"v{i} * b{b} nonzero but support {s} != u(b) = {u}")
                for j, _ in terms:
                    if self.tags[j] != (v, d + db):
                        raise ModuleError(f"v{i} * b{b} lands outside piece {(v, d + db)}")
        for i, (s, _) in enumerate(self.tags):
            for b in alg.positive_by_u[s]:
                vb = self.act({i: 1}, b)
                for b2 in alg.positive_by_u[tags[b][1]]:
                    lhs = self.act(vb, b2)
                    rhs = {}
                    for k, c in alg.product_terms(b, b2):
                        for j, c2 in self.act({i: 1}, k).items():
                            rhs[j] = rhs.get(j, 0) + c * c2
                    norm = alg.field.norm
                    rhs = {j: norm(c) for j, c in rhs.items() if norm(c)}
                    if lhs != rhs:
                        raise ModuleError(f"(v{i} * b{b}) * b{b2} != v{i} * (b{b} b{b2})")

    # ------------------------------------------------------------------
    def shift(self, i: int) -> GradedRightModule:
        """``M<i>`` with ``M<i>(j) = M(i + j)``: degrees move down by ``i``."""
        return GradedRightModule(
            self.algebra, [(s, d - i) for s, d in self.tags], self.action, name=self.name and f"{self.name}<{i}>"
        )

    def key(self) -> str:
        h = hashlib.sha256()
        h.update(self.algebra.fingerprint.encode())
        h.update(repr(self.tags).encode())
        for row in self.action:
            h.update(repr(sorted(row.items())).encode())
        return h.hexdigest()[:16]

    def __repr__(self):
        name = f" {self.name}" if self.name else ""
        return f"<GradedRightModule{name} dim={self.dim} dims={self.dim_vector()}>"


# ----------------------------------------------------------------------
# builders


def simple_module(alg: GradedBasicAlgebra, label) -> GradedRightModule:
    i = alg.label_index(label)
    return GradedRightModule(alg, [(i, 0)], [{}], name=f"S_{alg.labels[i]}")


def semisimple_module(alg: GradedBasicAlgebra, labels=None) -> GradedRightModule:
    """``S_e`` for ``e`` the sum of the given idempotents (all by default)."""
    labels = alg.labels if labels is None else labels
    idx = sorted({alg.label_index(x) for x in labels})
    return GradedRightModule(alg, [(i, 0) for i in idx], [{} for _ in idx], name="S_e")


def projective_sum(alg: GradedBasicAlgebra, summands, name=None):
    """``⊕ e_i A<-d>`` for ``summands = [(i, d), ...]`` (idempotent indices).

    The module records ``summands``, ``coords`` (one ``(summand, algebra
    basis index)`` pair per basis vector) and ``coord_index``.
    """
    tags, coords = [], []
    for r, (i, shift) in enumerate(summands):
        for x in alg.by_u[i]:
            tags.append((alg.tags[x][1], shift + alg.tags[x][2]))
            coords.append((r, x))
    where = {c: k for k, c in enumerate(coords)}
    action = []
    rp = alg.right_products
    for r, x in coords:
        row = {}
        for b, terms in rp[x].items():
            row[b] = tuple((where[(r, y)], c) for y, c in terms)
        action.append(row)
    mod = GradedRightModule(alg, tags, action, name=name)
    mod.coords = coords
    mod.summands = tuple(summands)
    mod.coord_index = where
    return mod


def projective_module(alg: GradedBasicAlgebra, label, shift: int = 0) -> GradedRightModule:
    """``e_i A<-shift>``: generator in degree ``shift``."""
    i = alg.label_index(label)
    return projective_sum(alg, [(i, shift)], name=f"P_{alg.labels[i]}")


def direct_sum(*mods) -> GradedRightModule:
    alg = mods[0].algebra
    tags, action = [], []
    offset = 0
    for m in mods:
        if m.algebra is not alg:
            raise ModuleError("direct sum over different algebras")
        tags.extend(m.tags)
        for row in m.action:
            action.append({b: tuple((j + offset, c) for j, c in t) for b, t in row.items()})
        offset += m.dim
    return GradedRightModule(alg, tags, action)


def regular_module(alg: GradedBasicAlgebra) -> GradedRightModule:
    return projective_sum(alg, [(i, 0) for i in range(alg.n)], name="A")


def corner_restriction(mod: GradedRightModule, keep, target=None) -> GradedRightModule:
    """``M f`` as a module over ``f A f`` (``f`` = sum of ``keep``)."""
    alg = mod.algebra
    target = target if target is not None else corner(alg, keep)
    keep_idx = sorted({alg.label_index(x) for x in keep})
    relabel = {old: new for new, old in enumerate(keep_idx)}
    if target.labels != tuple(alg.labels[i] for i in keep_idx):
        raise ModuleError("corner algebra does not match the kept labels")
    emb = getattr(target, "embedding", None)
    if emb is None:
        raise ModuleError("target algebra was not built by corner()")
    new_b = {old: new for new, old in enumerate(emb)}
    retained = [i for i, (s, _) in enumerate(mod.tags) if s in relabel]
    new_i = {old: new for new, old in enumerate(retained)}
    tags = [(relabel[mod.tags[i][0]], mod.tags[i][1]) for i in retained]
    action = []
    for i in retained:
        row = {}
        for b, terms in mod.action[i].items():
            if b in new_b:
                row[new_b[b]] = tuple((new_i[j], c) for j, c in terms)
        action.append(row)
    return GradedRightModule(target, tags, action, name=mod.name and f"{mod.name}f")


# ----------------------------------------------------------------------
# homomorphisms and isomorphism testing


def hom_space(M: GradedRightModule, N: GradedRightModule):
    """Basis of degree-0 graded homomorphisms ``M -> N``.

    A homomorphism is stored as ``{piece: matrix}`` with ``matrix`` given as
    rows indexed by the ``N`` piece and columns by the ``M`` piece.
    """
    if M.algebra is not N.algebra:
        raise AlgebraError("modules over different algebras")
    field = M.algebra.field
    common = [t for t in M.pieces if t in N.pieces]
    var = {}
    for t in common:
        for a in range(len(N.pieces[t])):
            for c in range(len(M.pieces[t])):
                var[(t, a, c)] = len(var)
    if not var:
        return [], common
    nvar = len(var)
    eqs = []
    mpos = M.position
    for i, t in enumerate(M.tags):
        for b in M.algebra.positive_by_u[t[0]]:
            # phi(v_i b) - phi(v_i) b = 0, one equation per target coordinate
            rows = {}
            for j, cj in M.act({i: 1}, b).items():
                tj = M.tags[j]
                if tj not in N.pieces:
                    continue
                for a, nk in enumerate(N.pieces[tj]):
                    key = var[(tj, a, mpos[j])]
                    r = rows.setdefault(nk, {})
                    r[key] = r.get(key, 0) + cj
            if t in N.pieces:
                for a, nk in enumerate(N.pieces[t]):
                    key = var[(t, a, mpos[i])]
                    for k, c in N.act({nk: 1}, b).items():
                        r = rows.setdefault(k, {})
                        r[key] = r.get(key, 0) - c
            for r in rows.values():
                if any(field.norm(x) for x in r.values()):
                    v = [0] * nvar
                    for key, x in r.items():
                        v[key] = x
                    eqs.append(v)
    if eqs:
        red, pivots = rref_rows(eqs, nvar, field)
        sols = kernel_from_rref(red, pivots, nvar)
    else:
        sols = [[1 if i == j else 0 for j in range(nvar)] for i in range(nvar)]
    basis = []
    for s in sols:
        hom = {}
        for t in common:
            hom[t] = [
                [field.norm(s[var[(t, a, c)]]) for c in range(len(M.pieces[t]))] for a in range(len(N.pieces[t]))
            ]
        basis.append(hom)
    return basis, common


@dataclass
class IsoResult:
    status: str  # "yes" | "no" | "unknown"
    witness: dict | None = None
    reason: str = ""

    def __bool__(self):
        return self.status == "yes"


def _combine(field, basis, coeffs, pieces):
    out = {}
    for t in pieces:
        mats = [h[t] for h in basis]
        rows = len(mats[0])
        cols = len(mats[0][0]) if rows else 0
        out[t] = [
            [field.norm(sum(c * m[a][b] for c, m in zip(coeffs, mats) if c)) for b in range(cols)]
            for a in range(rows)
        ]
    return out


def _invertible(field, hom):
    for mat in hom.values():
        n = len(mat)
        if n and n != len(mat[0]):
            return False
        if n and len(rref_rows(mat, n, field)[1]) != n:
            return False
    return True


def module_iso(M: GradedRightModule, N: GradedRightModule, seed: int = 0, attempts: int = 20) -> IsoResult:
    """Search for a degree-0 isomorphism ``M -> N``.

    "yes" always carries an invertible intertwiner (checked); a graded
    dimension mismatch gives a definite "no"; otherwise the answer is
    "unknown", never "no".
    """
    if M.algebra is not N.algebra:
        raise AlgebraError("modules over different algebras")
    if M.graded_dims() != N.graded_dims():
        return IsoResult("no", reason="graded dimensions differ")
    field = M.algebra.field
    if M.dim == 0:
        return IsoResult("yes", {}, "zero modules")
    basis, pieces = hom_space(M, N)
    if not basis:
        return IsoResult("unknown", reason="no nonzero homomorphisms of degree 0")
    for h in basis:
        if _invertible(field, h):
            return _verified(M, N, h)
    rng = random.Random(seed)
    for _ in range(attempts):
        coeffs = [rng.randint(-3, 3) for _ in basis]
        if not any(coeffs):
            continue
        h = _combine(field, basis, coeffs, pieces)
        if _invertible(field, h):
            return _verified(M, N, h)
    if len(basis) <= 3:
        for coeffs in iproduct(range(-2, 3), repeat=len(basis)):
            if not any(coeffs):
                continue
            h = _combine(field, basis, coeffs, pieces)
            if _invertible(field, h):
                return _verified(M, N, h)
    return IsoResult("unknown", reason=f"no invertible element found in a {len(basis)}-dimensional Hom space")


def apply_hom(M, N, hom, vec):
    out = {}
    for i, c in vec.items():
        t = M.tags[i]
        if t not in hom:
            continue
        col = M.position[i]
        for a, nk in enumerate(N.pieces[t]):
            x = hom[t][a][col]
            if x:
                out[nk] = out.get(nk, 0) + c * x
    norm = M.algebra.field.norm
    return {k: norm(c) for k, c in out.items() if norm(c)}


def is_homomorphism(M, N, hom) -> bool:
    for i, (s, _) in enumerate(M.tags):
        for b in M.algebra.positive_by_u[s]:
            if apply_hom(M, N, hom, M.act({i: 1}, b)) != N.act(apply_hom(M, N, hom, {i: 1}), b):
                return False
    return True


def _verified(M, N, hom) -> IsoResult:
    if not is_homomorphism(M, N, hom) or not _invertible(M.algebra.field, hom):
        raise ModuleError("internal error: isomorphism witness failed verification")
    return IsoResult("yes", hom)
