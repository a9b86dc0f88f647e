"""Projective covers, minimal resolutions and dimension verdicts."""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import AlgebraElement, GradedBasicAlgebra
from .kernels import rref_rows
from .linalg import LinearSolver, kernel_from_rref
from .modules import (
    GradedRightModule,
    hom_space,
    module_iso,
    projective_sum,
    simple_module,
)
from .verdict import Finite, InfiniteCertified, Linearity, Unknown

DEFAULT_BOUND = 20
# largest P_t (total dimension) a resolution may build before it stops early
SIZE_LIMIT = 4000


class BoundError(ValueError):
    """A computation needs a resolution stage beyond the computed bound."""


class ProjectiveList(tuple):
    """Tuple of ``(idempotent index, shift)`` standing for ``⊕ e_i A<-shift>``."""

    def multiplicity(self, i, shift=None):
        return sum(1 for j, d in self if j == i and (shift is None or d == shift))

    def shifts(self):
        return sorted({d for _, d in self})

    def describe(self, labels):
        if not self:
            return "0"
        return " + ".join(f"e_{labels[i]}A<-{d}>" for i, d in self)


@dataclass
class ProjectiveMap:
    """Map ``⊕_c e_{i(c)}A<-d(c)> -> ⊕_r e_{i(r)}A<-d(r)>``.

    ``entries[(r, c)]`` is the element of ``e_{i(r)} A e_{i(c)}`` by which the
    generator of summand ``c`` is left-multiplied into summand ``r``.
    """

    source: ProjectiveList
    target: ProjectiveList
    entries: dict

    def is_radical(self) -> bool:
        return all(all(d > 0 for d in e.degrees()) for e in self.entries.values())

    def degree_consistent(self) -> bool:
        for (r, c), e in self.entries.items():
            if e.degrees() != [self.source[c][1] - self.target[r][1]]:
                return False
        return True


def _cover_data(M: GradedRightModule):
    """Top representatives and projective cover summands of ``M``."""
    alg = M.algebra
    field = alg.field
    pos = M.position
    rad_rows = {t: [] for t in M.pieces}
    for i, (s, d) in enumerate(M.tags):
        for b, terms in M.action[i].items():
            t = (alg.tags[b][1], d + alg.tags[b][2])
            v = [0] * len(M.pieces[t])
            for j, c in terms:
                v[pos[j]] = c
            rad_rows[t].append(v)
    tops = []
    for t, idx in M.pieces.items():
        rows = rad_rows[t]
        pivots = set(rref_rows(rows, len(idx), field)[1]) if rows else set()
        tops.extend(idx[k] for k in range(len(idx)) if k not in pivots)
    tops.sort(key=lambda i: (M.tags[i][0], M.tags[i][1], i))
    return tops


def _kernel_module(P, images, M, name=None):
    """Kernel of ``P -> M`` (column images given) as a module with embedding."""
    alg = P.algebra
    field = alg.field
    mpos = M.position
    k_tags, k_vecs = [], []
    free_of_piece = {}
    for t, idx in P.pieces.items():
        mrows = len(M.pieces.get(t, ()))
        ncols = len(idx)
        if mrows:
            mat = [[0] * ncols for _ in range(mrows)]
            for col, k in enumerate(idx):
                for j, c in images[k].items():
                    mat[mpos[j]][col] = c
            red, pivots = rref_rows(mat, ncols, field)
            basis = kernel_from_rref(red, pivots, ncols)
        else:
            pivots = []
            basis = [[1 if a == b else 0 for b in range(ncols)] for a in range(ncols)]
        pivset = set(pivots)
        free = [idx[col] for col in range(ncols) if col not in pivset]
        start = len(k_tags)
        free_of_piece[t] = {f: start + n for n, f in enumerate(free)}
        for v in basis:
            k_tags.append(t)
            k_vecs.append({idx[col]: field.norm(x) for col, x in enumerate(v) if field.norm(x)})
    action = []
    for vec, (s, _) in zip(k_vecs, k_tags):
        row = {}
        for b in alg.positive_by_u[s]:
            img = P.act(vec, b)
            if not img:
                continue
            t = P.tags[next(iter(img))]
            fp = free_of_piece[t]
            row[b] = tuple((fp[f], c) for f, c in img.items() if f in fp)
        action.append(row)
    return GradedRightModule(alg, k_tags, action, name=name), k_vecs


class Resolution:
    """Minimal graded projective resolution, computed stage by stage.

    Stage ``t`` stores the summands of ``P_t``, the syzygy ``Omega^t`` (with
    ``Omega^0 = M``), the top representatives in ``Omega^t`` generating
    ``P_t``, the images of the ``P_t`` basis in ``Omega^t`` and the embedding
    of ``Omega^{t+1}`` into ``P_t``.
    """

    def __init__(self, module: GradedRightModule):
        self.module = module
        self.algebra = module.algebra
        self.terms = []  # ProjectiveList per stage
        self.P = []
        self.syzygies = [module]
        self.tops = []
        self.cover_images = []
        self.embeddings = []
        self.terminated = module.dim == 0
        self.size_limited = False
        self._piece_solvers = {}
        self._d_cache = {}

    @property
    def computed(self) -> int:
        """Highest stage ``t`` with ``P_t`` computed (``-1`` if none)."""
        return len(self.terms) - 1

    @property
    def length(self):
        """Projective dimension if terminated, else ``None``."""
        if not self.terminated:
            return None
        return max(len(self.terms) - 1, 0)

    def extend(self, bound: int) -> Resolution:
        while not self.terminated and not self.size_limited and self.computed < bound:
            self._step()
        return self

    def reach(self, bound: int) -> int:
        """Last stage with complete information, capped at ``bound``."""
        if self.terminated:
            return bound
        return min(bound, self.computed)

    def _step(self):
        t = len(self.terms)
        M = self.syzygies[t]
        alg = self.algebra
        tops = _cover_data(M)
        summands = ProjectiveList((M.tags[i][0], M.tags[i][1]) for i in tops)
        if sum(len(alg.by_u[i]) for i, _ in summands) > SIZE_LIMIT:
            self.size_limited = True
            return
        P = projective_sum(alg, summands, name=f"P_{t}")
        images = []
        for r, x in P.coords:
            images.append(M.act({tops[r]: 1}, x))
        K, emb = _kernel_module(P, images, M, name=f"Omega^{t + 1}")
        self.terms.append(summands)
        self.P.append(P)
        self.tops.append(tops)
        self.cover_images.append(images)
        self.embeddings.append(emb)
        self.syzygies.append(K)
        if K.dim == 0:
            self.terminated = True

    # ------------------------------------------------------------------
    def require(self, t: int):
        if t > self.computed and not self.terminated:
            raise BoundError(f"stage {t} beyond computed stage {self.computed}")

    def term(self, t) -> ProjectiveList:
        if t < len(self.terms):
            return self.terms[t]
        self.require(t)
        return ProjectiveList()

    def d_image(self, t: int, k: int):
        """``d_t`` of basis vector ``k`` of ``P_t`` as a vector of ``P_{t-1}``."""
        key = (t, k)
        hit = self._d_cache.get(key)
        if hit is not None:
            return hit
        emb = self.embeddings[t - 1]
        out = {}
        for j, c in self.cover_images[t][k].items():
            for m, c2 in emb[j].items():
                out[m] = out.get(m, 0) + c * c2
        norm = self.algebra.field.norm
        out = {m: norm(c) for m, c in out.items() if norm(c)}
        self._d_cache[key] = out
        return out

    def generator_image(self, t: int, c: int):
        """``d_t`` of the generator of summand ``c`` of ``P_t``."""
        return self.embeddings[t - 1][self.tops[t][c]]

    def differential(self, t: int) -> ProjectiveMap:
        """``d_t : P_t -> P_{t-1}`` for ``t >= 1``."""
        alg = self.algebra
        P_prev = self.P[t - 1]
        entries = {}
        for c in range(len(self.terms[t])):
            for m, coeff in self.generator_image(t, c).items():
                r, x = P_prev.coords[m]
                entries.setdefault((r, c), {})[x] = coeff
        return ProjectiveMap(
            self.terms[t],
            self.terms[t - 1],
            {rc: AlgebraElement(alg, v) for rc, v in sorted(entries.items())},
        )

    def piece_matrix(self, t: int, piece):
        """Rows/columns of ``d_t`` (or the augmentation for ``t = 0``) on a piece."""
        P = self.P[t]
        cols = P.pieces.get(piece, [])
        if t == 0:
            target = self.module
            images = [self.cover_images[0][k] for k in cols]
        else:
            target = self.P[t - 1]
            images = [self.d_image(t, k) for k in cols]
        rows_idx = target.pieces.get(piece, [])
        pos = target.position
        mat = [[0] * len(cols) for _ in rows_idx]
        for col, img in enumerate(images):
            for j, c in img.items():
                mat[pos[j]][col] = c
        return mat, cols, rows_idx

    def solver(self, t: int, piece):
        """Cached :class:`LinearSolver` for ``d_t`` restricted to ``piece``."""
        key = (t, piece)
        s = self._piece_solvers.get(key)
        if s is None:
            mat, cols, rows_idx = self.piece_matrix(t, piece)
            s = (LinearSolver(mat, len(cols), self.algebra.field), cols, rows_idx)
            self._piece_solvers[key] = s
        return s

    def describe(self):
        labels = self.algebra.labels
        return [self.terms[t].describe(labels) for t in range(len(self.terms))]

    # state for the on-disk cache ------------------------------------------
    def to_state(self):
        return {
            "terms": [tuple(x) for x in self.terms],
            "tops": self.tops,
            "cover_images": self.cover_images,
            "embeddings": self.embeddings,
            "syzygies": [(m.tags, m.action) for m in self.syzygies[1:]],
            "terminated": self.terminated,
            "size_limited": self.size_limited,
        }

    @classmethod
    def from_state(cls, module, state):
        res = cls(module)
        alg = module.algebra
        for t, summands in enumerate(state["terms"]):
            pl = ProjectiveList(summands)
            res.terms.append(pl)
            res.P.append(projective_sum(alg, pl, name=f"P_{t}"))
        res.tops = [list(x) for x in state["tops"]]
        res.cover_images = state["cover_images"]
        res.embeddings = state["embeddings"]
        res.syzygies = [module] + [
            GradedRightModule(alg, tags, action, name=f"Omega^{t + 1}")
            for t, (tags, action) in enumerate(state["syzygies"])
        ]
        res.terminated = state["terminated"]
        res.size_limited = state.get("size_limited", False)
        return res


# ----------------------------------------------------------------------
# resolution cache


class ResolutionCache:
    """In-memory cache keyed by module content, optionally backed by disk."""

    def __init__(self, disk=None):
        self.memory = {}
        self.disk = disk

    def get(self, module: GradedRightModule, bound: int) -> Resolution:
        key = module.key()
        res = self.memory.get(key)
        if res is None and self.disk is not None:
            state = self.disk.load(key)
            if state is not None:
                res = Resolution.from_state(module, state)
        if res is None:
            res = Resolution(module)
        self.memory[key] = res
        before = res.computed
        res.extend(bound)
        if self.disk is not None and res.computed != before:
            self.disk.store(key, res.to_state())
        return res

    def clear(self):
        self.memory.clear()


_DEFAULT_CACHE = ResolutionCache()


def default_cache() -> ResolutionCache:
    return _DEFAULT_CACHE


def set_default_cache(cache: ResolutionCache):
    global _DEFAULT_CACHE
    _DEFAULT_CACHE = cache


def minimal_resolution(M: GradedRightModule, bound: int = DEFAULT_BOUND, cache=None) -> Resolution:
    """Minimal resolution of ``M`` through stage ``bound`` (or termination)."""
    if bound < 0:
        raise ValueError("bound must be nonnegative")
    cache = cache if cache is not None else _DEFAULT_CACHE
    return cache.get(M, bound)


def projective_cover(M: GradedRightModule):
    """``(P_0 summands, images of the P_0 basis in M, P_0 module)``."""
    if M.dim == 0:
        return ProjectiveList(), [], None
    tops = _cover_data(M)
    summands = ProjectiveList((M.tags[i][0], M.tags[i][1]) for i in tops)
    P = projective_sum(M.algebra, summands)
    images = [M.act({tops[r]: 1}, x) for r, x in P.coords]
    return summands, images, P


def syzygy(M: GradedRightModule):
    """First syzygy of ``M`` with its embedding into the projective cover."""
    _summands, images, P = projective_cover(M)
    if P is None:
        return M, []
    return _kernel_module(P, images, M)


# ----------------------------------------------------------------------
# verdicts


def _dims_shifted(M, s):
    return {(sup, d + s): n for (sup, d), n in M.graded_dims().items()}


def find_periodicity(res: Resolution, name="M", upto=None):
    """First ``(i, j)`` with ``Omega^j ≅ Omega^i<-s>``; ordered by ``j`` then ``i``."""
    syz = res.syzygies
    last = len(syz) - 1 if upto is None else min(upto, len(syz) - 1)
    for j in range(1, last + 1):
        Mj = syz[j]
        if Mj.dim == 0:
            return None
        for i in range(j):
            Mi = syz[i]
            if Mi.dim != Mj.dim or Mi.dim_vector() != Mj.dim_vector():
                continue
            s = min(d for _, d in Mj.tags) - min(d for _, d in Mi.tags)
            if _dims_shifted(Mi, s) != Mj.graded_dims():
                continue
            if i + 1 < len(res.terms) and j + 1 < len(res.terms):
                # isomorphic modules have isomorphic covers
                if sorted((a, d + s) for a, d in res.terms[i]) != sorted(res.terms[j]):
                    continue
            iso = module_iso(Mi.shift(-s), Mj, seed=1000 * i + j)
            if iso.status == "yes":
                return InfiniteCertified(i, j, -s, name, iso.witness)
    return None


def projective_dimension(M: GradedRightModule, bound: int = DEFAULT_BOUND, cache=None):
    res = minimal_resolution(M, bound, cache)
    if res.terminated and res.length is not None and res.length <= bound:
        return Finite(res.length)
    cert = find_periodicity(res, M.name or "M", upto=bound)
    if cert is not None:
        return cert
    return Unknown(bound)


def global_dimension(alg: GradedBasicAlgebra, bound: int = DEFAULT_BOUND, cache=None, detail=False):
    """Supremum of the projective dimensions of the simple modules."""
    per = {}
    for lab in alg.labels:
        per[lab] = projective_dimension(simple_module(alg, lab), bound, cache)
    verdict = combine_verdicts(per.values(), bound)
    return (verdict, per) if detail else verdict


def combine_verdicts(verdicts, bound):
    verdicts = list(verdicts)
    for v in verdicts:
        if isinstance(v, InfiniteCertified):
            return v
    if any(isinstance(v, Unknown) for v in verdicts):
        return Unknown(bound)
    return Finite(max((v.d for v in verdicts), default=0))


def is_linear_resolution(M: GradedRightModule, bound: int = DEFAULT_BOUND, cache=None) -> Linearity:
    """Is ``P_t`` generated purely in internal degree ``t`` for all ``t <= bound``?"""
    res = minimal_resolution(M, bound, cache)
    last = min(res.computed, bound)
    for t in range(last + 1):
        if any(d != t for _, d in res.terms[t]):
            return Linearity(False, t)
    return Linearity(True, max(last, 0), complete=res.terminated)


def is_koszul(alg: GradedBasicAlgebra, bound: int = DEFAULT_BOUND, cache=None) -> Linearity:
    """Linearity of the resolution of ``A(0)``, i.e. of every simple."""
    lins = [is_linear_resolution(simple_module(alg, lab), bound, cache) for lab in alg.labels]
    failing = [x for x in lins if not x.linear]
    if failing:
        return min(failing, key=lambda x: x.stage)
    if all(x.complete for x in lins):
        return Linearity(True, max((x.stage for x in lins), default=0), complete=True)
    return Linearity(True, min(x.stage for x in lins if not x.complete), complete=False)


# ----------------------------------------------------------------------
# soundness checks


def hom_complex_differential(res: Resolution, t: int, j: int):
    """Matrix of ``Hom(P_t, S_j) -> Hom(P_{t+1}, S_j)``.

    Rows index summands of ``P_{t+1}`` with label ``j``, columns those of
    ``P_t``; the entry is the coefficient of ``e_j`` in the differential.
    """
    src = [c for c, (i, _) in enumerate(res.terms[t + 1]) if i == j]
    tgt = [r for r, (i, _) in enumerate(res.terms[t]) if i == j]
    P_prev = res.P[t]
    mat = [[0] * len(tgt) for _ in src]
    col = {r: k for k, r in enumerate(tgt)}
    for a, c in enumerate(src):
        for m, coeff in res.generator_image(t + 1, c).items():
            r, x = P_prev.coords[m]
            if x == j and r in col:
                mat[a][col[r]] = coeff
    return mat


def verify_resolution(res: Resolution) -> dict:
    """Check d∘d = 0, exactness, radicality and Hom-complex vanishing.

    Returns a dict of booleans; every value must be true for a sound
    minimal resolution.
    """
    field = res.algebra.field
    T = res.computed
    out = {"dd_zero": True, "exact": True, "radical": True, "hom_vanishing": True, "top_count": True}
    if T < 0:
        return out
    # augmentation surjective
    for piece, idx in res.module.pieces.items():
        mat, cols, _rows = res.piece_matrix(0, piece)
        rk = len(rref_rows(mat, len(cols), field)[1]) if cols else 0
        if rk != len(idx):
            out["exact"] = False
    for t in range(1, T + 1):
        dmap = res.differential(t)
        if not dmap.is_radical() or not dmap.degree_consistent():
            out["radical"] = False
        for j in range(res.algebra.n):
            mat = hom_complex_differential(res, t - 1, j)
            if any(x for row in mat for x in row):
                out["hom_vanishing"] = False
    for t in range(1, T + 1):
        for piece in res.P[t].pieces:
            # d_{t-1} d_t = 0 on this piece
            for k in res.P[t].pieces[piece]:
                img = res.d_image(t, k)
                if t == 1:
                    comp = {}
                    for m, c in img.items():
                        for j, c2 in res.cover_images[0][m].items():
                            comp[j] = comp.get(j, 0) + c * c2
                else:
                    comp = {}
                    for m, c in img.items():
                        for j, c2 in res.d_image(t - 1, m).items():
                            comp[j] = comp.get(j, 0) + c * c2
                if any(field.norm(c) for c in comp.values()):
                    out["dd_zero"] = False
        # exactness at P_{t-1}: dim ker d_{t-1} = rank d_t
        for piece, idx in res.P[t - 1].pieces.items():
            mat_prev, cols_prev, _ = res.piece_matrix(t - 1, piece)
            rk_prev = len(rref_rows(mat_prev, len(cols_prev), field)[1]) if mat_prev else 0
            mat, cols, _ = res.piece_matrix(t, piece)
            rk = len(rref_rows(mat, len(cols), field)[1]) if mat and cols else 0
            if len(idx) - rk_prev != rk:
                out["exact"] = False
    if res.terminated and T >= 0:
        for piece, idx in res.P[T].pieces.items():
            mat, cols, _ = res.piece_matrix(T, piece)
            rk = len(rref_rows(mat, len(cols), field)[1]) if mat else 0
            if rk != len(idx):
                out["exact"] = False
    # summands of P_t counted independently as dim Hom(Omega^t, S_j<-d>)
    for t in range(T + 1):
        M = res.syzygies[t]
        for j, d in set(res.terms[t]):
            S = simple_module(res.algebra, res.algebra.labels[j]).shift(-d)
            if len(hom_space(M, S)[0]) != res.terms[t].multiplicity(j, d):
                out["top_count"] = False
    return out
