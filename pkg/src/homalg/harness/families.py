"""Deterministic instance families: Nakayama cycles, linear quivers, random."""

from __future__ import annotations

import random
import re
from dataclasses import dataclass, field
from itertools import combinations

from ..fields import QQ
from ..quiver import (
    NotCertifiedFiniteDimensional,
    Presentation,
    Quiver,
    compile_presentation,
    make_relation,
)


class FamilyError(ValueError):
    pass


def nakayama(n: int, m: int, field=QQ) -> Presentation:
    """Oriented ``n``-cycle with all paths of length ``m`` set to zero."""
    if n < 1 or m < 2:
        raise FamilyError("nakayama(n, m) needs n >= 1 and m >= 2")
    vertices = [str(i + 1) for i in range(n)]
    arrows = [(f"a{i + 1}", str(i + 1), str((i + 1) % n + 1)) for i in range(n)]
    q = Quiver(vertices, arrows)
    rels = []
    for i in range(n):
        labels = tuple(f"a{(i + k) % n + 1}" for k in range(m))
        rels.append(make_relation(q, [(1, labels)], field))
    return Presentation(q, rels, degcap=max(30, m + 1), field=field, name=f"nakayama({n},{m})")


def linear(n: int, mask=(), field=QQ) -> Presentation:
    """``A_n``: ``1 -> 2 -> ... -> n`` with chosen quadratic zero relations.

    ``mask`` lists the indices ``i`` (1-based) of relations ``a_i a_{i+1}``.
    """
    if n < 1:
        raise FamilyError("linear(n) needs n >= 1")
    vertices = [str(i + 1) for i in range(n)]
    arrows = [(f"a{i + 1}", str(i + 1), str(i + 2)) for i in range(n - 1)]
    q = Quiver(vertices, arrows)
    rels = []
    for i in sorted(set(mask)):
        if not 1 <= i <= n - 2:
            raise FamilyError(f"relation index {i} out of range for linear({n})")
        rels.append(make_relation(q, [(1, (f"a{i}", f"a{i + 1}"))], field))
    tag = ",".join(map(str, sorted(set(mask))))
    return Presentation(q, rels, degcap=max(30, n + 1), field=field, name=f"linear({n},{{{tag}}})")


def linear_masks(n: int):
    """Every subset of the ``n - 2`` possible quadratic relations."""
    idx = list(range(1, n - 1))
    for k in range(len(idx) + 1):
        yield from combinations(idx, k)


def random_presentation(v: int, a: int, r: int, seed: int, field=QQ, degcap: int = 12) -> Presentation:
    """Random quiver with ``v`` vertices, ``a`` arrows and ``r`` quadratic relations.

    Relations are monomials or binomials in composable length-2 paths; a
    binomial uses two parallel paths with coefficients in ``{1, -1, 2}``.
    """
    rng = random.Random(seed)
    vertices = [str(i + 1) for i in range(v)]
    arrows = []
    for k in range(a):
        s, t = rng.randrange(v), rng.randrange(v)
        arrows.append((f"x{k + 1}", vertices[s], vertices[t]))
    q = Quiver(vertices, arrows)
    paths2 = []
    for x in q.arrows:
        for y in q.arrows:
            if x.target == y.source:
                paths2.append((x.label, y.label))
    rng.shuffle(paths2)
    rels = []
    used = set()
    for p in paths2:
        if len(rels) >= r:
            break
        if p in used:
            continue
        src, tgt = q.arrow[p[0]].source, q.arrow[p[1]].target
        parallel = [w for w in paths2 if w != p and w not in used
                    and q.arrow[w[0]].source == src and q.arrow[w[1]].target == tgt]
        if parallel and rng.random() < 0.4:
            w = parallel[0]
            c = rng.choice([1, -1, 2])
            rels.append(make_relation(q, [(1, p), (c, w)], field))
            used.update({p, w})
        else:
            rels.append(make_relation(q, [(1, p)], field))
            used.add(p)
    return Presentation(q, rels, degcap=degcap, field=field, name=f"random({v},{a},{r},seed={seed})")


# ----------------------------------------------------------------------
# family specs


@dataclass
class FamilySpec:
    kind: str
    params: dict = field(default_factory=dict)

    def __str__(self):
        args = ",".join(f"{k}={v}" for k, v in self.params.items())
        return f"{self.kind}({args})"


_SPEC = re.compile(r"^\s*(\w+)\s*\((.*)\)\s*$")


def parse_family(text: str) -> list:
    """Parse ``nakayama(3,2)``, ``linear(4)``, ``linear(4,{1,2})``,
    ``random(4,6,3,seed=17,count=5)``; several specs may be joined by ``;``."""
    specs = []
    for part in text.split(";"):
        if not part.strip():
            continue
        m = _SPEC.match(part)
        if not m:
            raise FamilyError(f"cannot parse family spec {part!r}")
        kind, body = m.group(1), m.group(2)
        pos, kw = [], {}
        for tok in _split_args(body):
            if "=" in tok:
                k, v = tok.split("=", 1)
                kw[k.strip()] = v.strip()
            else:
                pos.append(tok.strip())
        specs.append(_build_spec(kind, pos, kw))
    return specs


def _split_args(body):
    out, depth, cur = [], 0, ""
    for ch in body:
        if ch == "{":
            depth += 1
        elif ch == "}":
            depth -= 1
        if ch == "," and depth == 0:
            out.append(cur)
            cur = ""
        else:
            cur += ch
    if cur.strip():
        out.append(cur)
    return out


def _int(x, name):
    try:
        return int(x)
    except (TypeError, ValueError):
        raise FamilyError(f"parameter {name} must be an integer, got {x!r}") from None


def _build_spec(kind, pos, kw):
    if kind == "nakayama":
        if len(pos) != 2:
            raise FamilyError("nakayama(n, m)")
        return FamilySpec("nakayama", {"n": _int(pos[0], "n"), "m": _int(pos[1], "m")})
    if kind == "linear":
        if not 1 <= len(pos) <= 2:
            raise FamilyError("linear(n[, {mask}])")
        params = {"n": _int(pos[0], "n")}
        if len(pos) == 2 and pos[1].strip() not in ("*", "all"):
            mask = pos[1].strip().strip("{}")
            params["mask"] = tuple(_int(x, "mask") for x in mask.split(",") if x.strip())
        return FamilySpec("linear", params)
    if kind == "random":
        if len(pos) < 3:
            raise FamilyError("random(v, a, r, seed=...)")
        seed = kw.get("seed", pos[3] if len(pos) > 3 else 0)
        return FamilySpec(
            "random",
            {
                "v": _int(pos[0], "v"),
                "a": _int(pos[1], "a"),
                "r": _int(pos[2], "r"),
                "seed": _int(seed, "seed"),
                "count": _int(kw.get("count", 1), "count"),
            },
        )
    raise FamilyError(f"unknown family {kind!r}")


def family_presentations(spec: FamilySpec):
    """Presentations of a family (before compile certification)."""
    p = spec.params
    if spec.kind == "nakayama":
        yield nakayama(p["n"], p["m"])
    elif spec.kind == "linear":
        if "mask" in p:
            yield linear(p["n"], p["mask"])
        else:
            for mask in linear_masks(p["n"]):
                yield linear(p["n"], mask)
    elif spec.kind == "random":
        for k in range(p["count"]):
            yield random_presentation(p["v"], p["a"], p["r"], p["seed"] + k)


def compile_family(spec: FamilySpec):
    """Compiled ``(presentation, algebra)`` pairs and the number skipped."""
    out, skipped = [], 0
    for pres in family_presentations(spec):
        try:
            out.append((pres, compile_presentation(pres)))
        except NotCertifiedFiniteDimensional:
            skipped += 1
    return out, skipped
