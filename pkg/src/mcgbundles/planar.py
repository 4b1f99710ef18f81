"""Spheres with holes: curve catalog, push maps and the daisy family.

Geometric model.  The outer boundary ``delta`` carries the basepoint ``v0``;
holes ``1..d`` sit in a row, ``v_i`` at the bottom of hole ``i``.  Arcs ``e_i``
run straight up from ``v0`` to ``v_i`` and ``b_i`` is the boundary loop of hole
``i``.  Every mapping class fixes the ``b_i``, so a twist is pinned down by
the images of the arcs.

The curve ``c_S`` enclosing a set ``S`` of holes bounds a neighbourhood of
those holes joined by a band that runs *above* the row, passing over every
hole not in ``S``.  Read around the circle ``1..d`` these are exactly the
convex curves of cyclic intervals, wrapping ones included.  The arc ``e_l``
crosses ``c_S`` once if ``l`` is in ``S`` and not at all otherwise, so the
positive twist sends ``e_l`` to ``L_l e_l`` where ``L_l`` is the loop parallel
to ``c_S`` with its tail along ``e_l``.  With ``g_k = e_k b_k e_k^-1``::

    L_l = [prod g_k^-1 : k not in S, l < k < max S]
          (g_max ... g_min)
          [prod g_k^-1 : k not in S, min S < k < l]

The sign is fixed by the lantern relation, which is checked whenever a catalog
with three or more holes is loaded.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path

from .catalog import Conjugation, CurveEntry, build_entries, format_catalog, parse_catalog
from .groupoid import (AutomorphismTable, CatalogError, EdgeGen, GroupoidWord,
                       evaluate)
from .words import RelationWord, Verdict, Word

DELTA = "delta"


class ConventionError(CatalogError):
    """A loaded catalog breaks the orientation anchor or its own inverses."""


@dataclass(frozen=True)
class SurfaceModel:
    kind: str  # "holed-sphere" or "closed-genus"
    size: int  # boundary count p, or genus g
    generators: tuple[EdgeGen, ...]
    curves: dict[str, CurveEntry]
    conjugations: tuple[Conjugation, ...] = ()
    _by_holes: dict = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        for c in self.curves.values():
            if c.holes:
                self._by_holes.setdefault(frozenset(c.holes), c.name)

    @property
    def holes(self) -> int:
        return self.size - 1 if self.kind == "holed-sphere" else 0

    def curve(self, name: str) -> CurveEntry:
        try:
            return self.curves[name]
        except KeyError:
            raise CatalogError(f"{name!r} is not in the catalog") from None

    def curve_by_holes(self, holes) -> str | None:
        return self._by_holes.get(frozenset(holes))

    def order(self, name: str) -> int:
        return list(self.curves).index(name)

    def gen(self, name: str) -> EdgeGen:
        for g in self.generators:
            if g.name == name:
                return g
        raise KeyError(name)

    def disjoint(self, u: str, v: str) -> bool:
        return v in self.curve(u).disjoint


def cyclic_interval(start: int, length: int, d: int) -> tuple[int, ...]:
    return tuple((start - 1 + i) % d + 1 for i in range(length))


def _parallel_loop(S: set[int], l: int) -> list[tuple[str, int]]:
    def g(k, e):
        return [(f"e{k}", 1), (f"b{k}", e), (f"e{k}", -1)]

    lo, hi = min(S), max(S)
    w = []
    for k in range(l + 1, hi):
        if k not in S:
            w += g(k, -1)
    for k in range(hi, lo - 1, -1):
        w += g(k, 1)
    for k in range(lo + 1, l):
        if k not in S:
            w += g(k, -1)
    return w


def _fmt(letters) -> str:
    out = []
    for s, e in letters:
        if out and out[-1][0] == s and out[-1][1] == -e:
            out.pop()
        else:
            out.append((s, e))
    return " ".join(s if e > 0 else f"{s}^-1" for s, e in out)


def _inverse_letters(w):
    return [(s, -e) for s, e in reversed(w)]


def holed_sphere_catalog(p: int) -> str:
    """Catalog text for the sphere with ``p`` boundary components."""
    if p < 3:
        raise ValueError(f"a holed sphere needs p >= 3 boundary components, got {p}")
    d = p - 1
    curves: list[tuple[str, str, tuple[int, ...]]] = [(DELTA, "outer-parallel", tuple(range(1, d + 1)))]
    curves += [(f"a{i}", "boundary-parallel", (i,)) for i in range(1, d + 1)]
    if d == 2:
        curves.append(("c1_2", "convex", (1, 2)))  # parallel to delta
    else:
        # x_i encloses every hole but i
        curves += [(f"x{i}", "convex", cyclic_interval(i % d + 1, d - 1, d)) for i in range(1, d + 1)]
    for length in range(2, d - 1):
        for start in range(1, d + 1):
            iv = cyclic_interval(start, length, d)
            curves.append((f"c{iv[0]}_{iv[-1]}", "convex", iv))

    lines = [f"# sphere with {p} boundary components: outer {DELTA}, holes 1..{d}",
             f"model holed-sphere {p}"]
    for i in range(1, d + 1):
        lines.append(f"gen e{i} arc 0 {i}")
    for i in range(1, d + 1):
        lines.append(f"gen b{i} boundary-loop {i} {i}")
    for name, kind, holes in curves:
        lines.append(f"curve {name} {kind} {' '.join(map(str, holes))}".rstrip())
    sets = {name: set(holes) for name, _, holes in curves}

    def disjoint(u, v):
        S, T = sets[u], sets[v]
        return u != v and (S <= T or T <= S or not S & T)

    for name, _, _ in curves:
        dis = [o for o, _, _ in curves if disjoint(name, o)]
        if dis:
            lines.append(f"disjoint {name} : {' '.join(dis)}")
    for name, _, holes in curves:
        S = set(holes)
        for l in sorted(S):
            loop = _parallel_loop(S, l)
            lines.append(f"act {name} e{l} : {_fmt(loop + [(f'e{l}', 1)])}")
            lines.append(f"inv {name} e{l} : {_fmt(_inverse_letters(loop) + [(f'e{l}', 1)])}")
    # mapping classes of a planar surface preserve the hole partition of a
    # curve, so f(c) is a catalog curve only when f(c) = c
    for name, _, _ in curves:
        lines.append(f"conj {name} {name} : {name}^2")
        for o, _, _ in curves:
            if disjoint(name, o):
                lines.append(f"conj {name} {name} : {o} {name}^-1 {o}")
    return "\n".join(lines) + "\n"


def load_model(text: str, validate: bool = True) -> SurfaceModel:
    rec = parse_catalog(text)
    if rec.kind not in ("holed-sphere", "closed-genus"):
        raise CatalogError(f"unknown model kind {rec.kind!r}")
    if rec.kind == "holed-sphere" and rec.size < 3:
        raise ValueError(f"a holed sphere needs p >= 3 boundary components, got {rec.size}")
    model = SurfaceModel(rec.kind, rec.size, tuple(rec.gens), build_entries(rec), tuple(rec.conjugations))
    if validate and model.kind == "holed-sphere":
        validate_model(model)
    return model


def validate_model(model: SurfaceModel) -> None:
    ident = AutomorphismTable.identity(model.generators)
    for c in model.curves.values():
        if c.action.compose(c.inverse_action) != ident or c.inverse_action.compose(c.action) != ident:
            raise ConventionError(f"inverse table of {c.name} is not inverse to its action")
    d = model.holes
    if d >= 3 and all(f"x{i}" in model.curves for i in range(1, d + 1)):
        if not verify_relation(model, daisy_relation(d)):
            raise ConventionError("orientation anchor failed: the lantern/daisy relation "
                                  f"with positive twists does not hold for {d} holes")


@lru_cache(maxsize=None)
def holed_sphere(p: int) -> SurfaceModel:
    return load_model(holed_sphere_catalog(p))


def load_catalog_file(path: str | Path, validate: bool = True) -> SurfaceModel:
    return load_model(Path(path).read_text(), validate)


def write_catalog_file(model: SurfaceModel, path: str | Path) -> None:
    Path(path).write_text(format_catalog(model))


def twist(model: SurfaceModel, name: str, power: int = 1) -> Word:
    model.curve(name)
    return Word.gen(name, power)


@dataclass(frozen=True)
class ArcSpec:
    """Embedded arc based at ``delta`` enclosing a cyclic interval of holes.

    ``enclosed=None`` is the arc around all holes.
    """

    enclosed: tuple[int, ...] | None
    orientation: str = "clockwise"

    def holes(self, d: int) -> tuple[int, ...]:
        return tuple(range(1, d + 1)) if self.enclosed is None else tuple(self.enclosed)


def push_sides(model: SurfaceModel, arc: ArcSpec) -> tuple[str | None, str]:
    """Names of the boundary curves of the pair of pants around ``arc``.

    Returns (left, right) for the clockwise arc; ``None`` marks a
    null-homotopic side.  The right side encloses the arc's holes, the left
    side encloses ``delta`` together with them, i.e. the complementary holes.
    """
    if model.kind != "holed-sphere":
        raise ValueError("push maps need a holed-sphere model")
    d = model.holes
    S = set(arc.holes(d))
    if not S or not S <= set(range(1, d + 1)):
        raise ValueError(f"arc enclosing {sorted(S)} is not realizable with {d} holes")
    right = model.curve_by_holes(S)
    if right is None:
        raise ValueError(f"arc enclosing {sorted(S)}: not a cyclic interval of holes")
    rest = set(range(1, d + 1)) - S
    left = model.curve_by_holes(rest) if rest else None
    if rest and left is None:
        raise ValueError(f"no catalog curve encloses {sorted(rest)}")
    return left, right


def push(model: SurfaceModel, arc: ArcSpec) -> Word:
    """``Push_delta(arc) = t_left t_delta^-1 t_right^-1`` for a clockwise arc.

    A counterclockwise arc is the reversed loop, whose push is the inverse.
    """
    left, right = push_sides(model, arc)
    w = (Word.gen(left) if left else Word()) * Word.gen(DELTA, -1) * Word.gen(right, -1)
    if arc.orientation in ("clockwise", "cw"):
        return w
    if arc.orientation in ("counterclockwise", "ccw"):
        return w.inverse()
    raise ValueError(f"unknown orientation {arc.orientation!r}")


def daisy_relation(d: int) -> RelationWord:
    """``t_delta^(d-2) t_a1 ... t_ad = t_x1 ... t_xd`` on the sphere with d+1 boundaries."""
    if d < 3:
        raise ValueError(f"daisy relation needs d >= 3 holes, got {d}")
    lhs = Word.gen(DELTA, d - 2) * Word(tuple((f"a{i}", 1) for i in range(1, d + 1)))
    rhs = Word(tuple((f"x{i}", 1) for i in range(1, d + 1)))
    return RelationWord(lhs, rhs, f"daisy{d}")


def power_relation_blocks(k: int) -> list[Word]:
    """Factors of the right side, before free reduction merges neighbours."""
    if k < 1:
        raise ValueError(f"power relation needs k >= 1, got {k}")
    block = Word.parse("x1 a2^-1 x2 a1^-1")
    x3 = Word.gen("x3")
    out = [block.conj(x3 ** (i - 1)) for i in range(1, k + 1)]
    out.append(Word((("x3", k), ("a4", -k), ("x4", k), ("a3", -k))))
    return out


def power_relation(k: int) -> RelationWord:
    rhs = Word()
    for w in power_relation_blocks(k):
        rhs = rhs * w
    return RelationWord(Word.gen(DELTA, 2 * k), rhs, f"power{k}")


def verify_relation(model: SurfaceModel, r: RelationWord) -> Verdict:
    if model.kind != "holed-sphere":
        raise ValueError("exact verification needs a holed-sphere model")
    left, right = evaluate(r.lhs, model), evaluate(r.rhs, model)
    g = left.differs_at(right)
    if g is None:
        return Verdict(True, provenance="planar-exact")
    return Verdict(False, witness=g.name, provenance="planar-exact",
                   detail=f"{g.name}: lhs -> {left.image(g)} ; rhs -> {right.image(g)}")


def boundary_twist_image(model: SurfaceModel, i: int, n: int) -> GroupoidWord:
    """Expected image of ``e_i`` under ``t_ai^n``."""
    e, b = model.gen(f"e{i}"), model.gen(f"b{i}")
    letters = ((e, 1),) + ((b, 1 if n > 0 else -1),) * abs(n)
    return GroupoidWord(letters, 0, i)
