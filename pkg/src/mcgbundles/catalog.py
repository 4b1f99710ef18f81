"""Line-oriented catalog files for surface models.

One record per line, ``#`` starts a comment::

    model holed-sphere 5              # or: model closed-genus 3
    gen e1 arc 0 1                    # edge generator: name kind source target
    gen b1 boundary-loop 1 1
    curve a1 boundary-parallel 1      # name kind [holes...]
    curve delta outer-parallel
    curve x1 convex 2 3 4             # cyclic interval of enclosed holes
    curve b abstract                  # closed models
    disjoint a1 : delta a2 x1         # declared geometric intersection 0
    act a1 e1 : e1 b1                 # image of a generator under t_a1
    inv a1 e1 : e1 b1^-1              # image under t_a1^-1
    homology b : 0 0 0 0 1 0          # coordinates in u1 v1 u2 v2 ...
    conj x1 x1 : a1 x1^-1             # f t_c f^-1 = t_c' as "conj c c' : f"

Generators absent from ``act``/``inv`` lines are fixed by that twist.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .groupoid import AutomorphismTable, CatalogError, EdgeGen, word_from_text
from .words import Word

CURVE_KINDS = ("boundary-parallel", "outer-parallel", "convex", "abstract")


@dataclass(frozen=True)
class CurveEntry:
    name: str
    kind: str
    holes: tuple[int, ...] = ()  # enclosed holes, in cyclic order
    disjoint: frozenset[str] = frozenset()
    homology: tuple[int, ...] | None = None
    action: AutomorphismTable | None = None
    inverse_action: AutomorphismTable | None = None


@dataclass(frozen=True)
class Conjugation:
    """Catalog record ``f t_c f^-1 = t_c'``."""

    f: Word
    c: str
    c_image: str


@dataclass
class CatalogRecords:
    kind: str = ""
    size: int = 0
    gens: list[EdgeGen] = field(default_factory=list)
    curves: dict[str, dict] = field(default_factory=dict)
    conjugations: list[Conjugation] = field(default_factory=list)


def parse_catalog(text: str) -> CatalogRecords:
    rec = CatalogRecords()
    gens: dict[str, EdgeGen] = {}
    raw_act: list[tuple[str, str, str, str]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, _, tail = line.partition(":")
        parts = head.split()
        tag = parts[0]
        try:
            if tag == "model":
                rec.kind, rec.size = parts[1], int(parts[2])
            elif tag == "gen":
                name, kind, s, t = parts[1:5]
                if name in gens:
                    raise CatalogError(f"duplicate generator {name}")
                gens[name] = EdgeGen(name, int(s), int(t), kind)
                rec.gens.append(gens[name])
            elif tag == "curve":
                name, kind = parts[1], parts[2]
                if name in rec.curves:
                    raise CatalogError(f"duplicate curve name {name}")
                if kind not in CURVE_KINDS:
                    raise CatalogError(f"unknown curve kind {kind}")
                rec.curves[name] = {"kind": kind, "holes": tuple(int(h) for h in parts[3:]),
                                    "disjoint": set(), "homology": None, "act": {}, "inv": {}}
            elif tag == "disjoint":
                rec.curves[parts[1]]["disjoint"].update(tail.split())
            elif tag in ("act", "inv"):
                raw_act.append((tag, parts[1], parts[2], tail))
            elif tag == "homology":
                rec.curves[parts[1]]["homology"] = tuple(int(x) for x in tail.split())
            elif tag == "conj":
                rec.conjugations.append(Conjugation(Word.parse(tail), parts[1], parts[2]))
            else:
                raise CatalogError(f"unknown record {tag!r}")
        except (IndexError, ValueError, KeyError) as exc:
            raise CatalogError(f"catalog line {lineno}: {raw.strip()!r}: {exc}") from exc
    for tag, cname, gname, tail in raw_act:
        if cname not in rec.curves:
            raise CatalogError(f"action for unknown curve {cname}")
        if gname not in gens:
            raise CatalogError(f"action on unknown generator {gname}")
        g = gens[gname]
        rec.curves[cname][tag][g] = word_from_text(tail, gens, g.source)
    return rec


def build_entries(rec: CatalogRecords) -> dict[str, CurveEntry]:
    entries = {}
    for name, c in rec.curves.items():
        unknown = c["disjoint"] - rec.curves.keys()
        if unknown:
            raise CatalogError(f"{name} declared disjoint from unknown curves {sorted(unknown)}")
        for other in c["disjoint"]:
            if name not in rec.curves[other]["disjoint"]:
                raise CatalogError(f"disjointness not symmetric: {name} / {other}")
        act = inv = None
        if rec.gens:
            act = AutomorphismTable(tuple(rec.gens), c["act"])
            inv = AutomorphismTable(tuple(rec.gens), c["inv"])
        entries[name] = CurveEntry(name, c["kind"], c["holes"], frozenset(c["disjoint"]),
                                   c["homology"], act, inv)
    return entries


def format_catalog(model) -> str:
    """Serialize a :class:`~mcgbundles.planar.SurfaceModel` back to catalog text."""
    lines = [f"model {model.kind} {model.size}"]
    for g in model.generators:
        lines.append(f"gen {g.name} {g.kind} {g.source} {g.target}")
    for c in model.curves.values():
        holes = " ".join(map(str, c.holes))
        lines.append(f"curve {c.name} {c.kind} {holes}".rstrip())
    for c in model.curves.values():
        if c.disjoint:
            lines.append(f"disjoint {c.name} : {' '.join(sorted(c.disjoint, key=model.order))}")
    for c in model.curves.values():
        for tag, table in (("act", c.action), ("inv", c.inverse_action)):
            if table is None:
                continue
            for g in model.generators:
                w = table.image(g)
                if w.letters != ((g, 1),):
                    lines.append(f"{tag} {c.name} {g.name} : {w}")
    for c in model.curves.values():
        if c.homology is not None:
            lines.append(f"homology {c.name} : {' '.join(map(str, c.homology))}")
    for r in model.conjugations:
        lines.append(f"conj {r.c} {r.c_image} : {r.f}")
    return "\n".join(lines) + "\n"

