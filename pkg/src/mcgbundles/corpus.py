"""Shipped catalogs and derivation scripts.

``scripts/generate_corpus.py`` regenerates the files under ``data/``; tests
check that the shipped copies match what the code produces.
"""
from __future__ import annotations

from pathlib import Path

from . import rewrite as rw
from .catalog import format_catalog
from .planar import holed_sphere
from .words import Word

DATA = Path(__file__).parent / "data"

CATALOG_SIZES = (3, 4, 5, 6, 7, 8)


def catalog_texts() -> dict[str, str]:
    return {f"holed_sphere_{p}.cat": format_catalog(holed_sphere(p)) for p in CATALOG_SIZES}


def _script(d: rw.Derivation, oracles: rw.OracleSet, title: str) -> str:
    return rw.format_script(d, rw.oracles_used(d, oracles), title)


def script_texts() -> dict[str, str]:
    out = {}
    planar = rw.planar_oracles(5)
    for k in (1, 2, 3):
        d = rw.derive_power_relation(k, planar)
        out[f"power_relation_k{k}.drv"] = _script(d, planar, f"t_delta^{2 * k} to the power relation, k = {k}")
    full = rw.default_oracles()
    for k in (1, 2):
        cf = rw.commutatorize_even_power(k, full)
        out[f"commutator_factorization_k{k}.drv"] = _script(
            cf.derivation, full, f"t_delta^{2 * k} as {cf.count} commutators")
    xo = rw.default_oracles() | rw.b_axioms()
    d, _ = rw.derive_lifted_xm(1, 2, xo)
    out["lifted_xm.drv"] = _script(d, xo, "lifted X_m relation, k = 1, m = 2")
    d, _ = rw.derive_lifted_ym(1, 2, full)
    out["lifted_ym.drv"] = _script(d, full, "lifted Y_m relation, k = 1, m = 2")
    for name, brackets, rules, pairs in (
        ("capped_xm.drv", rw.lifted_xm_brackets(1, 2), rw.XM_CAP, [("b", "a1"), ("b", "a3"), ("a1", "a3")]),
        ("capped_ym.drv", rw.lifted_ym_brackets(1, 2), rw.YM_CAP, [("a1", "a2")]),
    ):
        w = Word()
        for c in brackets:
            w = w * rw.cap_commutator(c, rules).expand()
        o = rw.closed_oracles(pairs)
        out[name] = _script(rw.derive_trivial(w, o), o, f"capped relation {name[:-4]}, k = 1, m = 2")
    return out


def write_all(directory: Path = DATA) -> list[Path]:
    directory.mkdir(parents=True, exist_ok=True)
    written = []
    for name, text in {**catalog_texts(), **script_texts()}.items():
        path = directory / name
        path.write_text(text)
        written.append(path)
    return written
