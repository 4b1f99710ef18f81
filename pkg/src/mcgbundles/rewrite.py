"""Checked derivations between words in a mapping class group.

A derivation is a start word, an end word and a list of rewrite steps acting
on the letter expansion of the start (every letter has exponent +-1).  Each
step must be licensed by an oracle:

    cancel POS                 drop an inverse pair at POS, POS+1
    insert POS SYM EXP         insert SYM^EXP SYM^-EXP before POS
    swap POS                   swap POS, POS+1; needs commute(u, v)
    conj POS F C C2 N          C2^s (N copies) -> F C^s..C^s F^-1 ; needs conjugate(F, C, C2)
    unconj POS F C C2 N        the reverse of conj
    subst POS NAME DIR         DIR=lr: lhs -> rhs of relation NAME, DIR=rl: rhs -> lhs

Positions count letters from 0.  There is no normal form: the checker only
replays a guided chain and accepts it if every step is licensed and the last
stage equals the end word letter for letter.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Iterable, Mapping

from .planar import DELTA, daisy_relation, holed_sphere, power_relation, verify_relation
from .words import Letter, RelationWord, Verdict, Word, commutator

PLANAR = "planar-verified"
AXIOM = "axiom"
DECLARED = "declared"


class RewriteError(ValueError):
    """A step cannot be applied, or no rewrite pattern matches."""


@dataclass(frozen=True)
class Oracle:
    kind: str  # "commute", "conjugate", "relation"
    args: tuple[str, ...] = ()
    relation: RelationWord | None = None
    provenance: str = AXIOM

    @property
    def key(self) -> tuple:
        if self.kind == "commute":
            return ("commute",) + tuple(sorted(self.args))
        if self.kind == "relation":
            return ("relation", self.relation.name)
        return (self.kind,) + self.args

    def __str__(self) -> str:
        if self.kind == "commute":
            return f"commute({self.args[0]}, {self.args[1]})"
        if self.kind == "conjugate":
            f, c, c2 = self.args
            return f"{f} t_{c} {f}^-1 = t_{c2}"
        return f"{self.relation.name}: {self.relation}"


def commute(u: str, v: str, provenance: str = AXIOM) -> Oracle:
    return Oracle("commute", (u, v), provenance=provenance)


def conjugate(f: str, c: str, c2: str, provenance: str = AXIOM) -> Oracle:
    return Oracle("conjugate", (f, c, c2), provenance=provenance)


def named(r: RelationWord, provenance: str = PLANAR) -> Oracle:
    return Oracle("relation", relation=r, provenance=provenance)


@dataclass(frozen=True)
class OracleSet:
    oracles: Mapping[tuple, Oracle] = field(default_factory=dict)

    @classmethod
    def of(cls, oracles: Iterable[Oracle]) -> "OracleSet":
        return cls({o.key: o for o in oracles})

    def __or__(self, other: "OracleSet") -> "OracleSet":
        return OracleSet({**self.oracles, **other.oracles})

    def __iter__(self):
        return iter(self.oracles.values())

    def __len__(self):
        return len(self.oracles)

    def without(self, *oracles: Oracle) -> "OracleSet":
        drop = {o.key for o in oracles}
        return OracleSet({k: o for k, o in self.oracles.items() if k not in drop})

    def commuting(self, u: str, v: str) -> Oracle | None:
        return self.oracles.get(("commute",) + tuple(sorted((u, v))))

    def conjugating(self, f: str, c: str, c2: str) -> Oracle | None:
        return self.oracles.get(("conjugate", f, c, c2))

    def relation(self, name: str) -> Oracle | None:
        return self.oracles.get(("relation", name))

    def conjugation_images(self, f: str) -> dict[str, str]:
        """``c2 -> c`` for every oracle ``f t_c f^-1 = t_c2``."""
        return {o.args[2]: o.args[1] for o in self if o.kind == "conjugate" and o.args[0] == f}


@dataclass(frozen=True)
class Step:
    rule: str
    pos: int
    args: tuple = ()

    def __str__(self) -> str:
        return " ".join([self.rule, str(self.pos), *map(str, self.args)])

    @classmethod
    def parse(cls, line: str) -> "Step":
        parts = line.split()
        rule, pos, rest = parts[0], int(parts[1]), parts[2:]
        if rule == "insert":
            rest = [rest[0], int(rest[1])]
        elif rule in ("conj", "unconj"):
            rest = [*rest[:3], int(rest[3])]
        return cls(rule, pos, tuple(rest))


@dataclass(frozen=True)
class Derivation:
    start: Word
    end: Word
    steps: tuple[Step, ...] = ()


def _inv(x: Letter) -> Letter:
    return (x[0], -x[1])


def _expand(w: Word | Iterable[Letter]) -> list[Letter]:
    return w.letters() if isinstance(w, Word) else list(w)


def apply_step(letters: list[Letter], step: Step, oracles: OracleSet | None) -> tuple[list[Letter], Oracle | None]:
    """Apply one step.  With ``oracles=None`` licenses are not checked."""
    p, a = step.pos, step.args
    w = list(letters)
    used = None

    def need(o, what):
        if oracles is not None and o is None:
            raise RewriteError(f"unlicensed {what}")
        return o

    if not 0 <= p <= len(w):
        raise RewriteError(f"position {p} outside word of length {len(w)}")
    if step.rule == "cancel":
        if p + 1 >= len(w) or w[p + 1] != _inv(w[p]):
            raise RewriteError(f"no inverse pair at {p}")
        del w[p:p + 2]
    elif step.rule == "insert":
        sym, e = a[0], int(a[1])
        if e not in (1, -1):
            raise RewriteError("insert exponent must be +-1")
        w[p:p] = [(sym, e), (sym, -e)]
    elif step.rule == "swap":
        if p + 1 >= len(w):
            raise RewriteError(f"no letter pair at {p}")
        u, v = w[p][0], w[p + 1][0]
        if u != v:
            used = need(oracles.commuting(u, v) if oracles is not None else None, f"swap of {u} and {v}")
        w[p], w[p + 1] = w[p + 1], w[p]
    elif step.rule in ("conj", "unconj"):
        f, c, c2, n = a[0], a[1], a[2], int(a[3])
        used = need(oracles.conjugating(f, c, c2) if oracles is not None else None,
                    f"conjugation {f} t_{c} {f}^-1 = t_{c2}")
        if n < 1:
            raise RewriteError("conjugation block must be nonempty")
        if step.rule == "conj":
            block = w[p:p + n]
            if len(block) != n or len({x for x in block}) != 1 or block[0][0] != c2:
                raise RewriteError(f"expected {n} equal letters {c2}^+-1 at {p}")
            s = block[0][1]
            w[p:p + n] = [(f, 1)] + [(c, s)] * n + [(f, -1)]
        else:
            block = w[p:p + n + 2]
            if len(block) != n + 2 or block[0] != (f, 1) or block[-1] != (f, -1) \
                    or len(set(block[1:-1])) != 1 or block[1][0] != c:
                raise RewriteError(f"expected {f} {c}^+-{n} {f}^-1 at {p}")
            w[p:p + n + 2] = [(c2, block[1][1])] * n
    elif step.rule == "subst":
        name, direction = a[0], a[1]
        o = oracles.relation(name) if oracles is not None else None
        used = need(o, f"use of relation {name}")
        rel = o.relation if o is not None else _REL_CACHE.get(name)
        if rel is None:
            raise RewriteError(f"unknown relation {name}")
        src, dst = (rel.lhs, rel.rhs) if direction == "lr" else (rel.rhs, rel.lhs)
        src, dst = src.letters(), dst.letters()
        if w[p:p + len(src)] != src:
            raise RewriteError(f"relation {name} ({direction}) does not match at {p}")
        w[p:p + len(src)] = dst
    else:
        raise RewriteError(f"unknown rule {step.rule!r}")
    return w, used


# relations known to replay() when licenses are not checked
_REL_CACHE: dict[str, RelationWord] = {}


def replay(d: Derivation) -> list[list[Letter]]:
    """All stages of ``d`` without checking licenses."""
    stages = [_expand(d.start)]
    for s in d.steps:
        stages.append(apply_step(stages[-1], s, None)[0])
    return stages


def check_derivation(d: Derivation, oracles: OracleSet) -> Verdict:
    w = _expand(d.start)
    used: dict[tuple, Oracle] = {}
    for i, step in enumerate(d.steps):
        try:
            w, o = apply_step(w, step, oracles)
        except RewriteError as exc:
            return Verdict(False, witness=f"step {i}", detail=f"{step}: {exc}", provenance="derivation")
        if o is not None:
            used[o.key] = o
    if w != d.end.letters():
        return Verdict(False, witness="end", detail=f"chain ends at {Word.from_letters(w)}, not {d.end}",
                       provenance="derivation")
    assumptions = tuple(sorted(str(o) for o in used.values() if o.provenance != PLANAR))
    prov = "derivation-with-axioms" if assumptions else "derivation"
    return Verdict(True, provenance=prov, assumptions=assumptions)


def oracles_used(d: Derivation, oracles: OracleSet) -> list[Oracle]:
    w = _expand(d.start)
    used: dict[tuple, Oracle] = {}
    for step in d.steps:
        w, o = apply_step(w, step, oracles)
        if o is not None:
            used.setdefault(o.key, o)
    return list(used.values())


class Builder:
    """Records steps while rewriting a letter list."""

    def __init__(self, start: Word | list[Letter], oracles: OracleSet):
        self.start = list(_expand(start))
        self.w = list(self.start)
        self.steps: list[Step] = []
        self.oracles = oracles

    def do(self, rule: str, pos: int, *args) -> None:
        step = Step(rule, pos, tuple(args))
        self.w, _ = apply_step(self.w, step, self.oracles)
        self.steps.append(step)

    def cancel_all(self, lo: int = 0, hi: int | None = None) -> None:
        """Free reduction of the letters in ``[lo, hi)``, leftmost pair first."""
        hi = len(self.w) if hi is None else hi
        i = lo
        while i + 1 < hi:
            if self.w[i + 1] == _inv(self.w[i]):
                self.do("cancel", i)
                hi -= 2
                i = max(lo, i - 1)
            else:
                i += 1

    def find(self, letters: list[Letter], start: int = 0) -> int:
        n = len(letters)
        for i in range(start, len(self.w) - n + 1):
            if self.w[i:i + n] == letters:
                return i
        raise RewriteError(f"pattern {Word.from_letters(letters)} not found")

    def derivation(self, end: Word | None = None) -> Derivation:
        return Derivation(Word.from_letters(self.start),
                          end if end is not None else Word.from_letters(self.w), tuple(self.steps))


def invert(d: Derivation) -> Derivation:
    """The same chain read backwards."""
    stages = replay(d)
    back = []
    for i in range(len(d.steps) - 1, -1, -1):
        s, before = d.steps[i], stages[i]
        if s.rule == "cancel":
            sym, e = before[s.pos]
            back.append(Step("insert", s.pos, (sym, e)))
        elif s.rule == "insert":
            back.append(Step("cancel", s.pos))
        elif s.rule == "swap":
            back.append(s)
        elif s.rule == "conj":
            back.append(replace(s, rule="unconj"))
        elif s.rule == "unconj":
            back.append(replace(s, rule="conj"))
        elif s.rule == "subst":
            back.append(replace(s, args=(s.args[0], "rl" if s.args[1] == "lr" else "lr")))
    return Derivation(d.end, d.start, tuple(back))


def concat(d1: Derivation, d2: Derivation) -> Derivation:
    if d1.end != d2.start:
        raise RewriteError("derivations do not chain")
    return Derivation(d1.start, d2.end, d1.steps + d2.steps)


# --- planar oracles -------------------------------------------------------

CENTRAL = (DELTA, "a1", "a2", "a3", "a4")


def planar_oracles(p: int = 5) -> OracleSet:
    """Commutations for every declared-disjoint catalog pair, plus the daisy
    relation, each verified exactly on the holed sphere."""
    model = holed_sphere(p)
    out = []
    names = list(model.curves)
    for i, u in enumerate(names):
        for v in names[i + 1:]:
            if model.disjoint(u, v):
                if not verify_relation(model, RelationWord(Word.parse(f"{u} {v}"), Word.parse(f"{v} {u}"))):
                    raise RewriteError(f"declared-disjoint {u}, {v} do not commute")
                out.append(commute(u, v, PLANAR))
    if p >= 4:
        r = daisy_relation(p - 1)
        if not verify_relation(model, r):
            raise RewriteError(f"{r.name} fails on the model")
        out.append(named(r))
        _REL_CACHE[r.name] = r
    return OracleSet.of(out)


def bracket_axioms() -> OracleSet:
    """phi sends x1, a2 to a1, x2 and psi sends x3, a4 to a3, x4."""
    return OracleSet.of([
        conjugate("phi", "x1", "a1"), conjugate("phi", "a2", "x2"),
        conjugate("psi", "x3", "a3"), conjugate("psi", "a4", "x4"),
    ])


def _move_left(b: Builder, is_mobile) -> None:
    """Stable partition by adjacent swaps: letters with ``is_mobile`` go left."""
    i = 1
    while i < len(b.w):
        if is_mobile(b.w[i]) and not is_mobile(b.w[i - 1]):
            b.do("swap", i - 1)
            i = max(1, i - 1)
        else:
            i += 1


def _sort_and_cancel(b: Builder, key) -> None:
    """Bubble-sort letters by ``key`` with swaps, freely reducing as we go."""
    changed = True
    while changed:
        changed = False
        b.cancel_all()
        for i in range(len(b.w) - 1):
            if key(b.w[i]) > key(b.w[i + 1]):
                b.do("swap", i)
                changed = True
                break


def derive_power_relation(k: int, oracles: OracleSet | None = None) -> Derivation:
    """From ``t_delta^2k`` to the right side of the power relation, via k uses
    of the four-petal daisy relation and commutations of central twists."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    oracles = planar_oracles(5) if oracles is None else oracles
    target = power_relation(k)
    daisy = daisy_relation(4)
    _REL_CACHE[daisy.name] = daisy
    b = Builder(target.rhs, oracles)
    central = lambda x: x[0] in CENTRAL  # noqa: E731
    _move_left(b, central)
    b.cancel_all()
    pattern = daisy.rhs.letters()
    while any(not central(x) for x in b.w):
        i = b.find(pattern)
        b.do("subst", i, daisy.name, "rl")
        _move_left(b, central)
    order = {s: n for n, s in enumerate(CENTRAL)}
    _sort_and_cancel(b, lambda x: order[x[0]])
    if b.w != target.lhs.letters():
        raise RewriteError(f"power derivation ended at {Word.from_letters(b.w)}")
    return invert(b.derivation(target.lhs))


@dataclass(frozen=True)
class Commutator:
    u: Word
    v: Word

    def expand(self) -> Word:
        return commutator(self.u, self.v)

    def conj(self, by: Word) -> "Commutator":
        return Commutator(self.u.conj(by), self.v.conj(by))

    def __str__(self) -> str:
        return f"[{self.u}, {self.v}]"


def _expand_conjugates(b: Builder, lo: int, hi: int, f: str) -> None:
    """Rewrite letters ``[lo, hi)`` as ``f (preimage) f^-1`` using conjugation oracles."""
    pre = b.oracles.conjugation_images(f)
    runs = []
    i = lo
    while i < hi:
        j = i
        while j < hi and b.w[j] == b.w[i]:
            j += 1
        runs.append((i, j - i))
        i = j
    for start, n in reversed(runs):
        c2 = b.w[start][0]
        if c2 not in pre:
            raise RewriteError(f"no conjugation oracle for {f} onto {c2}")
        b.do("conj", start, f, pre[c2], c2, n)
    # the f^-1 f seams between consecutive runs
    end = hi + 2 * len(runs)
    i = lo
    while i + 1 < end:
        if b.w[i] == (f, -1) and b.w[i + 1] == (f, 1):
            b.do("cancel", i)
            end -= 2
        else:
            i += 1


def _split_for_bracket(w: list[Letter], oracles: OracleSet) -> tuple[int, str]:
    fs = sorted({o.args[0] for o in oracles if o.kind == "conjugate"})
    for cut in range(1, len(w)):
        u, rest = w[:cut], w[cut:]
        u_inv = [_inv(x) for x in reversed(u)]
        if len(rest) != len(u_inv):
            continue
        for f in fs:
            image = {c: c2 for c2, c in oracles.conjugation_images(f).items()}
            if all(x[0] in image and (image[x[0]], x[1]) == y for x, y in zip(u_inv, rest)):
                return cut, f
    raise RewriteError(f"no bracket pattern u . f u^-1 f^-1 fits {Word.from_letters(w)}")


def insert_commutator(w: Word, oracles: OracleSet) -> tuple[Commutator, Derivation]:
    """Rewrite ``u . f(u)^-1`` as the single bracket ``[u, f]``."""
    letters = w.letters()
    cut, f = _split_for_bracket(letters, oracles)
    b = Builder(w, oracles)
    _expand_conjugates(b, cut, len(letters), f)
    br = Commutator(Word.from_letters(letters[:cut]), Word.gen(f))
    if b.w != br.expand().letters():
        raise RewriteError("bracket insertion did not reach the expanded commutator")
    return br, b.derivation(br.expand())


@dataclass(frozen=True)
class CommutatorFactorization:
    target: Word
    factors: tuple[Commutator, ...]
    derivation: Derivation
    verdict: Verdict

    @property
    def count(self) -> int:
        return len(self.factors)

    def expand(self) -> Word:
        out = Word()
        for c in self.factors:
            out = out * c.expand()
        return out


def power_brackets(k: int) -> list[Commutator]:
    x3 = Word.gen("x3")
    out = [Commutator(Word.parse("x1 a2^-1"), Word.gen("phi")).conj(x3 ** (i - 1)) for i in range(1, k + 1)]
    out.append(Commutator(Word((("x3", k), ("a4", -k))), Word.gen("psi")))
    return out


def default_oracles() -> OracleSet:
    return planar_oracles(5) | bracket_axioms()


def _bracket_steps(b: Builder, k: int) -> None:
    """On the power relation's right side, insert the k phi-brackets and the psi-bracket."""
    block = Word.parse("x2 a1^-1").letters()
    tail = Word((("x4", k), ("a3", -k))).letters()
    i = b.find(tail)
    _expand_conjugates(b, i, i + len(tail), "psi")
    pos = 0
    for _ in range(k):
        pos = b.find(block, pos)
        _expand_conjugates(b, pos, pos + len(block), "phi")
        pos += 1


def commutatorize_even_power(k: int, oracles: OracleSet | None = None) -> CommutatorFactorization:
    """``t_delta^2k`` as k+1 commutators, certified from the power relation and
    the phi/psi conjugation axioms."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    oracles = default_oracles() if oracles is None else oracles
    d1 = derive_power_relation(k, oracles)
    factors = tuple(power_brackets(k))
    expanded = Word()
    for c in factors:
        expanded = expanded * c.expand()
    b = Builder(d1.end, oracles)
    _bracket_steps(b, k)
    d = concat(d1, b.derivation(expanded))
    return CommutatorFactorization(Word.gen(DELTA, 2 * k), factors, d, check_derivation(d, oracles))


# --- capping --------------------------------------------------------------

XM_CAP = {DELTA: "", "x1": "a1", "x2": "a2", "x3": "a3", "x4": "a1", "a1": "a1", "a2": "a2",
          "a3": "a3", "a4": "a1", "phi": "", "psi": "", "b": "b"}
# genus 2: after capping, a3 and a2 cobound a disk with delta_0 removed
YM_CAP = {**{k: v for k, v in XM_CAP.items() if k != "b"}, "x3": "a2", "a3": "a2", "b1": "b1"}


def cap_boundary(w: Word, rules: Mapping[str, str | Word]) -> Word:
    out = Word()
    for sym, exp in w.syllables:
        if sym not in rules:
            raise RewriteError(f"no capping rule for {sym}")
        img = rules[sym]
        img = Word.parse(img) if isinstance(img, str) else img
        out = out * img ** exp
    return out


def cap_commutator(c: Commutator, rules) -> Commutator:
    return Commutator(cap_boundary(c.u, rules), cap_boundary(c.v, rules))


def closed_oracles(disjoint_pairs: Iterable[tuple[str, str]]) -> OracleSet:
    return OracleSet.of(commute(u, v, DECLARED) for u, v in disjoint_pairs)


def lifted_xm_brackets(k: int, m: int) -> list[Commutator]:
    """Brackets of ``t_delta^2k`` after absorbing ``t_b^m t_b^-m`` into the psi-bracket."""
    out = power_brackets(k)
    last = out[-1]
    out[-1] = Commutator(last.u, last.v * Word.gen("b", m))
    return out


def lifted_ym_brackets(k: int, m: int) -> list[Commutator]:
    return power_brackets(k) + [Commutator(Word.gen("b1", m), Word())]


def b_axioms() -> OracleSet:
    """b is disjoint from the a_i, x_i and from the support of psi."""
    return OracleSet.of([commute("b", s) for s in ("psi", "x3", "a4")])


def derive_lifted_xm(k: int, m: int, oracles: OracleSet | None = None) -> tuple[Derivation, Verdict]:
    """Extend the commutator factorization by ``[u, psi] = [u, psi t_b^m]``."""
    oracles = (default_oracles() | b_axioms()) if oracles is None else oracles
    cf = commutatorize_even_power(k, oracles)
    target = Word()
    for c in lifted_xm_brackets(k, m):
        target = target * c.expand()
    b = Builder(cf.derivation.end, oracles)
    # ... x3^k a4^-k psi | a4^k x3^-k psi^-1
    psi = max(i for i, x in enumerate(b.w) if x == ("psi", 1)) + 1
    for j in range(m):
        b.do("insert", psi + j, "b", 1)
    # move the m letters b^-1 right past a4^k x3^-k
    for j in range(m):
        start = psi + 2 * m - 1 - j
        for s in range(2 * k):
            b.do("swap", start + s)
    d = concat(cf.derivation, b.derivation(target))
    return d, check_derivation(d, oracles)


def derive_lifted_ym(k: int, m: int, oracles: OracleSet | None = None) -> tuple[Derivation, Verdict]:
    """Append the bracket ``[t_b1^m, 1]``; it expands to the empty word, so
    the chain is the commutator factorization itself."""
    oracles = default_oracles() if oracles is None else oracles
    cf = commutatorize_even_power(k, oracles)
    target = Word()
    for c in lifted_ym_brackets(k, m):
        target = target * c.expand()
    if target != cf.derivation.end:
        raise RewriteError("lifted bracket list does not expand to the factorization")
    return cf.derivation, check_derivation(cf.derivation, oracles)


def derive_trivial(w: Word, oracles: OracleSet) -> Derivation:
    """From the empty word to ``w`` by free insertions and licensed swaps.

    Works when ``w`` becomes trivial after sorting letters that commute."""
    b = Builder(w, oracles)
    b.cancel_all()
    progress = True
    while b.w and progress:
        progress = False
        # bring the first letter next to an inverse to its right, if licensed
        for i, x in enumerate(b.w):
            j = next((j for j in range(i + 1, len(b.w)) if b.w[j] == _inv(x)), None)
            if j is None:
                continue
            if all(y[0] == x[0] or oracles.commuting(x[0], y[0]) for y in b.w[i + 1:j]):
                for s in range(i, j - 1):
                    b.do("swap", s)
                b.do("cancel", j - 1)
                progress = True
                break
    if b.w:
        raise RewriteError(f"could not trivialize {w}: stuck at {Word.from_letters(b.w)}")
    return invert(b.derivation(Word()))


# --- script files ---------------------------------------------------------

def format_script(d: Derivation, oracles: Iterable[Oracle] = (), title: str = "") -> str:
    lines = [f"# {title}"] if title else []
    for o in oracles:
        if o.kind == "commute":
            lines.append(f"oracle commute {o.args[0]} {o.args[1]} [{o.provenance}]")
        elif o.kind == "conjugate":
            lines.append(f"oracle conjugate {' '.join(o.args)} [{o.provenance}]")
        else:
            lines.append(f"relation {o.relation.name} : {o.relation.lhs} = {o.relation.rhs} [{o.provenance}]")
    lines.append(f"start {d.start}")
    lines += [f"step {s}" for s in d.steps]
    lines.append(f"end {d.end}")
    return "\n".join(lines) + "\n"


def _holds_on_sphere(r: RelationWord) -> bool:
    """Verify ``r`` on the smallest holed sphere whose catalog has its symbols."""
    idx = [int(s[1:]) for s in (r.lhs * r.rhs).symbols() if s[0] in "ax" and s[1:].isdigit()]
    p = max([3, *idx]) + 1
    try:
        return bool(verify_relation(holed_sphere(p), r))
    except KeyError:
        return False


def parse_script(text: str) -> tuple[Derivation, OracleSet]:
    """Inverse of :func:`format_script`.

    Relations marked planar-verified are re-verified on the holed sphere
    before they are trusted.
    """
    start = end = None
    steps, oracles = [], []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        prov = AXIOM
        if line.endswith("]") and "[" in line:
            line, prov = line[:line.rindex("[")].strip(), line[line.rindex("[") + 1:-1]
        tag, _, rest = line.partition(" ")
        if tag == "start":
            start = Word.parse(rest)
        elif tag == "end":
            end = Word.parse(rest)
        elif tag == "step":
            steps.append(Step.parse(rest))
        elif tag == "oracle":
            kind, *args = rest.split()
            oracles.append(Oracle(kind, tuple(args), provenance=prov))
        elif tag == "relation":
            name, _, eq = rest.partition(":")
            lhs, _, rhs = eq.partition("=")
            r = RelationWord(Word.parse(lhs), Word.parse(rhs), name.strip())
            if prov == PLANAR and not _holds_on_sphere(r):
                raise RewriteError(f"relation {r.name} does not hold on the holed sphere")
            _REL_CACHE[r.name] = r
            oracles.append(named(r, prov))
        else:
            raise RewriteError(f"unknown script line {raw!r}")
    if start is None or end is None:
        raise RewriteError("script needs start and end lines")
    return Derivation(start, end, tuple(steps)), OracleSet.of(oracles)
