"""Action of twist words on the first homology of a closed surface.

Basis ``u1, v1, ..., ug, vg`` with ``<u_i, v_i> = 1``.  A twist acts by the
transvection ``x -> x + n <x, c> c``; words act rightmost-first on column
vectors, matching the groupoid evaluation order.
"""
from __future__ import annotations

from typing import Mapping, Sequence

from .snf import IntMatrix, as_matrix, identity, matmul
from .words import RelationWord, Verdict, Word

ABSTRACT_SYMBOLS = frozenset({"phi", "psi", "1"})


class HomologyError(ValueError):
    pass


def basis_labels(g: int) -> list[str]:
    return [f"{c}{i}" for i in range(1, g + 1) for c in "uv"]


def form_matrix(g: int) -> IntMatrix:
    J = [[0] * (2 * g) for _ in range(2 * g)]
    for i in range(g):
        J[2 * i][2 * i + 1] = 1
        J[2 * i + 1][2 * i] = -1
    return as_matrix(J)


def pairing(x: Sequence[int], y: Sequence[int]) -> int:
    if len(x) != len(y) or len(x) % 2:
        raise HomologyError("classes must share an even dimension")
    return sum(x[2 * i] * y[2 * i + 1] - x[2 * i + 1] * y[2 * i] for i in range(len(x) // 2))


def basis_vector(label: str, g: int) -> tuple[int, ...]:
    i = basis_labels(g).index(label)
    return tuple(int(j == i) for j in range(2 * g))


def transvection(c: Sequence[int], n: int = 1) -> IntMatrix:
    dim = len(c)
    if dim % 2:
        raise HomologyError(f"class of odd length {dim}")
    cols = []
    for j in range(dim):
        x = [int(i == j) for i in range(dim)]
        k = n * pairing(x, c)
        cols.append([xi + k * ci for xi, ci in zip(x, c)])
    return as_matrix(zip(*cols))


def word_to_matrix(w: Word, classes: Mapping[str, Sequence[int]], dim: int | None = None,
                   capped: bool = False) -> IntMatrix:
    """Matrix of ``w``.  Abstract symbols (phi, psi) are only allowed in capped words."""
    if dim is None:
        dim = len(next(iter(classes.values())))
    M = identity(dim)
    for sym, exp in w.syllables:
        if sym in ABSTRACT_SYMBOLS:
            if not capped:
                raise HomologyError(f"abstract symbol {sym} has no homology action in an uncapped word")
            continue
        if sym not in classes:
            raise HomologyError(f"no homology class assigned to {sym}")
        c = classes[sym]
        if len(c) != dim:
            raise HomologyError(f"class of {sym} has length {len(c)}, expected {dim}")
        M = matmul(M, transvection(c, exp))
    return M


def check_identity_homology(r: RelationWord, classes: Mapping[str, Sequence[int]],
                            capped: bool = False) -> Verdict:
    left = word_to_matrix(r.lhs, classes, capped=capped)
    right = word_to_matrix(r.rhs, classes, capped=capped)
    if left == right:
        return Verdict(True, provenance="homology-only")
    col = next(j for j in range(len(left)) if [row[j] for row in left] != [row[j] for row in right])
    g = len(left) // 2
    return Verdict(False, witness=basis_labels(g)[col], provenance="homology-only",
                   detail="matrices differ on this basis vector")


def symplectic_check(M: IntMatrix) -> bool:
    n = len(M)
    if n % 2 or any(len(r) != n for r in M):
        raise HomologyError("symplectic check needs a square matrix of even size")
    J = form_matrix(n // 2)
    Mt = as_matrix(zip(*M))
    return matmul(matmul(Mt, J), M) == J


def apply(M: IntMatrix, x: Sequence[int]) -> tuple[int, ...]:
    return tuple(sum(a * b for a, b in zip(row, x)) for row in M)
