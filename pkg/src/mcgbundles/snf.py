"""Smith normal form over the integers and cokernels of integer matrices.

Matrices are tuples of row tuples of Python ints, so entries never overflow.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

IntMatrix = tuple[tuple[int, ...], ...]


def as_matrix(rows: Sequence[Sequence[int]]) -> IntMatrix:
    return tuple(tuple(int(x) for x in r) for r in rows)


def identity(n: int) -> IntMatrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def shape(A: IntMatrix, cols: int | None = None) -> tuple[int, int]:
    if not A:
        return 0, cols or 0
    return len(A), len(A[0])


def matmul(A: IntMatrix, B: IntMatrix) -> IntMatrix:
    cols = list(zip(*B))
    return tuple(tuple(sum(a * b for a, b in zip(row, col)) for col in cols) for row in A)


def det(A: IntMatrix) -> int:
    """Fraction-free (Bareiss) determinant."""
    n = len(A)
    if n == 0:
        return 1
    M = [list(r) for r in A]
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k]:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


@dataclass(frozen=True)
class SNFResult:
    U: IntMatrix
    D: IntMatrix
    V: IntMatrix

    @property
    def diagonal(self) -> tuple[int, ...]:
        return tuple(self.D[i][i] for i in range(min(len(self.D), len(self.D[0]) if self.D else 0)))


def smith_normal_form(A: Sequence[Sequence[int]], cols: int | None = None) -> SNFResult:
    """Return ``U, D, V`` with ``U A V = D``.

    Pivot rule: the smallest nonzero absolute value in the untreated block,
    ties broken by row-major position.  ``cols`` gives the width of a matrix
    with no rows.
    """
    D = [list(map(int, r)) for r in A]
    m = len(D)
    n = len(D[0]) if m else (cols or 0)
    U = [list(r) for r in identity(m)]
    V = [list(r) for r in identity(n)]

    def row_add(i, k, q):  # row_i += q row_k
        D[i] = [a + q * b for a, b in zip(D[i], D[k])]
        U[i] = [a + q * b for a, b in zip(U[i], U[k])]

    def col_add(j, k, q):  # col_j += q col_k
        for r in D:
            r[j] += q * r[k]
        for r in V:
            r[j] += q * r[k]

    def swap_rows(i, k):
        D[i], D[k] = D[k], D[i]
        U[i], U[k] = U[k], U[i]

    def swap_cols(j, k):
        for r in D:
            r[j], r[k] = r[k], r[j]
        for r in V:
            r[j], r[k] = r[k], r[j]

    for t in range(min(m, n)):
        while True:
            best = None
            for i in range(t, m):
                for j in range(t, n):
                    if D[i][j] and (best is None or abs(D[i][j]) < abs(D[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                break
            swap_rows(t, best[0])
            swap_cols(t, best[1])
            p = D[t][t]
            clean = True
            for i in range(t + 1, m):
                if D[i][t]:
                    row_add(i, t, -(D[i][t] // p))
                    clean &= D[i][t] == 0
            for j in range(t + 1, n):
                if D[t][j]:
                    col_add(j, t, -(D[t][j] // p))
                    clean &= D[t][j] == 0
            if not clean:
                continue
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if D[i][j] % p), None)
            if bad is None:
                break
            row_add(t, bad[0], 1)
        if D[t][t] < 0:
            D[t] = [-x for x in D[t]]
            U[t] = [-x for x in U[t]]
        if D[t][t] == 0:
            break
    return SNFResult(as_matrix(U), as_matrix(D), as_matrix(V))


@dataclass(frozen=True)
class AbelianGroup:
    """``Z^rank + Z/d1 + Z/d2 + ...`` with ``d1 | d2 | ...`` and each ``d >= 2``."""

    rank: int
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        if self.rank < 0 or any(d < 2 for d in self.torsion) or \
                any(b % a for a, b in zip(self.torsion, self.torsion[1:])):
            raise ValueError(f"not in canonical form: rank={self.rank} torsion={self.torsion}")

    @classmethod
    def from_divisors(cls, rank: int, divisors: Sequence[int]) -> "AbelianGroup":
        """Canonical form of ``Z^rank + sum Z/d``; ``d = 0`` counts as a free ``Z``."""
        divisors = [abs(d) for d in divisors]
        diag = [[divisors[i] if i == j else 0 for j in range(len(divisors))] for i in range(len(divisors))]
        ds = smith_normal_form(diag).diagonal if divisors else ()
        return cls(rank + sum(1 for d in ds if d == 0), tuple(d for d in ds if d > 1))

    def __add__(self, other: "AbelianGroup") -> "AbelianGroup":
        return AbelianGroup.from_divisors(self.rank + other.rank, self.torsion + other.torsion)

    def __str__(self) -> str:
        parts = []
        if self.rank:
            parts.append("Z" if self.rank == 1 else f"Z^{self.rank}")
        parts += [f"Z/{d}" for d in self.torsion]
        return " + ".join(parts) or "0"

    @classmethod
    def parse(cls, text: str) -> "AbelianGroup":
        rank, divs = 0, []
        for part in text.replace(" ", "").split("+"):
            if part in ("", "0"):
                continue
            if part.startswith("Z/"):
                divs.append(int(part[2:]))
            elif part == "Z":
                rank += 1
            elif part.startswith("Z^"):
                rank += int(part[2:])
            else:
                raise ValueError(f"cannot parse group {text!r}")
        return cls.from_divisors(rank, divs)


def cokernel(A: Sequence[Sequence[int]], rows: int | None = None) -> AbelianGroup:
    """``Z^rows / (column span of A)``.  ``rows`` is needed when ``A`` has no columns."""
    m = len(A) if rows is None else rows
    if not A or not A[0]:
        return AbelianGroup(m)
    ds = [d for d in smith_normal_form(A).diagonal if d]
    return AbelianGroup(m - len(ds), tuple(d for d in ds if d > 1))
