"""Dense matrices over :class:`CycloScalar`, as lists of rows."""
from __future__ import annotations

from .cyclo import CycloScalar

Matrix = list  # list[list[CycloScalar]]


def identity(n: int) -> Matrix:
    return [[CycloScalar.one() if i == j else CycloScalar.zero() for j in range(n)] for i in range(n)]


def matmul(a: Matrix, b: Matrix) -> Matrix:
    if len(a[0]) != len(b):
        raise ValueError("shape mismatch")
    cols = list(zip(*b))
    out = []
    for row in a:
        out_row = []
        for col in cols:
            acc = CycloScalar.zero()
            for x, y in zip(row, col):
                if x.terms and y.terms:
                    acc = acc + x * y
            out_row.append(acc)
        out.append(out_row)
    return out


def matvec(a: Matrix, v: list) -> list:
    return [row[0] for row in matmul(a, [[x] for x in v])]


def adjoint(a: Matrix) -> Matrix:
    return [[x.conj() for x in col] for col in zip(*a)]


def is_identity(m: Matrix) -> bool:
    n = len(m)
    return all(len(row) == n for row in m) and all(
        (m[i][j] == 1) if i == j else m[i][j].is_zero() for i in range(n) for j in range(n)
    )


def is_zero_matrix(m: Matrix) -> bool:
    return all(x.is_zero() for row in m for x in row)


def is_unitary(m: Matrix) -> bool:
    """D D* = Id, exactly."""
    return is_identity(matmul(m, adjoint(m)))


def to_complex(m: Matrix) -> list[list[complex]]:
    return [[x.to_complex() for x in row] for row in m]
