"""Exact rational scalars, vectors and matrices.

Scalars are :class:`fractions.Fraction` (always canonical: positive
denominator, reduced).  Vectors are tuples of fractions and matrices are
tuples of such rows, so every value is immutable and hashable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Tuple, Union

from .errors import DimensionMismatch, SchemaError

Rat = Fraction
Vec = Tuple[Fraction, ...]
Mat = Tuple[Vec, ...]
RatLike = Union[int, str, Fraction]


def to_rat(value: RatLike) -> Fraction:
    """Coerce an int, a ``"p/q"`` string or a Fraction to a canonical Fraction.

    Floats are refused: there is no floating-point mode.
    """
    if isinstance(value, bool):
        raise SchemaError(f"not a rational: {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        try:
            if "/" in text:
                num, den = text.split("/")
                return Fraction(int(num), int(den))
            return Fraction(int(text))
        except (ValueError, ZeroDivisionError):
            raise SchemaError(f"not a rational: {value!r}") from None
    raise SchemaError(f"not a rational: {value!r}")


def format_rat(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def vec(values: Iterable[RatLike]) -> Vec:
    return tuple(to_rat(v) for v in values)


def mat(rows: Iterable[Iterable[RatLike]], n_cols: int | None = None) -> Mat:
    out = tuple(vec(r) for r in rows)
    widths = {len(r) for r in out}
    if n_cols is not None:
        widths.add(n_cols)
    if len(widths) > 1:
        raise DimensionMismatch(f"rows of unequal length: {sorted(widths)}")
    return out


def parse_vec(text: str) -> Vec:
    """Parse a comma separated vector such as ``"1/2,-3"``.  Empty text is R^0."""
    text = text.strip()
    if not text:
        return ()
    return vec(part for part in text.split(","))


def format_vec(v: Sequence[Fraction]) -> list[str]:
    return [format_rat(x) for x in v]


def _check_dims(a: Sequence, b: Sequence) -> None:
    if len(a) != len(b):
        raise DimensionMismatch(f"dimension mismatch: {len(a)} vs {len(b)}")


def dot(a: Sequence[Fraction], b: Sequence[Fraction]) -> Fraction:
    _check_dims(a, b)
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


def add(a: Sequence[Fraction], b: Sequence[Fraction]) -> Vec:
    _check_dims(a, b)
    return tuple(x + y for x, y in zip(a, b))


def sub(a: Sequence[Fraction], b: Sequence[Fraction]) -> Vec:
    _check_dims(a, b)
    return tuple(x - y for x, y in zip(a, b))


def scale(c: RatLike, a: Sequence[Fraction]) -> Vec:
    c = to_rat(c)
    return tuple(c * x for x in a)


def zeros(n: int) -> Vec:
    return (Fraction(0),) * n


def unit(n: int, i: int) -> Vec:
    return tuple(Fraction(1 if j == i else 0) for j in range(n))


def mat_vec(m: Sequence[Sequence[Fraction]], v: Sequence[Fraction]) -> Vec:
    return tuple(dot(row, v) for row in m)


def is_zero(v: Iterable) -> bool:
    return all(x == 0 for x in v)


# -- integer helpers used by the polyhedral kernel ---------------------------

def primitive(v: Sequence[int]) -> tuple[int, ...]:
    """Divide an integer vector by the gcd of its entries (sign kept)."""
    g = 0
    for x in v:
        g = math.gcd(g, x)
    if g <= 1:
        return tuple(v)
    return tuple(x // g for x in v)


def to_primitive_int(v: Sequence[Fraction]) -> tuple[int, ...]:
    """Smallest integer vector that is a positive multiple of ``v``."""
    lcm = 1
    for x in v:
        lcm = lcm * x.denominator // math.gcd(lcm, x.denominator)
    return primitive([int(x * lcm) for x in v])


def int_rank(rows: Sequence[Sequence[int]]) -> int:
    """Rank of an integer matrix via fraction-free (Bareiss) elimination."""
    m = [list(r) for r in rows if any(r)]
    if not m:
        return 0
    n_cols = len(m[0])
    rank = 0
    prev = 1
    for col in range(n_cols):
        piv = next((i for i in range(rank, len(m)) if m[i][col] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        p = m[rank][col]
        for i in range(rank + 1, len(m)):
            f = m[i][col]
            row_i = m[i]
            row_r = m[rank]
            for j in range(col, n_cols):
                row_i[j] = (p * row_i[j] - f * row_r[j]) // prev
        prev = p
        rank += 1
        if rank == len(m):
            break
    return rank


# -- linear systems -----------------------------------------------------------

def rref(rows: Sequence[Sequence[Fraction]], n_cols: int) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    m = [list(r) for r in rows]
    pivots: list[int] = []
    r = 0
    for col in range(n_cols):
        piv = next((i for i in range(r, len(m)) if m[i][col] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        p = m[r][col]
        m[r] = [x / p for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][col] != 0:
                f = m[i][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(col)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def null_space(rows: Sequence[Sequence[Fraction]], n_cols: int) -> list[Vec]:
    """Basis of {v : rows . v = 0}, one vector per free column."""
    red, pivots = rref(rows, n_cols)
    free = [c for c in range(n_cols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * n_cols
        v[fc] = Fraction(1)
        for row, pc in zip(red, pivots):
            v[pc] = -row[fc]
        basis.append(tuple(v))
    return basis


@dataclass(frozen=True)
class LinearSolution:
    """Solution set of ``A x = b``: ``particular + span(null_basis)``.

    ``particular`` is None when the system is inconsistent.
    """

    particular: Vec | None
    null_basis: tuple[Vec, ...]

    @property
    def consistent(self) -> bool:
        return self.particular is not None


def solve_linear(a: Sequence[Sequence[RatLike]], b: Sequence[RatLike], n_cols: int | None = None) -> LinearSolution:
    """Solve ``A x = b`` exactly by Gauss-Jordan elimination over the rationals.

    ``n_cols`` is only needed when ``A`` has no rows.
    """
    a = mat(a)
    b = vec(b)
    if len(a) != len(b):
        raise DimensionMismatch(f"{len(a)} rows but rhs of length {len(b)}")
    if n_cols is None:
        if not a:
            raise DimensionMismatch("n_cols is required for an empty system")
        n_cols = len(a[0])
    elif a and len(a[0]) != n_cols:
        raise DimensionMismatch(f"expected {n_cols} columns, got {len(a[0])}")
    aug = [list(row) + [rhs] for row, rhs in zip(a, b)]
    red, pivots = rref(aug, n_cols + 1)
    if n_cols in pivots:
        return LinearSolution(None, ())
    x = [Fraction(0)] * n_cols
    for row, pc in zip(red, pivots):
        x[pc] = row[n_cols]
    basis = null_space(a, n_cols)
    return LinearSolution(tuple(x), tuple(basis))
