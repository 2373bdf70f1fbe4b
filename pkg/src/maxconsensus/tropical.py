"""Max-plus arithmetic and tropical adjacency matrices.

Scalars live in R u {-inf} with ``a (+) b = max(a, b)`` and
``a (x) b = a + b``.  Matrices are restricted to the two-element
sub-semiring {0, -inf} with a zero diagonal, which makes them
isomorphic to boolean matrices under (OR, AND).  We exploit that and
store every row as an integer bitmask: bit ``j`` of row ``i`` is set
exactly when entry ``(i, j)`` is 0.
"""

from __future__ import annotations

import math
import numbers
from fractions import Fraction
from typing import Iterable, Iterator, Sequence, Union

from .errors import DimensionError, ParseError

__all__ = [
    "NEG_INF",
    "NegInfinity",
    "ExtendedReal",
    "TropicalAdjMatrix",
    "t_add",
    "t_mul",
    "t_sum",
    "mat_add",
    "mat_mul",
    "mat_vec",
    "mat_pow",
    "mat_pow_squaring",
    "mat_product",
    "powers",
    "is_all_zero",
    "to_boolean",
    "from_boolean",
    "parse_matrix",
    "format_matrix",
    "format_boolean",
    "parse_scalar",
    "format_scalar",
]


class NegInfinity:
    """The tropical zero element.  Use the :data:`NEG_INF` singleton."""

    _instance = None
    __slots__ = ()

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "NEG_INF"

    def __str__(self):
        return "-inf"

    def __reduce__(self):
        return (NegInfinity, ())

    def __hash__(self):
        return hash("tropical-neg-inf")

    def __eq__(self, other):
        return other is self

    def __lt__(self, other):
        if other is self:
            return False
        if isinstance(other, numbers.Real):
            return True
        return NotImplemented

    def __le__(self, other):
        if other is self or isinstance(other, numbers.Real):
            return True
        return NotImplemented

    def __gt__(self, other):
        if other is self or isinstance(other, numbers.Real):
            return False
        return NotImplemented

    def __ge__(self, other):
        if other is self:
            return True
        if isinstance(other, numbers.Real):
            return False
        return NotImplemented


NEG_INF = NegInfinity()

ExtendedReal = Union[int, Fraction, float, NegInfinity]


def _check_scalar(a) -> None:
    if a is NEG_INF or type(a) is int:
        return
    if isinstance(a, bool) or not isinstance(a, numbers.Real):
        raise TypeError(f"not an extended real: {a!r}")
    if isinstance(a, float) and not math.isfinite(a):
        raise ValueError(f"use NEG_INF for -inf, got float {a!r}")


def t_add(a: ExtendedReal, b: ExtendedReal) -> ExtendedReal:
    """Tropical sum, i.e. ``max(a, b)``."""
    _check_scalar(a)
    _check_scalar(b)
    if a is NEG_INF:
        return b
    if b is NEG_INF:
        return a
    return a if a >= b else b


def t_mul(a: ExtendedReal, b: ExtendedReal) -> ExtendedReal:
    """Tropical product, i.e. ``a + b`` with -inf absorbing.

    Raises OverflowError if a float sum leaves the finite range; integer
    and Fraction arithmetic is exact and unbounded.
    """
    _check_scalar(a)
    _check_scalar(b)
    if a is NEG_INF or b is NEG_INF:
        return NEG_INF
    s = a + b
    if isinstance(s, float) and not math.isfinite(s):
        raise OverflowError(f"tropical product {a!r} (x) {b!r} overflows")
    return s


def t_sum(values: Iterable[ExtendedReal]) -> ExtendedReal:
    acc: ExtendedReal = NEG_INF
    for v in values:
        acc = t_add(acc, v)
    return acc


def parse_scalar(token: str) -> ExtendedReal:
    """Parse ``-inf`` or an exact finite number (int, else Fraction)."""
    t = token.strip()
    if t.lower() in ("-inf", "-infinity", "-∞"):
        return NEG_INF
    try:
        return int(t)
    except ValueError:
        pass
    try:
        value = Fraction(t)
    except (ValueError, ZeroDivisionError):
        raise ValueError(f"not a number: {token!r}") from None
    return value.numerator if value.denominator == 1 else value


def format_scalar(a: ExtendedReal) -> str:
    if a is NEG_INF:
        return "-inf"
    if isinstance(a, Fraction) and a.denominator == 1:
        return str(a.numerator)
    return str(a)


class TropicalAdjMatrix:
    """An immutable ``n x n`` matrix over {0, -inf} with a zero diagonal.

    Node indices in the public API are 1-based, matching the node labels
    of :class:`maxconsensus.graph.Digraph`.
    """

    __slots__ = ("_n", "_rows")

    def __init__(self, n: int, rows: Sequence[int]):
        if not isinstance(n, int) or n < 1:
            raise ValueError(f"dimension must be a positive integer, got {n!r}")
        if len(rows) != n:
            raise DimensionError(f"expected {n} rows, got {len(rows)}")
        full = (1 << n) - 1
        fixed = []
        for i, r in enumerate(rows):
            if r & ~full:
                raise ValueError(f"row {i + 1} has bits outside the {n} columns")
            # the diagonal is 0 by construction: every node hears itself
            fixed.append(r | (1 << i))
        object.__setattr__(self, "_n", n)
        object.__setattr__(self, "_rows", tuple(fixed))

    def __setattr__(self, name, value):
        raise AttributeError("TropicalAdjMatrix is immutable")

    @property
    def n(self) -> int:
        return self._n

    @property
    def rows(self) -> tuple[int, ...]:
        """Row bitmasks; bit ``j`` (0-based) of ``rows[i]`` means entry 0."""
        return self._rows

    @classmethod
    def identity(cls, n: int) -> "TropicalAdjMatrix":
        return cls(n, [1 << i for i in range(n)])

    @classmethod
    def zero(cls, n: int) -> "TropicalAdjMatrix":
        """The all-zero-entry matrix (complete graph)."""
        full = (1 << n) - 1
        return cls(n, [full] * n)

    @classmethod
    def from_entries(cls, entries: Sequence[Sequence[ExtendedReal]]) -> "TropicalAdjMatrix":
        n = len(entries)
        rows = []
        for i, row in enumerate(entries):
            if len(row) != n:
                raise DimensionError(f"row {i + 1} has {len(row)} entries, expected {n}")
            bits = 0
            for j, v in enumerate(row):
                if v is NEG_INF:
                    if i == j:
                        raise ValueError(f"diagonal entry ({i + 1},{i + 1}) must be 0")
                    continue
                if isinstance(v, bool) or v != 0:
                    raise ValueError(f"entry ({i + 1},{j + 1}) is {v!r}; only 0 and -inf allowed")
                bits |= 1 << j
            rows.append(bits)
        return cls(n, rows)

    def entry(self, i: int, j: int) -> ExtendedReal:
        if not (1 <= i <= self._n and 1 <= j <= self._n):
            raise IndexError(f"entry ({i},{j}) out of range for n={self._n}")
        return 0 if self._rows[i - 1] >> (j - 1) & 1 else NEG_INF

    def entries(self) -> list[list[ExtendedReal]]:
        n = self._n
        return [[0 if r >> j & 1 else NEG_INF for j in range(n)] for r in self._rows]

    def column(self, j: int) -> int:
        """Bitmask over rows ``i`` with entry ``(i, j) == 0``."""
        bit = 1 << (j - 1)
        col = 0
        for i, r in enumerate(self._rows):
            if r & bit:
                col |= 1 << i
        return col

    def permuted(self, order: Sequence[int]) -> "TropicalAdjMatrix":
        """Relabel nodes: new node ``r`` is old node ``order[r]`` (1-based)."""
        if sorted(order) != list(range(1, self._n + 1)):
            raise ValueError("order must be a permutation of 1..n")
        rows = []
        for old_i in order:
            r = self._rows[old_i - 1]
            bits = 0
            for new_j, old_j in enumerate(order):
                if r >> (old_j - 1) & 1:
                    bits |= 1 << new_j
            rows.append(bits)
        return TropicalAdjMatrix(self._n, rows)

    def __eq__(self, other):
        if not isinstance(other, TropicalAdjMatrix):
            return NotImplemented
        return self._n == other._n and self._rows == other._rows

    def __hash__(self):
        return hash((self._n, self._rows))

    def __matmul__(self, other):
        if isinstance(other, TropicalAdjMatrix):
            return mat_mul(self, other)
        return mat_vec(self, other)

    def __repr__(self):
        return f"TropicalAdjMatrix(n={self._n}, rows={list(self._rows)!r})"

    def __str__(self):
        return format_matrix(self).rstrip("\n")


def _same_dim(A: TropicalAdjMatrix, B: TropicalAdjMatrix) -> None:
    if A.n != B.n:
        raise DimensionError(f"dimension mismatch: {A.n} vs {B.n}")


def mat_add(A: TropicalAdjMatrix, B: TropicalAdjMatrix) -> TropicalAdjMatrix:
    """Entrywise max; the dependency graphs' edge sets are united."""
    _same_dim(A, B)
    return TropicalAdjMatrix(A.n, [a | b for a, b in zip(A.rows, B.rows)])


def mat_mul(A: TropicalAdjMatrix, B: TropicalAdjMatrix) -> TropicalAdjMatrix:
    """Tropical product ``C[i,j] = max_l (A[i,l] + B[l,j])``.

    On bit rows this is ``C[i] = OR{ B[l] : bit l of A[i] }``.  Note the
    order: applying ``C`` to a state is applying ``B`` first, then ``A``.
    """
    _same_dim(A, B)
    brows = B.rows
    out = []
    for r in A.rows:
        acc = 0
        while r:
            low = r & -r
            acc |= brows[low.bit_length() - 1]
            r ^= low
        out.append(acc)
    return TropicalAdjMatrix(A.n, out)


def mat_product(matrices: Sequence[TropicalAdjMatrix]) -> TropicalAdjMatrix:
    """``M[0] (x) M[1] (x) ... (x) M[-1]`` in the written order."""
    if not matrices:
        raise ValueError("empty product has no dimension")
    acc = matrices[0]
    for M in matrices[1:]:
        acc = mat_mul(acc, M)
    return acc


def _as_vector(x: Sequence[ExtendedReal]) -> tuple[ExtendedReal, ...]:
    vec = tuple(x)
    for v in vec:
        _check_scalar(v)
    return vec


def mat_vec(A: TropicalAdjMatrix, x: Sequence[ExtendedReal]) -> tuple[ExtendedReal, ...]:
    """``y[i] = max_j (A[i,j] + x[j])``: one synchronous max-consensus round."""
    vec = _as_vector(x)
    if len(vec) != A.n:
        raise DimensionError(f"vector of length {len(vec)} for {A.n}x{A.n} matrix")
    out = []
    for r in A.rows:
        best: ExtendedReal = NEG_INF
        while r:
            low = r & -r
            best = t_add(best, vec[low.bit_length() - 1])
            r ^= low
        out.append(best)
    return tuple(out)


def mat_pow(A: TropicalAdjMatrix, k: int) -> TropicalAdjMatrix:
    """``A^k`` by iterated left multiplication; ``A^0`` is the identity."""
    if k < 0:
        raise ValueError("exponent must be non-negative")
    P = TropicalAdjMatrix.identity(A.n)
    for _ in range(k):
        P = mat_mul(A, P)
    return P


def mat_pow_squaring(A: TropicalAdjMatrix, k: int) -> TropicalAdjMatrix:
    """``A^k`` by repeated squaring, for one-off power queries."""
    if k < 0:
        raise ValueError("exponent must be non-negative")
    result = TropicalAdjMatrix.identity(A.n)
    base = A
    while k:
        if k & 1:
            result = mat_mul(result, base)
        base = mat_mul(base, base)
        k >>= 1
    return result


def powers(A: TropicalAdjMatrix) -> Iterator[TropicalAdjMatrix]:
    """Yield ``A^1, A^2, ...`` indefinitely."""
    P = A
    while True:
        yield P
        P = mat_mul(A, P)


def is_all_zero(A: TropicalAdjMatrix) -> bool:
    full = (1 << A.n) - 1
    return all(r == full for r in A.rows)


def to_boolean(A: TropicalAdjMatrix) -> tuple[tuple[int, ...], ...]:
    """Map 0 -> 1 and -inf -> 0 entrywise."""
    n = A.n
    return tuple(tuple(r >> j & 1 for j in range(n)) for r in A.rows)


def from_boolean(M: Sequence[Sequence[int]]) -> TropicalAdjMatrix:
    n = len(M)
    rows = []
    for i, row in enumerate(M):
        if len(row) != n:
            raise DimensionError(f"row {i + 1} has {len(row)} entries, expected {n}")
        if not row[i]:
            raise ValueError(f"boolean matrix has 0 on the diagonal at ({i + 1},{i + 1})")
        bits = 0
        for j, v in enumerate(row):
            if v not in (0, 1):
                raise ValueError(f"entry ({i + 1},{j + 1}) is {v!r}; expected 0 or 1")
            if v:
                bits |= 1 << j
        rows.append(bits)
    return TropicalAdjMatrix(n, rows)


def format_matrix(A: TropicalAdjMatrix) -> str:
    lines = [str(A.n)]
    for row in A.entries():
        lines.append(" ".join(format_scalar(v) for v in row))
    return "\n".join(lines) + "\n"


def format_boolean(A: TropicalAdjMatrix) -> str:
    lines = [str(A.n)]
    for row in to_boolean(A):
        lines.append(" ".join(str(v) for v in row))
    return "\n".join(lines) + "\n"


def parse_matrix(text: str) -> TropicalAdjMatrix:
    """Parse the ``n`` + n-rows text format (tokens ``0`` / ``-inf``)."""
    lines = [(no, ln.split()) for no, ln in enumerate(text.splitlines(), 1)]
    lines = [(no, toks) for no, toks in lines if toks and not toks[0].startswith("#")]
    if not lines:
        raise ParseError("empty matrix file", line=1)
    no, toks = lines[0]
    if len(toks) != 1 or not toks[0].isdigit() or int(toks[0]) < 1:
        raise ParseError(f"expected a positive dimension, got {' '.join(toks)!r}", line=no)
    n = int(toks[0])
    body = lines[1:]
    if len(body) != n:
        last = body[-1][0] if body else no
        raise ParseError(f"expected {n} matrix rows, got {len(body)}", line=last)
    entries = []
    for i, (no, toks) in enumerate(body):
        if len(toks) != n:
            raise ParseError(f"expected {n} entries, got {len(toks)}", line=no)
        row = []
        for t in toks:
            if t == "0":
                row.append(0)
            elif t.lower() == "-inf":
                row.append(NEG_INF)
            else:
                raise ParseError(f"invalid entry {t!r}; expected 0 or -inf", line=no)
        if row[i] is NEG_INF:
            raise ParseError(f"diagonal entry ({i + 1},{i + 1}) must be 0", line=no)
        entries.append(row)
    return TropicalAdjMatrix.from_entries(entries)
