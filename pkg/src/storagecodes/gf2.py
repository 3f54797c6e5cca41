"""Exact linear algebra over GF(2) with int-bitset vectors.

Vectors of length m are packed into a single Python int; bit i of the
word is coordinate i.  The textual encoding writes coordinate 0 first,
so "1001" is e0 + e3.  Subspaces are kept in reduced row-echelon form,
which makes them canonical: two Subspace values compare equal iff they
are the same subspace.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator, List, Optional, Sequence, Tuple

DEFAULT_ENUMERATION_CAP = 10**7

MAX_AMBIENT_DIM = 64


class EnumerationCapError(RuntimeError):
    """Raised when a subspace enumeration would exceed the configured cap."""


@dataclass(frozen=True)
class BitVector:
    """A fixed-length vector over GF(2), packed into one int."""

    length: int
    word: int

    def __post_init__(self) -> None:
        if not 0 < self.length <= MAX_AMBIENT_DIM:
            raise ValueError(f"vector length must be in 1..{MAX_AMBIENT_DIM}")
        if not 0 <= self.word < (1 << self.length):
            raise ValueError("word has bits outside the vector length")

    @classmethod
    def from_string(cls, text: str) -> "BitVector":
        if not text or any(c not in "01" for c in text):
            raise ValueError(f"not a 0/1 string: {text!r}")
        word = 0
        for i, c in enumerate(text):
            if c == "1":
                word |= 1 << i
        return cls(len(text), word)

    @classmethod
    def unit(cls, length: int, index: int) -> "BitVector":
        return cls(length, 1 << index)

    @classmethod
    def zero(cls, length: int) -> "BitVector":
        return cls(length, 0)

    def to_string(self) -> str:
        return "".join("1" if (self.word >> i) & 1 else "0" for i in range(self.length))

    def bit(self, i: int) -> int:
        return (self.word >> i) & 1

    def is_zero(self) -> bool:
        return self.word == 0

    def __xor__(self, other: "BitVector") -> "BitVector":
        if self.length != other.length:
            raise ValueError("length mismatch")
        return BitVector(self.length, self.word ^ other.word)

    def dot(self, other: "BitVector") -> int:
        """Inner product over GF(2) (parity of the AND)."""
        if self.length != other.length:
            raise ValueError("length mismatch")
        return (self.word & other.word).bit_count() & 1


@dataclass(frozen=True)
class BitMatrix:
    """A matrix over GF(2), stored as a tuple of equal-length rows."""

    rows: Tuple[BitVector, ...]
    col_count: int

    def __post_init__(self) -> None:
        for row in self.rows:
            if row.length != self.col_count:
                raise ValueError("all rows must share one length")

    @classmethod
    def from_strings(cls, texts: Sequence[str]) -> "BitMatrix":
        rows = tuple(BitVector.from_string(t) for t in texts)
        if not rows:
            raise ValueError("cannot infer column count from an empty matrix")
        return cls(rows, rows[0].length)

    @classmethod
    def from_words(cls, col_count: int, words: Iterable[int]) -> "BitMatrix":
        return cls(tuple(BitVector(col_count, w) for w in words), col_count)

    @property
    def row_count(self) -> int:
        return len(self.rows)

    def words(self) -> List[int]:
        return [r.word for r in self.rows]

    def to_strings(self) -> List[str]:
        return [r.to_string() for r in self.rows]

    def transpose(self) -> "BitMatrix":
        if self.row_count == 0:
            raise ValueError("cannot transpose a matrix with no rows")
        words = []
        for c in range(self.col_count):
            w = 0
            for i, row in enumerate(self.rows):
                if (row.word >> c) & 1:
                    w |= 1 << i
            words.append(w)
        return BitMatrix.from_words(self.row_count, words)

    def mat_vec(self, x: BitVector) -> BitVector:
        """Matrix-vector product: one parity per row."""
        if x.length != self.col_count:
            raise ValueError("dimension mismatch")
        if self.row_count == 0:
            raise ValueError("matrix has no rows")
        w = 0
        for i, row in enumerate(self.rows):
            if (row.word & x.word).bit_count() & 1:
                w |= 1 << i
        return BitVector(self.row_count, w)

    def stack(self, other: "BitMatrix") -> "BitMatrix":
        if self.col_count != other.col_count:
            raise ValueError("column count mismatch")
        return BitMatrix(self.rows + other.rows, self.col_count)


def _pivot(word: int) -> int:
    """Index of the first (lowest-coordinate) set bit."""
    return (word & -word).bit_length() - 1


def _rref_words(words: Sequence[int], ncols: int) -> List[int]:
    """Reduced row echelon form on int rows; zero rows dropped."""
    rows = list(words)
    rank = 0
    for col in range(ncols):
        pivot = None
        for i in range(rank, len(rows)):
            if (rows[i] >> col) & 1:
                pivot = i
                break
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        for i in range(len(rows)):
            if i != rank and (rows[i] >> col) & 1:
                rows[i] ^= rows[rank]
        rank += 1
    return rows[:rank]


def rref(mat: BitMatrix) -> Tuple[BitMatrix, int]:
    """Reduced row-echelon form with zero rows removed, plus the rank."""
    reduced = _rref_words(mat.words(), mat.col_count)
    return BitMatrix.from_words(mat.col_count, reduced), len(reduced)


def rank(mat: BitMatrix) -> int:
    return len(_rref_words(mat.words(), mat.col_count))


def solve(mat: BitMatrix, rhs: BitVector) -> Optional[BitVector]:
    """Find any x with mat @ x = rhs over GF(2), or None if inconsistent.

    The right-hand side has one bit per matrix row.  When the matrix has
    full column rank the solution is unique; otherwise free variables
    are set to zero.
    """
    if rhs.length != max(mat.row_count, 1):
        raise ValueError("rhs length must equal the row count")
    m = mat.col_count
    aug = 1 << m
    rows = [row.word | (aug if rhs.bit(i) else 0) for i, row in enumerate(mat.rows)]
    rank_ = 0
    for col in range(m):
        pivot = None
        for i in range(rank_, len(rows)):
            if (rows[i] >> col) & 1:
                pivot = i
                break
        if pivot is None:
            continue
        rows[rank_], rows[pivot] = rows[pivot], rows[rank_]
        for i in range(len(rows)):
            if i != rank_ and (rows[i] >> col) & 1:
                rows[i] ^= rows[rank_]
        rank_ += 1
    for row in rows[rank_:]:
        if row:  # only the augmented bit can remain: inconsistent system
            return None
    x = 0
    for row in rows[:rank_]:
        if row >> m:
            x |= 1 << _pivot(row)
    return BitVector(m, x)


@dataclass(frozen=True)
class Subspace:
    """A subspace of GF(2)^m in canonical (RREF) form."""

    ambient_dim: int
    basis: BitMatrix

    def __post_init__(self) -> None:
        if self.basis.col_count != self.ambient_dim:
            raise ValueError("basis width must equal the ambient dimension")
        words = self.basis.words()
        if words != _rref_words(words, self.ambient_dim):
            raise ValueError("basis is not in reduced row-echelon form")

    @classmethod
    def spanned_by(cls, ambient_dim: int, vectors: Iterable[BitVector]) -> "Subspace":
        words = _rref_words([v.word for v in vectors], ambient_dim)
        return cls(ambient_dim, BitMatrix.from_words(ambient_dim, words))

    @classmethod
    def from_matrix(cls, mat: BitMatrix) -> "Subspace":
        return cls.spanned_by(mat.col_count, mat.rows)

    @classmethod
    def zero(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, BitMatrix.from_words(ambient_dim, []))

    @classmethod
    def full(cls, ambient_dim: int) -> "Subspace":
        return cls.spanned_by(ambient_dim, [BitVector.unit(ambient_dim, i) for i in range(ambient_dim)])

    @property
    def dim(self) -> int:
        return self.basis.row_count

    def is_zero(self) -> bool:
        return self.dim == 0

    def contains(self, v: BitVector) -> bool:
        return span_contains(self, v)

    def contains_subspace(self, other: "Subspace") -> bool:
        return all(self.contains(row) for row in other.basis.rows)

    def vectors(self) -> Iterator[BitVector]:
        """All 2^dim vectors of the subspace, the zero vector first."""
        words = self.basis.words()
        for mask in range(1 << self.dim):
            w = 0
            for i in range(self.dim):
                if (mask >> i) & 1:
                    w ^= words[i]
            yield BitVector(self.ambient_dim, w)

    def sort_key(self) -> Tuple[str, ...]:
        """Deterministic ordering key: the canonical basis as strings."""
        return tuple(self.basis.to_strings())


def span_contains(s: Subspace, v: BitVector) -> bool:
    """True iff v is a GF(2)-linear combination of the basis rows."""
    if v.length != s.ambient_dim:
        raise ValueError("dimension mismatch")
    w = v.word
    for row in s.basis.words():
        if (w >> _pivot(row)) & 1:
            w ^= row
    return w == 0


def subspace_sum(parts: Sequence[Subspace]) -> Subspace:
    """Span of the union of the given subspaces (their sum)."""
    if not parts:
        raise ValueError("subspace_sum of an empty list: pass an explicit zero subspace")
    m = parts[0].ambient_dim
    words: List[int] = []
    for p in parts:
        if p.ambient_dim != m:
            raise ValueError("ambient dimension mismatch")
        words.extend(p.basis.words())
    return Subspace(m, BitMatrix.from_words(m, _rref_words(words, m)))


def subspace_intersect(a: Subspace, b: Subspace) -> Subspace:
    """Intersection of two subspaces (Zassenhaus block elimination)."""
    if a.ambient_dim != b.ambient_dim:
        raise ValueError("ambient dimension mismatch")
    m = a.ambient_dim
    mask = (1 << m) - 1
    # Rows (x | x) for the first basis and (y | 0) for the second; after
    # elimination on the low block, rows with a zero low block carry an
    # intersection vector in the high block.
    rows = [w | (w << m) for w in a.basis.words()]
    rows += list(b.basis.words())
    reduced = _rref_words(rows, 2 * m)
    inter = [r >> m for r in reduced if (r & mask) == 0]
    return Subspace(m, BitMatrix.from_words(m, _rref_words(inter, m)))


def gaussian_binomial(m: int, d: int) -> int:
    """Number of d-dimensional subspaces of GF(2)^m."""
    if d < 0 or d > m:
        return 0
    num = den = 1
    for i in range(d):
        num *= (1 << m) - (1 << i)
        den *= (1 << d) - (1 << i)
    return num // den


def enumerate_subspaces(ambient_dim: int, dim: int, cap: Optional[int] = None) -> Iterator[Subspace]:
    """Yield every dim-dimensional subspace of GF(2)^ambient_dim once.

    The order is deterministic: pivot-column combinations in
    lexicographic order, then the free entries in ascending binary
    order.  Refuses to run when the count exceeds the cap.
    """
    if not 0 <= dim <= ambient_dim:
        raise ValueError("need 0 <= dim <= ambient_dim")
    cap = DEFAULT_ENUMERATION_CAP if cap is None else cap
    count = gaussian_binomial(ambient_dim, dim)
    if count > cap:
        raise EnumerationCapError(
            f"{count} subspaces of dimension {dim} in GF(2)^{ambient_dim} exceeds cap {cap}"
        )
    if dim == 0:
        yield Subspace.zero(ambient_dim)
        return
    for pivots in combinations(range(ambient_dim), dim):
        pivot_set = set(pivots)
        cells = [
            (i, c)
            for i in range(dim)
            for c in range(pivots[i] + 1, ambient_dim)
            if c not in pivot_set
        ]
        for assignment in range(1 << len(cells)):
            words = [1 << p for p in pivots]
            for bit, (i, c) in enumerate(cells):
                if (assignment >> bit) & 1:
                    words[i] |= 1 << c
            yield Subspace(ambient_dim, BitMatrix.from_words(ambient_dim, words))


def subspaces_of(space: Subspace, dim: int, cap: Optional[int] = None) -> Iterator[Subspace]:
    """Yield every dim-dimensional subspace of the given subspace.

    Enumerates in the coefficient space of the canonical basis and maps
    back, so the order is deterministic.
    """
    if dim > space.dim:
        return
    basis = space.basis.words()
    for coeff in enumerate_subspaces(space.dim, dim, cap):
        words = []
        for row in coeff.basis.words():
            w = 0
            for i in range(space.dim):
                if (row >> i) & 1:
                    w ^= basis[i]
            words.append(w)
        yield Subspace(space.ambient_dim, BitMatrix.from_words(space.ambient_dim, _rref_words(words, space.ambient_dim)))
