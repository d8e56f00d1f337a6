"""Yang-Baxter operators on the tensor square and braid representations.

An operator on V tensor V, dim V = n, is an (n^2 x n^2) matrix over
Q[h]/(h^N).  The basis of V tensor V is ordered lexicographically:
basis vector x tensor y has index n*x + y, and matrix columns are indexed
by the source basis vector (column j holds the image of basis vector j).

The rack operator c_Q sends x tensor y to y tensor (x*y); the axiom that
right translations are bijections makes it a permutation of the basis,
and self-distributivity makes it a Yang-Baxter operator.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .racks import Rack, validate_rack
from .truncpoly import PolyMat, TruncPoly


@dataclass(frozen=True)
class YbeVerdict:
    """Outcome of a Yang-Baxter check; witness is the first basis triple
    (in lexicographic order) where the two triple products differ."""

    ok: bool
    witness: tuple[int, int, int] | None = None

    def __bool__(self):
        return self.ok


@dataclass(frozen=True)
class BraidWord:
    """Word in the Artin generators; letters are signed indices in
    +-1..+-(strands-1)."""

    strands: int
    letters: tuple[int, ...]

    def __post_init__(self):
        if self.strands < 2:
            raise ValueError("braid words need at least 2 strands")
        for l in self.letters:
            if l == 0 or abs(l) > self.strands - 1:
                raise ValueError(f"letter {l} out of range for "
                                 f"{self.strands} strands")

    @staticmethod
    def parse(text: str, strands: int | None = None) -> "BraidWord":
        letters = tuple(int(t) for t in text.replace(",", " ").split())
        if strands is None:
            strands = max((abs(l) for l in letters), default=1) + 1
            strands = max(strands, 2)
        return BraidWord(strands, letters)


@dataclass(frozen=True)
class YBOperator:
    """Invertible operator on the tensor square of an n-dimensional space."""

    rack_size: int
    mat: PolyMat

    def __post_init__(self):
        if self.mat.dim != self.rack_size ** 2:
            raise ValueError("matrix dimension must be rack_size squared")

    @property
    def trunc(self) -> int:
        return self.mat.order

    @property
    def dim(self) -> int:
        return self.mat.dim

    def lift(self, order: int) -> "YBOperator":
        return YBOperator(self.rack_size, self.mat.lift(order))

    def compose(self, other: "YBOperator") -> "YBOperator":
        return YBOperator(self.rack_size, self.mat.compose(other.mat))

    def inverse(self) -> "YBOperator":
        return YBOperator(self.rack_size, self.mat.inverse())

    def __eq__(self, other):
        if not isinstance(other, YBOperator):
            return NotImplemented
        return self.rack_size == other.rack_size and self.mat == other.mat


def build_cq(rack: Rack, trunc: int = 1) -> YBOperator:
    """Permutation operator x tensor y -> y tensor (x*y)."""
    n = rack.size
    one = TruncPoly.one(trunc)
    mat = PolyMat(n * n, trunc)
    for x in range(n):
        for y in range(n):
            mat.columns[n * x + y][n * y + rack.op(x, y)] = one
    return YBOperator(n, mat)


def build_tau(n: int, trunc: int = 1) -> YBOperator:
    """The transposition x tensor y -> y tensor x."""
    if n < 1:
        raise ValueError("dimension must be >= 1")
    one = TruncPoly.one(trunc)
    mat = PolyMat(n * n, trunc)
    for x in range(n):
        for y in range(n):
            mat.columns[n * x + y][n * y + x] = one
    return YBOperator(n, mat)


def build_jones(q, trunc: int = 1) -> YBOperator:
    """The rank-2 deformation of the transposition with parameter q:
    diagonal corners q, middle block [[0, q^2], [q^2, q - q^3]]."""
    q = Fraction(q)
    if q == 0:
        raise ValueError("parameter must be invertible (nonzero)")
    entries = [
        (0, 0, q),
        (2, 1, q * q),
        (1, 2, q * q),
        (2, 2, q - q ** 3),
        (3, 3, q),
    ]
    mat = PolyMat.from_entries(4, trunc,
                               [(r, c, TruncPoly.const(v, trunc))
                                for r, c, v in entries])
    return YBOperator(2, mat)


def _apply_c1(op: YBOperator, vec: dict[int, TruncPoly]) -> dict[int, TruncPoly]:
    """Apply c tensor I to a sparse vector on the tensor cube."""
    n = op.rack_size
    cols = op.mat.columns
    out: dict[int, TruncPoly] = {}
    for e, coeff in vec.items():
        z = e % n
        xy = e // n
        for row, val in cols[xy].items():
            key = row * n + z
            term = val * coeff
            if key in out:
                term = out[key] + term
            if term.is_zero():
                out.pop(key, None)
            else:
                out[key] = term
    return out


def _apply_c2(op: YBOperator, vec: dict[int, TruncPoly]) -> dict[int, TruncPoly]:
    """Apply I tensor c to a sparse vector on the tensor cube."""
    n = op.rack_size
    nn = n * n
    cols = op.mat.columns
    out: dict[int, TruncPoly] = {}
    for e, coeff in vec.items():
        x = e // nn
        yz = e % nn
        for row, val in cols[yz].items():
            key = x * nn + row
            term = val * coeff
            if key in out:
                term = out[key] + term
            if term.is_zero():
                out.pop(key, None)
            else:
                out[key] = term
    return out


def check_ybe(op: YBOperator) -> YbeVerdict:
    """Compare (c1 c2 c1) and (c2 c1 c2) on the tensor cube, exactly.

    Both triple products are formed column by column (never as dense
    n^3 x n^3 arrays); the verdict carries the first differing basis
    triple in lexicographic order.
    """
    n = op.rack_size
    one = TruncPoly.one(op.trunc)
    for e in range(n ** 3):
        start = {e: one}
        lhs = _apply_c1(op, _apply_c2(op, _apply_c1(op, start)))
        rhs = _apply_c2(op, _apply_c1(op, _apply_c2(op, start)))
        if lhs != rhs:
            x, rest = divmod(e, n * n)
            y, z = divmod(rest, n)
            return YbeVerdict(False, (x, y, z))
    return YbeVerdict(True)


def braid_rep(op: YBOperator, word: BraidWord) -> PolyMat:
    """Matrix of a braid word on the k-fold tensor power.

    The generator sigma_i acts as c on tensor factors i, i+1; a word is
    read left to right as a composition of maps, so the first letter is
    applied last to vectors (braids act on the left).
    """
    n = op.rack_size
    k = word.strands
    dim = n ** k
    cols = op.mat.columns
    inv_cols = None
    if any(l < 0 for l in word.letters):
        inv_cols = op.mat.inverse().columns

    def apply_letter(letter: int, vec: dict[int, TruncPoly]):
        i = abs(letter)
        use = cols if letter > 0 else inv_cols
        base = n ** (k - 1 - i)  # weight of tensor slot i (0-based slot i)
        out: dict[int, TruncPoly] = {}
        for e, coeff in vec.items():
            lo = e % base
            pair = (e // base) % (n * n)
            hi = e // (base * n * n)
            for row, val in use[pair].items():
                key = (hi * n * n + row) * base + lo
                term = val * coeff
                if key in out:
                    term = out[key] + term
                if term.is_zero():
                    out.pop(key, None)
                else:
                    out[key] = term
        return out

    result = PolyMat(dim, op.trunc)
    one = TruncPoly.one(op.trunc)
    for j in range(dim):
        vec = {j: one}
        for letter in reversed(word.letters):
            vec = apply_letter(letter, vec)
        result.columns[j] = vec
    return result


def trace_power(op: YBOperator, k: int) -> TruncPoly:
    """Trace of the k-th power of the operator."""
    if k < 1:
        raise ValueError("power must be >= 1")
    return op.mat.power(k).trace()


def rack_from_operator(op: YBOperator) -> Rack:
    """Decode a rack-permutation operator back into its table."""
    n = op.rack_size
    table = [[None] * n for _ in range(n)]
    for x in range(n):
        for y in range(n):
            col = op.mat.columns[n * x + y]
            if len(col) != 1:
                raise ValueError("operator is not a basis permutation")
            (row, val), = col.items()
            if val != TruncPoly.one(op.trunc):
                raise ValueError("operator is not a basis permutation")
            y2, xy = divmod(row, n)
            if y2 != y:
                raise ValueError("operator does not fix the second slot "
                                 "as a rack operator must")
            table[x][y] = xy
    return validate_rack(table)
