"""Exact sparse linear algebra over the rationals.

Everything here is built on ``fractions.Fraction`` (arbitrary precision,
always reduced, denominator >= 1); no floating point is used anywhere.
Vectors are dicts ``{index: Fraction}`` holding only nonzero entries, and
matrices store a map ``{(row, col): Fraction}`` of nonzero entries.

Subspaces are kept in reduced row echelon form with strictly increasing
pivot columns, so two subspaces are equal iff their bases are identical.
Pivoting is deterministic: lowest column first, then lowest row.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

Vec = dict[int, Fraction]

ZERO = Fraction(0)
ONE = Fraction(1)


def vec_add(a: Vec, b: Vec) -> Vec:
    out = dict(a)
    for i, v in b.items():
        w = out.get(i, ZERO) + v
        if w:
            out[i] = w
        else:
            out.pop(i, None)
    return out

def vec_sub(a: Vec, b: Vec) -> Vec:
    out = dict(a)
    for i, v in b.items():
        w = out.get(i, ZERO) - v
        if w:
            out[i] = w
        else:
            out.pop(i, None)
    return out

def vec_scale(a: Vec, s: Fraction) -> Vec:
    if not s:
        return {}
    return {i: s * v for i, v in a.items()}

def vec_axpy(a: Vec, s: Fraction, b: Vec) -> Vec:
    """a + s*b, dropping zeros."""
    if not s:
        return dict(a)
    out = dict(a)
    for i, v in b.items():
        w = out.get(i, ZERO) + s * v
        if w:
            out[i] = w
        else:
            out.pop(i, None)
    return out


class DimensionMismatch(ValueError):
    pass


class SizeOverflow(RuntimeError):
    """A requested matrix would exceed the configured size limit."""


@dataclass(frozen=True)
class SparseMat:
    """Sparse matrix over Fraction; entries holds nonzero values only."""

    rows: int
    cols: int
    entries: dict[tuple[int, int], Fraction] = field(default_factory=dict)

    def __post_init__(self):
        for (r, c), v in self.entries.items():
            if not (0 <= r < self.rows and 0 <= c < self.cols):
                raise DimensionMismatch(f"entry ({r},{c}) out of bounds")
            if v == 0:
                raise ValueError("stored zero entry")

    @staticmethod
    def from_triples(rows, cols, triples) -> "SparseMat":
        entries = {}
        for r, c, v in triples:
            v = Fraction(v)
            if v:
                entries[(r, c)] = v
        return SparseMat(rows, cols, entries)

    @staticmethod
    def from_dense(dense) -> "SparseMat":
        rows = len(dense)
        cols = len(dense[0]) if rows else 0
        entries = {}
        for r, row in enumerate(dense):
            for c, v in enumerate(row):
                v = Fraction(v)
                if v:
                    entries[(r, c)] = v
        return SparseMat(rows, cols, entries)

    @staticmethod
    def identity(n: int) -> "SparseMat":
        return SparseMat(n, n, {(i, i): ONE for i in range(n)})

    def get(self, r: int, c: int) -> Fraction:
        return self.entries.get((r, c), ZERO)

    def is_zero(self) -> bool:
        return not self.entries

    def transpose(self) -> "SparseMat":
        return SparseMat(self.cols, self.rows,
                         {(c, r): v for (r, c), v in self.entries.items()})

    def row_vectors(self) -> list[Vec]:
        out: list[Vec] = [dict() for _ in range(self.rows)]
        for (r, c), v in self.entries.items():
            out[r][c] = v
        return out

    def col_vectors(self) -> list[Vec]:
        out: list[Vec] = [dict() for _ in range(self.cols)]
        for (r, c), v in self.entries.items():
            out[c][r] = v
        return out

    def apply(self, v: Vec) -> Vec:
        """Matrix times column vector, both sparse."""
        cols = self._col_index()
        out: Vec = {}
        for j, coeff in v.items():
            col = cols.get(j)
            if not col:
                continue
            for i, w in col.items():
                s = out.get(i, ZERO) + coeff * w
                if s:
                    out[i] = s
                else:
                    out.pop(i, None)
        return out

    def _col_index(self) -> dict[int, Vec]:
        cached = getattr(self, "_cols_cache", None)
        if cached is None:
            cached = {}
            for (r, c), v in self.entries.items():
                cached.setdefault(c, {})[r] = v
            object.__setattr__(self, "_cols_cache", cached)
        return cached

    def matmul(self, other: "SparseMat") -> "SparseMat":
        if self.cols != other.rows:
            raise DimensionMismatch("matmul shape mismatch")
        out: dict[tuple[int, int], Fraction] = {}
        cols = self._col_index()
        for (k, j), bv in other.entries.items():
            col = cols.get(k)
            if not col:
                continue
            for i, av in col.items():
                key = (i, j)
                s = out.get(key, ZERO) + av * bv
                if s:
                    out[key] = s
                else:
                    out.pop(key, None)
        return SparseMat(self.rows, other.cols, out)

    def __mul__(self, other):
        if isinstance(other, SparseMat):
            return self.matmul(other)
        return NotImplemented

    def scaled(self, s) -> "SparseMat":
        s = Fraction(s)
        if not s:
            return SparseMat(self.rows, self.cols, {})
        return SparseMat(self.rows, self.cols,
                         {k: s * v for k, v in self.entries.items()})

    def add(self, other: "SparseMat") -> "SparseMat":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionMismatch("add shape mismatch")
        entries = dict(self.entries)
        for k, v in other.entries.items():
            s = entries.get(k, ZERO) + v
            if s:
                entries[k] = s
            else:
                entries.pop(k, None)
        return SparseMat(self.rows, self.cols, entries)

    def sub(self, other: "SparseMat") -> "SparseMat":
        return self.add(other.scaled(-1))

    def __eq__(self, other):
        if not isinstance(other, SparseMat):
            return NotImplemented
        return (self.rows, self.cols) == (other.rows, other.cols) \
            and self.entries == other.entries

    def __hash__(self):
        return hash((self.rows, self.cols, frozenset(self.entries.items())))


def rref(vectors: list[Vec]) -> tuple[list[Vec], list[int]]:
    """Reduced row echelon form of a list of sparse row vectors.

    Returns (rows, pivots): rows have leading coefficient 1 at strictly
    increasing pivot columns and are fully reduced against each other.
    The result is the canonical basis of the row space.
    """
    pivots: dict[int, Vec] = {}  # pivot col -> row
    for row in vectors:
        r = dict(row)
        while r:
            lead = min(r)
            p = pivots.get(lead)
            if p is None:
                coeff = r[lead]
                if coeff != 1:
                    r = {i: v / coeff for i, v in r.items()}
                pivots[lead] = r
                break
            r = vec_axpy(r, -r[lead], p)
    piv_cols = sorted(pivots)
    # back-substitute for the reduced form
    for idx in range(len(piv_cols) - 1, -1, -1):
        pc = piv_cols[idx]
        prow = pivots[pc]
        for qc in piv_cols[:idx]:
            qrow = pivots[qc]
            coeff = qrow.get(pc)
            if coeff:
                pivots[qc] = vec_axpy(qrow, -coeff, prow)
    return [pivots[c] for c in piv_cols], piv_cols


@dataclass(frozen=True)
class Subspace:
    """Subspace of Q^ambient_dim with canonical reduced-echelon basis."""

    ambient_dim: int
    basis: tuple[Vec, ...]
    pivots: tuple[int, ...]

    @staticmethod
    def from_vectors(ambient_dim: int, vectors: list[Vec]) -> "Subspace":
        for v in vectors:
            if any(not (0 <= i < ambient_dim) for i in v):
                raise DimensionMismatch("vector index out of range")
        rows, piv = rref(vectors)
        return Subspace(ambient_dim, tuple(rows), tuple(piv))

    @staticmethod
    def zero(ambient_dim: int) -> "Subspace":
        return Subspace(ambient_dim, (), ())

    @property
    def dim(self) -> int:
        return len(self.basis)

    def reduce(self, v: Vec) -> Vec:
        """Residual of v after elimination against the basis."""
        r = dict(v)
        for pc, row in zip(self.pivots, self.basis):
            coeff = r.get(pc)
            if coeff:
                r = vec_axpy(r, -coeff, row)
        return r

    def contains_vec(self, v: Vec) -> bool:
        return not self.reduce(v)

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return (self.ambient_dim == other.ambient_dim
                and self.pivots == other.pivots
                and list(self.basis) == list(other.basis))

    def __hash__(self):
        return hash((self.ambient_dim, self.pivots))


def kernel_basis(m: SparseMat) -> Subspace:
    """Canonical basis of {v : m v = 0}."""
    rows = [r for r in m.row_vectors() if r]
    ref_rows, piv_cols = rref(rows)
    piv_set = set(piv_cols)
    free_cols = [c for c in range(m.cols) if c not in piv_set]
    basis: list[Vec] = []
    for f in free_cols:
        v: Vec = {f: ONE}
        for pc, row in zip(piv_cols, ref_rows):
            coeff = row.get(f)
            if coeff:
                v[pc] = -coeff
        basis.append(v)
    return Subspace.from_vectors(m.cols, basis)


def image_basis(m: SparseMat) -> Subspace:
    """Canonical basis of the column span of m."""
    return Subspace.from_vectors(m.rows, [c for c in m.col_vectors() if c])


def rank(m: SparseMat) -> int:
    rows = [r for r in m.row_vectors() if r]
    _, piv = rref(rows)
    return len(piv)


def contains(s: Subspace, v: Vec) -> bool:
    """True iff v lies in the span of s."""
    if any(not (0 <= i < s.ambient_dim) for i in v):
        raise DimensionMismatch("vector longer than ambient dimension")
    return s.contains_vec(v)


def sum_and_intersection_dims(a: Subspace, b: Subspace) -> tuple[int, int]:
    """(dim(a+b), dim(a∩b)) for subspaces of the same ambient space.

    The sum is the row space of the stacked bases.  The intersection
    dimension is the nullity of the ambient x (dim a + dim b) matrix whose
    columns are the two bases side by side: a kernel vector (u, -w) means
    u.a = w.b, which is exactly a common vector.
    """
    if a.ambient_dim != b.ambient_dim:
        raise DimensionMismatch("ambient dimensions differ")
    stacked = list(a.basis) + list(b.basis)
    dim_sum = Subspace.from_vectors(a.ambient_dim, stacked).dim
    entries: dict[tuple[int, int], Fraction] = {}
    for j, v in enumerate(stacked):
        for i, val in v.items():
            entries[(i, j)] = val
    side_by_side = SparseMat(a.ambient_dim, len(stacked), entries)
    dim_int = kernel_basis(side_by_side).dim
    return dim_sum, dim_int


def solve(m: SparseMat, b: Vec) -> Vec | None:
    """One solution of m x = b (free variables set to zero), or None.

    Deterministic: the echelon pivot rule fixes which solution is returned.
    """
    rows = m.row_vectors()
    aug_col = m.cols
    aug_rows = []
    for i, r in enumerate(rows):
        r = dict(r)
        bi = b.get(i, ZERO)
        if bi:
            r[aug_col] = bi
        if r:
            aug_rows.append(r)
    ref_rows, piv_cols = rref(aug_rows)
    if aug_col in piv_cols:
        return None  # inconsistent system
    x: Vec = {}
    for pc, row in zip(piv_cols, ref_rows):
        val = row.get(aug_col, ZERO)
        # reduced form: row has 1 at pc, entries only at free columns and aug
        if val:
            x[pc] = val
    return x


def rank_mod_p(m: SparseMat, p: int) -> int:
    """Rank of m over the prime field F_p (cross-check for rational rank)."""
    rows = []
    for r in m.row_vectors():
        rr = {}
        for c, v in r.items():
            num = v.numerator % p
            den = v.denominator % p
            if den == 0:
                raise ZeroDivisionError("denominator divisible by p")
            val = (num * pow(den, p - 2, p)) % p
            if val:
                rr[c] = val
        if rr:
            rows.append(rr)
    pivots: dict[int, dict[int, int]] = {}
    for row in rows:
        r = dict(row)
        while r:
            lead = min(r)
            piv = pivots.get(lead)
            if piv is None:
                inv = pow(r[lead], p - 2, p)
                pivots[lead] = {i: (v * inv) % p for i, v in r.items()}
                break
            coeff = r[lead]
            for i, v in piv.items():
                w = (r.get(i, 0) - coeff * v) % p
                if w:
                    r[i] = w
                else:
                    r.pop(i, None)
    return len(pivots)


def frac_to_str(v: Fraction) -> str:
    return str(v)


def frac_from_str(s: str) -> Fraction:
    return Fraction(s)


def mat_to_json(m: SparseMat) -> dict:
    """Row-major coordinate triples [row, col, "p/q"]."""
    triples = [[r, c, frac_to_str(v)]
               for (r, c), v in sorted(m.entries.items())]
    return {"rows": m.rows, "cols": m.cols, "entries": triples}


def mat_from_json(data: dict) -> SparseMat:
    return SparseMat.from_triples(
        data["rows"], data["cols"],
        [(r, c, frac_from_str(v)) for r, c, v in data["entries"]])


def vec_to_json(v: Vec, dim: int) -> dict:
    return {"dim": dim, "entries": [[i, frac_to_str(x)]
                                    for i, x in sorted(v.items())]}


def vec_from_json(data: dict) -> tuple[Vec, int]:
    v = {i: frac_from_str(x) for i, x in data["entries"]}
    return {i: x for i, x in v.items() if x}, data["dim"]
