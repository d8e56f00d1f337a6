"""Truncated polynomial arithmetic Q[h]/(h^N) and sparse matrices over it.

TruncPoly is the coefficient ring for formal deformations: a fixed
truncation order N >= 1 and N rational coefficients for h^0..h^(N-1).
All arithmetic discards terms of degree >= N; order 1 degenerates to
plain rational arithmetic.  A truncated polynomial is invertible iff its
constant coefficient is nonzero, and the inverse is computed by the
geometric-series recurrence, order by order.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .linalg import SparseMat, DimensionMismatch, frac_from_str, frac_to_str

ZERO = Fraction(0)
ONE = Fraction(1)


@dataclass(frozen=True)
class TruncPoly:
    order: int
    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        if self.order < 1:
            raise ValueError("truncation order must be >= 1")
        if len(self.coeffs) != self.order:
            raise ValueError("coefficient count must equal the order")

    @staticmethod
    def const(value, order: int) -> "TruncPoly":
        c = [ZERO] * order
        c[0] = Fraction(value)
        return TruncPoly(order, tuple(c))

    @staticmethod
    def zero(order: int) -> "TruncPoly":
        return TruncPoly(order, (ZERO,) * order)

    @staticmethod
    def one(order: int) -> "TruncPoly":
        return TruncPoly.const(1, order)

    @staticmethod
    def h_power(k: int, order: int, value=1) -> "TruncPoly":
        """value * h^k, zero when k >= order."""
        c = [ZERO] * order
        if k < order:
            c[k] = Fraction(value)
        return TruncPoly(order, tuple(c))

    @staticmethod
    def from_coeffs(values, order: int | None = None) -> "TruncPoly":
        vals = [Fraction(v) for v in values]
        if order is None:
            order = len(vals)
        vals = (vals + [ZERO] * order)[:order]
        return TruncPoly(order, tuple(vals))

    def coeff(self, k: int) -> Fraction:
        return self.coeffs[k] if k < self.order else ZERO

    @property
    def constant(self) -> Fraction:
        return self.coeffs[0]

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def lift(self, order: int) -> "TruncPoly":
        """Reinterpret at a different truncation order (pad or cut)."""
        c = (self.coeffs + (ZERO,) * order)[:order]
        return TruncPoly(order, c)

    def _coerce(self, other) -> "TruncPoly":
        if isinstance(other, TruncPoly):
            if other.order != self.order:
                raise ValueError("mixed truncation orders")
            return other
        return TruncPoly.const(other, self.order)

    def __add__(self, other):
        o = self._coerce(other)
        return TruncPoly(self.order, tuple(a + b
                                           for a, b in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return TruncPoly(self.order, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        n = self.order
        out = [ZERO] * n
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j in range(n - i):
                b = o.coeffs[j]
                if b:
                    out[i + j] += a * b
        return TruncPoly(n, tuple(out))

    __rmul__ = __mul__

    def inverse(self) -> "TruncPoly":
        a0 = self.coeffs[0]
        if not a0:
            raise ZeroDivisionError("constant coefficient is zero")
        inv0 = 1 / a0
        out = [inv0] + [ZERO] * (self.order - 1)
        for k in range(1, self.order):
            s = ZERO
            for j in range(1, k + 1):
                s += self.coeffs[j] * out[k - j] if j < self.order else ZERO
            out[k] = -inv0 * s
        return TruncPoly(self.order, tuple(out))

    def __eq__(self, other):
        if isinstance(other, TruncPoly):
            return self.order == other.order and self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self == TruncPoly.const(other, self.order)
        return NotImplemented

    def __hash__(self):
        return hash((self.order, self.coeffs))

    def __repr__(self):
        terms = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            if k == 0:
                terms.append(str(c))
            else:
                head = "" if c == 1 else ("-" if c == -1 else f"{c}*")
                terms.append(f"{head}h" + (f"^{k}" if k > 1 else ""))
        body = " + ".join(terms).replace("+ -", "- ") or "0"
        return f"TruncPoly({body}; O(h^{self.order}))"

    def to_json(self) -> list[str]:
        return [frac_to_str(c) for c in self.coeffs]

    @staticmethod
    def from_json(data, order: int | None = None) -> "TruncPoly":
        return TruncPoly.from_coeffs([frac_from_str(c) for c in data], order)


class PolyMat:
    """Square sparse matrix over TruncPoly, stored column-wise.

    columns[j] maps a row index to a nonzero TruncPoly entry.
    """

    def __init__(self, dim: int, order: int,
                 columns: list[dict[int, TruncPoly]] | None = None):
        self.dim = dim
        self.order = order
        self.columns = columns if columns is not None \
            else [dict() for _ in range(dim)]

    @staticmethod
    def identity(dim: int, order: int) -> "PolyMat":
        one = TruncPoly.one(order)
        return PolyMat(dim, order, [{j: one} for j in range(dim)])

    @staticmethod
    def zero(dim: int, order: int) -> "PolyMat":
        return PolyMat(dim, order)

    @staticmethod
    def from_entries(dim: int, order: int, entries) -> "PolyMat":
        """entries: iterable of (row, col, TruncPoly or scalar)."""
        m = PolyMat(dim, order)
        for r, c, v in entries:
            if not isinstance(v, TruncPoly):
                v = TruncPoly.const(v, order)
            elif v.order != order:
                raise ValueError("mixed truncation orders in matrix")
            if not v.is_zero():
                m.columns[c][r] = v
        return m

    @staticmethod
    def from_rational(mat: SparseMat, order: int, h_degree: int = 0) -> "PolyMat":
        """Embed a rational matrix as coefficient of h^h_degree."""
        if mat.rows != mat.cols:
            raise DimensionMismatch("PolyMat is square")
        m = PolyMat(mat.rows, order)
        for (r, c), v in mat.entries.items():
            p = TruncPoly.h_power(h_degree, order, v)
            if not p.is_zero():
                m.columns[c][r] = p
        return m

    def get(self, r: int, c: int) -> TruncPoly:
        return self.columns[c].get(r, TruncPoly.zero(self.order))

    def entries(self):
        for c, col in enumerate(self.columns):
            for r, v in col.items():
                yield r, c, v

    def lift(self, order: int) -> "PolyMat":
        m = PolyMat(self.dim, order)
        for r, c, v in self.entries():
            w = v.lift(order)
            if not w.is_zero():
                m.columns[c][r] = w
        return m

    def coefficient_matrix(self, k: int) -> SparseMat:
        """Rational matrix of the h^k coefficients."""
        entries = {}
        for r, c, v in self.entries():
            coeff = v.coeff(k)
            if coeff:
                entries[(r, c)] = coeff
        return SparseMat(self.dim, self.dim, entries)

    @property
    def constant(self) -> SparseMat:
        return self.coefficient_matrix(0)

    def apply(self, vec: dict[int, TruncPoly]) -> dict[int, TruncPoly]:
        out: dict[int, TruncPoly] = {}
        for j, coeff in vec.items():
            for r, v in self.columns[j].items():
                term = v * coeff
                if r in out:
                    term = out[r] + term
                if term.is_zero():
                    out.pop(r, None)
                else:
                    out[r] = term
        return out

    def compose(self, other: "PolyMat") -> "PolyMat":
        """self after other (matrix product self @ other)."""
        if self.dim != other.dim or self.order != other.order:
            raise DimensionMismatch("compose shape/order mismatch")
        out = PolyMat(self.dim, self.order)
        for j, col in enumerate(other.columns):
            if col:
                out.columns[j] = self.apply(col)
        return out

    def add(self, other: "PolyMat") -> "PolyMat":
        if self.dim != other.dim or self.order != other.order:
            raise DimensionMismatch("add shape/order mismatch")
        out = PolyMat(self.dim, self.order)
        for j in range(self.dim):
            col = dict(self.columns[j])
            for r, v in other.columns[j].items():
                s = col.get(r)
                s = v if s is None else s + v
                if s.is_zero():
                    col.pop(r, None)
                else:
                    col[r] = s
            out.columns[j] = col
        return out

    def sub(self, other: "PolyMat") -> "PolyMat":
        return self.add(other.scaled(-1))

    def scaled(self, s) -> "PolyMat":
        if not isinstance(s, TruncPoly):
            s = TruncPoly.const(s, self.order)
        out = PolyMat(self.dim, self.order)
        for j, col in enumerate(self.columns):
            for r, v in col.items():
                w = v * s
                if not w.is_zero():
                    out.columns[j][r] = w
        return out

    def tensor(self, other: "PolyMat") -> "PolyMat":
        """Kronecker product; basis index of (i, j) is i*other.dim + j."""
        if self.order != other.order:
            raise ValueError("mixed truncation orders")
        d = self.dim * other.dim
        out = PolyMat(d, self.order)
        for r1, c1, v1 in self.entries():
            for r2, c2, v2 in other.entries():
                v = v1 * v2
                if not v.is_zero():
                    out.columns[c1 * other.dim + c2][r1 * other.dim + r2] = v
        return out

    def trace(self) -> TruncPoly:
        t = TruncPoly.zero(self.order)
        for j, col in enumerate(self.columns):
            v = col.get(j)
            if v is not None:
                t = t + v
        return t

    def power(self, k: int) -> "PolyMat":
        if k < 0:
            return self.inverse().power(-k)
        result = PolyMat.identity(self.dim, self.order)
        base = self
        while k:
            if k & 1:
                result = result.compose(base)
            k >>= 1
            if k:
                base = base.compose(base)
        return result

    def inverse(self) -> "PolyMat":
        """Invert the constant term exactly, then lift order by order."""
        c0 = self.constant
        inv0 = invert_rational(c0)
        if self.order == 1:
            return PolyMat.from_rational(inv0, 1)
        # X_k = -inv0 * sum_{j=1..k} M_j X_{k-j}
        m_parts = [self.coefficient_matrix(k) for k in range(self.order)]
        x_parts = [inv0]
        for k in range(1, self.order):
            acc = SparseMat(self.dim, self.dim, {})
            for j in range(1, k + 1):
                if m_parts[j].entries and x_parts[k - j].entries:
                    acc = acc.add(m_parts[j].matmul(x_parts[k - j]))
            x_parts.append(inv0.matmul(acc).scaled(-1))
        out = PolyMat(self.dim, self.order)
        for k, part in enumerate(x_parts):
            for (r, c), v in part.entries.items():
                cur = out.columns[c].get(r, TruncPoly.zero(self.order))
                out.columns[c][r] = cur + TruncPoly.h_power(k, self.order, v)
        return out

    def __eq__(self, other):
        if not isinstance(other, PolyMat):
            return NotImplemented
        if self.dim != other.dim or self.order != other.order:
            return False
        return dict(self._items()) == dict(other._items())

    def _items(self):
        for r, c, v in self.entries():
            if not v.is_zero():
                yield (r, c), v

    def __repr__(self):
        nnz = sum(len(c) for c in self.columns)
        return f"PolyMat(dim={self.dim}, order={self.order}, nnz={nnz})"

    def to_json(self) -> dict:
        triples = sorted(((r, c, v.to_json()) for r, c, v in self.entries()
                          if not v.is_zero()))
        return {"dim": self.dim, "trunc": self.order,
                "entries": [[r, c, coeffs] for r, c, coeffs in triples]}

    @staticmethod
    def from_json(data: dict) -> "PolyMat":
        order = data["trunc"]
        return PolyMat.from_entries(
            data["dim"], order,
            [(r, c, TruncPoly.from_json(coeffs, order))
             for r, c, coeffs in data["entries"]])


def invert_rational(m: SparseMat) -> SparseMat:
    """Exact inverse of a rational square matrix via echelon reduction."""
    if m.rows != m.cols:
        raise DimensionMismatch("only square matrices can be inverted")
    n = m.rows
    from .linalg import rref, ONE as R1
    rows = m.row_vectors()
    aug = []
    for i in range(n):
        r = dict(rows[i])
        r[n + i] = R1
        aug.append(r)
    red, piv = rref(aug)
    if piv[:n] != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    entries = {}
    for i, row in enumerate(red):
        for c, v in row.items():
            if c >= n:
                entries[(i, c - n)] = v
    return SparseMat(n, n, entries)
