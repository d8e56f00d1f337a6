"""The Yang-Baxter cochain complex of a rack operator.

Degree-d cochains are linear maps on the d-fold tensor power of the free
module on the rack, stored as sparse matrices f<x -> y> indexed by pairs
of d-tuples; tuples are encoded lexicographically (first slot most
significant).  Matrix entries live at (row, col) = (encode(y), encode(x)).

The coboundary d^d: C^d -> C^(d+1) is the alternating sum of d+1 partial
operators d_i.  In index form, each d_i f has two terms on (d+1)-tuples
(x_0..x_d | y_0..y_d):

  + f<..without slot i..>  *  delta(x_i acted by x_{i+1}..x_d,
                                    y_i acted by y_{i+1}..y_d)
  - f<prefix slots acted by x_i (resp. y_i), tail unchanged>
                           *  delta(x_i, y_i)

A cochain is entropic when every partial coboundary kills it;
equivalently it is quasi-diagonal (vanishes unless every slot pair is
behaviourally equivalent) and fully equivariant (invariant under the
componentwise inner-automorphism action).  Entropic cochains are spanned
by the indicator functions of the orbits of quasi-diagonal index pairs.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from . import linalg
from .linalg import SparseMat, Subspace, SizeOverflow, Vec, ZERO, ONE
from .racks import Perm, Rack, class_ids, inner_group

DEFAULT_ENTRY_LIMIT = 10 ** 7


def encode(tup, n: int) -> int:
    code = 0
    for t in tup:
        code = code * n + t
    return code


def decode(code: int, degree: int, n: int) -> tuple[int, ...]:
    out = []
    for _ in range(degree):
        code, r = divmod(code, n)
        out.append(r)
    return tuple(reversed(out))


@dataclass(frozen=True)
class Cochain:
    """Sparse degree-d cochain; entries[(encode(y), encode(x))] = f<x -> y>."""

    rack_size: int
    degree: int
    entries: dict[tuple[int, int], Fraction] = field(default_factory=dict)

    @staticmethod
    def zero(n: int, degree: int) -> "Cochain":
        return Cochain(n, degree, {})

    @staticmethod
    def from_pairs(n: int, degree: int, pairs) -> "Cochain":
        """pairs: iterable of (x_tuple, y_tuple, value)."""
        entries = {}
        for x, y, v in pairs:
            v = Fraction(v)
            if v:
                entries[(encode(y, n), encode(x, n))] = v
        return Cochain(n, degree, entries)

    @staticmethod
    def identity(n: int, degree: int) -> "Cochain":
        dim = n ** degree
        return Cochain(n, degree, {(i, i): ONE for i in range(dim)})

    def get(self, x: tuple, y: tuple) -> Fraction:
        n = self.rack_size
        return self.entries.get((encode(y, n), encode(x, n)), ZERO)

    def is_zero(self) -> bool:
        return not self.entries

    def scaled(self, s) -> "Cochain":
        s = Fraction(s)
        if not s:
            return Cochain.zero(self.rack_size, self.degree)
        return Cochain(self.rack_size, self.degree,
                       {k: s * v for k, v in self.entries.items()})

    def add(self, other: "Cochain") -> "Cochain":
        entries = dict(self.entries)
        for k, v in other.entries.items():
            s = entries.get(k, ZERO) + v
            if s:
                entries[k] = s
            else:
                entries.pop(k, None)
        return Cochain(self.rack_size, self.degree, entries)

    def sub(self, other: "Cochain") -> "Cochain":
        return self.add(other.scaled(-1))

    def to_vector(self) -> Vec:
        """Flatten to a vector of length n^(2d), index encode(x)*n^d + encode(y)."""
        dim = self.rack_size ** self.degree
        return {xc * dim + yc: v for (yc, xc), v in self.entries.items()}

    @staticmethod
    def from_vector(n: int, degree: int, vec: Vec) -> "Cochain":
        dim = n ** degree
        entries = {}
        for idx, v in vec.items():
            if v:
                xc, yc = divmod(idx, dim)
                entries[(yc, xc)] = v
        return Cochain(n, degree, entries)

    def to_sparse_mat(self) -> SparseMat:
        dim = self.rack_size ** self.degree
        return SparseMat(dim, dim, dict(self.entries))

    def __eq__(self, other):
        if not isinstance(other, Cochain):
            return NotImplemented
        return (self.rack_size, self.degree) == (other.rack_size, other.degree) \
            and self.entries == other.entries

    def __hash__(self):
        return hash((self.rack_size, self.degree,
                     frozenset(self.entries.items())))


@functools.lru_cache(maxsize=None)
def _word_perm(rack: Rack, word: tuple[int, ...]) -> Perm:
    """Product of the right translations of word, applied left to right."""
    p = Perm.identity(rack.size)
    for y in word:
        p = p * rack.rho(y)
    return p


def _entry_terms(rack: Rack, i: int, u: tuple, v: tuple):
    """Where the (u -> v) entry of a degree-d cochain lands under d_i.

    Yields ((x_tuple, y_tuple), sign) over the 2n output positions.
    """
    n = rack.size
    head_u, tail_u = u[:i], u[i:]
    head_v, tail_v = v[:i], v[i:]
    wu = _word_perm(rack, tail_u)
    wv_inv = _word_perm(rack, tail_v).inverse()
    for a in range(n):
        b = wv_inv(wu(a))
        yield (head_u + (a,) + tail_u, head_v + (b,) + tail_v), 1
    for a in range(n):
        abar = rack.rho_inv(a)
        x = tuple(abar(t) for t in head_u) + (a,) + tail_u
        y = tuple(abar(t) for t in head_v) + (a,) + tail_v
        yield (x, y), -1


def coboundary_i(rack: Rack, f: Cochain, i: int) -> Cochain:
    """The i-th partial coboundary of f, a cochain of degree d+1."""
    d = f.degree
    if not 0 <= i <= d:
        raise IndexError(f"partial index {i} out of range 0..{d}")
    n = rack.size
    out: dict[tuple[int, int], Fraction] = {}
    for (yc, xc), val in f.entries.items():
        u = decode(xc, d, n)
        v = decode(yc, d, n)
        for (x, y), sign in _entry_terms(rack, i, u, v):
            key = (encode(y, n), encode(x, n))
            s = out.get(key, ZERO) + sign * val
            if s:
                out[key] = s
            else:
                out.pop(key, None)
    return Cochain(n, d + 1, out)


def coboundary(rack: Rack, f: Cochain) -> Cochain:
    """Alternating sum of the partial coboundaries."""
    out = Cochain.zero(rack.size, f.degree + 1)
    for i in range(f.degree + 1):
        term = coboundary_i(rack, f, i)
        out = out.add(term if i % 2 == 0 else term.scaled(-1))
    return out


def _check_matrix_size(rack: Rack, degree: int, entry_limit: int):
    if degree not in (1, 2, 3):
        raise ValueError("coboundary matrices support degrees 1..3")
    if rack.size ** (2 * (degree + 1)) > entry_limit:
        raise SizeOverflow(
            f"degree-{degree} coboundary matrix for size {rack.size} "
            f"exceeds the entry limit {entry_limit}")


def partial_coboundary_matrix(rack: Rack, degree: int, i: int,
                              entry_limit: int = DEFAULT_ENTRY_LIMIT) -> SparseMat:
    """Matrix of d_i on indicator cochains.

    Shape n^(2(d+1)) x n^(2d); column indices follow Cochain.to_vector.
    """
    _check_matrix_size(rack, degree, entry_limit)
    n = rack.size
    dim_in = n ** degree
    dim_out = n ** (degree + 1)
    entries: dict[tuple[int, int], Fraction] = {}
    for u in itertools.product(range(n), repeat=degree):
        for v in itertools.product(range(n), repeat=degree):
            col = encode(u, n) * dim_in + encode(v, n)
            for (x, y), sign in _entry_terms(rack, i, u, v):
                row = encode(x, n) * dim_out + encode(y, n)
                key = (row, col)
                s = entries.get(key, ZERO) + sign
                if s:
                    entries[key] = s
                else:
                    entries.pop(key, None)
    return SparseMat(dim_out ** 2, dim_in ** 2, entries)


def coboundary_matrix(rack: Rack, degree: int,
                      entry_limit: int = DEFAULT_ENTRY_LIMIT) -> SparseMat:
    """Matrix of the full coboundary in the indicator basis."""
    _check_matrix_size(rack, degree, entry_limit)
    out = None
    for i in range(degree + 1):
        m = partial_coboundary_matrix(rack, degree, i, entry_limit)
        if i % 2:
            m = m.scaled(-1)
        out = m if out is None else out.add(m)
    return out


def cocycle_space(rack: Rack, degree: int,
                  entry_limit: int = DEFAULT_ENTRY_LIMIT) -> Subspace:
    """Z^d: kernel of the degree-d coboundary matrix."""
    return linalg.kernel_basis(coboundary_matrix(rack, degree, entry_limit))


def coboundary_space(rack: Rack, degree: int,
                     entry_limit: int = DEFAULT_ENTRY_LIMIT) -> Subspace:
    """B^d: image of the degree-(d-1) coboundary matrix; B^1 = 0."""
    if degree == 1:
        return Subspace.zero(rack.size ** 2)
    return linalg.image_basis(coboundary_matrix(rack, degree - 1, entry_limit))


def is_entropic(rack: Rack, f: Cochain) -> bool:
    """True iff every partial coboundary of f vanishes."""
    return all(coboundary_i(rack, f, i).is_zero()
               for i in range(f.degree + 1))


@dataclass(frozen=True)
class EntropicBasis:
    """Orbit basis of the entropic cochains in a given degree.

    Each orbit is a tuple of quasi-diagonal index pairs (x_tuple, y_tuple),
    closed under the componentwise inner-automorphism action; the basis
    cochain of an orbit is its indicator function.  Orbits are sorted by
    their lexicographically least pair.
    """

    rack_size: int
    degree: int
    orbits: tuple[tuple[tuple[tuple[int, ...], tuple[int, ...]], ...], ...]

    @property
    def dim(self) -> int:
        return len(self.orbits)

    def cochains(self) -> list[Cochain]:
        return [Cochain.from_pairs(self.rack_size, self.degree,
                                   ((x, y, 1) for x, y in orbit))
                for orbit in self.orbits]

    def vectors(self) -> list[Vec]:
        return [c.to_vector() for c in self.cochains()]

    def subspace(self) -> Subspace:
        ambient = self.rack_size ** (2 * self.degree)
        return Subspace.from_vectors(ambient, self.vectors())

    def to_json(self) -> dict:
        return {"rack_size": self.rack_size, "degree": self.degree,
                "orbits": [[[list(x), list(y)] for x, y in orbit]
                           for orbit in self.orbits]}


@functools.lru_cache(maxsize=None)
def _slot_orbits(rack: Rack) -> tuple[tuple[tuple[int, int], ...], ...]:
    """Orbits of behaviourally-diagonal pairs under the diagonal
    inner action, each sorted, ordered by least pair."""
    ids = class_ids(rack)
    n = rack.size
    gens = {rack.rho(y) for y in range(n)}
    seen: set[tuple[int, int]] = set()
    orbits = []
    for x in range(n):
        for y in range(n):
            if ids[x] != ids[y] or (x, y) in seen:
                continue
            orbit = {(x, y)}
            frontier = [(x, y)]
            while frontier:
                (a, b) = frontier.pop()
                for g in gens:
                    img = (g(a), g(b))
                    if img not in orbit:
                        orbit.add(img)
                        frontier.append(img)
            seen |= orbit
            orbits.append(tuple(sorted(orbit)))
    return tuple(sorted(orbits, key=lambda o: o[0]))


def entropic_basis(rack: Rack, degree: int) -> EntropicBasis:
    """Orbit basis of E^d.

    The componentwise action factors through the slots, so degree-d
    orbits are products of single-slot orbits.
    """
    slots = _slot_orbits(rack)
    orbits = []
    for combo in itertools.product(range(len(slots)), repeat=degree):
        members = []
        for choice in itertools.product(*(slots[c] for c in combo)):
            x = tuple(p[0] for p in choice)
            y = tuple(p[1] for p in choice)
            members.append((x, y))
        orbits.append(tuple(sorted(members)))
    orbits.sort(key=lambda o: o[0])
    return EntropicBasis(rack.size, degree, tuple(orbits))


def symmetrize(rack: Rack, f: Cochain, group=None) -> Cochain:
    """Average of the diagonal inner-automorphism translates of f.

    (alpha f)<x -> y> = f<x^alpha -> y^alpha>, averaged over the full
    inner automorphism group.
    """
    if group is None:
        group = inner_group(rack)
    n = rack.size
    d = f.degree
    acc: dict[tuple[int, int], Fraction] = {}
    for alpha in group.elements:
        for (yc, xc), val in f.entries.items():
            u = decode(xc, d, n)
            v = decode(yc, d, n)
            x = tuple(alpha(t) for t in u)
            y = tuple(alpha(t) for t in v)
            key = (encode(y, n), encode(x, n))
            s = acc.get(key, ZERO) + val
            if s:
                acc[key] = s
            else:
                acc.pop(key, None)
    scale = Fraction(1, group.order)
    return Cochain(n, d, {k: scale * v for k, v in acc.items() if v})


@dataclass(frozen=True)
class H2Report:
    rack_size: int
    dim_c2: int
    dim_z2: int
    dim_b2: int
    dim_e2: int
    dim_h2: int
    decomposition_verified: bool

    def to_json(self) -> dict:
        return {"dimC2": self.dim_c2, "dimZ2": self.dim_z2,
                "dimB2": self.dim_b2, "dimE2": self.dim_e2,
                "dimH2": self.dim_h2,
                "verified": self.decomposition_verified}


def classify_h2(rack: Rack, size_limit: int = 8,
                entry_limit: int = DEFAULT_ENTRY_LIMIT) -> H2Report:
    """Dimensions of Z^2, B^2, E^2 and the direct-sum verification.

    Over the rationals the cocycles always split as the entropic part
    plus the coboundaries; decomposition_verified reports the exact
    linear-algebra confirmation on this rack.
    """
    if rack.size > size_limit:
        raise SizeOverflow(f"rack size {rack.size} exceeds limit {size_limit}")
    z2 = cocycle_space(rack, 2, entry_limit)
    b2 = coboundary_space(rack, 2, entry_limit)
    e2 = entropic_basis(rack, 2).subspace()
    dim_sum, dim_int = linalg.sum_and_intersection_dims(e2, b2)
    inside = all(z2.contains_vec(v) for v in e2.basis) \
        and all(z2.contains_vec(v) for v in b2.basis)
    verified = dim_int == 0 and dim_sum == z2.dim and inside
    return H2Report(rack_size=rack.size,
                    dim_c2=rack.size ** 4,
                    dim_z2=z2.dim,
                    dim_b2=b2.dim,
                    dim_e2=e2.dim,
                    dim_h2=z2.dim - b2.dim,
                    decomposition_verified=verified)


@dataclass(frozen=True)
class CocycleVerdict:
    ok: bool
    witness: tuple[int, int, int] | None = None

    def __bool__(self):
        return self.ok


def rack_cocycle_check(rack: Rack, alpha, modulus: int) -> CocycleVerdict:
    """Additive rack cocycle condition for a map Q x Q -> Z/modulus:

        a(x,y) + a(x^y,z) = a(x,z) + a(x^z,y^z)

    for all triples; the witness is the first failing (x,y,z).
    """
    if modulus < 1:
        raise ValueError("modulus must be >= 1")
    n = rack.size

    def val(x, y):
        return alpha[x][y]

    for x in range(n):
        for y in range(n):
            for z in range(n):
                lhs = val(x, y) + val(rack.op(x, y), z)
                rhs = val(x, z) + val(rack.op(x, z), rack.op(y, z))
                if (lhs - rhs) % modulus != 0:
                    return CocycleVerdict(False, (x, y, z))
    return CocycleVerdict(True)
