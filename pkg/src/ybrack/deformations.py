"""Entropic deformation families, the r-matrix criterion, and the
normalization of deformations over truncated polynomial rings.

A deformation family over a rack assigns one coefficient in Q[h]/(h^N)
to each orbit of the degree-2 entropic basis; assembling gives the
operator c_Q (II + f(lambda)).  Such entropic deformations satisfy the
Yang-Baxter equation exactly when the deformation term is an r-matrix,
i.e. when the same perturbation of the plain transposition does.

normalize_to_entropic takes any Yang-Baxter deformation of c_Q over
Q[h]/(h^N) and conjugates it, degree by degree, into an entropic one:
at each h-degree the deformation term splits (uniquely, over the
rationals) into an entropic part plus a coboundary, and conjugating by
I + h^k g removes the coboundary part without touching lower degrees.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import linalg, reference
from .cohomology import (Cochain, EntropicBasis, coboundary_matrix,
                         entropic_basis, is_entropic)
from .linalg import SparseMat, Vec
from .racks import Rack, square_reflection_quandle
from .truncpoly import PolyMat, TruncPoly
from .yangbaxter import YBOperator, YbeVerdict, build_cq, build_tau, \
    check_ybe, trace_power


class NotInvertibleError(ValueError):
    """The assembled or supplied operator is singular."""


class NotEntropicError(ValueError):
    """A map required to be entropic is not."""


class NotADeformationError(ValueError):
    """Input operator is not congruent to the rack operator mod h."""


class DecompositionError(RuntimeError):
    """The cocycle = entropic + coboundary split failed.  Over the
    rationals this cannot happen for a Yang-Baxter deformation; it
    indicates an implementation bug and is never silently ignored."""


@dataclass(frozen=True)
class DeformationFamily:
    """One truncated-polynomial coefficient per entropic orbit."""

    rack: Rack
    basis: EntropicBasis
    parameters: tuple[TruncPoly, ...]

    def __post_init__(self):
        if self.basis.degree != 2 or self.basis.rack_size != self.rack.size:
            raise ValueError("family needs the rack's degree-2 orbit basis")
        if len(self.parameters) != self.basis.dim:
            raise ValueError(
                f"expected {self.basis.dim} parameters, "
                f"got {len(self.parameters)}")
        orders = {p.order for p in self.parameters}
        if len(orders) > 1:
            raise ValueError("parameters must share one truncation order")

    @staticmethod
    def from_values(rack: Rack, values, trunc: int | None = None
                    ) -> "DeformationFamily":
        """values: rationals or TruncPolys, one per orbit."""
        basis = entropic_basis(rack, 2)
        params = []
        for v in values:
            if isinstance(v, TruncPoly):
                params.append(v if trunc is None else v.lift(trunc))
            else:
                params.append(TruncPoly.const(v, trunc or 1))
        return DeformationFamily(rack, basis, tuple(params))

    @property
    def trunc(self) -> int:
        return self.parameters[0].order if self.parameters else 1

    def perturbation(self) -> PolyMat:
        """f(lambda) = sum of lambda_k times the orbit indicators."""
        n = self.rack.size
        out = PolyMat(n * n, self.trunc)
        for lam, cochain in zip(self.parameters, self.basis.cochains()):
            if lam.is_zero():
                continue
            for (row, col), v in cochain.entries.items():
                cur = out.columns[col].get(row)
                term = lam * v
                term = term if cur is None else cur + term
                if term.is_zero():
                    out.columns[col].pop(row, None)
                else:
                    out.columns[col][row] = term
        return out


def assemble(fam: DeformationFamily) -> YBOperator:
    """The operator c_Q (II + f(lambda)) over the family's ring."""
    n = fam.rack.size
    trunc = fam.trunc
    pert = PolyMat.identity(n * n, trunc).add(fam.perturbation())
    if linalg.rank(pert.constant) != n * n:
        raise NotInvertibleError(
            "II + f(lambda) is singular; some constant term of lambda "
            "makes the deformation non-invertible")
    return YBOperator(n, build_cq(fam.rack, trunc).mat.compose(pert))


def ybe_deformed(fam: DeformationFamily) -> YbeVerdict:
    """Yang-Baxter check of the assembled family member."""
    return check_ybe(assemble(fam))


@dataclass(frozen=True)
class TraceCheck:
    computed: TruncPoly
    expected: TruncPoly

    @property
    def ok(self) -> bool:
        return self.computed == self.expected

    def __bool__(self):
        return self.ok


def trace_square_formula(fam: DeformationFamily) -> TraceCheck:
    """Trace of the squared family member against the closed form
    for the square-reflection quandle:

        4(l1+1)^2 + 4 l4^2 + 4(l13+1)^2 + 4 l16^2
        + 8(l6+1) l11 + 8(l10+1) l7 + 8 l2 l3 + 8 l14 l15
        + 8 l5 l9 + 8 l8 l12

    where l1..l16 follow the tabulated pattern numbering; the frozen
    orbit dictionary translates this package's orbit order to it.
    """
    if fam.rack.table != square_reflection_quandle().table:
        raise ValueError("the closed trace form is specific to the "
                         "square-reflection quandle")
    computed = trace_power(assemble(fam), 2)
    lam = {reference.ORBIT_TO_LAMBDA[k]: p
           for k, p in enumerate(fam.parameters)}
    one = TruncPoly.one(fam.trunc)

    def sq(p):
        return p * p

    expected = (sq(lam[1] + one) * 4 + sq(lam[4]) * 4
                + sq(lam[13] + one) * 4 + sq(lam[16]) * 4
                + (lam[6] + one) * lam[11] * 8
                + (lam[10] + one) * lam[7] * 8
                + lam[2] * lam[3] * 8
                + lam[14] * lam[15] * 8
                + lam[5] * lam[9] * 8
                + lam[8] * lam[12] * 8)
    return TraceCheck(computed, expected)


def poly_mat_is_entropic(rack: Rack, f: PolyMat) -> bool:
    """A matrix over Q[h]/(h^N) is entropic iff each h-coefficient is."""
    return all(
        is_entropic(rack, Cochain(rack.size, 2,
                                  dict(f.coefficient_matrix(k).entries)))
        for k in range(f.order))


@dataclass(frozen=True)
class RMatrixReport:
    """Yang-Baxter verdicts for c_Q f and tau f with the same entropic f;
    the two always agree."""

    cq_verdict: YbeVerdict
    tau_verdict: YbeVerdict

    @property
    def agree(self) -> bool:
        return self.cq_verdict.ok == self.tau_verdict.ok


def rmatrix_equivalence(rack: Rack, f: PolyMat) -> RMatrixReport:
    """Check c_Q f and tau f against the Yang-Baxter equation.

    f must be an invertible entropic map on the tensor square.
    """
    n = rack.size
    if f.dim != n * n:
        raise linalg.DimensionMismatch("map must act on the tensor square")
    if not poly_mat_is_entropic(rack, f):
        raise NotEntropicError("deformation term is not entropic")
    if linalg.rank(f.constant) != n * n:
        raise NotInvertibleError("entropic map is singular")
    cq = build_cq(rack, f.order)
    tau = build_tau(n, f.order)
    return RMatrixReport(
        cq_verdict=check_ybe(YBOperator(n, cq.mat.compose(f))),
        tau_verdict=check_ybe(YBOperator(n, tau.mat.compose(f))))


@dataclass(frozen=True)
class Equivalence:
    """Basis change alpha with alpha == I mod h; acts on operators by
    c -> (alpha tensor alpha)^{-1} c (alpha tensor alpha)."""

    mat: PolyMat

    def __post_init__(self):
        if self.mat.constant != SparseMat.identity(self.mat.dim):
            raise ValueError("equivalence must be the identity mod h")

    @property
    def dim(self) -> int:
        return self.mat.dim

    def tensor_square(self) -> PolyMat:
        return self.mat.tensor(self.mat)

    def conjugate(self, op: YBOperator) -> YBOperator:
        tt = self.tensor_square()
        return YBOperator(op.rack_size,
                          tt.inverse().compose(op.mat).compose(tt))


def _deformation_term(op: YBOperator, cq: YBOperator) -> PolyMat:
    """f with op = c_Q (II + f)."""
    return cq.mat.inverse().compose(op.mat) \
        .sub(PolyMat.identity(op.dim, op.trunc))


def normalize_to_entropic(op: YBOperator, rack: Rack,
                          check_input: bool = True
                          ) -> tuple[Equivalence, YBOperator]:
    """Conjugate a Yang-Baxter deformation of c_Q into entropic form.

    Walks the h-degrees 1..N-1: the degree-k term of the deformation is
    split as entropic + coboundary by solving the echelonized linear
    system against the orbit indicators and the degree-1 coboundary
    matrix, and the coboundary part is removed by conjugating with
    I + h^k g.  Lower degrees are never disturbed.  Returns (alpha, c')
    with c' = (alpha x alpha)^{-1} op (alpha x alpha) and c_Q^{-1} c'
    entropic in every h-degree.
    """
    n = rack.size
    order = op.trunc
    cq = build_cq(rack, order)
    if op.mat.constant != cq.mat.constant:
        raise NotADeformationError(
            "constant term differs from the rack operator")
    if check_input:
        verdict = check_ybe(op)
        if not verdict.ok:
            raise ValueError(
                f"input fails the Yang-Baxter equation at triple "
                f"{verdict.witness}")

    basis = entropic_basis(rack, 2)
    ind_vectors = [c.to_vector() for c in basis.cochains()]
    d1 = coboundary_matrix(rack, 1)
    # columns: entropic indicators first, then the coboundary image
    ncols = len(ind_vectors) + d1.cols
    entries: dict[tuple[int, int], Fraction] = {}
    for j, vec in enumerate(ind_vectors):
        for i, v in vec.items():
            entries[(i, j)] = v
    for (i, j), v in d1.entries.items():
        entries[(i, len(ind_vectors) + j)] = v
    system = SparseMat(n ** 4, ncols, entries)

    alpha = PolyMat.identity(n, order)
    current = op
    for k in range(1, order):
        f = _deformation_term(current, cq)
        e_k = Cochain(n, 2, dict(f.coefficient_matrix(k).entries))
        if is_entropic(rack, e_k):
            continue
        solution = linalg.solve(system, e_k.to_vector())
        if solution is None:
            raise DecompositionError(
                f"degree-{k} term is not entropic + coboundary")
        g_vec: Vec = {}
        for idx, v in solution.items():
            if idx >= len(ind_vectors):
                g_vec[idx - len(ind_vectors)] = v
        g = Cochain.from_vector(n, 1, g_vec).to_sparse_mat()
        step = PolyMat.identity(n, order).add(
            PolyMat.from_rational(g, order, h_degree=k))
        tt = step.tensor(step)
        current = YBOperator(n, tt.inverse().compose(current.mat).compose(tt))
        alpha = alpha.compose(step)
        residual = Cochain(
            n, 2,
            dict(_deformation_term(current, cq).coefficient_matrix(k).entries))
        if not is_entropic(rack, residual):
            raise DecompositionError(
                f"degree-{k} residual failed to become entropic")
    return Equivalence(alpha), current
