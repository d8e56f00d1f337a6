import itertools
import random
from fractions import Fraction

import pytest

from conftest import (CORPUS_RACKS, rand_cochain, rand_cocycle,
                      rand_rational_matrix)
from ybrack import linalg
from ybrack.cohomology import (Cochain, classify_h2, coboundary, coboundary_i,
                               coboundary_matrix, coboundary_space,
                               cocycle_space, decode, encode, entropic_basis,
                               is_entropic, partial_coboundary_matrix,
                               rack_cocycle_check, symmetrize)
from ybrack.linalg import SizeOverflow, SparseMat
from ybrack.racks import (dihedral_rack, inner_group,
                          square_reflection_quandle, tetrahedral_quandle,
                          trivial_rack)
from ybrack.truncpoly import PolyMat, TruncPoly
from ybrack.yangbaxter import YBOperator, build_cq, check_ybe

F = Fraction
SMALL = [dihedral_rack(3), square_reflection_quandle(), trivial_rack(3)]
SMALL_IDS = ["dihedral:3", "d4-reflections", "trivial:3"]


def naive_partial_coboundary(rack, f, i):
    """Independent oracle: evaluate the two-term index formula literally,
    looping over every output index pair."""
    n = rack.size
    d = f.degree
    out = {}
    for xs in itertools.product(range(n), repeat=d + 1):
        for ys in itertools.product(range(n), repeat=d + 1):
            val = F(0)
            # positive term: f without slot i, delta on the braided slot i
            if rack.act_word(xs[i], xs[i + 1:]) == rack.act_word(ys[i], ys[i + 1:]):
                val += f.get(xs[:i] + xs[i + 1:], ys[:i] + ys[i + 1:])
            # negative term: prefix slots translated by slot i, delta(x_i, y_i)
            if xs[i] == ys[i]:
                xp = tuple(rack.op(t, xs[i]) for t in xs[:i]) + xs[i + 1:]
                yp = tuple(rack.op(t, ys[i]) for t in ys[:i]) + ys[i + 1:]
                val -= f.get(xp, yp)
            if val:
                out[(encode(ys, n), encode(xs, n))] = val
    return Cochain(n, d + 1, out)


@pytest.mark.parametrize("rack", SMALL, ids=SMALL_IDS)
@pytest.mark.parametrize("degree", [1, 2])
def test_coboundary_i_matches_naive_oracle(rack, degree):
    rng = random.Random(101)
    f = rand_cochain(rack, degree, rng)
    for i in range(degree + 1):
        assert coboundary_i(rack, f, i) == naive_partial_coboundary(rack, f, i)


def operator_route_partial(rack, f, i):
    """Second oracle: conjugated tensor products of the operator itself,
    (c_d ... c_{i+1})^{-1} (f x I)(c_d ... c_{i+1})
    - (c_1 ... c_i)^{-1} (I x f)(c_1 ... c_i)."""
    n = rack.size
    d = f.degree
    k = d + 1
    dim = n ** k
    cq = build_cq(rack)

    def c_at(pos):
        m = PolyMat(dim, 1)
        base = n ** (k - 1 - pos)
        for e in range(dim):
            lo, pair, hi = e % base, (e // base) % (n * n), e // (base * n * n)
            for row, val in cq.mat.columns[pair].items():
                m.columns[e][(hi * n * n + row) * base + lo] = val
        return m

    def f_first():
        m = PolyMat(dim, 1)
        for (yc, xc), v in f.entries.items():
            for z in range(n):
                m.columns[xc * n + z][yc * n + z] = TruncPoly.const(v, 1)
        return m

    def f_last():
        m = PolyMat(dim, 1)
        dd = n ** d
        for (yc, xc), v in f.entries.items():
            for x in range(n):
                m.columns[x * dd + xc][x * dd + yc] = TruncPoly.const(v, 1)
        return m

    def prod(positions):
        m = PolyMat.identity(dim, 1)
        for p in positions:
            m = m.compose(c_at(p))
        return m

    a = prod(list(range(d, i, -1)))
    b = prod(list(range(1, i + 1)))
    t1 = a.inverse().compose(f_first()).compose(a)
    t2 = b.inverse().compose(f_last()).compose(b)
    return t1.sub(t2)


@pytest.mark.parametrize("rack", SMALL, ids=SMALL_IDS)
def test_coboundary_i_matches_operator_route(rack):
    rng = random.Random(102)
    for degree in (1, 2):
        f = rand_cochain(rack, degree, rng)
        for i in range(degree + 1):
            mine = coboundary_i(rack, f, i)
            want = operator_route_partial(rack, f, i)
            got = PolyMat(rack.size ** (degree + 1), 1)
            for (yc, xc), v in mine.entries.items():
                got.columns[xc][yc] = TruncPoly.const(v, 1)
            assert got == want


def test_trivial_rack_all_partials_vanish():
    rng = random.Random(103)
    rack = trivial_rack(3)
    for degree in (1, 2):
        f = rand_cochain(rack, degree, rng)
        for i in range(degree + 1):
            assert coboundary_i(rack, f, i).is_zero()
    assert coboundary_matrix(trivial_rack(2), 2) == SparseMat(64, 16, {})


def test_coboundary_linearity_and_zero():
    rng = random.Random(104)
    rack = dihedral_rack(3)
    assert coboundary(rack, Cochain.zero(3, 2)).is_zero()
    f, g = rand_cochain(rack, 1, rng), rand_cochain(rack, 1, rng)
    lhs = coboundary(rack, f.scaled(F(2, 3)).add(g.scaled(-5)))
    rhs = coboundary(rack, f).scaled(F(2, 3)).add(coboundary(rack, g).scaled(-5))
    assert lhs == rhs


def test_coboundary_squared_is_zero_on_cochains():
    rng = random.Random(105)
    for rack in SMALL:
        f = rand_cochain(rack, 1, rng)
        assert coboundary(rack, coboundary(rack, f)).is_zero()


def test_coboundary_index_bounds():
    f = Cochain.zero(3, 2)
    with pytest.raises(IndexError):
        coboundary_i(dihedral_rack(3), f, 3)


def test_coboundary_matrix_agrees_with_coboundary():
    rng = random.Random(106)
    for rack in SMALL:
        for degree in (1, 2):
            m = coboundary_matrix(rack, degree)
            f = rand_cochain(rack, degree, rng)
            assert m.apply(f.to_vector()) == coboundary(rack, f).to_vector()


def test_coboundary_matrix_shapes():
    m = coboundary_matrix(dihedral_rack(3), 1)
    assert (m.rows, m.cols) == (81, 9)
    m = coboundary_matrix(trivial_rack(2), 2)
    assert (m.rows, m.cols) == (64, 16)


def test_size_guard():
    with pytest.raises(SizeOverflow):
        coboundary_matrix(dihedral_rack(8), 3)
    with pytest.raises(ValueError):
        coboundary_matrix(dihedral_rack(3), 4)
    with pytest.raises(SizeOverflow):
        classify_h2(dihedral_rack(9), size_limit=8)


def test_degree_one_kernel_dimensions():
    # full coboundary: only the constant diagonal survives; the first
    # partial alone has the whole behaviourally-diagonal part as kernel
    r3 = dihedral_rack(3)
    assert linalg.kernel_basis(coboundary_matrix(r3, 1)).dim == 1
    assert linalg.kernel_basis(partial_coboundary_matrix(r3, 1, 0)).dim == 3
    # degree-1 cocycles coincide with the degree-1 entropic maps
    for rack in CORPUS_RACKS:
        z1 = linalg.kernel_basis(coboundary_matrix(rack, 1))
        assert z1 == entropic_basis(rack, 1).subspace()


def test_cocycle_and_coboundary_space_examples():
    assert cocycle_space(trivial_rack(2), 2).dim == 16
    assert coboundary_space(trivial_rack(2), 2).dim == 0
    r3 = dihedral_rack(3)
    assert cocycle_space(r3, 2).dim == coboundary_space(r3, 2).dim + 1
    d4 = square_reflection_quandle()
    assert cocycle_space(d4, 2).dim - coboundary_space(d4, 2).dim == 16
    assert coboundary_space(r3, 1).dim == 0


# -- entropic maps -----------------------------------------------------------

def test_identity_cochain_is_entropic():
    for rack in SMALL:
        assert is_entropic(rack, Cochain.identity(rack.size, 2))


def test_everything_entropic_on_trivial_rack():
    rng = random.Random(107)
    rack = trivial_rack(4)
    for _ in range(5):
        assert is_entropic(rack, rand_cochain(rack, 2, rng))


def test_non_quasidiagonal_fails():
    rack = dihedral_rack(3)
    f = Cochain.from_pairs(3, 2, [(((0, 0)), ((0, 1)), 1)])
    assert not is_entropic(rack, f)


def test_entropic_basis_counts():
    assert entropic_basis(trivial_rack(2), 2).dim == 16
    assert entropic_basis(trivial_rack(3), 2).dim == 81
    assert entropic_basis(dihedral_rack(3), 2).dim == 1
    assert entropic_basis(square_reflection_quandle(), 2).dim == 16
    assert entropic_basis(dihedral_rack(6), 2).dim == 16
    assert entropic_basis(tetrahedral_quandle(), 2).dim == 1


def test_entropic_basis_orbits_are_disjoint_quasidiagonal_and_closed():
    from ybrack.racks import class_ids
    for rack in [square_reflection_quandle(), dihedral_rack(6)]:
        basis = entropic_basis(rack, 2)
        ids = class_ids(rack)
        seen = set()
        group = inner_group(rack)
        for orbit in basis.orbits:
            for x, y in orbit:
                assert (x, y) not in seen
                seen.add((x, y))
                assert all(ids[a] == ids[b] for a, b in zip(x, y))
            oset = set(orbit)
            for alpha in group.generators:
                for beta in group.generators:
                    for x, y in orbit:
                        moved = ((alpha(x[0]), beta(x[1])),
                                 (alpha(y[0]), beta(y[1])))
                        assert moved in oset


def test_entropic_agreement_span_vs_partials():
    rng = random.Random(108)
    for rack in SMALL:
        basis = entropic_basis(rack, 2)
        span = basis.subspace()
        for c in basis.cochains():
            assert is_entropic(rack, c)
        for _ in range(6):
            f = rand_cochain(rack, 2, rng)
            assert is_entropic(rack, f) == span.contains_vec(f.to_vector())
        # a guaranteed member of the span
        combo = Cochain.zero(rack.size, 2)
        for c in basis.cochains():
            combo = combo.add(c.scaled(F(rng.randint(1, 5))))
        assert is_entropic(rack, combo)


def test_entropic_cochains_are_cocycles():
    for rack in SMALL + [dihedral_rack(6)]:
        for c in entropic_basis(rack, 2).cochains():
            assert coboundary(rack, c).is_zero()


# -- symmetrization -----------------------------------------------------------

def test_symmetrize_idempotent_and_fixes_equivariant():
    rng = random.Random(109)
    for rack in SMALL:
        f = rand_cochain(rack, 2, rng)
        s = symmetrize(rack, f)
        assert symmetrize(rack, s) == s
    d4 = square_reflection_quandle()
    for c in entropic_basis(d4, 2).cochains():
        assert symmetrize(d4, c) == c


def test_symmetrize_trivial_rack_is_identity_map():
    rng = random.Random(110)
    rack = trivial_rack(3)
    f = rand_cochain(rack, 2, rng)
    assert symmetrize(rack, f) == f


def test_symmetrize_difference_is_coboundary_for_cocycles():
    rng = random.Random(111)
    for rack in SMALL:
        b2 = coboundary_space(rack, 2)
        z2 = cocycle_space(rack, 2)
        for _ in range(4):
            f = rand_cocycle(rack, rng, z2)
            diff = f.sub(symmetrize(rack, f))
            assert b2.contains_vec(diff.to_vector())


# -- degree-2 classification ---------------------------------------------------

def test_classify_h2_examples():
    rep = classify_h2(dihedral_rack(3))
    assert (rep.dim_e2, rep.dim_h2) == (1, 1)
    assert rep.decomposition_verified
    rep = classify_h2(square_reflection_quandle())
    assert (rep.dim_e2, rep.dim_h2) == (16, 16)
    assert rep.decomposition_verified
    rep = classify_h2(trivial_rack(2))
    assert (rep.dim_z2, rep.dim_b2, rep.dim_e2) == (16, 0, 16)
    assert rep.decomposition_verified


def test_classify_h2_json_fields():
    data = classify_h2(dihedral_rack(3)).to_json()
    assert set(data) == {"dimC2", "dimZ2", "dimB2", "dimE2", "dimH2",
                         "verified"}


# -- infinitesimal correspondence ----------------------------------------------

def perturbed_operator(rack, f):
    n = rack.size
    cq = build_cq(rack, trunc=2)
    pert = PolyMat.identity(n * n, 2).add(
        PolyMat.from_rational(f.to_sparse_mat(), 2, h_degree=1))
    return YBOperator(n, cq.mat.compose(pert))


def test_infinitesimal_correspondence_both_directions():
    rng = random.Random(112)
    for rack in SMALL:
        z2 = cocycle_space(rack, 2)
        for _ in range(3):
            f = rand_cochain(rack, 2, rng)
            ok = check_ybe(perturbed_operator(rack, f)).ok
            assert ok == coboundary(rack, f).is_zero()
            g = rand_cocycle(rack, rng, z2)
            assert coboundary(rack, g).is_zero()
            assert check_ybe(perturbed_operator(rack, g)).ok


def test_conjugation_realizes_coboundary_perturbation():
    rng = random.Random(113)
    for rack in SMALL:
        n = rack.size
        g = rand_rational_matrix(n, rng)
        beta = PolyMat.identity(n, 2).add(PolyMat.from_rational(g, 2, 1))
        bb = beta.tensor(beta)
        cq = build_cq(rack, trunc=2).mat
        lhs = bb.compose(cq).compose(bb.inverse())
        d1g = coboundary(rack, Cochain(n, 1, dict(g.entries)))
        rhs = cq.compose(PolyMat.identity(n * n, 2).add(
            PolyMat.from_rational(d1g.to_sparse_mat(), 2, 1)))
        assert lhs == rhs


# -- additive rack cocycles -----------------------------------------------------

def test_rack_cocycle_zero_map():
    rack = dihedral_rack(3)
    zero = [[0] * 3 for _ in range(3)]
    assert rack_cocycle_check(rack, zero, 3).ok


def test_rack_cocycle_trivial_rack_always_true():
    rng = random.Random(114)
    rack = trivial_rack(4)
    for _ in range(5):
        alpha = [[rng.randrange(5) for _ in range(4)] for _ in range(4)]
        assert rack_cocycle_check(rack, alpha, 5).ok


def test_rack_cocycle_checker_matches_brute_force():
    rng = random.Random(115)
    rack = dihedral_rack(3)
    hits = {True: 0, False: 0}
    for _ in range(40):
        alpha = [[rng.randrange(3) for _ in range(3)] for _ in range(3)]
        verdict = rack_cocycle_check(rack, alpha, 3)
        holds = all(
            (alpha[x][y] + alpha[rack.op(x, y)][z]
             - alpha[x][z] - alpha[rack.op(x, z)][rack.op(y, z)]) % 3 == 0
            for x in range(3) for y in range(3) for z in range(3))
        assert verdict.ok == holds
        if not verdict.ok:
            x, y, z = verdict.witness
            assert (alpha[x][y] + alpha[rack.op(x, y)][z]
                    - alpha[x][z]
                    - alpha[rack.op(x, z)][rack.op(y, z)]) % 3 != 0
        hits[verdict.ok] += 1
    assert hits[False] > 0  # random maps do produce counterexamples


def test_rack_cocycle_modulus_validation():
    with pytest.raises(ValueError):
        rack_cocycle_check(dihedral_rack(3), [[0] * 3] * 3, 0)


def test_encode_decode_round_trip():
    for tup in itertools.product(range(4), repeat=3):
        assert decode(encode(tup, 4), 3, 4) == tup


def test_degree_three_coboundary_within_guard():
    from ybrack.racks import validate_rack
    # the two-element rack with swapping translations exercises degree 3
    swap_rack = validate_rack([[1, 1], [0, 0]])
    assert not swap_rack.is_quandle
    m3 = coboundary_matrix(swap_rack, 3)
    m2 = coboundary_matrix(swap_rack, 2)
    assert (m3.rows, m3.cols) == (256, 64)
    assert m3.matmul(m2).is_zero()


def test_composite_boundary_vanishes_one_degree_up():
    for rack in [dihedral_rack(3), trivial_rack(3)]:
        m3 = coboundary_matrix(rack, 3)
        m2 = coboundary_matrix(rack, 2)
        assert m3.matmul(m2).is_zero()


def test_symmetrize_fixes_degree_one_cocycles():
    # no degree-1 coboundaries exist, so averaging must fix every cocycle
    for rack in SMALL:
        z1 = linalg.kernel_basis(coboundary_matrix(rack, 1))
        for vec in z1.basis:
            f = Cochain.from_vector(rack.size, 1, dict(vec))
            assert symmetrize(rack, f) == f


def test_size_eight_degree_two_matrix_within_contract():
    # the largest admitted size: ~260k x 4k, built sparsely
    rack = dihedral_rack(8)
    rng = random.Random(116)
    m = coboundary_matrix(rack, 2)
    assert (m.rows, m.cols) == (262144, 4096)
    f = rand_cochain(rack, 2, rng, nnz=20)
    assert m.apply(f.to_vector()) == coboundary(rack, f).to_vector()
