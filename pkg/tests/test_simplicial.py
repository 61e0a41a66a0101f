import itertools
import random

import pytest

from seqop.combinatorics import enumerate_basis
from seqop.operad import OperadElement, act, compose, differential
from seqop.simplicial import (
    Chain,
    Cochain,
    NotACocycleError,
    SimplicialComplex,
    TensorChain,
    boundary,
    coaction,
    coboundary,
    cup,
    cup_i,
    dual_cochain,
    endomorphism_differential,
    evaluate,
    is_mod2_coboundary,
    mod2_cohomologous,
    mod2_cohomology_basis,
    nested_evaluate,
    oracle_equal,
    permuted_evaluate,
    projective_plane,
    standard_simplex,
    steenrod_square,
)

D3 = standard_simplex(3)
D4 = standard_simplex(4)


def dense(complex, dim, rng):
    return Cochain(complex, dim, {s: rng.randint(-3, 3) for s in complex.faces(dim)})


class TestComplex:
    def test_downward_closure(self):
        K = SimplicialComplex.from_simplices([(0, 1, 2)])
        assert K.has((0, 1)) and K.has((2,)) and not K.has((0, 3))
        assert K.dim == 2

    def test_rejects_unsorted(self):
        with pytest.raises(ValueError):
            SimplicialComplex.from_simplices([(1, 0)])

    def test_projective_plane_combinatorics(self):
        rp2 = projective_plane()
        v, e, f = len(rp2.faces(0)), len(rp2.faces(1)), len(rp2.faces(2))
        assert (v, e, f) == (6, 15, 10)
        assert v - e + f == 1  # Euler characteristic
        edge_count = {}
        for tri in rp2.faces(2):
            for pair in itertools.combinations(tri, 2):
                edge_count[pair] = edge_count.get(pair, 0) + 1
        assert all(c == 2 for c in edge_count.values())

    def test_json_roundtrip(self):
        rp2 = projective_plane()
        assert SimplicialComplex.from_json(rp2.to_json()) == rp2


class TestBoundaryCoboundary:
    def test_edge_boundary(self):
        c = Chain(D3, 1, {(0, 1): 1})
        assert boundary(c) == Chain(D3, 0, {(1,): 1, (0,): -1})

    def test_coboundary_of_vertex_cochain(self):
        x = Cochain(D3, 0, {(0,): 5, (1,): 2})
        assert coboundary(x).value((0, 1)) == -(2 - 5)

    def test_dd_and_classical_relation(self):
        rng = random.Random(0)
        for p in (0, 1, 2):
            x = dense(D3, p, rng)
            assert coboundary(coboundary(x)).is_zero()
            c = Chain(D3, p + 2, {s: rng.randint(-2, 2) for s in D3.faces(p + 2)})
            assert boundary(boundary(c)).is_zero()


class TestCoaction:
    def test_unit_word(self):
        t = coaction(D3, (0, 2, 3), (1,))
        assert t == TensorChain(D3, 1, {((0, 2, 3),): 1})

    def test_front_back_faces(self):
        K = standard_simplex(1)
        t = coaction(K, (0, 1), (1, 2))
        assert t.coeffs == {((0,), (0, 1)): 1, ((0, 1), (1,)): 1}

    def test_three_piece_word_on_edge(self):
        K = standard_simplex(1)
        t = coaction(K, (0, 1), (1, 2, 1))
        assert t.coeffs == {((0, 1), (0, 1)): -1}

    def test_linear_extension_degenerates_drop(self):
        # every term for an adjacent-equal word repeats a vertex
        t = coaction(D3, (0, 1, 2), (1, 1, 2))
        assert t.is_zero()


class TestEvaluate:
    def test_unit(self):
        rng = random.Random(1)
        for p in (0, 1, 2):
            x = dense(D3, p, rng)
            assert evaluate(OperadElement.unit(), [x]) == x

    def test_cup_vs_classical(self):
        rng = random.Random(2)
        for px, py in ((0, 0), (0, 1), (1, 1), (1, 2), (2, 1)):
            x, y = dense(D3, px, rng), dense(D3, py, rng)
            got = cup(x, y)
            q = px + py
            classical = {}
            for s in D3.faces(q):
                v = x.value(s[: px + 1]) * y.value(s[px:])
                if v:
                    classical[s] = v
            assert got == (-1) ** (px * py) * Cochain(D3, q, classical)

    def test_degree_mismatch_is_zero(self):
        x = dual_cochain(D3, (0, 1))
        y = dual_cochain(D3, (2,))
        e = OperadElement.basis((1, 2, 1))  # lowers degree by 1
        assert evaluate(e, [y, y]).is_zero()
        assert evaluate(e, [x, y]).dim == 0

    def test_cup_leibniz(self):
        rng = random.Random(3)
        for px, py in ((0, 1), (1, 1), (1, 2)):
            x, y = dense(D4, px, rng), dense(D4, py, rng)
            lhs = coboundary(cup(x, y))
            rhs = cup(coboundary(x), y) + (-1) ** px * cup(x, coboundary(y))
            assert lhs == rhs

    def test_cup1_symmetrization(self):
        rng = random.Random(4)
        x, y = dense(D4, 1, rng), dense(D4, 2, rng)
        e = OperadElement.basis((1, 2, 1))
        lhs = evaluate(differential(e), [x, y])
        rhs = evaluate(OperadElement.basis((2, 1)) - OperadElement.basis((1, 2)), [x, y])
        assert lhs == rhs


class TestCupI:
    def test_cup0_is_cup(self):
        rng = random.Random(5)
        x, y = dense(D3, 1, rng), dense(D3, 1, rng)
        assert cup_i(x, y, 0) == cup(x, y)

    def test_vanishes_above_min_degree(self):
        rng = random.Random(6)
        x, y = dense(D4, 1, rng), dense(D4, 2, rng)
        assert cup_i(x, y, 2).is_zero()
        assert cup_i(x, y, 3).is_zero()

    def test_negative_i_rejected(self):
        x = dual_cochain(D3, (0,))
        with pytest.raises(ValueError):
            cup_i(x, x, -1)


class TestSteenrod:
    def test_top_square_is_cup_square(self):
        rp2 = projective_plane()
        x = mod2_cohomology_basis(rp2, 1)[0]
        assert steenrod_square(x, 1) == cup(x, x).reduce_mod2()

    def test_requires_cocycle(self):
        x = dual_cochain(D3, (0, 1))
        with pytest.raises(NotACocycleError):
            steenrod_square(x, 0)

    def test_projective_plane_generators(self):
        rp2 = projective_plane()
        assert len(mod2_cohomology_basis(rp2, 0)) == 1
        assert len(mod2_cohomology_basis(rp2, 1)) == 1
        assert len(mod2_cohomology_basis(rp2, 2)) == 1

    def test_sq1_is_nonzero_on_projective_plane(self):
        rp2 = projective_plane()
        x = mod2_cohomology_basis(rp2, 1)[0]
        sq1 = steenrod_square(x, 1)
        assert not is_mod2_coboundary(sq1)
        assert mod2_cohomologous(sq1, mod2_cohomology_basis(rp2, 2)[0])

    def test_sq0_is_identity_on_classes(self):
        rp2 = projective_plane()
        x = mod2_cohomology_basis(rp2, 1)[0]
        assert mod2_cohomologous(steenrod_square(x, 0), x)


class TestOracles:
    def test_oracle_equal_examples(self):
        e = OperadElement.basis((1, 2, 3, 1, 2))
        assert oracle_equal(differential(e), differential(e))
        composed = compose(OperadElement.basis((1, 2)), [OperadElement.basis((1, 2)), OperadElement.unit()])
        assert oracle_equal(OperadElement.basis((1, 2, 3)), composed)
        assert not oracle_equal(OperadElement.basis((1, 2)), OperadElement.basis((2, 1)))

    def test_differential_oracle_exhaustive_small(self):
        rng = random.Random(7)
        for k in (1, 2):
            for d in range(0, 3):
                for f in enumerate_basis(k, d):
                    e = OperadElement.basis(f.entries, k)
                    dims = [rng.choice((0, 1)) for _ in range(k)]
                    K = standard_simplex(max(sum(dims), 1))
                    xs = [dense(K, p, rng) for p in dims]
                    assert evaluate(differential(e), xs) == endomorphism_differential(e, xs)

    def test_differential_oracle_arity_three_sweep(self):
        # one random degree tuple per basis word through length 5
        rng = random.Random(17)
        for d in range(0, 3):
            for f in enumerate_basis(3, d):
                e = OperadElement.basis(f.entries, 3)
                dims = [rng.choice((0, 1, 2)) for _ in range(3)]
                K = standard_simplex(max(sum(dims), 1))
                xs = [dense(K, p, rng) for p in dims]
                assert evaluate(differential(e), xs) == endomorphism_differential(e, xs)

    def test_permutation_oracle(self):
        rng = random.Random(8)
        hits = 0
        for _ in range(60):
            k = rng.choice((2, 3))
            d = rng.choice((0, 1, 2))
            f = rng.choice(enumerate_basis(k, d))
            e = OperadElement.basis(f.entries, k)
            rho = tuple(rng.sample(range(1, k + 1), k))
            dims = [rng.choice((0, 1, 2)) for _ in range(k)]
            K = standard_simplex(max(sum(dims), 1))
            xs = [dense(K, p, rng) for p in dims]
            lhs = evaluate(act(e, rho), xs)
            assert lhs == permuted_evaluate(e, rho, xs)
            hits += 0 if lhs.is_zero() else 1
        assert hits > 10

    def test_composition_oracle(self):
        rng = random.Random(9)
        hits = 0
        for _ in range(40):
            k = rng.choice((1, 2))
            f = rng.choice(enumerate_basis(k, rng.choice((0, 1)) if k > 1 else 0))
            e = OperadElement.basis(f.entries, k)
            inner = []
            for _ in range(k):
                kg = rng.choice((1, 2))
                dg = rng.choice((0, 1)) if kg > 1 else 0
                inner.append(OperadElement.basis(rng.choice(enumerate_basis(kg, dg)).entries, kg))
            n = sum(g.arity for g in inner)
            dims = [rng.choice((0, 1)) for _ in range(n)]
            K = standard_simplex(max(sum(dims), 1))
            xs = [dense(K, p, rng) for p in dims]
            lhs = evaluate(compose(e, inner), xs)
            assert lhs == nested_evaluate(e, inner, xs)
            hits += 0 if lhs.is_zero() else 1
        assert hits > 5
