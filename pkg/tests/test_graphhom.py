import random
from fractions import Fraction
from itertools import permutations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hkrr.arith import QMatrix, bernoulli, modified_bernoulli
from hkrr.graphhom import (
    DegreeCapExceeded,
    Diagram,
    GlueError,
    GraphVector,
    MalformedDiagram,
    QuotientBasis,
    Sym3Poly,
    canonicalize,
    check_ell_and_partial,
    check_power_rule,
    check_scp_and_partial,
    diagram_from_key,
    disjoint_union,
    double_wheel,
    ell,
    enumerate_keys,
    equal_mod_ihx,
    from_flags,
    glue,
    glue_pairs,
    ihx_relations,
    is_zero_mod_ihx,
    key_bidegree,
    key_from_str,
    key_to_str,
    lemma_bernoulli_defect,
    omega_mu,
    p_map,
    pairing,
    partial,
    partial_bilinear,
    quotient_basis,
    reduce_vector,
    theta,
    union,
    verify_omega_eigen,
    wheel,
)
from hkrr.graphhom.diagram import LEG
from hkrr.graphhom.quotient import cache_path
from hkrr.graphhom.wheels import double_wheel_diagram, wheel_diagram

F = Fraction


def vec(d: Diagram) -> GraphVector:
    return GraphVector.from_diagram(d)


def relabel_vertices(d: Diagram, perm, rotations) -> Diagram:
    """Move vertex v to perm[v] and rotate its flags cyclically."""
    pos = [0] * len(d.partner)
    for v in range(d.trivalent):
        r = rotations[v]
        for k in range(3):
            pos[3 * v + k] = 3 * perm[v] + (k + r) % 3
    return d.relabel(pos)


def sample_diagrams():
    out = [wheel_diagram(m) for m in (2, 4, 6)]
    out += [double_wheel_diagram(i, j) for i, j in [(0, 0), (1, 1), (0, 2), (1, 3), (2, 2)]]
    for u, t in [(2, 4), (0, 6), (4, 6)]:
        out += [diagram_from_key(k) for k in quotient_basis(u, t).basis]
    return out


SAMPLES = sample_diagrams()


# --- diagrams and canonical forms ----------------------------------------

def test_ell_canonical():
    assert canonicalize(Diagram(1, ())) == ((1, 0, (), ()), 1)


def test_malformed_rejected():
    with pytest.raises(MalformedDiagram):
        Diagram(0, (1, 0))
    with pytest.raises(MalformedDiagram):
        Diagram(0, (1, 2, 0))
    with pytest.raises(MalformedDiagram):
        from_flags([(0, 1)], [(0, 1)])
    with pytest.raises(MalformedDiagram):
        from_flags([(0, 1, 2), (3,)], [(0, 3)])


def test_from_flags_roundtrip():
    for d in SAMPLES[:6]:
        vertices, edges = d.to_flags()
        assert canonicalize(from_flags(vertices, edges)) == canonicalize(d)


def test_from_flags_arbitrary_labels():
    # theta drawn by hand with string flags
    v = [("a", "b", "c"), ("x", "z", "y")]
    e = [("a", "x"), ("b", "y"), ("c", "z")]
    assert vec(from_flags(v, e)) == theta()


def test_self_loop_and_double_leg_vanish():
    loop = Diagram(0, (LEG, 2, 1))
    assert canonicalize(loop)[1] == 0
    double_leg = Diagram(0, (LEG, LEG, 5, LEG, LEG, 2))
    assert canonicalize(double_leg)[1] == 0


@pytest.mark.parametrize("d", SAMPLES, ids=lambda d: key_to_str(canonicalize(d)[0]))
def test_flip_each_vertex_negates(d):
    key, sign = canonicalize(d)
    for v in range(d.trivalent):
        assert canonicalize(d.flip(v)) == (key, -sign)


@given(st.sampled_from(SAMPLES), st.data())
@settings(max_examples=60, deadline=None)
def test_flip_parity(d, data):
    flips = data.draw(st.lists(st.integers(0, d.trivalent - 1), max_size=6))
    e = d
    for v in flips:
        e = e.flip(v)
    key, sign = canonicalize(d)
    assert canonicalize(e) == (key, sign * (-1) ** len(flips))


@given(st.sampled_from(SAMPLES), st.randoms(use_true_random=False))
@settings(max_examples=60, deadline=None)
def test_relabel_invariance(d, rnd):
    perm = list(range(d.trivalent))
    rnd.shuffle(perm)
    rots = [rnd.randrange(3) for _ in perm]
    assert canonicalize(relabel_vertices(d, perm, rots)) == canonicalize(d)


def test_parallel_legs_flipped():
    # turning the n legs of one arc of w_{n,m} to the other side flips n vertices
    for n, m in [(1, 1), (2, 2), (3, 1), (2, 0)]:
        d = double_wheel_diagram(n, m)
        e = d
        for v in range(2, 2 + n):
            e = e.flip(v)
        key, sign = canonicalize(d)
        assert canonicalize(e) == (key, sign * (-1) ** n)


def test_odd_double_wheels_vanish():
    for i in range(5):
        for j in range(5):
            assert double_wheel(i, j).is_zero() == ((i + j) % 2 == 1)
    assert wheel(1).is_zero() and wheel(3).is_zero() and wheel(5).is_zero()


def test_double_wheel_symmetric():
    for i in range(4):
        for j in range(4):
            assert double_wheel(i, j) == double_wheel(j, i)


def test_key_string_roundtrip():
    for d in SAMPLES:
        key, _ = canonicalize(d)
        assert key_from_str(key_to_str(key)) == key
        assert canonicalize(diagram_from_key(key)) == (key, 1)


# --- union and glueing -----------------------------------------------------

def test_union_examples():
    one = GraphVector.one()
    w2 = wheel(2)
    assert union(one, w2) == w2
    assert (w2 * w2).bidegrees() == {(4, 4)}
    assert union(w2, theta()).bidegrees() == {(2, 4)}


@given(st.sampled_from(SAMPLES), st.sampled_from(SAMPLES), st.sampled_from(SAMPLES[:5]))
@settings(max_examples=30, deadline=None)
def test_union_commutative_associative(a, b, c):
    a, b, c = vec(a), vec(b), vec(c)
    assert union(a, b) == union(b, a)
    assert union(union(a, b), c) == union(a, union(b, c))


def test_glue_w2_legs_gives_theta():
    d = wheel_diagram(2)
    assert vec(glue(d, ("f", 0), ("f", 3))) == theta()


def test_glue_two_w2_gives_dumbbell():
    d = disjoint_union(wheel_diagram(2), wheel_diagram(2))
    dumbbell = vec(glue(d, ("f", 0), ("f", 6)))
    assert dumbbell.bidegrees() == {(2, 4)}
    # all four cross glueings agree, and only modulo IHX is this 2 w_{1,1}
    assert partial_bilinear(wheel(2), wheel(2)) == dumbbell.scale(4)
    assert dumbbell != double_wheel(1, 1)
    assert equal_mod_ihx(dumbbell, double_wheel(1, 1).scale(2))


def test_glue_w4_adjacent_and_opposite():
    d = wheel_diagram(4)
    assert vec(glue(d, ("f", 0), ("f", 3))) == double_wheel(2, 0)
    assert vec(glue(d, ("f", 0), ("f", 6))) == double_wheel(1, 1)


def test_glue_through_ell():
    # a leg of w2 glued to an end of l just moves the leg
    d = disjoint_union(wheel_diagram(2), Diagram(1, ()))
    assert vec(glue(d, ("f", 0), ("l", 0, 0))) == wheel(2)
    # both legs of w2 glued to the two ends of l closes the wheel
    assert vec(glue_pairs(d, [(("f", 0), ("l", 0, 0)), (("f", 3), ("l", 0, 1))])) == theta()


def test_glue_preconditions():
    d = Diagram(1, ())
    with pytest.raises(GlueError):
        glue(d, ("l", 0, 0), ("l", 0, 1))
    with pytest.raises(GlueError):
        glue(wheel_diagram(2), ("f", 0), ("f", 0))
    with pytest.raises(GlueError):
        glue(wheel_diagram(2), ("f", 0), ("f", 1))
    d2 = Diagram(2, ())
    with pytest.raises(GlueError):
        glue_pairs(d2, [(("l", 0, 0), ("l", 1, 0)), (("l", 0, 1), ("l", 1, 1))])


def test_glue_ell_chain():
    d2 = Diagram(2, ())
    assert glue(d2, ("l", 0, 1), ("l", 1, 0)) == Diagram(1, ())


# --- operators -------------------------------------------------------------

def test_partial_examples():
    assert partial(wheel(2)) == theta()
    assert partial(wheel(4)) == (double_wheel(0, 2) + double_wheel(1, 1) + double_wheel(2, 0)).scale(2)
    assert partial(GraphVector.one()).is_zero()
    with pytest.raises(ValueError):
        partial(ell())


def test_partial_wheels_up_to_w6():
    for k in (1, 2, 3):
        expected = GraphVector()
        for m in range(2 * k - 1):
            expected = expected + double_wheel(m, 2 * k - 2 - m)
        assert partial(wheel(2 * k)) == expected.scale(k)


def test_partial_bilinear_examples():
    w2, w4 = wheel(2), wheel(4)
    lhs = partial_bilinear(w2, w2)
    assert equal_mod_ihx(lhs, double_wheel(1, 1).scale(8))
    # the identity genuinely needs IHX
    assert lhs != double_wheel(1, 1).scale(8)
    assert partial_bilinear(GraphVector.one(), w2).is_zero()
    assert equal_mod_ihx(partial_bilinear(w2, w4), double_wheel(1, 3).scale(16))
    assert partial_bilinear(w2, w4) == partial_bilinear(w4, w2)


def test_partial_bilinear_is_polarization():
    for a, b in [(wheel(2), wheel(2)), (wheel(2), wheel(4)), (wheel(4), double_wheel(1, 1))]:
        assert partial_bilinear(a, b) == partial(union(a, b)) - union(partial(a), b) - union(a, partial(b))


def test_pairing_examples():
    assert pairing(GraphVector.one(), wheel(2)).is_zero()
    assert pairing(GraphVector.one(), theta()) == theta()
    with pytest.raises(ValueError):
        pairing(ell(), ell())


def test_pairing_w2_w2_bruteforce():
    # hand enumeration of both bijections between the legs of two copies of w2
    expected = GraphVector()
    d = disjoint_union(wheel_diagram(2), wheel_diagram(2))
    legs1, legs2 = [("f", 0), ("f", 3)], [("f", 6), ("f", 9)]
    for p in permutations(legs2):
        expected = expected + vec(glue_pairs(d, list(zip(legs1, p))))
    got = pairing(wheel(2), wheel(2))
    assert got == expected
    coords = reduce_vector(got)
    assert set(coords) == {(0, 4)}
    assert any(coords[(0, 4)])


def test_pairing_symmetric_on_trivalent_sides():
    for a, b in [(wheel(2), double_wheel(1, 1)), (wheel(4), union(wheel(2), wheel(2)))]:
        assert pairing(a, b) == pairing(b, a)


def test_power_rule_w2():
    assert check_power_rule(wheel(2), 3) == []


# --- quotient --------------------------------------------------------------

def test_quotient_small():
    qb = quotient_basis(0, 0)
    assert qb.dim == 1 and qb.basis == [(0, 0, (), ())]
    qb = quotient_basis(0, 2)
    assert not is_zero_mod_ihx(theta())
    qb = quotient_basis(2, 2)
    assert not is_zero_mod_ihx(wheel(2))
    assert qb.dim == 2  # w2 and l * theta


def test_vacuum_dimensions():
    # connected vacuum classes have dimensions 1, 1, 1 with 2, 4, 6 vertices
    assert [quotient_basis(0, t).dim for t in (2, 4, 6)] == [1, 2, 3]


@pytest.mark.parametrize("u,t", [(u, t) for s in range(0, 7, 2) for t in range(s + 1) for u in [s - t]])
def test_ihx_relations_reduce_to_zero(u, t):
    qb = quotient_basis(u, t)
    for key in enumerate_keys(u, t):
        for rel in ihx_relations(key):
            assert not any(qb.coordinates(GraphVector(rel)))


def test_basis_reduces_to_unit_vectors():
    qb = quotient_basis(4, 6)
    for i, k in enumerate(qb.basis):
        coords = qb.coordinates(GraphVector({k: 1}))
        assert coords == tuple(F(int(j == i)) for j in range(qb.dim))


def test_quotient_preconditions():
    with pytest.raises(ValueError):
        quotient_basis(1, 2)
    with pytest.raises(DegreeCapExceeded):
        quotient_basis(0, 14)


def test_cache_roundtrip(tmp_path):
    qb = QuotientBasis.compute(2, 4)
    again = QuotientBasis.from_json(qb.to_json())
    assert again.basis == qb.basis and again.reduction == qb.reduction
    from hkrr.graphhom import quotient as qmod
    qmod._BASES.pop((2, 4), None)
    quotient_basis(2, 4, cache_dir=tmp_path)
    path = cache_path(tmp_path, 2, 4)
    data = path.read_text()
    assert '"version": 1' in data
    qmod._BASES.pop((2, 4), None)
    loaded = quotient_basis(2, 4, cache_dir=tmp_path)
    assert loaded.basis == qb.basis
    with pytest.raises(ValueError):
        QuotientBasis.from_json({"format": "other", "version": 1})


# --- omega -----------------------------------------------------------------

def test_omega_mu_low_parts():
    om = omega_mu(8)
    assert om[0] == GraphVector.one()
    assert om[2] == wheel(2).scale(F(1, 48))
    b2, b4 = modified_bernoulli(2), modified_bernoulli(4)
    assert om[4] == wheel(4).scale(b4) + union(wheel(2), wheel(2)).scale(b2 * b2 / 2)
    assert set(om) == {0, 2, 4}


def test_omega_eigen_through_six():
    assert verify_omega_eigen(6) == {2: {}, 6: {}}


def test_omega_eigen_stretch_ten():
    assert verify_omega_eigen(10) == {2: {}, 6: {}, 10: {}}


def test_omega_eigen_first_slice_is_exact():
    # one glueing: partial(b2 w2) equals theta / 48 with no IHX needed
    assert partial(wheel(2).scale(modified_bernoulli(2))) == theta().scale(F(1, 48))


def test_identity_suites():
    assert check_ell_and_partial(6) == []
    assert check_scp_and_partial(6) == []


def test_ell_and_partial_single_case_nontrivial():
    g, h = wheel(4), union(wheel(2), GraphVector.one())
    lhs = pairing(g, union(ell().scale(F(1, 2)), h))
    assert not lhs.is_zero()
    assert lhs == pairing(partial(g), h)


# --- Sym^3 -----------------------------------------------------------------

def test_p_map_examples():
    assert p_map(0, 0) == Sym3Poly.monomial(0, 0, 0, 2)
    assert p_map(1, 2).is_zero()
    assert p_map(1, 1) == Sym3Poly({(0, 0, 2): 2, (0, 1, 1): -2})


def test_p_map_symmetric():
    for i in range(6):
        for j in range(6):
            assert p_map(i, j) == p_map(j, i)


@pytest.mark.parametrize("n", [2, 4])
def test_p_map_compatible_with_quotient(n):
    pairs = [(i, n - i) for i in range(n + 1)]
    bd = (n, n + 2)
    qb = quotient_basis(*bd)
    coords = QMatrix([list(qb.coordinates(double_wheel(i, j))) for i, j in pairs])
    monos = sorted({m for i, j in pairs for m in p_map(i, j).terms})
    images = QMatrix([[p_map(i, j).terms.get(m, 0) for m in monos] for i, j in pairs])
    # every linear relation among double wheels holds for their images, and no more
    assert coords.rank() == images.rank()
    left_null = QMatrix([list(col) for col in zip(*coords.entries)]).nullspace()
    for v in left_null:
        combo = Sym3Poly()
        for c, (i, j) in zip(v, pairs):
            combo = combo + p_map(i, j).scale(c)
        assert combo.is_zero()


def test_bernoulli_identity_slices():
    d = lemma_bernoulli_defect(20)
    assert d.is_zero()
    assert lemma_bernoulli_defect(0).is_zero()
    assert lemma_bernoulli_defect(2).weight_slice(2).is_zero()


def oracle_lhs_symmetrized(xs, max_weight):
    """Evaluate the symmetrized left side at a point by direct ordered sums."""
    from math import comb, factorial

    def term(l, m, p):
        tot = F(0)
        for a, b, c in permutations(range(3)):
            tot += xs[a] ** l * xs[b] ** m * xs[c] ** p
        return tot

    total = F(0)
    for k in range(2, max_weight + 3):
        bk = bernoulli(k) / factorial(k)
        for n in range(k - 1):
            for l in range(n + 1):
                for m in range(k - 1 - n):
                    total += bk * (-1) ** (l + m) * comb(n, l) * comb(k - 2 - n, m) * term(l, m, k - 2 - l - m)
    for i in range(2, max_weight + 3):
        for j in range(2, max_weight + 5 - i):
            if i + j - 2 > max_weight:
                continue
            c = bernoulli(i) / factorial(i) * bernoulli(j) / factorial(j)
            for l in range(i):
                for m in range(j):
                    total += c * (-1) ** (l + m) * comb(i - 1, l) * comb(j - 1, m) * term(l, m, i + j - 2 - l - m)
    return total


def test_bernoulli_identity_pointwise_oracle():
    # symmetrizing x0^3 / 12 gives 6/12 at every point
    rng = random.Random(7)
    for _ in range(3):
        xs = [F(rng.randint(-5, 5), rng.randint(1, 4)) for _ in range(3)]
        assert oracle_lhs_symmetrized(xs, 10) == F(1, 2)
