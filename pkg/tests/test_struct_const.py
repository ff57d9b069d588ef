import pytest
from hypothesis import given, settings, strategies as st

from eqschub.exactpoly import ONE, Var, a, substitute, T, x
from eqschub.factorial_schur import (
    eval_at_partition, factorial_schur, generic, make_t, zero_sequence,
)
from eqschub.partitions import GrassmannShape, Partition, contains, iter_partitions
from eqschub.struct_const import (
    classical_lr, expand_in_basis, flr_peel, flr_vanish, pieri_factorial,
)

A = generic()
P = Partition


def test_expand_in_basis_examples():
    assert expand_in_basis(ONE, A, 2) == {P(): ONE}
    t = make_t(GrassmannShape(1, 2))
    assert expand_in_basis((x(1) - T(2)) ** 2, t, 1) == {P((1,)): T(1) - T(2), P((2,)): ONE}
    s1 = factorial_schur(P((1,)), A, 2)
    assert expand_in_basis(s1 * s1, A, 2) == {P((1,)): a(3) - a(2), P((2,)): ONE, P((1, 1)): ONE}


def test_expand_rejects_asymmetric():
    with pytest.raises(ArithmeticError):
        expand_in_basis(x(2) ** 2, A, 2)


def test_flr_peel_examples():
    assert flr_peel((), (2, 1), A, 2) == {P((2, 1)): ONE}
    t2 = make_t(GrassmannShape(1, 2))
    assert flr_peel((1,), (1,), t2, 1) == {P((1,)): T(1) - T(2), P((2,)): ONE}
    t4 = make_t(GrassmannShape(2, 4))
    assert flr_peel((1,), (1,), t4, 2) == {P((1,)): T(2) - T(3), P((2,)): ONE, P((1, 1)): ONE}


def test_flr_vanish_examples():
    assert flr_vanish((1,), (1,), 1) == {P((1,)): a(2) - a(1), P((2,)): ONE}
    assert flr_vanish((1,), (), 2) == {P((1,)): ONE}
    assert flr_vanish((1,), (1,), 2) == {P((1,)): a(3) - a(2), P((2,)): ONE, P((1, 1)): ONE}
    with pytest.raises(ValueError):
        flr_vanish((1,), (1,), 2, make_t(GrassmannShape(2, 4)))


def test_classical_lr_examples():
    assert classical_lr((1,), (1,), (2,)) == 1
    assert classical_lr((1,), (1,), (1, 1)) == 1
    assert classical_lr((2, 1), (2, 1), (3, 2, 1)) == 2
    assert classical_lr((2, 1), (2, 1), (3, 3)) == 1
    assert classical_lr((1,), (1,), (3,)) == 0


def test_classical_lr_conjugation_symmetry():
    for lam, mu, nu in [((2, 1), (2, 1), (3, 2, 1)), ((2,), (1, 1), (3, 1)), ((3, 1), (2, 1), (4, 2, 1))]:
        c = lambda s: P(s).conjugate()
        assert classical_lr(lam, mu, nu) == classical_lr(c(lam), c(mu), c(nu))


def test_pieri_factorial_examples():
    assert pieri_factorial((), A, 2) == {P((1,)): ONE}
    assert pieri_factorial((1,), A, 2) == {P((1,)): a(3) - a(2), P((2,)): ONE, P((1, 1)): ONE}
    t4 = make_t(GrassmannShape(2, 4))
    assert pieri_factorial((2, 2), t4, 2) == {P((2, 2)): T(1) + T(2) - T(3) - T(4), P((3, 2)): ONE}


@pytest.mark.parametrize("lam", list(iter_partitions(4, 3)))
def test_pieri_factorial_matches_peeling(lam):
    assert pieri_factorial(lam, A, 3) == flr_peel(lam, (1,), A, 3)


small = st.sampled_from([lam for lam in iter_partitions(4, 2)])


@settings(max_examples=30)
@given(small, small)
def test_flr_properties(lam, mu):
    exp = flr_peel(lam, mu, A, 2)
    assert exp == flr_peel(mu, lam, A, 2)
    space_vars = [Var("a", i) for i in range(-10, 20)]
    for nu, c in exp.items():
        assert contains(nu, lam) and contains(nu, mu)
        degs = {sum(e.values()) for e, _ in c.terms()}
        assert degs == {lam.weight + mu.weight - nu.weight}
    # c_{lam mu}^mu = s_lam(a_mu | a)
    if contains(mu, lam):
        want = eval_at_partition(factorial_schur(lam, A, 2), mu, A, 2)
        assert exp.get(mu, 0) == want or (not want and mu not in exp)


@pytest.mark.parametrize("lam,mu", [((1,), (1,)), ((2, 1), (1,)), ((2,), (1, 1)), ((2, 1), (2, 1))])
def test_peel_and_vanish_agree(lam, mu):
    assert flr_peel(lam, mu, A, 3) == flr_vanish(lam, mu, 3)


def test_zero_sequence_gives_classical_lr():
    z = zero_sequence()
    lam, mu = P((2, 1)), P((2, 1))
    exp = flr_peel(lam, mu, z, 3)
    for nu in iter_partitions(6, 3):
        if nu.weight == 6:
            assert exp.get(nu, 0) == classical_lr(lam, mu, nu)
