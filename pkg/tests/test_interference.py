import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from eja_interference.algebra import (
    classical,
    complex_hermitian,
    from_matrix,
    quaternionic_hermitian,
    real_symmetric,
    spin_factor,
)
from eja_interference.interference import (
    SlitExperiment,
    ValueTable,
    default_blocks,
    defect_matrix,
    hierarchy_check,
    interference_report,
    maximize_interference,
    nonempty_subsets,
    random_experiment,
    report_from_table,
    slit_values,
    sorkin_I,
    sorkin_defect_norm,
    subset_key,
)
from eja_interference.system import State, Effect, System, random_frame, random_state, random_effect, standard_frame

PLUS = 0.5 * np.ones((2, 2))


def table(n, entries):
    return ValueTable(n, {frozenset(int(c) - 1 for c in k): v for k, v in entries.items()})


def qubit_plus_experiment():
    system = System(complex_hermitian(2))
    plus = from_matrix(system.kind, PLUS)
    return SlitExperiment(system, standard_frame(system), [[0], [1]], State(plus), Effect(plus))


def test_subset_order_and_keys():
    keys = [subset_key(s) for s in nonempty_subsets(3)]
    assert keys == ["1", "2", "3", "12", "13", "23", "123"]


def test_sorkin_examples():
    assert sorkin_I(2, table(2, {"1": 0.25, "2": 0.25, "12": 1.0})) == pytest.approx(0.5)
    assert sorkin_I(3, table(3, {"1": 0, "2": 0, "3": 0, "12": 0, "13": 0, "23": 0, "123": 1})) == 1.0
    assert sorkin_I(1, table(1, {"1": 0.4})) == 0.4


@given(p=st.lists(st.floats(0, 1), min_size=5, max_size=5))
def test_additive_tables_have_no_higher_terms(p):
    for n in (2, 3, 4, 5):
        t = ValueTable(n, {s: sum(p[i] for i in s) for s in nonempty_subsets(n)})
        assert abs(sorkin_I(n, t)) <= 1e-12


@given(vals=st.lists(st.floats(-1, 1), min_size=7, max_size=7))
def test_sorkin_recursion(vals):
    # I_3 = I_2(1,2) with slit 3 merged into the rest, in the usual recursive form
    t = ValueTable(3, dict(zip(nonempty_subsets(3), vals)))
    v = t.values
    i2_open3 = v[frozenset({0, 1, 2})] - v[frozenset({0, 2})] - v[frozenset({1, 2})] + v[frozenset({2})]
    i2 = v[frozenset({0, 1})] - v[frozenset({0})] - v[frozenset({1})]
    assert sorkin_I(3, t) == pytest.approx(i2_open3 - i2, abs=1e-12)


def test_table_validation():
    with pytest.raises(KeyError):
        ValueTable(2, {frozenset({0}): 0.1, frozenset({1}): 0.2})
    with pytest.raises(ValueError):
        table(1, {"1": float("nan")})
    t = table(2, {"1": 0.1, "2": 0.2, "12": 0.5})
    with pytest.raises(ValueError):
        sorkin_I(3, t)


def test_qubit_values_direct_matrix_oracle():
    # Tr[E Pi_I rho Pi_I] by hand with 2x2 matrices
    pis = {frozenset({0}): np.diag([1.0, 0]), frozenset({1}): np.diag([0.0, 1]), frozenset({0, 1}): np.eye(2)}
    expected = {s: np.trace(PLUS @ pi @ PLUS @ pi) for s, pi in pis.items()}
    got = slit_values(qubit_plus_experiment())
    for s, v in expected.items():
        assert got[s] == pytest.approx(v, abs=1e-15)
    i2 = np.trace(PLUS @ (PLUS - pis[frozenset({0})] @ PLUS @ pis[frozenset({0})] - pis[frozenset({1})] @ PLUS @ pis[frozenset({1})]))
    assert sorkin_I(2, got) == pytest.approx(i2, abs=1e-15)
    assert sorkin_I(2, got) == pytest.approx(0.5, abs=1e-12)


def test_classical_two_slits():
    system = System(classical(2))
    exp = SlitExperiment(system, standard_frame(system), [[0], [1]], system.state([0.5, 0.5]), Effect(system.unit))
    t = slit_values(exp)
    assert (t[{0}], t[{1}], t[{0, 1}]) == (0.5, 0.5, 1.0)
    assert sorkin_I(2, t) == 0.0


def test_state_on_one_block_ignores_the_others(system):
    if system.rank < 3:
        pytest.skip("needs three slits")
    frame = random_frame(system, 5)
    rho = State(frame[0])
    exp = SlitExperiment(system, frame, [[0], [1], [2]], rho, random_effect(system, 1))
    t = slit_values(exp)
    for s in nonempty_subsets(3):
        if 0 in s:
            assert t[s] == pytest.approx(t[{0}], abs=1e-12)


def test_no_third_order_interference(kind):
    system = System(kind)
    if system.rank < 3:
        pytest.skip("rank 2")
    for seed in range(50):
        rep = interference_report(random_experiment(system, 3, seed))
        assert abs(rep.orders[2]) <= 1e-9
        assert rep.defect_norms[2] <= 1e-9


def test_defect_matrix_qubit_explicit():
    system = System(complex_hermitian(2))
    d2 = defect_matrix(standard_frame(system), [[0], [1]], 2)
    # P_12 - P_1 - P_2 keeps exactly the two off-diagonal coordinates
    np.testing.assert_allclose(d2, np.diag([0.0, 0.0, 1.0, 1.0]), atol=1e-15)
    assert sorkin_defect_norm(standard_frame(system), [[0], [1]], 2) == pytest.approx(1.0)


def test_defect_norm_examples():
    q3 = System(complex_hermitian(3))
    assert sorkin_defect_norm(random_frame(q3, 0), [[0], [1], [2]]) <= 1e-9
    c3 = System(classical(3))
    for blocks in ([[0], [1], [2]], [[0, 1], [2]]):
        for n in range(1, len(blocks) + 1):
            if n >= 2:
                assert sorkin_defect_norm(standard_frame(c3), blocks, n) == 0.0


def test_defect_norm_with_wide_blocks():
    system = System(complex_hermitian(5))
    frame = random_frame(system, 3)
    assert sorkin_defect_norm(frame, [[0, 3], [1], [2, 4]], 3) <= 1e-9
    assert sorkin_defect_norm(frame, [[0, 3], [1, 2]], 2) > 0.1


def test_report_lower_orders_use_first_slits():
    t = table(3, {"1": 0.1, "2": 0.2, "3": 0.3, "12": 0.5, "13": 0.4, "23": 0.6, "123": 0.9})
    rep = report_from_table(t)
    assert rep.orders[0] == pytest.approx(0.1)
    assert rep.orders[1] == pytest.approx(0.5 - 0.1 - 0.2)
    assert rep.orders[2] == pytest.approx(sorkin_I(3, t))
    assert report_from_table(t, 2).table.n == 2
    assert report_from_table(t, 0).orders == ()


def test_default_blocks():
    assert default_blocks(5, 3) == [[0, 1], [2, 3], [4]]
    assert default_blocks(3, 3) == [[0], [1], [2]]
    with pytest.raises(ValueError):
        default_blocks(2, 3)


def test_experiment_validation(system):
    frame = standard_frame(system)
    rho, e = random_state(system, 0), random_effect(system, 0)
    with pytest.raises(ValueError):
        SlitExperiment(system, frame, [[0], [0]], rho, e)
    with pytest.raises(IndexError):
        SlitExperiment(system, frame, [[system.rank]], rho, e)


def bloch_grid_max(steps=181):
    # best I_2 over pure qubit states: sum of positive eigenvalues of the off-diagonal part
    best = 0.0
    for theta in np.linspace(0, np.pi, steps):
        for phi in np.linspace(0, 2 * np.pi, 8):
            psi = np.array([np.cos(theta / 2), np.exp(1j * phi) * np.sin(theta / 2)])
            rho = np.outer(psi, psi.conj())
            off = rho - np.diag(np.diag(rho))
            w = np.linalg.eigvalsh(off)
            best = max(best, w[w > 0].sum())
    return best


def test_maximize_qubit_matches_grid():
    grid = bloch_grid_max()
    assert grid == pytest.approx(0.5, abs=1e-12)
    w = maximize_interference(System(complex_hermitian(2)), 2, trials=20, seed=0)
    assert abs(w.value) >= grid - 1e-6
    assert w.state.is_valid() and w.effect.is_valid()


def test_maximize_examples():
    assert abs(maximize_interference(System(classical(2)), 2, trials=10).value) <= 1e-12
    assert abs(maximize_interference(System(complex_hermitian(3)), 3, trials=50, seed=1).value) <= 1e-8
    assert abs(maximize_interference(System(real_symmetric(3)), 3, trials=50, seed=1).value) <= 1e-8


def test_maximize_is_deterministic():
    a = maximize_interference(System(quaternionic_hermitian(2)), 2, trials=5, seed=3)
    b = maximize_interference(System(quaternionic_hermitian(2)), 2, trials=5, seed=3)
    assert a.value == b.value
    assert abs(a.value) == pytest.approx(0.5, abs=1e-6)


def test_maximize_spin_factor_second_order():
    w = maximize_interference(System(spin_factor(3)), 2, trials=10, seed=0)
    assert abs(w.value) == pytest.approx(0.5, abs=1e-6)


def test_hierarchy():
    assert hierarchy_check(System(complex_hermitian(4)), seed=0, samples=100)
    assert hierarchy_check(System(classical(4)), seed=0, samples=20)
    with pytest.raises(ValueError):
        hierarchy_check(System(complex_hermitian(3)))
