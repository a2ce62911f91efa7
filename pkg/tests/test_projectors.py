import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from eja_interference.algebra import (
    JordanElement,
    classical,
    complex_hermitian,
    from_matrix,
    quaternionic_hermitian,
    real_symmetric,
    spin_factor,
    to_matrix,
)
from eja_interference.projectors import (
    LinearMap,
    SlitPartition,
    all_subsets,
    face_effect,
    face_idempotent,
    projector,
    projector_axiom_check,
    projector_lattice_check,
    purity_preservation_check,
)
from eja_interference.system import System, random_element, random_frame, random_state, standard_frame


def test_face_effect_examples(system):
    frame = random_frame(system, 1)
    d = system.rank
    np.testing.assert_allclose(face_effect(frame, range(d)).coords, system.unit.coords, atol=1e-12)
    np.testing.assert_array_equal(face_effect(frame, []).coords, np.zeros(system.dim))
    q = System(complex_hermitian(3))
    a = face_effect(standard_frame(q), [0, 1])
    np.testing.assert_allclose(to_matrix(a.element), np.diag([1, 1, 0]), atol=1e-15)


def test_index_out_of_range(system):
    frame = standard_frame(system)
    with pytest.raises(IndexError):
        projector(frame, [system.rank])
    with pytest.raises(IndexError):
        face_effect(frame, [-1])


def test_full_projector_is_identity(system):
    frame = random_frame(system, 4)
    np.testing.assert_allclose(projector(frame, range(system.rank)).matrix, np.eye(system.dim), atol=1e-12)


def test_classical_projector_zeroes_outside():
    frame = standard_frame(System(classical(4)))
    x = JordanElement(classical(4), np.array([1.0, 2, 3, 4]))
    np.testing.assert_array_equal(projector(frame, [1, 3])(x).coords, [0, 2, 0, 4])


def test_quantum_projector_is_two_sided_compression(rng):
    # oracle: Pi rho Pi with plain matrices
    kind = complex_hermitian(3)
    frame = standard_frame(System(kind))
    pi = np.diag([1.0, 0, 1])
    p = projector(frame, [0, 2])
    for _ in range(10):
        g = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
        rho = g @ g.conj().T
        rho /= np.trace(rho).real
        out = to_matrix(p(from_matrix(kind, rho)))
        np.testing.assert_allclose(out, pi @ rho @ pi, atol=1e-14)


def test_quantum_projector_in_rotated_frame(rng):
    kind = complex_hermitian(3)
    frame = random_frame(System(kind), 9)
    pi = to_matrix(frame[1]) + to_matrix(frame[2])
    p = projector(frame, [1, 2])
    for _ in range(10):
        x = random_element(System(kind), rng)
        m = to_matrix(x)
        np.testing.assert_allclose(to_matrix(p(x)), pi @ m @ pi, atol=1e-12)


def test_axiom_examples():
    c = projector_axiom_check(standard_frame(System(classical(3))), [0, 2], samples=50)
    assert c.worst == 0.0
    frame = random_frame(System(complex_hermitian(3)), 3)
    assert projector_axiom_check(frame, [0, 1], samples=100, seed=1).worst <= 1e-10
    frame = random_frame(System(quaternionic_hermitian(3)), 3)
    assert projector_axiom_check(frame, [1], samples=100, seed=1).worst <= 1e-9


def test_axioms_every_kind(system):
    frame = random_frame(system, 21)
    for idx in all_subsets(system.rank):
        assert projector_axiom_check(frame, idx, samples=20, seed=2).passed(1e-9)


def test_lattice_examples():
    c = projector_lattice_check(standard_frame(System(classical(3))))
    assert c.worst == 0.0
    assert set(c.residuals) == {
        "idempotent",
        "product_is_meet",
        "disjoint_product_zero",
        "self_adjoint",
        "unit_compression",
    }
    assert projector_lattice_check(random_frame(System(complex_hermitian(3)), 0)).worst <= 1e-10
    assert projector_lattice_check(random_frame(System(real_symmetric(4)), 0)).worst <= 1e-9


def test_lattice_rank_limit():
    frame = standard_frame(System(classical(13)))
    with pytest.raises(ValueError):
        projector_lattice_check(frame)


def test_purity_examples():
    frame = random_frame(System(complex_hermitian(3)), 2)
    assert purity_preservation_check(frame, [0, 1], trials=200, seed=0) <= 1e-9
    frame = standard_frame(System(classical(3)))
    assert purity_preservation_check(frame, [0, 1], trials=50, seed=0) == 0.0
    frame = random_frame(System(spin_factor(4)), 2)
    assert purity_preservation_check(frame, [0], trials=50, seed=0) <= 1e-9


def test_projector_spectrum_in_unit_interval(system):
    frame = random_frame(system, 8)
    for idx in all_subsets(system.rank):
        m = projector(frame, idx).matrix
        w = np.linalg.eigvalsh(0.5 * (m + m.T))
        assert w.min() >= -1e-12 and w.max() <= 1 + 1e-12


def test_identity_on_face_span(system, rng):
    frame = random_frame(system, 6)
    idx = [0]
    p = projector(frame, idx)
    for _ in range(10):
        x = JordanElement(system.kind, rng.normal() * frame[0].coords)
        np.testing.assert_allclose(p(x).coords, x.coords, atol=1e-12)


@given(seed=st.integers(0, 10**6), cut=st.integers(1, 3))
@settings(max_examples=40, deadline=None)
def test_partition_preserves_trace(seed, cut):
    system = System(complex_hermitian(4))
    rng = np.random.default_rng(seed)
    frame = random_frame(system, rng)
    order = rng.permutation(4)
    parts = [order[:cut], order[cut:]]
    x = random_element(system, rng)
    total = sum(system.unit.coords @ projector(frame, part)(x).coords for part in parts)
    assert total == pytest.approx(system.unit.coords @ x.coords, abs=1e-10)
    for part in parts:
        lhs = system.unit.coords @ projector(frame, part)(x).coords
        assert lhs == pytest.approx(face_idempotent(frame, part).coords @ x.coords, abs=1e-10)


def test_linear_map_algebra(system, rng):
    frame = random_frame(system, 0)
    p = projector(frame, [0])
    q = projector(frame, [system.rank - 1])
    ident = LinearMap.identity(system)
    np.testing.assert_allclose((p @ ident).matrix, p.matrix)
    np.testing.assert_allclose((p + q - q).matrix, p.matrix, atol=1e-15)
    np.testing.assert_allclose((p * 2.0).matrix, 2 * p.matrix)
    rho = random_state(system, rng)
    np.testing.assert_allclose((p @ q)(rho.element).coords, p(q(rho.element)).coords, atol=1e-14)


def test_linear_map_rejects_bad_matrix(system):
    with pytest.raises(ValueError):
        LinearMap(system, np.full((system.dim, system.dim), np.nan))
    with pytest.raises(ValueError):
        LinearMap(system, np.eye(system.dim + 1))


def test_slit_partition():
    frame = standard_frame(System(classical(4)))
    part = SlitPartition(frame, ([0, 1], [3]))
    assert part.union([0, 1]) == (0, 1, 3)
    with pytest.raises(ValueError):
        SlitPartition(frame, ([0, 1], [1]))
    with pytest.raises(IndexError):
        SlitPartition(frame, ([4],))
