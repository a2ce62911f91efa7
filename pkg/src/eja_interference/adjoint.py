"""Norms, fidelity and adjoints of linear maps.

Because coordinates are orthonormal for the self-dualising inner product,
the adjoint of a map is its transposed coordinate matrix and the dagger norm
is the Euclidean length of the coordinate vector.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import (
    CLASSICAL,
    COMPLEX_HERMITIAN,
    DEFAULT_TOL,
    QUATERNIONIC_HERMITIAN,
    SPIN_FACTOR,
    AlgebraKind,
    JordanElement,
    KindMismatchError,
    j_partner,
    matrix_basis,
    cone_contains,
    eigenvalues,
    spectral_decompose,
    from_matrix,
    matrix_coords,
    to_matrix,
)
from .projectors import LinearMap
from .system import (
    System,
    as_rng,
    element_of,
    invariant_state,
    random_frame,
    random_state,
    random_unitary_columns,
)


def operational_norm(xi) -> float:
    """Sum of absolute eigenvalues."""
    return float(np.sum(np.abs(eigenvalues(element_of(xi)))))


def dagger_norm(xi) -> float:
    return float(np.linalg.norm(element_of(xi).coords))


@dataclass(frozen=True)
class NormReport:
    one_norm: float
    two_norm: float
    lower_ok: bool
    upper_ok: bool


def norm_report(xi, slack: float = 1e-10) -> NormReport:
    """Both norms and whether ``|xi|_dag <= |xi| <= sqrt(d) |xi|_dag`` holds within ``slack``."""
    el = element_of(xi)
    one, two = operational_norm(el), dagger_norm(el)
    d = el.kind.rank
    return NormReport(one, two, two <= one + slack, one <= np.sqrt(d) * two + slack)


def impurity(rho) -> float:
    """``(tr rho)^2 - |rho|_dag^2``; zero exactly on multiples of pure states."""
    el = element_of(rho)
    return el.trace**2 - float(el.coords @ el.coords)


def dagger_fidelity(rho, sigma) -> float:
    a, b = element_of(rho), element_of(sigma)
    if a.kind != b.kind:
        raise KindMismatchError(f"{a.kind} vs {b.kind}")
    na, nb = dagger_norm(a), dagger_norm(b)
    if na == 0.0 or nb == 0.0:
        raise ZeroDivisionError("dagger fidelity of a zero vector")
    return float(a.coords @ b.coords) / (na * nb)


# ---------------------------------------------------------------------------
# tensor products (classical x classical, complex x complex)


def tensor(x, y) -> JordanElement:
    a, b = element_of(x), element_of(y)
    if a.kind.family != b.kind.family or a.kind.family not in (CLASSICAL, COMPLEX_HERMITIAN):
        raise ValueError(f"no tensor product for {a.kind} and {b.kind}")
    kind = AlgebraKind(a.kind.family, a.kind.size * b.kind.size)
    if kind.family == CLASSICAL:
        return JordanElement(kind, np.kron(a.coords, b.coords))
    return from_matrix(kind, np.kron(to_matrix(a), to_matrix(b)))


def fidelity_multiplicativity_check(rho1, sigma1, rho2, sigma2) -> float:
    joint = dagger_fidelity(tensor(rho1, rho2), tensor(sigma1, sigma2))
    return abs(joint - dagger_fidelity(rho1, sigma1) * dagger_fidelity(rho2, sigma2))


# ---------------------------------------------------------------------------
# linear maps


def adjoint_map(m: LinearMap) -> LinearMap:
    return LinearMap(m.system, m.matrix.T)


def map_from_function(kind: AlgebraKind, f) -> LinearMap:
    eye = np.eye(kind.dim)
    cols = [f(JordanElement(kind, e)).coords for e in eye]
    return LinearMap(System(kind), np.column_stack(cols))


def conjugation_map(kind: AlgebraKind, w: np.ndarray) -> LinearMap:
    """``X -> W X W*`` for a unitary ``W`` acting on the (embedded) matrix space."""
    images = w @ matrix_basis(kind) @ w.conj().T
    return LinearMap(System(kind), matrix_coords(kind, images).T)


def _line_vectors(p: JordanElement) -> np.ndarray:
    """Unit vector(s) spanning the range of a primitive idempotent of a matrix kind."""
    mat = to_matrix(p)
    k = int(np.argmax(np.linalg.norm(mat, axis=0)))
    v = mat[:, k] / np.linalg.norm(mat[:, k])
    if p.kind.family == QUATERNIONIC_HERMITIAN:
        return np.column_stack([v, j_partner(v)])
    return v[:, None]


def frame_permutation_map(frame, perm) -> LinearMap:
    """Reversible map sending ``frame[i]`` to ``frame[perm[i]]``."""
    frame = list(frame)
    kind = frame[0].kind
    perm = [int(i) for i in perm]
    if sorted(perm) != list(range(len(frame))):
        raise ValueError(f"{perm} is not a permutation of the frame")
    if kind.family == CLASSICAL:
        m = np.zeros((kind.dim, kind.dim))
        for i, j in enumerate(perm):
            m += np.outer(frame[j].coords, frame[i].coords)
        return LinearMap(System(kind), m)
    if kind.family == SPIN_FACTOR:
        if perm == [0, 1]:
            return LinearMap.identity(System(kind))
        v = frame[0].coords[1:] - frame[1].coords[1:]
        v = v / np.linalg.norm(v)
        m = np.eye(kind.dim)
        m[1:, 1:] -= 2 * np.outer(v, v)
        return LinearMap(System(kind), m)
    lines = [_line_vectors(p) for p in frame]
    w = sum(lines[j] @ lines[i].conj().T for i, j in enumerate(perm))
    return conjugation_map(kind, w)


def random_reversible_map(system, seed=0) -> LinearMap:
    """Seeded automorphism: a coordinate permutation (classical), a conjugation
    by an orthogonal/unitary/symplectic matrix, or a rotation of a spin factor."""
    rng = as_rng(seed)
    kind = system.kind if isinstance(system, System) else system
    if kind.family == CLASSICAL:
        return LinearMap(System(kind), np.eye(kind.dim)[:, rng.permutation(kind.dim)])
    if kind.family == SPIN_FACTOR:
        q, r = np.linalg.qr(rng.normal(size=(kind.size, kind.size)))
        q = q * np.sign(np.diag(r))
        m = np.eye(kind.dim)
        m[1:, 1:] = q
        return LinearMap(System(kind), m)
    cols = random_unitary_columns(kind, rng)
    if kind.family == QUATERNIONIC_HERMITIAN:
        # block-symplectic layout: column n+i is -J conj(column i)
        w = np.hstack([np.column_stack([c[:, 0] for c in cols]), -np.column_stack([c[:, 1] for c in cols])])
    else:
        w = np.hstack(cols)
    return conjugation_map(kind, w)


def _opnorm(m: np.ndarray) -> float:
    return float(np.linalg.norm(m, 2))


def adjoint_law_check(a: LinearMap, b: LinearMap, reversible: LinearMap | None = None) -> dict:
    """Residuals of ``(A^dag)^dag = A``, ``(BA)^dag = A^dag B^dag`` and, if given, ``U^dag = U^-1``."""
    out = {
        "involution": _opnorm(adjoint_map(adjoint_map(a)).matrix - a.matrix),
        "sequential": _opnorm(adjoint_map(b @ a).matrix - (adjoint_map(a) @ adjoint_map(b)).matrix),
    }
    if reversible is not None:
        inv = np.linalg.inv(reversible.matrix)
        out["reversible_inverse"] = _opnorm(adjoint_map(reversible).matrix - inv)
    return out


class NotAChannelError(ValueError):
    """The map fails positivity or trace preservation on sampled states."""


@dataclass(frozen=True)
class ChannelClass:
    unital: bool
    dagger_physical: bool
    # max over sampled states of |C rho|_dag - |rho|_dag
    norm_monotone_witness: float
    # largest trace of an adjoint image of a sampled state
    adjoint_max_trace: float


def _valid_state(x: JordanElement, tol: float) -> bool:
    return cone_contains(x, tol) and x.trace <= 1 + tol


def channel_classify(c: LinearMap, tol: float = DEFAULT_TOL, samples: int = 200, seed=0) -> ChannelClass:
    """Unitality, physicality of the adjoint and the dagger-norm witness on seeded states.

    The first probe is the top eigen-idempotent of ``C chi``: if ``C`` is not
    unital the adjoint sends it to a supernormalised vector.  The remaining
    probes are Dirichlet mixtures interleaved with members of seeded frames.
    """
    system = c.system
    kind = system.kind
    rng = as_rng(seed)
    chi = invariant_state(system).element
    probes = [spectral_decompose(JordanElement(kind, c.matrix @ chi.coords)).frame[0]]
    while len(probes) < samples:
        probes.append(random_state(system, rng).element)
        probes.extend(random_frame(system, rng))
    probes = probes[:samples]
    u = system.unit.coords
    for rho in probes:
        out = JordanElement(kind, c.matrix @ rho.coords)
        if not cone_contains(out, tol) or abs(out.trace - rho.trace) > tol:
            raise NotAChannelError("map is not positive and trace preserving on the samples")
    unital = bool(np.linalg.norm(c.matrix @ chi.coords - chi.coords) <= tol)
    adj = c.matrix.T
    images = [JordanElement(kind, adj @ rho.coords) for rho in probes]
    physical = all(_valid_state(x, tol) for x in images)
    witness = max(dagger_norm(JordanElement(kind, c.matrix @ r.coords)) - dagger_norm(r) for r in probes)
    max_trace = max(float(u @ x.coords) for x in images)
    return ChannelClass(unital, physical, witness, max_trace)


def constant_channel(system: System, target) -> LinearMap:
    """``rho -> tr(rho) target``."""
    t = element_of(target).coords
    return LinearMap(system, np.outer(t, system.unit.coords))


def mixture(maps, weights) -> LinearMap:
    weights = np.asarray(weights, dtype=float)
    total = sum(w * m.matrix for w, m in zip(weights, maps))
    return LinearMap(maps[0].system, total)

