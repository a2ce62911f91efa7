"""Operational view of an algebra: states, effects, the dagger, sampling."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from .algebra import (
    CLASSICAL,
    DEFAULT_TOL,
    QUATERNIONIC_HERMITIAN,
    REAL_SYMMETRIC,
    SPIN_FACTOR,
    AlgebraKind,
    JordanElement,
    SpectralDecomposition,
    KindMismatchError,
    matrix_coords,
    cone_contains,
    eigenvalues,
    from_natural,
    quaternionic_lines,
    spectral_decompose,
    unit,
)

SeedLike = Union[int, np.random.Generator, None]


def as_rng(seed: SeedLike) -> np.random.Generator:
    return np.random.default_rng(seed)


@dataclass(frozen=True)
class System:
    """A single system of the theory, backed by one catalogued algebra."""

    kind: AlgebraKind

    @property
    def rank(self) -> int:
        return self.kind.rank

    @property
    def dim(self) -> int:
        return self.kind.dim

    @property
    def unit(self) -> JordanElement:
        return unit(self.kind)

    def state(self, coords, tol: float = DEFAULT_TOL) -> "State":
        """Validated state from coordinates."""
        rho = State(JordanElement(self.kind, coords))
        if not rho.is_valid(tol):
            raise ValueError("coordinates do not describe a (sub)normalised state")
        return rho

    def effect(self, coords, tol: float = DEFAULT_TOL) -> "Effect":
        e = Effect(JordanElement(self.kind, coords))
        if not e.is_valid(tol):
            raise ValueError("coordinates do not describe an effect between 0 and u")
        return e

    def __str__(self):
        return str(self.kind)


@dataclass(frozen=True, eq=False)
class State:
    element: JordanElement

    @property
    def system(self) -> System:
        return System(self.element.kind)

    @property
    def coords(self) -> np.ndarray:
        return self.element.coords

    @property
    def trace(self) -> float:
        return self.element.trace

    def is_valid(self, tol: float = DEFAULT_TOL) -> bool:
        return cone_contains(self.element, tol) and -tol <= self.trace <= 1 + tol


@dataclass(frozen=True, eq=False)
class Effect:
    element: JordanElement

    @property
    def system(self) -> System:
        return System(self.element.kind)

    @property
    def coords(self) -> np.ndarray:
        return self.element.coords

    def is_valid(self, tol: float = DEFAULT_TOL) -> bool:
        u = unit(self.element.kind)
        return cone_contains(self.element, tol) and cone_contains(u - self.element, tol)


def element_of(x) -> JordanElement:
    return x if isinstance(x, JordanElement) else x.element


def pairing(e, rho) -> float:
    """Probability ``(e|rho)``: the trace inner product of the two elements."""
    a, b = element_of(e), element_of(rho)
    if a.kind != b.kind:
        raise KindMismatchError(f"effect on {a.kind}, state on {b.kind}")
    return float(a.coords @ b.coords)


def dagger(x):
    """Swap the role of a state and an effect; coordinates are unchanged."""
    if isinstance(x, State):
        return Effect(x.element)
    if isinstance(x, Effect):
        return State(x.element)
    raise TypeError(f"dagger expects a State or Effect, got {type(x).__name__}")


def invariant_state(system: System) -> State:
    return State(system.unit / system.rank)


def diagonalize_state(rho: State, tol: float = DEFAULT_TOL) -> SpectralDecomposition:
    """Spectral decomposition of a normalised state; the spectrum is a distribution."""
    if abs(rho.trace - 1.0) > tol:
        raise ValueError(f"state is not normalised (trace {rho.trace:.3e})")
    dec = spectral_decompose(rho.element, tol)
    w = dec.eigenvalues
    if w[-1] < -tol:
        raise ValueError(f"state has negative eigenvalue {w[-1]:.3e}")
    return SpectralDecomposition(np.clip(w, 0.0, None), dec.frame)


def is_pure(rho: State, tol: float = DEFAULT_TOL) -> bool:
    w = eigenvalues(rho.element)
    target = np.zeros_like(w)
    target[0] = 1.0
    return bool(np.max(np.abs(w - target)) <= tol)


def gram_matrix(states: Sequence) -> np.ndarray:
    c = np.array([element_of(s).coords for s in states])
    return c @ c.T


def perfectly_distinguishable(states: Sequence, tol: float = DEFAULT_TOL) -> bool:
    """Orthogonality of the Gram matrix ``<rho_i, rho_j>``."""
    if len(states) == 0:
        raise ValueError("need at least one state")
    kinds = {element_of(s).kind for s in states}
    if len(kinds) > 1:
        raise KindMismatchError("states live on different systems")
    g = gram_matrix(states)
    off = g - np.diag(np.diag(g))
    return bool(np.max(np.abs(off), initial=0.0) <= tol)


# ---------------------------------------------------------------------------
# seeded sampling


def _kind_of(system) -> AlgebraKind:
    return system.kind if isinstance(system, System) else system


def random_unitary_columns(kind: AlgebraKind, rng: np.random.Generator) -> list[np.ndarray]:
    """Orthonormal column blocks of a seeded orthogonal/unitary/symplectic matrix.

    Each block spans one line (real or complex: one column; quaternionic: the
    pair ``[v, J conj(v)]`` in the complex embedding).
    """
    n = kind.size
    if kind.family == REAL_SYMMETRIC:
        q, r = np.linalg.qr(rng.normal(size=(n, n)))
        q = q * np.sign(np.diag(r))
        return [q[:, [i]] for i in range(n)]
    if kind.family == QUATERNIONIC_HERMITIAN:
        g = rng.normal(size=(2 * n, n)) + 1j * rng.normal(size=(2 * n, n))
        return quaternionic_lines(g, n)
    g = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    q, r = np.linalg.qr(g)
    d = np.diag(r)
    q = q * (d / np.abs(d))
    return [q[:, [i]] for i in range(n)]


def random_frame(system, seed: SeedLike = 0) -> list[JordanElement]:
    """Seeded Jordan frame; classical systems always get the standard basis."""
    kind = _kind_of(system)
    rng = as_rng(seed)
    if kind.family == CLASSICAL:
        eye = np.eye(kind.dim)
        return [JordanElement(kind, e) for e in eye]
    if kind.family == SPIN_FACTOR:
        v = rng.normal(size=kind.size)
        v /= np.linalg.norm(v)
        return [from_natural(kind, 0.5 * np.concatenate([[1.0], s * v])) for s in (1.0, -1.0)]
    blocks = random_unitary_columns(kind, rng)
    return [JordanElement(kind, matrix_coords(kind, b @ b.conj().T)) for b in blocks]


def standard_frame(system) -> list[JordanElement]:
    """Diagonal frame of a matrix kind, ``(1, +-e_1)/2`` for spin factors."""
    kind = _kind_of(system)
    if kind.family == SPIN_FACTOR:
        e1 = np.zeros(kind.size)
        e1[0] = 1.0
        return [from_natural(kind, 0.5 * np.concatenate([[1.0], s * e1])) for s in (1.0, -1.0)]
    eye = np.eye(kind.dim)
    return [JordanElement(kind, eye[i]) for i in range(kind.rank)]


def random_pure_state(system, seed: SeedLike = 0) -> State:
    rng = as_rng(seed)
    kind = _kind_of(system)
    if kind.family == CLASSICAL:
        i = int(rng.integers(kind.dim))
        return State(JordanElement(kind, np.eye(kind.dim)[i]))
    return State(random_frame(kind, rng)[0])


def random_state(system, seed: SeedLike = 0, frame=None) -> State:
    """Dirichlet-weighted mixture over a (seeded random, unless given) frame."""
    rng = as_rng(seed)
    kind = _kind_of(system)
    if frame is None:
        frame = random_frame(kind, rng)
    p = rng.dirichlet(np.ones(len(frame)))
    return State(JordanElement(kind, p @ np.array([f.coords for f in frame])))


def random_effect(system, seed: SeedLike = 0, frame=None) -> Effect:
    rng = as_rng(seed)
    kind = _kind_of(system)
    if frame is None:
        frame = random_frame(kind, rng)
    lam = rng.uniform(size=len(frame))
    return Effect(JordanElement(kind, lam @ np.array([f.coords for f in frame])))


def random_element(system, seed: SeedLike = 0) -> JordanElement:
    """Gaussian coordinates; generically indefinite."""
    kind = _kind_of(system)
    return JordanElement(kind, as_rng(seed).normal(size=kind.dim))
