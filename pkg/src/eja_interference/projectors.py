"""Face effects and pure orthogonal projectors built from a Jordan frame.

The projector onto the face flagged by an index set ``I`` is the Jordan
compression ``P_I = U_{p_I}`` with ``p_I`` the sum of the selected frame
idempotents.  Index sets are 0-based positions in the frame.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import chain, combinations
from typing import Iterable, Sequence

import numpy as np

from .algebra import DEFAULT_TOL, JordanElement, eigenvalues, quadratic_rep_matrix, unit, zero
from .system import Effect, System, as_rng, element_of, random_frame


def _norm(m: np.ndarray) -> float:
    return float(np.linalg.norm(m, 2)) if m.size else 0.0


@dataclass(frozen=True, eq=False)
class LinearMap:
    """A linear map on one system, as an N x N matrix on coordinates."""

    system: System
    matrix: np.ndarray

    def __post_init__(self):
        m = np.array(self.matrix, dtype=float)
        n = self.system.dim
        if m.shape != (n, n):
            raise ValueError(f"expected a {n}x{n} matrix, got {m.shape}")
        if not np.all(np.isfinite(m)):
            raise ValueError("map has non-finite entries")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    def __call__(self, x):
        el = element_of(x)
        out = JordanElement(el.kind, self.matrix @ el.coords)
        return type(x)(out) if not isinstance(x, JordanElement) else out

    def __matmul__(self, other: "LinearMap") -> "LinearMap":
        """Composition ``self after other``."""
        if other.system != self.system:
            raise ValueError("cannot compose maps on different systems")
        return LinearMap(self.system, self.matrix @ other.matrix)

    def __add__(self, other: "LinearMap") -> "LinearMap":
        return LinearMap(self.system, self.matrix + other.matrix)

    def __sub__(self, other: "LinearMap") -> "LinearMap":
        return LinearMap(self.system, self.matrix - other.matrix)

    def __mul__(self, scalar) -> "LinearMap":
        return LinearMap(self.system, float(scalar) * self.matrix)

    __rmul__ = __mul__

    @classmethod
    def identity(cls, system: System) -> "LinearMap":
        return cls(system, np.eye(system.dim))


@dataclass(frozen=True, eq=False)
class SlitPartition:
    """A frame together with disjoint index sets over it."""

    frame: tuple
    subsets: tuple

    def __post_init__(self):
        frame = tuple(self.frame)
        subsets = tuple(tuple(sorted(int(i) for i in s)) for s in self.subsets)
        d = len(frame)
        seen: set[int] = set()
        for s in subsets:
            for i in s:
                if not 0 <= i < d:
                    raise IndexError(f"frame index {i} out of range for rank {d}")
                if i in seen:
                    raise ValueError(f"index {i} appears in two subsets")
                seen.add(i)
        object.__setattr__(self, "frame", frame)
        object.__setattr__(self, "subsets", subsets)

    def union(self, labels: Iterable[int]) -> tuple:
        return tuple(sorted(chain.from_iterable(self.subsets[k] for k in labels)))


def _check_indices(frame: Sequence[JordanElement], index_set: Iterable[int]) -> list[int]:
    idx = sorted({int(i) for i in index_set})
    for i in idx:
        if not 0 <= i < len(frame):
            raise IndexError(f"frame index {i} out of range for rank {len(frame)}")
    return idx


def face_idempotent(frame: Sequence[JordanElement], index_set: Iterable[int]) -> JordanElement:
    idx = _check_indices(frame, index_set)
    out = zero(frame[0].kind)
    for i in idx:
        out = out + frame[i]
    return out


def face_effect(frame: Sequence[JordanElement], index_set: Iterable[int]) -> Effect:
    """``a_I``: the effect that is certain on the face flagged by ``I``."""
    return Effect(face_idempotent(frame, index_set))


def projector(frame: Sequence[JordanElement], index_set: Iterable[int]) -> LinearMap:
    """Pure orthogonal projector ``P_I`` as the compression by ``p_I``."""
    p = face_idempotent(frame, index_set)
    return LinearMap(System(p.kind), quadratic_rep_matrix(p))


def all_subsets(d: int):
    return chain.from_iterable(combinations(range(d), k) for k in range(d + 1))


# ---------------------------------------------------------------------------
# checks


def _face_samples(frame, idx, samples, rng):
    """Random normalised states on the face spanned by ``frame[idx]``."""
    if not idx:
        return []
    kind = frame[0].kind
    sub = np.array([frame[i].coords for i in idx])
    comp = quadratic_rep_matrix(face_idempotent(frame, idx))
    out = []
    for k in range(samples):
        if k % 2 == 0:
            w = rng.dirichlet(np.ones(len(idx)))
            out.append(JordanElement(kind, w @ sub))
        else:
            full = random_frame(kind, rng)
            w = rng.dirichlet(np.ones(len(full)))
            rho = JordanElement(kind, comp @ (w @ np.array([f.coords for f in full])))
            if rho.trace > 1e-8:
                out.append(rho / rho.trace)
    return out


@dataclass(frozen=True)
class CheckReport:
    """Named residuals of one family of identities."""

    residuals: dict

    @property
    def worst(self) -> float:
        return max(self.residuals.values(), default=0.0)

    def passed(self, tol: float) -> bool:
        return self.worst <= tol


def projector_axiom_check(frame, index_set, samples: int = 100, tol: float = DEFAULT_TOL, seed=0) -> CheckReport:
    """Max of ``|P_I rho - rho|`` on the face and ``|P_I rho|`` on its orthogonal face.

    Samples are mixtures of the relevant frame members plus compressions of
    random full-rank states onto the face.
    """
    rng = as_rng(seed)
    frame = list(frame)
    idx = _check_indices(frame, index_set)
    comp = sorted(set(range(len(frame))) - set(idx))
    p = projector(frame, idx).matrix
    inside = _face_samples(frame, idx, samples, rng)
    outside = _face_samples(frame, comp, samples, rng)
    fix = max((float(np.linalg.norm(p @ x.coords - x.coords)) for x in inside), default=0.0)
    kill = max((float(np.linalg.norm(p @ x.coords)) for x in outside), default=0.0)
    return CheckReport({"fixes_face": fix, "kills_orthogonal_face": kill})


def projector_lattice_check(frame, tol: float = DEFAULT_TOL) -> CheckReport:
    """Idempotence, products, self-adjointness and ``u P_I = a_I`` over all subset pairs."""
    frame = list(frame)
    d = len(frame)
    if d > 12:
        raise ValueError("subset enumeration limited to rank <= 12")
    subsets = [frozenset(s) for s in all_subsets(d)]
    mats = {s: projector(frame, s).matrix for s in subsets}
    u = unit(frame[0].kind).coords
    idem = prod = disjoint = sym = unit_row = 0.0
    for s in subsets:
        m = mats[s]
        idem = max(idem, _norm(m @ m - m))
        sym = max(sym, _norm(m - m.T))
        a = face_idempotent(frame, s).coords
        unit_row = max(unit_row, float(np.linalg.norm(u @ m - a)))
        for t in subsets:
            r = _norm(m @ mats[t] - mats[s & t])
            prod = max(prod, r)
            if not s & t:
                disjoint = max(disjoint, _norm(m @ mats[t]))
    return CheckReport(
        {
            "idempotent": idem,
            "product_is_meet": prod,
            "disjoint_product_zero": disjoint,
            "self_adjoint": sym,
            "unit_compression": unit_row,
        }
    )


def purity_preservation_check(frame, index_set, trials: int = 200, seed=0, tol: float = DEFAULT_TOL) -> float:
    """Largest non-leading eigenvalue (in modulus) of renormalised ``P_I psi`` over random pure ``psi``."""
    rng = as_rng(seed)
    frame = list(frame)
    kind = frame[0].kind
    p = projector(frame, index_set).matrix
    worst = 0.0
    for _ in range(trials):
        psi = random_frame(kind, rng)[int(rng.integers(kind.rank))]
        out = JordanElement(kind, p @ psi.coords)
        tr = out.trace
        if tr <= tol:
            continue
        w = eigenvalues(out / tr)
        if len(w) > 1:
            worst = max(worst, float(np.max(np.abs(w[1:]))))
    return worst
