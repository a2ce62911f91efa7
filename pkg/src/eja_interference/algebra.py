"""Euclidean Jordan algebras in orthonormal coordinates.

Every element is stored as a real coordinate vector with respect to a fixed
basis that is orthonormal for the trace form ``<x, y> = tr(x o y)``.  With
that choice the trace inner product is the plain dot product of coordinates
and adjoints of linear maps are matrix transposes.

Catalogue and bases
-------------------
classical(d)
    R^d with the componentwise product; standard basis.
real_symmetric(n), complex_hermitian(n)
    Hermitian matrices with ``x o y = (xy + yx) / 2``.  Basis: the diagonal
    units ``E_ii``, then for each ``i < j`` the symmetric generator
    ``(E_ij + E_ji) / sqrt(2)`` and (complex only) ``i (E_ij - E_ji) / sqrt(2)``.
quaternionic_hermitian(n)
    Quaternionic Hermitian matrices, stored through the complex embedding
    ``Z1 + Z2 j -> [[Z1, Z2], [-conj(Z2), conj(Z1)]]`` (block layout, size 2n).
    Basis: ``E_ii``, then for each ``i < j`` the generators with off-diagonal
    entry ``q / sqrt(2)`` for ``q`` in ``1, i, j, k``.  The trace form is half
    the trace of the embedded product.
spin_factor(m)
    R x R^m with ``(s, x) o (t, y) = (st + x.y, s y + t x)`` and trace
    ``tr(t, x) = 2 t`` (rank-2 normalisation).  Coordinates are
    ``sqrt(2) * (t, x)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

import numpy as np

CLASSICAL = "classical"
REAL_SYMMETRIC = "real_symmetric"
COMPLEX_HERMITIAN = "complex_hermitian"
QUATERNIONIC_HERMITIAN = "quaternionic_hermitian"
SPIN_FACTOR = "spin_factor"

FAMILIES = (CLASSICAL, REAL_SYMMETRIC, COMPLEX_HERMITIAN, QUATERNIONIC_HERMITIAN, SPIN_FACTOR)
MATRIX_FAMILIES = (REAL_SYMMETRIC, COMPLEX_HERMITIAN, QUATERNIONIC_HERMITIAN)

DEFAULT_TOL = 1e-9
# relative width used to group numerically equal eigenvalues
CLUSTER_REL = 1e-8

_SQRT2 = np.sqrt(2.0)


class KindMismatchError(ValueError):
    """Raised when two elements from different algebras are combined."""


class SpectralError(ArithmeticError):
    """Raised when a spectral decomposition fails its reconstruction check."""


@dataclass(frozen=True)
class AlgebraKind:
    """One entry of the algebra catalogue, e.g. ``AlgebraKind("spin_factor", 3)``."""

    family: str
    size: int

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unsupported kind {self.family!r}")
        if not isinstance(self.size, (int, np.integer)) or isinstance(self.size, bool):
            raise TypeError("size must be an integer")
        lowest = 1 if self.family == CLASSICAL else 2
        if self.size < lowest:
            raise ValueError(f"{self.family} needs size >= {lowest}, got {self.size}")

    @property
    def rank(self) -> int:
        if self.family == SPIN_FACTOR:
            return 2
        return int(self.size)

    @property
    def dim(self) -> int:
        n = int(self.size)
        return {
            CLASSICAL: n,
            REAL_SYMMETRIC: n * (n + 1) // 2,
            COMPLEX_HERMITIAN: n * n,
            QUATERNIONIC_HERMITIAN: n * (2 * n - 1),
            SPIN_FACTOR: 1 + n,
        }[self.family]

    @property
    def is_matrix(self) -> bool:
        return self.family in MATRIX_FAMILIES

    def __str__(self):
        return f"{self.family}({self.size})"


def classical(d: int) -> AlgebraKind:
    return AlgebraKind(CLASSICAL, d)


def real_symmetric(n: int) -> AlgebraKind:
    return AlgebraKind(REAL_SYMMETRIC, n)


def complex_hermitian(n: int) -> AlgebraKind:
    return AlgebraKind(COMPLEX_HERMITIAN, n)


def quaternionic_hermitian(n: int) -> AlgebraKind:
    return AlgebraKind(QUATERNIONIC_HERMITIAN, n)


def spin_factor(m: int) -> AlgebraKind:
    return AlgebraKind(SPIN_FACTOR, m)


@dataclass(frozen=True, eq=False)
class JordanElement:
    """An element of a catalogued algebra, immutable once built."""

    kind: AlgebraKind
    coords: np.ndarray = field(repr=False)

    def __post_init__(self):
        c = np.array(self.coords, dtype=float).reshape(-1)
        if c.shape[0] != self.kind.dim:
            raise ValueError(f"{self.kind} needs {self.kind.dim} coordinates, got {c.shape[0]}")
        c.setflags(write=False)
        object.__setattr__(self, "coords", c)

    def __repr__(self):
        return f"JordanElement({self.kind}, {np.array2string(self.coords, precision=6)})"

    def _check(self, other):
        if not isinstance(other, JordanElement):
            return NotImplemented
        if other.kind != self.kind:
            raise KindMismatchError(f"{self.kind} vs {other.kind}")
        return other

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return JordanElement(self.kind, self.coords + other.coords)

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return JordanElement(self.kind, self.coords - other.coords)

    def __mul__(self, scalar):
        if isinstance(scalar, JordanElement):
            return NotImplemented
        return JordanElement(self.kind, float(scalar) * self.coords)

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        return JordanElement(self.kind, self.coords / float(scalar))

    def __neg__(self):
        return JordanElement(self.kind, -self.coords)

    @property
    def trace(self) -> float:
        """Canonical trace, i.e. ``<unit, self>``."""
        return float(unit(self.kind).coords @ self.coords)


def zero(kind: AlgebraKind) -> JordanElement:
    return JordanElement(kind, np.zeros(kind.dim))


# ---------------------------------------------------------------------------
# matrix kinds: basis stacks and conversions


def _multiplicity(kind: AlgebraKind) -> int:
    return 2 if kind.family == QUATERNIONIC_HERMITIAN else 1


@lru_cache(maxsize=None)
def matrix_basis(kind: AlgebraKind) -> np.ndarray:
    """Orthonormal basis as a stack of (embedded) Hermitian matrices, shape (N, m, m)."""
    n = kind.size
    s = 1.0 / _SQRT2
    mats = []
    if kind.family == REAL_SYMMETRIC:
        for i in range(n):
            b = np.zeros((n, n))
            b[i, i] = 1.0
            mats.append(b)
        for i in range(n):
            for j in range(i + 1, n):
                b = np.zeros((n, n))
                b[i, j] = b[j, i] = s
                mats.append(b)
        out = np.array(mats)
    elif kind.family == COMPLEX_HERMITIAN:
        for i in range(n):
            b = np.zeros((n, n), complex)
            b[i, i] = 1.0
            mats.append(b)
        for i in range(n):
            for j in range(i + 1, n):
                b = np.zeros((n, n), complex)
                b[i, j] = b[j, i] = s
                mats.append(b)
                b = np.zeros((n, n), complex)
                b[i, j] = 1j * s
                b[j, i] = -1j * s
                mats.append(b)
        out = np.array(mats)
    elif kind.family == QUATERNIONIC_HERMITIAN:

        def embed(z1, z2):
            return np.block([[z1, z2], [-z2.conj(), z1.conj()]])

        zeros = np.zeros((n, n), complex)
        for i in range(n):
            z1 = zeros.copy()
            z1[i, i] = 1.0
            mats.append(embed(z1, zeros))
        for i in range(n):
            for j in range(i + 1, n):
                # entries q/sqrt2 at (i, j) and conj(q)/sqrt2 at (j, i), q = 1, i, j, k
                z1 = zeros.copy()
                z1[i, j] = z1[j, i] = s
                mats.append(embed(z1, zeros))
                z1 = zeros.copy()
                z1[i, j], z1[j, i] = 1j * s, -1j * s
                mats.append(embed(z1, zeros))
                z2 = zeros.copy()
                z2[i, j], z2[j, i] = s, -s
                mats.append(embed(zeros, z2))
                z2 = zeros.copy()
                z2[i, j], z2[j, i] = 1j * s, -1j * s
                mats.append(embed(zeros, z2))
        out = np.array(mats)
    else:
        raise ValueError(f"{kind} is not a matrix kind")
    out.setflags(write=False)
    return out


def matrix_coords(kind: AlgebraKind, mats: np.ndarray) -> np.ndarray:
    """Coordinates of one matrix (m, m) or a stack (k, m, m)."""
    basis = matrix_basis(kind)
    if mats.ndim == 2:
        c = np.einsum("kij,ji->k", basis, mats)
    else:
        c = np.einsum("kij,lji->lk", basis, mats)
    return np.real(c) / _multiplicity(kind)


def to_matrix(x: JordanElement) -> np.ndarray:
    """Matrix form of a matrix-kind element (complex embedding for quaternions)."""
    if not x.kind.is_matrix:
        raise ValueError(f"{x.kind} has no matrix form")
    return np.tensordot(x.coords, matrix_basis(x.kind), axes=1)


def from_matrix(kind: AlgebraKind, mat) -> JordanElement:
    """Element from a Hermitian matrix; quaternionic kinds take the 2n x 2n embedding.

    The anti-Hermitian part (and, for quaternions, any part outside the
    embedded subspace) is discarded by the orthogonal projection.
    """
    mat = np.asarray(mat)
    m = kind.size * _multiplicity(kind)
    if mat.shape != (m, m):
        raise ValueError(f"{kind} expects a {m}x{m} matrix, got {mat.shape}")
    return JordanElement(kind, matrix_coords(kind, mat))


def from_natural(kind: AlgebraKind, value) -> JordanElement:
    """Build an element from its natural form.

    classical: the vector itself; matrix kinds: the matrix (see :func:`from_matrix`);
    spin factor: the vector ``(t, x_1, ..., x_m)``.
    """
    if kind.is_matrix:
        return from_matrix(kind, value)
    v = np.asarray(value, dtype=float).reshape(-1)
    if kind.family == SPIN_FACTOR:
        return JordanElement(kind, _SQRT2 * v)
    return JordanElement(kind, v)


def to_natural(x: JordanElement) -> np.ndarray:
    if x.kind.is_matrix:
        return to_matrix(x)
    if x.kind.family == SPIN_FACTOR:
        return x.coords / _SQRT2
    return x.coords.copy()


# ---------------------------------------------------------------------------
# algebra operations


@lru_cache(maxsize=None)
def _unit(kind: AlgebraKind) -> JordanElement:
    if kind.family == CLASSICAL:
        return JordanElement(kind, np.ones(kind.dim))
    if kind.family == SPIN_FACTOR:
        c = np.zeros(kind.dim)
        c[0] = _SQRT2
        return JordanElement(kind, c)
    c = np.zeros(kind.dim)
    c[: kind.size] = 1.0
    return JordanElement(kind, c)


def unit(kind: AlgebraKind) -> JordanElement:
    """Multiplicative unit of the algebra."""
    return _unit(kind)


def _same_kind(x: JordanElement, y: JordanElement):
    if x.kind != y.kind:
        raise KindMismatchError(f"{x.kind} vs {y.kind}")


def jordan_product(x: JordanElement, y: JordanElement) -> JordanElement:
    _same_kind(x, y)
    kind = x.kind
    if kind.family == CLASSICAL:
        return JordanElement(kind, x.coords * y.coords)
    if kind.family == SPIN_FACTOR:
        s, xv = x.coords[0] / _SQRT2, x.coords[1:] / _SQRT2
        t, yv = y.coords[0] / _SQRT2, y.coords[1:] / _SQRT2
        out = np.concatenate([[s * t + xv @ yv], s * yv + t * xv])
        return JordanElement(kind, _SQRT2 * out)
    a, b = to_matrix(x), to_matrix(y)
    return JordanElement(kind, matrix_coords(kind, (a @ b + b @ a) / 2))


def trace_inner_product(x: JordanElement, y: JordanElement) -> float:
    _same_kind(x, y)
    return float(x.coords @ y.coords)


def quadratic_rep(a: JordanElement, x: JordanElement) -> JordanElement:
    """``U_a(x) = 2 a o (a o x) - (a o a) o x``; equals ``a x a`` for matrix kinds."""
    _same_kind(a, x)
    if a.kind.is_matrix:
        am = to_matrix(a)
        return JordanElement(a.kind, matrix_coords(a.kind, am @ to_matrix(x) @ am))
    return 2 * jordan_product(a, jordan_product(a, x)) - jordan_product(jordan_product(a, a), x)


def quadratic_rep_matrix(a: JordanElement) -> np.ndarray:
    """Coordinate matrix of ``U_a``; symmetric because ``U_a`` is self-adjoint."""
    kind = a.kind
    if kind.family == CLASSICAL:
        return np.diag(a.coords**2)
    if kind.is_matrix:
        am = to_matrix(a)
        basis = matrix_basis(kind)
        images = am @ basis @ am
        return matrix_coords(kind, images).T
    eye = np.eye(kind.dim)
    return np.column_stack([quadratic_rep(a, JordanElement(kind, e)).coords for e in eye])


# ---------------------------------------------------------------------------
# spectral theory


@dataclass(frozen=True, eq=False)
class SpectralDecomposition:
    """Descending eigenvalues together with a Jordan frame."""

    eigenvalues: np.ndarray
    frame: tuple

    def reconstruct(self) -> JordanElement:
        kind = self.frame[0].kind
        c = sum(lam * p.coords for lam, p in zip(self.eigenvalues, self.frame))
        return JordanElement(kind, c)


def _embedded_eigvalsh(x: JordanElement) -> np.ndarray:
    w = np.linalg.eigvalsh(to_matrix(x))
    if x.kind.family == QUATERNIONIC_HERMITIAN:
        # eigenvalues of the embedding come in adjacent equal pairs
        w = w.reshape(-1, 2).mean(axis=1)
    return w


def eigenvalues(x: JordanElement) -> np.ndarray:
    """Spectrum in descending order (cheaper than a full decomposition)."""
    kind = x.kind
    if kind.family == CLASSICAL:
        w = x.coords.copy()
    elif kind.family == SPIN_FACTOR:
        t, r = x.coords[0] / _SQRT2, np.linalg.norm(x.coords[1:]) / _SQRT2
        w = np.array([t + r, t - r])
    else:
        w = _embedded_eigvalsh(x)
    return np.sort(w)[::-1]


def embedded_eigenvalues(x: JordanElement) -> np.ndarray:
    """Raw eigenvalues of the complex embedding of a quaternionic element, ascending."""
    if x.kind.family != QUATERNIONIC_HERMITIAN:
        raise ValueError("only quaternionic elements have a complex embedding")
    return np.linalg.eigvalsh(to_matrix(x))


def _clusters(w: np.ndarray, width: float) -> list[list[int]]:
    """Group indices of a descending array into runs of nearly equal values."""
    groups = [[0]]
    for i in range(1, len(w)):
        if w[groups[-1][0]] - w[i] <= width:
            groups[-1].append(i)
        else:
            groups.append([i])
    return groups


def j_partner(v: np.ndarray) -> np.ndarray:
    """``J conj(v)`` for the block embedding; spans the quaternionic line of ``v``."""
    n = v.shape[0] // 2
    vc = v.conj()
    return np.concatenate([vc[n:], -vc[:n]])


def quaternionic_lines(vectors: np.ndarray, count: int) -> list[np.ndarray]:
    """Gram-Schmidt over quaternionic lines.

    ``vectors`` holds candidate columns in C^{2n}.  Returns ``count``
    orthonormal column pairs ``[v, J conj(v)]``, each the embedding of one
    quaternionic unit vector.  A candidate is accepted once its residual
    carries at least half of the average remaining weight, which keeps the
    choice deterministic and well away from cancellation.
    """
    lines: list[np.ndarray] = []
    span = np.zeros((vectors.shape[0], 0), complex)
    for _ in range(count):
        resid = vectors - span @ (span.conj().T @ vectors)
        norms2 = np.sum(np.abs(resid) ** 2, axis=0)
        cut = 0.5 * norms2.sum() / max(1, norms2.size)
        k = int(np.argmax(norms2 >= cut))
        v = resid[:, k]
        v = v - span @ (span.conj().T @ v)
        v = v / np.linalg.norm(v)
        w = j_partner(v)
        w = w - span @ (span.conj().T @ w) - v * (v.conj() @ w)
        w = w / np.linalg.norm(w)
        pair = np.column_stack([v, w])
        lines.append(pair)
        span = np.hstack([span, pair])
    return lines


def _gram_schmidt_columns(vectors: np.ndarray, count: int) -> list[np.ndarray]:
    out: list[np.ndarray] = []
    span = np.zeros((vectors.shape[0], 0), vectors.dtype)
    for _ in range(count):
        resid = vectors - span @ (span.conj().T @ vectors)
        norms2 = np.sum(np.abs(resid) ** 2, axis=0)
        cut = 0.5 * norms2.sum() / max(1, norms2.size)
        k = int(np.argmax(norms2 >= cut))
        v = resid[:, k]
        v = v - span @ (span.conj().T @ v)
        v = v / np.linalg.norm(v)
        out.append(v[:, None])
        span = np.hstack([span, v[:, None]])
    return out


def _canonical_order(frame: list[JordanElement]) -> list[JordanElement]:
    return sorted(frame, key=lambda p: tuple(-np.round(p.coords, 10)))


def spectral_decompose(x: JordanElement, tol: float = DEFAULT_TOL) -> SpectralDecomposition:
    """Eigenvalues (descending) and a Jordan frame reconstructing ``x``.

    Eigenvalues closer than ``1e-8 * max(1, spectral radius)`` are treated as
    one cluster; the frame inside a cluster is rebuilt by Gram-Schmidt on the
    columns of the cluster projector, so it does not depend on the basis the
    eigensolver happened to return.  Raises :class:`SpectralError` if the
    reconstruction misses ``x`` by more than ``tol`` (relative) plus the
    cluster width.
    """
    if not np.all(np.isfinite(x.coords)):
        raise ValueError("element has non-finite coordinates")
    kind = x.kind
    if kind.family == CLASSICAL:
        order = np.argsort(-x.coords, kind="stable")
        eye = np.eye(kind.dim)
        frame = tuple(JordanElement(kind, eye[i]) for i in order)
        return SpectralDecomposition(x.coords[order].copy(), frame)

    radius = float(np.max(np.abs(eigenvalues(x)))) if x.coords.any() else 0.0
    scale = max(1.0, radius)
    width = CLUSTER_REL * scale

    if kind.family == SPIN_FACTOR:
        t = x.coords[0] / _SQRT2
        v = x.coords[1:] / _SQRT2
        r = float(np.linalg.norm(v))
        if r > width:
            direction = v / r
        else:
            direction = np.zeros(kind.size)
            direction[0] = 1.0
        frame = tuple(
            from_natural(kind, 0.5 * np.concatenate([[1.0], sign * direction])) for sign in (1.0, -1.0)
        )
        dec = SpectralDecomposition(np.array([t + r, t - r]), frame)
    else:
        mat = to_matrix(x)
        w, vecs = np.linalg.eigh(mat)
        w, vecs = w[::-1], vecs[:, ::-1]
        quaternionic = kind.family == QUATERNIONIC_HERMITIAN
        frame = []
        for group in _clusters(w, width):
            q = vecs[:, group]
            lines_needed = len(group) // 2 if quaternionic else len(group)
            if quaternionic and len(group) % 2:
                raise SpectralError("unpaired eigenvalue in quaternionic embedding")
            if lines_needed == 1:
                projs = [q @ q.conj().T]
            else:
                cluster_proj = q @ q.conj().T
                if quaternionic:
                    blocks = quaternionic_lines(cluster_proj, lines_needed)
                else:
                    blocks = _gram_schmidt_columns(cluster_proj, lines_needed)
                projs = [b @ b.conj().T for b in blocks]
            members = [JordanElement(kind, matrix_coords(kind, p)) for p in projs]
            frame.extend(_canonical_order(members))
        vals = np.array([x.coords @ p.coords for p in frame])
        dec = SpectralDecomposition(vals, tuple(frame))

    err = float(np.linalg.norm(dec.reconstruct().coords - x.coords))
    if err > tol * scale + 2 * width:
        raise SpectralError(f"frame reconstruction off by {err:.3e}")
    return dec


def cone_contains(x: JordanElement, tol: float = DEFAULT_TOL) -> bool:
    """Membership in the cone of squares, relative to the spectral radius."""
    w = eigenvalues(x)
    radius = float(np.max(np.abs(w)))
    return bool(w[-1] >= -tol * max(1.0, radius))


def frame_residuals(frame: Sequence[JordanElement]) -> dict:
    """Largest violation of each Jordan-frame axiom (Euclidean coordinate norm)."""
    kind = frame[0].kind
    idem = max(float(np.linalg.norm(jordan_product(p, p).coords - p.coords)) for p in frame)
    trace = max(abs(p.trace - 1.0) for p in frame)
    gram = np.array([[p.coords @ q.coords for q in frame] for p in frame])
    ortho = float(np.max(np.abs(gram - np.diag(np.diag(gram)))))
    total = np.sum([p.coords for p in frame], axis=0)
    sum_unit = float(np.linalg.norm(total - unit(kind).coords))
    return {
        "idempotency": idem,
        "trace": trace,
        "orthogonality": ortho,
        "sum_unit": sum_unit,
        "count": abs(len(frame) - kind.rank),
    }
