"""Sorkin interference terms for multi-slit experiments.

Slits are numbered 0..n-1 in the Python API; each slit is a block of frame
indices.  Blocking every slit outside ``I`` is modelled by the projector
onto the union of the open blocks, so ``v_I = (E | P_I rho)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Mapping, Sequence

import numpy as np

from .algebra import DEFAULT_TOL, JordanElement, spectral_decompose
from .projectors import projector
from .system import (
    Effect,
    State,
    System,
    as_rng,
    pairing,
    random_effect,
    random_frame,
    random_state,
)


def nonempty_subsets(n: int) -> list[frozenset]:
    """Subsets of ``range(n)`` ordered by size, then lexicographically."""
    return [frozenset(c) for k in range(1, n + 1) for c in combinations(range(n), k)]


def subset_key(subset) -> str:
    """1-based digit-string label, e.g. ``{0, 2} -> "13"``."""
    return "".join(str(i + 1) for i in sorted(subset))


@dataclass(frozen=True)
class ValueTable:
    """Detection probabilities ``v_I`` for every nonempty set of open slits."""

    n: int
    values: Mapping[frozenset, float]

    def __post_init__(self):
        vals = {frozenset(k): float(v) for k, v in dict(self.values).items()}
        for s in nonempty_subsets(self.n):
            if s not in vals:
                raise KeyError(f"missing entry for slit subset {subset_key(s)}")
            if not np.isfinite(vals[s]):
                raise ValueError(f"non-finite entry for slit subset {subset_key(s)}")
        extra = set(vals) - set(nonempty_subsets(self.n))
        if extra:
            raise KeyError(f"unexpected subsets {sorted(subset_key(s) for s in extra)}")
        object.__setattr__(self, "values", vals)

    def __getitem__(self, subset) -> float:
        return self.values[frozenset(subset)]

    def restrict(self, k: int) -> "ValueTable":
        """Sub-table of the first ``k`` slits."""
        return ValueTable(k, {s: self.values[s] for s in nonempty_subsets(k)})


def sorkin_I(n: int, table: ValueTable) -> float:
    """``I_n = sum over nonempty I of (-1)^(n-|I|) v_I``, using slits ``0..n-1``."""
    if n > table.n:
        raise ValueError(f"table has order {table.n}, asked for I_{n}")
    total = 0.0
    for s in nonempty_subsets(n):
        try:
            v = table.values[s]
        except KeyError:
            raise KeyError(f"missing entry for slit subset {subset_key(s)}") from None
        total += (-1) ** (n - len(s)) * v
    return total


@dataclass(frozen=True, eq=False)
class SlitExperiment:
    system: System
    frame: tuple
    blocks: tuple
    state: State
    effect: Effect

    def __post_init__(self):
        frame = tuple(self.frame)
        blocks = tuple(tuple(sorted(int(i) for i in b)) for b in self.blocks)
        if len(frame) != self.system.rank:
            raise ValueError("frame size does not match the rank")
        seen: set[int] = set()
        for b in blocks:
            if not b:
                raise ValueError("slit blocks must be nonempty")
            for i in b:
                if not 0 <= i < len(frame):
                    raise IndexError(f"frame index {i} out of range")
                if i in seen:
                    raise ValueError(f"frame index {i} used by two slits")
                seen.add(i)
        object.__setattr__(self, "frame", frame)
        object.__setattr__(self, "blocks", blocks)

    @property
    def n(self) -> int:
        return len(self.blocks)

    def open_indices(self, slits) -> list[int]:
        return sorted(i for k in slits for i in self.blocks[k])


@dataclass(frozen=True)
class InterferenceReport:
    table: ValueTable
    orders: tuple
    defect_norms: tuple = field(default=())


def slit_values(exp: SlitExperiment) -> ValueTable:
    vals = {}
    for s in nonempty_subsets(exp.n):
        p = projector(exp.frame, exp.open_indices(s))
        vals[s] = pairing(exp.effect, p(exp.state.element))
    return ValueTable(exp.n, vals)


def defect_matrix(frame: Sequence[JordanElement], blocks: Sequence[Sequence[int]], n: int | None = None) -> np.ndarray:
    """Coordinate matrix of ``D_n = sum (-1)^(n-|I|) P_I`` over the first ``n`` blocks."""
    n = len(blocks) if n is None else n
    if n > len(blocks):
        raise ValueError(f"only {len(blocks)} blocks, asked for order {n}")
    dim = frame[0].kind.dim
    out = np.zeros((dim, dim))
    for s in nonempty_subsets(n):
        idx = [i for k in s for i in blocks[k]]
        out += (-1) ** (n - len(s)) * projector(frame, idx).matrix
    return out


def sorkin_defect_norm(frame, slit_assignment, n: int | None = None) -> float:
    """Spectral norm of ``D_n``; it vanishes iff ``I_n = 0`` for every state and effect."""
    d = defect_matrix(frame, slit_assignment, n)
    return float(np.linalg.norm(d, 2))


def interference_report(exp: SlitExperiment, max_order: int | None = None) -> InterferenceReport:
    """Value table, ``I_1..I_n`` and defect norms, lower orders on the first ``k`` slits."""
    n = exp.n if max_order is None else max_order
    if n != exp.n:
        raise ValueError(f"experiment has {exp.n} slits, max_order is {n}")
    table = slit_values(exp)
    orders = tuple(sorkin_I(k, table) for k in range(1, n + 1))
    norms = tuple(sorkin_defect_norm(exp.frame, exp.blocks, k) for k in range(1, n + 1))
    return InterferenceReport(table, orders, norms)


def report_from_table(table: ValueTable, order: int | None = None) -> InterferenceReport:
    """Report for a raw value table (no operator data)."""
    order = table.n if order is None else order
    sub = table.restrict(order) if order else ValueTable(0, {})
    return InterferenceReport(sub, tuple(sorkin_I(k, sub) for k in range(1, order + 1)))


def default_blocks(rank: int, n: int) -> list[list[int]]:
    """Split frame indices ``0..rank-1`` into ``n`` contiguous, nearly equal slits."""
    if not 1 <= n <= rank:
        raise ValueError(f"cannot split rank {rank} into {n} slits")
    return [list(map(int, b)) for b in np.array_split(np.arange(rank), n)]


def random_experiment(system: System, n: int, seed=0, blocks=None) -> SlitExperiment:
    """Seeded frame, state and effect for an ``n``-slit experiment."""
    rng = as_rng(seed)
    frame = random_frame(system, rng)
    blocks = default_blocks(system.rank, n) if blocks is None else blocks
    rho = random_state(system, rng)
    e = random_effect(system, rng)
    return SlitExperiment(system, frame, blocks, rho, e)


# ---------------------------------------------------------------------------
# search for the largest |I_n|


@dataclass(frozen=True, eq=False)
class InterferenceWitness:
    value: float
    state: State
    effect: Effect
    frame: tuple
    blocks: tuple


def _best_state(kind, functional: np.ndarray) -> JordanElement:
    """Normalised state maximising ``<functional, rho>``: its top frame idempotent."""
    dec = spectral_decompose(JordanElement(kind, functional))
    return dec.frame[0]


def _best_effect(kind, functional: np.ndarray) -> JordanElement:
    """Effect ``0 <= E <= u`` maximising ``<E, functional>``: the positive spectral projector."""
    dec = spectral_decompose(JordanElement(kind, functional))
    out = np.zeros(kind.dim)
    for lam, p in zip(dec.eigenvalues, dec.frame):
        if lam > 0:
            out += p.coords
    return JordanElement(kind, out)


def maximize_interference(system: System, n: int, trials: int = 50, iters: int = 20, seed=0) -> InterferenceWitness:
    """Alternating exact ascent of ``|(E | D_n rho)|`` over states and effects.

    Each trial draws a frame and a starting effect.  With ``E`` fixed the
    best state is the top idempotent of ``D_n^T E``; with ``rho`` fixed the
    best effect is the projector onto the positive part of ``D_n rho``.  Both
    signs of ``D_n`` are climbed.  Deterministic in ``seed``.
    """
    if system.rank < n:
        raise ValueError(f"rank {system.rank} is too small for {n} slits")
    kind = system.kind
    blocks = default_blocks(system.rank, n)
    root = np.random.SeedSequence(seed)
    best = None
    for child in root.spawn(trials):
        rng = np.random.default_rng(child)
        frame = random_frame(system, rng)
        d = defect_matrix(frame, blocks, n)
        start = random_effect(system, rng).element
        for sign in (1.0, -1.0):
            m = sign * d
            e = start
            rho = _best_state(kind, m.T @ e.coords)
            for _ in range(iters):
                e = _best_effect(kind, m @ rho.coords)
                rho = _best_state(kind, m.T @ e.coords)
            value = float(e.coords @ d @ rho.coords)
            if best is None or abs(value) > abs(best.value):
                best = InterferenceWitness(value, State(rho), Effect(e), tuple(frame), tuple(map(tuple, blocks)))
    return best


def hierarchy_check(system: System, seed=0, samples: int = 200, tol: float = DEFAULT_TOL) -> bool:
    """If every sampled ``|I_3|`` is within ``tol`` then every ``|I_4|`` is within ``16 tol``."""
    if system.rank < 4:
        raise ValueError("the fourth-order leg needs rank >= 4")
    rng = as_rng(seed)
    worst = {3: 0.0, 4: 0.0}
    for _ in range(samples):
        for n in (3, 4):
            table = slit_values(random_experiment(system, n, rng))
            worst[n] = max(worst[n], abs(sorkin_I(n, table)))
    return worst[3] > tol or worst[4] <= 16 * tol
