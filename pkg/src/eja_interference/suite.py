"""Invariant suite run by ``verify``: one residual per identity, seeded."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .adjoint import (
    adjoint_law_check,
    dagger_fidelity,
    dagger_norm,
    frame_permutation_map,
    mixture,
    norm_report,
    random_reversible_map,
    channel_classify,
)
from .algebra import (
    cone_contains,
    frame_residuals,
    jordan_product,
    spectral_decompose,
)
from .interference import default_blocks, sorkin_defect_norm
from .projectors import projector_axiom_check, projector_lattice_check, purity_preservation_check
from .system import (
    System,
    as_rng,
    invariant_state,
    random_element,
    random_frame,
    random_state,
)


@dataclass(frozen=True)
class Check:
    name: str
    residual: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return bool(self.residual <= self.tolerance)


def _frames(system, rng, count):
    return [random_frame(system, rng) for _ in range(count)]


def run_suite(system: System, seed: int = 0, samples: int = 50) -> list[Check]:
    d = system.rank
    rng = as_rng(seed)
    checks = []

    frames = _frames(system, rng, 5)
    worst = max(max(frame_residuals(f).values()) for f in frames)
    checks.append(Check("frame_axioms", worst, 1e-10))

    elems = [random_element(system, rng) for _ in range(samples)]
    recon = 0.0
    for x in elems:
        dec = spectral_decompose(x)
        recon = max(recon, float(np.linalg.norm(dec.reconstruct().coords - x.coords)))
        recon = max(recon, max(frame_residuals(dec.frame).values()))
    checks.append(Check("spectral_decomposition", recon, 1e-9))

    jordan = 0.0
    for x, y in zip(elems, elems[1:]):
        x2 = jordan_product(x, x)
        lhs = jordan_product(jordan_product(x2, y), x)
        rhs = jordan_product(x2, jordan_product(y, x))
        jordan = max(jordan, float(np.linalg.norm(lhs.coords - rhs.coords)))
    checks.append(Check("jordan_identity", jordan, 1e-9))

    # a negative eigenvalue is exposed by its own idempotent
    missed = 0
    for x in elems:
        if not cone_contains(x):
            dec = spectral_decompose(x)
            if x.coords @ dec.frame[-1].coords >= 0:
                missed += 1
    checks.append(Check("self_duality_witness_misses", float(missed), 0.0))
    states = [random_state(system, rng) for _ in range(samples)]
    worst_pair = 0.0
    for a in states:
        for b in states[:10]:
            worst_pair = max(worst_pair, -float(a.coords @ b.coords))
    checks.append(Check("cone_pairing_nonnegative", worst_pair, 1e-10))
    sym = max(abs(float(a.coords @ b.coords - b.coords @ a.coords)) for a, b in zip(states, states[1:]))
    checks.append(Check("dagger_symmetry", sym, 1e-12))

    if d <= 6:
        lattice = max(projector_lattice_check(f).worst for f in frames[:3])
        checks.append(Check("projector_lattice", lattice, 1e-9))
    axioms = 0.0
    purity = 0.0
    for f in frames[:3]:
        for subset in ([0], list(range((d + 1) // 2))):
            axioms = max(axioms, projector_axiom_check(f, subset, samples=20, seed=rng).worst)
            purity = max(purity, purity_preservation_check(f, subset, trials=20, seed=rng))
    checks.append(Check("projector_axioms", axioms, 1e-9))
    checks.append(Check("purity_preservation", purity, 1e-9))

    for n in range(3, d + 1):
        blocks = default_blocks(d, n)
        worst = max(sorkin_defect_norm(f, blocks, n) for f in frames)
        checks.append(Check(f"defect_norm_order_{n}", worst, 1e-9))

    bound = 0.0
    for x in elems:
        rep = norm_report(x)
        bound = max(bound, rep.two_norm - rep.one_norm, rep.one_norm - np.sqrt(d) * rep.two_norm)
    checks.append(Check("norm_bounds", max(bound, 0.0), 1e-10))
    chi = invariant_state(system)
    checks.append(Check("invariant_state_norm", abs(dagger_norm(chi) - 1 / np.sqrt(d)), 1e-12))

    fid_range = 0.0
    fid_self = 0.0
    fid_inv = 0.0
    perm = frame_permutation_map(frames[0], np.roll(np.arange(d), 1))
    for a, b in zip(states, states[1:]):
        f = dagger_fidelity(a, b)
        fid_range = max(fid_range, -f, f - 1)
        fid_self = max(fid_self, abs(dagger_fidelity(a, a) - 1))
        fid_inv = max(fid_inv, abs(dagger_fidelity(perm(a), perm(b)) - f))
    checks.append(Check("fidelity_range", max(fid_range, 0.0), 1e-12))
    checks.append(Check("fidelity_self", fid_self, 1e-12))
    checks.append(Check("fidelity_reversible_invariance", fid_inv, 1e-12))

    involution = sequential = inverse = 0.0
    maps = [random_reversible_map(system, rng) for _ in range(10)]
    for a, b in zip(maps, maps[1:]):
        res = adjoint_law_check(a, b, reversible=a)
        involution = max(involution, res["involution"])
        sequential = max(sequential, res["sequential"])
        inverse = max(inverse, res["reversible_inverse"])
    checks.append(Check("adjoint_involution", involution, 0.0))
    checks.append(Check("adjoint_sequential", sequential, 1e-12))
    checks.append(Check("reversible_adjoint_inverse", inverse, 1e-10))

    unital = mixture(maps[:3], rng.dirichlet(np.ones(3)))
    cls = channel_classify(unital, seed=rng, samples=40)
    checks.append(Check("unital_channel_detected", 0.0 if cls.unital else 1.0, 0.0))
    checks.append(Check("unital_dagger_norm_monotone", max(cls.norm_monotone_witness, 0.0), 1e-10))

    return checks
