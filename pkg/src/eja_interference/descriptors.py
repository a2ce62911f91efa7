"""JSON descriptors for theories, experiments and value tables, and TSV reports.

Theory::

    {"kind": "complex_hermitian", "n": 3, "seed": 0}

The size key is ``d`` for classical systems, ``n`` for the matrix kinds and
``m`` for spin factors.  Experiment::

    {"theory": {...}, "blocks": [[1], [2]], "order": 2,
     "state": [...], "effect": [...], "frame": "standard", "seed": 0}

Blocks list 1-based frame indices.  ``state``/``effect`` are coordinate
vectors in the orthonormal basis; when absent they are drawn from ``seed``.
``frame`` is ``"standard"`` (default) or ``"random"``.  Value table::

    {"n": 3, "values": {"1": 0.2, "2": 0.3, ..., "123": 1.0}}

Subset keys are ascending 1-based slit labels.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Optional

from .algebra import FAMILIES, SPIN_FACTOR, AlgebraKind
from .interference import (
    InterferenceReport,
    SlitExperiment,
    ValueTable,
    nonempty_subsets,
    subset_key,
)
from .system import System, as_rng, random_effect, random_frame, random_state, standard_frame

MAX_RANK = 8
MAX_SPIN_AMBIENT = 16

_SIZE_KEY = {
    "classical": "d",
    "real_symmetric": "n",
    "complex_hermitian": "n",
    "quaternionic_hermitian": "n",
    "spin_factor": "m",
}


class DescriptorError(ValueError):
    """Malformed or out-of-range input file."""


@dataclass(frozen=True)
class TheoryDescriptor:
    kind: AlgebraKind
    seed: Optional[int] = None

    @property
    def system(self) -> System:
        return System(self.kind)


@dataclass(frozen=True)
class ExperimentDescriptor:
    theory: TheoryDescriptor
    blocks: tuple
    order: int
    state: Optional[tuple] = None
    effect: Optional[tuple] = None
    seed: int = 0
    frame: str = "standard"


def _load(text: str, what: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise DescriptorError(f"{what}: invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None


def _int_field(obj: dict, key: str, what: str) -> int:
    value = obj[key]
    if not isinstance(value, int) or isinstance(value, bool):
        raise DescriptorError(f"{what}: field {key!r} must be an integer")
    return value


def theory_from_obj(obj, what: str = "theory") -> TheoryDescriptor:
    if not isinstance(obj, dict):
        raise DescriptorError(f"{what}: expected a JSON object")
    name = obj.get("kind")
    if name is None:
        raise DescriptorError(f"{what}: missing field 'kind'")
    if name not in FAMILIES:
        raise DescriptorError(f"{what}: unsupported kind {name!r}")
    size_key = _SIZE_KEY[name]
    allowed = {"kind", size_key, "seed"}
    unknown = sorted(set(obj) - allowed)
    if unknown:
        raise DescriptorError(f"{what}: unknown field(s) {', '.join(map(repr, unknown))}")
    if size_key not in obj:
        raise DescriptorError(f"{what}: missing field {size_key!r}")
    size = _int_field(obj, size_key, what)
    seed = _int_field(obj, "seed", what) if "seed" in obj else None
    try:
        kind = AlgebraKind(name, size)
    except ValueError as exc:
        raise DescriptorError(f"{what}: field {size_key!r}: {exc}") from None
    if name == SPIN_FACTOR:
        if kind.dim > MAX_SPIN_AMBIENT:
            raise DescriptorError(f"{what}: field 'm': ambient dimension above {MAX_SPIN_AMBIENT}")
    elif kind.rank > MAX_RANK:
        raise DescriptorError(f"{what}: field {size_key!r}: rank above {MAX_RANK}")
    return TheoryDescriptor(kind, seed)


def parse_theory(text: str) -> TheoryDescriptor:
    return theory_from_obj(_load(text, "theory"))


def dump_theory(desc: TheoryDescriptor) -> str:
    obj = {"kind": desc.kind.family, _SIZE_KEY[desc.kind.family]: int(desc.kind.size)}
    if desc.seed is not None:
        obj["seed"] = desc.seed
    return json.dumps(obj, sort_keys=True)


def _vector(obj, key, dim, what):
    v = obj[key]
    if not isinstance(v, list) or not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in v):
        raise DescriptorError(f"{what}: field {key!r} must be a list of numbers")
    if len(v) != dim:
        raise DescriptorError(f"{what}: field {key!r} needs {dim} coordinates, got {len(v)}")
    return tuple(float(x) for x in v)


def parse_experiment(text: str) -> ExperimentDescriptor:
    what = "experiment"
    obj = _load(text, what)
    if not isinstance(obj, dict):
        raise DescriptorError(f"{what}: expected a JSON object")
    unknown = sorted(set(obj) - {"theory", "blocks", "order", "state", "effect", "seed", "frame"})
    if unknown:
        raise DescriptorError(f"{what}: unknown field(s) {', '.join(map(repr, unknown))}")
    for key in ("theory", "blocks"):
        if key not in obj:
            raise DescriptorError(f"{what}: missing field {key!r}")
    theory = theory_from_obj(obj["theory"], f"{what}.theory")
    rank = theory.kind.rank
    blocks = obj["blocks"]
    if not isinstance(blocks, list) or not blocks:
        raise DescriptorError(f"{what}: field 'blocks' must be a nonempty list of index lists")
    seen: set[int] = set()
    parsed = []
    for b in blocks:
        if not isinstance(b, list) or not b or not all(isinstance(i, int) and not isinstance(i, bool) for i in b):
            raise DescriptorError(f"{what}: field 'blocks': each block must be a nonempty list of integers")
        for i in b:
            if not 1 <= i <= rank:
                raise DescriptorError(f"{what}: field 'blocks': index {i} outside 1..{rank}")
            if i in seen:
                raise DescriptorError(f"{what}: field 'blocks': index {i} appears twice")
            seen.add(i)
        parsed.append(tuple(sorted(i - 1 for i in b)))
    order = _int_field(obj, "order", what) if "order" in obj else len(parsed)
    if order != len(parsed):
        raise DescriptorError(f"{what}: field 'order' is {order} but there are {len(parsed)} blocks")
    frame = obj.get("frame", "standard")
    if frame not in ("standard", "random"):
        raise DescriptorError(f"{what}: field 'frame' must be 'standard' or 'random'")
    seed = _int_field(obj, "seed", what) if "seed" in obj else 0
    dim = theory.kind.dim
    state = _vector(obj, "state", dim, what) if "state" in obj else None
    effect = _vector(obj, "effect", dim, what) if "effect" in obj else None
    desc = ExperimentDescriptor(theory, tuple(parsed), order, state, effect, seed, frame)
    build_experiment(desc)  # validates state and effect
    return desc


def build_experiment(desc: ExperimentDescriptor) -> SlitExperiment:
    system = desc.theory.system
    rng = as_rng(desc.seed)
    frame = random_frame(system, rng) if desc.frame == "random" else standard_frame(system)
    try:
        rho = system.state(desc.state) if desc.state is not None else random_state(system, rng)
        e = system.effect(desc.effect) if desc.effect is not None else random_effect(system, rng)
    except ValueError as exc:
        raise DescriptorError(f"experiment: {exc}") from None
    if desc.state is not None and abs(rho.trace - 1.0) > 1e-9:
        raise DescriptorError("experiment: field 'state' must be normalised")
    return SlitExperiment(system, frame, desc.blocks, rho, e)


def parse_table(text: str) -> ValueTable:
    what = "table"
    obj = _load(text, what)
    if not isinstance(obj, dict):
        raise DescriptorError(f"{what}: expected a JSON object")
    unknown = sorted(set(obj) - {"n", "values"})
    if unknown:
        raise DescriptorError(f"{what}: unknown field(s) {', '.join(map(repr, unknown))}")
    for key in ("n", "values"):
        if key not in obj:
            raise DescriptorError(f"{what}: missing field {key!r}")
    n = _int_field(obj, "n", what)
    if not 1 <= n <= 9:
        raise DescriptorError(f"{what}: field 'n' must be between 1 and 9")
    raw = obj["values"]
    if not isinstance(raw, dict):
        raise DescriptorError(f"{what}: field 'values' must be an object")
    by_key = {subset_key(s): s for s in nonempty_subsets(n)}
    values = {}
    for key, v in raw.items():
        if key not in by_key:
            raise DescriptorError(f"{what}: field 'values': bad subset key {key!r}")
        if not isinstance(v, (int, float)) or isinstance(v, bool):
            raise DescriptorError(f"{what}: field 'values': entry {key!r} must be a number")
        values[by_key[key]] = float(v)
    missing = [k for k in by_key if k not in raw]
    if missing:
        raise DescriptorError(f"{what}: field 'values': missing subset(s) {', '.join(missing)}")
    return ValueTable(n, values)


def dump_table(table: ValueTable) -> str:
    values = {subset_key(s): table.values[s] for s in nonempty_subsets(table.n)}
    return json.dumps({"n": table.n, "values": values}, indent=1)


def _fmt(v: float) -> str:
    text = f"{v:.12f}"
    # avoid "-0.000000000000"
    return text[1:] if text.startswith("-") and float(text) == 0.0 else text


def emit_report(report: InterferenceReport) -> str:
    """TSV: header, one ``subset<TAB>v`` row per subset, then ``I_k<TAB>value`` rows."""
    lines = ["subset\tvalue"]
    table = report.table
    for s in nonempty_subsets(table.n):
        lines.append(f"{subset_key(s)}\t{_fmt(table.values[s])}")
    for k, value in enumerate(report.orders, start=1):
        lines.append(f"I_{k}\t{_fmt(value)}")
    return "\n".join(lines) + "\n"
