"""Measurement-based execution of gate programs on cluster states.

A gate program is lowered to a ``MeasurementPattern``: a graph of qubits
(vertices) prepared in ``(|0> + |1>)/sqrt(2)`` (inputs carry basis states
instead), entangled by CZ along the edges, then measured vertex by vertex in
bases ``|+_theta>, |-_theta>`` with ``|+-_theta> = (|0> +- e^{i theta}|1>)/
sqrt(2)``.  Each measurement angle is adapted at runtime to earlier outcomes:

    device angle = (-1)^s * base_angle + pi * t

where ``s`` and ``t`` are XORs of the outcomes listed in the step's
``s_domain`` and ``t_domain``.  Unmeasured vertices are the outputs; the
``x/z_corrections`` sets give, per output, which outcomes decide the final
Pauli fix-up.

Lowering: a rotation ``exp(-i theta . sigma)`` is split as
``Rz(gamma) Rx(beta) Rz(alpha)`` and realized by a four-measurement chain
with base angles ``(-alpha, -beta, -gamma, 0)``; a CZ gate becomes a direct
edge between the two wire frontiers.  Every rotation therefore adds exactly
four vertices, so a compiled pattern has ``wires + 4 * rotations`` vertices.

Simulation policies:

* ``"enumerate-all"`` -- exact mixture over all measurement branches.  The
  engine keeps an ensemble of weighted branches, activates vertices only
  when first touched (valid because CZ edges commute with everything acting
  on other vertices), discards outcome bits once nothing can reference them
  again, and merges branches whose futures are identical.  For compiled
  patterns the ensemble stays polynomial even though the raw branch count
  is 2^measurements.
* ``"seeded-random"`` -- one branch, outcomes drawn from a seeded generator.
"""

from __future__ import annotations

import cmath
import json
import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .program_ir import CZGate, Program, RotationGate
from .statevec import Distribution, ReadoutSpec

_SQRT2 = math.sqrt(2.0)
_DROP_TOL = 1e-14          # conditional branch probability treated as zero
_MERGE_TOL = 1e-11         # max overlap deficit for states considered equal
_FORCE_TOL = 1e-12         # forced outcomes below this probability are unreachable

#: Register guard for pattern simulation (active vertices at any instant).
MAX_ACTIVE = 24


class BranchLimitError(RuntimeError):
    """Raised when enumeration would exceed the configured branch budget."""


@dataclass(frozen=True)
class MeasureStep:
    """One adaptive measurement: vertex, base angle, dependency domains."""

    vertex: int
    angle: float
    s_domain: frozenset[int] = field(default_factory=frozenset)
    t_domain: frozenset[int] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        if not math.isfinite(self.angle):
            raise ValueError(f"non-finite angle {self.angle}")
        object.__setattr__(self, "s_domain", frozenset(self.s_domain))
        object.__setattr__(self, "t_domain", frozenset(self.t_domain))


@dataclass(frozen=True)
class MeasurementPattern:
    """Validated measurement pattern.

    ``inputs`` and ``outputs`` are ordered, one vertex per logical wire.
    Every non-output vertex is measured exactly once, in ``steps`` order;
    dependency domains may only reference vertices measured strictly
    earlier.  ``x_corrections[j]`` / ``z_corrections[j]`` hold the outcome
    sets fixing output ``outputs[j]``.
    """

    vertices: frozenset[int]
    edges: frozenset[tuple[int, int]]
    inputs: tuple[int, ...]
    outputs: tuple[int, ...]
    steps: tuple[MeasureStep, ...]
    x_corrections: tuple[frozenset[int], ...]
    z_corrections: tuple[frozenset[int], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "vertices", frozenset(self.vertices))
        norm_edges = set()
        for e in self.edges:
            u, v = e
            if u == v:
                raise ValueError(f"self-loop on vertex {u}")
            if u not in self.vertices or v not in self.vertices:
                raise ValueError(f"edge {e} leaves the vertex set")
            norm_edges.add((min(u, v), max(u, v)))
        object.__setattr__(self, "edges", frozenset(norm_edges))
        for name, seq in (("inputs", self.inputs), ("outputs", self.outputs)):
            if len(set(seq)) != len(seq):
                raise ValueError(f"duplicate vertex in {name} {seq}")
            if not set(seq) <= self.vertices:
                raise ValueError(f"{name} {seq} leave the vertex set")
        if len(self.inputs) != len(self.outputs):
            raise ValueError(
                f"{len(self.inputs)} inputs vs {len(self.outputs)} outputs; "
                "one of each per wire"
            )
        measured = [st.vertex for st in self.steps]
        if len(set(measured)) != len(measured):
            raise ValueError("a vertex is measured twice")
        expected = self.vertices - set(self.outputs)
        if set(measured) != expected:
            raise ValueError(
                "measured vertices must be exactly the non-outputs; "
                f"got {sorted(set(measured))}, expected {sorted(expected)}"
            )
        seen: set[int] = set()
        for st in self.steps:
            if not (st.s_domain | st.t_domain) <= seen:
                raise ValueError(
                    f"step for vertex {st.vertex} references outcomes not yet measured"
                )
            seen.add(st.vertex)
        for name, corr in (
            ("x_corrections", self.x_corrections),
            ("z_corrections", self.z_corrections),
        ):
            if len(corr) != len(self.outputs):
                raise ValueError(f"{name} must list one set per output")
            for cs in corr:
                if not frozenset(cs) <= set(measured):
                    raise ValueError(f"{name} reference unmeasured vertices")
        object.__setattr__(
            self, "x_corrections", tuple(frozenset(c) for c in self.x_corrections)
        )
        object.__setattr__(
            self, "z_corrections", tuple(frozenset(c) for c in self.z_corrections)
        )

    @property
    def wires(self) -> int:
        return len(self.outputs)


# ---------------------------------------------------------------------------
# lowering


def zxz_euler(u: np.ndarray) -> tuple[float, float, float]:
    """Angles (alpha, beta, gamma) with Rz(gamma) Rx(beta) Rz(alpha) = u
    up to global phase.  ``u`` must be a 2x2 unitary."""
    mat = np.asarray(u, dtype=complex)
    if mat.shape != (2, 2):
        raise ValueError(f"expected a 2x2 matrix, got {mat.shape}")
    det = mat[0, 0] * mat[1, 1] - mat[0, 1] * mat[1, 0]
    if abs(abs(det) - 1.0) > 1e-9:
        raise ValueError("matrix is not unitary")
    su = mat / cmath.sqrt(det)
    a, b = su[0, 0], su[0, 1]
    c, d = su[1, 0], su[1, 1]
    beta = 2.0 * math.atan2(abs(b), abs(a))
    if abs(b) < 1e-14:
        # diagonal: a pure Z rotation
        return (cmath.phase(d) - cmath.phase(a), beta, 0.0)
    if abs(a) < 1e-14:
        # anti-diagonal: X rotation by pi conjugated by Z
        return (cmath.phase(b) - cmath.phase(c), beta, 0.0)
    # d = cos(beta/2) e^{i(alpha+gamma)/2} and ib = sin(beta/2) e^{i(alpha-gamma)/2}
    # with both trig factors > 0 here, so each phase is a half-sum directly
    # (halving a wrapped phase difference would be off by pi on wrap-around).
    half_sum = cmath.phase(d)
    half_diff = cmath.phase(1j * b)
    return (half_sum + half_diff, beta, half_sum - half_diff)


def compile_to_pattern(program: Program) -> MeasurementPattern:
    """Lower a gate program to an equivalent measurement pattern.

    Wire j starts at input vertex j.  Rotations extend the wire by four
    vertices; CZ gates toggle a direct edge between the two frontiers (two
    identical CZs cancel).  Dependency domains implement the running Pauli
    frame: a measured chain vertex feeds the s-domain of the next step and
    the t-domain of the one after, and a CZ mixes each wire's X frame into
    the partner's Z frame.
    """
    wires = program.width
    frontier = list(range(wires))
    x_frame: list[frozenset[int]] = [frozenset()] * wires
    z_frame: list[frozenset[int]] = [frozenset()] * wires
    edges: set[tuple[int, int]] = set()
    steps: list[MeasureStep] = []
    next_vertex = wires

    def toggle_edge(u: int, v: int) -> None:
        key = (min(u, v), max(u, v))
        if key in edges:
            edges.remove(key)
        else:
            edges.add(key)

    for gate in program.gates:
        if isinstance(gate, CZGate):
            c, t = gate.control, gate.target
            toggle_edge(frontier[c], frontier[t])
            z_frame[c] = z_frame[c] ^ x_frame[t]
            z_frame[t] = z_frame[t] ^ x_frame[c]
        else:
            w = gate.target
            alpha, beta, gamma = zxz_euler(gate.matrix())
            for base in (-alpha, -beta, -gamma, 0.0):
                u = frontier[w]
                v = next_vertex
                next_vertex += 1
                toggle_edge(u, v)
                steps.append(
                    MeasureStep(u, base, s_domain=x_frame[w], t_domain=z_frame[w])
                )
                z_frame[w] = x_frame[w]
                x_frame[w] = frozenset((u,))
                frontier[w] = v
    vertices = frozenset(range(next_vertex))
    return MeasurementPattern(
        vertices=vertices,
        edges=frozenset(edges),
        inputs=tuple(range(wires)),
        outputs=tuple(frontier),
        steps=tuple(steps),
        x_corrections=tuple(x_frame),
        z_corrections=tuple(z_frame),
    )


# ---------------------------------------------------------------------------
# simulation engine


def _retire_after(pattern: MeasurementPattern) -> dict[int, list[int]]:
    """Map step index -> outcome bits that nothing references afterwards."""
    last: dict[int, float] = {}
    for i, st in enumerate(pattern.steps):
        last[st.vertex] = i
    for i, st in enumerate(pattern.steps):
        for v in st.s_domain | st.t_domain:
            last[v] = max(last[v], i)
    for corr in (*pattern.x_corrections, *pattern.z_corrections):
        for v in corr:
            last[v] = math.inf
    out: dict[int, list[int]] = {}
    for v, i in last.items():
        if i != math.inf:
            out.setdefault(int(i), []).append(v)
    return out


class _Register:
    """Active-vertex bookkeeping shared by all branches.

    Activation order is structural (it never depends on outcomes), so one
    register serves the whole ensemble; branch vectors share its layout.
    """

    def __init__(self, pattern: MeasurementPattern, s_in: str) -> None:
        if len(s_in) != len(pattern.inputs) or any(ch not in "01" for ch in s_in):
            raise ValueError(
                f"input {s_in!r} does not match the {len(pattern.inputs)} pattern inputs"
            )
        self.input_bit = {v: int(ch) for v, ch in zip(pattern.inputs, s_in)}
        self.active: list[int] = []
        self.pos: dict[int, int] = {}
        self.pending: set[tuple[int, int]] = set(pattern.edges)
        self.by_vertex: dict[int, list[tuple[int, int]]] = {}
        for e in pattern.edges:
            self.by_vertex.setdefault(e[0], []).append(e)
            self.by_vertex.setdefault(e[1], []).append(e)

    def _activate(self, v: int, vecs: np.ndarray) -> np.ndarray:
        if len(self.active) + 1 > MAX_ACTIVE:
            raise BranchLimitError(
                f"pattern needs more than {MAX_ACTIVE} simultaneously active vertices"
            )
        if v in self.input_bit:
            local = np.zeros(2, dtype=complex)
            local[self.input_bit[v]] = 1.0
        else:
            local = np.array([1.0, 1.0], dtype=complex) / _SQRT2
        out = (vecs[:, :, None] * local[None, None, :]).reshape(vecs.shape[0], -1)
        self.pos[v] = len(self.active)
        self.active.append(v)
        return out

    def touch(self, v: int, vecs: np.ndarray) -> np.ndarray:
        """Activate ``v`` if needed and apply its pending edges."""
        if v not in self.pos:
            vecs = self._activate(v, vecs)
        for e in self.by_vertex.get(v, ()):
            if e not in self.pending:
                continue
            other = e[1] if e[0] == v else e[0]
            if other not in self.pos:
                vecs = self._activate(other, vecs)
            a = len(self.active)
            psi = vecs.reshape((-1,) + (2,) * a)
            sl: list[object] = [slice(None)] * (a + 1)
            sl[1 + self.pos[v]] = 1
            sl[1 + self.pos[other]] = 1
            psi[tuple(sl)] *= -1.0
            self.pending.remove(e)
        return vecs

    def drop(self, v: int) -> None:
        self.active.pop(self.pos[v])
        self.pos = {u: i for i, u in enumerate(self.active)}


def _parity(record: dict[int, int], domain: frozenset[int]) -> int:
    acc = 0
    for v in domain:
        acc ^= record[v]
    return acc


def _device_angle(step: MeasureStep, record: dict[int, int]) -> float:
    theta = step.angle if _parity(record, step.s_domain) == 0 else -step.angle
    if _parity(record, step.t_domain):
        theta += math.pi
    return theta


def _take_halves(vecs: np.ndarray, a: int, axis: int) -> tuple[np.ndarray, np.ndarray]:
    psi = vecs.reshape((-1,) + (2,) * a)
    v0 = np.take(psi, 0, axis=1 + axis).reshape(vecs.shape[0], -1)
    v1 = np.take(psi, 1, axis=1 + axis).reshape(vecs.shape[0], -1)
    return v0, v1


def _apply_corrections(
    pattern: MeasurementPattern,
    reg: _Register,
    vec: np.ndarray,
    record: dict[int, int],
) -> np.ndarray:
    """Pauli fix-up of one branch's output state (flat vector)."""
    a = len(reg.active)
    psi = vec.reshape((2,) * a)
    for j, out_vertex in enumerate(pattern.outputs):
        ax = reg.pos[out_vertex]
        if _parity(record, pattern.x_corrections[j]):
            psi = np.flip(psi, axis=ax)
        if _parity(record, pattern.z_corrections[j]):
            sl: list[object] = [slice(None)] * a
            sl[ax] = 1
            psi = psi.copy()
            psi[tuple(sl)] *= -1.0
    return psi.reshape(-1)


def _readout_axes(
    pattern: MeasurementPattern, reg: _Register, readout: ReadoutSpec
) -> tuple[int, ...]:
    if max(readout.qubits) >= pattern.wires:
        raise ValueError(
            f"readout {readout.qubits} outside the {pattern.wires} pattern wires"
        )
    return tuple(reg.pos[pattern.outputs[q]] for q in readout.qubits)


def _marginal(probs: np.ndarray, a: int, axes_keep: tuple[int, ...]) -> np.ndarray:
    """Marginalize a (2,)*a probability tensor onto axes_keep, in order."""
    drop = tuple(ax for ax in range(a) if ax not in axes_keep)
    marg = np.sum(probs, axis=drop) if drop else probs
    order = tuple(sorted(axes_keep).index(ax) for ax in axes_keep)
    return np.transpose(marg, order).reshape(-1)


def _distribution_from(total: np.ndarray, m: int) -> Distribution:
    entries = {format(i, f"0{m}b"): float(p) for i, p in enumerate(total)}
    return Distribution(entries)


def _enumerate_branches(
    pattern: MeasurementPattern,
    s_in: str,
    readout: ReadoutSpec,
    branch_limit: int,
) -> Distribution:
    reg = _Register(pattern, s_in)
    retire = _retire_after(pattern)
    vecs = np.ones((1, 1), dtype=complex)
    weights = [1.0]
    records: list[dict[int, int]] = [{}]
    for idx, step in enumerate(pattern.steps):
        vecs = reg.touch(step.vertex, vecs)
        ax = reg.pos[step.vertex]
        a = len(reg.active)
        v0, v1 = _take_halves(vecs, a, ax)
        thetas = np.array([_device_angle(step, rec) for rec in records])
        rows: list[np.ndarray] = []
        new_weights: list[float] = []
        new_records: list[dict[int, int]] = []
        for theta in np.unique(thetas):
            sel = np.nonzero(thetas == theta)[0]
            phase = cmath.exp(-1j * theta)
            for sign, outcome in ((1.0, 0), (-1.0, 1)):
                proj = (v0[sel] + (sign * phase) * v1[sel]) / _SQRT2
                p = np.einsum("ij,ij->i", proj, proj.conj()).real
                for row, branch in enumerate(sel):
                    if p[row] < _DROP_TOL:
                        continue
                    rows.append(proj[row] / math.sqrt(p[row]))
                    new_weights.append(weights[branch] * p[row])
                    new_records.append({**records[branch], step.vertex: outcome})
        reg.drop(step.vertex)
        for v in retire.get(idx, ()):
            for rec in new_records:
                rec.pop(v, None)
        vecs, weights, records = _merge_branches(rows, new_weights, new_records)
        if len(weights) > branch_limit:
            raise BranchLimitError(
                f"{len(weights)} branches exceed the limit of {branch_limit}"
            )
    for out_vertex in pattern.outputs:
        vecs = reg.touch(out_vertex, vecs)
    if reg.pending:
        raise ValueError(f"edges {sorted(reg.pending)} connect only measured vertices")
    a = len(reg.active)
    axes_keep = _readout_axes(pattern, reg, readout)
    m = len(axes_keep)
    total = np.zeros(1 << m, dtype=float)
    for b in range(len(weights)):
        corrected = _apply_corrections(pattern, reg, vecs[b], records[b])
        probs = (np.abs(corrected) ** 2).reshape((2,) * a)
        total += weights[b] * _marginal(probs, a, axes_keep)
    return _distribution_from(total, m)


def _merge_branches(
    rows: list[np.ndarray],
    weights: list[float],
    records: list[dict[int, int]],
) -> tuple[np.ndarray, list[float], list[dict[int, int]]]:
    """Collapse branches with equal records and equal states (up to phase).

    Merging is only an optimization: a missed merge keeps extra branches but
    never changes the mixture, so the overlap tolerance is kept tight.
    """
    groups: dict[tuple[tuple[int, int], ...], list[int]] = {}
    for i, rec in enumerate(records):
        groups.setdefault(tuple(sorted(rec.items())), []).append(i)
    out_rows: list[np.ndarray] = []
    out_w: list[float] = []
    out_rec: list[dict[int, int]] = []
    for idxs in groups.values():
        reps: list[int] = []
        for i in idxs:
            for r in reps:
                if abs(np.vdot(out_rows[r], rows[i])) >= 1.0 - _MERGE_TOL:
                    out_w[r] += weights[i]
                    break
            else:
                reps.append(len(out_rows))
                out_rows.append(rows[i])
                out_w.append(weights[i])
                out_rec.append(records[i])
    return np.stack(out_rows), out_w, out_rec


def _single_branch(
    pattern: MeasurementPattern,
    s_in: str,
    readout: ReadoutSpec,
    rng: Optional[np.random.Generator] = None,
    forced: Optional[dict[int, int]] = None,
) -> Optional[tuple[float, Distribution]]:
    """Follow one measurement branch; outcomes from ``rng`` or ``forced``.

    Returns (branch probability, corrected readout distribution), or None
    when a forced outcome has probability ~0 (unreachable branch).
    """
    reg = _Register(pattern, s_in)
    vec = np.ones((1, 1), dtype=complex)
    record: dict[int, int] = {}
    prob = 1.0
    for step in pattern.steps:
        vec = reg.touch(step.vertex, vec)
        ax = reg.pos[step.vertex]
        a = len(reg.active)
        v0, v1 = _take_halves(vec, a, ax)
        phase = cmath.exp(-1j * _device_angle(step, record))
        plus = (v0 + phase * v1) / _SQRT2
        minus = (v0 - phase * v1) / _SQRT2
        p_plus = float(np.sum(np.abs(plus) ** 2))
        p_plus = min(max(p_plus, 0.0), 1.0)
        if forced is not None:
            outcome = forced[step.vertex]
        else:
            assert rng is not None
            outcome = int(rng.random() >= p_plus)
        p = p_plus if outcome == 0 else 1.0 - p_plus
        if p < _FORCE_TOL:
            if forced is not None:
                return None
            outcome = 1 - outcome
            p = 1.0 - p
        chosen = plus if outcome == 0 else minus
        vec = chosen / math.sqrt(p)
        prob *= p
        record[step.vertex] = outcome
        reg.drop(step.vertex)
    for out_vertex in pattern.outputs:
        vec = reg.touch(out_vertex, vec)
    if reg.pending:
        raise ValueError(f"edges {sorted(reg.pending)} connect only measured vertices")
    a = len(reg.active)
    corrected = _apply_corrections(pattern, reg, vec[0], record)
    probs = (np.abs(corrected) ** 2).reshape((2,) * a)
    axes_keep = _readout_axes(pattern, reg, readout)
    dist = _distribution_from(_marginal(probs, a, axes_keep), len(axes_keep))
    return prob, dist


def simulate_pattern(
    pattern: MeasurementPattern,
    s_in: str,
    readout: Optional[ReadoutSpec] = None,
    *,
    policy: str = "enumerate-all",
    seed: int = 0,
    branch_limit: int = 1 << 20,
) -> Distribution:
    """Readout distribution of a pattern run on basis input ``s_in``.

    ``"enumerate-all"`` returns the exact mixture over measurement branches;
    ``"seeded-random"`` follows a single branch drawn from ``seed``.  The
    two agree whenever the pattern is deterministic (compiled patterns are).
    ``readout`` defaults to all wires in order.
    """
    if readout is None:
        readout = ReadoutSpec(tuple(range(pattern.wires)))
    if policy == "enumerate-all":
        return _enumerate_branches(pattern, s_in, readout, branch_limit)
    if policy == "seeded-random":
        result = _single_branch(
            pattern, s_in, readout, rng=np.random.default_rng(seed)
        )
        assert result is not None
        return result[1]
    raise ValueError(f"unknown policy {policy!r}")


def branch_determinism_check(
    pattern: MeasurementPattern,
    s_in: str,
    readout: Optional[ReadoutSpec] = None,
    *,
    mode: str = "auto",
    samples: int = 32,
    seed: int = 0,
    tol: float = 1e-10,
    exhaustive_limit: int = 1 << 20,
) -> bool:
    """Whether every measurement branch yields the same corrected readout.

    Branches are forced outcome assignments; unreachable ones (probability
    ~0) are skipped.  ``mode="auto"`` enumerates all 2^k assignments for up
    to 8 measured vertices and falls back to ``samples`` seeded random
    assignments beyond that; ``"exhaustive"`` always enumerates (refusing
    above ``exhaustive_limit``); ``"sampled"`` always samples.
    """
    k = len(pattern.steps)
    if k == 0:
        return True
    if mode == "auto":
        exhaustive = k <= 8
    elif mode == "exhaustive":
        if (1 << k) > exhaustive_limit:
            raise BranchLimitError(
                f"2**{k} assignments exceed the exhaustive limit {exhaustive_limit}"
            )
        exhaustive = True
    elif mode == "sampled":
        exhaustive = False
    else:
        raise ValueError(f"unknown mode {mode!r}")
    if readout is None:
        readout = ReadoutSpec(tuple(range(pattern.wires)))
    order = [st.vertex for st in pattern.steps]
    if exhaustive:
        assignments = (
            {v: (code >> i) & 1 for i, v in enumerate(order)}
            for code in range(1 << k)
        )
    else:
        rng = np.random.default_rng(seed)
        bits = np.unique(rng.integers(0, 2, size=(samples, k)), axis=0)
        assignments = ({v: int(row[i]) for i, v in enumerate(order)} for row in bits)
    reference: Optional[Distribution] = None
    for forced in assignments:
        result = _single_branch(pattern, s_in, readout, forced=forced)
        if result is None:
            continue
        _, dist = result
        if reference is None:
            reference = dist
            continue
        tvd = 0.5 * sum(
            abs(reference[key] - dist[key])
            for key in set(reference.entries) | set(dist.entries)
        )
        if tvd > tol:
            return False
    return True


# ---------------------------------------------------------------------------
# serialization

_FORMAT_TAG = "oneway-pattern/1"


def pattern_to_json(pattern: MeasurementPattern) -> str:
    """Canonical JSON form (sorted vertices/edges, steps in order)."""
    doc = {
        "format": _FORMAT_TAG,
        "vertices": sorted(pattern.vertices),
        "edges": sorted(list(e) for e in pattern.edges),
        "inputs": list(pattern.inputs),
        "outputs": list(pattern.outputs),
        "steps": [
            {
                "vertex": st.vertex,
                "angle": st.angle,
                "s": sorted(st.s_domain),
                "t": sorted(st.t_domain),
            }
            for st in pattern.steps
        ],
        "corrections": [
            {"output": out, "x": sorted(xs), "z": sorted(zs)}
            for out, xs, zs in zip(
                pattern.outputs, pattern.x_corrections, pattern.z_corrections
            )
        ],
    }
    return json.dumps(doc, sort_keys=True)


def pattern_from_json(text: str) -> MeasurementPattern:
    """Inverse of ``pattern_to_json``; revalidates everything."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"not valid JSON: {exc}") from None
    if not isinstance(doc, dict) or doc.get("format") != _FORMAT_TAG:
        raise ValueError(f"missing or unknown format tag (expected {_FORMAT_TAG!r})")
    try:
        steps = tuple(
            MeasureStep(
                vertex=int(st["vertex"]),
                angle=float(st["angle"]),
                s_domain=frozenset(int(v) for v in st["s"]),
                t_domain=frozenset(int(v) for v in st["t"]),
            )
            for st in doc["steps"]
        )
        corr = doc["corrections"]
        outputs = tuple(int(v) for v in doc["outputs"])
        by_output = {int(c["output"]): c for c in corr}
        if set(by_output) != set(outputs):
            raise ValueError("corrections must cover exactly the outputs")
        return MeasurementPattern(
            vertices=frozenset(int(v) for v in doc["vertices"]),
            edges=frozenset(
                (int(e[0]), int(e[1])) for e in doc["edges"]
            ),
            inputs=tuple(int(v) for v in doc["inputs"]),
            outputs=outputs,
            steps=steps,
            x_corrections=tuple(
                frozenset(int(v) for v in by_output[o]["x"]) for o in outputs
            ),
            z_corrections=tuple(
                frozenset(int(v) for v in by_output[o]["z"]) for o in outputs
            ),
        )
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed pattern document: {exc!r}") from None
