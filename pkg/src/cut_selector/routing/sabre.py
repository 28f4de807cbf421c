"""SABRE-style SWAP insertion on a coupling map."""

import logging
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Optional

import numpy as np

from ..circuit.interaction import extract
from ..circuit.ir import Circuit, Gate
from ..circuit.observable import Observable
from ..config import NATIVE_COST, Config
from ..exceptions import RoutingError
from .coupling import CouplingMap

logger = logging.getLogger(__name__)


def native_cost(gate: Gate) -> int:
    """ECR-equivalent cost of a gate; local operations are free."""
    if not gate.is_two_qubit:
        return 0
    return NATIVE_COST[gate.kind.name]


@dataclass
class RoutedResult:
    circuit: Circuit  # over physical qubits
    ecr_count: int
    initial_layout: list[int]  # logical -> physical
    final_layout: list[int]
    seed: int
    n_swaps: int = 0
    # input position of a virtual gate -> its position in the output
    slots: dict[int, int] = field(default_factory=dict)
    slot_maps: dict[int, dict[int, int]] = field(default_factory=dict)  # logical -> physical operands


def initial_layout(c: Circuit, cm: CouplingMap, seed: int) -> list[int]:
    """Seeded greedy placement of the interaction graph.

    The highest-degree logical qubit lands on a randomly chosen physical
    qubit of maximal degree; its interaction neighbours follow in BFS order,
    each on the free physical qubit closest to its already placed neighbours.
    """
    if c.n_qubits > cm.n:
        raise RoutingError(f'circuit needs {c.n_qubits} qubits, device has {cm.n}')

    ig = extract(c).base
    rng = np.random.default_rng(seed)
    layout = [-1] * c.n_qubits
    used: set[int] = set()
    top = max(cm.graph.degree(p) for p in cm.graph.nodes())
    starts = [p for p in cm.graph.nodes() if cm.graph.degree(p) == top]

    def closest_free(anchors: list[int]) -> int:
        free = (p for p in range(cm.n) if p not in used)
        return min(free, key=lambda p: (sum(cm.distance(p, a) for a in anchors), p))

    def place(q: int, p: int) -> None:
        layout[q] = p
        used.add(p)

    while len(used) < c.n_qubits:
        unplaced = [q for q in range(c.n_qubits) if layout[q] < 0]
        best = max(ig.degree(q) for q in unplaced)
        roots = [q for q in unplaced if ig.degree(q) == best]
        root = roots[int(rng.integers(len(roots)))]
        if used:
            place(root, min((p for p in range(cm.n) if p not in used),
                            key=lambda p: (min(cm.distance(p, u) for u in used), p)))
        else:
            place(root, starts[int(rng.integers(len(starts)))])

        queue = deque([root])
        while queue:
            q = queue.popleft()
            for w in rng.permutation(sorted(ig.neighbors(q))).tolist():
                if layout[w] >= 0:
                    continue
                anchors = [layout[x] for x in ig.neighbors(w) if layout[x] >= 0]
                place(w, closest_free(anchors))
                queue.append(w)
    return layout


class _Dag:
    """Wire dependencies over qubits and classical bits."""

    def __init__(self, gates: list[Gate]):
        self.succ: list[list[int]] = [[] for _ in gates]
        self.in_deg = [0] * len(gates)
        last_q: dict[int, int] = {}
        last_c: dict[int, int] = {}
        for i, g in enumerate(gates):
            preds = {last_q[q] for q in g.qubits if q in last_q}
            if g.clbit is not None and g.clbit in last_c:
                preds.add(last_c[g.clbit])
            for p in preds:
                self.succ[p].append(i)
            self.in_deg[i] = len(preds)
            for q in g.qubits:
                last_q[q] = i
            if g.clbit is not None:
                last_c[g.clbit] = i


def route(
    c: Circuit,
    cm: CouplingMap,
    seed: int,
    layout: Optional[list[int]] = None,
    virtual: Iterable[int] = (),
    lookahead_window: int = Config.LOOKAHEAD_WINDOW,
    lookahead_weight: float = Config.LOOKAHEAD_WEIGHT,
) -> RoutedResult:
    """Insert SWAPs so every two-qubit gate acts on a coupled pair.

    Gates listed in ``virtual`` keep their place in the dependency order but
    need no adjacency and cost nothing; their output position is reported in
    ``slots`` so the gate can be substituted later. Local gates never block.

    SWAP candidates touch an operand of a blocked gate and are scored by the
    mean front-layer distance plus the weighted mean distance of a lookahead
    window, scaled by the larger decay factor of the two swapped qubits.
    Undoing the previous SWAP is never a candidate; ties go to the smallest edge.
    When a stall outlasts twice the distance of the closest blocked gate, the
    SWAPs since the last executed gate are dropped and that gate's operands
    are walked together along a shortest path.
    """
    if c.n_qubits > cm.n:
        raise RoutingError(f'circuit needs {c.n_qubits} qubits, device has {cm.n}')
    virtual = set(virtual)
    l2p = list(layout) if layout is not None else initial_layout(c, cm, seed)
    if len(l2p) != c.n_qubits or len(set(l2p)) != len(l2p):
        raise RoutingError('initial layout must place every logical qubit on a distinct physical qubit')
    start = list(l2p)
    p2l = [-1] * cm.n
    for q, p in enumerate(l2p):
        p2l[p] = q

    gates = c.gates
    dag = _Dag(gates)
    in_deg = list(dag.in_deg)
    front = {i for i in range(len(gates)) if in_deg[i] == 0}
    out: list[Gate] = []
    slots: dict[int, int] = {}
    slot_maps: dict[int, dict[int, int]] = {}
    decay = [1.0] * cm.n
    n_swaps = 0
    since_progress = 0
    last_swap: Optional[tuple[int, int]] = None
    checkpoint: Optional[tuple[int, list[int], list[int]]] = None
    release_after = 0

    def execute(i: int) -> None:
        front.discard(i)
        for s in dag.succ[i]:
            in_deg[s] -= 1
            if in_deg[s] == 0:
                front.add(s)

    def apply_swap(p0: int, p1: int) -> None:
        nonlocal n_swaps
        out.append(Gate.swap(p0, p1))
        n_swaps += 1
        l0, l1 = p2l[p0], p2l[p1]
        p2l[p0], p2l[p1] = l1, l0
        if l0 != -1:
            l2p[l0] = p1
        if l1 != -1:
            l2p[l1] = p0

    def gap(i: int) -> int:
        a, b = gates[i].qubits
        return cm.distance(l2p[a], l2p[b])

    while front:
        progress = True
        while progress:
            progress = False
            for i in sorted(front):
                g = gates[i]
                if i in virtual:
                    slots[i] = len(out)
                    slot_maps[i] = {q: l2p[q] for q in g.qubits}
                elif g.is_two_qubit and not cm.are_connected(l2p[g.qubits[0]], l2p[g.qubits[1]]):
                    continue
                out.append(g.remapped(l2p))
                execute(i)
                progress = True
                if g.is_two_qubit:
                    since_progress = 0
                    decay = [1.0] * cm.n
                    last_swap = None
        if not front:
            break

        blocked = sorted(front)

        if since_progress == 0:
            checkpoint = (len(out), list(l2p), list(p2l))
            release_after = 2 * min(gap(i) for i in blocked)
        elif since_progress > release_after:
            size, saved_l2p, saved_p2l = checkpoint
            n_swaps -= len(out) - size
            del out[size:]
            l2p[:], p2l[:] = saved_l2p, saved_p2l
            target = min(blocked, key=lambda i: (gap(i), i))
            a, b = (l2p[q] for q in gates[target].qubits)
            while not cm.are_connected(a, b):
                step = min(p for p in cm.neighbors(a) if cm.distance(p, b) == cm.distance(a, b) - 1)
                apply_swap(a, step)
                a = step
            logger.debug('router stalled; walked %s together', gates[target].qubits)
            since_progress = 0
            decay = [1.0] * cm.n
            last_swap = None
            continue

        extended = _lookahead(gates, dag, front, virtual, lookahead_window)
        candidates = sorted({
            (min(p, nb), max(p, nb))
            for i in blocked
            for p in (l2p[q] for q in gates[i].qubits)
            for nb in cm.neighbors(p)
        })
        if last_swap in candidates and len(candidates) > 1:
            candidates.remove(last_swap)

        def score(swap: tuple[int, int]) -> float:
            p0, p1 = swap

            def pos(q: int) -> int:
                p = l2p[q]
                return p1 if p == p0 else p0 if p == p1 else p

            def cost(indices: list[int]) -> float:
                return sum(cm.distance(pos(gates[i].qubits[0]), pos(gates[i].qubits[1])) for i in indices)

            total = cost(blocked) / len(blocked)
            if extended:
                total += lookahead_weight * cost(extended) / len(extended)
            return max(decay[p0], decay[p1]) * total

        best = min(candidates, key=score)
        apply_swap(*best)
        last_swap = best
        since_progress += 1
        if since_progress % Config.DECAY_RESET_INTERVAL == 0:
            decay = [1.0] * cm.n
        else:
            decay[best[0]] += Config.DECAY_RATE
            decay[best[1]] += Config.DECAY_RATE

    placeholders = set(slots.values())
    ecr = sum(native_cost(g) for pos, g in enumerate(out) if pos not in placeholders)
    routed = Circuit(cm.n, out, c.n_clbits, name=c.name)
    logger.debug('routed %s seed=%d: %d swaps, ecr=%d', c.name, seed, n_swaps, ecr)
    return RoutedResult(routed, ecr, start, list(l2p), seed, n_swaps, slots, slot_maps)


def _lookahead(gates: list[Gate], dag: _Dag, front: set[int], virtual: set[int], window: int) -> list[int]:
    """Up to `window` upcoming two-qubit gates, nearest layers first."""
    extended: list[int] = []
    seen = set(front)
    layer = sorted(front)
    while layer and len(extended) < window:
        nxt = []
        for i in layer:
            for s in dag.succ[i]:
                if s in seen:
                    continue
                seen.add(s)
                nxt.append(s)
                if gates[s].is_two_qubit and s not in virtual:
                    extended.append(s)
        layer = sorted(nxt)
    return extended[:window]


def compact_routed(result: RoutedResult, circuit: Optional[Circuit] = None) -> tuple[Circuit, list[int]]:
    """Restrict a routed circuit to its active physical qubits, relabelled 0..k-1.

    Returns the compact circuit and the final logical -> compact map.
    ``circuit`` substitutes a variant of ``result.circuit`` that touches the
    same qubits (a QPD branch filled into a virtual slot).
    """
    circ = circuit if circuit is not None else result.circuit
    active = sorted(set(result.initial_layout) | {q for g in circ.gates for q in g.qubits})
    index = {p: i for i, p in enumerate(active)}
    compact = Circuit(len(active), [g.remapped(index) for g in circ.gates], circ.n_clbits, name=circ.name)
    return compact, [index[p] for p in result.final_layout]


def remap_observable(obs: Observable, final_map: list[int], n_qubits: int) -> Observable:
    return obs.remap(final_map, n_qubits)


def fill_slot(result: RoutedResult, gate_index: int, logical_gates: Iterable[Gate], extra_clbits: int = 0) -> Circuit:
    """Routed circuit with the virtual gate at gate_index replaced by local gates.

    ``logical_gates`` act on the virtual gate's logical operands and land on
    the physical qubits those operands occupied at that point.
    """
    pos = result.slots[gate_index]
    mapping = result.slot_maps[gate_index]
    physical = [g.remapped(mapping) for g in logical_gates]
    circ = result.circuit
    gates = circ.gates[:pos] + physical + circ.gates[pos + 1:]
    return Circuit(circ.n_qubits, gates, circ.n_clbits + extra_clbits, name=circ.name)
