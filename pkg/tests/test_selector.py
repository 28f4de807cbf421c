import time

import pytest

from cut_selector.circuit import Circuit, Gate, build_tfim, circuit_from_graph
from cut_selector.exceptions import NoTwoQubitGatesError
from cut_selector.graphs import erdos_renyi
from cut_selector.models import TfimSpec
from cut_selector.selection import random_cut, rank_candidates, select_cut, select_stage1_only


def test_barbell_bridge_is_selected(barbell_circuit):
    selection = select_cut(barbell_circuit)
    assert selection.method == 'tw2s'
    assert selection.edge == (2, 3)
    assert selection.gate_index == 3
    assert selection.tw_ub == 2
    # all stage-1 scores vanish on a chordal graph, so every tied edge is shortlisted
    assert len(selection.shortlist) == 7


def test_shortlist_entries_carry_both_stages(barbell_circuit):
    _, entries, _ = rank_candidates(barbell_circuit, 3, 1.0, 1.0, 1.0, 0.3)
    bridge = next(e for e in entries if e.edge == (2, 3))
    assert bridge.bc == pytest.approx(9 / 15)
    assert bridge.dp == pytest.approx(1.0)
    assert bridge.score2 == pytest.approx(9 / 15 - 0.3)


def test_selected_gate_is_first_occurrence_of_the_edge():
    c = Circuit(4, [Gate.cx(0, 1), Gate.cx(1, 2), Gate.cx(2, 3), Gate.cx(0, 3), Gate.cx(1, 0)])
    selection = select_stage1_only(c)
    assert selection.method == 'stage1_only'
    assert selection.edge == (0, 1)
    assert selection.gate_index == 0
    assert c.gates[select_cut(c).gate_index].pair == select_cut(c).edge


@pytest.mark.parametrize('n', [6, 8, 10, 12])
@pytest.mark.parametrize('steps', [1, 2, 3, 4])
def test_j1j2_selection_picks_the_closing_edge(n, steps):
    c = build_tfim(TfimSpec.j1j2(n, steps))
    assert select_cut(c).edge == (0, n - 1)


def test_random_cut_is_seeded():
    c = build_tfim(TfimSpec.chain(6, 2))
    first = random_cut(c, seed=42)
    assert first == random_cut(c, seed=42)
    assert c.gates[first.gate_index].is_two_qubit
    assert first.seed == 42
    assert {random_cut(c, seed=s).gate_index for s in range(40)} <= set(c.two_qubit_positions())


def test_circuits_without_two_qubit_gates_are_rejected():
    c = Circuit(2, [Gate.h(0), Gate.h(1)])
    with pytest.raises(NoTwoQubitGatesError):
        select_cut(c)
    with pytest.raises(NoTwoQubitGatesError):
        random_cut(c, seed=0)


def test_selection_does_not_depend_on_local_gates(barbell_circuit):
    padded = Circuit(6, [Gate.h(q) for q in range(6)] + barbell_circuit.gates)
    assert select_cut(padded).edge == select_cut(barbell_circuit).edge


@pytest.mark.slow
def test_selection_is_fast_on_a_large_interaction_graph():
    g = erdos_renyi(200, 600 / (200 * 199 / 2), seed=1)
    c = circuit_from_graph(g)
    start = time.perf_counter()
    select_cut(c)
    assert time.perf_counter() - start < 1.0
