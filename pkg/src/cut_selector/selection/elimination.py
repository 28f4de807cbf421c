"""Min-fill elimination and the fill-responsibility score of each interaction edge."""

import json
import logging
from dataclasses import dataclass, field

from ..config import Config
from ..exceptions import NoTwoQubitGatesError, ParameterError
from ..circuit.interaction import InteractionGraph
from ..graphs.ugraph import UGraph, edge_key

logger = logging.getLogger(__name__)

Edge = tuple[int, int]


@dataclass
class EliminationStep:
    vertex: int
    bag: list[int]
    fill_edges: list[Edge]


@dataclass
class EliminationTrace:
    ordering: list[int]
    steps: list[EliminationStep]

    @property
    def tw_ub(self) -> int:
        return max((len(s.bag) - 1 for s in self.steps), default=0)


@dataclass
class Stage1Scores:
    scores: dict[Edge, float]
    alpha: float = Config.ALPHA
    beta: float = Config.BETA
    trace: EliminationTrace | None = field(default=None, repr=False)

    def __getitem__(self, edge: Edge) -> float:
        return self.scores.get(edge, 0.0)


def _fill_count(adj: dict[int, set[int]], v: int) -> int:
    nbrs = adj[v]
    d = len(nbrs)
    missing = sum(d - 1 - len(adj[x] & nbrs) for x in nbrs)
    return missing // 2


def min_fill_trace(g: UGraph) -> EliminationTrace:
    """Greedy min-fill elimination; ties go to the smallest vertex id."""
    if g.n == 0:
        raise ParameterError('g', 'graph has no nodes')

    adj = {v: set(g.neighbors(v)) for v in g.nodes()}
    fill = {v: _fill_count(adj, v) for v in adj}
    ordering: list[int] = []
    steps: list[EliminationStep] = []

    while adj:
        v = min(adj, key=lambda u: (fill[u], u))
        nbrs = sorted(adj[v])
        new_edges = [
            (x, y) for i, x in enumerate(nbrs) for y in nbrs[i + 1:] if y not in adj[x]
        ]
        for x, y in new_edges:
            adj[x].add(y)
            adj[y].add(x)
        for x in nbrs:
            adj[x].discard(v)
        del adj[v]
        del fill[v]

        ordering.append(v)
        steps.append(EliminationStep(vertex=v, bag=sorted([v, *nbrs]), fill_edges=new_edges))

        # fill counts change only around the eliminated neighbourhood
        touched = set(nbrs)
        for x in nbrs:
            touched |= adj[x]
        for u in touched:
            fill[u] = _fill_count(adj, u)

    trace = EliminationTrace(ordering, steps)
    logger.debug('min-fill on n=%d m=%d: tw_ub=%d', g.n, g.num_edges, trace.tw_ub)
    return trace


def stage1_scores(
    ig: InteractionGraph,
    alpha: float = Config.ALPHA,
    beta: float = Config.BETA,
    trace: EliminationTrace | None = None,
) -> Stage1Scores:
    """score1(e) = w(e) * sum of g(v) over every fill edge created next to e.

    g(v) = alpha (|B(v)| - 1) + beta |F(v)|. Only edges of the interaction
    graph accumulate; a step touching an earlier fill edge contributes nothing.
    Each fill edge {x, y} credits {v, x} and {v, y} once.
    """
    if trace is None:
        trace = min_fill_trace(ig.base)

    acc: dict[Edge, float] = {e: 0.0 for e in ig.edges}
    for step in trace.steps:
        if not step.fill_edges:
            continue
        weight = alpha * (len(step.bag) - 1) + beta * len(step.fill_edges)
        for x, y in step.fill_edges:
            for end in (x, y):
                e = edge_key(step.vertex, end)
                if e in acc:
                    acc[e] += weight

    scores = {e: ig.weight(e) * a for e, a in acc.items()}
    return Stage1Scores(scores, alpha, beta, trace)


def shortlist(scores: Stage1Scores, ig: InteractionGraph, k: int = Config.SHORTLIST_K) -> list[Edge]:
    """Top-k candidate edges by score1, ties broken lexicographically.

    When every score is zero the k heaviest edges are returned instead,
    together with every edge tied with the k-th heaviest weight.
    """
    if k < 1:
        raise ParameterError('k', f'{k} < 1')
    edges = [e for e in ig.edges if ig.occurrences.get(e)]
    if not edges:
        raise NoTwoQubitGatesError('interaction graph has no edges to shortlist')

    if any(scores[e] > 0 for e in edges):
        ranked = sorted(edges, key=lambda e: (-scores[e], e))
        return ranked[:k]

    ranked = sorted(edges, key=lambda e: (-ig.weight(e), e))
    cutoff = ig.weight(ranked[min(k, len(ranked)) - 1])
    picked = ranked[:k] + [e for e in ranked[k:] if ig.weight(e) == cutoff]
    logger.info('all stage-1 scores are zero, shortlisting %d heaviest edges', len(picked))
    return picked


def trace_to_jsonl(trace: EliminationTrace) -> str:
    lines = [
        json.dumps(
            {
                'step': i,
                'vertex': s.vertex,
                'bag': s.bag,
                'fill_edges': [list(e) for e in s.fill_edges],
            }
        )
        for i, s in enumerate(trace.steps)
    ]
    return '\n'.join(lines) + ('\n' if lines else '')
