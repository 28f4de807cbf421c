"""
Cut selection components: min-fill elimination scoring (stage 1),
betweenness ranking (stage 2) and the random baseline.
"""
from .betweenness import degree_penalty, edge_betweenness, normalize_bc, normalized_edge_betweenness
from .elimination import (
    EliminationStep,
    EliminationTrace,
    Stage1Scores,
    min_fill_trace,
    shortlist,
    stage1_scores,
    trace_to_jsonl,
)
from .selector import random_cut, rank_candidates, select_cut, select_stage1_only

__all__ = [
    'degree_penalty',
    'edge_betweenness',
    'normalize_bc',
    'normalized_edge_betweenness',
    'EliminationStep',
    'EliminationTrace',
    'Stage1Scores',
    'min_fill_trace',
    'shortlist',
    'stage1_scores',
    'trace_to_jsonl',
    'random_cut',
    'rank_candidates',
    'select_cut',
    'select_stage1_only',
]
