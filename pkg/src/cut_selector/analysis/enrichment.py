from collections import defaultdict
from typing import Literal, Optional, Sequence

from ..models.base import ExperimentRecord

Method = Literal['tw2s', 'stage1_only']


def _selected_type(record: ExperimentRecord, method: Method) -> Optional[str]:
    return record.edge_type if method == 'tw2s' else record.stage1_edge_type


def enrichment(records: Sequence[ExperimentRecord], method: Method = 'tw2s') -> Optional[float]:
    """Rate of inter-community selections over the mean inter-community edge fraction.

    None when no record is labelled or the mean fraction is 0.
    """
    labelled = [r for r in records if r.r_inter is not None and _selected_type(r, method) is not None]
    if not labelled:
        return None
    r_inter = sum(r.r_inter for r in labelled) / len(labelled)
    if r_inter == 0:
        return None
    picked = sum(1 for r in labelled if _selected_type(r, method) == 'inter') / len(labelled)
    return picked / r_inter


def enrichment_by_condition(records: Sequence[ExperimentRecord], method: Method = 'tw2s') -> dict[str, Optional[float]]:
    grouped: dict[str, list[ExperimentRecord]] = defaultdict(list)
    for r in records:
        grouped[r.condition].append(r)
    return {condition: enrichment(rows, method) for condition, rows in grouped.items()}
