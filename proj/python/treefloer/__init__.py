"""Python front end to the treefloer C++ core."""

import json

from . import _core
from ._core import (
    REPORT_SCHEMA_VERSION,
    Error,
    block_rank,
    block_rank_dense,
    check_generic,
    field_normalize,
    mirror_pd,
    tree_count,
)

__all__ = [
    "REPORT_SCHEMA_VERSION",
    "Error",
    "block_rank",
    "block_rank_dense",
    "check_generic",
    "compute",
    "field_normalize",
    "mirror_pd",
    "tree_count",
]


def compute(pd, *, omega=None, marking=None, points_per_arc=0, outer_face=None,
            edge_orientation="smaller", check="fast", mirror=False, threads=1,
            timings=False, with_trees=False):
    """Run the pipeline on a PD code and return the report as a dict.

    ``marking`` may be a dict or a JSON string. With ``with_trees`` the tree
    resolutions are added under the key ``"tree_resolutions"``.
    """
    if isinstance(marking, dict):
        marking = json.dumps(marking)
    report, trees = _core.run_json(
        pd, omega=list(omega) if omega is not None else None, marking=marking,
        points_per_arc=points_per_arc, outer_face=outer_face,
        edge_orientation=edge_orientation, check=check, mirror=mirror,
        threads=threads, timings=timings)
    out = json.loads(report)
    if with_trees:
        out["tree_resolutions"] = json.loads(trees)
    return out
