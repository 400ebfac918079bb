"""Age of Information and delay of multi-hop tandem M/M/1 relay chains."""

from ._core import (
    Estimate,
    InvalidArgument,
    NoDataError,
    RangeError,
    UnstableNetwork,
    average_aoi,
    ewy_bound,
    minimize_aoi_chain,
    minimize_aoi_split,
    mm1_average_aoi,
    network_delay,
    run_cli,
    simulate,
    sojourn_pdf,
    split_aoi_node1,
    split_aoi_node2,
    split_average_aoi,
    split_network_delay,
    validate_burke,
)

__all__ = [
    "Estimate",
    "InvalidArgument",
    "NoDataError",
    "RangeError",
    "UnstableNetwork",
    "average_aoi",
    "ewy_bound",
    "minimize_aoi_chain",
    "minimize_aoi_split",
    "mm1_average_aoi",
    "network_delay",
    "run_cli",
    "simulate",
    "sojourn_pdf",
    "split_aoi_node1",
    "split_aoi_node2",
    "split_average_aoi",
    "split_network_delay",
    "validate_burke",
]
