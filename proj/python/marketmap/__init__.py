"""Correlation networks from asset price panels.

Thin wrapper over the compiled `_core` module; see the package README for
the full pipeline and CLI.
"""

from ._core import (
    __version__,
    distance,
    eigenvector,
    k_shell,
    log_returns,
    mst_edges,
    noise_threshold,
    pcoa,
    run_pipeline,
    spearman,
    synthetic_panel,
)

__all__ = [
    "__version__",
    "distance",
    "eigenvector",
    "k_shell",
    "log_returns",
    "mst_edges",
    "noise_threshold",
    "pcoa",
    "run_pipeline",
    "spearman",
    "synthetic_panel",
]
