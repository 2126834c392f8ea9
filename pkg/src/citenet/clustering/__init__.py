from .config import PAPER_RESOLUTION, ClusteringConfig, parse_resolution
from .modularity import aggregate, local_move, quality
from .multilevel import MultilevelResult, leiden, louvain, run_leiden, run_louvain

__all__ = [
    "PAPER_RESOLUTION",
    "ClusteringConfig",
    "MultilevelResult",
    "aggregate",
    "leiden",
    "local_move",
    "louvain",
    "parse_resolution",
    "quality",
    "run_leiden",
    "run_louvain",
]

from .spectral import kmeans, normalized_laplacian, spectral_cluster, spectral_embedding  # noqa: E402

__all__ += ["kmeans", "normalized_laplacian", "spectral_cluster", "spectral_embedding"]
