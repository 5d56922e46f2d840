"""Temporal motif counting by edge sampling, with an exact oracle and a
timeline-shuffle null model."""

__version__ = "0.1.0"

from .motifs import (  # noqa: E402
    EDGE,
    PATH2,
    SQUARE,
    TRIANGLE,
    MotifEncoding,
    TargetTemplate,
    TemporalMotif,
    canonical_encoding,
    enumerate_motif_class,
    get_template,
)
from .netio import TemporalNetwork, load_temporal_network, project_static, read_temporal_network  # noqa: E402
from .oracle import exact_count, null_ensemble, timeline_shuffle, z_scores  # noqa: E402
from .sampler import RunConfig, estimate, required_samples, run  # noqa: E402

__all__ = [
    "EDGE", "PATH2", "SQUARE", "TRIANGLE",
    "MotifEncoding", "TargetTemplate", "TemporalMotif", "TemporalNetwork", "RunConfig",
    "canonical_encoding", "enumerate_motif_class", "get_template",
    "load_temporal_network", "read_temporal_network", "project_static",
    "exact_count", "null_ensemble", "timeline_shuffle", "z_scores",
    "estimate", "required_samples", "run",
]
