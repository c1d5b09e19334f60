from dtsim.processes.streams import ARRIVALS, CHANNELS, SERVICES, RandomStream, stream_id
from dtsim.processes.samplers import (
    build_grid,
    grid_words,
    sample_arrivals,
    sample_channels,
    sample_service,
)

__all__ = [
    "ARRIVALS",
    "CHANNELS",
    "SERVICES",
    "RandomStream",
    "stream_id",
    "build_grid",
    "grid_words",
    "sample_arrivals",
    "sample_channels",
    "sample_service",
]
