from dataclasses import dataclass

DEFAULT_VERTEX_CAP = 100_000
DEFAULT_GEODESIC_CAP = 1_000_000
DEFAULT_SEARCH_CAP = 1_000_000


@dataclass(frozen=True)
class Caps:
    """Resource limits threaded through the expensive operations."""

    vertex_cap: int = DEFAULT_VERTEX_CAP
    geodesic_cap: int = DEFAULT_GEODESIC_CAP
    search_cap: int = DEFAULT_SEARCH_CAP

    def __post_init__(self):
        for name in ("vertex_cap", "geodesic_cap", "search_cap"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")
