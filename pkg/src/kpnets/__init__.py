"""Networks in the disk, their edge vector systems, and KP divisors."""

from .errors import (
    DegenerateGeometry,
    EmbeddingDegenerate,
    EmptyDiagram,
    KpnetsError,
    MissingWaveValue,
    NonGenericTime,
    NonPath,
    NotABase,
    NullTypeTwo,
    SizeGuard,
    ValidationFailure,
)
from .geometry import orientation_sign
from .lediagram import LeDiagram, build_le_network, le_diagram
from .network import (
    BLACK,
    BOUNDARY,
    WHITE,
    Edge,
    FaceSet,
    OrientedView,
    PerfectOrientation,
    PlabicNetwork,
    Vertex,
    all_bases,
    compute_faces,
    edge_labels,
    find_perfect_orientation,
    validate_pbdtp,
)
from .rays import (
    GaugeRay,
    PairIndexBundle,
    pair_indices,
    path_stats,
    ray_intersections,
    region_index,
    region_marking,
    select_gauge_ray,
    select_transform_ray,
    sources_clear_boundary_edges,
    winding,
)
from .vectors import (
    EdgeVectorSystem,
    apply_vertex_gauge,
    apply_weight_gauge,
    boundary_matrix,
    classify_null_edges,
    edge_vector_by_flows,
    enumerate_conservative_flows,
    solve_edge_vectors,
    system_by_flows,
    transform_gauge_ray,
    transform_orientation,
    verify_system,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
