"""Torus diagrams, bridge-trisection records, homotopy normalization and lattices."""

from .diagram import BridgePoint, TorusArc, TorusDiagram, beta_positive, line_diagram, symplectic_area
from .homotopy import (FactorSpec, HArc, SurfaceHomotopyRecord, concentrate_longitudes, flatten_and_count,
                       point_push, transfer_longitude)
from .lattice import hypersurface_class, lattice_obstructions
from .records import (BridgeTrisectionRecord, SectorLink, adjunction_verdict, c1_pairing, euler_characteristic,
                      sector_self_linking, self_intersection, total_self_linking_identity,
                      whitney_band_bookkeeping)

__all__ = [
    "BridgePoint", "BridgeTrisectionRecord", "FactorSpec", "HArc", "SectorLink", "SurfaceHomotopyRecord",
    "TorusArc", "TorusDiagram", "adjunction_verdict", "beta_positive", "c1_pairing", "concentrate_longitudes",
    "euler_characteristic", "flatten_and_count", "hypersurface_class", "lattice_obstructions", "line_diagram",
    "point_push", "sector_self_linking", "self_intersection", "symplectic_area", "total_self_linking_identity",
    "transfer_longitude", "whitney_band_bookkeeping",
]
