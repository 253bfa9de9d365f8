"""Kauffman bracket, Khovanov and Lee homology, the s-invariant."""

from .bennequin import braid_s_invariant, slice_bennequin_gap, slice_bennequin_verdict, unlink_certificate
from .diagram import PlanarDiagram, closure_pd, linking_number, mirror, self_writhe, unknot
from .khovanov import BINARY, RATIONAL, BigradedRanks, kauffman_bracket, khovanov
from .lee import LeeSummary, lee_s_invariant, lee_total_rank
from .polynomial import LaurentPoly

__all__ = [
    "BINARY", "RATIONAL", "BigradedRanks", "LaurentPoly", "LeeSummary", "PlanarDiagram",
    "braid_s_invariant", "closure_pd", "kauffman_bracket", "khovanov", "lee_s_invariant",
    "lee_total_rank", "linking_number", "mirror", "self_writhe", "slice_bennequin_gap",
    "slice_bennequin_verdict", "unknot", "unlink_certificate",
]
