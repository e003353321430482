"""Isomorph-free generation of small graphs and digraphs and exhaustive
reconstruction checks on their vertex-deleted decks."""

from .canon import CanonicalResult, brute_canonical, canon_code, canonical, canonical_form, is_isomorphic
from .deckcheck import FULL, REDUCED, CollisionGroup, full_deck, process_batch, reduced_deck, search
from .formats import decode, encode, from_digraph6, from_graph6, to_digraph6, to_graph6
from .genx import EXACT, RECON, GenConfig, PreorderKey, count_overhead, generate, generate_list, m_mid, m_top
from .graphs import ALL_GRAPHS, DIGRAPHS, ORIENTED, TOURNAMENTS, ClassSpec, LabelledGraph, in_class

__all__ = [
    "ALL_GRAPHS",
    "DIGRAPHS",
    "EXACT",
    "FULL",
    "ORIENTED",
    "RECON",
    "REDUCED",
    "TOURNAMENTS",
    "CanonicalResult",
    "ClassSpec",
    "CollisionGroup",
    "GenConfig",
    "LabelledGraph",
    "PreorderKey",
    "brute_canonical",
    "canon_code",
    "canonical",
    "canonical_form",
    "count_overhead",
    "decode",
    "encode",
    "from_digraph6",
    "from_graph6",
    "full_deck",
    "generate",
    "generate_list",
    "in_class",
    "is_isomorphic",
    "m_mid",
    "m_top",
    "process_batch",
    "reduced_deck",
    "search",
    "to_digraph6",
    "to_graph6",
]
