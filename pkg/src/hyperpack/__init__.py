"""Minimum-weight packings of mixed hyperarborescences."""
from .engine import solve, solve_kkt, solve_matroid_based, solve_reachability, solve_spanning
from .errors import ContractError, InputError, SizeLimitError
from .hypercore import Arc, Biset, Dyperedge, Hyperedge, MixedHypergraph, Packing, Weights, check_rooted
from .matroid import ExplicitMatroid, FreeMatroid, PartitionMatroid, UniformMatroid
from .verify import Mode, check_biset_condition, check_digraph_condition, condition_verdict, validate_packing

__all__ = [
    "Arc", "Biset", "ContractError", "Dyperedge", "ExplicitMatroid", "FreeMatroid", "Hyperedge",
    "InputError", "MixedHypergraph", "Mode", "Packing", "PartitionMatroid", "SizeLimitError",
    "UniformMatroid", "Weights", "check_biset_condition", "check_digraph_condition", "check_rooted",
    "condition_verdict", "solve", "solve_kkt", "solve_matroid_based", "solve_reachability",
    "solve_spanning", "validate_packing",
]
