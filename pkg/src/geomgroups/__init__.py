"""Geometry groups of partial tree operators: F, V, 𝔖_• and B_•."""

from .bv import BvLD, BvWord, bv_bracket, bv_circle, bv_equal, natural_tree, psi
from .constructions import block_word, c_word, s_word, wt, wt_star, wt_via_polish
from .freegroup import FreeWord
from .ld import ConjFree, LDSystem, ShiftedSum, TrivialLD, get_system
from .operators import A, C, Gen, S, apply_generator, apply_word, orbit, parse_word
from .presentations import relations, translate_A_to_a, verify
from .realization import PLMap, IntervalBijection, pl_of_seed, vmap_of_seed
from .seeds import Seed, compose, equal_in_group, is_identity, word_seed
from .trees import Leaf, Node, parse_tree, print_tree

__all__ = [
    "A", "C", "S", "Gen", "apply_generator", "apply_word", "orbit", "parse_word",
    "Leaf", "Node", "parse_tree", "print_tree",
    "Seed", "compose", "equal_in_group", "is_identity", "word_seed",
    "wt", "wt_star", "wt_via_polish", "c_word", "s_word", "block_word",
    "relations", "translate_A_to_a", "verify",
    "LDSystem", "TrivialLD", "ConjFree", "ShiftedSum", "get_system", "FreeWord",
    "BvLD", "BvWord", "bv_bracket", "bv_circle", "bv_equal", "natural_tree", "psi",
    "PLMap", "IntervalBijection", "pl_of_seed", "vmap_of_seed",
]

__version__ = "0.1.0"
