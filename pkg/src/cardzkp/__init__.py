"""Physical zero-knowledge proofs for Numberlink and disjoint-paths puzzles, simulated with cards."""

from .deck import CLUB, HEART, Card, CardCount, CardFace, Kind, Orientation, Sequence, Table, decode, encode
from .dpp_graph import (
    DppInstance,
    generate_dpp,
    greedy_coloring,
    parse_graph,
    parse_graph_solution,
    parse_labeling,
    serialize_graph,
    serialize_graph_solution,
    serialize_labeling,
)
from .errors import (
    CardZKError,
    DimensionError,
    FormatError,
    InstanceError,
    MalformedRowError,
    MalformedSequenceError,
    ProtocolOrderError,
    RangeError,
    SizeGuardError,
    VariantMismatchError,
    VisibilityError,
)
from .kernels import BACKEND
from .numberlink import (
    FillMode,
    Filling,
    Puzzle,
    extract_solution,
    fill_from_solution,
    generate_covered_puzzle,
    generate_puzzle,
    parse_filling,
    parse_puzzle,
    parse_solution,
    serialize_filling,
    serialize_puzzle,
    serialize_solution,
    shortcut,
    simplify_paths,
)
from .protocol import (
    RunResult,
    Variant,
    card_requirements,
    run_dkdpp,
    run_numberlink,
    run_ukdpp,
    verify_cell_nonterminal_general,
    verify_cell_nonterminal_well_designed,
    verify_cell_terminal,
)
from .rng import PermutationSource
from .table import (
    HiddenPermutations,
    ProofMatrix,
    build_matrix,
    double_scramble,
    pile_scramble,
    rearrange,
    reveal_column_others,
    reveal_row1,
)
from .transcript import Transcript

__version__ = "0.1.0"
