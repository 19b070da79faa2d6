"""Spanning bipartite cactuses and Hamilton cycles in prisms over planar graphs.

The pipeline: parse a plane graph (rotation system plus outer face), certify
it is a circuit graph with internal degrees at least 4, decompose it into an
even-cycle-spined set of chains, assemble a spanning bipartite cactus, and
read off a verified Hamilton cycle of the prism G x K2.
"""

from .embedgraph import (
    Face,
    PlaneGraph,
    bounded_subgraph,
    canonical_cycle,
    classify_external,
    dump_pgr,
    face_parities,
    load_pgr,
    parse_pgr,
    trace_faces,
)
from .structure import (
    BlockCutTree,
    ChainBlock,
    CircuitGraph,
    PlainChainOfBlocks,
    blocks_cutvertices,
    delete_vertex_chain,
    is_circuit_graph,
    is_three_connected,
)
from .goodness import (
    Chain,
    GoodnessVerdict,
    GoodReason,
    SetOfChains,
    is_bad,
    is_good_chain,
    validate_cycle_set_of_chains,
    validate_set_of_chains,
)
from .chains import (
    BranchLog,
    ParityRequest,
    cycle_chains_bip,
    cycle_chains_nonbip,
    glue,
    glue_cycle,
    rihta,
    set_chains_bip,
    set_chains_nonbip,
    set_chains_parity_bxbip,
    set_chains_xyxy,
)
from .cactus import Cactus, random_bipartite_cactus, spanning_bipartite_cactus, validate_cactus
from .prism import PrismCycle, prism_hamilton_from_cactus, verify_prism_hamilton
from .oracle import (
    Corpus,
    CorpusEntry,
    brute_hamilton_prism,
    brute_set_of_chains,
    generate_corpus,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
