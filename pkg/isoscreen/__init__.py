import importlib.metadata

from .algebra import (  # noqa: F401
    AlgebraElement,
    IdentityReport,
    NotInAlgebra,
    algebra_product,
    coefficients_from_distances,
    decompose_in_algebra,
    predicted_distance_multiset,
    verify_srg_identities,
)
from .classical import (  # noqa: F401
    IntegratorConfig,
    Normalization,
    PotentialKind,
    PotentialSpec,
    classical_compare,
    euler_integrate,
    euler_steps,
    evolve_harmonic_closed_form,
    gram,
    laplacian,
    squared_distances,
)
from .corpus import CorpusEntry, builtin_corpus, corpus_entry, ingest_pair  # noqa: F401
from .errors import *  # noqa: F401, F403
from .graph import (  # noqa: F401
    Graph,
    IsomorphismResult,
    LatinSquare,
    Outcome,
    PermutationWitness,
    SrgParams,
    apply_permutation,
    brute_force_isomorphic,
    detect_srg,
    latin_square_graph,
)
from .graph6 import (  # noqa: F401
    encode_edge_list,
    encode_graph6,
    parse_edge_list,
    parse_graph6,
    read_graphs,
)
from .linalg import (  # noqa: F401
    CanonicalMultiset,
    EigenSystem,
    canonical_multiset,
    multiset_equal,
    ordered_by,
    sym_eig,
    sym_matrix_function,
    unitary_evolution,
)
from .report import ComparisonReport, Method, Verdict  # noqa: F401

try:
    __version__ = importlib.metadata.version("isoscreen")
except Exception:
    __version__ = "0.0.0"  # Fallback for development
