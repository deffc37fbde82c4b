"""Exact detection of light configurations in sparse graphs.

Everything arithmetic in this package is an exact rational; nothing is
ever compared through a float.  The main entry points:

- core: graphs, average degree, girth, threads, subdivision
- density: exact maximum average degree with a brute-force oracle
- patterns: degree-constrained path/star/cycle/thread matching
- plane: rotation-system embeddings and face statistics
- discharge: mechanical discharging runs with exact conservation
- constructions: base graphs, factors, sharpness recipes, optimality audit
- theorems: the pattern/theorem DSL, built-in catalog, verification
- corpus: seeded random instance generators per theorem
"""

from .core import (
    Graph,
    Thread,
    average_degree,
    build_graph,
    girth,
    maximal_threads,
    subdivide,
    subdivide_edges,
)
from .density import DensityResult, mad_bruteforce, mad_exact
from .errors import InputError, PatternSyntaxError
from .patterns import (
    ANY,
    CyclePattern,
    DegSpec,
    PathPattern,
    StarPattern,
    ThreadProfilePattern,
    Witness,
    at_least,
    at_most,
    exact,
    find_all,
    find_pattern,
    omega_k,
    render_pattern,
)
from .plane import PlaneGraph, build_plane_graph, faces, plane_stats
from .discharge import ChargeSpec, lemma_l_margin, run_discharge
from .constructions import (
    audit_optimality,
    base_graph,
    build_sharpness,
    find_factor,
)
from .theorems import (
    TheoremSpec,
    Verdict,
    builtin_theorem,
    check_hypotheses,
    parse_pattern,
    parse_theorem_spec,
    render_theorem_spec,
    verify_theorem,
)
from .corpus import corpus_for_theorem, gen_corpus

__version__ = "0.1.0"
