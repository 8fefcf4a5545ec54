"""Concept (Galois) lattice construction from binary relations.

A formal context is a binary relation between objects and attributes.  Its
concepts -- maximal rectangles, i.e. pairs (extent, intent) that determine
each other under the two derivation maps -- form a complete lattice.  This
package builds that lattice breadth-first, one level of the cover graph at
a time, grouping the candidate children of each concept through condensed
adjacency lists so shared work is paid once, and recognising repeated or
non-closed candidates with a dictionary keyed by extent.

Entry points:

- :func:`build_lattice_two_level` / :func:`build_lattice_bfs_basic` --
  full cover graph plus work counters,
- :func:`enumerate_concepts` -- concepts only,
- :func:`build_iceberg` -- frequent concepts above a support threshold,
- :mod:`galois_lattice.oracle` -- small brute-force referee used to verify
  the builders,
- the ``galois`` command-line tool (:mod:`galois_lattice.cli`).
"""
from .builders import (
    COMPLETED, NATURAL, BuildStats, ConceptLattice, build_iceberg,
    build_lattice_bfs_basic, build_lattice_two_level,
    canonical_serialization, complete_bottom, enumerate_concepts,
)
from .context import (
    Concept, Context, close_attrs, derive_attr, derive_obj, is_closed_attrs,
    is_closed_objs, top_concept,
)
from .engine import (
    ChildEntry, ClosureVerdict, CondensedView, ExtentDict, classify_child,
    condense, is_closed_by_siblings, prop1_child_extent, raw_view,
    register_children, sort_children, sprout,
)
from .formats import (
    ContextFormat, LatticeDocument, ParseError, join_names,
    lattice_document, parse_context, parse_csv, parse_cxt, parse_fimi,
    write_context, write_lattice,
)
from .oracle import (
    OracleGuardError, oracle_concepts, oracle_extents,
    oracle_extents_exhaustive, oracle_hasse,
)

__version__ = "1.0.0"

__all__ = [
    "__version__",
    # context
    "Context", "Concept", "derive_attr", "derive_obj", "close_attrs",
    "is_closed_attrs", "is_closed_objs", "top_concept",
    # engine
    "ChildEntry", "CondensedView", "ClosureVerdict", "ExtentDict",
    "sprout", "raw_view", "condense", "sort_children", "classify_child",
    "register_children", "is_closed_by_siblings", "prop1_child_extent",
    # builders
    "ConceptLattice", "BuildStats", "build_lattice_two_level",
    "build_lattice_bfs_basic", "complete_bottom", "enumerate_concepts",
    "build_iceberg", "canonical_serialization", "NATURAL", "COMPLETED",
    # formats
    "ContextFormat", "ParseError", "LatticeDocument", "parse_context",
    "parse_cxt", "parse_fimi", "parse_csv", "write_context",
    "lattice_document", "write_lattice", "join_names",
    # oracle
    "OracleGuardError", "oracle_extents", "oracle_extents_exhaustive",
    "oracle_concepts", "oracle_hasse",
]
