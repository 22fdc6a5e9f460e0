"""Finite infra-topological spaces and the modal logic GIT."""
from .algebra import UnionCheck, meet, union_check
from .errors import InfraError
from .logic import Formula, check_derivation, match_axiom, parse, render
from .operators import (
    ClassificationReport,
    FamilyKind,
    classify,
    compare_families,
    derived_family,
    i_closure,
    i_interior,
    minimal_infra_open_sets,
)
from .semantics import GitModel, SearchBounds, countermodel_search, forces, true_in_model, truth_set, validate_model
from .setfam import (
    InfraTopology,
    Subset,
    Universe,
    generate_infra_topology,
    is_alexandrov,
    load_space,
    make_universe,
    subset_of,
    validate_infra_topology,
)

__version__ = "0.1.0"
