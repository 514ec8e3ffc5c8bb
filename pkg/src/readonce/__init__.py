"""Checking tests for read-once Boolean functions via relevance hypercubes."""

from .boolfn import (
    PartialAssignment,
    SimilarityWitness,
    TruthTable,
    evaluate,
    is_bound_set,
    is_constant_subcube,
    is_prime,
    relevant_vars,
    restrict,
    similar,
)
from .factor import factor, is_read_once, trees_equivalent
from .hypercube import (
    Hypercube,
    expand_hypercube,
    find_hypercubes,
    find_one_hypercube,
    is_stable,
    restriction_on,
)
from .testgen import TestSet, hypercube_set, relevance_table, size_bound
from .tree import canonicalize, format_formula, parse, random_tree, truth_table, validate
from .verify import enumerate_readonce, identify_from_test, is_checking_test, min_test_size

__version__ = "0.1.0"
