"""Causal equivalence and structure learning under hard interventions with latents."""

__version__ = "0.1.0"

from .augment import (
    AugmentedGraph,
    augmented_pair_graph,
    create_f_nodes,
    i_augmented_mag,
    i_augmented_tuple,
    i_essential_graph,
    soft_augmented_mag,
    twin_augmented_mag,
    union_graph,
)
from .equivalence import (
    EquivalenceReport,
    discriminating_paths,
    i_markov_equivalent,
    mag_equivalent,
    unshielded_colliders,
)
from .errors import *  # noqa: F401,F403
from .experiments import (
    McResult,
    count_admgs,
    enumerate_admgs,
    hoeffding_samples,
    mec_probability_sampled,
    mec_size_exhaustive,
    run_table,
    sample_admg,
)
from .graph import (
    Admg,
    InterventionPair,
    InterventionSet,
    ancestors,
    format_admg,
    mutilate,
    parse_admg,
    parse_targets,
    partition_relative,
    relative_nonancestors,
    validate_admg,
)
from .learner import SepSetTable, find_separating_sets, learn, learn_with_sepsets, orient_fixpoint
from .marks import Mark
from .mixed import MixedGraph, format_mixed, parse_mixed
from .nodes import BaseNode, FNode
from .oracle import SeparationOracle
from .projection import latent_project, validate_mag
from .separation import find_separating_set, has_inducing_path, m_separated
