"""expertbn: low-complexity Bayesian networks from expert-elicited
probabilities.

The package covers the full workflow: structure validation, log-linear
reduction and parameter counting, questionnaire generation, ingestion with
provenance, consistency checking and reconciliation, conditional-table
synthesis from marginals and first-order conditionals, exact inference,
and maintenance what-if analysis. ``expertbn.cli`` exposes the same
workflow as a command line; ``expertbn.service`` as an HTTP API.
"""

from .errors import ExpertBnError
from .graph import Dag, Family, Variable, moralize, topological_order, validate_dag
from .loglinear import (
    InteractionSpec,
    LogLinearModel,
    bn_to_loglinear,
    check_representable,
    count_parameters,
    reduce_to_order_two,
)
from .elicitation import (
    Conditional,
    ConsistencyReport,
    ElicitationStore,
    InfeasibleWarning,
    Marginal,
    ProbabilityStatement,
    Questionnaire,
    ReconciliationAction,
    check_consistency,
    fix_by_single_conditional,
    generate_questionnaire,
    replace_marginal,
    rescale_preserving_ratios,
    suggest_target,
)
from .synthesis import Cpt, SynthesisPlan, synthesize_network, synthesize_row, parent_joint
from .inference import (
    Evidence,
    MaintenanceAction,
    Network,
    PosteriorReport,
    SensitivityReport,
    apply_maintenance,
    joint_probability,
    posterior,
    sensitivity,
)
from .modelfile import Model, load_model, save_model

__version__ = "0.1.0"
