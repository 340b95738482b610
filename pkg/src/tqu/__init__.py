"""Tight preparation uncertainty relations for qubit Pauli observables.

State/observable algebra lives in :mod:`tqu.qmath`, the three tight relations
and the classical comparison bounds in :mod:`tqu.relations`, the boundary state
families in :mod:`tqu.boundary` and the polarimeter Monte Carlo in
:mod:`tqu.polsim`.
"""

from tqu.errors import (
    ConfigError,
    DomainError,
    InvalidObservable,
    UncertaintyError,
    UnphysicalState,
    ZeroCounts,
)
from tqu.qmath import (
    BlochVector,
    PauliAxis,
    PreparationSetting,
    binary_entropy,
    binary_entropy_inverse,
    expectation,
    f_of_entropy,
    shannon_entropy,
    state_from_setting,
    std_dev,
)
from tqu.relations import (
    ObservablePair,
    RelationReport,
    UncertaintyPoint,
    check_entropy_relation,
    check_expectation_relation,
    check_stddev_relation,
    maassen_uffink_bound,
    robertson_bound,
    schroedinger_bound,
)

__version__ = "0.1.0"

__all__ = [
    "BlochVector",
    "ConfigError",
    "DomainError",
    "InvalidObservable",
    "ObservablePair",
    "PauliAxis",
    "PreparationSetting",
    "RelationReport",
    "UncertaintyError",
    "UncertaintyPoint",
    "UnphysicalState",
    "ZeroCounts",
    "binary_entropy",
    "binary_entropy_inverse",
    "check_entropy_relation",
    "check_expectation_relation",
    "check_stddev_relation",
    "expectation",
    "f_of_entropy",
    "maassen_uffink_bound",
    "robertson_bound",
    "schroedinger_bound",
    "shannon_entropy",
    "state_from_setting",
    "std_dev",
]
