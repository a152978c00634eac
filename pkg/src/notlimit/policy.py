"""Numerical tolerances and size limits used throughout the package."""

from dataclasses import dataclass


@dataclass(frozen=True)
class NumericalPolicy:
    """One place for every tolerance knob.

    Attributes:
        structural: exact-by-construction identities (normalization,
            commutators of block unitaries, trace preservation).
        validation: input checks on user-supplied operators and states.
        search: agreement of numerically maximized distances with closed forms.
        dense_limit: largest ancilla size N for which dense 2**(N+1)
            state vectors are built.
    """

    structural: float = 1e-12
    validation: float = 1e-10
    search: float = 1e-6
    dense_limit: int = 12


POLICY = NumericalPolicy()
