"""Verification oracles: dense statevector/unitary and stabilizer tableau."""

from .dense import StateVector, dense_cap, sample_shots, unitary_of
from .tableau import Tableau, stabilizer_group_equal

__all__ = [
    "StateVector",
    "Tableau",
    "dense_cap",
    "sample_shots",
    "stabilizer_group_equal",
    "unitary_of",
]
