"""Exact and simulated longest common increasing subsequences of random words."""

from ._core import (
    DomainError,
    InputError,
    ks_two_sample,
    lci_bruteforce,
    lci_dp,
    lci_percolation,
    lci_representation,
    lpp_t2,
    pgf_nstar,
    sample_functional_batch,
    sample_prelimit_batch,
    star_counts,
    theta_l,
    theta_r,
)

__all__ = [
    "DomainError",
    "InputError",
    "ks_two_sample",
    "lci_bruteforce",
    "lci_dp",
    "lci_percolation",
    "lci_representation",
    "lpp_t2",
    "pgf_nstar",
    "sample_functional_batch",
    "sample_prelimit_batch",
    "star_counts",
    "theta_l",
    "theta_r",
]
