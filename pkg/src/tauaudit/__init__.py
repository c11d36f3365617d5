"""Exact Ramanujan tau computations and audits of claims about tau(p)."""

from .arith import bernoulli, discrete_log, factor, is_prime, mod_pow, primitive_root
from .report import ClaimReport, Verdict
from .sieves import SigmaTable, sigma_mod_sieve, sigma_sieve, sigma_single
from .tau import ABPair, TauSeries, ab_mod, ab_pair, tau_discriminant, tau_eisenstein, tau_eta

__all__ = [
    "ABPair",
    "ClaimReport",
    "SigmaTable",
    "TauSeries",
    "Verdict",
    "ab_mod",
    "ab_pair",
    "bernoulli",
    "discrete_log",
    "factor",
    "is_prime",
    "mod_pow",
    "primitive_root",
    "sigma_mod_sieve",
    "sigma_sieve",
    "sigma_single",
    "tau_discriminant",
    "tau_eisenstein",
    "tau_eta",
]
