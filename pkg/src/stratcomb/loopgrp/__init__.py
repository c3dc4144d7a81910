"""Truncated loop groups ``GL_n(F_{q^m}[t]/(t^N))`` and experiments on them."""

from .experiments import hn_reduction_chain, verify_hn_reduction, verify_mu_conjugacy
from .fields import GF, embedding, field
from .lang import LangNotFound, TorusLangSolution, solve_torus_lang
from .ops import (
    Membership,
    cartan_invariant,
    check_factorization,
    elementary_divisors_by_minors,
    iwahori_factorize,
    membership,
    newton_invariant,
    root_element,
    sigma_conjugate,
    twisted_power,
)
from .ring import LoopMatrix, TruncRing, residue_det
from .search import SearchResult, find_conjugator, verify_conjugator

__all__ = [
    "GF", "field", "embedding", "TruncRing", "LoopMatrix", "residue_det",
    "Membership", "membership", "root_element", "sigma_conjugate", "iwahori_factorize",
    "check_factorization", "cartan_invariant", "elementary_divisors_by_minors",
    "twisted_power", "newton_invariant", "LangNotFound", "TorusLangSolution",
    "solve_torus_lang", "SearchResult", "find_conjugator", "verify_conjugator",
    "verify_mu_conjugacy", "verify_hn_reduction", "hn_reduction_chain",
]
