"""Combinatorics of Newton and Ekedahl-Oort stratifications.

Root data and Weyl groups, the poset B(G, mu) of sigma-conjugacy classes,
the EO parameter set ^J W with its closure order, the Hodge-Newton
criterion, and brute-force checks in truncated loop groups of GL_n.
"""

from .affine import AffineElement, KottwitzPoint, Pi1Group, kottwitz_point, mu_bar, mu_natural, newton_point
from .bgmu import (
    BGmuPoset,
    NewtonClass,
    b_max,
    basic_element,
    enumerate_bgmu,
    hn_applicable,
    in_VM_plus,
    levi_centralizer,
    mu_central_in_levi,
    newton_leq,
    project_to_VM,
)
from .eozip import (
    EOLabel,
    eo_labels,
    eo_newton_table,
    eo_representative,
    eo_to_newton,
    monotonicity_probe,
    type_J,
    zip_orbit_representatives,
)
from .errors import CrossCheckError, InsufficientPrecision, InternalConsistencyError, NotInKChi, SpecError
from .rootdata import GroupSpec, RootDatum, build_root_datum, dominant_representative, is_dominant, pairing, sigma_apply
from .weyl import WeylElement, WeylGroup, generate_weyl, weyl_group

__version__ = "0.1.0"
