"""Finite left braces: construction, verification and classification of
braces of size p²q²."""

from .abelian import FiniteAbelianGroup, abelian_automorphisms, make_group
from .catalog import (
    FamilySpec,
    GroupSpec,
    build_family,
    build_group,
    catalog_records,
    catalog_specs,
    count_report,
    full_catalog,
)
from .core import BraceMap, BraceTable, brace_from_law, load_brace, save_brace, verify_brace, verify_brace_sampled
from .engine import TauMorphism, classify_mn, enumerate_taus, semidirect_brace, tau_classes
from .errors import BraceError, InvalidArgument, PreconditionError, ResourceLimitError
from .gl2 import gl2_order_p_subgroups, verify_gl2_lemma
from .iso import brace_automorphisms, brace_isomorphic, brace_isomorphism
from .oracle import braces_on, oracle_match
from .seeds import seed_braces, seed_q_braces
from .ybe import brace_to_ybe, verify_braid

__version__ = "0.1.0"
