"""Exact tools for k-modal subsequences and k-modal paths of planar point sets."""

from .core import (FineCovering, GenericPointSet, ModalPath, NonGenericError, Point, Report,
                   Sign, from_sequence, rank_normalize, validate_modal_path)
from .bounds import lb_rho, reference_bounds, ub_rho
from .solver import brute_longest, longest_modal, rho_exact

__version__ = "0.1.0"
