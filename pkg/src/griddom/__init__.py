"""Exact solver, lower-bound engine and verifier for domination numbers of grids.

Covers 2-domination, Roman domination and classical domination of n x m grid
graphs through transfer matrices in the (min, +) semiring.
"""
from .border import (LossEvaluator, LossPeriodicity, PeriodicLoss, border_loss_min,
                     gamma_lower_bound, loss_periodicity)
from .columns import (BorderSystem, CapacityError, TransferSystem, build_border_system,
                      build_transfer_system, corner_matrix)
from .fixed_height import Recurrence, detect_recurrence, gamma, gamma_large_m
from .formulas import (chang_domination, compare_sweep, theorem_2dom, theorem_roman)
from .oracle import brute_force_min
from .variants import CLASSICAL, ROMAN, TWO_DOM, Cell, get_variant
from .witness import GridAssignment, build_2dom_witness, cost, validate

__all__ = [
    "BorderSystem", "CLASSICAL", "CapacityError", "Cell", "GridAssignment", "LossEvaluator",
    "LossPeriodicity", "PeriodicLoss", "ROMAN", "Recurrence", "TWO_DOM", "TransferSystem",
    "border_loss_min", "brute_force_min", "build_2dom_witness", "build_border_system",
    "build_transfer_system", "chang_domination", "compare_sweep", "corner_matrix", "cost",
    "detect_recurrence", "gamma", "gamma_large_m", "gamma_lower_bound", "get_variant",
    "loss_periodicity", "theorem_2dom", "theorem_roman", "validate",
]
