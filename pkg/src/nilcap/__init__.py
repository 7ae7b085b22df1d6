"""Exact computations in nilpotent products of cyclic groups: normal forms,
multiplication, centers and capability decisions with witness groups."""

from .capability import (
    CapabilityVerdict,
    Class2Presentation,
    Decision,
    baer_abelian,
    capable_class2_2gen,
    capable_nilprod,
    necessary_condition,
    verify_witness,
)
from .collector import collect, free_group
from .nilprod import GroupSpec, make_group

__all__ = [
    "CapabilityVerdict",
    "Class2Presentation",
    "Decision",
    "GroupSpec",
    "baer_abelian",
    "capable_class2_2gen",
    "capable_nilprod",
    "collect",
    "free_group",
    "make_group",
    "necessary_condition",
    "verify_witness",
]
