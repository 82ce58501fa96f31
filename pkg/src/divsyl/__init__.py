"""Sylow numbers, subgroup lattices and DivSyl(p) checks for permutation groups."""

__version__ = "0.1.0"

from .constructors import GroupFamilySpec, make  # noqa: E402
from .group import GroupError, PermGroup, SubgroupHandle, TooLargeError  # noqa: E402
from .perm import Permutation  # noqa: E402
from .subgroups import divsyl_check, subgroup_classes  # noqa: E402
from .sylow import nu, nu_p, p_partition, sylow_subgroup  # noqa: E402

__all__ = ["GroupError", "GroupFamilySpec", "PermGroup", "Permutation", "SubgroupHandle",
           "TooLargeError", "divsyl_check", "make", "nu", "nu_p", "p_partition",
           "subgroup_classes", "sylow_subgroup"]
