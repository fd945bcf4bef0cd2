"""Permutation groups, stabilizer chains and irredundant bases.

The usual entry points::

    from ibisgroups import atlas, ibis_check
    verdict = ibis_check(atlas.on_k_subsets("sym", 6, 2).group)
"""

__version__ = "0.1.0"

from .bases import (IbisVerdict, IrredundantSequence, ibis_check, is_irredundant,  # noqa: E402
                    matroid_from_group, max_irredundant_size, min_base_size,
                    random_irredundant_base, strip_redundant)
from .perm import GeneratedGroup, Permutation, parse_permutation, render  # noqa: E402
from .stabchain import StabilizerChain, build_chain  # noqa: E402

__all__ = [
    "GeneratedGroup", "IbisVerdict", "IrredundantSequence", "Permutation", "StabilizerChain",
    "build_chain", "ibis_check", "is_irredundant", "matroid_from_group", "max_irredundant_size",
    "min_base_size", "parse_permutation", "random_irredundant_base", "render", "strip_redundant",
]
