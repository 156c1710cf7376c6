"""stratkit: executable combinatorics of filtered simplicial sets over posets."""

from .posets import (
    Poset,
    PosetMap,
    chain_inclusions,
    chains,
    cone,
    from_relations,
    image_chain,
)
from .simplicial import SMap, SSet, Term, boundary, horn, product, standard

__version__ = "0.1.0"
