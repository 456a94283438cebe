from .chen import ChainPair, chen_chain_pair
from .fan import (
    FanLabeling,
    check_order_preserving,
    count_negative_alternating_chains,
    first_sign_size,
    random_order_preserving,
    random_valid_labeling,
    validate_labeling,
)

__all__ = [
    "ChainPair",
    "FanLabeling",
    "check_order_preserving",
    "chen_chain_pair",
    "count_negative_alternating_chains",
    "first_sign_size",
    "random_order_preserving",
    "random_valid_labeling",
    "validate_labeling",
]
