from src.series.core import MINUS_ONE, ONE, Q, Series, SignedMonomial, binom2, parity_sign, reach_order
from src.series.products import euler_inv3, euler_product, partition_series, pochhammer

__all__ = [
    "MINUS_ONE", "ONE", "Q", "Series", "SignedMonomial", "binom2", "parity_sign", "reach_order",
    "euler_inv3", "euler_product", "partition_series", "pochhammer",
]
