from src.theta.jacobi import (
    J,
    J_family,
    Jbar,
    Jsingle,
    theta_j,
    theta_product,
    theta_valuation,
    theta_vanishes,
)

__all__ = [
    "J", "J_family", "Jbar", "Jsingle", "theta_j", "theta_product", "theta_valuation", "theta_vanishes",
]
