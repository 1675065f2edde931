"""Python bindings for the qhedge library."""

from ._qhedge import (
    Error,
    OutOfHedgingRange,
    SolverError,
    binomial_win_at_least,
    certify,
    lambda_alpha,
    losing_amplitude,
    noanswer_k_of_n,
    noanswer_single_value,
    objective,
    outcome_distribution,
    outcome_distribution_choi,
    phi_border,
    phi_interp,
    recommended_strategy,
    solve,
    thresholds,
)


def lose_all(phases, alpha, theta):
    """Probability that every game is lost under a diagonal strategy."""
    return outcome_distribution(phases, alpha, theta)[0]


__all__ = [
    "Error",
    "OutOfHedgingRange",
    "SolverError",
    "binomial_win_at_least",
    "certify",
    "lambda_alpha",
    "lose_all",
    "losing_amplitude",
    "noanswer_k_of_n",
    "noanswer_single_value",
    "objective",
    "outcome_distribution",
    "outcome_distribution_choi",
    "phi_border",
    "phi_interp",
    "recommended_strategy",
    "solve",
    "thresholds",
]
