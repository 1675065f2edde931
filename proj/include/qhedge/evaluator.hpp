#pragma once

// Brute-force outcome statistics for n parallel games.
//
// The state path prepares u^{(x)n}, applies Bob's unitary to X1...Xn and
// measures every (Yi, Zi) pair with {P0, P1}. It never touches the Q
// operators, so it serves as an oracle for everything built from them.

#include <vector>

#include "qhedge/linops.hpp"
#include "qhedge/strategies.hpp"

namespace qhedge {

struct OutcomeDistribution {
    int n = 1;
    // Indexed by the outcome bitstring, game 0 most significant; 1 = win.
    std::vector<double> probs;

    double lose_all() const { return probs.front(); }
    void validate(double tol = 1e-10) const;
};

OutcomeDistribution outcome_distribution(const DiagonalStrategy& strategy, double alpha,
                                         double theta, int n);

// State-evolution path for an arbitrary unitary on X1...Xn.
OutcomeDistribution outcome_distribution_unitary(const ComplexMatrix& u, double alpha,
                                                 double theta, int n);

// Choi pairing p(a) = <Q_{a_1} (x) ... (x) Q_{a_n}, J> for a channel Choi
// matrix on (Y1...Yn)(X1...Xn).
OutcomeDistribution outcome_distribution_choi(const ComplexMatrix& choi, double alpha,
                                              double theta, int n);

// Probability of at least k wins.
double prob_win_at_least(const OutcomeDistribution& dist, int k);

bool verify_perfect_hedging(const DiagonalStrategy& strategy, double alpha, double theta, int n,
                            double tol = 1e-9);

// Choi matrix of n independent copies of a single-game channel, in channel layout.
ComplexMatrix independent_play_choi(const ComplexMatrix& single_choi, int n);

}  // namespace qhedge
