#pragma once

// Closed-form strategies for Bob when he wants to win at least one of n games.

#include <vector>

#include "qhedge/linops.hpp"

namespace qhedge {

struct ThetaRange {
    double theta1 = 0.0;
    double theta2 = 0.0;

    bool contains(double theta, double tol = 0.0) const {
        return theta >= theta1 - tol && theta <= theta2 + tol;
    }
};

// Diagonal unitary on X1...Xn; phases[r] multiplies |r>, r read big-endian.
struct DiagonalStrategy {
    int n = 1;
    std::vector<Complex> phases;

    static DiagonalStrategy identity(int n);

    void validate(double tol = 1e-12) const;
    ComplexMatrix unitary() const;
    ComplexMatrix choi() const;
};

enum class Border { Phi1 = 1, Phi2 = 2 };

// Perfect-hedging interval [theta1, theta2] for winning at least one of n games.
ThetaRange thresholds(double alpha, int n);

// tan(theta) / sqrt(1/alpha^2 - 1).
double lambda_alpha(double alpha, double theta);

// (-1)^{AND(r) + XOR(r)} for Phi1, (-1)^{OR(r) + XOR(r)} for Phi2.
DiagonalStrategy phi_border(int n, Border which);

struct InterpolationParameters {
    double lambda_alpha = 0.0;
    double s = 1.0;                // beta = s + i sqrt(1 - s^2)
    double leftover_phase = 1.0;   // k value of the odd leftover string per weight: +1 or -1
};

// Solves the affine equation for s at a point of the hedging interval.
InterpolationParameters interpolation_parameters(double alpha, double theta, int n);

// Left-hand side of the perfect-hedging condition
//   lambda^n - 1 + sum_i sum_{|r|=i} Re(k_r) lambda^{n-i}
// for the given s and leftover phase. Zero at the solved s.
double hedging_condition(double lambda, int n, double s, double leftover_phase);

// Interpolated strategy; throws OutOfHedgingRange outside [theta1, theta2].
DiagonalStrategy phi_interp(double alpha, double theta, int n);

// Amplitude of the all-lose component under Phi_which; its square is the
// probability of losing all n games.
double losing_amplitude(double alpha, double theta, int n, Border which);

// Phi1 below the interval, Phi2 above it, phi_interp inside.
DiagonalStrategy recommended_strategy(double alpha, double theta, int n);

}  // namespace qhedge
