#pragma once

// Minimisation of <C, X> over Choi matrices of channels:
//
//   primal:  min <C, X>   s.t. tr_Y(X) = 1_X,  X >= 0
//   dual:    max tr(Y)    s.t. 1_Y (x) Y <= C, Y Hermitian
//
// C acts on (Y, X) with Y the leading factor. The solver follows the central
// path of the dual log-det barrier
//
//   f_mu(Y) = tr(Y) + mu * logdet(C - 1_Y (x) Y)
//
// with damped Newton steps taken directly over Hermitian Y. At a central point
// X = mu * (C - 1 (x) Y)^{-1} is primal feasible and the duality gap is
// mu * dim(C), so every returned value comes with a matching primal/dual pair.

#include <optional>

#include "qhedge/linops.hpp"

namespace qhedge {

struct SdpOptions {
    double gap_tol = 1e-7;
    double feas_tol = 1e-9;
    int max_newton_steps = 200;
    double mu_shrink = 0.2;
    double initial_mu = 1.0;
};

struct SdpSolution {
    double value = 0.0;        // <C, X> of the returned primal
    double dual_value = 0.0;   // tr(Y) of the returned dual
    ComplexMatrix dual_Y;
    std::optional<ComplexMatrix> primal_X;
    double gap = 0.0;
    int iterations = 0;        // Newton steps
};

SdpSolution solve_min_channel(const ComplexMatrix& c, int dim_y, int dim_x,
                              const SdpOptions& options = {});

// Convenience overload: tol is the duality-gap tolerance.
SdpSolution solve_min_channel(const ComplexMatrix& c, int dim_y, int dim_x, double tol);

struct DualCheck {
    bool feasible = false;
    double min_eig = 0.0;  // smallest eigenvalue of C - 1 (x) Y
};

DualCheck check_dual_feasible(const ComplexMatrix& y, const ComplexMatrix& c, int dim_y,
                              double tol = 1e-9);

struct PrimalCheck {
    bool feasible = false;
    double trace_residual = 0.0;  // max |tr_Y(X) - 1| entry
    double min_eig = 0.0;
};

PrimalCheck check_primal_feasible(const ComplexMatrix& x, int dim_y, int dim_x,
                                  double tol = 1e-9);

struct OptimalityCertificate {
    bool optimal = false;
    double primal_value = 0.0;
    double dual_value = 0.0;
    double min_eig = 0.0;
    ComplexMatrix dual_Y;  // tr_Y(C X), Hermitian part
};

// Builds the dual candidate tr_Y(C X) from a channel's Choi matrix; X is
// optimal when that candidate is dual feasible.
OptimalityCertificate certify_strategy_optimal(const ComplexMatrix& choi_x, const ComplexMatrix& c,
                                               int dim_y, int dim_x, double tol = 1e-9);

// A point on the central path, centred to high accuracy.
struct CentralPoint {
    double mu = 0.0;
    ComplexMatrix Y;
    ComplexMatrix X;  // mu * (C - 1 (x) Y)^{-1}, uncorrected
    int newton_steps = 0;
};

CentralPoint central_point(const ComplexMatrix& c, int dim_y, int dim_x, double mu,
                           const SdpOptions& options = {});

// tr_Y of an operator on (Y, X).
ComplexMatrix trace_out_leading(const ComplexMatrix& m, int dim_y, int dim_x);

}  // namespace qhedge
