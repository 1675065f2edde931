#pragma once

// Protocol-error model: Bob may decline to answer and the round is repeated.
// Conditioned on an answer, Bob's optimal success probability for outcome a is
//
//   || (E^+)^{1/2} Q_a (E^+)^{1/2} ||,   E = 1_Y (x) tr_Z(conj(rho)),
//
// and n parallel repetitions obey the binomial law of independent play.

#include "qhedge/linops.hpp"

namespace qhedge {

struct NoAnswerInstance {
    ComplexMatrix rho;  // density operator on (X, Z)
    ComplexMatrix Pa;   // target-outcome measurement operator on (Y, Z)
    int dim_x = 2;
    int dim_y = 2;
    int dim_z = 2;

    void validate() const;
};

struct NoAnswerOperators {
    ComplexMatrix Qa;          // target outcome, on (Y, X)
    ComplexMatrix Qother;      // E - Qa
    ComplexMatrix E;
    ComplexMatrix E_pinv_sqrt;
    ComplexMatrix A;           // (E^+)^{1/2} Qa (E^+)^{1/2}
    ComplexMatrix B;           // (E^+)^{1/2} E (E^+)^{1/2}, the support projector of E
};

// Psi_rho(Z) = tr_Z[conj(rho) (1_X (x) Z^T)] applied blockwise to an operator on (Y, Z).
ComplexMatrix apply_psi_rho(const ComplexMatrix& rho, int dim_x, int dim_z,
                            const ComplexMatrix& op_yz, int dim_y);

NoAnswerOperators build_noanswer_operators(const NoAnswerInstance& inst,
                                           double rank_tol = kDefaultRankTol);

double single_value(const NoAnswerInstance& inst);

// 1 - sum_{t<k} C(n,t) p^t (1-p)^{n-t}
double binomial_win_at_least(double p, int n, int k);

double k_of_n_value(const NoAnswerInstance& inst, int n, int k);

// Norm of the conditioned k-of-n operator, materialised; n <= 3.
double direct_lambda_value(const NoAnswerInstance& inst, int n, int k);

// Diagonal fast path 1 - lambda_E((E^+)^{1/2} Q_{1-a} (E^+)^{1/2}); rho and Pa must be diagonal.
double classical_value(const NoAnswerInstance& inst);

}  // namespace qhedge
