#include "qhedge/evaluator.hpp"

#include <bit>
#include <cmath>
#include <numeric>
#include <string>

#include "qhedge/errors.hpp"
#include "qhedge/game.hpp"

namespace qhedge {

namespace {

long pow_long(long base, int e) {
    long r = 1;
    for (int i = 0; i < e; ++i) r *= base;
    return r;
}

// Applies a 4x4 operator to slot `slot` of an n-slot register of local dimension 4.
ComplexVector apply_to_slot(const ComplexMatrix& op, const ComplexVector& psi, int slot, int n) {
    const long inner = pow_long(4, n - 1 - slot);
    const long outer_count = pow_long(4, slot);
    ComplexVector out = ComplexVector::Zero(psi.size());
    for (long o = 0; o < outer_count; ++o) {
        for (long i = 0; i < inner; ++i) {
            const long base = o * 4 * inner + i;
            for (int r = 0; r < 4; ++r) {
                Complex acc = 0.0;
                for (int c = 0; c < 4; ++c) acc += op(r, c) * psi(base + c * inner);
                out(base + r * inner) = acc;
            }
        }
    }
    return out;
}

}  // namespace

void OutcomeDistribution::validate(double tol) const {
    if (probs.size() != (std::size_t{1} << n)) {
        throw DimensionMismatch("OutcomeDistribution: expected 2^n probabilities");
    }
    double total = 0.0;
    for (double p : probs) {
        if (p < -1e-12) throw ContractViolation("OutcomeDistribution: negative probability");
        total += p;
    }
    if (std::abs(total - 1.0) > tol) {
        throw ContractViolation("OutcomeDistribution: probabilities sum to " + std::to_string(total));
    }
}

OutcomeDistribution outcome_distribution_unitary(const ComplexMatrix& u, double alpha,
                                                 double theta, int n) {
    validate_repetitions(n, 1);
    const long dim_x = pow_long(2, n);
    if (u.rows() != dim_x || u.cols() != dim_x) {
        throw DimensionMismatch("outcome_distribution: strategy acts on dimension " +
                                std::to_string(u.rows()) + ", expected 2^n = " +
                                std::to_string(dim_x));
    }
    const ComplexVector single = initial_state(alpha);
    const MeasurementPair meas = measurement(theta);

    // u^{(x)n} in the interleaved order (X1 Z1)(X2 Z2)...
    ComplexVector psi = single;
    for (int i = 1; i < n; ++i) psi = kron(psi, single);

    // Blocked (X1..Xn)(Z1..Zn): Bob's unitary acts on the leading block.
    const TensorDims qubits = TensorDims::uniform(2, 2 * n);
    const auto to_blocked = interleaved_to_blocked_perm(n);
    const auto to_interleaved = blocked_to_interleaved_perm(n);
    ComplexVector blocked = permute_subsystems(psi, qubits, to_blocked);
    const long dim_z = dim_x;
    ComplexVector evolved(blocked.size());
    for (long z = 0; z < dim_z; ++z) {
        ComplexVector column(dim_x);
        for (long x = 0; x < dim_x; ++x) column(x) = blocked(x * dim_z + z);
        const ComplexVector moved = u * column;
        for (long y = 0; y < dim_x; ++y) evolved(y * dim_z + z) = moved(y);
    }
    const ComplexVector returned = permute_subsystems(evolved, qubits, to_interleaved);

    OutcomeDistribution dist;
    dist.n = n;
    dist.probs.assign(std::size_t{1} << n, 0.0);
    for (unsigned bits = 0; bits < (1u << n); ++bits) {
        ComplexVector phi = returned;
        for (int i = 0; i < n; ++i) {
            const bool win = (bits >> (n - 1 - i)) & 1u;
            phi = apply_to_slot(win ? meas.P1 : meas.P0, phi, i, n);
        }
        dist.probs[bits] = phi.squaredNorm();
    }
    return dist;
}

OutcomeDistribution outcome_distribution(const DiagonalStrategy& strategy, double alpha,
                                         double theta, int n) {
    strategy.validate();
    if (strategy.n != n) throw DimensionMismatch("outcome_distribution: strategy built for other n");
    return outcome_distribution_unitary(strategy.unitary(), alpha, theta, n);
}

OutcomeDistribution outcome_distribution_choi(const ComplexMatrix& choi, double alpha,
                                              double theta, int n) {
    validate_repetitions(n, 1);
    const long dim = pow_long(4, n);
    if (choi.rows() != dim || choi.cols() != dim) {
        throw DimensionMismatch("outcome_distribution_choi: Choi matrix has wrong dimension");
    }
    const QOperators q = build_q_operators(alpha, theta);
    OutcomeDistribution dist;
    dist.n = n;
    dist.probs.assign(std::size_t{1} << n, 0.0);
    for (unsigned bits = 0; bits < (1u << n); ++bits) {
        dist.probs[bits] = inner_product(outcome_operator(q, n, bits, Layout::ChannelBlocked), choi);
    }
    return dist;
}

double prob_win_at_least(const OutcomeDistribution& dist, int k) {
    validate_repetitions(dist.n, k);
    double acc = 0.0;
    for (unsigned bits = 0; bits < dist.probs.size(); ++bits) {
        if (std::popcount(bits) >= k) acc += dist.probs[bits];
    }
    return acc;
}

bool verify_perfect_hedging(const DiagonalStrategy& strategy, double alpha, double theta, int n,
                            double tol) {
    return outcome_distribution(strategy, alpha, theta, n).lose_all() <= tol;
}

ComplexMatrix independent_play_choi(const ComplexMatrix& single_choi, int n) {
    validate_repetitions(n, 1);
    const long d = static_cast<long>(std::lround(std::sqrt(static_cast<double>(single_choi.rows()))));
    return game_major_to_blocked(kron_power(single_choi, n), n, static_cast<int>(d),
                                 static_cast<int>(d));
}

}  // namespace qhedge
