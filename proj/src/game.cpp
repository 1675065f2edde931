#include "qhedge/game.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <string>

#include "qhedge/errors.hpp"

namespace qhedge {

void validate_alpha(double alpha) {
    if (!(alpha > 0.0 && alpha <= 1.0)) {
        throw ParameterOutOfRange("alpha must lie in (0, 1], got " + std::to_string(alpha));
    }
}

void validate_theta(double theta) {
    if (!(theta >= 0.0 && theta <= std::numbers::pi / 2)) {
        throw ParameterOutOfRange("theta must lie in [0, pi/2], got " + std::to_string(theta));
    }
}

void validate_repetitions(int n, int k) {
    if (n < 1) throw ParameterOutOfRange("n must be >= 1");
    if (k < 1 || k > n) {
        throw ParameterOutOfRange("k must satisfy 1 <= k <= n, got k=" + std::to_string(k) +
                                  " n=" + std::to_string(n));
    }
}

void GameSpec::validate() const {
    validate_alpha(alpha);
    validate_theta(theta);
    validate_repetitions(n, k);
}

ComplexVector initial_state(double alpha) {
    validate_alpha(alpha);
    ComplexVector u = ComplexVector::Zero(4);
    u(0) = alpha;
    u(3) = std::sqrt(1.0 - alpha * alpha);
    return u;
}

MeasurementPair measurement(double theta) {
    validate_theta(theta);
    ComplexVector v = ComplexVector::Zero(4);
    v(0) = std::cos(theta);
    v(3) = std::sin(theta);
    MeasurementPair m;
    m.P1 = outer(v);
    m.P0 = identity(4) - m.P1;
    return m;
}

ComplexMatrix psi_rho_conjugator(double alpha) {
    validate_alpha(alpha);
    ComplexMatrix m = ComplexMatrix::Zero(2, 2);
    m(0, 0) = alpha;
    m(1, 1) = std::sqrt(1.0 - alpha * alpha);
    return m;
}

QOperators build_q_operators(double alpha, double theta) {
    validate_alpha(alpha);
    validate_theta(theta);
    const double a = alpha;
    const double b = std::sqrt(1.0 - alpha * alpha);
    const double c = std::cos(theta);
    const double s = std::sin(theta);

    // Basis of (Y, X): |00>, |01>, |10>, |11>.
    ComplexVector w = ComplexVector::Zero(4);
    w(0) = a * c;
    w(3) = b * s;

    // The three losing vectors (1 (x) M) applied to the spanning set of P0.
    ComplexVector l1 = ComplexVector::Zero(4);
    l1(0) = a * s;
    l1(3) = -b * c;
    ComplexVector l2 = ComplexVector::Zero(4);
    l2(1) = b * c;
    l2(2) = a * s;
    ComplexVector l3 = ComplexVector::Zero(4);
    l3(1) = -b * s;
    l3(2) = a * c;

    QOperators q;
    q.Q1 = outer(w);
    q.Q0 = outer(l1) + outer(l2) + outer(l3);
    q.E = kron(identity(2), psi_rho_conjugator(alpha) * psi_rho_conjugator(alpha));
    return q;
}

std::vector<int> interleaved_to_blocked_perm(int n) {
    // Interleaved factor 2i is A_i, 2i+1 is B_i; blocked slot j < n is A_j, n + j is B_j.
    std::vector<int> perm(2 * static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        perm[j] = 2 * j;
        perm[n + j] = 2 * j + 1;
    }
    return perm;
}

std::vector<int> blocked_to_interleaved_perm(int n) {
    std::vector<int> perm(2 * static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        perm[2 * j] = j;
        perm[2 * j + 1] = n + j;
    }
    return perm;
}

namespace {

TensorDims interleaved_dims(int n, int dim_a, int dim_b) {
    std::vector<int> f;
    for (int i = 0; i < n; ++i) {
        f.push_back(dim_a);
        f.push_back(dim_b);
    }
    return TensorDims(std::move(f));
}

TensorDims blocked_dims(int n, int dim_a, int dim_b) {
    std::vector<int> f(static_cast<std::size_t>(n), dim_a);
    f.insert(f.end(), static_cast<std::size_t>(n), dim_b);
    return TensorDims(std::move(f));
}

}  // namespace

ComplexMatrix game_major_to_blocked(const ComplexMatrix& m, int n, int dim_y, int dim_x) {
    if (n == 1) return m;
    const auto perm = interleaved_to_blocked_perm(n);
    return permute_subsystems(m, interleaved_dims(n, dim_y, dim_x), perm);
}

ComplexMatrix blocked_to_game_major(const ComplexMatrix& m, int n, int dim_y, int dim_x) {
    if (n == 1) return m;
    const auto perm = blocked_to_interleaved_perm(n);
    return permute_subsystems(m, blocked_dims(n, dim_y, dim_x), perm);
}

ComplexMatrix outcome_operator(const QOperators& q, int n, unsigned outcome_bits, Layout layout) {
    validate_repetitions(n, 1);
    ComplexMatrix acc;
    for (int i = 0; i < n; ++i) {
        const bool win = (outcome_bits >> (n - 1 - i)) & 1u;
        const ComplexMatrix& f = win ? q.Q1 : q.Q0;
        acc = (i == 0) ? f : kron(acc, f);
    }
    return layout == Layout::ChannelBlocked ? game_major_to_blocked(acc, n, q.dim_y, q.dim_x) : acc;
}

ComplexMatrix objective_lose_more_than(const QOperators& q, int n, int k, Layout layout) {
    validate_repetitions(n, k);
    const long d = q.Q0.rows();
    long total = 1;
    for (int i = 0; i < n; ++i) total *= d;
    ComplexMatrix acc = ComplexMatrix::Zero(total, total);
    for (unsigned bits = 0; bits < (1u << n); ++bits) {
        if (std::popcount(bits) >= k) continue;
        acc += outcome_operator(q, n, bits, Layout::GameMajor);
    }
    return layout == Layout::ChannelBlocked ? game_major_to_blocked(acc, n, q.dim_y, q.dim_x) : acc;
}

}  // namespace qhedge
