#include "qhedge/strategies.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "qhedge/errors.hpp"
#include "qhedge/game.hpp"

namespace qhedge {

namespace {

constexpr double kRangeTol = 1e-12;

double binomial(int n, int k) {
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

// sqrt(1/alpha^2 - 1), the tangent at which u and v have equal Schmidt ratio.
double schmidt_ratio(double alpha) { return std::sqrt(1.0 / (alpha * alpha) - 1.0); }

}  // namespace

DiagonalStrategy DiagonalStrategy::identity(int n) {
    if (n < 1) throw ParameterOutOfRange("DiagonalStrategy: n must be >= 1");
    DiagonalStrategy d;
    d.n = n;
    d.phases.assign(std::size_t{1} << n, Complex(1.0, 0.0));
    return d;
}

void DiagonalStrategy::validate(double tol) const {
    if (n < 1) throw ParameterOutOfRange("DiagonalStrategy: n must be >= 1");
    if (phases.size() != (std::size_t{1} << n)) {
        throw DimensionMismatch("DiagonalStrategy: expected 2^n phases, got " +
                                std::to_string(phases.size()));
    }
    for (const Complex& p : phases) {
        if (!(std::abs(std::abs(p) - 1.0) <= tol)) {
            throw ContractViolation("DiagonalStrategy: phase without unit modulus");
        }
    }
}

ComplexMatrix DiagonalStrategy::unitary() const {
    const long d = static_cast<long>(phases.size());
    ComplexMatrix u = ComplexMatrix::Zero(d, d);
    for (long r = 0; r < d; ++r) u(r, r) = phases[r];
    return u;
}

ComplexMatrix DiagonalStrategy::choi() const {
    // J = vec(U) vec(U)^*, and vec of a diagonal U only touches |r r>.
    const long d = static_cast<long>(phases.size());
    ComplexVector v = ComplexVector::Zero(d * d);
    for (long r = 0; r < d; ++r) v(r * d + r) = phases[r];
    return outer(v);
}

ThetaRange thresholds(double alpha, int n) {
    validate_alpha(alpha);
    if (n < 1) throw ParameterOutOfRange("thresholds: n must be >= 1");
    const double ratio = schmidt_ratio(alpha);
    const double q = std::exp2(1.0 / n) - 1.0;
    return ThetaRange{std::atan(ratio * q), std::atan(ratio / q)};
}

double lambda_alpha(double alpha, double theta) {
    validate_alpha(alpha);
    return std::tan(theta) / schmidt_ratio(alpha);
}

DiagonalStrategy phi_border(int n, Border which) {
    DiagonalStrategy d = DiagonalStrategy::identity(n);
    const unsigned all = (1u << n) - 1u;
    for (unsigned r = 0; r <= all; ++r) {
        const int x = std::popcount(r) & 1;
        const int gate = which == Border::Phi1 ? (r == all ? 1 : 0) : (r != 0 ? 1 : 0);
        d.phases[r] = ((gate + x) % 2 == 0) ? 1.0 : -1.0;
    }
    return d;
}

double hedging_condition(double lambda, int n, double s, double leftover_phase) {
    double acc = std::pow(lambda, n) - 1.0;
    for (int i = 1; i < n; ++i) {
        const double c = binomial(n, i);
        const double pairs = std::floor(c / 2.0);
        const double odd = (static_cast<long>(c) % 2 == 1) ? leftover_phase : 0.0;
        acc += (2.0 * pairs * s + odd) * std::pow(lambda, n - i);
    }
    return acc;
}

InterpolationParameters interpolation_parameters(double alpha, double theta, int n) {
    validate_alpha(alpha);
    validate_theta(theta);
    if (n < 1) throw ParameterOutOfRange("phi_interp: n must be >= 1");
    const ThetaRange range = thresholds(alpha, n);
    if (!range.contains(theta, kRangeTol)) {
        throw OutOfHedgingRange("theta = " + std::to_string(theta) + " lies outside [" +
                                std::to_string(range.theta1) + ", " +
                                std::to_string(range.theta2) + "]");
    }
    InterpolationParameters p;
    if (alpha == 1.0) {
        // Product state and theta = 0: every diagonal strategy wins; lambda is 0/0.
        p.lambda_alpha = 0.0;
        p.s = 1.0;
        p.leftover_phase = -1.0;
        return p;
    }
    const double lambda = lambda_alpha(alpha, theta);
    p.lambda_alpha = lambda;
    // lambda = 1 is the tie tan(theta) = ratio; absorb the last-ulp noise into the >= branch.
    p.leftover_phase = (lambda >= 1.0 - kRangeTol) ? -1.0 : 1.0;

    double numer = 1.0 - std::pow(lambda, n);
    double denom = 0.0;
    for (int i = 1; i < n; ++i) {
        const double c = binomial(n, i);
        const double pairs = std::floor(c / 2.0);
        const double odd = (static_cast<long>(c) % 2 == 1) ? p.leftover_phase : 0.0;
        numer -= odd * std::pow(lambda, n - i);
        denom += 2.0 * pairs * std::pow(lambda, n - i);
    }
    if (denom == 0.0) {
        // n = 1 has no intermediate weights, so beta never appears.
        p.s = 1.0;
        return p;
    }
    double s = numer / denom;
    if (std::abs(s) > 1.0 + 1e-12) {
        throw InternalInconsistency("phi_interp: solved s = " + std::to_string(s) +
                                    " is outside [-1, 1]");
    }
    p.s = std::clamp(s, -1.0, 1.0);
    return p;
}

DiagonalStrategy phi_interp(double alpha, double theta, int n) {
    const InterpolationParameters p = interpolation_parameters(alpha, theta, n);
    if (alpha == 1.0) return phi_border(n, Border::Phi1);

    const Complex beta(p.s, std::sqrt(std::max(0.0, 1.0 - p.s * p.s)));
    DiagonalStrategy d = DiagonalStrategy::identity(n);
    const unsigned all = (1u << n) - 1u;
    d.phases[0] = (n % 2 == 0) ? 1.0 : -1.0;
    d.phases[all] = -1.0;
    for (int i = 1; i < n; ++i) {
        const long count = static_cast<long>(binomial(n, i));
        const long pairs = count / 2;
        const double sign = ((n + i) % 2 == 0) ? 1.0 : -1.0;
        long seen = 0;
        // Ascending numeric order is lexicographic order of the big-endian bitstrings.
        for (unsigned r = 1; r < all; ++r) {
            if (std::popcount(r) != i) continue;
            Complex k;
            if (seen < pairs) {
                k = beta;
            } else if (seen < 2 * pairs) {
                k = std::conj(beta);
            } else {
                k = p.leftover_phase;
            }
            d.phases[r] = sign * k;
            ++seen;
        }
    }
    return d;
}

double losing_amplitude(double alpha, double theta, int n, Border which) {
    validate_alpha(alpha);
    validate_theta(theta);
    if (n < 1) throw ParameterOutOfRange("losing_amplitude: n must be >= 1");
    const double a = alpha * std::sin(theta);
    const double b = std::sqrt(1.0 - alpha * alpha) * std::cos(theta);
    const double both = std::pow(a + b, n);
    return which == Border::Phi1 ? both - 2.0 * std::pow(b, n) : both - 2.0 * std::pow(a, n);
}

DiagonalStrategy recommended_strategy(double alpha, double theta, int n) {
    const ThetaRange range = thresholds(alpha, n);
    validate_theta(theta);
    if (theta < range.theta1 - kRangeTol) return phi_border(n, Border::Phi1);
    if (theta > range.theta2 + kRangeTol) return phi_border(n, Border::Phi2);
    return phi_interp(alpha, theta, n);
}

}  // namespace qhedge
