#include "qhedge/sdp.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "qhedge/errors.hpp"

namespace qhedge {

namespace {

using DenseC = Eigen::MatrixXcd;

void validate_problem(const ComplexMatrix& c, int dim_y, int dim_x) {
    if (dim_y < 1 || dim_x < 1) throw DimensionMismatch("sdp: dimensions must be positive");
    if (c.rows() != c.cols() || c.rows() != static_cast<long>(dim_y) * dim_x) {
        throw DimensionMismatch("sdp: objective has dimension " + std::to_string(c.rows()) +
                                ", expected " + std::to_string(static_cast<long>(dim_y) * dim_x));
    }
    if (!is_hermitian(c)) throw ContractViolation("sdp: objective is not Hermitian");
}

ComplexMatrix lift(const ComplexMatrix& y, int dim_y) { return kron(identity(dim_y), y); }

// Barrier state at one dual iterate: S = C - 1 (x) Y and its Cholesky factor.
struct Slack {
    Eigen::LLT<DenseC> llt;
    double logdet = 0.0;
    bool ok = false;
};

Slack factor_slack(const ComplexMatrix& c, const ComplexMatrix& y, int dim_y) {
    Slack s;
    const DenseC slack = c - lift(y, dim_y);
    s.llt.compute(slack);
    if (s.llt.info() != Eigen::Success) return s;
    const auto& l = s.llt.matrixLLT();
    double ld = 0.0;
    for (Eigen::Index i = 0; i < l.rows(); ++i) {
        const double d = l(i, i).real();
        if (!(d > 0.0) || !std::isfinite(d)) return s;
        ld += 2.0 * std::log(d);
    }
    s.logdet = ld;
    s.ok = true;
    return s;
}

ComplexMatrix slack_inverse(const Slack& s) {
    const Eigen::Index n = s.llt.matrixLLT().rows();
    const DenseC inv = s.llt.solve(DenseC::Identity(n, n));
    return hermitian_part(inv);
}

// Matrix of the map D -> tr_Y(S^{-1} (1 (x) D) S^{-1}) on row-major vec(D).
DenseC barrier_hessian(const ComplexMatrix& s_inv, int dim_y, int dim_x) {
    const long dx = dim_x;
    DenseC h = DenseC::Zero(dx * dx, dx * dx);
    for (int y = 0; y < dim_y; ++y) {
        for (int yp = 0; yp < dim_y; ++yp) {
            const ComplexMatrix p = s_inv.block(y * dx, yp * dx, dx, dx);
            const ComplexMatrix pc = p.conjugate();
            for (long c = 0; c < dx; ++c) {
                for (long a = 0; a < dx; ++a) {
                    const Complex pca = p(c, a);
                    if (pca == Complex(0.0)) continue;
                    h.block(c * dx, a * dx, dx, dx) += pca * pc;
                }
            }
        }
    }
    return h;
}

ComplexMatrix solve_hermitian_system(const DenseC& h, const ComplexMatrix& rhs, long dx) {
    Eigen::Map<const ComplexVector> b(rhs.data(), dx * dx);
    ComplexVector sol;
    Eigen::LLT<DenseC> llt(h);
    if (llt.info() == Eigen::Success) {
        sol = llt.solve(b);
    } else {
        sol = h.partialPivLu().solve(b);
    }
    ComplexMatrix d(dx, dx);
    for (long i = 0; i < dx; ++i) {
        for (long j = 0; j < dx; ++j) d(i, j) = sol(i * dx + j);
    }
    return hermitian_part(d);
}

double barrier_value(const ComplexMatrix& y, const Slack& s, double mu) {
    return y.trace().real() / mu + s.logdet;
}

struct CenteringResult {
    int steps = 0;
    double decrement = 0.0;
    Slack slack;
};

// Damped Newton on tr(Y)/mu + logdet(S) until the squared Newton decrement
// drops below `tol` or the line search stalls.
CenteringResult center(const ComplexMatrix& c, ComplexMatrix& y, int dim_y, int dim_x, double mu,
                       double tol, int step_budget) {
    const long dx = dim_x;
    CenteringResult res;
    res.slack = factor_slack(c, y, dim_y);
    if (!res.slack.ok) throw InternalInconsistency("sdp: iterate left the dual interior");
    while (true) {
        const ComplexMatrix s_inv = slack_inverse(res.slack);
        const ComplexMatrix grad = identity(dx) / mu - trace_out_leading(s_inv, dim_y, dim_x);
        const DenseC h = barrier_hessian(s_inv, dim_y, dim_x);
        const ComplexMatrix step = solve_hermitian_system(h, grad, dx);
        const double dec2 = inner_product(grad, step);
        res.decrement = dec2;
        if (!(dec2 > tol)) break;
        if (res.steps >= step_budget) break;

        const double f0 = barrier_value(y, res.slack, mu);
        double t = 1.0;
        bool accepted = false;
        while (t > 1e-14) {
            ComplexMatrix trial = y + t * step;
            Slack ts = factor_slack(c, trial, dim_y);
            if (ts.ok && barrier_value(trial, ts, mu) >= f0 + 0.25 * t * dec2) {
                y = std::move(trial);
                res.slack = std::move(ts);
                accepted = true;
                break;
            }
            t *= 0.5;
        }
        ++res.steps;
        if (!accepted) break;
    }
    return res;
}

struct PrimalRecovery {
    ComplexMatrix x;
    double value = 0.0;
};

// X = mu S^{-1}, then congruence by 1 (x) R^{-1/2} with R = tr_Y(X) so that the
// partial-trace constraint holds to rounding.
PrimalRecovery recover_primal(const ComplexMatrix& c, const Slack& slack, double mu, int dim_y,
                              int dim_x) {
    const ComplexMatrix x = mu * slack_inverse(slack);
    const ComplexMatrix r = trace_out_leading(x, dim_y, dim_x);
    const ComplexMatrix t = psd_pinv_sqrt(r);
    const ComplexMatrix lt = lift(t, dim_y);
    PrimalRecovery out;
    out.x = hermitian_part(lt * x * lt);
    out.value = inner_product(c, out.x);
    return out;
}

}  // namespace

ComplexMatrix trace_out_leading(const ComplexMatrix& m, int dim_y, int dim_x) {
    if (m.rows() != static_cast<long>(dim_y) * dim_x || m.cols() != m.rows()) {
        throw DimensionMismatch("trace_out_leading: dimension mismatch");
    }
    ComplexMatrix out = ComplexMatrix::Zero(dim_x, dim_x);
    for (int y = 0; y < dim_y; ++y) {
        out += m.block(static_cast<long>(y) * dim_x, static_cast<long>(y) * dim_x, dim_x, dim_x);
    }
    return out;
}

SdpSolution solve_min_channel(const ComplexMatrix& c, int dim_y, int dim_x,
                              const SdpOptions& options) {
    validate_problem(c, dim_y, dim_x);
    const double dim = static_cast<double>(c.rows());

    // Strictly feasible start: S_0 = C - (lambda_min - 1) 1 >= 1.
    ComplexMatrix y = (min_eigenvalue(c) - 1.0) * identity(dim_x);
    double mu = options.initial_mu;
    int steps = 0;
    double last_gap = std::numeric_limits<double>::infinity();

    while (true) {
        const int budget = options.max_newton_steps - steps;
        CenteringResult cr = center(c, y, dim_y, dim_x, mu, 1e-6, budget);
        steps += cr.steps;

        const PrimalRecovery primal = recover_primal(c, cr.slack, mu, dim_y, dim_x);
        const double dual = y.trace().real();
        last_gap = primal.value - dual;

        if (mu * dim <= options.gap_tol / 2 && last_gap <= options.gap_tol) {
            SdpSolution sol;
            sol.value = primal.value;
            sol.dual_value = dual;
            sol.dual_Y = y;
            sol.primal_X = primal.x;
            sol.gap = std::max(0.0, last_gap);
            sol.iterations = steps;
            return sol;
        }
        if (steps >= options.max_newton_steps) {
            throw SolverError("sdp: no convergence within " +
                                  std::to_string(options.max_newton_steps) +
                                  " Newton steps (last gap " + std::to_string(last_gap) + ")",
                              last_gap, steps);
        }
        if (mu * dim < options.gap_tol * 1e-6) {
            throw SolverError("sdp: barrier parameter exhausted with gap " +
                                  std::to_string(last_gap),
                              last_gap, steps);
        }
        mu *= options.mu_shrink;
    }
}

SdpSolution solve_min_channel(const ComplexMatrix& c, int dim_y, int dim_x, double tol) {
    SdpOptions o;
    o.gap_tol = tol;
    return solve_min_channel(c, dim_y, dim_x, o);
}

CentralPoint central_point(const ComplexMatrix& c, int dim_y, int dim_x, double mu,
                           const SdpOptions& options) {
    validate_problem(c, dim_y, dim_x);
    if (!(mu > 0.0)) throw ParameterOutOfRange("central_point: mu must be positive");
    ComplexMatrix y = (min_eigenvalue(c) - 1.0) * identity(dim_x);
    CentralPoint cp;
    cp.mu = mu;
    // Walk down from the start parameter so each centring starts close by.
    double m = std::max(mu, options.initial_mu);
    while (true) {
        const bool last = m <= mu;
        const double target = last ? mu : m;
        CenteringResult cr = center(c, y, dim_y, dim_x, target, last ? 1e-24 : 1e-6,
                                    options.max_newton_steps - cp.newton_steps);
        cp.newton_steps += cr.steps;
        if (last) {
            cp.Y = y;
            cp.X = hermitian_part(mu * slack_inverse(cr.slack));
            return cp;
        }
        if (cp.newton_steps >= options.max_newton_steps) {
            throw SolverError("central_point: Newton budget exhausted", NAN, cp.newton_steps);
        }
        m = std::max(mu, m * options.mu_shrink);
    }
}

DualCheck check_dual_feasible(const ComplexMatrix& y, const ComplexMatrix& c, int dim_y,
                              double tol) {
    if (y.rows() * dim_y != c.rows()) throw DimensionMismatch("check_dual_feasible: dimensions");
    DualCheck out;
    out.min_eig = min_eigenvalue(hermitian_part(c - lift(y, dim_y)));
    out.feasible = out.min_eig >= -tol;
    return out;
}

PrimalCheck check_primal_feasible(const ComplexMatrix& x, int dim_y, int dim_x, double tol) {
    PrimalCheck out;
    const ComplexMatrix r = trace_out_leading(x, dim_y, dim_x) - identity(dim_x);
    out.trace_residual = r.cwiseAbs().maxCoeff();
    out.min_eig = min_eigenvalue(hermitian_part(x));
    out.feasible = out.trace_residual <= tol && out.min_eig >= -tol;
    return out;
}

OptimalityCertificate certify_strategy_optimal(const ComplexMatrix& choi_x, const ComplexMatrix& c,
                                               int dim_y, int dim_x, double tol) {
    validate_problem(c, dim_y, dim_x);
    if (choi_x.rows() != c.rows() || choi_x.cols() != c.cols()) {
        throw DimensionMismatch("certify_strategy_optimal: Choi matrix and objective differ in size");
    }
    const ComplexMatrix r = trace_out_leading(choi_x, dim_y, dim_x) - identity(dim_x);
    if (r.cwiseAbs().maxCoeff() > std::max(tol, 1e-9) || !is_hermitian(choi_x, 1e-9)) {
        throw ContractViolation("certify_strategy_optimal: input is not the Choi matrix of a channel");
    }
    OptimalityCertificate cert;
    cert.dual_Y = hermitian_part(trace_out_leading(c * choi_x, dim_y, dim_x));
    cert.primal_value = inner_product(c, choi_x);
    cert.dual_value = cert.dual_Y.trace().real();
    const DualCheck dual = check_dual_feasible(cert.dual_Y, c, dim_y, tol);
    cert.min_eig = dual.min_eig;
    cert.optimal = dual.feasible && std::abs(cert.dual_value - cert.primal_value) <= tol;
    return cert;
}

}  // namespace qhedge
