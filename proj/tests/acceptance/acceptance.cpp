// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fail.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "qhedge/evaluator.hpp"
#include "qhedge/game.hpp"
#include "qhedge/noanswer.hpp"
#include "qhedge/sdp.hpp"
#include "qhedge/strategies.hpp"
#include "support.hpp"

using namespace qhedge;

namespace {

const double kAlphaMax = 1.0 / std::sqrt(2.0);
const double kAlphas[] = {0.4, kAlphaMax, 0.9};

struct Criterion {
    bool ok = true;
    double worst = 0.0;  // largest observed error, for the report line
    std::string first_failure;

    void check(bool cond, const std::string& what) {
        if (!cond && ok) first_failure = what;
        ok = ok && cond;
    }
    void within(double err, double tol, const std::string& what) {
        worst = std::max(worst, err);
        check(err <= tol, what + " (error " + std::to_string(err) + ")");
    }
};

// Every SDP solve goes through here so the solver-integrity criterion sees all of them.
struct SolveLog {
    Criterion integrity;
    double slowest[4] = {0, 0, 0, 0};
    int solves = 0;
};
SolveLog g_log;

std::string describe(double alpha, double theta, int n) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "alpha=%.6g theta=%.6g n=%d", alpha, theta, n);
    return buf;
}

struct Solved {
    SdpSolution sol;
    ComplexMatrix c;
};

Solved solve(double alpha, double theta, int n, int k = 1) {
    const ComplexMatrix c = objective_lose_more_than(build_q_operators(alpha, theta), n, k);
    const int d = 1 << n;
    const auto t0 = std::chrono::steady_clock::now();
    SdpSolution sol = solve_min_channel(c, d, d, SdpOptions{});
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    g_log.slowest[n] = std::max(g_log.slowest[n], secs);
    ++g_log.solves;

    const std::string where = describe(alpha, theta, n);
    g_log.integrity.within(std::abs(sol.gap), 1e-7, "gap at " + where);
    g_log.integrity.check(check_dual_feasible(sol.dual_Y, c, d, 1e-9).feasible, "dual infeasible at " + where);
    g_log.integrity.check(sol.primal_X.has_value() &&
                              check_primal_feasible(*sol.primal_X, d, d, 1e-9).feasible,
                          "primal infeasible at " + where);
    return {std::move(sol), c};
}

double lose_all(const DiagonalStrategy& s, double alpha, double theta, int n) {
    return 1.0 - prob_win_at_least(outcome_distribution(s, alpha, theta, n), 1);
}

int g_failures = 0;

void report(const char* id, const char* title, const Criterion& c) {
    if (c.ok) {
        std::printf("PASS %s %s (max error %.3g)\n", id, title, c.worst);
    } else {
        std::printf("FAIL %s %s: %s\n", id, title, c.first_failure.c_str());
        ++g_failures;
    }
    std::fflush(stdout);
}

template <typename F>
void run(const char* id, const char* title, F body) {
    Criterion c;
    try {
        body(c);
    } catch (const std::exception& e) {
        c.check(false, std::string("exception: ") + e.what());
    }
    report(id, title, c);
}

NoAnswerInstance random_qubit_instance(qtest::Rng& rng) {
    NoAnswerInstance inst;
    inst.rho = rng.density(4, rng.integer(1, 4));
    inst.Pa = rng.effect(4);
    return inst;
}

NoAnswerInstance random_diagonal_instance(qtest::Rng& rng) {
    NoAnswerInstance inst;
    inst.rho = ComplexMatrix::Zero(4, 4);
    inst.Pa = ComplexMatrix::Zero(4, 4);
    for (int i = 0; i < 4; ++i) {
        inst.rho(i, i) = rng.uniform() < 0.25 ? 0.0 : rng.uniform();
        inst.Pa(i, i) = rng.uniform() < 0.2 ? 1.0 : rng.uniform();
    }
    inst.rho(0, 0) += 0.1;
    inst.Pa(0, 0) = std::max(inst.Pa(0, 0).real(), 0.05);
    inst.rho /= inst.rho.trace().real();
    return inst;
}

ComplexVector schmidt_vector(const ComplexMatrix& left, const ComplexMatrix& right, double p0) {
    return std::sqrt(p0) * kron(ComplexVector(left.col(0)), ComplexVector(right.col(0))) +
           std::sqrt(1 - p0) * kron(ComplexVector(left.col(1)), ComplexVector(right.col(1)));
}

}  // namespace

int main() {
    run("AC1", "thresholds at alpha=1/sqrt(2), n=2", [](Criterion& c) {
        const ThetaRange r = thresholds(kAlphaMax, 2);
        c.within(std::abs(r.theta1 - M_PI / 8), 1e-12, "theta1");
        c.within(std::abs(r.theta2 - 3 * M_PI / 8), 1e-12, "theta2");
    });

    run("AC2", "perfect hedging at theta=pi/8", [](Criterion& c) {
        const Solved s = solve(kAlphaMax, M_PI / 8, 2, 1);
        c.within(std::abs(s.sol.value), 1e-6, "SDP value");
        c.within(lose_all(phi_border(2, Border::Phi1), kAlphaMax, M_PI / 8, 2), 1e-12,
                 "lose-both under Phi1");
    });

    run("AC3", "interior hedging, n=1..3, 21 points per range", [](Criterion& c) {
        for (int n = 1; n <= 3; ++n) {
            for (double alpha : kAlphas) {
                const ThetaRange r = thresholds(alpha, n);
                for (int i = 0; i <= 20; ++i) {
                    const double theta = (i == 20) ? r.theta2 : r.theta1 + (r.theta2 - r.theta1) * i / 20.0;
                    const std::string where = describe(alpha, theta, n);
                    c.within(lose_all(phi_interp(alpha, theta, n), alpha, theta, n), 1e-9, "lose-all at " + where);
                    c.within(std::max(0.0, solve(alpha, theta, n).sol.value), 1e-6, "SDP value at " + where);
                }
            }
        }
    });

    run("AC4", "optimality outside the hedging range", [](Criterion& c) {
        const int n = 2;
        for (double alpha : kAlphas) {
            const ThetaRange r = thresholds(alpha, n);
            std::vector<double> grid;
            for (int i = 0; i < 5; ++i) grid.push_back(r.theta1 * i / 5.0);
            for (int i = 1; i <= 5; ++i) grid.push_back(i == 5 ? M_PI / 2 : r.theta2 + (M_PI / 2 - r.theta2) * i / 5.0);
            for (double theta : grid) {
                const Border which = theta < r.theta1 ? Border::Phi1 : Border::Phi2;
                const std::string where = describe(alpha, theta, n);
                const Solved s = solve(alpha, theta, n);
                const double amp = losing_amplitude(alpha, theta, n, which);
                c.within(std::abs(s.sol.value - amp * amp), 1e-6, "value vs amplitude at " + where);
                const OptimalityCertificate cert = certify_strategy_optimal(phi_border(n, which).choi(), s.c, 4, 4);
                c.check(cert.optimal, "certificate rejected at " + where);
            }
        }
        for (int m = 1; m <= 3; ++m) {
            for (double alpha : kAlphas) {
                c.within(std::abs(solve(alpha, 0.0, m).sol.value - std::pow(1 - alpha * alpha, m)), 1e-6,
                         "theta=0 endpoint at " + describe(alpha, 0.0, m));
                c.within(std::abs(solve(alpha, M_PI / 2, m).sol.value - std::pow(alpha, 2 * m)), 1e-6,
                         "theta=pi/2 endpoint at " + describe(alpha, M_PI / 2, m));
            }
        }
    });

    run("AC5", "solver integrity on every solve above", [](Criterion& c) {
        // n=3 k=2 adds a mixed objective to the pool
        solve(0.6, 0.5, 3, 2);
        c = g_log.integrity;
        c.check(g_log.slowest[2] < 5.0, "n=2 solve took " + std::to_string(g_log.slowest[2]) + " s");
        c.check(g_log.slowest[3] < 60.0, "n=3 solve took " + std::to_string(g_log.slowest[3]) + " s");
        std::printf("     %d solves, slowest n=2 %.2f s, n=3 %.2f s\n", g_log.solves, g_log.slowest[2],
                    g_log.slowest[3]);
    });

    run("AC6", "Choi pairing matches state evolution", [](Criterion& c) {
        qtest::Rng rng(6006);
        for (int n = 1; n <= 3; ++n) {
            for (int trial = 0; trial < 50; ++trial) {
                const double alpha = rng.uniform(0.05, 1.0);
                const double theta = rng.uniform(0.0, M_PI / 2);
                DiagonalStrategy d = DiagonalStrategy::identity(n);
                d.phases = rng.phases(1 << n);
                const OutcomeDistribution ds = outcome_distribution(d, alpha, theta, n);
                const OutcomeDistribution dc = outcome_distribution_choi(d.choi(), alpha, theta, n);
                for (std::size_t a = 0; a < ds.probs.size(); ++a) {
                    c.within(std::abs(ds.probs[a] - dc.probs[a]), 1e-9, "outcome mismatch at " + describe(alpha, theta, n));
                }
            }
        }
    });

    run("AC7", "no hedging with a no-answer option", [](Criterion& c) {
        qtest::Rng rng(7007);
        for (int trial = 0; trial < 100; ++trial) {
            const NoAnswerInstance inst = random_qubit_instance(rng);
            const double p = single_value(inst);
            c.within(std::abs(direct_lambda_value(inst, 2, 1) - (1 - (1 - p) * (1 - p))), 1e-9,
                     "random instance " + std::to_string(trial));
        }
        for (int trial = 0; trial < 20; ++trial) {
            ComplexVector phi = ComplexVector::Zero(4);
            phi(0) = phi(3) = 1.0 / std::sqrt(2.0);
            NoAnswerInstance inst;
            inst.rho = outer(phi);
            inst.Pa = outer(rng.gaussian_vector(4).normalized());
            c.within(std::abs(single_value(inst) - 1.0), 1e-10, "maximally entangled " + std::to_string(trial));
        }
        NoAnswerInstance coin;
        coin.rho = kron(outer(basis_ket(2, 0)), identity(2) / 2.0);
        coin.Pa = outer(basis_ket(4, 0)) + outer(basis_ket(4, 3));
        c.within(std::abs(single_value(coin) - 0.5), 1e-12, "coin single value");
        c.within(std::abs(k_of_n_value(coin, 2, 1) - 0.75), 1e-12, "coin 1-of-2");
        c.within(std::abs(direct_lambda_value(coin, 2, 1) - 0.75), 1e-12, "coin 1-of-2 direct");
    });

    run("AC8", "classical instances do not hedge", [](Criterion& c) {
        qtest::Rng rng(8008);
        for (int trial = 0; trial < 50; ++trial) {
            const NoAnswerInstance inst = random_diagonal_instance(rng);
            const double p = single_value(inst);
            const std::string where = "diagonal instance " + std::to_string(trial);
            c.within(std::abs(classical_value(inst) - p), 1e-12, where);
            c.within(std::abs(direct_lambda_value(inst, 2, 2) - p * p), 1e-9, where + " both");
            c.within(std::abs(direct_lambda_value(inst, 2, 1) - (1 - (1 - p) * (1 - p))), 1e-9, where + " one");
        }
    });

    run("AC9", "range width peaks nearest alpha=1/sqrt(2)", [](Criterion& c) {
        // alpha_i = i/1000, i = 1..999
        const int nearest = static_cast<int>(std::lround(kAlphaMax * 1000));
        for (int n = 1; n <= 5; ++n) {
            double best = -1.0;
            std::vector<double> widths(1000, 0.0);
            for (int i = 1; i <= 999; ++i) {
                const ThetaRange r = thresholds(i / 1000.0, n);
                widths[i] = r.theta2 - r.theta1;
                best = std::max(best, widths[i]);
            }
            // n=1 has zero width everywhere; the nearest point still attains the maximum
            c.check(widths[nearest] == best, "n=" + std::to_string(n) + ": width at the nearest point is not maximal");
            if (n > 1) {
                const auto arg = std::max_element(widths.begin() + 1, widths.end()) - widths.begin();
                c.check(arg == nearest, "n=" + std::to_string(n) + ": argmax at i=" + std::to_string(arg));
            }
        }
    });

    run("AC10", "Schmidt coefficients do not affect the value", [](Criterion& c) {
        qtest::Rng rng(1010);
        for (int trial = 0; trial < 20; ++trial) {
            const ComplexMatrix bx = rng.unitary(2), bz = rng.unitary(2);
            NoAnswerInstance inst;
            inst.Pa = outer(schmidt_vector(rng.unitary(2), rng.unitary(2), rng.uniform(0.05, 0.95)));
            inst.rho = outer(schmidt_vector(bx, bz, rng.uniform(0.05, 0.95)));
            const double first = single_value(inst);
            inst.rho = outer(schmidt_vector(bx, bz, rng.uniform(0.05, 0.95)));
            c.within(std::abs(single_value(inst) - first), 1e-9, "instance " + std::to_string(trial));
        }
    });

    std::printf("%s: %d of 10 criteria failed\n", g_failures ? "FAIL" : "PASS", g_failures);
    return g_failures ? 1 : 0;
}
