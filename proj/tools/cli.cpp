#include "cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include "qhedge/errors.hpp"
#include "qhedge/evaluator.hpp"
#include "qhedge/game.hpp"
#include "qhedge/json_io.hpp"
#include "qhedge/noanswer.hpp"
#include "qhedge/sdp.hpp"
#include "qhedge/strategies.hpp"

namespace qhedge::cli {

namespace {

constexpr int kMaxValueGames = 4;

struct Settings {
    std::string alpha;
    std::string theta;
    int n = 1;
    int k = 1;
    double tol = 0.0;
    std::string out;
    std::string job;
    std::string grid = "0:pi/2:9";
    std::string strategy;
    bool degrees = false;
    bool full = false;
    int max_steps = SdpOptions{}.max_newton_steps;
};

// Which flags were given explicitly, so job-file values only fill the gaps.
struct Given {
    CLI::Option* alpha = nullptr;
    CLI::Option* theta = nullptr;
    CLI::Option* n = nullptr;
    CLI::Option* k = nullptr;
    CLI::Option* tol = nullptr;
    CLI::Option* grid = nullptr;

    static bool set(const CLI::Option* o) { return o != nullptr && o->count() > 0; }
};

Json num(double v) { return round_significant(v); }

Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open " + path);
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(path + ": " + e.what());
    }
}

double json_scalar(const Json& j, const char* key) {
    const Json& v = j.at(key);
    if (v.is_number()) return v.get<double>();
    if (v.is_string()) return parse_expression(v.get<std::string>());
    throw FormatError(std::string("key \"") + key + "\" must be a number or expression string");
}

int json_int(const Json& j, const char* key) {
    const Json& v = j.at(key);
    if (!v.is_number_integer()) throw FormatError(std::string("key \"") + key + "\" must be an integer");
    return v.get<int>();
}

class Context {
public:
    Context(const Settings& s, const Given& g) : s_(s), g_(g) {
        if (!s_.job.empty()) job_ = load_json_file(s_.job);
    }

    const Settings& settings() const { return s_; }
    const std::optional<Json>& job() const { return job_; }

    double angle(const std::string& text) const {
        const double v = parse_expression(text);
        return s_.degrees ? v * M_PI / 180.0 : v;
    }

    double alpha() const {
        if (Given::set(g_.alpha)) return parse_expression(s_.alpha);
        if (job_ && job_->contains("alpha")) return json_scalar(*job_, "alpha");
        throw ParameterOutOfRange("--alpha is required");
    }

    double theta() const {
        if (Given::set(g_.theta)) return angle(s_.theta);
        if (job_ && job_->contains("theta")) return json_scalar(*job_, "theta");
        throw ParameterOutOfRange("--theta is required");
    }

    int n() const {
        if (Given::set(g_.n)) return s_.n;
        if (job_ && job_->contains("n")) return json_int(*job_, "n");
        return s_.n;
    }

    int k() const {
        if (Given::set(g_.k)) return s_.k;
        if (job_ && job_->contains("k")) return json_int(*job_, "k");
        return s_.k;
    }

    double tol(double fallback) const {
        double t = fallback;
        if (Given::set(g_.tol)) t = s_.tol;
        else if (job_ && job_->contains("tol")) t = json_scalar(*job_, "tol");
        if (!(t > 0.0)) throw ParameterOutOfRange("tolerance must be positive");
        return t;
    }

    Grid grid() const {
        if (!Given::set(g_.grid) && job_ && job_->contains("grid")) {
            return parse_grid(job_->at("grid").get<std::string>());
        }
        Grid g = parse_grid(s_.grid);
        if (s_.degrees && Given::set(g_.grid)) {
            g.start *= M_PI / 180.0;
            g.stop *= M_PI / 180.0;
        }
        return g;
    }

    GameSpec spec(bool need_theta = true) const {
        GameSpec spec;
        spec.alpha = alpha();
        spec.theta = need_theta ? theta() : 0.0;
        spec.n = n();
        spec.k = k();
        spec.validate();
        return spec;
    }

    // Reports go to --out when given.
    void emit(const std::string& text, std::ostream& out) const {
        if (s_.out.empty()) {
            out << text;
            return;
        }
        std::ofstream f(s_.out);
        if (!f) throw FormatError("cannot write " + s_.out);
        f << text;
    }

private:
    Settings s_;
    Given g_;
    std::optional<Json> job_;
};

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

int cmd_thresholds(const Context& ctx, std::ostream& out) {
    const double alpha = ctx.alpha();
    const int n = ctx.n();
    const ThetaRange r = thresholds(alpha, n);
    const double q = std::exp2(1.0 / n) - 1.0;
    Json j{{"alpha", num(alpha)},
           {"n", n},
           {"theta1", num(r.theta1)},
           {"theta2", num(r.theta2)},
           {"theta1_deg", num(r.theta1 * 180.0 / M_PI)},
           {"theta2_deg", num(r.theta2 * 180.0 / M_PI)},
           {"lambda_low", num(q)},
           {"lambda_high", num(1.0 / q)}};
    ctx.emit(dump(j), out);
    return kOk;
}

struct ValueResult {
    SdpSolution sol;
    bool certified = false;
};

ValueResult solve_value(const GameSpec& spec, double tol, int max_steps) {
    if (spec.n > kMaxValueGames) {
        throw ParameterOutOfRange("value: n must be <= " + std::to_string(kMaxValueGames));
    }
    const ComplexMatrix c = objective_lose_more_than(build_q_operators(spec.alpha, spec.theta), spec.n, spec.k);
    const int d = 1 << spec.n;
    SdpOptions o;
    o.gap_tol = tol;
    o.max_newton_steps = max_steps;
    ValueResult r;
    r.sol = solve_min_channel(c, d, d, o);
    const bool dual_ok = check_dual_feasible(r.sol.dual_Y, c, d, o.feas_tol).feasible;
    const bool primal_ok = r.sol.primal_X && check_primal_feasible(*r.sol.primal_X, d, d, o.feas_tol).feasible;
    r.certified = dual_ok && primal_ok && r.sol.gap <= tol;
    return r;
}

int cmd_value(const Context& ctx, std::ostream& out) {
    const GameSpec spec = ctx.spec();
    const double tol = ctx.tol(SdpOptions{}.gap_tol);
    const ValueResult r = solve_value(spec, tol, ctx.settings().max_steps);
    Json j{{"alpha", num(spec.alpha)},
           {"theta", num(spec.theta)},
           {"n", spec.n},
           {"k", spec.k},
           {"value", num(r.sol.value)},
           {"dual_value", num(r.sol.dual_value)},
           {"gap", num(r.sol.gap)},
           {"iterations", r.sol.iterations},
           {"certified", r.certified}};
    if (ctx.settings().full) j["solution"] = solution_to_json(r.sol);
    ctx.emit(dump(j), out);
    return kOk;
}

int cmd_sweep(const Context& ctx, std::ostream& out, std::ostream& err) {
    const GameSpec base = ctx.spec(false);
    const double tol = ctx.tol(SdpOptions{}.gap_tol);
    const Grid grid = ctx.grid();
    const auto thetas = grid.points();
    for (double t : thetas) validate_theta(t);
    const ThetaRange range = thresholds(base.alpha, base.n);

    std::ostringstream csv;
    csv << "theta,sdp_value,amp1_sq,amp2_sq,in_hedging_range\n";
    int failures = 0;
    for (double theta : thetas) {
        GameSpec spec = base;
        spec.theta = theta;
        double value = std::nan("");
        try {
            value = solve_value(spec, tol, ctx.settings().max_steps).sol.value;
        } catch (const SolverError& e) {
            ++failures;
            err << "sweep: theta = " << format_number(theta) << ": " << e.what() << "\n";
        }
        const double a1 = losing_amplitude(spec.alpha, theta, spec.n, Border::Phi1);
        const double a2 = losing_amplitude(spec.alpha, theta, spec.n, Border::Phi2);
        csv << format_number(theta) << ',' << format_number(value) << ',' << format_number(a1 * a1) << ','
            << format_number(a2 * a2) << ',' << (range.contains(theta, 1e-12) ? 1 : 0) << '\n';
    }
    ctx.emit(csv.str(), out);
    return failures > 0 ? kSolverFailure : kOk;
}

const char* region_name(const ThetaRange& r, double theta) {
    if (theta < r.theta1 - 1e-12) return "below";
    if (theta > r.theta2 + 1e-12) return "above";
    return "inside";
}

int cmd_strategy(const Context& ctx, std::ostream& out) {
    const double alpha = ctx.alpha();
    const double theta = ctx.theta();
    const int n = ctx.n();
    validate_theta(theta);
    const ThetaRange range = thresholds(alpha, n);
    Json j = strategy_to_json(recommended_strategy(alpha, theta, n));
    const std::string region = region_name(range, theta);
    j["region"] = region;
    j["alpha"] = num(alpha);
    j["theta"] = num(theta);
    if (region == "inside") j["s"] = num(interpolation_parameters(alpha, theta, n).s);
    ctx.emit(dump(j), out);
    return kOk;
}

DiagonalStrategy strategy_for(const Context& ctx, double alpha, double theta, int n) {
    if (ctx.settings().strategy.empty()) return recommended_strategy(alpha, theta, n);
    DiagonalStrategy d = strategy_from_json(load_json_file(ctx.settings().strategy));
    if (d.n != n) {
        throw DimensionMismatch("strategy file is for n = " + std::to_string(d.n) + ", expected " +
                                std::to_string(n));
    }
    return d;
}

int cmd_evaluate(const Context& ctx, std::ostream& out) {
    const GameSpec spec = ctx.spec();
    const DiagonalStrategy d = strategy_for(ctx, spec.alpha, spec.theta, spec.n);
    const OutcomeDistribution dist = outcome_distribution(d, spec.alpha, spec.theta, spec.n);
    const double tol = ctx.tol(1e-9);
    Json j = distribution_to_json(dist);
    j["k"] = spec.k;
    j["lose_all"] = num(dist.lose_all());
    j["win_at_least_k"] = num(prob_win_at_least(dist, spec.k));
    j["perfect_hedging"] = dist.lose_all() <= tol;
    ctx.emit(dump(j), out);
    return kOk;
}

int cmd_certify(const Context& ctx, std::ostream& out, std::ostream& err) {
    const GameSpec spec = ctx.spec();
    const DiagonalStrategy d = strategy_for(ctx, spec.alpha, spec.theta, spec.n);
    const double tol = ctx.tol(1e-9);
    const ComplexMatrix c = objective_lose_more_than(build_q_operators(spec.alpha, spec.theta), spec.n, spec.k);
    const int dim = 1 << spec.n;
    const OptimalityCertificate cert = certify_strategy_optimal(d.choi(), c, dim, dim, tol);
    Json j{{"primal_value", num(cert.primal_value)},
           {"dual_value", num(cert.dual_value)},
           {"min_eig", num(cert.min_eig)},
           {"optimal", cert.optimal}};
    ctx.emit(dump(j), out);
    if (!cert.optimal) {
        err << "certify: dual candidate infeasible, min eigenvalue " << format_number(cert.min_eig) << "\n";
        return kNotOptimal;
    }
    return kOk;
}

bool is_diagonal(const ComplexMatrix& m) {
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            if (i != j && m(i, j) != Complex(0.0)) return false;
    return true;
}

int cmd_noanswer(const Context& ctx, std::ostream& out) {
    if (!ctx.job()) throw ParameterOutOfRange("noanswer: --job <instance.json> is required");
    const NoAnswerInstance inst = instance_from_json(*ctx.job());
    const int n = ctx.n();
    const int k = ctx.k();
    validate_repetitions(n, k);
    const double p = single_value(inst);
    const double value = k_of_n_value(inst, n, k);
    Json j{{"n", n}, {"k", k}, {"p_single", num(p)}, {"value_k_of_n", num(value)}};
    if (n <= 3) {
        const double lambda = direct_lambda_value(inst, n, k);
        j["lambda_check"] = num(lambda);
        j["lambda_agrees"] = std::abs(lambda - value) <= 1e-9;
    } else {
        j["lambda_check"] = nullptr;
        j["lambda_agrees"] = nullptr;
    }
    if (is_diagonal(inst.rho) && is_diagonal(inst.Pa)) {
        const double cv = classical_value(inst);
        j["classical_value"] = num(cv);
        j["classical_agrees"] = std::abs(cv - p) <= 1e-12;
    } else {
        j["classical_value"] = nullptr;
        j["classical_agrees"] = nullptr;
    }
    ctx.emit(dump(j), out);
    return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Values, strategies and certificates for the parallel-repetition hedging game", "qhedge"};
    app.require_subcommand(1);
    app.fallthrough();

    Settings s;
    auto add_game = [&](CLI::App* sub, bool theta) {
        sub->add_option("--alpha", s.alpha, "Amplitude of |00> in Alice's state, in (0, 1]");
        if (theta) {
            sub->add_option("--theta", s.theta, "Measurement angle (radians; accepts pi/8 etc.)");
        }
        sub->add_option("--n", s.n, "Number of parallel games");
    };
    auto add_k = [&](CLI::App* sub) { sub->add_option("--k", s.k, "Wins Bob targets"); };
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--out", s.out, "Write the report to this file");
        sub->add_option("--job", s.job, "JSON job file; flags override its fields");
        sub->add_flag("--degrees", s.degrees, "Read angles given on the command line as degrees");
    };
    auto add_tol = [&](CLI::App* sub) { sub->add_option("--tol", s.tol, "Tolerance"); };

    CLI::App* thr = app.add_subcommand("thresholds", "Perfect-hedging interval for winning one of n games");
    add_game(thr, false);
    add_common(thr);

    CLI::App* val = app.add_subcommand("value", "Optimal probability of winning fewer than k games (SDP)");
    add_game(val, true);
    add_k(val);
    add_tol(val);
    add_common(val);
    val->add_flag("--full", s.full, "Include the dual and primal matrices");
    val->add_option("--max-steps", s.max_steps, "Newton step budget");

    CLI::App* swp = app.add_subcommand("sweep", "CSV sweep of the SDP value over a theta grid");
    add_game(swp, false);
    add_k(swp);
    add_tol(swp);
    add_common(swp);
    swp->add_option("--grid", s.grid, "start:stop:count (default 0:pi/2:9)");
    swp->add_option("--max-steps", s.max_steps, "Newton step budget per point");

    CLI::App* str = app.add_subcommand("strategy", "Recommended diagonal strategy as JSON");
    add_game(str, true);
    add_common(str);

    CLI::App* eva = app.add_subcommand("evaluate", "Outcome distribution of a strategy");
    add_game(eva, true);
    add_k(eva);
    add_tol(eva);
    add_common(eva);
    eva->add_option("--strategy", s.strategy, "Strategy JSON file (default: recommended strategy)");

    CLI::App* cer = app.add_subcommand("certify", "Check a strategy against the dual optimality certificate");
    add_game(cer, true);
    add_k(cer);
    add_tol(cer);
    add_common(cer);
    cer->add_option("--strategy", s.strategy, "Strategy JSON file (default: recommended strategy)");

    CLI::App* noa = app.add_subcommand("noanswer", "No-answer model values for an instance file");
    noa->add_option("--n", s.n, "Number of repetitions");
    add_k(noa);
    add_common(noa);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(std::move(reversed));
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kBadInput;
    }

    // Subcommands register options into one Settings; only the chosen one counts.
    auto pick = [&](CLI::App* sub) {
        Given mine;
        auto find = [&](const char* name) -> CLI::Option* {
            try {
                return sub->get_option(name);
            } catch (const CLI::OptionNotFound&) {
                return nullptr;
            }
        };
        mine.alpha = find("--alpha");
        mine.theta = find("--theta");
        mine.n = find("--n");
        mine.k = find("--k");
        mine.tol = find("--tol");
        mine.grid = find("--grid");
        return mine;
    };

    try {
        if (*thr) return cmd_thresholds(Context(s, pick(thr)), out);
        if (*val) return cmd_value(Context(s, pick(val)), out);
        if (*swp) return cmd_sweep(Context(s, pick(swp)), out, err);
        if (*str) return cmd_strategy(Context(s, pick(str)), out);
        if (*eva) return cmd_evaluate(Context(s, pick(eva)), out);
        if (*cer) return cmd_certify(Context(s, pick(cer)), out, err);
        if (*noa) return cmd_noanswer(Context(s, pick(noa)), out);
    } catch (const SolverError& e) {
        err << "error: " << e.what() << " (last gap " << format_number(e.last_gap()) << ", " << e.iterations()
            << " Newton steps)\n";
        return kSolverFailure;
    } catch (const InternalInconsistency& e) {
        err << "error: " << e.what() << "\n";
        return kSolverFailure;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kBadInput;
    } catch (const nlohmann::json::exception& e) {
        err << "error: " << e.what() << "\n";
        return kBadInput;
    }
    return kBadInput;
}

}  // namespace qhedge::cli
