#include "qhedge/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <string>

#include "qhedge/errors.hpp"

namespace qhedge {

namespace {

const Json& require(const Json& j, const char* key) {
    if (!j.is_object()) throw FormatError("expected a JSON object");
    const auto it = j.find(key);
    if (it == j.end()) throw FormatError(std::string("missing key \"") + key + "\"");
    return *it;
}

template <typename T>
T get_as(const Json& j, const char* key) {
    try {
        return require(j, key).get<T>();
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(std::string("key \"") + key + "\": " + e.what());
    }
}

int get_positive_int(const Json& j, const char* key) {
    const Json& v = require(j, key);
    if (!v.is_number_integer()) throw FormatError(std::string("key \"") + key + "\" must be an integer");
    const long long x = v.get<long long>();
    if (x < 1 || x > 1 << 20) throw FormatError(std::string("key \"") + key + "\" out of range");
    return static_cast<int>(x);
}

}  // namespace

double round_significant(double v, int digits) {
    if (!std::isfinite(v) || v == 0.0) return v;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*e", digits - 1, v);
    return std::strtod(buf, nullptr);
}

std::string format_number(double v, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    return buf;
}

Json matrix_to_json(const ComplexMatrix& m) {
    std::vector<double> re, im;
    re.reserve(m.size());
    im.reserve(m.size());
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            re.push_back(m(i, j).real());
            im.push_back(m(i, j).imag());
        }
    }
    return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"re", re}, {"im", im}};
}

ComplexMatrix matrix_from_json(const Json& j) {
    const int rows = get_positive_int(j, "rows");
    const int cols = get_positive_int(j, "cols");
    const auto re = get_as<std::vector<double>>(j, "re");
    const auto im = get_as<std::vector<double>>(j, "im");
    const std::size_t count = static_cast<std::size_t>(rows) * cols;
    if (re.size() != count || im.size() != count) {
        throw FormatError("matrix: re/im must each hold rows*cols entries");
    }
    ComplexMatrix m(rows, cols);
    for (int i = 0; i < rows; ++i) {
        for (int k = 0; k < cols; ++k) {
            const std::size_t idx = static_cast<std::size_t>(i) * cols + k;
            if (!std::isfinite(re[idx]) || !std::isfinite(im[idx])) {
                throw FormatError("matrix: non-finite entry");
            }
            m(i, k) = Complex(re[idx], im[idx]);
        }
    }
    return m;
}

Json game_spec_to_json(const GameSpec& spec) {
    return Json{{"alpha", spec.alpha}, {"theta", spec.theta}, {"n", spec.n}, {"k", spec.k}};
}

GameSpec game_spec_from_json(const Json& j) {
    GameSpec spec;
    spec.alpha = get_as<double>(j, "alpha");
    spec.theta = get_as<double>(j, "theta");
    spec.n = get_positive_int(j, "n");
    spec.k = get_positive_int(j, "k");
    spec.validate();
    return spec;
}

Json strategy_to_json(const DiagonalStrategy& s) {
    std::vector<double> re, im;
    for (const Complex& p : s.phases) {
        re.push_back(p.real());
        im.push_back(p.imag());
    }
    return Json{{"n", s.n}, {"phases_re", re}, {"phases_im", im}};
}

DiagonalStrategy strategy_from_json(const Json& j) {
    DiagonalStrategy s;
    s.n = get_positive_int(j, "n");
    const auto re = get_as<std::vector<double>>(j, "phases_re");
    const auto im = get_as<std::vector<double>>(j, "phases_im");
    if (re.size() != im.size()) throw FormatError("strategy: phases_re and phases_im differ in length");
    for (std::size_t i = 0; i < re.size(); ++i) s.phases.emplace_back(re[i], im[i]);
    s.validate(1e-9);
    return s;
}

Json distribution_to_json(const OutcomeDistribution& d) {
    std::vector<double> probs;
    for (double p : d.probs) probs.push_back(round_significant(p));
    return Json{{"n", d.n}, {"probs", probs}};
}

OutcomeDistribution distribution_from_json(const Json& j) {
    OutcomeDistribution d;
    d.n = get_positive_int(j, "n");
    d.probs = get_as<std::vector<double>>(j, "probs");
    d.validate(1e-9);
    return d;
}

Json solution_to_json(const SdpSolution& s) {
    Json j{{"value", s.value},
           {"gap", s.gap},
           {"iterations", s.iterations},
           {"dual_Y", matrix_to_json(s.dual_Y)}};
    j["primal_X"] = s.primal_X ? matrix_to_json(*s.primal_X) : Json(nullptr);
    return j;
}

SdpSolution solution_from_json(const Json& j) {
    SdpSolution s;
    s.value = get_as<double>(j, "value");
    s.gap = get_as<double>(j, "gap");
    s.iterations = get_as<int>(j, "iterations");
    s.dual_Y = matrix_from_json(require(j, "dual_Y"));
    s.dual_value = s.dual_Y.trace().real();
    const Json& x = require(j, "primal_X");
    if (!x.is_null()) s.primal_X = matrix_from_json(x);
    return s;
}

Json instance_to_json(const NoAnswerInstance& inst) {
    return Json{{"rho", matrix_to_json(inst.rho)},
                {"Pa", matrix_to_json(inst.Pa)},
                {"dimX", inst.dim_x},
                {"dimY", inst.dim_y},
                {"dimZ", inst.dim_z}};
}

NoAnswerInstance instance_from_json(const Json& j) {
    NoAnswerInstance inst;
    inst.rho = matrix_from_json(require(j, "rho"));
    inst.Pa = matrix_from_json(require(j, "Pa"));
    inst.dim_x = get_positive_int(j, "dimX");
    inst.dim_y = get_positive_int(j, "dimY");
    inst.dim_z = get_positive_int(j, "dimZ");
    inst.validate();
    return inst;
}

}  // namespace qhedge
