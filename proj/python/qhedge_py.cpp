#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qhedge/errors.hpp"
#include "qhedge/evaluator.hpp"
#include "qhedge/game.hpp"
#include "qhedge/noanswer.hpp"
#include "qhedge/sdp.hpp"
#include "qhedge/strategies.hpp"

namespace py = pybind11;
using namespace qhedge;

namespace {

DiagonalStrategy strategy_from_phases(const std::vector<Complex>& phases) {
    DiagonalStrategy d;
    int n = 0;
    while ((std::size_t{1} << n) < phases.size()) ++n;
    d.n = n;
    d.phases = phases;
    d.validate(1e-9);
    return d;
}

py::dict solve_game(double alpha, double theta, int n, int k, double tol, int max_steps) {
    GameSpec{alpha, theta, n, k}.validate();
    const ComplexMatrix c = objective_lose_more_than(build_q_operators(alpha, theta), n, k);
    SdpOptions o;
    o.gap_tol = tol;
    o.max_newton_steps = max_steps;
    const int d = 1 << n;
    SdpSolution s;
    {
        py::gil_scoped_release release;
        s = solve_min_channel(c, d, d, o);
    }
    py::dict out;
    out["value"] = s.value;
    out["dual_value"] = s.dual_value;
    out["gap"] = s.gap;
    out["iterations"] = s.iterations;
    out["dual_Y"] = s.dual_Y;
    out["primal_X"] = s.primal_X ? py::cast(*s.primal_X) : py::none();
    return out;
}

NoAnswerInstance make_instance(const ComplexMatrix& rho, const ComplexMatrix& pa, int dx, int dy, int dz) {
    NoAnswerInstance inst;
    inst.rho = rho;
    inst.Pa = pa;
    inst.dim_x = dx;
    inst.dim_y = dy;
    inst.dim_z = dz;
    inst.validate();
    return inst;
}

}  // namespace

PYBIND11_MODULE(_qhedge, m) {
    m.doc() = "Thresholds, strategies and SDP values for repeated qubit-echo games";

    auto base = py::register_exception<Error>(m, "Error", PyExc_ValueError);
    py::register_exception<SolverError>(m, "SolverError", base.ptr());
    py::register_exception<OutOfHedgingRange>(m, "OutOfHedgingRange", base.ptr());

    m.def("thresholds", [](double alpha, int n) {
        const ThetaRange r = thresholds(alpha, n);
        return py::make_tuple(r.theta1, r.theta2);
    }, py::arg("alpha"), py::arg("n"), "(theta1, theta2) bounding the perfect-hedging range.");

    m.def("lambda_alpha", &lambda_alpha, py::arg("alpha"), py::arg("theta"));

    m.def("phi_interp", [](double alpha, double theta, int n) {
        return phi_interp(alpha, theta, n).phases;
    }, py::arg("alpha"), py::arg("theta"), py::arg("n"));

    m.def("phi_border", [](int n, int which) {
        if (which != 1 && which != 2) throw ParameterOutOfRange("which must be 1 or 2");
        return phi_border(n, which == 1 ? Border::Phi1 : Border::Phi2).phases;
    }, py::arg("n"), py::arg("which"));

    m.def("recommended_strategy", [](double alpha, double theta, int n) {
        return recommended_strategy(alpha, theta, n).phases;
    }, py::arg("alpha"), py::arg("theta"), py::arg("n"));

    m.def("losing_amplitude", [](double alpha, double theta, int n, int which) {
        if (which != 1 && which != 2) throw ParameterOutOfRange("which must be 1 or 2");
        return losing_amplitude(alpha, theta, n, which == 1 ? Border::Phi1 : Border::Phi2);
    }, py::arg("alpha"), py::arg("theta"), py::arg("n"), py::arg("which"));

    m.def("outcome_distribution", [](const std::vector<Complex>& phases, double alpha, double theta) {
        const DiagonalStrategy d = strategy_from_phases(phases);
        return outcome_distribution(d, alpha, theta, d.n).probs;
    }, py::arg("phases"), py::arg("alpha"), py::arg("theta"),
       "Outcome probabilities indexed by bitstring, game 0 most significant, 1 = win.");

    m.def("outcome_distribution_choi", [](const ComplexMatrix& choi, double alpha, double theta, int n) {
        return outcome_distribution_choi(choi, alpha, theta, n).probs;
    }, py::arg("choi"), py::arg("alpha"), py::arg("theta"), py::arg("n"));

    m.def("objective", [](double alpha, double theta, int n, int k) {
        GameSpec{alpha, theta, n, k}.validate();
        return objective_lose_more_than(build_q_operators(alpha, theta), n, k);
    }, py::arg("alpha"), py::arg("theta"), py::arg("n"), py::arg("k") = 1,
       "Objective matrix on (Y1..Yn)(X1..Xn) whose pairing with a Choi matrix is the losing probability.");

    m.def("solve", &solve_game, py::arg("alpha"), py::arg("theta"), py::arg("n"), py::arg("k") = 1,
          py::arg("tol") = 1e-7, py::arg("max_steps") = 200,
          "Minimum probability of winning fewer than k of n games.");

    m.def("certify", [](const std::vector<Complex>& phases, double alpha, double theta, int k, double tol) {
        const DiagonalStrategy d = strategy_from_phases(phases);
        const ComplexMatrix c = objective_lose_more_than(build_q_operators(alpha, theta), d.n, k);
        const int dim = 1 << d.n;
        const OptimalityCertificate cert = certify_strategy_optimal(d.choi(), c, dim, dim, tol);
        py::dict out;
        out["optimal"] = cert.optimal;
        out["primal_value"] = cert.primal_value;
        out["dual_value"] = cert.dual_value;
        out["min_eig"] = cert.min_eig;
        return out;
    }, py::arg("phases"), py::arg("alpha"), py::arg("theta"), py::arg("k") = 1, py::arg("tol") = 1e-9);

    m.def("noanswer_single_value", [](const ComplexMatrix& rho, const ComplexMatrix& pa, int dx, int dy, int dz) {
        return single_value(make_instance(rho, pa, dx, dy, dz));
    }, py::arg("rho"), py::arg("Pa"), py::arg("dim_x") = 2, py::arg("dim_y") = 2, py::arg("dim_z") = 2);

    m.def("noanswer_k_of_n", [](const ComplexMatrix& rho, const ComplexMatrix& pa, int n, int k, int dx, int dy,
                                int dz) {
        return k_of_n_value(make_instance(rho, pa, dx, dy, dz), n, k);
    }, py::arg("rho"), py::arg("Pa"), py::arg("n"), py::arg("k"), py::arg("dim_x") = 2, py::arg("dim_y") = 2,
       py::arg("dim_z") = 2);

    m.def("binomial_win_at_least", &binomial_win_at_least, py::arg("p"), py::arg("n"), py::arg("k"));
}
