#include "qhedge/noanswer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "qhedge/errors.hpp"
#include "qhedge/game.hpp"

namespace qhedge {

namespace {

constexpr double kDensityTol = 1e-10;

bool is_diagonal(const ComplexMatrix& m) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            if (i != j && m(i, j) != Complex(0.0)) return false;
        }
    }
    return true;
}

}  // namespace

void NoAnswerInstance::validate() const {
    if (dim_x < 1 || dim_y < 1 || dim_z < 1) {
        throw DimensionMismatch("NoAnswerInstance: dimensions must be positive");
    }
    const long dxz = static_cast<long>(dim_x) * dim_z;
    const long dyz = static_cast<long>(dim_y) * dim_z;
    if (rho.rows() != dxz || rho.cols() != dxz) {
        throw DimensionMismatch("NoAnswerInstance: rho must be (dimX*dimZ) square");
    }
    if (Pa.rows() != dyz || Pa.cols() != dyz) {
        throw DimensionMismatch("NoAnswerInstance: Pa must be (dimY*dimZ) square");
    }
    if (!is_hermitian(rho, 1e-10)) throw ContractViolation("NoAnswerInstance: rho is not Hermitian");
    if (!is_hermitian(Pa, 1e-10)) throw ContractViolation("NoAnswerInstance: Pa is not Hermitian");
    if (std::abs(rho.trace() - Complex(1.0)) > kDensityTol) {
        throw ContractViolation("NoAnswerInstance: tr(rho) != 1");
    }
    if (min_eigenvalue(rho) < -kDensityTol) throw NotPsdError("NoAnswerInstance: rho is not PSD");
    const auto pa_eig = herm_eigen(Pa);
    if (pa_eig.values.front() < -kDensityTol || pa_eig.values.back() > 1.0 + kDensityTol) {
        throw ContractViolation("NoAnswerInstance: Pa must satisfy 0 <= Pa <= 1");
    }
}

ComplexMatrix apply_psi_rho(const ComplexMatrix& rho, int dim_x, int dim_z,
                            const ComplexMatrix& op_yz, int dim_y) {
    const ComplexMatrix choi = rho.conjugate();
    const TensorDims dims{dim_x, dim_z};
    ComplexMatrix out = ComplexMatrix::Zero(static_cast<long>(dim_y) * dim_x,
                                            static_cast<long>(dim_y) * dim_x);
    for (int y = 0; y < dim_y; ++y) {
        for (int yp = 0; yp < dim_y; ++yp) {
            const ComplexMatrix block = op_yz.block(static_cast<long>(y) * dim_z,
                                                    static_cast<long>(yp) * dim_z, dim_z, dim_z);
            out.block(static_cast<long>(y) * dim_x, static_cast<long>(yp) * dim_x, dim_x, dim_x) =
                choi_apply(choi, dims, block);
        }
    }
    return out;
}

NoAnswerOperators build_noanswer_operators(const NoAnswerInstance& inst, double rank_tol) {
    inst.validate();
    NoAnswerOperators ops;
    ops.Qa = hermitian_part(apply_psi_rho(inst.rho, inst.dim_x, inst.dim_z, inst.Pa, inst.dim_y));
    const long dyz = static_cast<long>(inst.dim_y) * inst.dim_z;
    const ComplexMatrix complement = identity(dyz) - inst.Pa;
    ops.Qother =
        hermitian_part(apply_psi_rho(inst.rho, inst.dim_x, inst.dim_z, complement, inst.dim_y));
    const TensorDims xz{inst.dim_x, inst.dim_z};
    const int traced[] = {1};
    ops.E = kron(identity(inst.dim_y), partial_trace(inst.rho.conjugate(), xz, traced));
    ops.E_pinv_sqrt = psd_pinv_sqrt(ops.E, rank_tol);
    ops.A = hermitian_part(ops.E_pinv_sqrt * ops.Qa * ops.E_pinv_sqrt);
    ops.B = hermitian_part(ops.E_pinv_sqrt * ops.E * ops.E_pinv_sqrt);
    return ops;
}

double single_value(const NoAnswerInstance& inst) {
    const NoAnswerOperators ops = build_noanswer_operators(inst);
    if (ops.Qa.cwiseAbs().maxCoeff() <= 1e-14) {
        throw DegenerateInstance("single_value: Q_a = 0, Bob can never obtain the target outcome");
    }
    return std::min(1.0, op_norm(ops.A));
}

double binomial_win_at_least(double p, int n, int k) {
    validate_repetitions(n, k);
    double lose = 0.0;
    double coeff = 1.0;  // C(n, t)
    for (int t = 0; t < k; ++t) {
        lose += coeff * std::pow(p, t) * std::pow(1.0 - p, n - t);
        coeff = coeff * (n - t) / (t + 1);
    }
    return 1.0 - lose;
}

double k_of_n_value(const NoAnswerInstance& inst, int n, int k) {
    validate_repetitions(n, k);
    return binomial_win_at_least(single_value(inst), n, k);
}

double direct_lambda_value(const NoAnswerInstance& inst, int n, int k) {
    validate_repetitions(n, k);
    if (n > 3) throw ParameterOutOfRange("direct_lambda_value: n must be <= 3");
    const NoAnswerOperators ops = build_noanswer_operators(inst);
    if (ops.Qa.cwiseAbs().maxCoeff() <= 1e-14) {
        throw DegenerateInstance("direct_lambda_value: Q_a = 0");
    }
    // Sum over outcome strings with fewer than k target outcomes, as for the game objective.
    QOperators q;
    q.Q0 = ops.Qother;
    q.Q1 = ops.Qa;
    q.E = ops.E;
    q.dim_y = inst.dim_y;
    q.dim_x = inst.dim_x;
    const ComplexMatrix losing = objective_lose_more_than(q, n, k, Layout::GameMajor);
    const ComplexMatrix e_all = kron_power(ops.E, n);
    const ComplexMatrix cond = kron_power(ops.E_pinv_sqrt, n);
    const ComplexMatrix lambda = hermitian_part(cond * (e_all - losing) * cond);
    return op_norm(lambda);
}

double classical_value(const NoAnswerInstance& inst) {
    inst.validate();
    if (!is_diagonal(inst.rho) || !is_diagonal(inst.Pa)) {
        throw ContractViolation("classical_value: rho and Pa must be diagonal");
    }
    const long dyz = static_cast<long>(inst.dim_y) * inst.dim_z;
    const ComplexMatrix q_other = apply_psi_rho(inst.rho, inst.dim_x, inst.dim_z,
                                                identity(dyz) - inst.Pa, inst.dim_y);
    const ComplexMatrix q_a = apply_psi_rho(inst.rho, inst.dim_x, inst.dim_z, inst.Pa, inst.dim_y);
    const TensorDims xz{inst.dim_x, inst.dim_z};
    const int traced[] = {1};
    const ComplexMatrix e = kron(identity(inst.dim_y), partial_trace(inst.rho, xz, traced));

    double emax = 0.0;
    for (Eigen::Index i = 0; i < e.rows(); ++i) emax = std::max(emax, e(i, i).real());
    const double cut = kDefaultRankTol * emax;
    double lambda_e = std::numeric_limits<double>::infinity();
    bool any_target = false;
    for (Eigen::Index i = 0; i < e.rows(); ++i) {
        const double ei = e(i, i).real();
        if (ei <= cut) continue;
        lambda_e = std::min(lambda_e, q_other(i, i).real() / ei);
        any_target = any_target || q_a(i, i).real() > 0.0;
    }
    if (!any_target) throw DegenerateInstance("classical_value: Q_a = 0");
    return 1.0 - lambda_e;
}

}  // namespace qhedge
