#pragma once

// Dense complex linear algebra used throughout the library.
//
// Index convention: computational basis, big-endian. For a register made of
// factors (f_0, f_1, ..., f_{m-1}) the basis index of (d_0, ..., d_{m-1}) is
// d_0 * f_1 * ... * f_{m-1} + ... + d_{m-1}; factor 0 is the most significant.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace qhedge {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using ComplexVector = Eigen::Matrix<Complex, Eigen::Dynamic, 1>;

inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kUnitaryTol = 1e-10;
inline constexpr double kDefaultRankTol = 1e-10;

// Local dimensions of the tensor factors of a register.
struct TensorDims {
    std::vector<int> factors;

    TensorDims() = default;
    TensorDims(std::initializer_list<int> f) : factors(f) {}
    explicit TensorDims(std::vector<int> f) : factors(std::move(f)) {}

    // n copies of the same local dimension.
    static TensorDims uniform(int local, int count);

    std::size_t size() const noexcept { return factors.size(); }
    long total() const;
    void validate() const;
};

ComplexMatrix identity(long dim);

// Projector |v><v| for a (not necessarily normalised) vector.
ComplexMatrix outer(const ComplexVector& v);
ComplexMatrix outer(const ComplexVector& a, const ComplexVector& b);

// Basis ket |index> of the given dimension.
ComplexVector basis_ket(long dim, long index);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexVector kron(const ComplexVector& a, const ComplexVector& b);

// a_0 (x) a_1 (x) ... in order; at least one factor required.
ComplexMatrix kron_all(std::span<const ComplexMatrix> factors);

// n-fold tensor power; n >= 1.
ComplexMatrix kron_power(const ComplexMatrix& a, int n);

// Traces out the listed factors; the kept factors stay in their original order.
ComplexMatrix partial_trace(const ComplexMatrix& m, const TensorDims& dims,
                            std::span<const int> traced);

// Reorders tensor factors: new factor j is old factor perm[j].
ComplexMatrix permute_subsystems(const ComplexMatrix& m, const TensorDims& dims,
                                 std::span<const int> perm);
ComplexVector permute_subsystems(const ComplexVector& v, const TensorDims& dims,
                                 std::span<const int> perm);

// Re tr(a^dagger b); for Hermitian operands this is the real pairing <a, b>.
double inner_product(const ComplexMatrix& a, const ComplexMatrix& b);

bool is_hermitian(const ComplexMatrix& m, double tol = kHermitianTol);
bool is_unitary(const ComplexMatrix& u, double tol = kUnitaryTol);
ComplexMatrix hermitian_part(const ComplexMatrix& m);

// Spectral decomposition m = V diag(values) V^dagger with values ascending.
struct EigenDecomposition {
    std::vector<double> values;
    ComplexMatrix vectors;  // orthonormal eigenvectors as columns
};

// Cyclic complex Jacobi. Throws ContractViolation for non-Hermitian input.
EigenDecomposition herm_eigen(const ComplexMatrix& m);

double op_norm(const ComplexMatrix& m);
double min_eigenvalue(const ComplexMatrix& m);

// (P^+)^{1/2}: eigenvalues above rank_tol * max|lambda| map to lambda^{-1/2},
// the rest to zero. Throws NotPsdError below -rank_tol * max|lambda|.
ComplexMatrix psd_pinv_sqrt(const ComplexMatrix& p, double rank_tol = kDefaultRankTol);

// Orthogonal projector onto the support of a PSD matrix.
ComplexMatrix support_projector(const ComplexMatrix& p, double rank_tol = kDefaultRankTol);

// J = sum_ij (U|i><j|U^dagger) (x) |i><j| on (output, input).
ComplexMatrix choi_of_unitary(const ComplexMatrix& u);

// Phi(Z) = tr_in[ J (1_out (x) Z^T) ] with dims = {dim_out, dim_in}.
ComplexMatrix choi_apply(const ComplexMatrix& choi, const TensorDims& dims, const ComplexMatrix& z);

}  // namespace qhedge
