#pragma once

// Fixed-seed generators and brute-force reference computations shared by the tests.

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "qhedge/linops.hpp"

namespace qtest {

using qhedge::Complex;
using qhedge::ComplexMatrix;
using qhedge::ComplexVector;

class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    double uniform(double lo = 0.0, double hi = 1.0) {
        return std::uniform_real_distribution<double>(lo, hi)(gen_);
    }
    double normal() { return std::normal_distribution<double>(0.0, 1.0)(gen_); }
    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen_); }

    Complex phase() { return std::polar(1.0, uniform(-M_PI, M_PI)); }

    ComplexMatrix gaussian(long rows, long cols) {
        ComplexMatrix m(rows, cols);
        for (long i = 0; i < rows; ++i)
            for (long j = 0; j < cols; ++j) m(i, j) = Complex(normal(), normal());
        return m;
    }

    ComplexVector gaussian_vector(long dim) {
        ComplexVector v(dim);
        for (long i = 0; i < dim; ++i) v(i) = Complex(normal(), normal());
        return v;
    }

    ComplexMatrix hermitian(long dim) {
        const ComplexMatrix g = gaussian(dim, dim);
        return (g + g.adjoint()) / 2.0;
    }

    ComplexMatrix density(long dim, long rank = -1) {
        if (rank < 0) rank = dim;
        const ComplexMatrix g = gaussian(dim, rank);
        ComplexMatrix rho = g * g.adjoint();
        return rho / rho.trace().real();
    }

    ComplexMatrix unitary(long dim) {
        const Eigen::MatrixXcd g = gaussian(dim, dim);
        Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
        Eigen::MatrixXcd q = qr.householderQ();
        // fix column phases so the distribution is Haar
        const Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
        for (long j = 0; j < dim; ++j) {
            const Complex d = r(j, j);
            if (std::abs(d) > 0) q.col(j) *= d / std::abs(d);
        }
        return q;
    }

    // 0 <= P <= 1 with a random spectrum.
    ComplexMatrix effect(long dim) {
        const ComplexMatrix u = unitary(dim);
        ComplexMatrix d = ComplexMatrix::Zero(dim, dim);
        for (long i = 0; i < dim; ++i) d(i, i) = uniform();
        return u * d * u.adjoint();
    }

    std::vector<Complex> phases(std::size_t count) {
        std::vector<Complex> out(count);
        for (auto& p : out) p = phase();
        return out;
    }

private:
    std::mt19937_64 gen_;
};

inline double max_abs(const ComplexMatrix& m) { return m.cwiseAbs().maxCoeff(); }

// Index of a multi-index in a big-endian mixed-radix register.
inline long flat_index(const std::vector<int>& digits, const std::vector<int>& dims) {
    long idx = 0;
    for (std::size_t i = 0; i < dims.size(); ++i) idx = idx * dims[i] + digits[i];
    return idx;
}

inline std::vector<int> digits_of(long idx, const std::vector<int>& dims) {
    std::vector<int> d(dims.size());
    for (std::size_t i = dims.size(); i-- > 0;) {
        d[i] = static_cast<int>(idx % dims[i]);
        idx /= dims[i];
    }
    return d;
}

// Plain Kronecker product from the index formula.
inline ComplexMatrix naive_kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (long i = 0; i < a.rows(); ++i)
        for (long j = 0; j < a.cols(); ++j)
            for (long k = 0; k < b.rows(); ++k)
                for (long l = 0; l < b.cols(); ++l)
                    out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
    return out;
}

}  // namespace qtest
