#include "qhedge/linops.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "qhedge/errors.hpp"

namespace qhedge {

namespace {

void require_square(const ComplexMatrix& m, const char* what) {
    if (m.rows() != m.cols()) {
        throw DimensionMismatch(std::string(what) + ": matrix is " + std::to_string(m.rows()) +
                                "x" + std::to_string(m.cols()) + ", expected square");
    }
}

void require_dims(const ComplexMatrix& m, const TensorDims& dims, const char* what) {
    dims.validate();
    require_square(m, what);
    if (m.rows() != dims.total()) {
        throw DimensionMismatch(std::string(what) + ": tensor factors multiply to " +
                                std::to_string(dims.total()) + " but matrix has dimension " +
                                std::to_string(m.rows()));
    }
}

// Maps every basis index to its position after the factor permutation.
std::vector<long> permutation_index_map(const TensorDims& dims, std::span<const int> perm) {
    const std::size_t m = dims.size();
    if (perm.size() != m) {
        throw DimensionMismatch("permute_subsystems: permutation length differs from factor count");
    }
    std::vector<int> seen(m, 0);
    for (int p : perm) {
        if (p < 0 || static_cast<std::size_t>(p) >= m || seen[p]++) {
            throw ContractViolation("permute_subsystems: not a permutation");
        }
    }
    // Strides of the old and new layouts.
    std::vector<long> old_stride(m), new_stride(m);
    long s = 1;
    for (std::size_t j = m; j-- > 0;) {
        old_stride[j] = s;
        s *= dims.factors[j];
    }
    s = 1;
    for (std::size_t j = m; j-- > 0;) {
        new_stride[j] = s;
        s *= dims.factors[perm[j]];
    }
    // New factor j is old factor perm[j], so old digit perm[j] goes to new position j.
    std::vector<long> stride_for_old(m);
    for (std::size_t j = 0; j < m; ++j) stride_for_old[perm[j]] = new_stride[j];

    const long total = dims.total();
    std::vector<long> map(total);
    for (long idx = 0; idx < total; ++idx) {
        long rem = idx;
        long out = 0;
        for (std::size_t j = 0; j < m; ++j) {
            const long digit = rem / old_stride[j];
            rem %= old_stride[j];
            out += digit * stride_for_old[j];
        }
        map[idx] = out;
    }
    return map;
}

}  // namespace

TensorDims TensorDims::uniform(int local, int count) {
    return TensorDims(std::vector<int>(static_cast<std::size_t>(count), local));
}

long TensorDims::total() const {
    long t = 1;
    for (int f : factors) t *= f;
    return t;
}

void TensorDims::validate() const {
    if (factors.empty()) throw DimensionMismatch("TensorDims: no factors");
    for (int f : factors) {
        if (f <= 0) throw DimensionMismatch("TensorDims: factors must be positive");
    }
}

ComplexMatrix identity(long dim) { return ComplexMatrix::Identity(dim, dim); }

ComplexMatrix outer(const ComplexVector& v) { return v * v.adjoint(); }

ComplexMatrix outer(const ComplexVector& a, const ComplexVector& b) { return a * b.adjoint(); }

ComplexVector basis_ket(long dim, long index) {
    if (index < 0 || index >= dim) throw DimensionMismatch("basis_ket: index out of range");
    ComplexVector v = ComplexVector::Zero(dim);
    v(index) = 1.0;
    return v;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

ComplexVector kron(const ComplexVector& a, const ComplexVector& b) {
    ComplexVector out(a.size() * b.size());
    for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
    return out;
}

ComplexMatrix kron_all(std::span<const ComplexMatrix> factors) {
    if (factors.empty()) throw DimensionMismatch("kron_all: no factors");
    ComplexMatrix out = factors.front();
    for (std::size_t i = 1; i < factors.size(); ++i) out = kron(out, factors[i]);
    return out;
}

ComplexMatrix kron_power(const ComplexMatrix& a, int n) {
    if (n < 1) throw ParameterOutOfRange("kron_power: n must be >= 1");
    ComplexMatrix out = a;
    for (int i = 1; i < n; ++i) out = kron(out, a);
    return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& m, const TensorDims& dims,
                            std::span<const int> traced) {
    require_dims(m, dims, "partial_trace");
    const std::size_t nf = dims.size();
    std::vector<char> is_traced(nf, 0);
    for (int t : traced) {
        if (t < 0 || static_cast<std::size_t>(t) >= nf) {
            throw DimensionMismatch("partial_trace: traced factor index out of range");
        }
        is_traced[t] = 1;
    }
    // Move kept factors to the front, traced to the back; then the trace is a block sum.
    std::vector<int> perm;
    for (std::size_t j = 0; j < nf; ++j) if (!is_traced[j]) perm.push_back(static_cast<int>(j));
    long traced_dim = 1;
    for (std::size_t j = 0; j < nf; ++j) {
        if (is_traced[j]) {
            perm.push_back(static_cast<int>(j));
            traced_dim *= dims.factors[j];
        }
    }
    const long kept_dim = dims.total() / traced_dim;
    const std::vector<long> map = permutation_index_map(dims, perm);
    // inverse map: permuted index -> original index
    std::vector<long> inv(map.size());
    for (std::size_t i = 0; i < map.size(); ++i) inv[map[i]] = static_cast<long>(i);

    ComplexMatrix out = ComplexMatrix::Zero(kept_dim, kept_dim);
    for (long r = 0; r < kept_dim; ++r) {
        for (long c = 0; c < kept_dim; ++c) {
            Complex acc = 0.0;
            for (long t = 0; t < traced_dim; ++t) {
                acc += m(inv[r * traced_dim + t], inv[c * traced_dim + t]);
            }
            out(r, c) = acc;
        }
    }
    return out;
}

ComplexMatrix permute_subsystems(const ComplexMatrix& m, const TensorDims& dims,
                                 std::span<const int> perm) {
    require_dims(m, dims, "permute_subsystems");
    const std::vector<long> map = permutation_index_map(dims, perm);
    const long n = dims.total();
    ComplexMatrix out(n, n);
    for (long i = 0; i < n; ++i) {
        for (long j = 0; j < n; ++j) out(map[i], map[j]) = m(i, j);
    }
    return out;
}

ComplexVector permute_subsystems(const ComplexVector& v, const TensorDims& dims,
                                 std::span<const int> perm) {
    dims.validate();
    if (v.size() != dims.total()) throw DimensionMismatch("permute_subsystems: vector length");
    const std::vector<long> map = permutation_index_map(dims, perm);
    ComplexVector out(v.size());
    for (long i = 0; i < v.size(); ++i) out(map[i]) = v(i);
    return out;
}

double inner_product(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw DimensionMismatch("inner_product: shape mismatch");
    }
    return (a.conjugate().array() * b.array()).sum().real();
}

bool is_hermitian(const ComplexMatrix& m, double tol) {
    if (m.rows() != m.cols()) return false;
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = i; j < m.cols(); ++j) {
            if (std::abs(m(i, j) - std::conj(m(j, i))) > tol * scale) return false;
        }
    }
    return m.allFinite();
}

bool is_unitary(const ComplexMatrix& u, double tol) {
    if (u.rows() != u.cols()) return false;
    return ((u.adjoint() * u) - identity(u.rows())).cwiseAbs().maxCoeff() <= tol;
}

ComplexMatrix hermitian_part(const ComplexMatrix& m) {
    require_square(m, "hermitian_part");
    return 0.5 * (m + m.adjoint());
}

EigenDecomposition herm_eigen(const ComplexMatrix& m) {
    require_square(m, "herm_eigen");
    if (!is_hermitian(m)) throw ContractViolation("herm_eigen: matrix is not Hermitian");

    const Eigen::Index n = m.rows();
    // Column-major working copy; the rotations touch whole rows and columns.
    Eigen::MatrixXcd a = hermitian_part(m);
    Eigen::MatrixXcd v = Eigen::MatrixXcd::Identity(n, n);
    for (Eigen::Index i = 0; i < n; ++i) a(i, i) = a(i, i).real();

    const double frob = a.norm();
    constexpr int kMaxSweeps = 100;
    constexpr double kEps = std::numeric_limits<double>::epsilon();

    for (int sweep = 0; sweep < kMaxSweeps && frob > 0.0; ++sweep) {
        double off = 0.0;
        for (Eigen::Index p = 0; p < n; ++p) {
            for (Eigen::Index q = p + 1; q < n; ++q) off += std::norm(a(p, q));
        }
        if (std::sqrt(2.0 * off) <= kEps * frob) break;

        for (Eigen::Index p = 0; p < n - 1; ++p) {
            for (Eigen::Index q = p + 1; q < n; ++q) {
                const double r = std::abs(a(p, q));
                if (r == 0.0) continue;
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                // Negligible against both diagonal entries: drop it.
                if (sweep > 3 && r < kEps * 1e-2 * std::abs(app) && r < kEps * 1e-2 * std::abs(aqq)) {
                    a(p, q) = a(q, p) = 0.0;
                    continue;
                }
                const Complex phase = a(p, q) / r;
                const double theta = (aqq - app) / (2.0 * r);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                const Complex pc = std::conj(phase);
                // G restricted to (p,q): [[c, s], [-s*conj(phase), c*conj(phase)]].
                for (Eigen::Index k = 0; k < n; ++k) {
                    const Complex akp = a(k, p);
                    const Complex akq = a(k, q);
                    a(k, p) = c * akp - s * pc * akq;
                    a(k, q) = s * akp + c * pc * akq;
                }
                for (Eigen::Index k = 0; k < n; ++k) {
                    const Complex apk = a(p, k);
                    const Complex aqk = a(q, k);
                    a(p, k) = c * apk - s * phase * aqk;
                    a(q, k) = s * apk + c * phase * aqk;
                }
                a(p, q) = a(q, p) = 0.0;
                a(p, p) = app - t * r;
                a(q, q) = aqq + t * r;
                for (Eigen::Index k = 0; k < n; ++k) {
                    const Complex vkp = v(k, p);
                    const Complex vkq = v(k, q);
                    v(k, p) = c * vkp - s * pc * vkq;
                    v(k, q) = s * vkp + c * pc * vkq;
                }
            }
        }
    }

    std::vector<Eigen::Index> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](Eigen::Index x, Eigen::Index y) {
        return a(x, x).real() < a(y, y).real();
    });
    EigenDecomposition out;
    out.values.resize(n);
    out.vectors.resize(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        out.values[j] = a(order[j], order[j]).real();
        out.vectors.col(j) = v.col(order[j]);
    }
    return out;
}

double op_norm(const ComplexMatrix& m) {
    const auto eig = herm_eigen(m);
    if (eig.values.empty()) return 0.0;
    return std::max(std::abs(eig.values.front()), std::abs(eig.values.back()));
}

double min_eigenvalue(const ComplexMatrix& m) {
    const auto eig = herm_eigen(m);
    if (eig.values.empty()) throw DimensionMismatch("min_eigenvalue: empty matrix");
    return eig.values.front();
}

namespace {

ComplexMatrix spectral_map(const EigenDecomposition& eig, const std::vector<double>& mapped) {
    const Eigen::Index n = eig.vectors.rows();
    ComplexMatrix out = ComplexMatrix::Zero(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        if (mapped[j] == 0.0) continue;
        out += mapped[j] * (eig.vectors.col(j) * eig.vectors.col(j).adjoint());
    }
    return hermitian_part(out);
}

double spectral_scale(const EigenDecomposition& eig) {
    double s = 0.0;
    for (double l : eig.values) s = std::max(s, std::abs(l));
    return s;
}

}  // namespace

ComplexMatrix psd_pinv_sqrt(const ComplexMatrix& p, double rank_tol) {
    const auto eig = herm_eigen(p);
    const double cut = rank_tol * spectral_scale(eig);
    std::vector<double> mapped(eig.values.size(), 0.0);
    for (std::size_t j = 0; j < eig.values.size(); ++j) {
        const double l = eig.values[j];
        if (l < -cut) {
            throw NotPsdError("psd_pinv_sqrt: eigenvalue " + std::to_string(l) + " is negative");
        }
        if (l > cut) mapped[j] = 1.0 / std::sqrt(l);
    }
    return spectral_map(eig, mapped);
}

ComplexMatrix support_projector(const ComplexMatrix& p, double rank_tol) {
    const auto eig = herm_eigen(p);
    const double cut = rank_tol * spectral_scale(eig);
    std::vector<double> mapped(eig.values.size(), 0.0);
    for (std::size_t j = 0; j < eig.values.size(); ++j) {
        if (eig.values[j] > cut) mapped[j] = 1.0;
    }
    return spectral_map(eig, mapped);
}

ComplexMatrix choi_of_unitary(const ComplexMatrix& u) {
    require_square(u, "choi_of_unitary");
    if (!is_unitary(u)) throw ContractViolation("choi_of_unitary: matrix is not unitary");
    // vec(U) with (output, input) ordering is the row-major flattening of U.
    const Eigen::Index d = u.rows();
    ComplexVector vec(d * d);
    for (Eigen::Index y = 0; y < d; ++y) {
        for (Eigen::Index x = 0; x < d; ++x) vec(y * d + x) = u(y, x);
    }
    return outer(vec);
}

ComplexMatrix choi_apply(const ComplexMatrix& choi, const TensorDims& dims, const ComplexMatrix& z) {
    if (dims.size() != 2) throw DimensionMismatch("choi_apply: dims must be {dim_out, dim_in}");
    require_dims(choi, dims, "choi_apply");
    const long d_out = dims.factors[0];
    const long d_in = dims.factors[1];
    if (z.rows() != d_in || z.cols() != d_in) {
        throw DimensionMismatch("choi_apply: argument does not act on the input space");
    }
    ComplexMatrix out = ComplexMatrix::Zero(d_out, d_out);
    for (long y = 0; y < d_out; ++y) {
        for (long yp = 0; yp < d_out; ++yp) {
            Complex acc = 0.0;
            for (long x = 0; x < d_in; ++x) {
                for (long xp = 0; xp < d_in; ++xp) {
                    acc += choi(y * d_in + x, yp * d_in + xp) * z(x, xp);
                }
            }
            out(y, yp) = acc;
        }
    }
    return out;
}

}  // namespace qhedge
