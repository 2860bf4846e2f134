#include "gcm/linalg.hpp"

#include "gcm/error.hpp"

#include <cmath>
#include <sstream>

namespace gcm {

std::vector<double> JitterPolicy::ladder() const {
    if (!(start > 0.0) || !(factor > 1.0) || !(max >= start)) {
        throw Error(ErrorCode::InvalidArgument, "jitter policy needs start > 0, factor > 1, max >= start");
    }
    std::vector<double> steps{0.0};
    // Slack keeps 1e-10 * 10^4 from missing 1e-6 by one ulp.
    for (double j = start; j <= max * (1.0 + 1e-9); j *= factor) steps.push_back(j);
    return steps;
}

CholeskyFactor::CholeskyFactor(Matrix lower) : lower_(std::move(lower)) {
    const std::size_t n = lower_.rows();
    if (lower_.cols() != n) throw Error(ErrorCode::InvalidArgument, "Cholesky factor must be square");
    for (std::size_t i = 0; i < n; ++i) {
        if (!(lower_(i, i) > 0.0)) throw Error(ErrorCode::InvalidArgument, "Cholesky diagonal must be positive");
        for (std::size_t j = i + 1; j < n; ++j) {
            if (lower_(i, j) != 0.0) throw Error(ErrorCode::InvalidArgument, "Cholesky factor must be lower-triangular");
        }
    }
}

Matrix CholeskyFactor::reconstruct() const {
    const std::size_t n = dim();
    Matrix out(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            double s = 0.0;
            for (std::size_t k = 0; k <= j; ++k) s += lower_(i, k) * lower_(j, k);
            out(i, j) = s;
            out(j, i) = s;
        }
    }
    return out;
}

CholeskyFactor CholeskyFactor::scaled(double s) const {
    Matrix m = lower_;
    for (double& v : m.data()) v *= s;
    return CholeskyFactor(std::move(m));
}

std::optional<CholeskyFactor> try_cholesky(const Matrix& a, double jitter) {
    const std::size_t n = a.rows();
    if (a.cols() != n) throw Error(ErrorCode::InvalidArgument, "Cholesky input must be square");
    Matrix l(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        const double diag = a(j, j) + jitter;
        double pivot = diag;
        const auto lj = l.row(j);
        for (std::size_t k = 0; k < j; ++k) pivot -= lj[k] * lj[k];
        if (!(pivot > kPivotFloor * diag)) return std::nullopt;
        const double ljj = std::sqrt(pivot);
        l(j, j) = ljj;
        for (std::size_t i = j + 1; i < n; ++i) {
            const auto li = l.row(i);
            double s = a(i, j);
            for (std::size_t k = 0; k < j; ++k) s -= li[k] * lj[k];
            li[j] = s / ljj;
        }
    }
    return CholeskyFactor(std::move(l));
}

CholeskyResult cholesky(const CorrMatrix& c, const JitterPolicy& policy) {
    for (double jitter : policy.ladder()) {
        if (auto factor = try_cholesky(c.matrix(), jitter)) return {std::move(*factor), jitter};
    }
    std::ostringstream msg;
    msg << "correlation matrix is not positive semi-definite (Cholesky failed at jitter " << policy.max
        << ")";
    throw Error(ErrorCode::NotPositiveSemiDefinite, msg.str());
}

void solve_rows_lower_transpose(Matrix& rows, const CholeskyFactor& factor) {
    const std::size_t n = factor.dim();
    if (rows.cols() != n) throw Error(ErrorCode::LengthMismatch, "triangular solve shape mismatch");
    const Matrix& l = factor.lower();
    for (std::size_t r = 0; r < rows.rows(); ++r) {
        auto y = rows.row(r);
        for (std::size_t i = 0; i < n; ++i) {
            const auto li = l.row(i);
            double s = y[i];
            for (std::size_t k = 0; k < i; ++k) s -= li[k] * y[k];
            y[i] = s / li[i];
        }
    }
}

EigenResult smallest_eigenpair(const Matrix& symmetric) {
    const std::size_t n = symmetric.rows();
    if (symmetric.cols() != n || n == 0) {
        throw Error(ErrorCode::InvalidArgument, "eigenpair needs a nonempty square matrix");
    }
    Matrix a = symmetric;
    Matrix v = Matrix::identity(n);

    double frob = 0.0;
    for (double x : a.data()) frob += x * x;
    frob = std::sqrt(frob);
    const double target = 1e-12 * frob;

    auto off_norm = [&] {
        double s = 0.0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) s += 2.0 * a(p, q) * a(p, q);
        return std::sqrt(s);
    };

    const std::size_t cap = 100 * n * n;
    std::size_t rotations = 0;
    while (off_norm() > target) {
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (apq == 0.0) continue;
                if (++rotations > cap) {
                    throw Error(ErrorCode::ConvergenceFailure,
                                "Jacobi eigensolver exceeded " + std::to_string(cap) + " rotations");
                }
                const double theta = 0.5 * (a(q, q) - a(p, p)) / apq;
                double t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                if (theta < 0.0) t = -t;
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;

                a(p, p) -= t * apq;
                a(q, q) += t * apq;
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                for (std::size_t r = 0; r < n; ++r) {
                    if (r == p || r == q) continue;
                    const double arp = a(r, p);
                    const double arq = a(r, q);
                    a(r, p) = a(p, r) = c * arp - s * arq;
                    a(r, q) = a(q, r) = s * arp + c * arq;
                }
                for (std::size_t r = 0; r < n; ++r) {
                    const double vrp = v(r, p);
                    const double vrq = v(r, q);
                    v(r, p) = c * vrp - s * vrq;
                    v(r, q) = s * vrp + c * vrq;
                }
            }
        }
    }

    std::size_t best = 0;
    for (std::size_t i = 1; i < n; ++i) {
        if (a(i, i) < a(best, best)) best = i;
    }
    EigenResult result{a(best, best), v.column(best)};
    double norm = 0.0;
    for (double x : result.eigvec_min) norm += x * x;
    norm = std::sqrt(norm);
    for (double& x : result.eigvec_min) x /= norm;
    return result;
}

}  // namespace gcm
