#include "mimogames/linalg.hpp"

#include <cmath>
#include <cstdint>
#include <limits>

#include "mimogames/kernels.hpp"

namespace mimogames {

namespace {

constexpr double kPivotFloor = 1e-14;
constexpr double kSymRelTol = 1e-10;
constexpr int kPowerIterCap = 10000;
constexpr double kRayleighRelTol = 1e-12;

void check_square(const Matrix& a, const char* who) {
    if (a.rows != a.cols || a.rows <= 0)
        throw std::invalid_argument(std::string(who) + ": matrix must be square and nonempty");
}

void check_symmetric(const Matrix& a, const char* who) {
    if (!is_symmetric(a, kSymRelTol))
        throw NotSymmetricError(std::string(who) + ": matrix is not symmetric within tolerance");
}

}  // namespace

Matrix Matrix::identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Vector matvec(const Matrix& a, const Vector& x) {
    if (static_cast<int>(x.size()) != a.cols)
        throw std::invalid_argument("matvec: dimension mismatch");
    Vector y(a.rows);
    kernels::matvec(a.a.data(), a.rows, a.cols, x.data(), y.data());
    return y;
}

Matrix matmul(const Matrix& a, const Matrix& b) {
    if (a.cols != b.rows) throw std::invalid_argument("matmul: dimension mismatch");
    Matrix c(a.rows, b.cols);
    kernels::matmul(a.a.data(), b.a.data(), c.a.data(), a.rows, a.cols, b.cols);
    return c;
}

Matrix transposed(const Matrix& a) {
    Matrix t(a.cols, a.rows);
    for (int i = 0; i < a.rows; ++i)
        for (int j = 0; j < a.cols; ++j) t(j, i) = a(i, j);
    return t;
}

double dot(const Vector& x, const Vector& y) {
    if (x.size() != y.size()) throw std::invalid_argument("dot: dimension mismatch");
    return kernels::dot(x.data(), y.data(), x.size());
}

double norm(const Vector& x) { return std::sqrt(kernels::dot(x.data(), x.data(), x.size())); }

void add_outer(Matrix& a, double alpha, const Vector& x) {
    if (a.rows != a.cols || static_cast<int>(x.size()) != a.rows)
        throw std::invalid_argument("add_outer: dimension mismatch");
    kernels::syr(alpha, x.data(), x.size(), a.a.data());
}

double max_abs(const Matrix& a) {
    double m = 0.0;
    for (double v : a.a) m = std::max(m, std::fabs(v));
    return m;
}

bool is_symmetric(const Matrix& a, double rel_tol) {
    if (a.rows != a.cols) return false;
    const double scale = std::max(max_abs(a), std::numeric_limits<double>::min());
    for (int i = 0; i < a.rows; ++i)
        for (int j = i + 1; j < a.cols; ++j)
            if (std::fabs(a(i, j) - a(j, i)) > rel_tol * scale) return false;
    return true;
}

bool all_finite(const Matrix& a) {
    for (double v : a.a)
        if (!std::isfinite(v)) return false;
    return true;
}

bool all_finite(const Vector& x) {
    for (double v : x)
        if (!std::isfinite(v)) return false;
    return true;
}

CholeskyFactor::CholeskyFactor(const Matrix& a) : n_(a.rows) {
    check_square(a, "cholesky");
    check_symmetric(a, "cholesky");
    l_.assign(static_cast<std::size_t>(n_) * n_, 0.0);
    for (int j = 0; j < n_; ++j) {
        double* lj = l_.data() + static_cast<std::size_t>(j) * n_;
        const double d = a(j, j) - kernels::dot(lj, lj, j);
        if (!(d > kPivotFloor))
            throw NotSpdError("cholesky: non-positive pivot, matrix is not positive definite");
        lj[j] = std::sqrt(d);
        const double inv = 1.0 / lj[j];
        for (int i = j + 1; i < n_; ++i) {
            double* li = l_.data() + static_cast<std::size_t>(i) * n_;
            li[j] = (a(i, j) - kernels::dot(li, lj, j)) * inv;
        }
    }
}

void CholeskyFactor::solve_in_place(double* b) const {
    // L y = b
    for (int i = 0; i < n_; ++i) {
        const double* li = l_.data() + static_cast<std::size_t>(i) * n_;
        b[i] = (b[i] - kernels::dot(li, b, i)) / li[i];
    }
    // L^T x = y
    for (int i = n_ - 1; i >= 0; --i) {
        double s = b[i];
        for (int t = i + 1; t < n_; ++t) s -= l_[static_cast<std::size_t>(t) * n_ + i] * b[t];
        b[i] = s / l_[static_cast<std::size_t>(i) * n_ + i];
    }
}

Vector CholeskyFactor::solve(const Vector& b) const {
    if (static_cast<int>(b.size()) != n_) throw std::invalid_argument("cholesky solve: dimension mismatch");
    Vector x = b;
    solve_in_place(x.data());
    return x;
}

double CholeskyFactor::log_det() const {
    double s = 0.0;
    for (int i = 0; i < n_; ++i) s += std::log(l_[static_cast<std::size_t>(i) * n_ + i]);
    return 2.0 * s;
}

Vector spd_solve(const Matrix& a, const Vector& b) {
    return CholeskyFactor(a).solve(b);
}

double log_det_spd(const Matrix& a) { return CholeskyFactor(a).log_det(); }

namespace {

// splitmix64: source of the deterministic auxiliary restart vectors.
std::uint64_t splitmix64(std::uint64_t& s) {
    std::uint64_t z = (s += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

Vector auxiliary_start(int n, int round) {
    std::uint64_t s = 0x6d696d6f67616d65ULL + static_cast<std::uint64_t>(round);
    Vector v(n);
    for (int i = 0; i < n; ++i) {
        // map to [-1, 1)
        v[i] = static_cast<double>(splitmix64(s) >> 11) * 0x1.0p-52 - 1.0;
    }
    return v;
}

void normalize(Vector& v) {
    const double nv = norm(v);
    if (nv > 0.0) kernels::scal(1.0 / nv, v.data(), v.size());
}

struct PowerRun {
    double rayleigh = 0.0;
    Vector v;
    int iterations = 0;
    bool converged = false;
};

PowerRun power_iterate(const Matrix& b, Vector v, int iter_budget) {
    normalize(v);
    Vector w(v.size());
    double rq_prev = std::numeric_limits<double>::quiet_NaN();
    PowerRun run;
    for (int it = 1; it <= iter_budget; ++it) {
        kernels::matvec(b.a.data(), b.rows, b.cols, v.data(), w.data());
        const double wn = norm(w);
        if (wn == 0.0) {
            // exact null vector: v is an eigenvector with eigenvalue 0
            run.rayleigh = 0.0;
            run.v = std::move(v);
            run.iterations = it;
            run.converged = true;
            return run;
        }
        kernels::scal(1.0 / wn, w.data(), w.size());
        v.swap(w);
        kernels::matvec(b.a.data(), b.rows, b.cols, v.data(), w.data());
        const double rq = kernels::dot(v.data(), w.data(), v.size());
        if (std::isfinite(rq_prev) &&
            std::fabs(rq - rq_prev) <= kRayleighRelTol * std::max(std::fabs(rq), 1e-300)) {
            run.rayleigh = rq;
            run.v = std::move(v);
            run.iterations = it;
            run.converged = true;
            return run;
        }
        rq_prev = rq;
        run.iterations = it;
    }
    run.rayleigh = rq_prev;
    run.v = std::move(v);
    return run;
}

double eig_residual(const Matrix& a, double lambda, const Vector& v) {
    Vector w = matvec(a, v);
    kernels::axpy(-lambda, v.data(), w.data(), w.size());
    return norm(w);
}

}  // namespace

EigenPair dominant_eigenpair(const Matrix& a) {
    check_square(a, "dominant_eigenpair");
    check_symmetric(a, "dominant_eigenpair");
    const int n = a.rows;

    double trace = 0.0;
    for (int i = 0; i < n; ++i) trace += a(i, i);
    const double shift = 1e-12 * std::fabs(trace);  // guards the zero matrix

    Matrix b = a;
    for (int i = 0; i < n; ++i) b(i, i) += shift;

    Vector start(n, 0.0);
    start[0] = 1.0;
    PowerRun main = power_iterate(b, std::move(start), kPowerIterCap);

    // The fixed start can be orthogonal to the dominant eigenspace. Probe
    // from an auxiliary vector; if its Rayleigh quotient climbs above the
    // main run's value, the main run was trapped in a subdominant space and
    // we restart from the probe.
    PowerRun probe = power_iterate(b, auxiliary_start(n, 0), 32);
    if (probe.rayleigh > main.rayleigh * (1.0 + 1e-9) + 1e-300) {
        main = power_iterate(b, std::move(probe.v), kPowerIterCap);
    }

    double lambda = main.rayleigh - shift;
    if (lambda < 0.0 && lambda > -1e-10 * std::max(1.0, std::fabs(trace))) lambda = 0.0;

    EigenPair out;
    out.value = lambda;
    out.vector = std::move(main.v);
    out.iterations = main.iterations;
    out.residual = eig_residual(a, lambda, out.vector);
    if (!main.converged) {
        throw EigenIterationError("dominant_eigenpair: power iteration hit the iteration cap",
                                  out.residual);
    }
    // sign convention: first nonzero component positive
    for (double c : out.vector) {
        if (c != 0.0) {
            if (c < 0.0) kernels::scal(-1.0, out.vector.data(), out.vector.size());
            break;
        }
    }
    return out;
}

}  // namespace mimogames
