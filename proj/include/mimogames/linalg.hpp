/* linalg.hpp
 *
 * Small dense real matrix/vector kernel: products, SPD factorization and
 * solve, log-determinant, and the dominant symmetric eigenpair. Everything
 * the game math needs and nothing more; matrices here are at most a few
 * antennas wide, so all storage is dense row-major.
 */
#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace mimogames {

using Vector = std::vector<double>;

struct Matrix {
    int rows = 0;
    int cols = 0;
    std::vector<double> a;  // row-major, rows*cols entries

    Matrix() = default;
    Matrix(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c, 0.0) {}

    double& operator()(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
    double operator()(int i, int j) const { return a[static_cast<std::size_t>(i) * cols + j]; }

    const double* row(int i) const { return a.data() + static_cast<std::size_t>(i) * cols; }
    double* row(int i) { return a.data() + static_cast<std::size_t>(i) * cols; }

    static Matrix identity(int n);
};

// Thrown when a matrix fails the symmetry precondition.
struct NotSymmetricError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Thrown when a Cholesky pivot falls below the positive-definiteness floor.
struct NotSpdError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Thrown when power iteration exhausts its iteration cap.
struct EigenIterationError : std::runtime_error {
    double residual;
    EigenIterationError(const std::string& what, double res)
        : std::runtime_error(what), residual(res) {}
};

// Basic products (kernel-backed).
Vector matvec(const Matrix& a, const Vector& x);
Matrix matmul(const Matrix& a, const Matrix& b);
Matrix transposed(const Matrix& a);
double dot(const Vector& x, const Vector& y);
double norm(const Vector& x);
void add_outer(Matrix& a, double alpha, const Vector& x);  // a += alpha x x^T
double max_abs(const Matrix& a);
bool is_symmetric(const Matrix& a, double rel_tol = 1e-10);
bool all_finite(const Matrix& a);
bool all_finite(const Vector& x);

// Lower-triangular Cholesky factor of an SPD matrix; reusable for several
// right-hand sides and for the log-determinant.
class CholeskyFactor {
  public:
    explicit CholeskyFactor(const Matrix& a);  // throws NotSymmetricError / NotSpdError

    int dim() const { return n_; }
    void solve_in_place(double* b) const;  // b <- A^{-1} b
    Vector solve(const Vector& b) const;
    double log_det() const;  // log det A

  private:
    int n_;
    std::vector<double> l_;  // row-major lower factor
};

// x with A x = b for symmetric positive-definite A.
Vector spd_solve(const Matrix& a, const Vector& b);

// log det A via Cholesky (no explicit determinant overflow).
double log_det_spd(const Matrix& a);

struct EigenPair {
    double value = 0.0;
    Vector vector;
    int iterations = 0;
    double residual = 0.0;  // ||A v - value v||
};

// Dominant eigenpair of a symmetric PSD matrix by shifted power iteration.
// Deterministic: fixed start vector, fixed auxiliary restart sequence, and
// sign convention "first nonzero component positive".
EigenPair dominant_eigenpair(const Matrix& a);

}  // namespace mimogames
