/* kernels.hpp
 *
 * Data-parallel inner loops shared by the linear algebra and game solvers:
 * dot, axpy, scal, dense matrix-vector, symmetric rank-1 update, and a
 * small dense matmul. A scalar reference implementation always exists;
 * an AVX2+FMA variant is selected at runtime when the CPU supports it.
 * The active lane can be forced with the MIMOGAMES_SIMD environment
 * variable ("scalar", "avx2", "auto") or programmatically via force_lane().
 */
#pragma once

#include <cstddef>
#include <string>

namespace mimogames::kernels {

enum class Lane { scalar, avx2 };

// Table of kernel entry points for one lane.
struct KernelTable {
    double (*dot)(const double*, const double*, std::size_t);
    void (*axpy)(double, const double*, double*, std::size_t);
    void (*scal)(double, double*, std::size_t);
    // y = A x, A row-major rows x cols
    void (*matvec)(const double*, std::size_t, std::size_t, const double*, double*);
    // A += alpha * x x^T, A row-major n x n (full matrix updated)
    void (*syr)(double, const double*, std::size_t, double*);
    // C = A B, row-major, A m x k, B k x n, C m x n
    void (*matmul)(const double*, const double*, double*,
                   std::size_t, std::size_t, std::size_t);
};

// Lane currently used by the free functions below.
Lane active_lane();
const char* lane_name(Lane lane);

// Returns true if the lane is compiled in and usable on this CPU.
bool lane_available(Lane lane);

// Override the dispatch (tests, reproducibility studies). Throws
// std::runtime_error if the lane is unavailable.
void force_lane(Lane lane);

// Access to a specific lane's table; nullptr when unavailable.
const KernelTable* lane_table(Lane lane);

double dot(const double* x, const double* y, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
void scal(double alpha, double* x, std::size_t n);
void matvec(const double* a, std::size_t rows, std::size_t cols,
            const double* x, double* y);
void syr(double alpha, const double* x, std::size_t n, double* a);
void matmul(const double* a, const double* b, double* c,
            std::size_t m, std::size_t k, std::size_t n);

}  // namespace mimogames::kernels
