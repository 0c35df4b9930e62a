/* kernels.cpp
 *
 * Scalar reference kernels and the runtime lane dispatch. The AVX2 lane
 * lives in kernels_avx2.cpp, compiled with -mavx2 -mfma and only wired in
 * when the CPU reports support.
 */
#include "mimogames/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <cstring>
#include <stdexcept>

namespace mimogames::kernels {

namespace scalar {

double dot(const double* x, const double* y, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += x[i] * y[i];
    return acc;
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void scal(double alpha, double* x, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) x[i] *= alpha;
}

void matvec(const double* a, std::size_t rows, std::size_t cols,
            const double* x, double* y) {
    for (std::size_t i = 0; i < rows; ++i) y[i] = dot(a + i * cols, x, cols);
}

void syr(double alpha, const double* x, std::size_t n, double* a) {
    for (std::size_t i = 0; i < n; ++i) {
        const double axi = alpha * x[i];
        double* row = a + i * n;
        for (std::size_t j = 0; j < n; ++j) row[j] += axi * x[j];
    }
}

void matmul(const double* a, const double* b, double* c,
            std::size_t m, std::size_t k, std::size_t n) {
    std::memset(c, 0, m * n * sizeof(double));
    for (std::size_t i = 0; i < m; ++i) {
        double* crow = c + i * n;
        for (std::size_t t = 0; t < k; ++t) {
            const double ait = a[i * k + t];
            const double* brow = b + t * n;
            for (std::size_t j = 0; j < n; ++j) crow[j] += ait * brow[j];
        }
    }
}

}  // namespace scalar

namespace {

const KernelTable kScalarTable = {
    scalar::dot, scalar::axpy, scalar::scal,
    scalar::matvec, scalar::syr, scalar::matmul,
};

bool cpu_has_avx2_fma() {
#if defined(__x86_64__) || defined(__i386__)
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

struct Dispatch {
    const KernelTable* table;
    Lane lane;
};

Dispatch resolve_initial() {
    Lane want = Lane::avx2;
    if (const char* env = std::getenv("MIMOGAMES_SIMD")) {
        if (std::strcmp(env, "scalar") == 0) want = Lane::scalar;
        // "avx2" and "auto" both try the SIMD lane first
    }
    if (want == Lane::avx2) {
        if (const KernelTable* t = lane_table(Lane::avx2)) return {t, Lane::avx2};
    }
    return {&kScalarTable, Lane::scalar};
}

std::atomic<const KernelTable*> g_table{nullptr};
std::atomic<Lane> g_lane{Lane::scalar};

const KernelTable* table() {
    const KernelTable* t = g_table.load(std::memory_order_acquire);
    if (!t) {
        Dispatch d = resolve_initial();
        g_lane.store(d.lane, std::memory_order_relaxed);
        g_table.store(d.table, std::memory_order_release);
        t = d.table;
    }
    return t;
}

}  // namespace

const KernelTable* lane_table(Lane lane) {
    if (lane == Lane::scalar) return &kScalarTable;
#if defined(MIMOGAMES_HAVE_AVX2_LANE)
    extern const KernelTable* avx2_kernel_table();
    if (cpu_has_avx2_fma()) return avx2_kernel_table();
#endif
    return nullptr;
}

bool lane_available(Lane lane) { return lane_table(lane) != nullptr; }

Lane active_lane() {
    table();
    return g_lane.load(std::memory_order_relaxed);
}

const char* lane_name(Lane lane) {
    switch (lane) {
        case Lane::scalar: return "scalar";
        case Lane::avx2: return "avx2";
    }
    return "unknown";
}

void force_lane(Lane lane) {
    const KernelTable* t = lane_table(lane);
    if (!t) throw std::runtime_error(std::string("kernel lane unavailable: ") + lane_name(lane));
    g_lane.store(lane, std::memory_order_relaxed);
    g_table.store(t, std::memory_order_release);
}

double dot(const double* x, const double* y, std::size_t n) { return table()->dot(x, y, n); }
void axpy(double alpha, const double* x, double* y, std::size_t n) { table()->axpy(alpha, x, y, n); }
void scal(double alpha, double* x, std::size_t n) { table()->scal(alpha, x, n); }
void matvec(const double* a, std::size_t rows, std::size_t cols, const double* x, double* y) {
    table()->matvec(a, rows, cols, x, y);
}
void syr(double alpha, const double* x, std::size_t n, double* a) { table()->syr(alpha, x, n, a); }
void matmul(const double* a, const double* b, double* c,
            std::size_t m, std::size_t k, std::size_t n) {
    table()->matmul(a, b, c, m, k, n);
}

}  // namespace mimogames::kernels
