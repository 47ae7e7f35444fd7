#pragma once

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace radstri {

inline constexpr double pi = 3.14159265358979323846;
inline constexpr double inf = std::numeric_limits<double>::infinity();

// ---------------------------------------------------------------------------
// Error types. Operations throw these instead of returning sentinel values;
// the CLI maps them onto exit codes.
// ---------------------------------------------------------------------------

struct InputError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct DomainError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Requested integral does not converge (weight exponent out of range, etc).
struct DivergentIntegralError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Input is identically zero (or otherwise degenerate) where a ratio needs it.
struct DegenerateInputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Frequency requested beyond the reliable spectral band.
struct BandLimitError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// An internal accuracy budget could not be met.
struct AccuracyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// (t, r) outside the validity region of a representation or bound.
struct RegionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Exponent tuple violates the defining relation of an estimate.
struct EstimateSpecError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// ---------------------------------------------------------------------------

/// Surface area of the unit sphere S^{n-1} in R^n; n = 1 gives 2 (two points).
inline double sphere_area(int n) {
    if (n < 1) throw DomainError("sphere_area: dimension must be >= 1");
    if (n == 1) return 2.0;
    return 2.0 * std::pow(pi, 0.5 * n) / std::tgamma(0.5 * n);
}

inline double relative_error(double got, double expected) {
    const double scale = std::max(std::abs(expected), 1e-300);
    return std::abs(got - expected) / scale;
}

/// Thread budget: RADSTRI_THREADS if set, else hardware concurrency.
inline unsigned thread_budget() {
    if (const char* env = std::getenv("RADSTRI_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v >= 1) return static_cast<unsigned>(v);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw ? hw : 1u;
}

/// Runs body(i) for i in [0, count). Results must be written to per-index
/// slots; the caller merges in index order, so output is deterministic.
inline void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body) {
    const unsigned nthreads = std::min<std::size_t>(thread_budget(), count ? count : 1);
    if (nthreads <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(nthreads);
    std::atomic_size_t next{0};
    for (unsigned t = 0; t < nthreads; ++t) {
        pool.emplace_back([&] {
            for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) body(i);
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace radstri
