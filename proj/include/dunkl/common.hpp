#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace dunkl {

/// Truncation policy shared by every spectral series in the library.
/// A series is declared converged once `consecutive_small` successive terms
/// fall below tol * |partial sum|; this guards the alternating and lacunary
/// series (odd-index coefficients can vanish identically).
struct SeriesControl {
    double tol = 1e-12;
    int max_terms = 400;
    int consecutive_small = 3;
};

/// Value of a truncated series together with truncation diagnostics.
/// Small negative values caused by truncation are clamped to zero by the
/// producing routine and show up here through `clamped`.
struct DensityValue {
    double value = 0.0;
    int terms_used = 0;
    double truncation_bound = 0.0;  // magnitude of the last term taken
    bool clamped = false;
};

class nonconvergence_error : public std::runtime_error {
  public:
    explicit nonconvergence_error(const std::string& what)
        : std::runtime_error(what) {}
};

class regime_error : public std::invalid_argument {
  public:
    explicit regime_error(const std::string& what)
        : std::invalid_argument(what) {}
};

namespace detail {

inline unsigned thread_count() {
    if (const char* env = std::getenv("DUNKL_THREADS")) {
        int n = std::atoi(env);
        if (n >= 1) return static_cast<unsigned>(n);
    }
    unsigned n = std::thread::hardware_concurrency();
    return n == 0 ? 1u : n;
}

/// Static block partition of [0, n).  Workers own disjoint index ranges and
/// write to disjoint slots, so results do not depend on the worker count.
inline void parallel_for(std::size_t n,
                         const std::function<void(std::size_t, std::size_t)>& body) {
    const unsigned workers = std::min<std::size_t>(thread_count(), n == 0 ? 1 : n);
    if (workers <= 1 || n < 2) {
        body(0, n);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const std::size_t chunk = (n + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
        const std::size_t lo = w * chunk;
        const std::size_t hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back(body, lo, hi);
    }
    for (auto& th : pool) th.join();
}

}  // namespace detail

}  // namespace dunkl
