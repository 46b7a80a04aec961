#include "specdim/logdomain.hpp"

#include <algorithm>

namespace specdim {

double log_sum_exp_serial(const double* v, std::size_t n) {
    if (n == 0) return kNegInf;
    double hi = kNegInf;
    for (std::size_t i = 0; i < n; ++i) hi = std::max(hi, v[i]);
    if (hi == kNegInf) return kNegInf;
    if (hi == kPosInf) return kPosInf;
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += std::exp(v[i] - hi);
    return hi + std::log(acc);
}

namespace {
constexpr std::size_t kChunk = 4096;  // fixed chunk grid keeps reductions deterministic
}

double log_sum_exp(const double* v, std::size_t n) {
    if (n <= kChunk) return log_sum_exp_serial(v, n);
    const std::size_t nchunks = (n + kChunk - 1) / kChunk;
    std::vector<double> partial(nchunks);
#pragma omp parallel for schedule(static)
    for (long long c = 0; c < static_cast<long long>(nchunks); ++c) {
        const std::size_t lo = static_cast<std::size_t>(c) * kChunk;
        const std::size_t hi = std::min(lo + kChunk, n);
        partial[static_cast<std::size_t>(c)] = log_sum_exp_serial(v + lo, hi - lo);
    }
    return log_sum_exp_serial(partial.data(), partial.size());
}

}  // namespace specdim
