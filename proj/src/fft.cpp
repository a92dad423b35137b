#include "srng/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>

namespace srng {
namespace {

// FFTW plan creation is not thread-safe; execution via fftw_execute_dft is.
// Plans are created once per (n, direction) with FFTW_ESTIMATE (deterministic
// algorithm choice) and FFTW_UNALIGNED so they accept any caller buffer.
class PlanCache {
public:
    fftw_plan get(std::size_t n, bool inverse) {
        std::lock_guard<std::mutex> lock(mutex_);
        auto key = std::make_pair(n, inverse);
        auto it = plans_.find(key);
        if (it != plans_.end()) return it->second;
        std::vector<std::complex<double>> scratch(n);
        fftw_plan plan = fftw_plan_dft_1d(
            static_cast<int>(n), reinterpret_cast<fftw_complex*>(scratch.data()),
            reinterpret_cast<fftw_complex*>(scratch.data()),
            inverse ? FFTW_BACKWARD : FFTW_FORWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
        plans_.emplace(key, plan);
        return plan;
    }

    ~PlanCache() {
        for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
    }

private:
    std::mutex mutex_;
    std::map<std::pair<std::size_t, bool>, fftw_plan> plans_;
};

PlanCache& cache() {
    static PlanCache instance;
    return instance;
}

}  // namespace

void fft_inplace(std::complex<double>* data, std::size_t n, bool inverse) {
    if (n == 0) return;
    fftw_plan plan = cache().get(n, inverse);
    auto* p = reinterpret_cast<fftw_complex*>(data);
    fftw_execute_dft(plan, p, p);
}

void fft_inplace(std::vector<std::complex<double>>& data, bool inverse) {
    fft_inplace(data.data(), data.size(), inverse);
}

}  // namespace srng
