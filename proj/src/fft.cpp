#include <complex>
#include <map>
#include <mutex>
#include <tuple>
#include <vector>

#include <fftw3.h>

#include "viscoplast/field.hpp"

namespace viscoplast {

namespace {

// Plans are created once per (dim, n, sign) under a lock and reused. Planning
// uses FFTW_ESTIMATE so the algorithm choice depends only on the size, which
// keeps repeated runs bit-identical, and FFTW_UNALIGNED so the plan executes
// on any caller buffer.
class PlanCache {
  public:
    static PlanCache& instance() {
        static PlanCache cache;
        return cache;
    }

    fftw_plan get(const PeriodicGrid& grid, int sign) {
        const std::tuple<int, int, int> key{grid.dim, grid.n, sign};
        std::lock_guard<std::mutex> lock(mutex_);
        auto it = plans_.find(key);
        if (it != plans_.end())
            return it->second;
        std::vector<std::complex<double>> scratch(static_cast<size_t>(grid.num_nodes()));
        int dims[3] = {grid.n, grid.n, grid.n};
        fftw_plan plan = fftw_plan_dft(
            grid.dim, dims, reinterpret_cast<fftw_complex*>(scratch.data()),
            reinterpret_cast<fftw_complex*>(scratch.data()), sign,
            FFTW_ESTIMATE | FFTW_UNALIGNED);
        plans_.emplace(key, plan);
        return plan;
    }

  private:
    PlanCache() = default;
    std::mutex mutex_;
    std::map<std::tuple<int, int, int>, fftw_plan> plans_;
};

} // namespace

std::vector<std::complex<double>> forward_fft(const PeriodicGrid& grid, const double* comp) {
    const auto nn = static_cast<size_t>(grid.num_nodes());
    std::vector<std::complex<double>> spectrum(nn);
    for (size_t i = 0; i < nn; ++i)
        spectrum[i] = comp[i];
    fftw_plan plan = PlanCache::instance().get(grid, FFTW_FORWARD);
    fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(spectrum.data()),
                     reinterpret_cast<fftw_complex*>(spectrum.data()));
    return spectrum;
}

void inverse_fft(const PeriodicGrid& grid, std::vector<std::complex<double>>& spectrum,
                 double* out) {
    fftw_plan plan = PlanCache::instance().get(grid, FFTW_BACKWARD);
    fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(spectrum.data()),
                     reinterpret_cast<fftw_complex*>(spectrum.data()));
    const double scale = 1.0 / static_cast<double>(grid.num_nodes());
    const auto nn = static_cast<size_t>(grid.num_nodes());
    for (size_t i = 0; i < nn; ++i)
        out[i] = spectrum[i].real() * scale;
}

} // namespace viscoplast
