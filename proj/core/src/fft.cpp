#include "epsqp/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>

namespace epsqp::fft {
namespace {

// FFTW's planner is not thread-safe but executing a plan is, so plans are
// created once per layout under a lock and reused with fftw_execute_dft.
// FFTW_ESTIMATE keeps the chosen algorithm (and so every result bit)
// independent of timing measurements.
struct PlanKey {
    int rank;
    std::size_t n0, n1, howmany, stride, dist;
    int sign;
    auto tie() const { return std::tie(rank, n0, n1, howmany, stride, dist, sign); }
    bool operator<(const PlanKey& o) const { return tie() < o.tie(); }
};

class PlanCache {
public:
    ~PlanCache() {
        for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
    }

    fftw_plan get(const PlanKey& key) {
        std::lock_guard lock(mutex_);
        if (auto it = plans_.find(key); it != plans_.end()) return it->second;
        const std::size_t total = key.rank == 2 ? key.n0 * key.n1
                                                : (key.howmany - 1) * key.dist + (key.n0 - 1) * key.stride + 1;
        auto* scratch = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * total));
        if (scratch == nullptr) throw std::bad_alloc();
        const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
        fftw_plan plan = nullptr;
        if (key.rank == 2) {
            plan = fftw_plan_dft_2d(static_cast<int>(key.n0), static_cast<int>(key.n1), scratch, scratch,
                                    key.sign, flags);
        } else {
            const int n = static_cast<int>(key.n0);
            plan = fftw_plan_many_dft(1, &n, static_cast<int>(key.howmany), scratch, nullptr,
                                      static_cast<int>(key.stride), static_cast<int>(key.dist), scratch,
                                      nullptr, static_cast<int>(key.stride), static_cast<int>(key.dist),
                                      key.sign, flags);
        }
        fftw_free(scratch);
        if (plan == nullptr) throw std::runtime_error("fft: FFTW failed to create a plan");
        plans_.emplace(key, plan);
        return plan;
    }

private:
    std::mutex mutex_;
    std::map<PlanKey, fftw_plan> plans_;
};

PlanCache& cache() {
    static PlanCache instance;
    return instance;
}

int sign_of(Direction dir) { return dir == Direction::Forward ? FFTW_FORWARD : FFTW_BACKWARD; }

fftw_complex* as_fftw(std::span<cplx> data) { return reinterpret_cast<fftw_complex*>(data.data()); }

}  // namespace

void transform(std::span<cplx> data, Direction dir) {
    transform_many(data, data.size(), 1, 1, data.size(), dir);
}

void transform_many(std::span<cplx> data, std::size_t n, std::size_t howmany, std::size_t stride,
                    std::size_t dist, Direction dir) {
    if (n == 0 || howmany == 0) return;
    fftw_plan plan = cache().get(PlanKey{1, n, 0, howmany, stride, dist, sign_of(dir)});
    fftw_execute_dft(plan, as_fftw(data), as_fftw(data));
}

void transform_2d(std::span<cplx> data, std::size_t rows, std::size_t cols, Direction dir) {
    if (rows == 0 || cols == 0) return;
    fftw_plan plan = cache().get(PlanKey{2, rows, cols, 1, 1, 0, sign_of(dir)});
    fftw_execute_dft(plan, as_fftw(data), as_fftw(data));
}

}  // namespace epsqp::fft
