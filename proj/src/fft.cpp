#include "tanhwave/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <vector>

namespace tanhwave {

namespace {
std::mutex planner_mutex;
} // namespace

FftPlan::FftPlan(int n) : n_(n) {
    // Plan on scratch buffers; FFTW_UNALIGNED lets fftw_execute_dft run on
    // whatever arrays the caller provides later.
    std::vector<fftw_complex> scratch_in(n), scratch_out(n);
    fwd_ = fftw_plan_dft_1d(n, scratch_in.data(), scratch_out.data(), FFTW_FORWARD,
                            FFTW_ESTIMATE | FFTW_UNALIGNED);
    bwd_ = fftw_plan_dft_1d(n, scratch_in.data(), scratch_out.data(), FFTW_BACKWARD,
                            FFTW_ESTIMATE | FFTW_UNALIGNED);
}

FftPlan::~FftPlan() {
    fftw_destroy_plan(static_cast<fftw_plan>(fwd_));
    fftw_destroy_plan(static_cast<fftw_plan>(bwd_));
}

const FftPlan& FftPlan::get(int n) {
    std::lock_guard<std::mutex> lock(planner_mutex);
    static std::map<int, FftPlan*> cache;
    auto it = cache.find(n);
    if (it == cache.end())
        it = cache.emplace(n, new FftPlan(n)).first;
    return *it->second;
}

void FftPlan::forward(const std::complex<double>* in, std::complex<double>* out) const {
    fftw_execute_dft(static_cast<fftw_plan>(fwd_),
                     reinterpret_cast<fftw_complex*>(const_cast<std::complex<double>*>(in)),
                     reinterpret_cast<fftw_complex*>(out));
}

void FftPlan::backward(const std::complex<double>* in, std::complex<double>* out) const {
    fftw_execute_dft(static_cast<fftw_plan>(bwd_),
                     reinterpret_cast<fftw_complex*>(const_cast<std::complex<double>*>(in)),
                     reinterpret_cast<fftw_complex*>(out));
}

} // namespace tanhwave
