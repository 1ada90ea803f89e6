#pragma once

#include <complex>

namespace tanhwave {

// Thin wrapper around FFTW complex-to-complex plans, one pair per size.
// Plans are created with FFTW_ESTIMATE (deterministic planning) and
// FFTW_UNALIGNED so they can execute on ordinary std::vector storage.
// Plan creation is serialized behind a mutex; execution is thread-safe.
//
// forward(): unnormalized sum_n f_n e^{-2 pi i j n / N}. Callers divide by N
// to get the coefficient convention c(k) with f(x) = sum_k c(k) e^{i k x}.
class FftPlan {
  public:
    static const FftPlan& get(int n);

    void forward(const std::complex<double>* in, std::complex<double>* out) const;
    void backward(const std::complex<double>* in, std::complex<double>* out) const;

    FftPlan(const FftPlan&) = delete;
    FftPlan& operator=(const FftPlan&) = delete;

  private:
    explicit FftPlan(int n);
    ~FftPlan();

    int n_;
    void* fwd_;
    void* bwd_;
};

} // namespace tanhwave
