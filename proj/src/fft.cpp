#include "fmcw/fft.hpp"

#include <fftw3.h>

#include <cstring>
#include <mutex>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace fmcw::fft {

namespace {

// FFTW planning is not thread-safe; executing a plan on distinct buffers is.
std::mutex g_plan_mutex;

/// fftw_malloc-backed scratch so FFTW can use its SIMD code paths.
template <typename T>
struct FftwBuffer {
    explicit FftwBuffer(std::size_t count)
        : data(static_cast<T*>(fftw_malloc(count * sizeof(T)))) {
        if (!data) throw std::bad_alloc();
        std::memset(data, 0, count * sizeof(T));
    }
    ~FftwBuffer() { fftw_free(data); }
    FftwBuffer(const FftwBuffer&) = delete;
    FftwBuffer& operator=(const FftwBuffer&) = delete;
    T* data;
};

fftw_plan plan_c2c(std::size_t nfft, fftw_complex* in, fftw_complex* out) {
    std::lock_guard lock(g_plan_mutex);
    return fftw_plan_dft_1d(static_cast<int>(nfft), in, out, FFTW_FORWARD, FFTW_ESTIMATE);
}

fftw_plan plan_r2c(std::size_t nfft, double* in, fftw_complex* out) {
    std::lock_guard lock(g_plan_mutex);
    return fftw_plan_dft_r2c_1d(static_cast<int>(nfft), in, out, FFTW_ESTIMATE);
}

void destroy(fftw_plan plan) {
    std::lock_guard lock(g_plan_mutex);
    fftw_destroy_plan(plan);
}

}  // namespace

std::size_t next_pow2(std::size_t n) {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

std::vector<std::complex<double>> forward(std::span<const std::complex<double>> input,
                                          std::size_t nfft) {
    if (nfft < input.size()) throw std::invalid_argument("fft: nfft smaller than input");
    FftwBuffer<fftw_complex> in(nfft), out(nfft);
    std::memcpy(in.data, input.data(), input.size() * sizeof(std::complex<double>));
    fftw_plan plan = plan_c2c(nfft, in.data, out.data);
    fftw_execute(plan);
    destroy(plan);
    std::vector<std::complex<double>> result(nfft);
    std::memcpy(result.data(), out.data, nfft * sizeof(std::complex<double>));
    return result;
}

std::vector<std::complex<double>> forward_real(std::span<const double> input, std::size_t nfft) {
    std::vector<std::complex<double>> in(nfft, {0.0, 0.0});
    for (std::size_t i = 0; i < input.size(); ++i) in[i] = input[i];
    return forward(in, nfft);
}

void forward_real_rows(const double* in, std::size_t count, std::size_t in_len,
                       std::size_t nfft, std::complex<double>* out, bool parallel) {
    if (nfft < in_len) throw std::invalid_argument("fft: nfft smaller than row length");
    const std::size_t out_len = nfft / 2 + 1;

    auto run_rows = [&](std::size_t begin, std::size_t end) {
        FftwBuffer<double> buf(nfft);
        FftwBuffer<fftw_complex> spec(out_len);
        fftw_plan plan = plan_r2c(nfft, buf.data, spec.data);
        for (std::size_t r = begin; r < end; ++r) {
            std::memcpy(buf.data, in + r * in_len, in_len * sizeof(double));
            std::memset(buf.data + in_len, 0, (nfft - in_len) * sizeof(double));
            fftw_execute_dft_r2c(plan, buf.data, spec.data);
            std::memcpy(out + r * out_len, spec.data, out_len * sizeof(std::complex<double>));
        }
        destroy(plan);
    };

#ifdef _OPENMP
    if (parallel) {
#pragma omp parallel
        {
            const int nt = omp_get_num_threads();
            const int id = omp_get_thread_num();
            const std::size_t chunk = (count + nt - 1) / nt;
            const std::size_t begin = std::min(count, chunk * id);
            const std::size_t end = std::min(count, begin + chunk);
            if (begin < end) run_rows(begin, end);
        }
        return;
    }
#else
    (void)parallel;
#endif
    run_rows(0, count);
}

}  // namespace fmcw::fft
