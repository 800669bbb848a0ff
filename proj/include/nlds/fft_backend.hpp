#pragma once

#include <fftw3.h>

#include <complex>
#include <cstring>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

namespace nlds::detail {

using cplx = std::complex<double>;

inline std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

/// Owns the forward/backward FFTW plans for one transform size. Plans are
/// created once (planner is not thread-safe); execution via the new-array
/// interface is safe from any thread as long as buffers are distinct.
class fft_plans {
public:
    explicit fft_plans(int n) : n_(n) {
        std::lock_guard<std::mutex> lock(planner_mutex());
        fftw_complex* buf = fftw_alloc_complex(static_cast<std::size_t>(n));
        fwd_ = fftw_plan_dft_1d(n, buf, buf, FFTW_FORWARD, FFTW_ESTIMATE);
        bwd_ = fftw_plan_dft_1d(n, buf, buf, FFTW_BACKWARD, FFTW_ESTIMATE);
        fftw_free(buf);
    }
    ~fft_plans() {
        std::lock_guard<std::mutex> lock(planner_mutex());
        fftw_destroy_plan(fwd_);
        fftw_destroy_plan(bwd_);
    }
    fft_plans(const fft_plans&) = delete;
    fft_plans& operator=(const fft_plans&) = delete;

    int size() const { return n_; }

    // In-place unnormalized transforms on an fftw_alloc'd buffer.
    void forward(cplx* data) const {
        fftw_execute_dft(fwd_, reinterpret_cast<fftw_complex*>(data),
                         reinterpret_cast<fftw_complex*>(data));
    }
    void backward(cplx* data) const {
        fftw_execute_dft(bwd_, reinterpret_cast<fftw_complex*>(data),
                         reinterpret_cast<fftw_complex*>(data));
    }

private:
    int n_;
    fftw_plan fwd_;
    fftw_plan bwd_;
};

struct fftw_buffer {
    explicit fftw_buffer(std::size_t n)
        : data(static_cast<cplx*>(static_cast<void*>(fftw_alloc_complex(n)))),
          size(n) {}
    ~fftw_buffer() { fftw_free(data); }
    fftw_buffer(const fftw_buffer&) = delete;
    fftw_buffer& operator=(const fftw_buffer&) = delete;
    cplx* data;
    std::size_t size;
};

/// Per-thread scratch pair for one transform size. The two buffers hold the
/// two spinor components so mode-coupling loops can touch both at once.
inline std::pair<cplx*, cplx*> thread_scratch(int n) {
    thread_local std::map<int, std::pair<std::unique_ptr<fftw_buffer>,
                                         std::unique_ptr<fftw_buffer>>>
        pool;
    auto& slot = pool[n];
    if (!slot.first) {
        slot.first = std::make_unique<fftw_buffer>(static_cast<std::size_t>(n));
        slot.second = std::make_unique<fftw_buffer>(static_cast<std::size_t>(n));
    }
    return {slot.first->data, slot.second->data};
}

}  // namespace nlds::detail
