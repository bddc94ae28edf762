#include "nlslab/fft.hpp"

#include <fftw3.h>

#include <map>
#include <memory>
#include <mutex>
#include <tuple>

namespace nlslab::fft {

namespace {

// fftw_plan creation/destruction is not thread-safe; execution is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

struct PlanPair {
    fftw_plan fwd = nullptr;
    fftw_plan bwd = nullptr;
    fftw_complex* in = nullptr;
    fftw_complex* out = nullptr;
    std::size_t n = 0;

    PlanPair(int dim, int points) {
        n = dim == 1 ? static_cast<std::size_t>(points)
                     : static_cast<std::size_t>(points) * points;
        in = fftw_alloc_complex(n);
        out = fftw_alloc_complex(n);
        std::lock_guard<std::mutex> lock(planner_mutex());
        if (dim == 1) {
            fwd = fftw_plan_dft_1d(points, in, out, FFTW_FORWARD, FFTW_ESTIMATE);
            bwd = fftw_plan_dft_1d(points, in, out, FFTW_BACKWARD, FFTW_ESTIMATE);
        } else {
            fwd = fftw_plan_dft_2d(points, points, in, out, FFTW_FORWARD, FFTW_ESTIMATE);
            bwd = fftw_plan_dft_2d(points, points, in, out, FFTW_BACKWARD, FFTW_ESTIMATE);
        }
    }
    ~PlanPair() {
        std::lock_guard<std::mutex> lock(planner_mutex());
        if (fwd) fftw_destroy_plan(fwd);
        if (bwd) fftw_destroy_plan(bwd);
        fftw_free(in);
        fftw_free(out);
    }
    PlanPair(const PlanPair&) = delete;
    PlanPair& operator=(const PlanPair&) = delete;
};

// One plan set per (dim, points) per thread; buffers double as scratch.
PlanPair& plans_for(const Grid& g) {
    thread_local std::map<std::pair<int, int>, std::unique_ptr<PlanPair>> cache;
    auto key = std::make_pair(g.dim, g.points);
    auto it = cache.find(key);
    if (it == cache.end())
        it = cache.emplace(key, std::make_unique<PlanPair>(g.dim, g.points)).first;
    return *it->second;
}

// Parity of the signed mode sum equals the parity of the bin-index sum
// (they differ by multiples of the even M), so the center-offset phase
// e^{+/- i pi (m1+m2)} is just a sign flip on odd bins.
inline int bin_parity_1d(int k) { return k & 1; }

} // namespace

std::vector<cplx> forward(const Grid& g, std::span<const cplx> values) {
    PlanPair& pp = plans_for(g);
    const int M = g.points;
    const double scale = g.cell_measure();
    auto* in = reinterpret_cast<cplx*>(pp.in);
    std::copy(values.begin(), values.end(), in);
    fftw_execute(pp.fwd);
    auto* out = reinterpret_cast<cplx*>(pp.out);
    std::vector<cplx> spec(pp.n);
    if (g.dim == 1) {
        for (int k = 0; k < M; ++k) spec[k] = (bin_parity_1d(k) ? -scale : scale) * out[k];
    } else {
        std::size_t idx = 0;
        for (int k0 = 0; k0 < M; ++k0)
            for (int k1 = 0; k1 < M; ++k1, ++idx)
                spec[idx] = (((k0 + k1) & 1) ? -scale : scale) * out[idx];
    }
    return spec;
}

std::vector<cplx> inverse(const Grid& g, std::span<const cplx> spectrum) {
    PlanPair& pp = plans_for(g);
    const int M = g.points;
    const double Ln = g.dim == 1 ? g.length : g.length * g.length;
    const double scale = 1.0 / Ln;
    auto* in = reinterpret_cast<cplx*>(pp.in);
    if (g.dim == 1) {
        for (int k = 0; k < M; ++k)
            in[k] = bin_parity_1d(k) ? -spectrum[k] : spectrum[k];
    } else {
        std::size_t idx = 0;
        for (int k0 = 0; k0 < M; ++k0)
            for (int k1 = 0; k1 < M; ++k1, ++idx)
                in[idx] = ((k0 + k1) & 1) ? -spectrum[idx] : spectrum[idx];
    }
    fftw_execute(pp.bwd);
    auto* out = reinterpret_cast<cplx*>(pp.out);
    std::vector<cplx> vals(pp.n);
    for (std::size_t i = 0; i < pp.n; ++i) vals[i] = scale * out[i];
    return vals;
}

std::vector<cplx> forward(const Field& f) { return forward(f.grid, f.values); }

Field inverse_to_field(const Grid& g, std::span<const cplx> spectrum) {
    Field f;
    f.grid = g;
    f.values = inverse(g, spectrum);
    return f;
}

double spectrum_l2sq(const Grid& g, std::span<const cplx> spectrum) {
    double s = 0.0;
    for (const cplx& z : spectrum) s += std::norm(z);
    const double Ln = g.dim == 1 ? g.length : g.length * g.length;
    return s / Ln;
}

} // namespace nlslab::fft
