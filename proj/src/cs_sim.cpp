#include "snapcap/cs_sim.hpp"

#include <stdexcept>

#include "snapcap/rng.hpp"

namespace snapcap::cs {

MaskStack generate_masks(int64_t b, int64_t h, int64_t w, uint64_t seed, MaskMode mode) {
    if (b < 1 || h < 1 || w < 1) {
        throw std::invalid_argument("generate_masks: dimensions must be >= 1");
    }
    MaskStack stack;
    stack.masks = Tensor({b, h, w});
    stack.seed = seed;
    stack.mode = mode;
    Rng rng(seed);
    const int64_t n = stack.masks.numel();
    double* m = stack.masks.data();
    if (mode == MaskMode::binary) {
        for (int64_t i = 0; i < n; ++i) m[i] = rng.bernoulli() ? 1.0 : 0.0;
    } else {
        for (int64_t i = 0; i < n; ++i) m[i] = rng.uniform();
    }
    return stack;
}

Measurement simulate_measurement(const VideoClip& clip, const MaskStack& masks,
                                 double noise_sigma, uint64_t seed) {
    require_same_shape(clip.frames, masks.masks, "simulate_measurement");
    if (clip.frames.rank() != 3) {
        throw std::invalid_argument("simulate_measurement: expected [B,H,W] frames");
    }
    if (noise_sigma < 0.0) {
        throw std::invalid_argument("simulate_measurement: noise_sigma must be >= 0");
    }
    const int64_t b = clip.frames.dim(0);
    const int64_t hw = clip.frames.dim(1) * clip.frames.dim(2);

    Measurement meas;
    meas.y = Tensor({clip.frames.dim(1), clip.frames.dim(2)});
    meas.noise_sigma = noise_sigma;

    const double* x = clip.frames.data();
    const double* c = masks.masks.data();
    double* y = meas.y.data();
#pragma omp parallel for schedule(static)
    for (int64_t p = 0; p < hw; ++p) {
        double acc = 0.0;
        for (int64_t k = 0; k < b; ++k) acc += x[k * hw + p] * c[k * hw + p];
        y[p] = acc;
    }
    if (noise_sigma > 0.0) {
        Rng rng(seed);
        for (int64_t p = 0; p < hw; ++p) y[p] += rng.normal(0.0, noise_sigma);
    }
    return meas;
}

InitEstimate initialize_estimate(const Measurement& meas, const MaskStack& masks,
                                 double eps) {
    if (eps <= 0.0) throw std::invalid_argument("initialize_estimate: eps must be > 0");
    if (masks.masks.rank() != 3) {
        throw std::invalid_argument("initialize_estimate: expected [B,H,W] masks");
    }
    if (meas.y.dim(0) != masks.masks.dim(1) || meas.y.dim(1) != masks.masks.dim(2)) {
        throw std::invalid_argument("initialize_estimate: measurement/mask shape mismatch");
    }
    const int64_t b = masks.masks.dim(0);
    const int64_t hw = meas.y.numel();

    InitEstimate est;
    est.normalized = Tensor(meas.y.shape());
    est.coarse_frames = Tensor(masks.masks.shape());

    const double* y = meas.y.data();
    const double* c = masks.masks.data();
    double* ybar = est.normalized.data();
    double* xe = est.coarse_frames.data();
#pragma omp parallel for schedule(static)
    for (int64_t p = 0; p < hw; ++p) {
        double cover = 0.0;
        for (int64_t k = 0; k < b; ++k) cover += c[k * hw + p];
        const double denom = cover > eps ? cover : eps;
        ybar[p] = y[p] / denom;
    }
#pragma omp parallel for schedule(static)
    for (int64_t k = 0; k < b; ++k) {
        for (int64_t p = 0; p < hw; ++p) {
            xe[k * hw + p] = ybar[p] * c[k * hw + p] + ybar[p];
        }
    }
    return est;
}

} // namespace snapcap::cs
