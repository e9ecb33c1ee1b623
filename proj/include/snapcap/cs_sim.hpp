#pragma once

#include <cstdint>

#include "snapcap/tensor.hpp"

namespace snapcap::cs {

/// B high-speed frames of one scene clip, values in [0,1]. Shape [B,H,W].
struct VideoClip {
    Tensor frames;
    double frame_rate = 0.0; // metadata only
};

enum class MaskMode { binary, grayscale };

/// The B coding masks that modulate a clip before exposure. Shape [B,H,W].
struct MaskStack {
    Tensor masks;
    uint64_t seed = 0;
    MaskMode mode = MaskMode::binary;
};

/// Single coded 2D snapshot, shape [H,W].
struct Measurement {
    Tensor y;
    double noise_sigma = 0.0;
};

/// Closed-form coarse inversion of a measurement.
/// normalized: measurement divided by per-pixel mask coverage, shape [H,W].
/// coarse_frames: per-frame estimate, shape [B,H,W].
struct InitEstimate {
    Tensor normalized;
    Tensor coarse_frames;
};

/// Binary mode draws each entry i.i.d. Bernoulli(0.5); grayscale draws
/// Uniform[0,1]. Same seed gives a bit-identical stack.
MaskStack generate_masks(int64_t b, int64_t h, int64_t w, uint64_t seed,
                         MaskMode mode = MaskMode::binary);

/// Codes each frame with its mask and integrates over the exposure:
/// y = sum_k frames[k] * masks[k] (+ Gaussian noise of std noise_sigma).
/// Summation order is fixed k = 0..B-1. Throws on shape mismatch.
Measurement simulate_measurement(const VideoClip& clip, const MaskStack& masks,
                                 double noise_sigma = 0.0, uint64_t seed = 0);

/// normalized = y / max(coverage, eps); coarse_frames[k] = normalized * masks[k]
/// + normalized. eps guards pixels no mask ever exposes.
InitEstimate initialize_estimate(const Measurement& meas, const MaskStack& masks,
                                 double eps = 1e-8);

} // namespace snapcap::cs
