#pragma once

#include <vector>

#include "evblur/frame.hpp"

namespace evblur {

// PSNR is capped here so CSV output never carries infinities.
inline constexpr double kPsnrCap = 99.0;

struct EvalReport {
    std::vector<double> per_frame_psnr;
    std::vector<double> per_frame_ssim;
    double mean_psnr = 0.0;
    double mean_ssim = 0.0;
    double single_frame_psnr = 0.0;  // middle-frame protocol
    double single_frame_ssim = 0.0;
};

// 10*log10(1/MSE) for unit dynamic range, capped at 99 dB.
double psnr(const Frame& a, const Frame& b);

// Mean local SSIM over all valid placements of an 11x11 Gaussian window
// (sigma 1.5, C1 = 0.01^2, C2 = 0.03^2, unit range). Images must be at
// least 11x11.
double ssim(const Frame& a, const Frame& b);

// Per-frame PSNR/SSIM, their means (sequence protocol) and the values at
// the middle frame floor(M/2) (single-frame protocol).
EvalReport evaluate(const std::vector<Frame>& frames, const std::vector<Frame>& truth);

}  // namespace evblur
