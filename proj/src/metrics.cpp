#include "evblur/metrics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace evblur {

double psnr(const Frame& a, const Frame& b) {
    require_same_size(a, b, "psnr");
    double sum = 0.0;
    for (std::size_t i = 0; i < a.pixel_count(); ++i) {
        const double d = a.data[i] - b.data[i];
        sum += d * d;
    }
    const double mse = sum / static_cast<double>(a.pixel_count());
    if (mse == 0.0) return kPsnrCap;
    return std::min(kPsnrCap, 10.0 * std::log10(1.0 / mse));
}

namespace {

constexpr int kSsimWindow = 11;
constexpr double kSsimSigma = 1.5;
constexpr double kSsimC1 = 0.01 * 0.01;
constexpr double kSsimC2 = 0.03 * 0.03;

std::array<double, kSsimWindow * kSsimWindow> ssim_weights() {
    std::array<double, kSsimWindow * kSsimWindow> w{};
    const int r = kSsimWindow / 2;
    double total = 0.0;
    for (int dy = -r; dy <= r; ++dy)
        for (int dx = -r; dx <= r; ++dx) {
            const double g = std::exp(-(dx * dx + dy * dy) / (2.0 * kSsimSigma * kSsimSigma));
            w[(dy + r) * kSsimWindow + (dx + r)] = g;
            total += g;
        }
    for (double& v : w) v /= total;
    return w;
}

}  // namespace

double ssim(const Frame& a, const Frame& b) {
    require_same_size(a, b, "ssim");
    if (a.width < kSsimWindow || a.height < kSsimWindow)
        throw std::invalid_argument("ssim: image smaller than the 11x11 window");

    static const auto weights = ssim_weights();
    const int r = kSsimWindow / 2;

    double total = 0.0;
    std::size_t windows = 0;
    for (int cy = r; cy < a.height - r; ++cy) {
        for (int cx = r; cx < a.width - r; ++cx) {
            double ma = 0.0, mb = 0.0;
            for (int dy = -r; dy <= r; ++dy)
                for (int dx = -r; dx <= r; ++dx) {
                    const double w = weights[(dy + r) * kSsimWindow + (dx + r)];
                    ma += w * a.at(cx + dx, cy + dy);
                    mb += w * b.at(cx + dx, cy + dy);
                }
            double va = 0.0, vb = 0.0, cov = 0.0;
            for (int dy = -r; dy <= r; ++dy)
                for (int dx = -r; dx <= r; ++dx) {
                    const double w = weights[(dy + r) * kSsimWindow + (dx + r)];
                    const double da = a.at(cx + dx, cy + dy) - ma;
                    const double db = b.at(cx + dx, cy + dy) - mb;
                    va += w * da * da;
                    vb += w * db * db;
                    cov += w * da * db;
                }
            const double num = (2.0 * ma * mb + kSsimC1) * (2.0 * cov + kSsimC2);
            const double den = (ma * ma + mb * mb + kSsimC1) * (va + vb + kSsimC2);
            total += num / den;
            ++windows;
        }
    }
    return total / static_cast<double>(windows);
}

EvalReport evaluate(const std::vector<Frame>& frames, const std::vector<Frame>& truth) {
    if (frames.size() != truth.size() || frames.empty())
        throw std::invalid_argument("evaluate: sequence lengths differ or are empty");

    EvalReport report;
    report.per_frame_psnr.reserve(frames.size());
    report.per_frame_ssim.reserve(frames.size());
    for (std::size_t m = 0; m < frames.size(); ++m) {
        report.per_frame_psnr.push_back(psnr(frames[m], truth[m]));
        report.per_frame_ssim.push_back(ssim(frames[m], truth[m]));
        report.mean_psnr += report.per_frame_psnr.back();
        report.mean_ssim += report.per_frame_ssim.back();
    }
    report.mean_psnr /= static_cast<double>(frames.size());
    report.mean_ssim /= static_cast<double>(frames.size());
    const std::size_t mid = frames.size() / 2;
    report.single_frame_psnr = report.per_frame_psnr[mid];
    report.single_frame_ssim = report.per_frame_ssim[mid];
    return report;
}

}  // namespace evblur
