#include "dehaze/reference.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "dehaze/errors.hpp"

namespace dehaze::reference {

ScalarMap erode_min_naive(const ScalarMap& in, int radius) {
    const int w = in.width();
    const int h = in.height();
    ScalarMap out(w, h);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            double m = in.at(x, y);
            for (int yy = std::max(0, y - radius); yy <= std::min(h - 1, y + radius); ++yy) {
                for (int xx = std::max(0, x - radius); xx <= std::min(w - 1, x + radius); ++xx) {
                    m = std::min(m, in.at(xx, yy));
                }
            }
            out.set(x, y, m);
        }
    }
    return out;
}

ScalarMap dark_channel_naive(const RgbImage& img, int radius) {
    const int w = img.width();
    const int h = img.height();
    ScalarMap out(w, h);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            double m = 1e300;
            for (int c = 0; c < RgbImage::kChannels; ++c) {
                for (int yy = std::max(0, y - radius); yy <= std::min(h - 1, y + radius); ++yy) {
                    for (int xx = std::max(0, x - radius); xx <= std::min(w - 1, x + radius); ++xx) {
                        m = std::min(m, img.at(c, xx, yy));
                    }
                }
            }
            out.set(x, y, m);
        }
    }
    return out;
}

ScalarMap box_sum_naive(const ScalarMap& in, int radius) {
    const int w = in.width();
    const int h = in.height();
    ScalarMap out(w, h);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            double s = 0;
            for (int yy = std::max(0, y - radius); yy <= std::min(h - 1, y + radius); ++yy) {
                for (int xx = std::max(0, x - radius); xx <= std::min(w - 1, x + radius); ++xx) {
                    s += in.at(xx, yy);
                }
            }
            out.set(x, y, s);
        }
    }
    return out;
}

ScalarMap median_filter_naive(const ScalarMap& in, int radius) {
    const int w = in.width();
    const int h = in.height();
    ScalarMap out(w, h);
    std::vector<double> buf;
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            buf.clear();
            for (int yy = std::max(0, y - radius); yy <= std::min(h - 1, y + radius); ++yy) {
                for (int xx = std::max(0, x - radius); xx <= std::min(w - 1, x + radius); ++xx) {
                    buf.push_back(in.at(xx, yy));
                }
            }
            std::sort(buf.begin(), buf.end());
            out.set(x, y, buf[(buf.size() - 1) / 2]);
        }
    }
    return out;
}

namespace {

struct WindowStats {
    double mu = 0;
    double var = 0;
    int count = 0;
};

std::vector<WindowStats> window_stats(const ScalarMap& guide, int radius) {
    const int w = guide.width();
    const int h = guide.height();
    std::vector<WindowStats> stats(std::size_t(w) * h);
    for (int ky = 0; ky < h; ++ky) {
        for (int kx = 0; kx < w; ++kx) {
            double s = 0, s2 = 0;
            int n = 0;
            for (int y = std::max(0, ky - radius); y <= std::min(h - 1, ky + radius); ++y) {
                for (int x = std::max(0, kx - radius); x <= std::min(w - 1, kx + radius); ++x) {
                    const double v = guide.at(x, y);
                    s += v;
                    s2 += v * v;
                    ++n;
                }
            }
            WindowStats& st = stats[std::size_t(ky) * w + kx];
            st.count = n;
            st.mu = s / n;
            st.var = std::max(0.0, s2 / n - st.mu * st.mu);
        }
    }
    return stats;
}

}  // namespace

ScalarMap saf_kernel_direct(const ScalarMap& rough, const ScalarMap& guide,
                            int radius, double eps) {
    require_same_size(rough, guide, "saf_kernel_direct");
    const int w = rough.width();
    const int h = rough.height();
    const std::vector<WindowStats> stats = window_stats(guide, radius);

    ScalarMap out(w, h);
    for (int py = 0; py < h; ++py) {
        for (int px = 0; px < w; ++px) {
            const double gp = guide.at(px, py);
            double num = 0, den = 0;
            for (int qy = std::max(0, py - 2 * radius); qy <= std::min(h - 1, py + 2 * radius); ++qy) {
                for (int qx = std::max(0, px - 2 * radius); qx <= std::min(w - 1, px + 2 * radius); ++qx) {
                    const double gq = guide.at(qx, qy);
                    double wpq = 0;
                    const int ky0 = std::max({0, py - radius, qy - radius});
                    const int ky1 = std::min({h - 1, py + radius, qy + radius});
                    const int kx0 = std::max({0, px - radius, qx - radius});
                    const int kx1 = std::min({w - 1, px + radius, qx + radius});
                    for (int ky = ky0; ky <= ky1; ++ky) {
                        for (int kx = kx0; kx <= kx1; ++kx) {
                            const WindowStats& st = stats[std::size_t(ky) * w + kx];
                            wpq += (1.0 + (gp - st.mu) * (gq - st.mu) / (st.var + eps)) /
                                   (double(st.count) * st.count);
                        }
                    }
                    num += wpq * rough.at(qx, qy);
                    den += wpq;
                }
            }
            out.set(px, py, num / den);
        }
    }
    return out;
}

ScalarMap saf_uniform_kernel_direct(const ScalarMap& rough, int radius) {
    const int w = rough.width();
    const int h = rough.height();
    std::vector<int> counts(std::size_t(w) * h);
    for (int ky = 0; ky < h; ++ky) {
        for (int kx = 0; kx < w; ++kx) {
            const int nx = std::min(w - 1, kx + radius) - std::max(0, kx - radius) + 1;
            const int ny = std::min(h - 1, ky + radius) - std::max(0, ky - radius) + 1;
            counts[std::size_t(ky) * w + kx] = nx * ny;
        }
    }
    ScalarMap out(w, h);
    for (int py = 0; py < h; ++py) {
        for (int px = 0; px < w; ++px) {
            double num = 0, den = 0;
            for (int qy = std::max(0, py - 2 * radius); qy <= std::min(h - 1, py + 2 * radius); ++qy) {
                for (int qx = std::max(0, px - 2 * radius); qx <= std::min(w - 1, px + 2 * radius); ++qx) {
                    double wpq = 0;
                    const int ky0 = std::max({0, py - radius, qy - radius});
                    const int ky1 = std::min({h - 1, py + radius, qy + radius});
                    const int kx0 = std::max({0, px - radius, qx - radius});
                    const int kx1 = std::min({w - 1, px + radius, qx + radius});
                    for (int ky = ky0; ky <= ky1; ++ky) {
                        for (int kx = kx0; kx <= kx1; ++kx) {
                            const double n = counts[std::size_t(ky) * w + kx];
                            wpq += 1.0 / (n * n);
                        }
                    }
                    num += wpq * rough.at(qx, qy);
                    den += wpq;
                }
            }
            out.set(px, py, num / den);
        }
    }
    return out;
}

double ssim_direct(const RgbImage& ref, const RgbImage& test,
                   const MetricsConfig& cfg) {
    require_same_size(ref, test, "ssim_direct");
    const ScalarMap a = to_gray(ref);
    const ScalarMap b = to_gray(test);
    const int w = a.width();
    const int h = a.height();
    const int ww = std::min(cfg.ssim_window, w);
    const int wh = std::min(cfg.ssim_window, h);
    const double c1 = cfg.ssim_k1 * cfg.ssim_k1;
    const double c2 = cfg.ssim_k2 * cfg.ssim_k2;

    double total = 0;
    int windows = 0;
    for (int y0 = 0; y0 + wh <= h; ++y0) {
        for (int x0 = 0; x0 + ww <= w; ++x0) {
            double sx = 0, sy = 0;
            for (int y = y0; y < y0 + wh; ++y) {
                for (int x = x0; x < x0 + ww; ++x) {
                    sx += a.at(x, y);
                    sy += b.at(x, y);
                }
            }
            const double n = double(ww) * wh;
            const double mx = sx / n;
            const double my = sy / n;
            double vx = 0, vy = 0, cxy = 0;
            for (int y = y0; y < y0 + wh; ++y) {
                for (int x = x0; x < x0 + ww; ++x) {
                    const double dx = a.at(x, y) - mx;
                    const double dy = b.at(x, y) - my;
                    vx += dx * dx;
                    vy += dy * dy;
                    cxy += dx * dy;
                }
            }
            vx /= n;
            vy /= n;
            cxy /= n;
            total += ((2 * mx * my + c1) * (2 * cxy + c2)) /
                     ((mx * mx + my * my + c1) * (vx + vy + c2));
            ++windows;
        }
    }
    return total / windows;
}

double cnr_direct(const RgbImage& test, const MetricsConfig& cfg) {
    const ScalarMap gray = to_gray(test);
    const int w = gray.width();
    const int h = gray.height();

    double noise_sq = 0;
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            double s = 0;
            int n = 0;
            for (int yy = std::max(0, y - 1); yy <= std::min(h - 1, y + 1); ++yy) {
                for (int xx = std::max(0, x - 1); xx <= std::min(w - 1, x + 1); ++xx) {
                    s += gray.at(xx, yy);
                    ++n;
                }
            }
            const double d = gray.at(x, y) - s / n;
            noise_sq += d * d;
        }
    }
    const double sigma_n = std::sqrt(noise_sq / (double(w) * h));

    double gsum = 0;
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) gsum += gray.at(x, y);
    }
    const double gmean = gsum / (double(w) * h);

    double contrast = 0;
    int blocks = 0;
    for (int y0 = 0; y0 < h; y0 += cfg.cnr_block) {
        for (int x0 = 0; x0 < w; x0 += cfg.cnr_block) {
            double s = 0;
            int n = 0;
            for (int y = y0; y < std::min(h, y0 + cfg.cnr_block); ++y) {
                for (int x = x0; x < std::min(w, x0 + cfg.cnr_block); ++x) {
                    s += gray.at(x, y);
                    ++n;
                }
            }
            contrast += std::abs(s / n - gmean);
            ++blocks;
        }
    }
    const double raw = (contrast / blocks) / std::max(sigma_n, 1e-6);
    return 100.0 * raw / (raw + 1.0);
}

namespace {

int mirror_index(int i, int n) {
    if (n == 1) return 0;
    int m = i % (2 * n - 2);
    return m < n ? m : 2 * n - 2 - m;
}

int pow2_at_least(int n) {
    int p = 1;
    while (p < n) p <<= 1;
    return p;
}

}  // namespace

ScalarMap butterworth_direct(const ScalarMap& in, double cutoff, int order) {
    const int w = in.width();
    const int h = in.height();
    const int pw = pow2_at_least(w);
    const int ph = pow2_at_least(h);
    std::vector<std::complex<double>> padded(std::size_t(pw) * ph);
    for (int y = 0; y < ph; ++y) {
        for (int x = 0; x < pw; ++x) {
            padded[std::size_t(y) * pw + x] =
                in.at(mirror_index(x, w), mirror_index(y, h));
        }
    }

    // Forward DFT, direct sum.
    std::vector<std::complex<double>> freq(std::size_t(pw) * ph);
    for (int v = 0; v < ph; ++v) {
        for (int u = 0; u < pw; ++u) {
            std::complex<double> acc = 0;
            for (int y = 0; y < ph; ++y) {
                for (int x = 0; x < pw; ++x) {
                    const double phase =
                        -2.0 * std::numbers::pi *
                        (double(u) * x / pw + double(v) * y / ph);
                    acc += padded[std::size_t(y) * pw + x] *
                           std::polar(1.0, phase);
                }
            }
            freq[std::size_t(v) * pw + u] = acc;
        }
    }

    const double d0 = 0.5 * cutoff;
    for (int v = 0; v < ph; ++v) {
        const int fv = v <= ph / 2 ? v : ph - v;
        for (int u = 0; u < pw; ++u) {
            const int fu = u <= pw / 2 ? u : pw - u;
            const double d = std::sqrt(double(fu) / pw * (double(fu) / pw) +
                                       double(fv) / ph * (double(fv) / ph));
            freq[std::size_t(v) * pw + u] *=
                1.0 / (1.0 + std::pow(d / d0, 2.0 * order));
        }
    }

    ScalarMap out(w, h);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            std::complex<double> acc = 0;
            for (int v = 0; v < ph; ++v) {
                for (int u = 0; u < pw; ++u) {
                    const double phase =
                        2.0 * std::numbers::pi *
                        (double(u) * x / pw + double(v) * y / ph);
                    acc += freq[std::size_t(v) * pw + u] * std::polar(1.0, phase);
                }
            }
            out.set(x, y, acc.real() / (double(pw) * ph));
        }
    }
    return out;
}

}  // namespace dehaze::reference
