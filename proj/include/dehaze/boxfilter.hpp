#pragma once

#include <vector>

#include "dehaze/image.hpp"

namespace dehaze {

// Sum over the window [x-r, x+r] x [y-r, y+r], truncated at the image
// borders. Two-pass running sums, rows then columns.
ScalarMap box_sum(const ScalarMap& in, int radius);

// Number of in-bounds pixels in each truncated window.
ScalarMap box_count(int width, int height, int radius);

// box_sum / box_count.
ScalarMap box_mean(const ScalarMap& in, int radius);

// Summed-area table for O(1) rectangle statistics. Sums are accumulated in a
// fixed serial order so results are reproducible.
class IntegralImage {
public:
    explicit IntegralImage(const ScalarMap& map);

    // Sum of values / squared values over [x0, x0+w) x [y0, y0+h).
    double sum(int x0, int y0, int w, int h) const;
    double sum_sq(int x0, int y0, int w, int h) const;
    double mean(int x0, int y0, int w, int h) const;
    // Population standard deviation over the rectangle.
    double stddev(int x0, int y0, int w, int h) const;

private:
    int width_ = 0;
    int height_ = 0;
    std::vector<double> s1_;  // (width+1) x (height+1)
    std::vector<double> s2_;

    double rect(const std::vector<double>& s, int x0, int y0, int w, int h) const;
};

}  // namespace dehaze
