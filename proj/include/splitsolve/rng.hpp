#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "splitsolve/vec.hpp"

namespace splitsolve {

/// Seeded Gaussian source. Box-Muller over mt19937_64 keeps draws identical
/// across standard libraries, so seeded runs produce byte-identical reports.
class GaussianRng {
  public:
    explicit GaussianRng(uint64_t seed) : engine_(seed) {}

    double next() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = 0.0;
        do {
            u1 = uniform();
        } while (u1 <= 0.0);
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 2.0 * M_PI * u2;
        spare_ = r * std::sin(theta);
        have_spare_ = true;
        return r * std::cos(theta);
    }

    Vec vector(int dimension) {
        Vec v(dimension);
        for (double& x : v) x = next();
        return v;
    }

  private:
    double uniform() {
        // 53-bit mantissa draw in [0, 1)
        return (engine_() >> 11) * 0x1.0p-53;
    }

    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace splitsolve
