#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "ems/point.hpp"

namespace ems {

// Deterministic RNG: mt19937_64 (bit-stable across platforms) with a
// hand-rolled rejection sampler so draws are identical everywhere.
class DetRng {
  public:
    explicit DetRng(uint64_t seed) : eng_(seed) {}

    uint64_t raw() { return eng_(); }

    // Uniform in [lo, hi], inclusive, bias-free.
    long uniform(long lo, long hi) {
        uint64_t range = static_cast<uint64_t>(hi - lo) + 1;
        uint64_t limit = UINT64_MAX - UINT64_MAX % range;
        uint64_t v;
        do {
            v = eng_();
        } while (v >= limit);
        return lo + static_cast<long>(v % range);
    }

  private:
    std::mt19937_64 eng_;
};

// A colored point set: color[i] applies to pts[i]; k is the palette size.
struct Instance {
    PointSet pts;
    std::vector<int> colors;   // empty for uncolored instances
    int k = 0;
    uint64_t seed = 0;
    std::string kind;
};

struct GenerateOptions {
    long box = 1000;        // coordinate box half-width for random kinds
    int retries = 200;      // general-position repair attempts
};

// Point-set generators, all deterministic from seed and certified in
// general position before returning.
//   random-ball    integer points in a ball, degeneracies re-drawn
//   moment-curve   (t, t^2, ..., t^d), t = 1..n
//   convex         rational points on the unit sphere (stereographic)
//   grid-perturbed grid nodes with small rational jitter
//   doubled        handled by the doubling pipeline (see pipelines)
Instance generate_instance(const std::string& kind, size_t n, int d, int k,
                           uint64_t seed, const GenerateOptions& opt = {});

// Assigns colors 0..k-1 round-robin over a seeded shuffle: near-balanced,
// deterministic.
std::vector<int> assign_colors(size_t n, int k, DetRng& rng);

}  // namespace ems
