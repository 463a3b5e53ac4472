// synth.hpp
//
// Synthetic dataset generation. Per (class, attribute) the generator draws
// from a symmetric triangular distribution centered at `center` with support
// half-width `spread`, clamped at zero. Bounded support means two classes
// whose centers differ by at least 4 spreads on some attribute can never
// overlap there, which is the separability guarantee the default profile
// promises.

#ifndef MIBWARDEN_SYNTH_HPP
#define MIBWARDEN_SYNTH_HPP

#include <array>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "mibwarden/schema.hpp"

namespace mibwarden {

struct synth_profile {
    schema attrs;
    std::array<std::size_t, traffic_class_count> class_counts{};
    // indexed [class][attribute]
    std::array<std::vector<double>, traffic_class_count> centers;
    std::array<std::vector<double>, traffic_class_count> spreads;
    // fraction of records that get one attribute redrawn uniformly from the
    // global value range; models sampling glitches in the counter exports
    double noise_rate = 0.0;

    /// Interface-group profile with the canonical per-class record counts
    /// (4998 records total) and 3% feature noise.
    static synth_profile default_profile();
    static synth_profile default_profile(double noise_rate);

    void validate() const;
};

/// Deterministic for a given (profile, seed); emits records class-major in
/// canonical class order.
dataset synthesize(const synth_profile &profile, std::uint64_t seed);

/// Reads a profile from JSON (see docs/formats.md). Errors name the field.
synth_profile load_profile(std::istream &in);
synth_profile load_profile_file(const std::string &path);

/// True when every pair of classes differs by at least `k_spreads` spreads in
/// at least one attribute.
bool profile_separable(const synth_profile &profile, double k_spreads = 4.0);

} // namespace mibwarden

#endif // MIBWARDEN_SYNTH_HPP
