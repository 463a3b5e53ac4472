// synth.cpp

#include "mibwarden/synth.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include <json.hpp>

#include "mibwarden/errors.hpp"
#include "mibwarden/rng.hpp"

namespace mibwarden {

namespace {

// Per-class centers for the default interface-group profile, one row per
// class in canonical order, one column per ifEntry attribute:
//   inOctets, outOctets, inUcast, outUcast, inNUcast, outNUcast,
//   inDiscards, outDiscards, inErrors, outErrors, outQLen
//
// Two pairs are deliberate near-twins: BruteForce mirrors Normal except on
// inUcast/inErrors, and Slowpost mirrors Slowloris except on
// outUcast/outQLen. Every single attribute therefore confuses at least one
// pair, while any two attributes from the distinguishing sets resolve all
// eight classes.
constexpr double kDefaultCenters[traffic_class_count][11] = {
    //  inOct    outOct   inUcast outUcast inNU outNU inDisc outDisc inErr outErr outQLen
    {2.0e6,   1.8e6,   2500,   2400,  120, 80,    2,    1,    1,  1,   2},   // Normal
    {7.5e6,   2.6e6, 120000,  60000,  120, 80,  900,  300,   10,  5,  60},   // TcpSyn
    {5.2e7,   2.2e6,  48000,   6000,  120, 80, 2600, 1400,  150,  5, 140},   // UdpFlood
    {9.8e6,   9.5e6,  66000,  64000,  120, 80,   50,   20,   10,  2,  30},   // IcmpEcho
    {1.3e7,   1.2e8,  30000,  85000,  120, 80,   10,    5,    2,  1, 220},   // HttpFlood
    {6.0e5,   3.0e5,   9000,   8800,  120, 80,    4,    2,    1,  1,  25},   // Slowloris
    {6.0e5,   3.0e5,   9000,  13500,  120, 80,    4,    2,    1,  1,  45},   // Slowpost
    {2.0e6,   1.8e6,  20000,   2400,  120, 80,    2,    1,   40,  1,   2},   // BruteForce
};

constexpr std::size_t kTable1Counts[traffic_class_count] = {600, 960, 773, 632,
                                                            573, 780, 480, 200};

} // namespace

synth_profile synth_profile::default_profile() { return default_profile(0.03); }

synth_profile synth_profile::default_profile(double noise_rate) {
    synth_profile p;
    p.attrs = schema::default_interface_group();
    p.noise_rate = noise_rate;
    for (std::size_t c = 0; c < traffic_class_count; ++c) {
        p.class_counts[c] = kTable1Counts[c];
        p.centers[c].assign(std::begin(kDefaultCenters[c]), std::end(kDefaultCenters[c]));
        p.spreads[c].resize(p.attrs.size());
        for (std::size_t a = 0; a < p.attrs.size(); ++a)
            p.spreads[c][a] = std::max(0.02 * p.centers[c][a], 0.5);
    }
    return p;
}

void synth_profile::validate() const {
    if (attrs.size() == 0)
        throw config_error("profile: schema declares no attributes");
    if (!(noise_rate >= 0.0 && noise_rate < 1.0))
        throw config_error("profile: noise_rate must lie in [0, 1)");
    for (std::size_t c = 0; c < traffic_class_count; ++c) {
        const auto name = std::string(to_string(all_traffic_classes()[c]));
        if (centers[c].size() != attrs.size())
            throw config_error("profile: centers[" + name + "] must list " +
                               std::to_string(attrs.size()) + " values");
        if (spreads[c].size() != attrs.size())
            throw config_error("profile: spreads[" + name + "] must list " +
                               std::to_string(attrs.size()) + " values");
        for (std::size_t a = 0; a < attrs.size(); ++a) {
            if (!(std::isfinite(centers[c][a]) && centers[c][a] >= 0.0))
                throw config_error("profile: centers[" + name + "][" + attrs.at(a).name +
                                   "] must be finite and >= 0");
            if (!(std::isfinite(spreads[c][a]) && spreads[c][a] >= 0.0))
                throw config_error("profile: spreads[" + name + "][" + attrs.at(a).name +
                                   "] must be >= 0");
        }
    }
}

dataset synthesize(const synth_profile &profile, std::uint64_t seed) {
    profile.validate();

    // noise redraws land anywhere in the attribute's global value range
    std::vector<double> noise_max(profile.attrs.size(), 0.0);
    for (std::size_t a = 0; a < profile.attrs.size(); ++a) {
        for (std::size_t c = 0; c < traffic_class_count; ++c)
            noise_max[a] = std::max(noise_max[a], profile.centers[c][a] + profile.spreads[c][a]);
        noise_max[a] *= 1.1;
    }

    rng gen(seed);
    std::vector<mib_record> records;
    for (std::size_t c = 0; c < traffic_class_count; ++c) {
        for (std::size_t k = 0; k < profile.class_counts[c]; ++k) {
            mib_record r;
            r.label = all_traffic_classes()[c];
            r.values.resize(profile.attrs.size());
            for (std::size_t a = 0; a < profile.attrs.size(); ++a) {
                const double v = gen.triangular(profile.centers[c][a], profile.spreads[c][a]);
                r.values[a] = std::max(0.0, v);
            }
            if (profile.noise_rate > 0.0 && gen.unit() < profile.noise_rate) {
                const auto a = static_cast<std::size_t>(gen.below(profile.attrs.size()));
                r.values[a] = gen.uniform(0.0, noise_max[a]);
            }
            records.push_back(std::move(r));
        }
    }

    return dataset(profile.attrs, std::move(records), "synthetic:" + std::to_string(seed));
}

bool profile_separable(const synth_profile &profile, double k_spreads) {
    for (std::size_t c1 = 0; c1 < traffic_class_count; ++c1) {
        for (std::size_t c2 = c1 + 1; c2 < traffic_class_count; ++c2) {
            if (profile.class_counts[c1] == 0 || profile.class_counts[c2] == 0)
                continue;
            bool separated = false;
            for (std::size_t a = 0; a < profile.attrs.size() && !separated; ++a) {
                const double gap = std::abs(profile.centers[c1][a] - profile.centers[c2][a]);
                const double spread = std::max(profile.spreads[c1][a], profile.spreads[c2][a]);
                separated = gap >= k_spreads * spread;
            }
            if (!separated)
                return false;
        }
    }
    return true;
}

namespace {

using nlohmann::json;

double field_number(const json &obj, const std::string &field, double lo) {
    if (!obj.contains(field))
        throw config_error("profile: missing field '" + field + "'");
    if (!obj[field].is_number())
        throw config_error("profile: field '" + field + "' must be a number");
    const double v = obj[field].get<double>();
    if (v < lo)
        throw config_error("profile: field '" + field + "' must be >= " + std::to_string(lo));
    return v;
}

} // namespace

synth_profile load_profile(std::istream &in) {
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error &e) {
        throw config_error(std::string("profile: ") + e.what());
    }
    if (!doc.is_object())
        throw config_error("profile: top level must be an object");
    if (!doc.contains("attributes") || !doc["attributes"].is_array())
        throw config_error("profile: missing field 'attributes'");

    synth_profile p;
    std::vector<std::string> names;
    for (const auto &n : doc["attributes"]) {
        if (!n.is_string())
            throw config_error("profile: field 'attributes' must hold strings");
        names.push_back(n.get<std::string>());
    }
    try {
        p.attrs = schema(std::move(names));
    } catch (const data_format_error &e) {
        throw config_error(std::string("profile: attributes: ") + e.what());
    }

    p.noise_rate = doc.contains("noise_rate") ? field_number(doc, "noise_rate", 0.0) : 0.0;

    if (!doc.contains("classes") || !doc["classes"].is_object())
        throw config_error("profile: missing field 'classes'");
    const auto &classes = doc["classes"];
    for (std::size_t c = 0; c < traffic_class_count; ++c) {
        const std::string name(to_string(all_traffic_classes()[c]));
        if (!classes.contains(name)) {
            p.class_counts[c] = 0;
            p.centers[c].assign(p.attrs.size(), 0.0);
            p.spreads[c].assign(p.attrs.size(), 0.0);
            continue;
        }
        const auto &cls = classes[name];
        p.class_counts[c] = static_cast<std::size_t>(field_number(cls, "count", 0.0));
        for (const char *field : {"centers", "spreads"}) {
            if (!cls.contains(field) || !cls[field].is_array() ||
                cls[field].size() != p.attrs.size())
                throw config_error("profile: classes." + name + "." + field + " must list " +
                                   std::to_string(p.attrs.size()) + " numbers");
            auto &dst = field == std::string("centers") ? p.centers[c] : p.spreads[c];
            for (const auto &v : cls[field]) {
                if (!v.is_number())
                    throw config_error("profile: classes." + name + "." + field +
                                       " must hold numbers");
                dst.push_back(v.get<double>());
            }
        }
    }
    p.validate();
    return p;
}

synth_profile load_profile_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw config_error("cannot open profile '" + path + "'");
    return load_profile(in);
}

} // namespace mibwarden
