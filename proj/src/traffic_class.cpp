// traffic_class.cpp

#include "mibwarden/traffic_class.hpp"

#include <cctype>
#include <string>

namespace mibwarden {

std::string_view to_string(traffic_class c) {
    switch (c) {
    case traffic_class::normal: return "Normal";
    case traffic_class::tcp_syn: return "TcpSyn";
    case traffic_class::udp_flood: return "UdpFlood";
    case traffic_class::icmp_echo: return "IcmpEcho";
    case traffic_class::http_flood: return "HttpFlood";
    case traffic_class::slowloris: return "Slowloris";
    case traffic_class::slowpost: return "Slowpost";
    case traffic_class::brute_force: return "BruteForce";
    }
    return "?";
}

namespace {

// lowercase alphanumerics only: "TCP-SYN" and "TcpSyn" both become "tcpsyn"
std::string fold(std::string_view name) {
    std::string out;
    out.reserve(name.size());
    for (char ch : name) {
        const auto u = static_cast<unsigned char>(ch);
        if (std::isalnum(u))
            out.push_back(static_cast<char>(std::tolower(u)));
    }
    return out;
}

} // namespace

std::optional<traffic_class> traffic_class_from(std::string_view name) {
    const std::string key = fold(name);
    for (traffic_class c : all_traffic_classes()) {
        if (key == fold(to_string(c)))
            return c;
    }
    return std::nullopt;
}

} // namespace mibwarden
