// traffic_class.hpp

#ifndef MIBWARDEN_TRAFFIC_CLASS_HPP
#define MIBWARDEN_TRAFFIC_CLASS_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>

namespace mibwarden {

/// The eight traffic labels, in canonical order. The order is load-bearing:
/// it breaks ties in learners and fixes row/column order in reports.
enum class traffic_class : std::uint8_t {
    normal = 0,
    tcp_syn,
    udp_flood,
    icmp_echo,
    http_flood,
    slowloris,
    slowpost,
    brute_force,
};

inline constexpr std::size_t traffic_class_count = 8;

constexpr std::array<traffic_class, traffic_class_count> all_traffic_classes() {
    return {traffic_class::normal,     traffic_class::tcp_syn,
            traffic_class::udp_flood,  traffic_class::icmp_echo,
            traffic_class::http_flood, traffic_class::slowloris,
            traffic_class::slowpost,   traffic_class::brute_force};
}

constexpr std::size_t class_index(traffic_class c) {
    return static_cast<std::size_t>(c);
}

std::string_view to_string(traffic_class c);

/// Case-insensitive lookup that also tolerates punctuation and spacing
/// variants seen in CSV exports ("TCP-SYN", "Brute Force", "udp flood", ...).
std::optional<traffic_class> traffic_class_from(std::string_view name);

} // namespace mibwarden

#endif // MIBWARDEN_TRAFFIC_CLASS_HPP
