#pragma once

#include <chrono>
#include <cstdint>
#include <string>

namespace streamq {

/// Bound UDP socket delivering one record per datagram. Port 0 binds an
/// ephemeral port (see port()).
class UdpSource {
public:
    UdpSource(const std::string& host, std::uint16_t port);
    ~UdpSource();

    UdpSource(const UdpSource&) = delete;
    UdpSource& operator=(const UdpSource&) = delete;

    std::uint16_t port() const { return port_; }

    /// Receives the next datagram into `record`. Returns false on timeout,
    /// so callers can poll a shutdown flag between waits.
    bool next(std::string& record, std::chrono::milliseconds timeout);

private:
    int fd_ = -1;
    std::uint16_t port_ = 0;
};

/// Splits "udp://HOST:PORT" into its parts; throws InvalidConfig otherwise.
std::pair<std::string, std::uint16_t> parse_udp_endpoint(const std::string& uri);

}  // namespace streamq
