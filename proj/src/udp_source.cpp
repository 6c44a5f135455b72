#include "streamq/udp_source.hpp"

#include <arpa/inet.h>
#include <netinet/in.h>
#include <poll.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>

#include "streamq/errors.hpp"

namespace streamq {

UdpSource::UdpSource(const std::string& host, std::uint16_t port) {
    fd_ = ::socket(AF_INET, SOCK_DGRAM, 0);
    if (fd_ < 0) {
        throw SourceUnavailable("socket: " + std::string(std::strerror(errno)));
    }
    sockaddr_in addr{};
    addr.sin_family = AF_INET;
    addr.sin_port = htons(port);
    if (host.empty() || host == "0.0.0.0" || host == "*") {
        addr.sin_addr.s_addr = htonl(INADDR_ANY);
    } else if (::inet_pton(AF_INET, host.c_str(), &addr.sin_addr) != 1) {
        ::close(fd_);
        throw SourceUnavailable("bad UDP bind address: " + host);
    }
    if (::bind(fd_, reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) != 0) {
        const std::string msg = std::strerror(errno);
        ::close(fd_);
        throw SourceUnavailable("bind: " + msg);
    }
    sockaddr_in bound{};
    socklen_t len = sizeof(bound);
    if (::getsockname(fd_, reinterpret_cast<sockaddr*>(&bound), &len) == 0) {
        port_ = ntohs(bound.sin_port);
    }
}

UdpSource::~UdpSource() {
    if (fd_ >= 0) {
        ::close(fd_);
    }
}

bool UdpSource::next(std::string& record, std::chrono::milliseconds timeout) {
    pollfd pfd{fd_, POLLIN, 0};
    const int rc = ::poll(&pfd, 1, static_cast<int>(timeout.count()));
    if (rc <= 0) {
        return false;
    }
    char buf[65536];
    const ssize_t got = ::recvfrom(fd_, buf, sizeof(buf), 0, nullptr, nullptr);
    if (got < 0) {
        return false;
    }
    record.assign(buf, static_cast<std::size_t>(got));
    return true;
}

std::pair<std::string, std::uint16_t> parse_udp_endpoint(const std::string& uri) {
    constexpr std::string_view prefix = "udp://";
    if (uri.rfind(prefix, 0) != 0) {
        throw InvalidConfig("UDP endpoint must look like udp://HOST:PORT");
    }
    const std::string rest = uri.substr(prefix.size());
    const std::size_t colon = rest.rfind(':');
    if (colon == std::string::npos) {
        throw InvalidConfig("UDP endpoint must look like udp://HOST:PORT");
    }
    const std::string host = rest.substr(0, colon);
    int port = 0;
    try {
        port = std::stoi(rest.substr(colon + 1));
    } catch (const std::exception&) {
        throw InvalidConfig("bad UDP port in: " + uri);
    }
    if (port < 0 || port > 65535) {
        throw InvalidConfig("bad UDP port in: " + uri);
    }
    return {host, static_cast<std::uint16_t>(port)};
}

}  // namespace streamq
