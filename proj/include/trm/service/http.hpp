#pragma once

#include <memory>
#include <string>

#include "trm/service/service.hpp"

namespace trm::service {

/// Blocking HTTP front end for a PredictionService.
class HttpServer {
public:
    explicit HttpServer(const PredictionService& service);
    ~HttpServer();

    /// Binds; port 0 picks a free port. Returns the bound port.
    int bind(const std::string& host, int port);
    /// Serves until stop() is called.
    void listen();
    void stop();

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

/// Splits "host:port" (port required).
std::pair<std::string, int> parse_bind_address(const std::string& address);

}  // namespace trm::service
