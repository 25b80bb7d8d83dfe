#include "trm/service/http.hpp"

#include <httplib.h>

namespace trm::service {

struct HttpServer::Impl {
    httplib::Server server;
};

HttpServer::HttpServer(const PredictionService& service) : impl_(std::make_unique<Impl>()) {
    auto route = [&service](const httplib::Request& req, httplib::Response& res) {
        const auto r = service.handle(req.method, req.path, req.body);
        res.status = r.status;
        res.set_content(r.body.dump(), "application/json");
    };
    for (const char* path : {"/health", "/schema", "/model/meta", "/predict", "/explain"}) {
        impl_->server.Get(path, route);
        impl_->server.Post(path, route);
    }
    impl_->server.set_error_handler([&service](const httplib::Request& req, httplib::Response& res) {
        if (!res.body.empty()) return;
        const auto r = service.handle(req.method, req.path, req.body);
        res.set_content(r.body.dump(), "application/json");
    });
    impl_->server.set_default_headers({{"Access-Control-Allow-Origin", "*"}});
}

HttpServer::~HttpServer() = default;

int HttpServer::bind(const std::string& host, int port) {
    if (port == 0) {
        const int p = impl_->server.bind_to_any_port(host);
        if (p < 0) throw Error("cannot bind " + host);
        return p;
    }
    if (!impl_->server.bind_to_port(host, port)) throw Error("cannot bind " + host + ":" + std::to_string(port));
    return port;
}

void HttpServer::listen() { impl_->server.listen_after_bind(); }

void HttpServer::stop() { impl_->server.stop(); }

std::pair<std::string, int> parse_bind_address(const std::string& address) {
    const auto colon = address.rfind(':');
    if (colon == std::string::npos || colon + 1 == address.size())
        throw InvalidArgument("bind address must be host:port, got '" + address + "'");
    const auto port_text = address.substr(colon + 1);
    if (port_text.find_first_not_of("0123456789") != std::string::npos)
        throw InvalidArgument("invalid port '" + port_text + "'");
    const int port = std::stoi(port_text);
    if (port > 65535) throw InvalidArgument("port out of range: " + port_text);
    return {address.substr(0, colon), port};
}

}  // namespace trm::service
