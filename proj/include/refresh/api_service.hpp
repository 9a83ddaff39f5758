#pragma once

#include "refresh/ingest.hpp"

#include <memory>
#include <optional>
#include <string>

namespace httplib
{
class Server;
}

namespace refresh
{

struct ApiResponse
{
    int status = 200;
    std::string body;
    std::string contentType = "application/json";
};

/// Stateless request handling over an immutable catalog. Safe to call from
/// any number of threads.
class ApiHandler
{
  public:
    explicit ApiHandler(std::shared_ptr<const Catalog> catalog);

    ApiResponse handle(const std::string& method, const std::string& path,
                       const std::string& body) const;

    ApiResponse health() const;
    ApiResponse catalog() const;
    ApiResponse analyze(const std::string& body) const;
    ApiResponse sweep(const std::string& body) const;

  private:
    std::shared_ptr<const Catalog> catalog_;
    std::string catalogBody_;
};

/// Error body shared by every failing endpoint:
/// {"error": {"code", "message", "field"?}}.
ApiResponse errorResponse(int status, const std::string& code,
                          const std::string& message,
                          const std::optional<std::string>& field = {});

struct ServiceOptions
{
    std::string host = "127.0.0.1";
    /// 0 picks a free port.
    int port = 8080;
    /// Origin allowed for cross-origin requests; none means same-origin only.
    std::optional<std::string> corsOrigin;
};

/// HTTP/1.1 front end over ApiHandler.
class ApiService
{
  public:
    ApiService(std::shared_ptr<const Catalog> catalog, ServiceOptions options);
    ~ApiService();

    ApiService(const ApiService&) = delete;
    ApiService& operator=(const ApiService&) = delete;

    /// False when the address cannot be bound.
    bool bind();
    int port() const noexcept
    {
        return port_;
    }
    /// Serves until stop(); requires a successful bind().
    void run();
    void stop();

  private:
    ApiHandler handler_;
    ServiceOptions options_;
    std::unique_ptr<httplib::Server> server_;
    int port_ = 0;
};

} // namespace refresh
