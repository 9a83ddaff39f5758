#include "refresh/api_service.hpp"

#include "refresh/analysis.hpp"
#include "refresh/error.hpp"

#include <httplib.h>

#include <vector>

namespace refresh
{

ApiResponse errorResponse(int status, const std::string& code,
                          const std::string& message,
                          const std::optional<std::string>& field)
{
    json err = {{"code", code}, {"message", message}};
    if (field)
    {
        err["field"] = *field;
    }
    return ApiResponse{status, json{{"error", std::move(err)}}.dump()};
}

namespace
{

json catalogListing(const Catalog& catalog)
{
    json j = catalogToJson(catalog);
    // Compositions also carry the aggregate device they resolve to.
    for (auto& entry : j["compositions"])
    {
        const auto& id = entry["id"].get_ref<const std::string&>();
        entry["composed"] = toJson(compose(catalog.compositions.at(id)));
    }
    return j;
}

template <typename F>
ApiResponse guarded(F&& body)
{
    try
    {
        return body();
    }
    catch (const json::parse_error& e)
    {
        return errorResponse(400, "malformed_json", e.what());
    }
    catch (const ValidationError& e)
    {
        return errorResponse(400, e.code(), e.what(), e.field());
    }
    catch (const EmptyComposition& e)
    {
        return errorResponse(400, e.code(), e.what());
    }
    catch (const UnknownId& e)
    {
        return errorResponse(404, e.code(), e.what());
    }
    catch (const DanglingReference& e)
    {
        return errorResponse(404, e.code(), e.what());
    }
    catch (const InfeasibleDutyCycle& e)
    {
        return errorResponse(422, e.code(), e.what());
    }
    catch (const SdllBudgetExceeded& e)
    {
        return errorResponse(422, e.code(), e.what());
    }
    catch (const Error& e)
    {
        return errorResponse(500, e.code(), e.what());
    }
    catch (const std::exception& e)
    {
        return errorResponse(500, "internal_error", e.what());
    }
}

} // namespace

ApiHandler::ApiHandler(std::shared_ptr<const Catalog> catalog) :
    catalog_(std::move(catalog)), catalogBody_(catalogListing(*catalog_).dump())
{}

ApiResponse ApiHandler::handle(const std::string& method,
                               const std::string& path,
                               const std::string& body) const
{
    if (method == "GET" && path == "/api/v1/health")
        return health();
    if (method == "GET" && path == "/api/v1/catalog")
        return catalog();
    if (method == "POST" && path == "/api/v1/analyze")
        return analyze(body);
    if (method == "POST" && path == "/api/v1/sweep")
        return sweep(body);
    return errorResponse(404, "not_found", "no route for " + method + " " + path);
}

ApiResponse ApiHandler::health() const
{
    return ApiResponse{200, R"({"status":"ok"})"};
}

ApiResponse ApiHandler::catalog() const
{
    return ApiResponse{200, catalogBody_};
}

ApiResponse ApiHandler::analyze(const std::string& body) const
{
    return guarded([&] {
        const json request = json::parse(body);
        const AnalysisOutcome outcome =
            runAnalysis(analysisRequestFromJson(request, *catalog_));
        return ApiResponse{200, analysisToJson(outcome).dump()};
    });
}

ApiResponse ApiHandler::sweep(const std::string& body) const
{
    return guarded([&] {
        const json request = json::parse(body);
        FieldReader r(request, "");
        const std::string name = r.string("parameter");
        const auto parameter = parseSweepParameter(name);
        if (!parameter)
        {
            throw ValidationError("parameter",
                                  "expected renewable_fraction, r_active, "
                                  "r_sleep or die_count");
        }
        const json& rawValues = r.at("values");
        if (!rawValues.is_array())
        {
            throw ValidationError("values", "expected an array of numbers");
        }
        std::vector<double> values;
        for (std::size_t i = 0; i < rawValues.size(); ++i)
        {
            if (!rawValues[i].is_number())
            {
                throw ValidationError("values[" + std::to_string(i) + "]",
                                      "expected a number");
            }
            values.push_back(rawValues[i].get<double>());
        }

        const OptionSource opt0 =
            optionFromJson(r.at("option0"), "option0", *catalog_);
        const OptionSource opt1 =
            optionFromJson(r.at("option1"), "option1", *catalog_);
        const json emptyScenario = json::object();
        const DeploymentScenario scenario = scenarioFromJson(
            r.has("scenario") ? r.at("scenario") : emptyScenario, "scenario");

        const SweepResult result =
            refresh::sweep(opt0, opt1, scenario, *parameter, values);
        return ApiResponse{200, sweepToJson(result).dump()};
    });
}

ApiService::ApiService(std::shared_ptr<const Catalog> catalog,
                       ServiceOptions options) :
    handler_(std::move(catalog)),
    options_(std::move(options)), server_(std::make_unique<httplib::Server>())
{
    auto reply = [this](const httplib::Request& req, httplib::Response& res) {
        const ApiResponse out = handler_.handle(req.method, req.path, req.body);
        res.status = out.status;
        res.set_content(out.body, out.contentType);
    };
    // Without SO_REUSEPORT so a port already in use fails to bind.
    server_->set_socket_options([](socket_t sock) {
        int yes = 1;
        setsockopt(sock, SOL_SOCKET, SO_REUSEADDR,
                   reinterpret_cast<const char*>(&yes), sizeof(yes));
    });
    server_->Get("/api/v1/health", reply);
    server_->Get("/api/v1/catalog", reply);
    server_->Post("/api/v1/analyze", reply);
    server_->Post("/api/v1/sweep", reply);

    server_->set_error_handler(
        [](const httplib::Request& req, httplib::Response& res) {
            if (!res.body.empty())
            {
                return;
            }
            const std::string code =
                res.status == 404 ? "not_found" : "http_error";
            const ApiResponse out = errorResponse(
                res.status, code,
                "no route for " + req.method + " " + req.path);
            res.set_content(out.body, out.contentType);
        });

    if (options_.corsOrigin)
    {
        const std::string origin = *options_.corsOrigin;
        server_->set_post_routing_handler(
            [origin](const httplib::Request&, httplib::Response& res) {
                res.set_header("Access-Control-Allow-Origin", origin);
                res.set_header("Vary", "Origin");
            });
        server_->Options(R"(/api/v1/.*)", [origin](const httplib::Request&,
                                                   httplib::Response& res) {
            res.status = 204;
            res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
            res.set_header("Access-Control-Allow-Headers", "Content-Type");
        });
    }
}

ApiService::~ApiService()
{
    stop();
}

bool ApiService::bind()
{
    if (options_.port == 0)
    {
        port_ = server_->bind_to_any_port(options_.host);
        return port_ > 0;
    }
    if (!server_->bind_to_port(options_.host, options_.port))
    {
        return false;
    }
    port_ = options_.port;
    return true;
}

void ApiService::run()
{
    server_->listen_after_bind();
}

void ApiService::stop()
{
    if (server_)
    {
        server_->stop();
    }
}

} // namespace refresh
