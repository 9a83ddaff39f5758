#include "refresh/error.hpp"
#include "refresh/ingest.hpp"

#include <httplib.h>

#include <regex>

namespace refresh
{

namespace
{

struct Endpoint
{
    std::string scheme;
    std::string hostPort;
    std::string basePath;
};

Endpoint parseEndpoint(const std::string& endpoint)
{
    static const std::regex pattern(
        R"(^(https?)://([A-Za-z0-9.\-]+|\[[0-9A-Fa-f:]+\])(:[0-9]{1,5})?(/[^?#]*)?$)");
    std::smatch m;
    if (!std::regex_match(endpoint, m, pattern))
    {
        throw ValidationError("endpoint", "not an http(s) URL: '" + endpoint +
                                              "'");
    }
    std::string base = m[4].str();
    while (!base.empty() && base.back() == '/')
    {
        base.pop_back();
    }
    return Endpoint{m[1].str(), m[2].str() + m[3].str(), base};
}

GridProfile fetchRemote(const std::string& endpoint, const std::string& region,
                        std::chrono::milliseconds timeout)
{
    const Endpoint ep = parseEndpoint(endpoint);
    if (ep.scheme != "http")
    {
        throw NetworkError(endpoint, region,
                           "https endpoints are not supported by this build");
    }

    httplib::Client client("http://" + ep.hostPort);
    client.set_connection_timeout(timeout);
    client.set_read_timeout(timeout);
    client.set_write_timeout(timeout);

    const httplib::Params params{{"region", region}};
    auto res = client.Get(ep.basePath + "/v1/intensity", params,
                          httplib::Headers{});
    if (!res)
    {
        throw NetworkError(endpoint, region,
                           "request failed: " + httplib::to_string(res.error()));
    }
    if (res->status != 200)
    {
        throw NetworkError(endpoint, region,
                           "unexpected HTTP status " +
                               std::to_string(res->status));
    }

    try
    {
        const json body = json::parse(res->body);
        FieldReader r(body, "");
        if (auto reported = r.optionalString("region");
            reported && *reported != region)
        {
            throw ValidationError("region", "response is for region '" +
                                                *reported + "'");
        }
        return GridProfile(r.number("intensity_g_per_kwh"),
                           r.number("renewable_fraction"), 0.0);
    }
    catch (const json::exception& e)
    {
        throw RemoteSchemaError(endpoint, region, e.what());
    }
    catch (const ValidationError& e)
    {
        throw RemoteSchemaError(endpoint, region, e.what());
    }
}

} // namespace

GridFetchResult fetchGridIntensity(
    const std::string& endpoint, const std::string& region,
    const std::optional<std::filesystem::path>& fallback,
    std::chrono::milliseconds timeout)
{
    parseEndpoint(endpoint);
    try
    {
        return GridFetchResult{fetchRemote(endpoint, region, timeout),
                               "remote"};
    }
    catch (const RemoteError&)
    {
        if (!fallback)
        {
            throw;
        }
    }
    return GridFetchResult{loadGrid(*fallback), "fallback"};
}

} // namespace refresh
