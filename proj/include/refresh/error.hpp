#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace refresh
{

/// Base class for every error raised by the toolkit.
///
/// `code()` is a stable machine-readable identifier used by the CLI and the
/// HTTP service when reporting failures.
class Error : public std::runtime_error
{
  public:
    Error(std::string code, const std::string& message) :
        std::runtime_error(message), code_(std::move(code))
    {}

    const std::string& code() const noexcept
    {
        return code_;
    }

  private:
    std::string code_;
};

/// A value violates a domain invariant. `field()` names the offending field
/// using a dotted/indexed path (for example `devices[2].power.p_static_w`).
class ValidationError : public Error
{
  public:
    ValidationError(std::string field, std::string reason) :
        Error("validation_error", field + ": " + reason),
        field_(std::move(field)), reason_(std::move(reason))
    {}

    const std::string& field() const noexcept
    {
        return field_;
    }
    const std::string& reason() const noexcept
    {
        return reason_;
    }

  private:
    std::string field_;
    std::string reason_;
};

class FileNotFound : public Error
{
  public:
    explicit FileNotFound(const std::string& path) :
        Error("file_not_found", "file not found: " + path), path_(path)
    {}

    const std::string& path() const noexcept
    {
        return path_;
    }

  private:
    std::string path_;
};

class ParseError : public Error
{
  public:
    ParseError(const std::string& path, std::size_t line, std::size_t column,
               const std::string& detail) :
        Error("parse_error", path + ":" + std::to_string(line) + ":" +
                                 std::to_string(column) + ": " + detail),
        line_(line), column_(column)
    {}

    std::size_t line() const noexcept
    {
        return line_;
    }
    std::size_t column() const noexcept
    {
        return column_;
    }

  private:
    std::size_t line_;
    std::size_t column_;
};

class DanglingReference : public Error
{
  public:
    DanglingReference(std::string compositionId, std::string missingId) :
        Error("dangling_reference", "composition '" + compositionId +
                                        "' references unknown id '" +
                                        missingId + "'"),
        compositionId_(std::move(compositionId)),
        missingId_(std::move(missingId))
    {}

    const std::string& compositionId() const noexcept
    {
        return compositionId_;
    }
    const std::string& missingId() const noexcept
    {
        return missingId_;
    }

  private:
    std::string compositionId_;
    std::string missingId_;
};

class UnknownId : public Error
{
  public:
    explicit UnknownId(const std::string& id) :
        Error("unknown_id", "unknown device or composition id '" + id + "'"),
        id_(id)
    {}

    const std::string& id() const noexcept
    {
        return id_;
    }

  private:
    std::string id_;
};

class EmptyComposition : public Error
{
  public:
    EmptyComposition() :
        Error("empty_composition", "composition must contain at least one die")
    {}
};

class SdllBudgetExceeded : public Error
{
  public:
    SdllBudgetExceeded(long required, long capacity) :
        Error("sdll_budget_exceeded",
              "SDLL budget exceeded: required " + std::to_string(required) +
                  " > capacity " + std::to_string(capacity)),
        required_(required), capacity_(capacity)
    {}

    long required() const noexcept
    {
        return required_;
    }
    long capacity() const noexcept
    {
        return capacity_;
    }

  private:
    long required_;
    long capacity_;
};

class InfeasibleDutyCycle : public Error
{
  public:
    InfeasibleDutyCycle(double requiredActive, double awakeBudget) :
        Error("infeasible_duty_cycle",
              "equal-work adjustment needs active fraction " +
                  std::to_string(requiredActive) + " but only " +
                  std::to_string(awakeBudget) + " of time is awake"),
        requiredActive_(requiredActive), awakeBudget_(awakeBudget)
    {}

    double requiredActive() const noexcept
    {
        return requiredActive_;
    }
    double awakeBudget() const noexcept
    {
        return awakeBudget_;
    }

  private:
    double requiredActive_;
    double awakeBudget_;
};

/// Failures of the remote grid-intensity client carry the endpoint and
/// region that were queried.
class RemoteError : public Error
{
  public:
    RemoteError(std::string code, const std::string& endpoint,
                const std::string& region, const std::string& detail) :
        Error(std::move(code), detail + " (endpoint " + endpoint +
                                   ", region " + region + ")"),
        endpoint_(endpoint), region_(region)
    {}

    const std::string& endpoint() const noexcept
    {
        return endpoint_;
    }
    const std::string& region() const noexcept
    {
        return region_;
    }

  private:
    std::string endpoint_;
    std::string region_;
};

class NetworkError : public RemoteError
{
  public:
    NetworkError(const std::string& endpoint, const std::string& region,
                 const std::string& detail) :
        RemoteError("network_error", endpoint, region, detail)
    {}
};

class RemoteSchemaError : public RemoteError
{
  public:
    RemoteSchemaError(const std::string& endpoint, const std::string& region,
                      const std::string& detail) :
        RemoteError("remote_schema_error", endpoint, region, detail)
    {}
};

} // namespace refresh
