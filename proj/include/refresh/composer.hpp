#pragma once

#include "refresh/core_model.hpp"

#include <optional>
#include <string>
#include <vector>

namespace refresh
{

/// Interposer and packaging used to join retired dies.
///
/// `sdllEfficiency` derates aggregate throughput for traffic crossing die
/// boundaries over SDLLs (I/O already routed to package pins).
class InterposerSpec
{
  public:
    struct Params
    {
        double embodiedKgCo2e = 0.0;
        double sdllEfficiency = 1.0;
        double powerOverheadW = 0.0;
        std::optional<long> sdllCapacity;

        bool operator==(const Params&) const = default;
    };

    explicit InterposerSpec(Params params);

    /// Zero-carbon, lossless, zero-overhead interposer.
    static InterposerSpec ideal();

    const Params& params() const noexcept
    {
        return p_;
    }
    double embodiedKgCo2e() const noexcept
    {
        return p_.embodiedKgCo2e;
    }
    double sdllEfficiency() const noexcept
    {
        return p_.sdllEfficiency;
    }
    double powerOverheadW() const noexcept
    {
        return p_.powerOverheadW;
    }
    const std::optional<long>& sdllCapacity() const noexcept
    {
        return p_.sdllCapacity;
    }

    bool operator==(const InterposerSpec&) const = default;

  private:
    Params p_;
};

struct DieEntry
{
    DeviceProfile die;
    int count = 1;

    bool operator==(const DieEntry&) const = default;
};

class Composition
{
  public:
    struct Params
    {
        std::string id = "composed";
        std::string displayName = "REFRESH composition";
        std::vector<DieEntry> dies;
        InterposerSpec interposer = InterposerSpec::ideal();
        double residualEmbodiedFraction = 0.0;
        double lifetimeYears = 0.0;
        std::optional<long> sdllRequired;

        bool operator==(const Params&) const = default;
    };

    /// Throws EmptyComposition for an empty die list and ValidationError for
    /// any other invariant violation.
    explicit Composition(Params params);

    const Params& params() const noexcept
    {
        return p_;
    }
    const std::vector<DieEntry>& dies() const noexcept
    {
        return p_.dies;
    }
    const InterposerSpec& interposer() const noexcept
    {
        return p_.interposer;
    }

    /// Same composition with every die count set to `count`.
    Composition withDieCount(int count) const;

    bool operator==(const Composition&) const = default;

  private:
    Params p_;
};

/// Throws SdllBudgetExceeded when both the requirement and the interposer
/// capacity are known and the requirement is larger.
void validateComposition(const Composition& c);

/// First-order aggregate device for a REFRESH composition:
///   throughput = efficiency * sum(count * units / latency)
///   power      = component-wise sum over dies, interposer overhead on static
///   embodied   = interposer + residual fraction * sum(count * die embodied)
DeviceProfile compose(const Composition& c);

} // namespace refresh
