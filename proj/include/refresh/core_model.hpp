#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace refresh
{

inline constexpr double kHoursPerYear = 8760.0;
inline constexpr double kSecondsPerYear = 31'536'000.0;

/// Per-state power draw of a device, in watts.
///
/// Active power is `dynamic + static`, idle power is `static` only, sleep
/// power is `sleep` (zero unless the catalog says otherwise).
class PowerProfile
{
  public:
    PowerProfile(double dynamicW, double staticW, double sleepW = 0.0);

    double dynamicW() const noexcept
    {
        return dynamicW_;
    }
    double staticW() const noexcept
    {
        return staticW_;
    }
    double sleepW() const noexcept
    {
        return sleepW_;
    }
    double activeW() const noexcept
    {
        return dynamicW_ + staticW_;
    }

    bool operator==(const PowerProfile&) const = default;

  private:
    double dynamicW_;
    double staticW_;
    double sleepW_;
};

/// A deployable accelerator.
///
/// `unitWorkLatencyNs` is the time one unit of the benchmark kernel takes on
/// one of the `parallelUnits` independent pipelines.
class DeviceProfile
{
  public:
    struct Params
    {
        std::string id;
        std::string displayName;
        double techNodeNm = 0.0;
        double unitWorkLatencyNs = 0.0;
        int parallelUnits = 1;
        PowerProfile power{0.0, 0.0, 0.0};
        double embodiedKgCo2e = 0.0;
        double lifetimeYears = 0.0;

        bool operator==(const Params&) const = default;
    };

    explicit DeviceProfile(Params params);

    const Params& params() const noexcept
    {
        return p_;
    }
    const std::string& id() const noexcept
    {
        return p_.id;
    }
    const std::string& displayName() const noexcept
    {
        return p_.displayName;
    }
    double techNodeNm() const noexcept
    {
        return p_.techNodeNm;
    }
    double unitWorkLatencyNs() const noexcept
    {
        return p_.unitWorkLatencyNs;
    }
    int parallelUnits() const noexcept
    {
        return p_.parallelUnits;
    }
    const PowerProfile& power() const noexcept
    {
        return p_.power;
    }
    double embodiedKgCo2e() const noexcept
    {
        return p_.embodiedKgCo2e;
    }
    double lifetimeYears() const noexcept
    {
        return p_.lifetimeYears;
    }

    /// Work units completed per nanosecond while active.
    double throughputPerNs() const noexcept
    {
        return static_cast<double>(p_.parallelUnits) / p_.unitWorkLatencyNs;
    }

    bool operator==(const DeviceProfile&) const = default;

  private:
    Params p_;
};

/// Partition of service time. `rSleep` is sleep time over total time;
/// `rActive` is compute time over non-sleep (awake) time.
class DutyCycle
{
  public:
    DutyCycle(double rSleep, double rActive);

    double rSleep() const noexcept
    {
        return rSleep_;
    }
    double rActive() const noexcept
    {
        return rActive_;
    }

    bool operator==(const DutyCycle&) const = default;

  private:
    double rSleep_;
    double rActive_;
};

struct StateFractions
{
    double active;
    double idle;
    double sleep;
};

/// Named duty-cycle presets: case1 (0.25, 0.25), case2 (0.50, 0.50),
/// case3 (0.25, 0.75). Returns nullopt for any other name.
std::optional<DutyCycle> dutyPreset(std::string_view name);

class GridProfile
{
  public:
    GridProfile(double baseIntensityGPerKwh, double renewableFraction,
                double renewableIntensityGPerKwh = 0.0);

    double baseIntensityGPerKwh() const noexcept
    {
        return base_;
    }
    double renewableFraction() const noexcept
    {
        return renewableFraction_;
    }
    double renewableIntensityGPerKwh() const noexcept
    {
        return renewable_;
    }

    bool operator==(const GridProfile&) const = default;

  private:
    double base_;
    double renewableFraction_;
    double renewable_;
};

enum class ComparisonMode
{
    EqualTime,
    EqualWork,
};

std::string_view toString(ComparisonMode mode);
std::optional<ComparisonMode> parseComparisonMode(std::string_view text);

class DeploymentScenario
{
  public:
    DeploymentScenario(GridProfile grid, DutyCycle duty,
                       ComparisonMode mode = ComparisonMode::EqualTime,
                       double horizonYears = 10.0);

    const GridProfile& grid() const noexcept
    {
        return grid_;
    }
    const DutyCycle& duty() const noexcept
    {
        return duty_;
    }
    ComparisonMode mode() const noexcept
    {
        return mode_;
    }
    double horizonYears() const noexcept
    {
        return horizonYears_;
    }

    DeploymentScenario withGrid(GridProfile grid) const;
    DeploymentScenario withDuty(DutyCycle duty) const;

    bool operator==(const DeploymentScenario&) const = default;

  private:
    GridProfile grid_;
    DutyCycle duty_;
    ComparisonMode mode_;
    double horizonYears_;
};

/// One side of a comparison. `dutyOverride` is set by the equal-work
/// adjustment and replaces the scenario duty for this option only.
struct SystemOption
{
    std::string label;
    DeviceProfile device;
    std::optional<DutyCycle> dutyOverride;

    const DutyCycle& effectiveDuty(const DeploymentScenario& scenario) const
    {
        return dutyOverride ? *dutyOverride : scenario.duty();
    }
};

StateFractions stateFractions(const DutyCycle& duty) noexcept;

/// (1 - r) * base + r * renewable, in gCO2e/kWh.
double effectiveIntensity(const GridProfile& grid) noexcept;

double averagePowerW(const DeviceProfile& device,
                     const DutyCycle& duty) noexcept;

/// kgCO2e per year drawn from the grid at the device's average power.
double annualOperationalCarbon(const DeviceProfile& device,
                               const DutyCycle& duty,
                               const GridProfile& grid) noexcept;

double annualOperationalCarbon(const DeviceProfile& device,
                               const DeploymentScenario& scenario) noexcept;

/// Work units delivered per year.
double annualWork(const DeviceProfile& device, const DutyCycle& duty) noexcept;

} // namespace refresh
