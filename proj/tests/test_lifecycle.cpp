#include "refresh/composer.hpp"
#include "refresh/error.hpp"
#include "refresh/lifecycle.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace refresh;
using refresh::test::makeDevice;
using refresh::test::vmk180;
using refresh::test::zcu102;

namespace
{

// Independent oracle: bisection on the difference of the two cumulative
// lines, written out from scratch instead of reusing library helpers.
std::optional<double> bisectCrossing(double o0, double e0, double l0,
                                     double o1, double e1, double l1,
                                     bool upfront0, double tMax)
{
    auto gap = [&](double t) {
        const double c0 = (upfront0 ? e0 : 0.0) + (o0 + e0 / l0) * t;
        const double c1 = e1 + (o1 + e1 / l1) * t;
        return c0 - c1;
    };
    double lo = 0.0, hi = tMax;
    const double glo = gap(lo);
    if (glo == 0.0)
        return 0.0;
    if (std::signbit(gap(hi)) == std::signbit(glo) && gap(hi) != 0.0)
        return std::nullopt;
    for (int i = 0; i < 200; ++i)
    {
        const double mid = 0.5 * (lo + hi);
        if (std::signbit(gap(mid)) == std::signbit(glo) && gap(mid) != 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

RateTerms terms(double o, double e, double l)
{
    return RateTerms{o, e, l};
}

DeploymentScenario scenario(double renewables, const char* preset,
                            ComparisonMode mode = ComparisonMode::EqualTime)
{
    return DeploymentScenario(GridProfile(400, renewables, 0),
                              *dutyPreset(preset), mode);
}

SystemOption option(const DeviceProfile& d)
{
    return SystemOption{d.id(), d, std::nullopt};
}

// Calibrated pair used across the suite: 4x ZCU102 on a 5 kg interposer with
// 4 W overhead against a 15 kg Versal part, both kept 6 years.
DeviceProfile refresh4x()
{
    Composition::Params p;
    p.id = "refresh_4x_zcu102";
    p.dies = {{zcu102(), 4}};
    p.interposer = InterposerSpec({5.0, 0.75, 4.0, 4096});
    p.lifetimeYears = 6.0;
    return compose(Composition(p));
}

DeviceProfile versal()
{
    return makeDevice("vm1802", 7, 3.99, 12.738, 9.384, 15.0, 6.0);
}

} // namespace

TEST(CrossoverTimes, HandWorkedExamples)
{
    // Rates 10 and 9: D = 1, N = 30.
    auto t = crossoverTimes(terms(10, 0, 2), terms(4, 30, 6));
    ASSERT_TRUE(t.indifferenceYears);
    EXPECT_DOUBLE_EQ(*t.indifferenceYears, 30.0);
    EXPECT_DOUBLE_EQ(*t.breakevenYears, 30.0);
    EXPECT_TRUE(t.diagnostics.empty());

    // Rates 8 + 5/6 and 3 + 15/6: D = 10/3.
    t = crossoverTimes(terms(8, 5, 6), terms(3, 15, 6));
    EXPECT_NEAR(*t.indifferenceYears, 3.0, 1e-12);
    EXPECT_NEAR(*t.breakevenYears, 4.5, 1e-12);
}

TEST(CrossoverTimes, EqualEmbodiedIsZero)
{
    const auto t = crossoverTimes(terms(5, 10, 3), terms(7, 10, 3));
    EXPECT_EQ(t.indifferenceYears, 0.0);
    EXPECT_FALSE(t.breakevenYears);
}

TEST(CrossoverTimes, IdenticalOptionsIndifferentFromStart)
{
    const auto t = crossoverTimes(terms(5, 10, 3), terms(5, 10, 3));
    EXPECT_EQ(t.indifferenceYears, 0.0);
    EXPECT_FALSE(t.breakevenYears);
}

TEST(CrossoverTimes, NeverRecoupedIsNone)
{
    const auto t = crossoverTimes(terms(3, 5, 6), terms(3, 15, 6));
    EXPECT_FALSE(t.indifferenceYears);
    EXPECT_FALSE(t.breakevenYears);
    ASSERT_FALSE(t.diagnostics.empty());
}

TEST(CrossoverTimes, CandidateDominatesFromStart)
{
    // Lower embodied and lower rate: indifferent at t = 0 with a note.
    const auto t = crossoverTimes(terms(9, 15, 6), terms(3, 5, 6));
    EXPECT_EQ(t.indifferenceYears, 0.0);
    ASSERT_TRUE(t.breakevenYears);
    EXPECT_FALSE(t.diagnostics.empty());
}

TEST(CrossoverTimes, BreakevenIdentity)
{
    const RateTerms a = terms(8, 5, 6), b = terms(3, 15, 6);
    const auto t = crossoverTimes(a, b);
    const double d = a.rate() - b.rate();
    EXPECT_NEAR(*t.breakevenYears - *t.indifferenceYears, a.embodiedKg / d,
                1e-12);
}

TEST(CumulativeCarbon, Lines)
{
    const RateTerms r = terms(2, 12, 4);
    EXPECT_EQ(cumulativeCarbon(r, 0, true), 12.0);
    EXPECT_EQ(cumulativeCarbon(r, 0, false), 0.0);
    EXPECT_DOUBLE_EQ(cumulativeCarbon(r, 2, true), 12.0 + 5.0 * 2);
    EXPECT_THROW(cumulativeCarbon(r, -1, true), ValidationError);
}

TEST(CrossoverScan, MatchesClosedForm)
{
    ScanOptions o;
    o.tMaxYears = 24;
    const auto s = crossoverScan(terms(8, 5, 6), terms(3, 15, 6), o);
    ASSERT_TRUE(s);
    EXPECT_NEAR(*s, 3.0, 1e-9);

    o.option0Upfront = false;
    EXPECT_NEAR(*crossoverScan(terms(8, 5, 6), terms(3, 15, 6), o), 4.5, 1e-9);
}

TEST(CrossoverScan, NoCrossingAndBadGrid)
{
    ScanOptions o;
    o.tMaxYears = 10;
    EXPECT_FALSE(crossoverScan(terms(3, 5, 6), terms(3, 15, 6), o));
    o.dtYears = 0;
    EXPECT_THROW(crossoverScan(terms(3, 5, 6), terms(3, 15, 6), o),
                 ValidationError);
    o.dtYears = 11;
    EXPECT_THROW(crossoverScan(terms(3, 5, 6), terms(3, 15, 6), o),
                 ValidationError);
}

TEST(CrossoverScan, LastGridPointIsHorizon)
{
    // Crossing exactly at t_max with a dt that does not divide it.
    ScanOptions o;
    o.tMaxYears = 3.0;
    o.dtYears = 0.7;
    const auto s = crossoverScan(terms(8, 5, 6), terms(3, 15, 6), o);
    ASSERT_TRUE(s);
    EXPECT_NEAR(*s, 3.0, 1e-12);
}

TEST(CrossoverScan, DiscreteReplacementSteps)
{
    // C0 = 10 * (floor(t/2) + 1) + 6t, C1 = 20 * (floor(t/10) + 1) + 8t.
    // Gap is -10 - 2t on [0, 2) and -2t on [2, 4); the purchase at t = 4
    // lifts it to +2.
    ScanOptions o;
    o.tMaxYears = 10;
    o.dtYears = 1e-3;
    o.replacement = ReplacementMode::Discrete;
    const auto s = crossoverScan(terms(6, 10, 2), terms(8, 20, 10), o);
    ASSERT_TRUE(s);
    EXPECT_NEAR(*s, 4.0, 1e-3);
    // Continuous amortization crosses at N / D = 10 / 1.
    o.replacement = ReplacementMode::Continuous;
    o.tMaxYears = 20;
    EXPECT_NEAR(*crossoverScan(terms(6, 10, 2), terms(8, 20, 10), o), 10.0,
                1e-9);
}

// Random line pairs in the convention E1 >= E0: the closed form agrees with
// the bisection oracle and the grid scan.
TEST(CrossoverTimes, PropertyAgreesWithOracles)
{
    std::mt19937_64 rng(101);
    std::uniform_real_distribution<double> o(0.0, 50.0);
    std::uniform_real_distribution<double> e(0.0, 100.0);
    std::uniform_real_distribution<double> l(0.5, 10.0);
    int defined = 0;
    for (int i = 0; i < 500; ++i)
    {
        double e0 = e(rng), e1 = e(rng);
        if (e1 < e0)
            std::swap(e0, e1);
        const RateTerms a = terms(o(rng), e0, l(rng));
        const RateTerms b = terms(o(rng), e1, l(rng));
        const auto closed = crossoverTimes(a, b);
        const double tMax = closed.indifferenceYears
                                ? std::max(1.0, 2 * *closed.indifferenceYears)
                                : 40.0;
        const auto oracle = bisectCrossing(
            a.operationalKgPerYear, a.embodiedKg, a.lifetimeYears,
            b.operationalKgPerYear, b.embodiedKg, b.lifetimeYears, true, tMax);
        ASSERT_EQ(closed.indifferenceYears.has_value(), oracle.has_value())
            << "case " << i;
        if (!oracle)
            continue;
        ++defined;
        EXPECT_NEAR(*closed.indifferenceYears, *oracle,
                    1e-9 * std::max(1.0, *oracle));

        ScanOptions so;
        so.tMaxYears = tMax;
        so.dtYears = tMax / 20000;
        const auto scanned = crossoverScan(a, b, so);
        ASSERT_TRUE(scanned);
        EXPECT_NEAR(*scanned, *closed.indifferenceYears, 1e-7 * tMax);

        const auto be = bisectCrossing(
            a.operationalKgPerYear, a.embodiedKg, a.lifetimeYears,
            b.operationalKgPerYear, b.embodiedKg, b.lifetimeYears, false,
            std::max(1.0, 2 * *closed.breakevenYears));
        ASSERT_TRUE(be);
        EXPECT_NEAR(*closed.breakevenYears, *be, 1e-9 * std::max(1.0, *be));
    }
    EXPECT_GT(defined, 100);
}

// Lowering option 1's operational carbon never delays the crossover.
TEST(CrossoverTimes, PropertyMonotoneInCandidateOperational)
{
    std::mt19937_64 rng(102);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 2000; ++i)
    {
        const RateTerms a = terms(20 * u(rng), 10 * u(rng), 1 + 5 * u(rng));
        const RateTerms b =
            terms(20 * u(rng), a.embodiedKg + 20 * u(rng), 1 + 5 * u(rng));
        RateTerms better = b;
        better.operationalKgPerYear *= u(rng);
        const auto t = indifferenceTime(a, b);
        const auto tb = indifferenceTime(a, better);
        if (t)
        {
            ASSERT_TRUE(tb);
            EXPECT_LE(*tb, *t + 1e-12 * *t);
        }
    }
}

TEST(Scenario, CalibratedPairNinetyPercent)
{
    const auto opt0 = option(refresh4x()), opt1 = option(versal());
    const auto s = scenario(0.9, "case1");
    const auto r = evaluate(opt0, opt1, s);
    EXPECT_NEAR(r.o0KgPerYear, 7.644852, 1e-9);
    EXPECT_NEAR(r.o1KgPerYear, 3.3030018, 1e-9);
    ASSERT_TRUE(r.tIndifferenceYears);
    EXPECT_NEAR(*r.tIndifferenceYears, 3.738061286411925, 1e-9);
    EXPECT_NEAR(*r.tBreakevenYears, 5.607091929617888, 1e-9);
}

TEST(Scenario, CalibratedPairPropertyRenewablesMonotone)
{
    const auto opt0 = option(refresh4x()), opt1 = option(versal());
    for (const char* preset : {"case1", "case2", "case3"})
    {
        double previous = 0.0;
        for (int k = 0; k <= 19; ++k)
        {
            const double r = 0.05 * k;
            const auto t = indifferenceTime(opt0, opt1, scenario(r, preset));
            ASSERT_TRUE(t) << preset << " r=" << r;
            EXPECT_GE(*t, previous);
            previous = *t;
        }
    }
}

TEST(EqualWork, AdjustsCandidateDuty)
{
    const auto base = option(zcu102()), target = option(vmk180());
    const DutyCycle duty = *dutyPreset("case1");
    const DutyCycle adj = equalWorkAdjust(base, target, duty);
    EXPECT_EQ(adj.rSleep(), 0.25);
    EXPECT_NEAR(adj.rActive(), 0.21684782608695655, 1e-15);
    EXPECT_NEAR(annualWork(target.device, adj), annualWork(base.device, duty),
                1e-12 * annualWork(base.device, duty));
}

TEST(EqualWork, SameThroughputLeavesDuty)
{
    const auto d = option(zcu102());
    const DutyCycle duty(0.3, 0.6);
    EXPECT_EQ(equalWorkAdjust(d, d, duty), duty);
}

TEST(EqualWork, InfeasibleWhenSlowerTargetCannotKeepUp)
{
    const auto base = option(refresh4x()), target = option(vmk180());
    try
    {
        equalWorkAdjust(base, target, *dutyPreset("case3"));
        FAIL() << "expected InfeasibleDutyCycle";
    }
    catch (const InfeasibleDutyCycle& e)
    {
        EXPECT_GT(e.requiredActive(), e.awakeBudget());
        EXPECT_EQ(e.awakeBudget(), 0.75);
        EXPECT_EQ(e.code(), "infeasible_duty_cycle");
    }
}

TEST(EqualWork, PrepareOptionsOnlyInEqualWorkMode)
{
    const auto a = option(zcu102()), b = option(vmk180());
    auto [t0, t1] = prepareOptions(a, b, scenario(0, "case1"));
    EXPECT_FALSE(t0.dutyOverride);
    EXPECT_FALSE(t1.dutyOverride);
    auto [w0, w1] =
        prepareOptions(a, b, scenario(0, "case1", ComparisonMode::EqualWork));
    EXPECT_FALSE(w0.dutyOverride);
    ASSERT_TRUE(w1.dutyOverride);
    const auto s = scenario(0, "case1");
    EXPECT_NEAR(annualWork(w1.device, w1.effectiveDuty(s)),
                annualWork(w0.device, w0.effectiveDuty(s)),
                1e-3);
}

// Equal work holds for any feasible random pair.
TEST(EqualWork, PropertyWorkMatches)
{
    std::mt19937_64 rng(103);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    int feasible = 0;
    for (int i = 0; i < 3000; ++i)
    {
        const auto a = option(makeDevice("a", 16, 0.5 + 10 * u(rng), 1, 1));
        const auto b = option(makeDevice("b", 16, 0.5 + 10 * u(rng), 1, 1));
        const DutyCycle duty(0.95 * u(rng), u(rng));
        try
        {
            const DutyCycle adj = equalWorkAdjust(a, b, duty);
            ++feasible;
            const double w = annualWork(a.device, duty);
            EXPECT_NEAR(annualWork(b.device, adj), w, 1e-9 * std::max(1.0, w));
            EXPECT_EQ(adj.rSleep(), duty.rSleep());
        }
        catch (const InfeasibleDutyCycle& e)
        {
            EXPECT_GT(e.requiredActive(), e.awakeBudget());
        }
    }
    EXPECT_GT(feasible, 1000);
}

TEST(CarbonCurveTest, Samples)
{
    const auto s = scenario(0, "case1");
    const auto c = carbonCurve(option(versal()), s, 10.0, 11);
    ASSERT_EQ(c.samples.size(), 11u);
    EXPECT_EQ(c.samples.front().first, 0.0);
    EXPECT_EQ(c.samples.front().second, 15.0);
    EXPECT_EQ(c.samples.back().first, 10.0);
    for (std::size_t i = 1; i < c.samples.size(); ++i)
    {
        EXPECT_GT(c.samples[i].second, c.samples[i - 1].second);
    }
    EXPECT_THROW(carbonCurve(option(versal()), s, 10.0, 1), ValidationError);
}
