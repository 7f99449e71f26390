#include <gtest/gtest.h>

#include "support/builders.hpp"

using namespace ihgysin;
using testsupport::at_v;

namespace {

struct Pair {
    GysinModel g1;
    GysinModel g2;
    BaseIso f;
};

Pair identity_pair(const std::string& a, const std::string& b)
{
    auto g1 = builtin(a);
    auto g2 = builtin(b);
    auto f = BaseIso::identity(g1.base(), g2.base());
    return {std::move(g1), std::move(g2), std::move(f)};
}

} // namespace

TEST(BaseIso, IdentityValidates)
{
    const auto p = identity_pair("phi1", "phi1_scaled");
    EXPECT_TRUE(validate_base_iso(p.f).ok());
}

TEST(BaseIso, DetectsBrokenMaps)
{
    const auto g = builtin("ext_gamma");
    const auto m = g.base();
    Mat singular = Mat::identity(4);
    singular(2, 2) = 0;
    EXPECT_TRUE(validate_base_iso(BaseIso(m, m, {0}, singular)).contains("not_invertible"));

    Mat not_chain = Mat::identity(4);
    not_chain(2, 3) = 1; // f*(u2b) = u2 + u2b, but d(a1) = u2b is not adjusted
    const auto r = validate_base_iso(BaseIso(m, m, {0}, not_chain));
    EXPECT_TRUE(r.contains("not_chain_map"));

    Mat degree_shift = Mat::identity(4);
    degree_shift(1, 2) = 1; // f*(u2) picks up a1
    EXPECT_TRUE(validate_base_iso(BaseIso(m, m, {0}, degree_shift)).contains("degree"));

    Mat scaled = Mat::identity(4);
    scaled(0, 0) = 2;
    EXPECT_TRUE(validate_base_iso(BaseIso(m, m, {0}, scaled)).contains("unit"));
}

TEST(BaseIso, DetectsNonMultiplicativeMap)
{
    // S^2 x S^2 style: s ^ t = m.  Scaling s but not m breaks multiplicativity.
    auto m = testsupport::make_model(testsupport::vertex(StratumNature::mobile),
                                     {{"u0", 0, {0}}, {"s", 2, {0}}, {"t", 2, {0}}, {"m", 4, {0}}}, {},
                                     {{1, 2, 3, 1}});
    Mat f = Mat::identity(4);
    f(1, 1) = 2;
    EXPECT_TRUE(validate_base_iso(BaseIso(m, m, {0}, f)).contains("not_algebra_map"));
}

TEST(BaseIso, DetectsPerverseDegreeChange)
{
    // Two degree-2 generators with different perverse degrees; swapping them
    // is an algebra isomorphism that does not preserve the perverse degree.
    auto m = testsupport::make_model(testsupport::vertex(StratumNature::mobile),
                                     {{"u0", 0, {0}}, {"s", 2, {0}}, {"t", 2, {1}}}, {}, {});
    Mat swap(3, 3);
    swap(0, 0) = 1;
    swap(1, 2) = 1;
    swap(2, 1) = 1;
    EXPECT_TRUE(validate_base_iso(BaseIso(m, m, {0}, swap)).contains("pdeg_not_preserved"));
}

TEST(BaseIso, PerversityTransport)
{
    const auto p = identity_pair("phi1", "phi1_scaled");
    const Perversity q = at_v(p.g1, 2);
    EXPECT_EQ(p.f.to_target(q).values(), std::vector<int>{2});
    EXPECT_EQ(p.f.to_source(p.f.to_target(q)), q);
    EXPECT_THROW(p.f.to_target(at_v(builtin("phi3"), 0)), std::domain_error);
}

TEST(BaseIso, IdentityNeedsMatchingSignature)
{
    EXPECT_THROW(BaseIso::identity(builtin("phi1").base(), builtin("ext_gamma").base()), std::domain_error);
}

TEST(CheckOptimal, Examples)
{
    EXPECT_TRUE(check_optimal(identity_pair("phi1", "phi1").f).optimal);
    const auto a = check_optimal(identity_pair("phi1", "phi2").f);
    EXPECT_FALSE(a.optimal);
    ASSERT_TRUE(a.first_mismatch().has_value());
    EXPECT_EQ(a.first_mismatch()->source_id, "v");
    EXPECT_FALSE(check_optimal(identity_pair("phi2", "phi3").f).optimal);
    const auto ok = check_optimal(identity_pair("phi1", "phi1_scaled").f);
    ASSERT_TRUE(ok.euler_perversity.has_value());
    EXPECT_EQ(ok.euler_perversity->values(), std::vector<int>{2});
}

TEST(SolveProportionality, Examples)
{
    {
        const auto p = identity_pair("phi1", "phi1_scaled");
        const auto r = solve_proportionality(p.f, p.g1, p.g2);
        ASSERT_TRUE(r.proportional());
        EXPECT_EQ(r.cert->lambda, 2);
        EXPECT_TRUE(is_zero_vector(r.cert->gamma));
    }
    {
        const auto p = identity_pair("phi1", "phi1");
        const auto r = solve_proportionality(p.f, p.g1, p.g2);
        ASSERT_TRUE(r.proportional());
        EXPECT_EQ(r.cert->lambda, 1);
        EXPECT_TRUE(is_zero_vector(r.cert->gamma));
    }
    {
        const auto p = identity_pair("phi1", "phi2_perverse");
        const auto r = solve_proportionality(p.f, p.g1, p.g2);
        EXPECT_FALSE(r.proportional());
        EXPECT_FALSE(r.reason.empty());
    }
    {
        const auto p = identity_pair("phi1", "phi2");
        EXPECT_THROW(solve_proportionality(p.f, p.g1, p.g2), std::domain_error);
    }
}

TEST(SolveProportionality, NonzeroGamma)
{
    const auto p = identity_pair("ext_gamma", "ext_gamma_plain");
    const auto r = solve_proportionality(p.f, p.g1, p.g2);
    ASSERT_TRUE(r.proportional());
    EXPECT_EQ(r.cert->lambda, 1);
    EXPECT_EQ(r.cert->gamma, (Vec{0, 1, 0, 0}));
    EXPECT_TRUE(r.cert->gamma_within_x);
}

TEST(SolveProportionality, ZeroEulerFormsOnBothSides)
{
    const auto p = identity_pair("phi2", "phi2");
    const auto r = solve_proportionality(p.f, p.g1, p.g2);
    ASSERT_TRUE(r.proportional());
    EXPECT_EQ(r.cert->lambda, 1);
    EXPECT_FALSE(r.forced_lambda.has_value());
}

TEST(BuildF, IdentityCertificateGivesIdentity)
{
    const auto p = identity_pair("phi1", "phi1");
    const GysinForms x1(p.g1), x2(p.g2);
    const ProportionalityCert cert{1, zero_vector(2), true};
    const auto s = build_F(x1, x2, p.f, cert, at_v(p.g1, 2));
    EXPECT_EQ(s.ambient, Mat::identity(4));
    for (const auto& m : s.by_degree)
        EXPECT_EQ(m, Mat::identity(m.rows()));
}

TEST(BuildF, ScaledEulerForm)
{
    const auto p = identity_pair("phi1", "phi1_scaled");
    const GysinForms x1(p.g1), x2(p.g2);
    const ProportionalityCert cert{2, zero_vector(2), true};
    for (int k = 0; k <= 4; ++k) {
        const auto s = build_F(x1, x2, p.f, cert, at_v(p.g1, k));
        EXPECT_TRUE(s.checks.all());
        // F(a, b) = (a, 2 b)
        EXPECT_EQ(s.ambient * pair_cochain(Vec{1, 3}, Vec{5, 7}), pair_cochain(Vec{1, 3}, Vec{10, 14}));
    }
}

TEST(BuildF, WrongLambdaFailsChainMap)
{
    const auto p = identity_pair("phi1", "phi1_scaled");
    const GysinForms x1(p.g1), x2(p.g2);
    const ProportionalityCert cert{1, zero_vector(2), true};
    EXPECT_THROW(build_F(x1, x2, p.f, cert, at_v(p.g1, 2)), std::logic_error);
    EXPECT_FALSE(build_F_unchecked(x1, x2, p.f, cert, at_v(p.g1, 2)).checks.chain_map);
}

TEST(BuildF, InverseFormulaComposesToIdentity)
{
    const auto p = identity_pair("ext_gamma", "ext_gamma_plain");
    const auto cert = *solve_proportionality(p.f, p.g1, p.g2).cert;
    const Mat F = f_ambient(p.f, cert);
    const Mat Finv = f_inverse_ambient(p.f, cert);
    EXPECT_EQ(F * Finv, Mat::identity(8));
    EXPECT_EQ(Finv * F, Mat::identity(8));
}

TEST(BuildF, DroppingGammaTermBreaksChainMap)
{
    const auto p = identity_pair("ext_gamma", "ext_gamma_plain");
    const GysinForms x1(p.g1), x2(p.g2);
    const auto cert = *solve_proportionality(p.f, p.g1, p.g2).cert;
    const auto good = build_F_unchecked(x1, x2, p.f, cert, at_v(p.g1, 2));
    EXPECT_TRUE(good.checks.all());
    const auto bad = build_F_unchecked(x1, x2, p.f, cert, at_v(p.g1, 2), FOptions{true});
    EXPECT_FALSE(bad.checks.chain_map);
}

TEST(VerifyPerverseIso, ScaledPairPassesOnSample)
{
    const auto p = identity_pair("phi1", "phi1_scaled");
    const GysinForms x1(p.g1), x2(p.g2);
    const auto cert = *solve_proportionality(p.f, p.g1, p.g2).cert;
    const std::vector<Perversity> sample{Perversity::zero(p.g1.poset()), p.g1.x(), p.g1.e(), p.g1.e() + p.g1.e()};
    const auto report = verify_perverse_iso(x1, x2, p.f, cert, sample);
    for (const auto& c : report.checks)
        EXPECT_TRUE(c.pass) << c.name << " [" << c.perversities << "]";
    for (const char* name : {"inclusions", "multiplicative", "invertible", "inverse_formula", "commutes_with_pi",
                             "cohomology_iso", "chain_map"})
        EXPECT_TRUE(report.passed(name)) << name;
}

TEST(VerifyPerverseIso, CorruptedFailsOnExtendedModel)
{
    const auto p = identity_pair("ext_gamma", "ext_gamma_plain");
    const GysinForms x1(p.g1), x2(p.g2);
    const auto cert = *solve_proportionality(p.f, p.g1, p.g2).cert;
    const auto sample = default_sample(p.g1);
    EXPECT_TRUE(verify_perverse_iso(x1, x2, p.f, cert, sample).all_pass());
    const auto bad = verify_perverse_iso(x1, x2, p.f, cert, sample, FOptions{true});
    EXPECT_FALSE(bad.all_pass());
    EXPECT_FALSE(bad.passed("chain_map") && bad.passed("multiplicative"));
}

TEST(CompareActions, Verdicts)
{
    {
        const auto p = identity_pair("phi1", "phi1_scaled");
        const auto v = compare_actions(p.g1, p.g2, p.f, default_sample(p.g1));
        EXPECT_EQ(v.kind, Verdict::Kind::isomorphic);
        EXPECT_EQ(v.proportionality->cert->lambda, 2);
        EXPECT_TRUE(v.iso->all_pass());
        EXPECT_TRUE(v.quasi_iso_at_zero);
        EXPECT_TRUE(v.obstructions().empty());
    }
    {
        const auto p = identity_pair("phi1", "phi2");
        const auto v = compare_actions(p.g1, p.g2, p.f, default_sample(p.g1));
        EXPECT_EQ(v.kind, Verdict::Kind::not_optimal);
        EXPECT_EQ(v.message, "not optimal: v is fixed_perverse vs fixed_nonperverse");
    }
    {
        const auto p = identity_pair("phi2", "phi2");
        const auto v = compare_actions(p.g1, p.g2, p.f, default_sample(p.g1));
        EXPECT_EQ(v.kind, Verdict::Kind::isomorphic);
        EXPECT_EQ(v.proportionality->cert->lambda, 1);
    }
    {
        const auto p = identity_pair("phi1", "phi2_perverse");
        const auto v = compare_actions(p.g1, p.g2, p.f, default_sample(p.g1));
        EXPECT_EQ(v.kind, Verdict::Kind::not_proportional);
        bool found = false;
        for (const auto& r : v.obstructions())
            if (r.perversity.values() == std::vector<int>{2}) {
                found = true;
                EXPECT_EQ(r.source_dims, (std::vector<std::size_t>{1, 0, 0, 0}));
                EXPECT_EQ(r.target_dims, (std::vector<std::size_t>{1, 1, 1, 0}));
            }
        EXPECT_TRUE(found);
    }
}

TEST(CompareActions, RejectsMismatchedModels)
{
    const auto p = identity_pair("phi1", "phi1_scaled");
    const auto other = builtin("phi1");
    EXPECT_THROW(compare_actions(other, p.g2, p.f, default_sample(other)), std::domain_error);
}

TEST(DefaultSample, DeduplicatesAndOrders)
{
    const auto g = builtin("phi3"); // mobile: x = e = 0
    const auto s = default_sample(g);
    ASSERT_EQ(s.size(), 1u);
    EXPECT_EQ(s[0].values(), std::vector<int>{0});
    const auto h = builtin("phi1");
    std::vector<std::vector<int>> vals;
    for (const auto& p : default_sample(h))
        vals.push_back(p.values());
    EXPECT_EQ(vals, (std::vector<std::vector<int>>{{0}, {1}, {2}, {3}, {4}}));
}
