#include <gtest/gtest.h>

#include "support/builders.hpp"

using namespace ihgysin;

namespace {

std::string model_path(const std::string& file) { return std::string(IHGYSIN_MODELS_DIR) + "/" + file; }

void expect_same(const GysinModel& a, const GysinModel& b)
{
    const auto& ma = *a.base();
    const auto& mb = *b.base();
    EXPECT_EQ(ma.poset().strata(), mb.poset().strata());
    EXPECT_EQ(ma.poset().generating_pairs(), mb.poset().generating_pairs());
    EXPECT_EQ(ma.basis(), mb.basis());
    EXPECT_EQ(ma.diff(), mb.diff());
    EXPECT_EQ(ma.product_terms(), mb.product_terms());
    EXPECT_EQ(ma.unit(), mb.unit());
    EXPECT_EQ(ma.connected_normal(), mb.connected_normal());
    EXPECT_EQ(a.epsilon(), b.epsilon());
}

const char* kPhi1Text = R"(strata
v fixed_perverse codim=3
basis
u0 0 v=0
u2 2 v=2
prod
u0 u0 u0 1
u0 u2 u2 1
epsilon
u2 1
flags
connected_normal true
)";

} // namespace

TEST(LoadModel, Phi1File)
{
    const auto g = load_model(model_path("phi1.model"));
    expect_same(g, builtin("phi1"));
    EXPECT_EQ(g.base()->poset().stratum(0).nature, StratumNature::fixed_perverse);
}

TEST(LoadModel, ShippedFilesMatchBuiltins)
{
    for (const char* name : {"phi1", "phi2", "phi3", "ext_gamma", "ext_gamma_plain", "hopf_link"})
        expect_same(load_model(model_path(std::string(name) + ".model")), builtin(name));
    const auto two = load_model(model_path("two_strata.model"));
    EXPECT_EQ(two.base()->poset().size(), 2u);
    EXPECT_TRUE(two.base()->poset().precedes(0, 1));
}

TEST(LoadModel, EpsilonOfDegreeOne)
{
    try {
        load_model(model_path("bad_epsilon_degree.model"));
        FAIL();
    } catch (const ValidationError& e) {
        EXPECT_TRUE(e.report().contains("epsilon_degree"));
    }
}

TEST(ParseModel, MissingStratumNamesElement)
{
    const std::string text = "strata\nv mobile\nw mobile\nbasis\nu0 0 v=0 w=0\nu2 2 v=1\n";
    try {
        parse_model(text);
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 6u);
        EXPECT_NE(std::string(e.what()).find("'u2'"), std::string::npos);
        EXPECT_NE(std::string(e.what()).find("'w'"), std::string::npos);
    }
}

TEST(ParseModel, LineNumberedErrors)
{
    auto line_of = [](const std::string& text) -> std::size_t {
        try {
            parse_model(text);
        } catch (const ParseError& e) {
            return e.line();
        }
        return 0;
    };
    EXPECT_EQ(line_of("strata\nv sideways\n"), 2u);
    EXPECT_EQ(line_of("basis\nu0 zero\n"), 2u);
    EXPECT_EQ(line_of("basis\nu0 0\ndiff\nu0 u9 1\n"), 4u);
    EXPECT_EQ(line_of("basis\nu0 0\nprod\nu0 u0 u0 0.5\n"), 4u);
    EXPECT_EQ(line_of("u0 0\n"), 1u);
    EXPECT_EQ(line_of("basis\nu0 0\nflags\nshiny true\n"), 4u);
    EXPECT_EQ(line_of("basis\nu0 0\nbasis\n"), 3u);
}

TEST(ParseModel, DefaultsAndProductOrder)
{
    // unit defaults to the first degree-0 element; a product given as j i is
    // stored as i j with the Koszul sign.
    const std::string text = "basis\nu0 0\na 1\nb 1\nc 2\nprod\nu0 u0 u0 1\nu0 a a 1\nu0 b b 1\nu0 c c 1\nb a c -1\n";
    const auto g = parse_model(text);
    EXPECT_EQ(g.base()->unit(), 0u);
    EXPECT_FALSE(g.base()->connected_normal());
    EXPECT_EQ(g.base()->wedge(g.base()->basis_vector(1), g.base()->basis_vector(2)), (Vec{0, 0, 0, 1}));
}

TEST(ParseModel, ValidationFailuresSurface)
{
    std::string text = kPhi1Text;
    text.replace(text.find("u0 u2 u2 1"), 10, "u0 u2 u2 2");
    try {
        parse_model(text);
        FAIL();
    } catch (const ValidationError& e) {
        EXPECT_TRUE(e.report().contains("unit"));
    }
}

TEST(SerializeModel, RoundTripBuiltins)
{
    for (const auto& name : builtin_names()) {
        const auto g = builtin(name);
        const auto text = serialize_model(g);
        expect_same(parse_model(text), g);
        EXPECT_EQ(serialize_model(parse_model(text)), text);
    }
    expect_same(parse_model(serialize_model(load_model(model_path("two_strata.model")))),
                load_model(model_path("two_strata.model")));
}

TEST(Builtin, UnknownName)
{
    EXPECT_THROW(builtin("phi4"), std::invalid_argument);
    EXPECT_THROW(resolve_model("builtin:nope"), std::invalid_argument);
    EXPECT_THROW(resolve_model("/no/such/file.model"), std::runtime_error);
}

TEST(Builtin, EulerClasses)
{
    EXPECT_TRUE(euler_class(builtin("phi2")).is_zero);
    EXPECT_FALSE(euler_class(builtin("phi1")).is_zero);
}

TEST(ParseMap, ExplicitIdentityFile)
{
    const auto g1 = builtin("phi1");
    const auto g2 = builtin("phi1_scaled");
    const auto f = load_map(model_path("phi1_to_phi1_scaled.map"), g1.base(), g2.base());
    EXPECT_EQ(f.pullback(), Mat::identity(2));
    EXPECT_TRUE(validate_base_iso(f).ok());
}

TEST(ParseMap, Combinations)
{
    const auto g = builtin("ext_gamma");
    const auto f = parse_map("u0 = u0\na1 = a1\nu2 = u2 + 1/2*u2b - 0*a1\nu2b = 3u2b\nstratum v -> v\n", g.base(),
                             g.base());
    EXPECT_EQ(f.pullback()(2, 2), 1);
    EXPECT_EQ(f.pullback()(3, 2), Rational(1, 2));
    EXPECT_EQ(f.pullback()(3, 3), 3);
    EXPECT_EQ(f.pullback()(1, 2), 0);
}

TEST(ParseMap, Errors)
{
    const auto g = builtin("phi1");
    auto line_of = [&](const std::string& text) -> std::size_t {
        try {
            parse_map(text, g.base(), g.base());
        } catch (const ParseError& e) {
            return e.line();
        }
        return 99;
    };
    EXPECT_EQ(line_of("u0 = u0\nu2 = q7\nstratum v -> v\n"), 2u);
    EXPECT_EQ(line_of("u0 = u0\nu2 = u2\nstratum x -> v\n"), 3u);
    EXPECT_EQ(line_of("u0 = u0\nstratum v -> v\n"), 0u); // u2 undefined
    EXPECT_EQ(line_of("u0 = u0\nu2 = u2\n"), 0u);        // stratum missing
    EXPECT_EQ(line_of("u0 = u0\nu0 = u0\n"), 2u);
}

TEST(LinkConsistency, Examples)
{
    const auto hopf = builtin("hopf_link");
    const auto trivial = builtin("trivial_link");
    EXPECT_EQ(check_link_consistency(builtin("phi1"), "v", hopf).status, LinkConsistency::Status::consistent);
    EXPECT_EQ(check_link_consistency(builtin("phi2"), "v", trivial).status, LinkConsistency::Status::consistent);
    // a perverse flag on a vertex whose link has zero Euler class, and the reverse
    EXPECT_EQ(check_link_consistency(builtin("phi2"), "v", hopf).status, LinkConsistency::Status::inconsistent);
    EXPECT_EQ(check_link_consistency(builtin("phi1"), "v", trivial).status, LinkConsistency::Status::inconsistent);
    const auto mobile = check_link_consistency(builtin("phi3"), "v", hopf);
    EXPECT_EQ(mobile.status, LinkConsistency::Status::not_applicable);
    EXPECT_EQ(mobile.message.rfind("not applicable", 0), 0u);
    EXPECT_THROW(check_link_consistency(builtin("phi1"), "w", hopf), std::domain_error);
}
