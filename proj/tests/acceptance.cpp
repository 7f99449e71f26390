// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any failure.
// All comparisons are exact (rational arithmetic, zero tolerance).

#include <functional>
#include <iostream>
#include <sstream>

#include "ihgysin/cli.hpp"
#include "ihgysin/ihgysin.hpp"
#include "support/oracle.hpp"
#include "support/random_models.hpp"

using namespace ihgysin;

namespace {

constexpr int kRandomModels = 100;
const std::string kModels = IHGYSIN_MODELS_DIR;

struct Failure {
    std::string detail;
};

void require(bool cond, const std::string& what)
{
    if (!cond)
        throw Failure{what};
}

std::vector<GysinModel> builtins()
{
    std::vector<GysinModel> out;
    for (const auto& n : builtin_names())
        out.push_back(builtin(n));
    return out;
}

std::vector<GysinModel> random_models(unsigned seed, int count, testsupport::RandomModelOptions opt = {})
{
    testsupport::ModelGenerator gen(seed, opt);
    std::vector<GysinModel> out;
    for (int i = 0; i < count; ++i)
        out.push_back(gen.next());
    return out;
}

std::vector<Perversity> small_sample(const GysinModel& g)
{
    return {Perversity::zero(g.poset()), g.x(), g.e()};
}

std::vector<Perversity> builtin_sample(const GysinModel& g)
{
    if (g.poset()->size() != 1)
        return small_sample(g);
    std::vector<Perversity> out;
    for (int k = 0; k <= 3; ++k)
        out.emplace_back(g.poset(), std::vector<int>{k});
    return out;
}

std::vector<std::size_t> trimmed(std::vector<std::size_t> v)
{
    while (!v.empty() && v.back() == 0)
        v.pop_back();
    return v;
}

void structural_laws(const GysinModel& g, const std::string& label)
{
    const auto& m = *g.base();
    require(validate_model(m).ok(), label + ": model validation");
    require((m.diff() * m.diff()).is_zero(), label + ": d^2 != 0");
    for (std::size_t a = 0; a < m.dimension(); ++a)
        for (std::size_t b = 0; b < m.dimension(); ++b) {
            const Vec x = m.basis_vector(a), y = m.basis_vector(b);
            const Vec lhs = m.differential(m.wedge(x, y));
            const Vec rhs = add(m.wedge(m.differential(x), y),
                                scale(Rational(parity_sign(m.degree(a))), m.wedge(x, m.differential(y))));
            require(lhs == rhs, label + ": Leibniz fails on the base");
        }
    const Mat D = pair_differential(g);
    require((D * D).is_zero(), label + ": D^2 != 0");
    const std::size_t n2 = g.pair_dim();
    for (std::size_t a = 0; a < n2; ++a)
        for (std::size_t b = 0; b < n2; ++b) {
            const Vec x = unit_vector(n2, a), y = unit_vector(n2, b);
            const Vec lhs = D * pair_wedge(g, x, y);
            const Vec rhs = add(pair_wedge(g, D * x, y),
                                scale(Rational(parity_sign(pair_basis_degree(g, a))), pair_wedge(g, x, D * y)));
            require(lhs == rhs, label + ": graded Leibniz fails for the pair wedge");
        }
}

void criterion1()
{
    const auto bs = builtins();
    for (std::size_t i = 0; i < bs.size(); ++i)
        structural_laws(bs[i], builtin_names()[i]);
    const auto rs = random_models(1001, kRandomModels);
    for (std::size_t i = 0; i < rs.size(); ++i) {
        require(rs[i].base_dim() <= 12 && rs[i].poset()->size() <= 2, "random model outside the size bounds");
        structural_laws(rs[i], "random model " + std::to_string(i));
    }
}

void criterion2()
{
    auto check = [](const GysinModel& g, const std::vector<Perversity>& sample, const std::string& label) {
        for (const auto& p : sample)
            require(check_short_exact(g, p).ok(), label + " at " + p.to_string());
    };
    const auto bs = builtins();
    for (std::size_t i = 0; i < bs.size(); ++i)
        check(bs[i], builtin_sample(bs[i]), builtin_names()[i]);
    const auto rs = random_models(1002, kRandomModels);
    for (std::size_t i = 0; i < rs.size(); ++i)
        check(rs[i], small_sample(rs[i]), "random model " + std::to_string(i));
}

void criterion3()
{
    auto check = [](const GysinModel& g, const std::vector<Perversity>& sample, const std::string& label) {
        const GysinForms forms(g);
        for (const auto& p : sample)
            require(long_exact_sequence(forms, p).exact(), label + " at " + p.to_string());
    };
    const auto bs = builtins();
    for (std::size_t i = 0; i < bs.size(); ++i)
        check(bs[i], builtin_sample(bs[i]), builtin_names()[i]);
    const auto rs = random_models(1003, kRandomModels);
    for (std::size_t i = 0; i < rs.size(); ++i)
        check(rs[i], small_sample(rs[i]), "random model " + std::to_string(i));
}

void criterion4()
{
    for (const char* name : {"phi1", "phi1_scaled", "ext_gamma"}) {
        const GysinForms forms(builtin(name));
        const auto& g = forms.model();
        for (int k = 0; k <= 4; ++k) {
            const Perversity p(g.poset(), {k});
            const auto r = check_lemma_g(forms, p);
            if (perversity_leq(g.e(), p))
                require(r.status == LemmaGReport::Status::pass, std::string(name) + " at " + p.to_string() + ": " + r.reason);
            else
                require(r.status == LemmaGReport::Status::not_applicable,
                        std::string(name) + " at " + p.to_string() + " should be gated");
        }
    }
}

void criterion5()
{
    struct Row {
        const char* model;
        int p;
        std::vector<std::size_t> dims;
    };
    const std::vector<Row> rows{{"phi1", 2, {1, 0, 0, 0}},
                                {"phi2", 2, {1, 1, 1, 0}},
                                {"phi3", 2, {1, 1, 1, 1}},
                                {"phi1", 0, {1, 0, 0, 0}}};
    for (const auto& r : rows) {
        const auto g = builtin(r.model);
        const Perversity p(g.poset(), {r.p});
        const auto label = std::string(r.model) + " at v=" + std::to_string(r.p);
        require(oracle::total_ih(g, {r.p}) == r.dims, label + ": oracle disagrees with the table");
        require(ih_total(g, p).dimensions() == r.dims, label + ": engine disagrees with the table");
    }
    const auto g = builtin("phi1");
    const auto iomega = build_iomega(g, Perversity(g.poset(), {0}));
    require(iomega.dimension(0) == 1, "phi1 at v=0: IOmega^0 is not one-dimensional");
    for (int d = 1; d <= iomega.space.top_degree(); ++d)
        require(iomega.dimension(d) == 0, "phi1 at v=0: IOmega nonzero in degree " + std::to_string(d));
    require(oracle::iomega_dims(g, {0}) == (std::vector<std::size_t>{1, 0, 0, 0}), "phi1 at v=0: oracle IOmega dims");
}

void criterion6()
{
    const auto g1 = builtin("phi1"), g2 = builtin("phi1_scaled");
    const auto f = BaseIso::identity(g1.base(), g2.base());
    const auto v = compare_actions(g1, g2, f, default_sample(g1));
    require(v.kind == Verdict::Kind::isomorphic, "verdict is " + std::string(to_string(v.kind)) + ": " + v.message);
    const auto& cert = *v.proportionality->cert;
    require(cert.lambda == 2, "lambda = " + to_string(cert.lambda));
    require(v.iso && v.iso->all_pass(), "a verification check failed");
    const GysinForms x1(g1), x2(g2);
    for (const auto& p : default_sample(g1))
        build_F(x1, x2, f, cert, p);
    const Mat F = f_ambient(f, cert), Finv = f_inverse_ambient(f, cert);
    require(F * Finv == Mat::identity(F.rows()), "F F^-1 != id");
    require(Finv * F == Mat::identity(F.cols()), "F^-1 F != id");
}

void criterion7()
{
    const auto g1 = builtin("ext_gamma"), g2 = builtin("ext_gamma_plain");
    const auto f = BaseIso::identity(g1.base(), g2.base());
    const auto v = compare_actions(g1, g2, f, default_sample(g1));
    require(v.kind == Verdict::Kind::isomorphic, "verdict is " + std::string(to_string(v.kind)) + ": " + v.message);
    const auto& cert = *v.proportionality->cert;
    require(cert.lambda == 1, "lambda = " + to_string(cert.lambda));
    const auto a1 = g1.base()->index_of("a1").value();
    require(cert.gamma == g1.base()->basis_vector(a1), "gamma is not a1");
    require(v.iso && v.iso->all_pass(), "a verification check failed");
    const GysinForms x1(g1), x2(g2);
    bool control_fails = false;
    for (const auto& p : default_sample(g1)) {
        const auto s = build_F_unchecked(x1, x2, f, cert, p);
        require(s.checks.first_in_ambient && s.checks.second_in_fiber && s.checks.first_bounded &&
                    s.checks.twisted_bounded,
                "perverse estimate fails at " + p.to_string());
        require(s.checks.chain_map && s.checks.lands_in_target, "F fails at " + p.to_string());
        const auto dropped = build_F_unchecked(x1, x2, f, cert, p, {true});
        control_fails = control_fails || !dropped.checks.chain_map;
    }
    require(control_fails, "dropping the gamma term does not break the chain-map check");
}

void criterion8()
{
    {
        const auto g1 = builtin("phi1"), g2 = builtin("phi2");
        const auto v = compare_actions(g1, g2, BaseIso::identity(g1.base(), g2.base()), default_sample(g1));
        require(v.kind == Verdict::Kind::not_optimal, "phi1 vs phi2 verdict " + std::string(to_string(v.kind)));
    }
    const auto g1 = builtin("phi1"), g2 = builtin("phi2_perverse");
    const auto v = compare_actions(g1, g2, BaseIso::identity(g1.base(), g2.base()), default_sample(g1));
    require(v.kind == Verdict::Kind::not_proportional, "phi1 vs phi2_perverse verdict " + std::string(to_string(v.kind)));
    bool found = false;
    for (const auto& row : v.obstructions())
        if (row.perversity.values() == std::vector<int>{2}) {
            require(trimmed(row.source_dims) == std::vector<std::size_t>{1},
                    "obstruction source dims differ from (1,0,0)");
            require(std::vector<std::size_t>(row.target_dims.begin(), row.target_dims.begin() + 3) ==
                        std::vector<std::size_t>{1, 1, 1},
                    "obstruction target dims differ from (1,1,1)");
            found = true;
        }
    require(found, "no dimension obstruction reported at v=2");
}

void criterion9()
{
    auto check = [](const GysinModel& g, const std::vector<int>& values, const std::string& label) {
        const Perversity p(g.poset(), values);
        const GysinForms forms(g);
        require(trimmed(forms.base().ih(p)->dimensions()) == trimmed(oracle::base_ih(g, values)), label + ": base IH");
        require(trimmed(forms.ih_total(p)->dimensions()) == trimmed(oracle::total_ih(g, values)), label + ": total IH");
        require(trimmed(forms.gysin(p)->cohomology.dimensions()) == trimmed(oracle::gysin_h(g, values)),
                label + ": Gysin term");
    };
    auto sample = [](const GysinModel& g) {
        std::vector<std::vector<int>> out;
        for (const auto& p : {Perversity::zero(g.poset()), g.x(), g.e(), g.e() + g.x(), g.e() + g.e()})
            out.push_back(p.values());
        return out;
    };
    const auto bs = builtins();
    for (std::size_t i = 0; i < bs.size(); ++i) {
        for (const auto& p : sample(bs[i]))
            check(bs[i], p, builtin_names()[i]);
        if (bs[i].poset()->size() == 1)
            for (int k = -1; k <= 5; ++k)
                check(bs[i], {k}, builtin_names()[i]);
    }
    std::size_t largest = 0;
    auto rs = random_models(1009, kRandomModels);
    const auto big = random_models(1010, 20, {40, 2, true});
    rs.insert(rs.end(), big.begin(), big.end());
    for (std::size_t i = 0; i < rs.size(); ++i) {
        require(rs[i].base_dim() <= 40, "random model larger than 40");
        largest = std::max(largest, rs[i].base_dim());
        for (const auto& p : sample(rs[i]))
            check(rs[i], p, "random model " + std::to_string(i));
    }
    require(largest > 12, "no model above 12 basis elements was exercised");
}

std::string run_cli_suite()
{
    const std::vector<std::vector<std::string>> suite{
        {"validate", "--model", "builtin:phi1"},
        {"validate", "--model", kModels + "/phi2.model"},
        {"validate", "--model", kModels + "/bad_epsilon_degree.model"},
        {"cohomology", "--model", "builtin:phi1", "--perversity", "v=2"},
        {"cohomology", "--model", "builtin:phi2", "--perversity", "v=0", "--perversity", "e", "--format", "csv"},
        {"cohomology", "--model", "builtin:phi3", "--perversity", "x", "--space", "base"},
        {"cohomology", "--model", kModels + "/two_strata.model", "--perversity", "e+x"},
        {"gysin", "--model", "builtin:ext_gamma", "--perversity", "v=2"},
        {"euler", "--model", "builtin:phi1"},
        {"lemma-g", "--model", "builtin:phi1", "--perversity", "v=2"},
        {"lemma-g", "--model", "builtin:phi1", "--perversity", "v=1"},
        {"compare", "--model", "builtin:phi1", "--model2", "builtin:phi1_scaled", "--map", "identity"},
        {"compare", "--model", "builtin:phi1", "--model2", "builtin:phi2", "--map", "identity"},
        {"compare", "--model", "builtin:phi1", "--model2", "builtin:phi2_perverse", "--map", "identity"},
        {"compare", "--model", kModels + "/ext_gamma.model", "--model2", kModels + "/ext_gamma_plain.model", "--map",
         "identity"},
        {"compare", "--model", "builtin:phi1", "--model2", "builtin:phi1_scaled", "--map",
         kModels + "/phi1_to_phi1_scaled.map"},
        {"cohomology", "--model", "builtin:nope"},
    };
    std::ostringstream all;
    for (const auto& args : suite) {
        std::ostringstream out, err;
        const int code = cli::run(args, out, err);
        all << "$";
        for (const auto& a : args)
            all << ' ' << a;
        all << "\n[exit " << code << "]\n" << out.str() << "[stderr]\n" << err.str();
    }
    return all.str();
}

void criterion10()
{
    const auto first = run_cli_suite();
    const auto second = run_cli_suite();
    require(!first.empty(), "empty CLI output");
    require(first.find("verdict A") != std::string::npos, "CLI suite did not produce an isomorphism verdict");
    require(first == second, "CLI outputs differ between runs");
}

} // namespace

int main()
{
    const std::vector<std::pair<std::string, std::function<void()>>> criteria{
        {"structural laws on built-in and random models", criterion1},
        {"short exact sequence", criterion2},
        {"long exact Gysin sequence", criterion3},
        {"H0 of the Gysin term and eub(1) = Euler class", criterion4},
        {"example intersection cohomology tables", criterion5},
        {"proportional classes give a verified perverse isomorphism", criterion6},
        {"nonzero gamma path and its negative control", criterion7},
        {"non-optimal and non-proportional verdicts", criterion8},
        {"engine agrees with the independent rank oracle", criterion9},
        {"CLI output is deterministic", criterion10},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        std::string detail;
        bool ok = false;
        try {
            criteria[i].second();
            ok = true;
        } catch (const Failure& f) {
            detail = f.detail;
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        std::cout << (ok ? "PASS" : "FAIL") << " criterion " << (i + 1) << ": " << criteria[i].first;
        if (!ok)
            std::cout << " (" << detail << ")";
        std::cout << '\n';
        failures += ok ? 0 : 1;
    }
    return failures == 0 ? 0 : 1;
}
