#pragma once

// Command-line front end.  `run` takes the argument list (without the program
// name) and writes to the given streams so that it can be driven in-process.

#include <algorithm>
#include <cctype>
#include <iostream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ihgysin/models.hpp"

namespace ihgysin::cli {

enum ExitCode : int { ok = 0, usage = 1, invalid = 2, negative_verdict = 3 };

class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Either explicit values "v=2,w=0" (every stratum must be listed) or a sum of
/// named perversities such as "e+x" or "2e"; names are zero, x, e and t.
inline Perversity parse_perversity(std::string_view text, const GysinModel& g)
{
    const auto& poset = g.poset();
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c)))
            s += c;
    if (s.empty())
        throw UsageError("empty perversity");
    if (s.find('=') != std::string::npos) {
        std::vector<std::optional<int>> values(poset->size());
        std::istringstream in(s);
        std::string item;
        while (std::getline(in, item, ',')) {
            const auto eq = item.find('=');
            if (eq == std::string::npos)
                throw UsageError("perversity entry '" + item + "' is not <stratum>=<value>");
            const std::string id = item.substr(0, eq);
            const auto idx = poset->index_of(id);
            if (!idx)
                throw UsageError("perversity names unknown stratum '" + id + "'");
            if (values[*idx])
                throw UsageError("perversity gives stratum '" + id + "' twice");
            try {
                std::size_t pos = 0;
                values[*idx] = std::stoi(item.substr(eq + 1), &pos);
                if (pos != item.size() - eq - 1)
                    throw std::invalid_argument("trailing");
            } catch (const std::exception&) {
                throw UsageError("perversity value for '" + id + "' is not an integer");
            }
        }
        std::vector<int> out;
        for (std::size_t i = 0; i < values.size(); ++i) {
            if (!values[i])
                throw UsageError("perversity does not give a value for stratum '" + poset->stratum(i).id + "'");
            out.push_back(*values[i]);
        }
        return Perversity(poset, std::move(out));
    }
    if (s == "-")
        return Perversity::zero(poset);
    Perversity total = Perversity::zero(poset);
    std::istringstream in(s);
    std::string term;
    while (std::getline(in, term, '+')) {
        std::size_t k = 0;
        while (k < term.size() && std::isdigit(static_cast<unsigned char>(term[k])))
            ++k;
        const int mult = k ? std::stoi(term.substr(0, k)) : 1;
        const std::string name = term.substr(k);
        Perversity base;
        if (name == "zero" || name == "0")
            base = Perversity::zero(poset);
        else if (name == "x")
            base = g.x();
        else if (name == "e")
            base = g.e();
        else if (name == "t") {
            auto t = top_perversity(poset);
            if (!t)
                throw UsageError("t needs a codimension on every stratum");
            base = *t;
        } else {
            throw UsageError("unknown perversity '" + term + "'");
        }
        for (int i = 0; i < mult; ++i)
            total = total + base;
    }
    return total;
}

inline std::string format_dims(const std::vector<std::size_t>& dims)
{
    std::string s = "(";
    for (std::size_t i = 0; i < dims.size(); ++i)
        s += (i ? "," : "") + std::to_string(dims[i]);
    return s + ")";
}

inline std::string format_cochain(const PerverseModel& m, const Vec& v)
{
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i] == 0)
            continue;
        Rational c = v[i];
        if (!s.empty()) {
            s += c < 0 ? " - " : " + ";
            c = abs(c);
        } else if (c < 0) {
            s += "-";
            c = abs(c);
        }
        if (c != 1)
            s += to_string(c) + "*";
        s += m.element(i).name;
    }
    return s.empty() ? "0" : s;
}

struct Options {
    std::string model;
    std::string model2;
    std::vector<std::string> perversities;
    std::string sample = "default";
    std::string format = "table";
    std::string map;
    std::string space = "total";
    std::string stratum;
    std::string link;
};

namespace detail {

inline std::vector<Perversity> perversities_or(const Options& o, const GysinModel& g, const Perversity& fallback)
{
    std::vector<Perversity> out;
    for (const auto& s : o.perversities)
        out.push_back(parse_perversity(s, g));
    if (out.empty())
        out.push_back(fallback);
    return out;
}

inline void print_dims_table(std::ostream& out, const std::vector<std::size_t>& dims)
{
    for (std::size_t i = 0; i < dims.size(); ++i)
        out << (i ? ", " : "") << "deg " << i << ": " << dims[i];
    out << '\n';
}

inline void print_dims_csv(std::ostream& out, const std::vector<std::size_t>& dims)
{
    out << "degree,dimension\n";
    for (std::size_t i = 0; i < dims.size(); ++i)
        out << i << ',' << dims[i] << '\n';
}

inline void print_dims(std::ostream& out, const Options& o, const std::string& label,
                       const std::vector<std::size_t>& dims, bool with_label)
{
    if (o.format == "csv") {
        if (with_label)
            out << "# " << label << '\n';
        print_dims_csv(out, dims);
    } else {
        if (with_label)
            out << label << '\n';
        print_dims_table(out, dims);
    }
}

inline int cmd_validate(const Options& o, std::ostream& out)
{
    const GysinModel g = resolve_model(o.model);
    const auto& m = *g.base();
    out << o.model << ": valid (" << m.dimension() << " basis elements, " << m.poset().size()
        << (m.poset().size() == 1 ? " singular stratum" : " singular strata") << ", x=" << g.x().to_string()
        << ", e=" << g.e().to_string() << ")\n";
    return ok;
}

inline int cmd_cohomology(const Options& o, std::ostream& out)
{
    const GysinModel g = resolve_model(o.model);
    const GysinForms forms(g);
    const auto ps = perversities_or(o, g, g.e());
    for (const auto& p : ps) {
        const auto dims = o.space == "base" ? forms.base().ih(p)->dimensions() : forms.ih_total(p)->dimensions();
        print_dims(out, o, std::string(o.space == "base" ? "IH(B)" : "IH(X)") + " at " + p.to_string(), dims,
                   ps.size() > 1);
    }
    return ok;
}

inline int cmd_gysin(const Options& o, std::ostream& out)
{
    const GysinModel g = resolve_model(o.model);
    const GysinForms forms(g);
    int rc = ok;
    for (const auto& p : perversities_or(o, g, g.e())) {
        const auto seq = long_exact_sequence(forms, p);
        std::vector<std::size_t> base, total, gys;
        for (const auto& n : seq.nodes) {
            if (n.group == SequenceGroup::base)
                base.push_back(n.dimension);
            else if (n.group == SequenceGroup::total)
                total.push_back(n.dimension);
            else if (n.degree >= 0)
                gys.push_back(n.dimension);
        }
        if (o.format == "csv") {
            print_dims(out, o, "IH(B) at " + p.to_string(), base, true);
            print_dims(out, o, "IH(X) at " + p.to_string(), total, true);
            print_dims(out, o, "H(G) at " + p.to_string(), gys, true);
        } else {
            out << "perversity " << p.to_string() << '\n';
            for (std::size_t i = 0; i < base.size(); ++i) {
                out << "deg " << i << ": IH(B)=" << base[i] << ", IH(X)=" << total[i];
                if (i < gys.size())
                    out << ", H(G)=" << gys[i];
                out << '\n';
            }
            for (std::size_t k = 0; k < seq.maps.size(); ++k)
                out << "  " << seq.maps[k].name << ": " << to_string(seq.nodes[k].group) << '^'
                    << seq.nodes[k].degree << " -> " << to_string(seq.nodes[k + 1].group) << '^'
                    << seq.nodes[k + 1].degree << ", rank " << seq.maps[k].rank << '\n';
            std::size_t bad = 0;
            for (const auto& n : seq.nodes)
                if (!n.exact()) {
                    ++bad;
                    out << "  not exact at " << to_string(n.group) << '^' << n.degree << '\n';
                }
            out << "sequence: " << (bad ? "NOT EXACT" : "exact") << '\n';
        }
        if (!seq.exact())
            rc = invalid;
    }
    return rc;
}

inline int cmd_euler(const Options& o, std::ostream& out)
{
    const GysinModel g = resolve_model(o.model);
    const auto ec = euler_class(g);
    out << "x = " << g.x().to_string() << '\n';
    out << "e = " << g.e().to_string() << '\n';
    out << "epsilon = " << format_cochain(*g.base(), g.epsilon()) << '\n';
    out << "euler class in IH^2_e(B): " << (ec.is_zero ? "zero" : "non-zero") << '\n';
    if (!o.link.empty()) {
        if (o.stratum.empty())
            throw UsageError("--link needs --stratum");
        const GysinModel link = resolve_model(o.link);
        const auto r = check_link_consistency(g, o.stratum, link);
        out << "link check: " << r.message << '\n';
        if (r.status == LinkConsistency::Status::inconsistent)
            return invalid;
    } else if (!o.stratum.empty()) {
        throw UsageError("--stratum needs --link");
    }
    return ok;
}

inline int cmd_lemma_g(const Options& o, std::ostream& out)
{
    const GysinModel g = resolve_model(o.model);
    const GysinForms forms(g);
    const auto ps = perversities_or(o, g, g.e());
    int rc = ok;
    for (const auto& p : ps) {
        if (ps.size() > 1)
            out << p.to_string() << ": ";
        const auto r = check_lemma_g(forms, p);
        switch (r.status) {
        case LemmaGReport::Status::pass:
            out << "H0(G)=" << r.h0_dimension << "; eub(1)=EulerClass: PASS\n";
            break;
        case LemmaGReport::Status::fail:
            out << "H0(G)=" << r.h0_dimension << "; " << r.reason << ": FAIL\n";
            rc = invalid;
            break;
        case LemmaGReport::Status::not_applicable:
            out << "NOT APPLICABLE: " << r.reason << '\n';
            break;
        }
    }
    return rc;
}

inline std::vector<Perversity> sample_for(const Options& o, const GysinModel& g)
{
    if (o.sample == "default")
        return default_sample(g);
    std::vector<Perversity> out;
    std::istringstream in(o.sample);
    std::string item;
    while (std::getline(in, item, ';'))
        if (!item.empty())
            out.push_back(parse_perversity(item, g));
    if (out.empty())
        throw UsageError("empty perversity sample");
    return out;
}

inline int cmd_compare(const Options& o, std::ostream& out)
{
    if (o.model2.empty())
        throw UsageError("compare needs --model2");
    if (o.map.empty())
        throw UsageError("compare needs --map (a map file or 'identity')");
    const GysinModel g1 = resolve_model(o.model);
    const GysinModel g2 = resolve_model(o.model2);
    const BaseIso f = o.map == "identity" ? BaseIso::identity(g1.base(), g2.base())
                                          : load_map(o.map, g1.base(), g2.base());
    const auto sample = sample_for(o, g1);
    const Verdict v = compare_actions(g1, g2, f, sample);

    out << "verdict " << to_string(v.kind) << ": " << v.message << '\n';
    if (v.kind == Verdict::Kind::isomorphic) {
        const auto& cert = *v.proportionality->cert;
        out << "lambda = " << to_string(cert.lambda) << '\n';
        out << "gamma = " << format_cochain(*g1.base(), cert.gamma) << '\n';
        for (const auto& c : v.iso->checks)
            out << "check " << c.name << " [" << c.perversities << "]: " << (c.pass ? "PASS" : "FAIL") << '\n';
        out << "quasi-isomorphism at zero perversity: " << (v.quasi_iso_at_zero ? "PASS" : "FAIL") << '\n';
        return v.iso->all_pass() && v.quasi_iso_at_zero ? ok : invalid;
    }
    const auto rows = v.kind == Verdict::Kind::not_proportional ? v.obstructions() : v.dimensions;
    for (const auto& r : rows)
        out << (r.match() ? "dimensions" : "obstruction") << " at " << r.perversity.to_string()
            << ": IH(X1) = " << format_dims(r.source_dims) << " vs IH(X2) = " << format_dims(r.target_dims) << '\n';
    return negative_verdict;
}

} // namespace detail

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Intersection cohomology of modelled circle actions", "ihgysin"};
    app.require_subcommand(1);
    Options o;

    auto add_model = [&](CLI::App* sub) {
        sub->add_option("--model", o.model, "model file or builtin:<name>")->required();
    };
    auto add_perversity = [&](CLI::App* sub) {
        sub->add_option("--perversity", o.perversities, "perversity, e.g. v=2,w=0 or e+x (repeatable)");
    };
    auto add_format = [&](CLI::App* sub) {
        sub->add_option("--format", o.format, "table or csv")->check(CLI::IsMember({"table", "csv"}));
    };

    auto* validate = app.add_subcommand("validate", "check a model against every structural invariant");
    add_model(validate);

    auto* cohomology = app.add_subcommand("cohomology", "intersection cohomology dimensions");
    add_model(cohomology);
    add_perversity(cohomology);
    add_format(cohomology);
    cohomology->add_option("--space", o.space, "base or total")->check(CLI::IsMember({"base", "total"}));

    auto* gysin = app.add_subcommand("gysin", "Gysin sequence tables");
    add_model(gysin);
    add_perversity(gysin);
    add_format(gysin);

    auto* euler = app.add_subcommand("euler", "Euler perversity and Euler class");
    add_model(euler);
    euler->add_option("--stratum", o.stratum, "fixed stratum whose link is checked");
    euler->add_option("--link", o.link, "orbit model of the link action");

    auto* compare = app.add_subcommand("compare", "compare two actions over isomorphic orbit spaces");
    add_model(compare);
    compare->add_option("--model2", o.model2, "second model")->required();
    compare->add_option("--map", o.map, "map file or 'identity'")->required();
    compare->add_option("--sample", o.sample, "'default' or ';'-separated perversities");

    auto* lemma = app.add_subcommand("lemma-g", "check H0(G) and eub(1) against the Euler class");
    add_model(lemma);
    add_perversity(lemma);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? ok : usage;
    }

    try {
        if (validate->parsed())
            return detail::cmd_validate(o, out);
        if (cohomology->parsed())
            return detail::cmd_cohomology(o, out);
        if (gysin->parsed())
            return detail::cmd_gysin(o, out);
        if (euler->parsed())
            return detail::cmd_euler(o, out);
        if (compare->parsed())
            return detail::cmd_compare(o, out);
        if (lemma->parsed())
            return detail::cmd_lemma_g(o, out);
    } catch (const ValidationError& e) {
        err << "invalid:";
        for (const auto& v : e.report().violations)
            err << ' ' << v.code;
        err << '\n';
        for (const auto& v : e.report().violations)
            err << "  " << v.code << ": " << v.detail << '\n';
        return invalid;
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << '\n';
        return invalid;
    } catch (const UsageError& e) {
        err << "usage: " << e.what() << '\n';
        return usage;
    } catch (const std::invalid_argument& e) {
        err << "usage: " << e.what() << '\n';
        return usage;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << '\n';
        return invalid;
    } catch (const std::runtime_error& e) {
        err << "error: " << e.what() << '\n';
        return invalid;
    }
    return usage;
}

} // namespace ihgysin::cli
