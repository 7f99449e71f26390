#pragma once

// Built-in models over the cone on S^2, the text format for models and
// orbit-space maps, and the link consistency check for fixed strata.

#include <cctype>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ihgysin/classification.hpp"

namespace ihgysin {

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& message)
        : std::runtime_error(line ? "line " + std::to_string(line) + ": " + message : message), line_(line)
    {
    }

    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

// ---------------------------------------------------------------------------
// Built-ins

namespace detail {

/// Basis with the unit at index 0 and unit products u0 ^ b = b.
inline std::vector<ProductTerm> unit_products(std::size_t n)
{
    std::vector<ProductTerm> out;
    for (std::size_t j = 0; j < n; ++j)
        out.push_back({0, j, j, Rational(1)});
    return out;
}

inline ModelPtr sphere_base(StratumNature vertex, bool with_witness)
{
    auto poset = std::make_shared<const StrataPoset>(std::vector<StratumInfo>{{"v", vertex, 3}});
    std::vector<BasisElement> basis;
    if (with_witness)
        basis = {{"u0", 0, {0}}, {"a1", 1, {1}}, {"u2", 2, {2}}, {"u2b", 2, {2}}};
    else
        basis = {{"u0", 0, {0}}, {"u2", 2, {2}}};
    Mat d(basis.size(), basis.size());
    if (with_witness)
        d(3, 1) = 1;
    const std::size_t n = basis.size();
    return std::make_shared<const PerverseModel>(poset, std::move(basis), std::move(d), unit_products(n), 0, true);
}

inline ModelPtr sphere_manifold()
{
    auto poset = std::make_shared<const StrataPoset>();
    std::vector<BasisElement> basis{{"u0", 0, {}}, {"u2", 2, {}}};
    return std::make_shared<const PerverseModel>(poset, std::move(basis), Mat(2, 2), unit_products(2), 0, true);
}

} // namespace detail

inline const std::vector<std::string>& builtin_names()
{
    static const std::vector<std::string> names{"phi1",          "phi2",     "phi3",        "phi1_scaled",
                                                "ext_gamma",     "ext_gamma_plain", "phi2_perverse",
                                                "hopf_link",     "trivial_link"};
    return names;
}

/// phi1..phi3: the three circle actions over cS^2 (vertex fixed perverse,
/// fixed non-perverse, mobile).  ext_gamma adds an acyclic pair a1 -> u2b so
/// that comparing it with ext_gamma_plain needs a non-zero gamma.  The two
/// link models live on a manifold S^2 orbit space.
inline GysinModel builtin(std::string_view name)
{
    using N = StratumNature;
    if (name == "phi1")
        return GysinModel::create(detail::sphere_base(N::fixed_perverse, false), {0, 1});
    if (name == "phi2")
        return GysinModel::create(detail::sphere_base(N::fixed_nonperverse, false), {0, 0});
    if (name == "phi3")
        return GysinModel::create(detail::sphere_base(N::mobile, false), {0, 0});
    if (name == "phi1_scaled")
        return GysinModel::create(detail::sphere_base(N::fixed_perverse, false), {0, 2});
    if (name == "phi2_perverse")
        return GysinModel::create(detail::sphere_base(N::fixed_perverse, false), {0, 0});
    if (name == "ext_gamma")
        return GysinModel::create(detail::sphere_base(N::fixed_perverse, true), {0, 0, 1, 1});
    if (name == "ext_gamma_plain")
        return GysinModel::create(detail::sphere_base(N::fixed_perverse, true), {0, 0, 1, 0});
    if (name == "hopf_link")
        return GysinModel::create(detail::sphere_manifold(), {0, 1});
    if (name == "trivial_link")
        return GysinModel::create(detail::sphere_manifold(), {0, 0});
    throw std::invalid_argument("unknown built-in model '" + std::string(name) + "'");
}

// ---------------------------------------------------------------------------
// Model text format

namespace detail {

inline std::vector<std::string> split_words(std::string_view line)
{
    std::vector<std::string> out;
    std::istringstream in{std::string(line)};
    std::string w;
    while (in >> w)
        out.push_back(w);
    return out;
}

inline std::string_view strip_comment(std::string_view line)
{
    const auto hash = line.find('#');
    return hash == std::string_view::npos ? line : line.substr(0, hash);
}

inline int parse_int(std::string_view s, std::size_t line, std::string_view what)
{
    try {
        std::size_t pos = 0;
        const int v = std::stoi(std::string(s), &pos);
        if (pos != s.size())
            throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw ParseError(line, std::string(what) + ": expected an integer, got '" + std::string(s) + "'");
    }
}

inline Rational parse_coefficient(std::string_view s, std::size_t line, std::string_view what)
{
    try {
        return parse_rational(s);
    } catch (const std::exception& e) {
        throw ParseError(line, std::string(what) + ": " + e.what());
    }
}

inline bool parse_bool(std::string_view s, std::size_t line, std::string_view what)
{
    if (s == "true")
        return true;
    if (s == "false")
        return false;
    throw ParseError(line, std::string(what) + ": expected true or false, got '" + std::string(s) + "'");
}

} // namespace detail

inline GysinModel parse_model(std::string_view text)
{
    enum class Section { none, strata, basis, diff, prod, epsilon, flags };
    static const std::map<std::string, Section, std::less<>> headers{
        {"strata", Section::strata}, {"basis", Section::basis},     {"diff", Section::diff},
        {"prod", Section::prod},     {"epsilon", Section::epsilon}, {"flags", Section::flags}};

    struct RawBasis {
        std::size_t line;
        std::string name;
        int degree;
        std::map<std::string, int> pdeg;
    };
    struct RawEntry {
        std::size_t line;
        std::vector<std::string> words;
    };

    std::vector<StratumInfo> strata;
    std::vector<std::pair<std::string, std::string>> order;
    std::vector<RawBasis> raw_basis;
    std::vector<RawEntry> diff_lines, prod_lines, eps_lines;
    bool connected_normal = false;
    std::optional<std::pair<std::size_t, std::string>> unit_name;
    std::set<Section> seen;

    Section section = Section::none;
    std::istringstream in{std::string(text)};
    std::string raw;
    std::size_t lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        const auto words = detail::split_words(detail::strip_comment(raw));
        if (words.empty())
            continue;
        if (words.size() == 1) {
            if (auto h = headers.find(words[0]); h != headers.end()) {
                if (!seen.insert(h->second).second)
                    throw ParseError(lineno, "section '" + words[0] + "' appears twice");
                section = h->second;
                continue;
            }
        }
        switch (section) {
        case Section::none:
            throw ParseError(lineno, "content before the first section header");
        case Section::strata:
            if (words.size() == 3 && words[1] == "<") {
                order.emplace_back(words[0], words[2]);
                break;
            }
            if (words.size() < 2 || words.size() > 3)
                throw ParseError(lineno, "stratum: expected '<id> <nature> [codim=<n>]' or '<a> < <b>'");
            {
                auto nature = parse_nature(words[1]);
                if (!nature)
                    throw ParseError(lineno, "stratum '" + words[0] + "': unknown nature '" + words[1] + "'");
                StratumInfo s{words[0], *nature, std::nullopt};
                if (words.size() == 3) {
                    if (words[2].rfind("codim=", 0) != 0)
                        throw ParseError(lineno, "stratum '" + words[0] + "': expected codim=<n>");
                    s.codim = detail::parse_int(words[2].substr(6), lineno, "codim");
                }
                strata.push_back(std::move(s));
            }
            break;
        case Section::basis: {
            if (words.size() < 2)
                throw ParseError(lineno, "basis: expected '<name> <degree> <stratum>=<pdeg> ...'");
            RawBasis b{lineno, words[0], detail::parse_int(words[1], lineno, "degree of '" + words[0] + "'"), {}};
            for (std::size_t i = 2; i < words.size(); ++i) {
                const auto eq = words[i].find('=');
                if (eq == std::string::npos)
                    throw ParseError(lineno, "basis element '" + b.name + "': expected <stratum>=<pdeg>, got '" +
                                                 words[i] + "'");
                const std::string id = words[i].substr(0, eq);
                if (!b.pdeg.emplace(id, detail::parse_int(words[i].substr(eq + 1), lineno, "pdeg of '" + b.name + "'"))
                         .second)
                    throw ParseError(lineno, "basis element '" + b.name + "': stratum '" + id + "' given twice");
            }
            raw_basis.push_back(std::move(b));
            break;
        }
        case Section::diff:
            if (words.size() != 3)
                throw ParseError(lineno, "diff: expected '<from> <to> <coefficient>'");
            diff_lines.push_back({lineno, words});
            break;
        case Section::prod:
            if (words.size() != 4)
                throw ParseError(lineno, "prod: expected '<i> <j> <k> <coefficient>'");
            prod_lines.push_back({lineno, words});
            break;
        case Section::epsilon:
            if (words.size() != 2)
                throw ParseError(lineno, "epsilon: expected '<name> <coefficient>'");
            eps_lines.push_back({lineno, words});
            break;
        case Section::flags:
            if (words.size() != 2)
                throw ParseError(lineno, "flags: expected '<flag> <value>'");
            if (words[0] == "connected_normal")
                connected_normal = detail::parse_bool(words[1], lineno, "connected_normal");
            else if (words[0] == "unit")
                unit_name = {lineno, words[1]};
            else
                throw ParseError(lineno, "unknown flag '" + words[0] + "'");
            break;
        }
    }
    if (raw_basis.empty())
        throw ParseError(0, "model has no basis section or an empty basis");

    PosetPtr poset;
    try {
        poset = std::make_shared<const StrataPoset>(strata, order);
    } catch (const std::invalid_argument& e) {
        throw ParseError(0, std::string("strata: ") + e.what());
    }

    std::vector<BasisElement> basis;
    std::map<std::string, std::size_t, std::less<>> index;
    for (const auto& b : raw_basis) {
        if (!index.emplace(b.name, basis.size()).second)
            throw ParseError(b.line, "duplicate basis element '" + b.name + "'");
        BasisElement e{b.name, b.degree, std::vector<int>(poset->size(), 0)};
        for (std::size_t s = 0; s < poset->size(); ++s) {
            auto it = b.pdeg.find(poset->stratum(s).id);
            if (it == b.pdeg.end())
                throw ParseError(b.line, "basis element '" + b.name + "' has no perverse degree for stratum '" +
                                             poset->stratum(s).id + "'");
            e.pdeg[s] = it->second;
        }
        for (const auto& [id, _] : b.pdeg)
            if (!poset->index_of(id))
                throw ParseError(b.line, "basis element '" + b.name + "' names unknown stratum '" + id + "'");
        basis.push_back(std::move(e));
    }
    auto lookup = [&](const std::string& name, std::size_t line) {
        auto it = index.find(name);
        if (it == index.end())
            throw ParseError(line, "unknown basis element '" + name + "'");
        return it->second;
    };

    const std::size_t n = basis.size();
    Mat d(n, n);
    for (const auto& e : diff_lines) {
        const auto from = lookup(e.words[0], e.line);
        const auto to = lookup(e.words[1], e.line);
        d(to, from) += detail::parse_coefficient(e.words[2], e.line, "diff coefficient");
    }

    std::vector<ProductTerm> products;
    for (const auto& e : prod_lines) {
        auto i = lookup(e.words[0], e.line);
        auto j = lookup(e.words[1], e.line);
        const auto k = lookup(e.words[2], e.line);
        Rational c = detail::parse_coefficient(e.words[3], e.line, "product coefficient");
        if (i > j) {
            c *= koszul_sign(basis[i].degree, basis[j].degree);
            std::swap(i, j);
        }
        for (const auto& t : products)
            if (t.left == i && t.right == j && t.target == k)
                throw ParseError(e.line, "product " + basis[i].name + " ^ " + basis[j].name + " -> " +
                                             basis[k].name + " given twice");
        products.push_back({i, j, k, c});
    }

    Vec epsilon = zero_vector(n);
    for (const auto& e : eps_lines)
        epsilon[lookup(e.words[0], e.line)] += detail::parse_coefficient(e.words[1], e.line, "epsilon coefficient");

    std::size_t unit = n;
    if (unit_name) {
        unit = lookup(unit_name->second, unit_name->first);
    } else {
        for (std::size_t i = 0; i < n && unit == n; ++i)
            if (basis[i].degree == 0)
                unit = i;
        if (unit == n)
            throw ParseError(0, "no degree-0 basis element to serve as the unit");
    }

    ModelPtr model;
    try {
        model = std::make_shared<const PerverseModel>(poset, std::move(basis), std::move(d), std::move(products), unit,
                                                      connected_normal);
    } catch (const std::invalid_argument& e) {
        throw ParseError(0, e.what());
    }
    return GysinModel::create(std::move(model), std::move(epsilon));
}

inline std::string serialize_model(const GysinModel& g)
{
    const auto& m = *g.base();
    const auto& poset = m.poset();
    std::ostringstream out;
    out << "strata\n";
    for (const auto& s : poset.strata()) {
        out << s.id << ' ' << to_string(s.nature);
        if (s.codim)
            out << " codim=" << *s.codim;
        out << '\n';
    }
    for (const auto& [a, b] : poset.generating_pairs())
        out << poset.stratum(a).id << " < " << poset.stratum(b).id << '\n';
    out << "basis\n";
    for (const auto& e : m.basis()) {
        out << e.name << ' ' << e.degree;
        for (std::size_t s = 0; s < poset.size(); ++s)
            out << ' ' << poset.stratum(s).id << '=' << e.pdeg[s];
        out << '\n';
    }
    out << "diff\n";
    for (std::size_t j = 0; j < m.dimension(); ++j)
        for (std::size_t i = 0; i < m.dimension(); ++i)
            if (m.diff()(i, j) != 0)
                out << m.element(j).name << ' ' << m.element(i).name << ' ' << to_string(m.diff()(i, j)) << '\n';
    out << "prod\n";
    for (const auto& t : m.product_terms())
        out << m.element(t.left).name << ' ' << m.element(t.right).name << ' ' << m.element(t.target).name << ' '
            << to_string(t.coefficient) << '\n';
    out << "epsilon\n";
    for (std::size_t i = 0; i < m.dimension(); ++i)
        if (g.epsilon()[i] != 0)
            out << m.element(i).name << ' ' << to_string(g.epsilon()[i]) << '\n';
    out << "flags\n";
    out << "connected_normal " << (m.connected_normal() ? "true" : "false") << '\n';
    out << "unit " << m.element(m.unit()).name << '\n';
    return out.str();
}

inline std::string read_text_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot read '" + path + "'");
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

inline GysinModel load_model(const std::string& path)
{
    const std::string text = read_text_file(path);
    try {
        return parse_model(text);
    } catch (const ParseError& e) {
        throw ParseError(e.line(), path + ": " + e.what());
    }
}

/// "builtin:<name>" or a file path.
inline GysinModel resolve_model(const std::string& spec)
{
    constexpr std::string_view prefix = "builtin:";
    if (spec.rfind(prefix, 0) == 0)
        return builtin(std::string_view(spec).substr(prefix.size()));
    return load_model(spec);
}

// ---------------------------------------------------------------------------
// Map files

namespace detail {

/// "1/2*u2 - a1 + 3 u0" -> {(u2, 1/2), (a1, -1), (u0, 3)}.
inline std::vector<std::pair<std::string, Rational>> parse_combination(std::string_view text, std::size_t line)
{
    std::vector<std::pair<std::string, Rational>> out;
    std::string s;
    for (char c : text)
        if (c != ' ' && c != '\t')
            s += c;
    if (s.empty())
        throw ParseError(line, "empty linear combination");
    if (s == "0")
        return out;
    std::size_t pos = 0;
    while (pos < s.size()) {
        Rational sign = 1;
        if (s[pos] == '+' || s[pos] == '-') {
            if (s[pos] == '-')
                sign = -1;
            ++pos;
        } else if (!out.empty()) {
            throw ParseError(line, "expected '+' or '-' between terms");
        }
        auto end = s.find_first_of("+-", pos);
        const std::string term = s.substr(pos, end == std::string::npos ? std::string::npos : end - pos);
        pos = end == std::string::npos ? s.size() : end;
        if (term.empty())
            throw ParseError(line, "empty term in linear combination");
        const auto star = term.find('*');
        Rational coef = 1;
        std::string name = term;
        if (star != std::string::npos) {
            coef = parse_coefficient(term.substr(0, star), line, "map coefficient");
            name = term.substr(star + 1);
        } else {
            std::size_t k = 0;
            while (k < term.size() && (std::isdigit(static_cast<unsigned char>(term[k])) || term[k] == '/'))
                ++k;
            if (k > 0) {
                coef = parse_coefficient(term.substr(0, k), line, "map coefficient");
                name = term.substr(k);
            }
        }
        if (name.empty())
            throw ParseError(line, "term '" + term + "' names no basis element");
        out.emplace_back(name, sign * coef);
    }
    return out;
}

} // namespace detail

/// Map file for f : B1 -> B2.  Lines `target = combination of source names`
/// give f* on the target basis; lines `stratum target -> source` give the
/// strata bijection.
inline BaseIso parse_map(std::string_view text, ModelPtr source, ModelPtr target)
{
    const auto& m1 = *source;
    const auto& m2 = *target;
    Mat pullback(m1.dimension(), m2.dimension());
    std::vector<bool> defined(m2.dimension(), false);
    std::vector<std::size_t> strata(m1.poset().size(), m2.poset().size());

    std::istringstream in{std::string(text)};
    std::string raw;
    std::size_t lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        const std::string_view line = detail::strip_comment(raw);
        const auto words = detail::split_words(line);
        if (words.empty())
            continue;
        if (words[0] == "stratum") {
            if (words.size() != 4 || words[2] != "->")
                throw ParseError(lineno, "expected 'stratum <target> -> <source>'");
            const auto t = m2.poset().index_of(words[1]);
            const auto s = m1.poset().index_of(words[3]);
            if (!t)
                throw ParseError(lineno, "unknown target stratum '" + words[1] + "'");
            if (!s)
                throw ParseError(lineno, "unknown source stratum '" + words[3] + "'");
            if (strata[*s] != m2.poset().size())
                throw ParseError(lineno, "source stratum '" + words[3] + "' mapped twice");
            strata[*s] = *t;
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw ParseError(lineno, "expected '<target> = <combination>' or a stratum line");
        const auto lhs = detail::split_words(line.substr(0, eq));
        if (lhs.size() != 1)
            throw ParseError(lineno, "left-hand side must be a single target basis name");
        const auto j = m2.index_of(lhs[0]);
        if (!j)
            throw ParseError(lineno, "unknown target basis element '" + lhs[0] + "'");
        if (defined[*j])
            throw ParseError(lineno, "target basis element '" + lhs[0] + "' defined twice");
        defined[*j] = true;
        for (const auto& [name, c] : detail::parse_combination(line.substr(eq + 1), lineno)) {
            const auto i = m1.index_of(name);
            if (!i)
                throw ParseError(lineno, "unknown source basis element '" + name + "'");
            pullback(*i, *j) += c;
        }
    }
    for (std::size_t j = 0; j < m2.dimension(); ++j)
        if (!defined[j])
            throw ParseError(0, "map does not define the image of target basis element '" + m2.element(j).name + "'");
    for (std::size_t s = 0; s < strata.size(); ++s)
        if (strata[s] == m2.poset().size())
            throw ParseError(0, "map does not send source stratum '" + m1.poset().stratum(s).id + "' anywhere");
    return BaseIso(std::move(source), std::move(target), std::move(strata), std::move(pullback));
}

inline BaseIso load_map(const std::string& path, ModelPtr source, ModelPtr target)
{
    try {
        return parse_map(read_text_file(path), std::move(source), std::move(target));
    } catch (const ParseError& e) {
        throw ParseError(e.line(), path + ": " + e.what());
    }
}

// ---------------------------------------------------------------------------
// Link consistency

struct LinkConsistency {
    enum class Status { consistent, inconsistent, not_applicable };
    Status status = Status::not_applicable;
    bool euler_nonzero = false;
    bool flagged_perverse = false;
    std::string message;
};

/// A fixed stratum S is flagged perverse exactly when the Euler class of the
/// action on its link is non-zero.
inline LinkConsistency check_link_consistency(const GysinModel& g, std::string_view stratum, const GysinModel& link)
{
    const auto& s = g.base()->poset().stratum(g.base()->poset().require_index(stratum));
    LinkConsistency r;
    if (!is_fixed(s.nature)) {
        r.message = "not applicable: " + s.id + " is mobile";
        return r;
    }
    r.flagged_perverse = s.nature == StratumNature::fixed_perverse;
    r.euler_nonzero = !euler_class(link).is_zero;
    const bool ok = r.flagged_perverse == r.euler_nonzero;
    r.status = ok ? LinkConsistency::Status::consistent : LinkConsistency::Status::inconsistent;
    r.message = std::string(ok ? "consistent" : "inconsistent") + ": " + s.id + " is " +
                std::string(to_string(s.nature)) + ", link Euler class is " + (r.euler_nonzero ? "non-zero" : "zero");
    return r;
}

} // namespace ihgysin
