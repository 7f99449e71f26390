#pragma once

// Finite graded commutative differential algebras whose basis elements carry a
// perverse degree along each singular stratum.  Such a model stands in for the
// algebra of controlled forms on an orbit space.

#include <algorithm>
#include <climits>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "ihgysin/rational.hpp"
#include "ihgysin/strata.hpp"

namespace ihgysin {

struct BasisElement {
    std::string name;
    int degree = 0;
    std::vector<int> pdeg; // one entry per singular stratum, poset order

    friend bool operator==(const BasisElement&, const BasisElement&) = default;
};

/// b_left ^ b_right has coefficient `coefficient` on b_target.  Only
/// left <= right is stored; the other half follows from graded commutativity.
struct ProductTerm {
    std::size_t left = 0;
    std::size_t right = 0;
    std::size_t target = 0;
    Rational coefficient;

    friend bool operator==(const ProductTerm&, const ProductTerm&) = default;
};

using SparseVec = std::vector<std::pair<std::size_t, Rational>>;

inline int koszul_sign(int a, int b)
{
    return ((a * b) % 2 == 0) ? 1 : -1;
}

inline int parity_sign(int a)
{
    return (a % 2 == 0) ? 1 : -1;
}

class PerverseModel {
public:
    PerverseModel(PosetPtr poset, std::vector<BasisElement> basis, Mat diff, std::vector<ProductTerm> products,
                  std::size_t unit, bool connected_normal)
        : poset_(std::move(poset)), basis_(std::move(basis)), diff_(std::move(diff)), unit_(unit),
          connected_normal_(connected_normal)
    {
        if (!poset_)
            throw std::invalid_argument("model needs a strata poset");
        const std::size_t n = basis_.size();
        if (n == 0)
            throw std::invalid_argument("model basis is empty");
        if (diff_.rows() != n || diff_.cols() != n)
            throw std::invalid_argument("differential matrix must be square over the basis");
        if (unit_ >= n)
            throw std::invalid_argument("unit index out of range");
        for (std::size_t i = 0; i < n; ++i) {
            if (basis_[i].pdeg.size() != poset_->size())
                throw std::invalid_argument("basis element '" + basis_[i].name +
                                            "' must carry a perverse degree for every stratum");
            if (basis_[i].degree < 0)
                throw std::invalid_argument("basis element '" + basis_[i].name + "' has negative degree");
            for (std::size_t j = 0; j < i; ++j)
                if (basis_[j].name == basis_[i].name)
                    throw std::invalid_argument("duplicate basis name '" + basis_[i].name + "'");
        }
        table_.assign(n * n, {});
        std::set<std::tuple<std::size_t, std::size_t, std::size_t>> seen;
        for (auto t : products) {
            if (t.left >= n || t.right >= n || t.target >= n)
                throw std::invalid_argument("product term index out of range");
            if (t.left > t.right)
                throw std::invalid_argument("product terms must be stored with left <= right");
            if (!seen.insert({t.left, t.right, t.target}).second)
                throw std::invalid_argument("duplicate product term (" + basis_[t.left].name + ", " +
                                            basis_[t.right].name + ", " + basis_[t.target].name + ")");
            t.coefficient.canonicalize();
            if (t.coefficient == 0)
                continue;
            products_.push_back(t);
        }
        std::sort(products_.begin(), products_.end(), [](const ProductTerm& a, const ProductTerm& b) {
            return std::tie(a.left, a.right, a.target) < std::tie(b.left, b.right, b.target);
        });
        for (const auto& t : products_) {
            table_[t.left * n + t.right].emplace_back(t.target, t.coefficient);
            if (t.left != t.right) {
                const int s = koszul_sign(basis_[t.left].degree, basis_[t.right].degree);
                table_[t.right * n + t.left].emplace_back(t.target, Rational(s) * t.coefficient);
            }
        }
        for (const auto& e : basis_)
            top_degree_ = std::max(top_degree_, e.degree);
    }

    const PosetPtr& poset_ptr() const { return poset_; }
    const StrataPoset& poset() const { return *poset_; }
    std::size_t dimension() const { return basis_.size(); }
    const std::vector<BasisElement>& basis() const { return basis_; }
    const BasisElement& element(std::size_t i) const { return basis_.at(i); }
    int degree(std::size_t i) const { return basis_.at(i).degree; }
    const Mat& diff() const { return diff_; }
    std::size_t unit() const { return unit_; }
    bool connected_normal() const { return connected_normal_; }
    int top_degree() const { return top_degree_; }
    const std::vector<ProductTerm>& product_terms() const { return products_; }

    std::optional<std::size_t> index_of(std::string_view name) const
    {
        for (std::size_t i = 0; i < basis_.size(); ++i)
            if (basis_[i].name == name)
                return i;
        return std::nullopt;
    }

    /// b_i ^ b_j, full table including the commuted half.
    const SparseVec& product(std::size_t i, std::size_t j) const { return table_.at(i * basis_.size() + j); }

    Vec unit_vector() const { return ihgysin::unit_vector(dimension(), unit_); }
    Vec basis_vector(std::size_t i) const { return ihgysin::unit_vector(dimension(), i); }

    Vec differential(const Vec& v) const { return diff_ * v; }

    Vec wedge(const Vec& a, const Vec& b) const
    {
        const std::size_t n = dimension();
        if (a.size() != n || b.size() != n)
            throw std::invalid_argument("wedge: coordinate length mismatch");
        Vec out = zero_vector(n);
        for (std::size_t i = 0; i < n; ++i) {
            if (a[i] == 0)
                continue;
            for (std::size_t j = 0; j < n; ++j) {
                if (b[j] == 0)
                    continue;
                for (const auto& [k, c] : product(i, j))
                    out[k] += a[i] * b[j] * c;
            }
        }
        return out;
    }

    /// Matrix of v -> v ^ w.
    Mat right_multiplication(const Vec& w) const
    {
        const std::size_t n = dimension();
        Mat m(n, n);
        for (std::size_t j = 0; j < n; ++j)
            m.set_column(j, wedge(basis_vector(j), w));
        return m;
    }

    /// Matrix of v -> w ^ v.
    Mat left_multiplication(const Vec& w) const
    {
        const std::size_t n = dimension();
        Mat m(n, n);
        for (std::size_t j = 0; j < n; ++j)
            m.set_column(j, wedge(w, basis_vector(j)));
        return m;
    }

    /// Degrees present in the support of v.
    std::set<int> support_degrees(const Vec& v) const
    {
        std::set<int> out;
        for (std::size_t i = 0; i < v.size(); ++i)
            if (v[i] != 0)
                out.insert(basis_.at(i).degree);
        return out;
    }

    /// Basis indices of a given degree.
    std::vector<std::size_t> indices_of_degree(int deg) const
    {
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < basis_.size(); ++i)
            if (basis_[i].degree == deg)
                out.push_back(i);
        return out;
    }

private:
    PosetPtr poset_;
    std::vector<BasisElement> basis_;
    Mat diff_;
    std::vector<ProductTerm> products_;
    std::vector<SparseVec> table_;
    std::size_t unit_ = 0;
    bool connected_normal_ = true;
    int top_degree_ = 0;
};

using ModelPtr = std::shared_ptr<const PerverseModel>;

/// Sentinel perverse degree of the zero cochain.
inline constexpr int kMinusInfinity = INT_MIN;

/// Perverse degree along stratum `s`: max pdeg over the support.
inline int perverse_degree(const PerverseModel& m, const Vec& v, std::size_t s)
{
    if (s >= m.poset().size())
        throw std::domain_error("stratum index out of range");
    int best = kMinusInfinity;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i] != 0)
            best = std::max(best, m.element(i).pdeg[s]);
    return best;
}

inline int perverse_degree(const PerverseModel& m, const Vec& v, std::string_view stratum)
{
    return perverse_degree(m, v, m.poset().require_index(stratum));
}

/// Whether b_i has perverse degree at most p(S) along every singular stratum.
inline bool within_bound(const PerverseModel& m, std::size_t i, const Perversity& p)
{
    const auto& pd = m.element(i).pdeg;
    for (std::size_t s = 0; s < pd.size(); ++s)
        if (pd[s] > p[s])
            return false;
    return true;
}

inline bool within_bound(const PerverseModel& m, const Vec& v, const Perversity& p)
{
    for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i] != 0 && !within_bound(m, i, p))
            return false;
    return true;
}

/// A coordinate vector over a model's basis.  A zero vector has no inferred
/// degree, so degree-sensitive callers must pass one explicitly.
class Cochain {
public:
    Cochain(ModelPtr model, Vec coords, std::optional<int> degree = std::nullopt)
        : model_(std::move(model)), coords_(std::move(coords))
    {
        if (!model_ || coords_.size() != model_->dimension())
            throw std::invalid_argument("cochain coordinates do not match the model basis");
        const auto degs = model_->support_degrees(coords_);
        homogeneous_ = degs.size() <= 1;
        if (degree) {
            if (degs.size() > 1 || (degs.size() == 1 && *degs.begin() != *degree))
                throw std::domain_error("cochain support does not match declared degree " + std::to_string(*degree));
            degree_ = degree;
        } else if (degs.size() == 1) {
            degree_ = *degs.begin();
        }
    }

    static Cochain basis(ModelPtr model, std::string_view name)
    {
        const auto i = model->index_of(name);
        if (!i)
            throw std::domain_error("unknown basis element '" + std::string(name) + "'");
        Vec v = model->basis_vector(*i);
        const int d = model->degree(*i);
        return Cochain(std::move(model), std::move(v), d);
    }

    const ModelPtr& model() const { return model_; }
    const Vec& coords() const { return coords_; }
    bool homogeneous() const { return homogeneous_; }
    bool is_zero() const { return is_zero_vector(coords_); }

    /// Degree of a homogeneous cochain; throws for mixed or undetermined degree.
    int degree() const
    {
        if (!homogeneous_)
            throw std::domain_error("mixed-degree cochain where a homogeneous one is required");
        if (!degree_)
            throw std::domain_error("zero cochain without a declared degree");
        return *degree_;
    }

    std::optional<int> degree_if_known() const { return degree_; }

private:
    ModelPtr model_;
    Vec coords_;
    std::optional<int> degree_;
    bool homogeneous_ = true;
};

inline int perverse_degree(const Cochain& c, std::string_view stratum)
{
    return perverse_degree(*c.model(), c.coords(), stratum);
}

struct Violation {
    std::string code;
    std::string detail;
};

struct ValidationReport {
    std::vector<Violation> violations;

    bool ok() const { return violations.empty(); }

    bool contains(std::string_view code) const
    {
        return std::any_of(violations.begin(), violations.end(), [&](const Violation& v) { return v.code == code; });
    }

    std::vector<std::string> codes() const
    {
        std::vector<std::string> out;
        for (const auto& v : violations)
            if (std::find(out.begin(), out.end(), v.code) == out.end())
                out.push_back(v.code);
        return out;
    }

    void add(std::string code, std::string detail) { violations.push_back({std::move(code), std::move(detail)}); }
};

/// Thrown when a model fails validation; carries the full report.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(ValidationReport report)
        : std::runtime_error(describe(report)), report_(std::move(report))
    {
    }

    const ValidationReport& report() const { return report_; }

private:
    static std::string describe(const ValidationReport& r)
    {
        std::string s = "model validation failed:";
        for (const auto& v : r.violations)
            s += " " + v.code + " (" + v.detail + ");";
        return s;
    }

    ValidationReport report_;
};

/// Checks every structural invariant of a model and reports all failures.
inline ValidationReport validate_model(const PerverseModel& m)
{
    ValidationReport report;
    const std::size_t n = m.dimension();
    const auto& b = m.basis();
    auto name = [&](std::size_t i) { return b[i].name; };

    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t s = 0; s < b[i].pdeg.size(); ++s)
            if (b[i].pdeg[s] < 0)
                report.add("pdeg_negative", name(i) + " at " + m.poset().stratum(s).id);

    const Mat& d = m.diff();
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k)
            if (d(k, j) != 0 && b[k].degree != b[j].degree + 1)
                report.add("d_degree", "d(" + name(j) + ") has a component on " + name(k));

    const Mat dd = d * d;
    for (std::size_t j = 0; j < n; ++j)
        if (!is_zero_vector(dd.column(j)))
            report.add("d_squared_nonzero", "d(d(" + name(j) + ")) != 0");

    for (const auto& t : m.product_terms())
        if (b[t.target].degree != b[t.left].degree + b[t.right].degree)
            report.add("prod_degree", name(t.left) + "^" + name(t.right) + " -> " + name(t.target));

    for (std::size_t i = 0; i < n; ++i)
        if (b[i].degree % 2 != 0 && !m.product(i, i).empty())
            report.add("graded_commutativity", name(i) + "^" + name(i) + " must vanish in odd degree");

    for (const auto& t : m.product_terms())
        for (std::size_t s = 0; s < m.poset().size(); ++s)
            if (b[t.target].pdeg[s] > b[t.left].pdeg[s] + b[t.right].pdeg[s])
                report.add("pdeg_subadditivity", name(t.left) + "^" + name(t.right) + " -> " + name(t.target) + " at " +
                                                     m.poset().stratum(s).id);

    const std::size_t u = m.unit();
    const Vec one = m.unit_vector();
    if (b[u].degree != 0)
        report.add("unit", "unit has nonzero degree");
    for (std::size_t s = 0; s < b[u].pdeg.size(); ++s)
        if (b[u].pdeg[s] != 0)
            report.add("unit", "unit has nonzero perverse degree at " + m.poset().stratum(s).id);
    if (!is_zero_vector(m.differential(one)))
        report.add("unit", "d(1) != 0");
    for (std::size_t j = 0; j < n; ++j) {
        const Vec bj = m.basis_vector(j);
        if (m.wedge(one, bj) != bj || m.wedge(bj, one) != bj)
            report.add("unit", "1^" + name(j) + " != " + name(j));
    }

    std::vector<Vec> basis_vectors;
    for (std::size_t i = 0; i < n; ++i)
        basis_vectors.push_back(m.basis_vector(i));

    bool assoc_reported = false;
    for (std::size_t i = 0; i < n && !assoc_reported; ++i)
        for (std::size_t j = 0; j < n && !assoc_reported; ++j) {
            const Vec ij = m.wedge(basis_vectors[i], basis_vectors[j]);
            for (std::size_t k = 0; k < n; ++k) {
                const Vec left = m.wedge(ij, basis_vectors[k]);
                const Vec right = m.wedge(basis_vectors[i], m.wedge(basis_vectors[j], basis_vectors[k]));
                if (left != right) {
                    report.add("associativity", "(" + name(i) + "^" + name(j) + ")^" + name(k));
                    assoc_reported = true;
                    break;
                }
            }
        }

    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const Vec lhs = m.differential(m.wedge(basis_vectors[i], basis_vectors[j]));
            const Vec rhs = add(m.wedge(m.differential(basis_vectors[i]), basis_vectors[j]),
                                scale(Rational(parity_sign(b[i].degree)),
                                      m.wedge(basis_vectors[i], m.differential(basis_vectors[j]))));
            if (lhs != rhs)
                report.add("leibniz", "d(" + name(i) + "^" + name(j) + ")");
        }

    return report;
}

} // namespace ihgysin
