#pragma once

// Singular strata of an orbit space, their nature under the circle action, and
// perversities with their perverse-set arithmetic.

#include <algorithm>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ihgysin {

enum class StratumNature { mobile, fixed_nonperverse, fixed_perverse };

inline std::string_view to_string(StratumNature n)
{
    switch (n) {
    case StratumNature::mobile:
        return "mobile";
    case StratumNature::fixed_nonperverse:
        return "fixed_nonperverse";
    case StratumNature::fixed_perverse:
        return "fixed_perverse";
    }
    return "?";
}

inline std::optional<StratumNature> parse_nature(std::string_view s)
{
    if (s == "mobile")
        return StratumNature::mobile;
    if (s == "fixed_nonperverse")
        return StratumNature::fixed_nonperverse;
    if (s == "fixed_perverse")
        return StratumNature::fixed_perverse;
    return std::nullopt;
}

inline bool is_fixed(StratumNature n)
{
    return n != StratumNature::mobile;
}

struct StratumInfo {
    std::string id;
    StratumNature nature = StratumNature::mobile;
    std::optional<int> codim;

    friend bool operator==(const StratumInfo&, const StratumInfo&) = default;
};

/// Finite set of singular strata with a strict partial order.  The order is
/// given by generating pairs (a, b) meaning a precedes b; the transitive
/// closure is stored and must be irreflexive.
class StrataPoset {
public:
    StrataPoset() = default;

    StrataPoset(std::vector<StratumInfo> strata, std::vector<std::pair<std::string, std::string>> order = {})
        : strata_(std::move(strata))
    {
        const std::size_t n = strata_.size();
        for (std::size_t i = 0; i < n; ++i) {
            if (strata_[i].id.empty())
                throw std::invalid_argument("stratum with empty id");
            if (strata_[i].codim && *strata_[i].codim <= 0)
                throw std::invalid_argument("stratum '" + strata_[i].id + "': codim must be positive");
            for (std::size_t j = 0; j < i; ++j)
                if (strata_[j].id == strata_[i].id)
                    throw std::invalid_argument("duplicate stratum id '" + strata_[i].id + "'");
        }
        closure_.assign(n * n, false);
        for (const auto& [a, b] : order) {
            const auto ia = index_of(a);
            const auto ib = index_of(b);
            if (!ia || !ib)
                throw std::invalid_argument("order pair names unknown stratum: " + a + " < " + b);
            closure_[*ia * n + *ib] = true;
            generators_.emplace_back(*ia, *ib);
        }
        std::sort(generators_.begin(), generators_.end());
        generators_.erase(std::unique(generators_.begin(), generators_.end()), generators_.end());
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t i = 0; i < n; ++i)
                if (closure_[i * n + k])
                    for (std::size_t j = 0; j < n; ++j)
                        if (closure_[k * n + j])
                            closure_[i * n + j] = true;
        for (std::size_t i = 0; i < n; ++i)
            if (closure_[i * n + i])
                throw std::invalid_argument("stratum order is not a strict partial order (cycle through '" +
                                            strata_[i].id + "')");
    }

    std::size_t size() const { return strata_.size(); }
    bool empty() const { return strata_.empty(); }
    const StratumInfo& stratum(std::size_t i) const { return strata_.at(i); }
    const std::vector<StratumInfo>& strata() const { return strata_; }

    std::optional<std::size_t> index_of(std::string_view id) const
    {
        for (std::size_t i = 0; i < strata_.size(); ++i)
            if (strata_[i].id == id)
                return i;
        return std::nullopt;
    }

    std::size_t require_index(std::string_view id) const
    {
        if (auto i = index_of(id))
            return *i;
        throw std::domain_error("unknown stratum '" + std::string(id) + "'");
    }

    /// Strict order after transitive closure.
    bool precedes(std::size_t a, std::size_t b) const { return closure_.at(a * strata_.size() + b); }

    const std::vector<std::pair<std::size_t, std::size_t>>& generating_pairs() const { return generators_; }

    friend bool operator==(const StrataPoset& a, const StrataPoset& b)
    {
        return a.strata_ == b.strata_ && a.closure_ == b.closure_;
    }

private:
    std::vector<StratumInfo> strata_;
    std::vector<bool> closure_;
    std::vector<std::pair<std::size_t, std::size_t>> generators_;
};

using PosetPtr = std::shared_ptr<const StrataPoset>;

inline bool same_poset(const PosetPtr& a, const PosetPtr& b)
{
    return a == b || (a && b && *a == *b);
}

/// Integer-valued function on the singular strata of a poset.  Values may be
/// negative.
class Perversity {
public:
    Perversity() = default;

    Perversity(PosetPtr poset, std::vector<int> values) : poset_(std::move(poset)), values_(std::move(values))
    {
        if (!poset_)
            throw std::invalid_argument("perversity needs a poset");
        if (values_.size() != poset_->size())
            throw std::invalid_argument("perversity must be defined on exactly the singular strata");
    }

    static Perversity constant(PosetPtr poset, int k)
    {
        const std::size_t n = poset->size();
        return Perversity(std::move(poset), std::vector<int>(n, k));
    }

    static Perversity zero(PosetPtr poset) { return constant(std::move(poset), 0); }

    const PosetPtr& poset() const { return poset_; }
    const std::vector<int>& values() const { return values_; }
    std::size_t size() const { return values_.size(); }
    int operator[](std::size_t i) const { return values_.at(i); }
    int at(std::string_view id) const { return values_.at(poset_->require_index(id)); }

    bool compatible_with(const Perversity& o) const { return same_poset(poset_, o.poset_); }

    /// "v=2,w=0" in poset order; the empty poset renders as "-".
    std::string to_string() const
    {
        if (values_.empty())
            return "-";
        std::string s;
        for (std::size_t i = 0; i < values_.size(); ++i) {
            if (i)
                s += ',';
            s += poset_->stratum(i).id + "=" + std::to_string(values_[i]);
        }
        return s;
    }

    friend bool operator==(const Perversity& a, const Perversity& b)
    {
        return a.compatible_with(b) && a.values_ == b.values_;
    }

private:
    PosetPtr poset_;
    std::vector<int> values_;
};

namespace detail {
inline void require_same_poset(const Perversity& p, const Perversity& q)
{
    if (!p.compatible_with(q))
        throw std::domain_error("perversities are bound to different strata posets");
}
} // namespace detail

inline Perversity perversity_add(const Perversity& p, const Perversity& q)
{
    detail::require_same_poset(p, q);
    std::vector<int> v(p.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        v[i] = p[i] + q[i];
    return Perversity(p.poset(), std::move(v));
}

/// Pointwise difference; used to form p - x.
inline Perversity perversity_subtract(const Perversity& p, const Perversity& q)
{
    detail::require_same_poset(p, q);
    std::vector<int> v(p.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        v[i] = p[i] - q[i];
    return Perversity(p.poset(), std::move(v));
}

inline bool perversity_leq(const Perversity& p, const Perversity& q)
{
    detail::require_same_poset(p, q);
    for (std::size_t i = 0; i < p.size(); ++i)
        if (p[i] > q[i])
            return false;
    return true;
}

inline Perversity operator+(const Perversity& p, const Perversity& q) { return perversity_add(p, q); }
inline Perversity operator-(const Perversity& p, const Perversity& q) { return perversity_subtract(p, q); }

/// 1 on fixed strata, 0 on mobile strata.
inline Perversity characteristic_perversity(const PosetPtr& poset)
{
    std::vector<int> v;
    for (const auto& s : poset->strata())
        v.push_back(is_fixed(s.nature) ? 1 : 0);
    return Perversity(poset, std::move(v));
}

/// 0 on mobile, 1 on non-perverse fixed, 2 on perverse strata.
inline Perversity euler_perversity(const PosetPtr& poset)
{
    std::vector<int> v;
    for (const auto& s : poset->strata()) {
        switch (s.nature) {
        case StratumNature::mobile:
            v.push_back(0);
            break;
        case StratumNature::fixed_nonperverse:
            v.push_back(1);
            break;
        case StratumNature::fixed_perverse:
            v.push_back(2);
            break;
        }
    }
    return Perversity(poset, std::move(v));
}

/// t(S) = codim(S) - 2, available only when every stratum carries a codim.
inline std::optional<Perversity> top_perversity(const PosetPtr& poset)
{
    std::vector<int> v;
    for (const auto& s : poset->strata()) {
        if (!s.codim)
            return std::nullopt;
        v.push_back(*s.codim - 2);
    }
    return Perversity(poset, std::move(v));
}

} // namespace ihgysin
