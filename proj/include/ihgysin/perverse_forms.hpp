#pragma once

// Perverse subcomplexes Omega_p of a model: forms a with ||a||_S <= p(S) and
// ||da||_S <= p(S) along every singular stratum.

#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <utility>
#include <vector>

#include "ihgysin/cdga.hpp"
#include "ihgysin/cohomology.hpp"

namespace ihgysin {

/// Basis elements lying in the coordinate subspace A_p.
inline std::vector<bool> bounded_mask(const PerverseModel& m, const Perversity& p)
{
    if (!same_poset(m.poset_ptr(), p.poset()))
        throw std::domain_error("perversity is bound to a different strata poset");
    std::vector<bool> mask(m.dimension());
    for (std::size_t i = 0; i < mask.size(); ++i)
        mask[i] = within_bound(m, i, p);
    return mask;
}

/// {a in A_bound of degree `deg` : da in A_dbound}, as ambient basis columns.
inline Mat constrained_subspace(const PerverseModel& m, int deg, const Perversity& bound, const Perversity& dbound)
{
    const auto in_bound = bounded_mask(m, bound);
    const auto in_dbound = bounded_mask(m, dbound);
    std::vector<std::size_t> cols;
    for (auto i : m.indices_of_degree(deg))
        if (in_bound[i])
            cols.push_back(i);
    std::vector<std::size_t> outside;
    for (std::size_t k = 0; k < m.dimension(); ++k)
        if (!in_dbound[k])
            outside.push_back(k);
    const Mat constraint = m.diff().select_rows(outside).select_columns(cols);
    const Mat sol = kernel(constraint);
    Mat out(m.dimension(), sol.cols());
    for (std::size_t c = 0; c < sol.cols(); ++c)
        for (std::size_t r = 0; r < cols.size(); ++r)
            out(cols[r], c) = sol(r, c);
    return out;
}

struct PerverseSubcomplex {
    ModelPtr model;
    Perversity perversity;
    GradedSubspace space;

    Mat basis(int deg) const { return space.basis(deg); }
    std::size_t dimension(int deg) const { return space.dimension(deg); }
};

inline PerverseSubcomplex extract_omega(const ModelPtr& m, const Perversity& p)
{
    PerverseSubcomplex out{m, p, {m->dimension(), {}}};
    for (int deg = 0; deg <= m->top_degree(); ++deg)
        out.space.by_degree.push_back(constrained_subspace(*m, deg, p, p));
    return out;
}

/// Inclusion Omega_p -> Omega_q, one matrix per degree in the two chosen bases.
inline std::vector<Mat> inclusion_map(const PerverseSubcomplex& from, const PerverseSubcomplex& to)
{
    if (!perversity_leq(from.perversity, to.perversity))
        throw std::domain_error("inclusion requires p <= q, got p=" + from.perversity.to_string() +
                                " q=" + to.perversity.to_string());
    std::vector<Mat> out;
    for (int deg = 0; deg <= from.space.top_degree(); ++deg) {
        auto c = coordinates_in(to.basis(deg), from.basis(deg));
        if (!c)
            throw std::logic_error("perverse subcomplexes are not nested in degree " + std::to_string(deg));
        out.push_back(std::move(*c));
    }
    return out;
}

inline CohomologyTable ih_base(const ModelPtr& m, const Perversity& p)
{
    return compute_cohomology(extract_omega(m, p).space, m->diff());
}

/// Thread-safe per-perversity cache.  Values are computed outside the lock;
/// concurrent computations of the same key keep whichever lands first.
template <class Value>
class PerversityMemo {
public:
    template <class Compute>
    std::shared_ptr<const Value> get(const Perversity& p, Compute&& compute) const
    {
        {
            std::lock_guard lock(mutex_);
            auto it = cache_.find(p.values());
            if (it != cache_.end())
                return it->second;
        }
        auto value = std::make_shared<const Value>(compute());
        std::lock_guard lock(mutex_);
        return cache_.emplace(p.values(), std::move(value)).first->second;
    }

private:
    mutable std::mutex mutex_;
    mutable std::map<std::vector<int>, std::shared_ptr<const Value>> cache_;
};

/// The perverse algebra of a base model, with subcomplexes and their
/// cohomology computed on demand.
class BaseForms {
public:
    explicit BaseForms(ModelPtr model) : model_(std::move(model)) {}

    const ModelPtr& model() const { return model_; }

    std::shared_ptr<const PerverseSubcomplex> omega(const Perversity& p) const
    {
        return omega_.get(p, [&] { return extract_omega(model_, p); });
    }

    std::shared_ptr<const CohomologyTable> ih(const Perversity& p) const
    {
        return ih_.get(p, [&] { return compute_cohomology(omega(p)->space, model_->diff()); });
    }

private:
    ModelPtr model_;
    PerversityMemo<PerverseSubcomplex> omega_;
    PerversityMemo<CohomologyTable> ih_;
};

} // namespace ihgysin
