#pragma once

// Cohomology of a graded subcomplex of a finite cochain complex, computed with
// exact rational elimination.

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ihgysin/rational.hpp"

namespace ihgysin {

/// A graded subspace of a fixed ambient coordinate space, given by one basis
/// matrix (ambient_dim x k) per degree, starting at degree 0.
struct GradedSubspace {
    std::size_t ambient_dim = 0;
    std::vector<Mat> by_degree;

    int top_degree() const { return static_cast<int>(by_degree.size()) - 1; }

    std::size_t dimension(int deg) const
    {
        if (deg < 0 || deg > top_degree())
            return 0;
        return by_degree[deg].cols();
    }

    Mat basis(int deg) const
    {
        if (deg < 0 || deg > top_degree())
            return Mat(ambient_dim, 0);
        return by_degree[deg];
    }

    std::vector<std::size_t> dimensions() const
    {
        std::vector<std::size_t> out;
        for (const auto& b : by_degree)
            out.push_back(b.cols());
        return out;
    }
};

/// A cohomology class: coordinates with respect to a table's chosen
/// representatives in one degree.
struct CohomologyClass {
    int degree = 0;
    Vec coords;

    bool is_zero() const { return is_zero_vector(coords); }
    friend bool operator==(const CohomologyClass&, const CohomologyClass&) = default;
};

struct DegreeCohomology {
    int degree = 0;
    Mat chains;                  // ambient x k
    Mat differential;            // k_{i+1} x k_i, in chain coordinates
    Mat cocycles;                // k x z
    Mat coboundaries;            // k x b
    Mat representatives;         // k x h
    Mat representative_cochains; // ambient x h

    std::size_t dimension() const { return representatives.cols(); }
};

class CohomologyTable {
public:
    CohomologyTable() = default;
    CohomologyTable(std::size_t ambient_dim, std::vector<DegreeCohomology> degrees)
        : ambient_dim_(ambient_dim), degrees_(std::move(degrees))
    {
    }

    std::size_t ambient_dim() const { return ambient_dim_; }
    int top_degree() const { return static_cast<int>(degrees_.size()) - 1; }
    bool in_range(int deg) const { return deg >= 0 && deg <= top_degree(); }

    const DegreeCohomology& at(int deg) const
    {
        if (!in_range(deg))
            throw std::out_of_range("cohomology degree out of range");
        return degrees_[deg];
    }

    std::size_t dimension(int deg) const { return in_range(deg) ? degrees_[deg].dimension() : 0; }

    std::vector<std::size_t> dimensions() const
    {
        std::vector<std::size_t> out;
        for (const auto& d : degrees_)
            out.push_back(d.dimension());
        return out;
    }

    /// Class of an ambient cochain, or nothing if it is not a cocycle of the
    /// subcomplex in this degree.
    std::optional<Vec> try_classify(int deg, const Vec& ambient) const
    {
        if (ambient.size() != ambient_dim_)
            throw std::invalid_argument("classify: ambient length mismatch");
        if (!in_range(deg))
            return is_zero_vector(ambient) ? std::optional<Vec>(Vec{}) : std::nullopt;
        const auto& dc = degrees_[deg];
        const auto chain = coordinates_in(dc.chains, Mat::from_columns(ambient_dim_, {ambient}));
        if (!chain)
            return std::nullopt;
        const Vec c = chain->column(0);
        if (!is_zero_vector(dc.differential * c))
            return std::nullopt;
        const auto split =
            coordinates_in(hstack(dc.representatives, dc.coboundaries), Mat::from_columns(c.size(), {c}));
        if (!split)
            throw std::logic_error("cohomology table: cocycle outside representatives + coboundaries");
        Vec out(dc.dimension());
        for (std::size_t i = 0; i < out.size(); ++i)
            out[i] = (*split)(i, 0);
        return out;
    }

    CohomologyClass classify(int deg, const Vec& ambient) const
    {
        auto c = try_classify(deg, ambient);
        if (!c)
            throw std::domain_error("cochain is not a cocycle of the complex in degree " + std::to_string(deg));
        return {deg, std::move(*c)};
    }

    /// Ambient representative cochain of a class.
    Vec representative(const CohomologyClass& c) const
    {
        if (!in_range(c.degree)) {
            if (!c.coords.empty())
                throw std::domain_error("class coordinates given in a zero degree");
            return zero_vector(ambient_dim_);
        }
        const auto& dc = degrees_[c.degree];
        if (c.coords.size() != dc.dimension())
            throw std::domain_error("class coordinate length does not match the cohomology dimension");
        return dc.representative_cochains * c.coords;
    }

    CohomologyClass basis_class(int deg, std::size_t i) const
    {
        return {deg, unit_vector(dimension(deg), i)};
    }

private:
    std::size_t ambient_dim_ = 0;
    std::vector<DegreeCohomology> degrees_;
};

/// Cohomology of `space` under the ambient differential `d`.  Throws
/// std::domain_error if d does not map the subspace into itself.
inline CohomologyTable compute_cohomology(const GradedSubspace& space, const Mat& d)
{
    if (d.rows() != space.ambient_dim || d.cols() != space.ambient_dim)
        throw std::invalid_argument("compute_cohomology: differential does not match the ambient space");
    const int top = space.top_degree();
    std::vector<DegreeCohomology> degrees(top + 1);
    for (int i = 0; i <= top; ++i) {
        auto& dc = degrees[i];
        dc.degree = i;
        dc.chains = space.basis(i);
        const Mat next = space.basis(i + 1);
        const Mat image = d * dc.chains;
        if (image.cols() == 0 || image.is_zero()) {
            dc.differential = Mat(next.cols(), dc.chains.cols());
        } else {
            auto coords = coordinates_in(next, image);
            if (!coords)
                throw std::domain_error("differential does not preserve the subcomplex in degree " + std::to_string(i));
            dc.differential = std::move(*coords);
        }
        dc.cocycles = kernel(dc.differential);
    }
    for (int i = 0; i <= top; ++i) {
        auto& dc = degrees[i];
        dc.coboundaries = (i == 0) ? Mat(dc.chains.cols(), 0) : column_basis(degrees[i - 1].differential);
        const auto e = echelon(hstack(dc.coboundaries, dc.cocycles));
        std::vector<std::size_t> picks;
        for (auto c : e.pivot_columns)
            if (c >= dc.coboundaries.cols())
                picks.push_back(c - dc.coboundaries.cols());
        if (e.rank() != dc.cocycles.cols())
            throw std::logic_error("coboundaries are not contained in the cocycles");
        dc.representatives = dc.cocycles.select_columns(picks);
        if (dc.representatives.cols() + dc.coboundaries.cols() != dc.cocycles.cols())
            throw std::logic_error("rank accounting failed in degree " + std::to_string(i));
        dc.representative_cochains = dc.chains * dc.representatives;
    }
    return CohomologyTable(space.ambient_dim, std::move(degrees));
}

/// Product of two classes, landing in `target`.  `wedge` is the bilinear
/// product on ambient cochains.
template <class Wedge>
CohomologyClass cup_product(const CohomologyTable& left, const CohomologyClass& a, const CohomologyTable& right,
                            const CohomologyClass& b, const CohomologyTable& target, Wedge&& wedge)
{
    const Vec x = left.representative(a);
    const Vec y = right.representative(b);
    const Vec xy = wedge(x, y);
    const int deg = a.degree + b.degree;
    auto c = target.try_classify(deg, xy);
    if (!c)
        throw std::domain_error("product of representatives does not lie in the target complex");
    return {deg, std::move(*c)};
}

} // namespace ihgysin
