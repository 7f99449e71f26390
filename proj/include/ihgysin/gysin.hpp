#pragma once

// The invariant-forms complex IOmega_p(X) of a circle action, built from a base
// model, an Euler form and the characteristic perversity; its Gysin term, the
// short and long exact sequences and the Euler class.
//
// Pair cochains (a, b) live in the ambient space Pi + Pi, with coordinates
// [a | b].  A pair has degree |a| = |b| + 1.

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ihgysin/cdga.hpp"
#include "ihgysin/cohomology.hpp"
#include "ihgysin/perverse_forms.hpp"

namespace ihgysin {

/// Checks the standing hypotheses on an Euler form: closed, of degree 2, and
/// of perverse degree at most the Euler perversity.
inline ValidationReport validate_euler_form(const PerverseModel& base, const Vec& epsilon)
{
    ValidationReport r;
    if (epsilon.size() != base.dimension()) {
        r.add("epsilon_length", "epsilon has " + std::to_string(epsilon.size()) + " coordinates, basis has " +
                                    std::to_string(base.dimension()));
        return r;
    }
    for (int deg : base.support_degrees(epsilon))
        if (deg != 2)
            r.add("epsilon_degree", "epsilon has a component of degree " + std::to_string(deg));
    if (!is_zero_vector(base.differential(epsilon)))
        r.add("epsilon_not_closed", "d(epsilon) != 0");
    const Perversity e = euler_perversity(base.poset_ptr());
    if (!within_bound(base, epsilon, e))
        r.add("epsilon_perversity", "||epsilon|| exceeds the Euler perversity");
    if (!within_bound(base, base.differential(epsilon), e))
        r.add("epsilon_perversity", "||d epsilon|| exceeds the Euler perversity");
    return r;
}

class GysinModel {
public:
    /// Validates the base model and the Euler form; throws ValidationError.
    static GysinModel create(ModelPtr base, Vec epsilon)
    {
        if (!base)
            throw std::invalid_argument("GysinModel needs a base model");
        ValidationReport report = validate_model(*base);
        const ValidationReport eps = validate_euler_form(*base, epsilon);
        report.violations.insert(report.violations.end(), eps.violations.begin(), eps.violations.end());
        if (!report.ok())
            throw ValidationError(std::move(report));
        return GysinModel(std::move(base), std::move(epsilon));
    }

    const ModelPtr& base() const { return base_; }
    const Vec& epsilon() const { return epsilon_; }
    const Perversity& x() const { return x_; }
    const Perversity& e() const { return e_; }
    bool connected_normal() const { return base_->connected_normal(); }
    std::size_t base_dim() const { return base_->dimension(); }
    std::size_t pair_dim() const { return 2 * base_->dimension(); }
    const PosetPtr& poset() const { return base_->poset_ptr(); }

private:
    GysinModel(ModelPtr base, Vec epsilon)
        : base_(std::move(base)), epsilon_(std::move(epsilon)), x_(characteristic_perversity(base_->poset_ptr())),
          e_(euler_perversity(base_->poset_ptr()))
    {
    }

    ModelPtr base_;
    Vec epsilon_;
    Perversity x_;
    Perversity e_;
};

// ---------------------------------------------------------------------------
// Pair cochains

inline Vec pair_cochain(const Vec& alpha, const Vec& beta)
{
    Vec out = alpha;
    out.insert(out.end(), beta.begin(), beta.end());
    return out;
}

inline Vec first_component(const GysinModel& g, const Vec& pair)
{
    return Vec(pair.begin(), pair.begin() + static_cast<std::ptrdiff_t>(g.base_dim()));
}

inline Vec second_component(const GysinModel& g, const Vec& pair)
{
    return Vec(pair.begin() + static_cast<std::ptrdiff_t>(g.base_dim()), pair.end());
}

/// Matrix of v -> (-1)^{|v|} v ^ epsilon, extended linearly over homogeneous
/// basis elements.
inline Mat signed_euler_multiplication(const PerverseModel& base, const Vec& epsilon)
{
    const std::size_t n = base.dimension();
    Mat m(n, n);
    for (std::size_t j = 0; j < n; ++j)
        m.set_column(j, scale(Rational(parity_sign(base.degree(j))), base.wedge(base.basis_vector(j), epsilon)));
    return m;
}

/// D(a, b) = (da + (-1)^{|b|} b ^ eps, db) on the whole pair space.
inline Mat pair_differential(const GysinModel& g)
{
    const std::size_t n = g.base_dim();
    const Mat& d = g.base()->diff();
    const Mat twist = signed_euler_multiplication(*g.base(), g.epsilon());
    Mat out(2 * n, 2 * n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) {
            out(r, c) = d(r, c);
            out(r, n + c) = twist(r, c);
            out(n + r, n + c) = d(r, c);
        }
    return out;
}

/// (a, b) ^ (a', b') = (a ^ a', (-1)^{|a'|} b ^ a' + a ^ b').
inline Vec pair_wedge(const GysinModel& g, const Vec& x, const Vec& y)
{
    const auto& m = *g.base();
    const std::size_t n = m.dimension();
    const Vec a = first_component(g, x), b = second_component(g, x);
    const Vec a2 = first_component(g, y), b2 = second_component(g, y);
    Vec signed_a2 = a2;
    for (std::size_t j = 0; j < n; ++j)
        if (parity_sign(m.degree(j)) < 0)
            signed_a2[j] = -signed_a2[j];
    return pair_cochain(m.wedge(a, a2), add(m.wedge(b, signed_a2), m.wedge(a, b2)));
}

/// Degree of a pair basis vector: |b_j| for the first block, |b_j| + 1 for the second.
inline int pair_basis_degree(const GysinModel& g, std::size_t i)
{
    const std::size_t n = g.base_dim();
    return i < n ? g.base()->degree(i) : g.base()->degree(i - n) + 1;
}

// ---------------------------------------------------------------------------
// IOmega_p

struct IOmegaComplex {
    Perversity perversity;
    GradedSubspace space; // ambient = pair space, degrees 0..top+1

    Mat basis(int deg) const { return space.basis(deg); }
    std::size_t dimension(int deg) const { return space.dimension(deg); }
};

/// Basis of IOmega^i_p: pairs (a, b) with a in A_p of degree i, b in
/// Omega^{i-1}_{p-x}, and da + (-1)^{|b|} b ^ eps in A_p.
inline IOmegaComplex build_iomega(const GysinModel& g, const Perversity& p)
{
    const auto& m = *g.base();
    const std::size_t n = m.dimension();
    const auto in_p = bounded_mask(m, p);
    const PerverseSubcomplex fiber = extract_omega(g.base(), p - g.x());
    const Mat eps_right = m.right_multiplication(g.epsilon());

    std::vector<std::size_t> outside;
    for (std::size_t k = 0; k < n; ++k)
        if (!in_p[k])
            outside.push_back(k);

    IOmegaComplex out{p, {2 * n, {}}};
    for (int deg = 0; deg <= m.top_degree() + 1; ++deg) {
        std::vector<std::size_t> alpha_cols;
        for (auto j : m.indices_of_degree(deg))
            if (in_p[j])
                alpha_cols.push_back(j);
        const Mat beta_basis = fiber.basis(deg - 1);
        const Rational sign(parity_sign(deg - 1));
        const Mat lhs = hstack(m.diff().select_columns(alpha_cols), sign * (eps_right * beta_basis));
        const Mat sol = kernel(lhs.select_rows(outside));
        Mat pairs(2 * n, sol.cols());
        for (std::size_t c = 0; c < sol.cols(); ++c) {
            for (std::size_t r = 0; r < alpha_cols.size(); ++r)
                pairs(alpha_cols[r], c) = sol(r, c);
            for (std::size_t b = 0; b < beta_basis.cols(); ++b) {
                const Rational& coef = sol(alpha_cols.size() + b, c);
                if (coef == 0)
                    continue;
                for (std::size_t r = 0; r < n; ++r)
                    pairs(n + r, c) += coef * beta_basis(r, b);
            }
        }
        out.space.by_degree.push_back(std::move(pairs));
    }
    return out;
}

inline CohomologyTable ih_total(const GysinModel& g, const Perversity& p)
{
    return compute_cohomology(build_iomega(g, p).space, pair_differential(g));
}

// ---------------------------------------------------------------------------
// Gysin term

struct GysinTerm {
    Perversity perversity;
    GradedSubspace space; // ambient = base space, indexed by the degree of b
    CohomologyTable cohomology;

    Mat basis(int deg) const { return space.basis(deg); }
    std::size_t dimension(int deg) const { return space.dimension(deg); }
};

/// Image of the projection (a, b) -> b on IOmega_p, with differential d.
inline GysinTerm gysin_term_from(const GysinModel& g, const IOmegaComplex& iomega)
{
    const std::size_t n = g.base_dim();
    GysinTerm out{iomega.perversity, {n, {}}, {}};
    std::vector<std::size_t> second(n);
    for (std::size_t r = 0; r < n; ++r)
        second[r] = n + r;
    for (int deg = 0; deg <= g.base()->top_degree(); ++deg)
        out.space.by_degree.push_back(column_basis(iomega.basis(deg + 1).select_rows(second)));
    try {
        out.cohomology = compute_cohomology(out.space, g.base()->diff());
    } catch (const std::domain_error& e) {
        throw std::logic_error("Gysin term at p=" + iomega.perversity.to_string() +
                               " is not closed under d: " + e.what());
    }
    return out;
}

inline GysinTerm gysin_term(const GysinModel& g, const Perversity& p)
{
    return gysin_term_from(g, build_iomega(g, p));
}

/// Solutions a of the Gysin-term condition for a fixed b of degree k:
/// particular + span(homogeneous).
struct WitnessSpace {
    Vec particular;
    Mat homogeneous;
};

inline std::optional<WitnessSpace> witness_space(const GysinModel& g, const Perversity& p, const Vec& beta, int deg)
{
    const auto& m = *g.base();
    const std::size_t n = m.dimension();
    const auto in_p = bounded_mask(m, p);
    std::vector<std::size_t> alpha_cols;
    for (auto j : m.indices_of_degree(deg + 1))
        if (in_p[j])
            alpha_cols.push_back(j);
    std::vector<std::size_t> outside;
    for (std::size_t k = 0; k < n; ++k)
        if (!in_p[k])
            outside.push_back(k);
    const Mat lhs = m.diff().select_columns(alpha_cols).select_rows(outside);
    Vec rhs = scale(Rational(-parity_sign(deg)), m.wedge(beta, g.epsilon()));
    Vec rhs_out(outside.size());
    for (std::size_t i = 0; i < outside.size(); ++i)
        rhs_out[i] = rhs[outside[i]];
    const auto sol = solve(lhs, rhs_out);
    if (!sol)
        return std::nullopt;
    WitnessSpace ws{zero_vector(n), Mat(n, 0)};
    for (std::size_t r = 0; r < alpha_cols.size(); ++r)
        ws.particular[alpha_cols[r]] = (*sol)[r];
    const Mat hom = kernel(lhs);
    ws.homogeneous = Mat(n, hom.cols());
    for (std::size_t c = 0; c < hom.cols(); ++c)
        for (std::size_t r = 0; r < alpha_cols.size(); ++r)
            ws.homogeneous(alpha_cols[r], c) = hom(r, c);
    return ws;
}

namespace detail {
inline void require_in_fiber_complex(const GysinModel& g, const Perversity& p, const Vec& beta, int deg)
{
    const auto& m = *g.base();
    for (int d : m.support_degrees(beta))
        if (d != deg)
            throw std::domain_error("fiber cochain is not homogeneous of degree " + std::to_string(deg));
    const Perversity fiber = p - g.x();
    if (!within_bound(m, beta, fiber) || !within_bound(m, m.differential(beta), fiber))
        throw std::domain_error("fiber cochain is not in Omega_{p-x}");
}
} // namespace detail

/// eub[b] = [da + (-1)^{|b|} b ^ eps] computed with a caller-supplied witness a.
inline Vec connecting_cochain(const GysinModel& g, const Vec& beta, int deg, const Vec& alpha)
{
    const auto& m = *g.base();
    return add(m.differential(alpha), scale(Rational(parity_sign(deg)), m.wedge(beta, g.epsilon())));
}

inline CohomologyClass connecting_map_with_witness(const GysinModel& g, const Perversity& p, const Vec& beta,
                                                   int deg, const Vec& alpha, const CohomologyTable& base_ih)
{
    const auto& m = *g.base();
    detail::require_in_fiber_complex(g, p, beta, deg);
    if (!is_zero_vector(m.differential(beta)))
        throw std::domain_error("fiber cochain is not a cocycle");
    const Vec image = connecting_cochain(g, beta, deg, alpha);
    if (!within_bound(m, alpha, p) || !within_bound(m, image, p))
        throw std::domain_error("supplied witness violates the perverse bounds");
    return base_ih.classify(deg + 2, image);
}

/// Connecting map H^k(G_p) -> IH^{k+2}_p(B) using the least-index witness.
inline CohomologyClass connecting_map(const GysinModel& g, const Perversity& p, const GysinTerm& term,
                                      const CohomologyClass& cls, const CohomologyTable& base_ih)
{
    const Vec beta = term.cohomology.representative(cls);
    detail::require_in_fiber_complex(g, p, beta, cls.degree);
    const auto ws = witness_space(g, p, beta, cls.degree);
    if (!ws)
        throw std::domain_error("class is not in the Gysin term: no witness exists");
    return connecting_map_with_witness(g, p, beta, cls.degree, ws->particular, base_ih);
}

inline CohomologyClass connecting_map(const GysinModel& g, const Perversity& p, const CohomologyClass& cls)
{
    return connecting_map(g, p, gysin_term(g, p), cls, ih_base(g.base(), p));
}

// ---------------------------------------------------------------------------
// Memoized per-perversity views of one action

class GysinForms {
public:
    explicit GysinForms(GysinModel g) : model_(std::move(g)), base_(model_.base()), pair_d_(pair_differential(model_)) {}

    const GysinModel& model() const { return model_; }
    const BaseForms& base() const { return base_; }
    const Mat& pair_differential_matrix() const { return pair_d_; }

    std::shared_ptr<const IOmegaComplex> iomega(const Perversity& p) const
    {
        return iomega_.get(p, [&] { return build_iomega(model_, p); });
    }

    std::shared_ptr<const CohomologyTable> ih_total(const Perversity& p) const
    {
        return total_.get(p, [&] { return compute_cohomology(iomega(p)->space, pair_d_); });
    }

    std::shared_ptr<const GysinTerm> gysin(const Perversity& p) const
    {
        return gysin_.get(p, [&] { return gysin_term_from(model_, *iomega(p)); });
    }

private:
    GysinModel model_;
    BaseForms base_;
    Mat pair_d_;
    PerversityMemo<IOmegaComplex> iomega_;
    PerversityMemo<CohomologyTable> total_;
    PerversityMemo<GysinTerm> gysin_;
};

// ---------------------------------------------------------------------------
// Short exact sequence  0 -> Omega_p(B) -> IOmega_p(X) -> G_p^{*-1} -> 0

namespace detail {
inline bool same_span(const Mat& a, const Mat& b)
{
    const std::size_t ra = rank(a);
    return ra == rank(b) && ra == rank(hstack(a, b));
}
} // namespace detail

struct ShortExactDegree {
    int degree = 0;
    std::size_t omega = 0;  // dim Omega^i_p(B)
    std::size_t gysin = 0;  // dim G^{i-1}_p
    std::size_t iomega = 0; // dim IOmega^i_p
    bool rho_injective = false;
    bool oint_surjective = false;
    bool image_is_kernel = false;
    bool gysin_matches_definition = false;

    bool ok() const
    {
        return omega + gysin == iomega && rho_injective && oint_surjective && image_is_kernel &&
               gysin_matches_definition;
    }
};

struct ShortExactReport {
    Perversity perversity;
    std::vector<ShortExactDegree> degrees;

    bool ok() const
    {
        for (const auto& d : degrees)
            if (!d.ok())
                return false;
        return true;
    }
};

/// {b in Omega^k_{p-x} : exists a with the two perverse bounds}, computed
/// straight from the defining condition (left null space of the a-block).
inline Mat gysin_term_by_definition(const GysinModel& g, const Perversity& p, int deg)
{
    const auto& m = *g.base();
    const auto in_p = bounded_mask(m, p);
    const Mat fiber = constrained_subspace(m, deg, p - g.x(), p - g.x());
    std::vector<std::size_t> alpha_cols, outside;
    for (auto j : m.indices_of_degree(deg + 1))
        if (in_p[j])
            alpha_cols.push_back(j);
    for (std::size_t k = 0; k < m.dimension(); ++k)
        if (!in_p[k])
            outside.push_back(k);
    const Mat a_block = m.diff().select_columns(alpha_cols).select_rows(outside);
    const Mat b_block = (m.right_multiplication(g.epsilon()) * fiber).select_rows(outside);
    const Mat left_null = kernel(a_block.transpose()).transpose();
    const Mat coeffs = kernel(left_null * b_block);
    return fiber * coeffs;
}

inline ShortExactReport check_short_exact(const GysinModel& g, const Perversity& p)
{
    const std::size_t n = g.base_dim();
    const auto omega = extract_omega(g.base(), p);
    const auto iomega = build_iomega(g, p);
    const auto term = gysin_term_from(g, iomega);
    std::vector<std::size_t> first(n), second(n);
    for (std::size_t r = 0; r < n; ++r) {
        first[r] = r;
        second[r] = n + r;
    }
    ShortExactReport report{p, {}};
    for (int deg = 0; deg <= g.base()->top_degree() + 1; ++deg) {
        ShortExactDegree d;
        d.degree = deg;
        const Mat om = omega.basis(deg);
        const Mat io = iomega.basis(deg);
        const Mat gy = term.basis(deg - 1);
        d.omega = om.cols();
        d.iomega = io.cols();
        d.gysin = gy.cols();

        Mat rho(2 * n, om.cols());
        for (std::size_t c = 0; c < om.cols(); ++c)
            for (std::size_t r = 0; r < n; ++r)
                rho(r, c) = om(r, c);
        const auto rho_coords = coordinates_in(io, rho);
        d.rho_injective = rho_coords && rank(*rho_coords) == om.cols();

        const Mat proj = io.select_rows(second);
        const Mat by_def = deg >= 1 ? gysin_term_by_definition(g, p, deg - 1) : Mat(n, 0);
        d.gysin_matches_definition = detail::same_span(gy, by_def);
        d.oint_surjective = rank(proj) == by_def.cols() && detail::same_span(proj, by_def);

        const Mat ker_coords = kernel(proj);
        const Mat ker = io * ker_coords;
        d.image_is_kernel = detail::same_span(ker, rho);
        report.degrees.push_back(d);
    }
    return report;
}

// ---------------------------------------------------------------------------
// Long exact (Gysin) sequence

enum class SequenceGroup { base, total, gysin };

inline std::string_view to_string(SequenceGroup k)
{
    switch (k) {
    case SequenceGroup::base:
        return "IH(B)";
    case SequenceGroup::total:
        return "IH(X)";
    case SequenceGroup::gysin:
        return "H(G)";
    }
    return "?";
}

struct SequenceNode {
    SequenceGroup group = SequenceGroup::base;
    int degree = 0;
    std::size_t dimension = 0;
    std::size_t incoming_rank = 0;
    std::size_t outgoing_rank = 0;
    bool composite_zero = true;

    bool exact() const { return composite_zero && incoming_rank + outgoing_rank == dimension; }
};

/// A map from nodes[i] to nodes[i+1]: pi, oint or eub.
struct SequenceMap {
    std::string name;
    Mat matrix;
    std::size_t rank = 0;
};

struct GysinSequence {
    Perversity perversity;
    std::vector<SequenceNode> nodes;
    std::vector<SequenceMap> maps;

    bool exact() const
    {
        for (const auto& n : nodes)
            if (!n.exact())
                return false;
        return true;
    }
};

inline GysinSequence long_exact_sequence(const GysinForms& forms, const Perversity& p)
{
    const GysinModel& g = forms.model();
    const std::size_t n = g.base_dim();
    const auto base_ih = forms.base().ih(p);
    const auto total_ih = forms.ih_total(p);
    const auto term = forms.gysin(p);
    const auto& gysin_ih = term->cohomology;

    GysinSequence seq{p, {}, {}};
    const int last = g.base()->top_degree() + 2;
    for (int i = 0; i <= last; ++i) {
        seq.nodes.push_back({SequenceGroup::base, i, base_ih->dimension(i)});
        seq.nodes.push_back({SequenceGroup::total, i, total_ih->dimension(i)});
        seq.nodes.push_back({SequenceGroup::gysin, i - 1, gysin_ih.dimension(i - 1)});
    }
    for (std::size_t k = 0; k + 1 < seq.nodes.size(); ++k) {
        const auto& src = seq.nodes[k];
        const auto& dst = seq.nodes[k + 1];
        SequenceMap map;
        map.matrix = Mat(dst.dimension, src.dimension);
        for (std::size_t c = 0; c < src.dimension; ++c) {
            Vec image;
            switch (src.group) {
            case SequenceGroup::base: {
                map.name = "pi";
                const Vec a = base_ih->representative(base_ih->basis_class(src.degree, c));
                image = total_ih->classify(dst.degree, pair_cochain(a, zero_vector(n))).coords;
                break;
            }
            case SequenceGroup::total: {
                map.name = "oint";
                const Vec pair = total_ih->representative(total_ih->basis_class(src.degree, c));
                image = gysin_ih.classify(dst.degree, second_component(g, pair)).coords;
                break;
            }
            case SequenceGroup::gysin:
                map.name = "eub";
                image = connecting_map(g, p, *term, gysin_ih.basis_class(src.degree, c), *base_ih).coords;
                break;
            }
            map.matrix.set_column(c, image);
        }
        if (map.name.empty())
            map.name = src.group == SequenceGroup::base ? "pi" : src.group == SequenceGroup::total ? "oint" : "eub";
        map.rank = rank(map.matrix);
        seq.maps.push_back(std::move(map));
    }
    for (std::size_t k = 0; k < seq.nodes.size(); ++k) {
        auto& node = seq.nodes[k];
        node.incoming_rank = k > 0 ? seq.maps[k - 1].rank : 0;
        node.outgoing_rank = k < seq.maps.size() ? seq.maps[k].rank : 0;
        if (k > 0 && k < seq.maps.size())
            node.composite_zero = (seq.maps[k].matrix * seq.maps[k - 1].matrix).is_zero();
    }
    return seq;
}

inline GysinSequence long_exact_sequence(const GysinModel& g, const Perversity& p)
{
    return long_exact_sequence(GysinForms(g), p);
}

// ---------------------------------------------------------------------------
// Euler class and the H^0(G) lemma

struct EulerClass {
    Perversity perversity; // the Euler perversity e
    CohomologyClass cls;   // in IH^2_e(B)
    bool is_zero = true;
};

inline EulerClass euler_class(const GysinModel& g)
{
    const auto table = ih_base(g.base(), g.e());
    auto cls = table.classify(2, g.epsilon());
    const bool zero = cls.is_zero();
    return {g.e(), std::move(cls), zero};
}

struct LemmaGReport {
    enum class Status { pass, fail, not_applicable };
    Status status = Status::not_applicable;
    std::string reason;
    std::size_t h0_dimension = 0;
    bool constants_span = false;
    std::optional<CohomologyClass> eub_of_one;
    std::optional<CohomologyClass> euler_at_p;
};

inline std::string_view to_string(LemmaGReport::Status s)
{
    switch (s) {
    case LemmaGReport::Status::pass:
        return "PASS";
    case LemmaGReport::Status::fail:
        return "FAIL";
    case LemmaGReport::Status::not_applicable:
        return "NOT APPLICABLE";
    }
    return "?";
}

/// For p >= e on a connected normal space: H^0(G_p) is spanned by the class of
/// the constant 1 and eub_p(1) equals the Euler class.
inline LemmaGReport check_lemma_g(const GysinForms& forms, const Perversity& p)
{
    const GysinModel& g = forms.model();
    LemmaGReport r;
    if (!perversity_leq(g.e(), p)) {
        r.reason = "p does not dominate e";
        return r;
    }
    if (!g.connected_normal()) {
        r.reason = "model is not flagged connected and normal";
        return r;
    }
    const auto term = forms.gysin(p);
    const auto base_ih = forms.base().ih(p);
    r.h0_dimension = term->cohomology.dimension(0);
    const auto one = term->cohomology.try_classify(0, g.base()->unit_vector());
    r.constants_span = one && !is_zero_vector(*one) && r.h0_dimension == 1;
    if (!r.constants_span) {
        r.status = LemmaGReport::Status::fail;
        r.reason = one ? "H^0(G) is not spanned by the constants" : "1 is not a cocycle of the Gysin term";
        return r;
    }
    r.eub_of_one = connecting_map(g, p, *term, {0, *one}, *base_ih);
    r.euler_at_p = base_ih->classify(2, g.epsilon());
    const bool equal = *r.eub_of_one == *r.euler_at_p;
    r.status = equal ? LemmaGReport::Status::pass : LemmaGReport::Status::fail;
    if (!equal)
        r.reason = "eub(1) differs from the Euler class";
    return r;
}

inline LemmaGReport check_lemma_g(const GysinModel& g, const Perversity& p)
{
    return check_lemma_g(GysinForms(g), p);
}

} // namespace ihgysin
