#pragma once

// Normalization pipeline: generalized automaton with arbitrary cut point
// down to a stochastic acceptor, preserving the language on non-empty words
// at every stage and fixing the empty word at the end. Stages are exact and
// must be applied in order; each output is tagged so a stage can refuse
// anything but its declared predecessor.
//
// State bookkeeping for an n-state input:
//   zero_sum n+2, nonneg n+3, stochastic_cut0 n+5, distribution 2n+10,
//   acceptor (2n+10)^2, empty-word adjunction at most one more.

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "moga/automaton.hpp"
#include "moga/matrix.hpp"
#include "moga/monoid.hpp"

namespace moga {

enum class StageTag {
    rescaled,
    zero_sum,
    nonneg,
    stochastic_cut0,
    distribution,
    acceptor,
    empty_adjoined,
};

inline const char* stage_name(StageTag tag) {
    switch (tag) {
        case StageTag::rescaled: return "rescaled";
        case StageTag::zero_sum: return "zero_sum";
        case StageTag::nonneg: return "nonneg";
        case StageTag::stochastic_cut0: return "stochastic_cut0";
        case StageTag::distribution: return "distribution";
        case StageTag::acceptor: return "acceptor";
        case StageTag::empty_adjoined: return "empty_adjoined";
    }
    return "?";
}

template <ScalarBackend S>
struct StageConstants {
    std::optional<S> r, alpha, beta, big_r, t;
    std::vector<S> alpha_i;
};

template <ScalarBackend S>
struct PipelineStage {
    StageTag tag;
    GeneralizedAutomaton<S> automaton;
    S cut;
    StageConstants<S> constants;
};

namespace detail {
inline void require_stage(StageTag got, StageTag want) {
    if (got != want)
        throw automaton_error(std::string("stage expects a ") + stage_name(want) +
                              " predecessor, got " + stage_name(got));
}
}  // namespace detail

// Move a positive cut point: scaling the initial vector by lambda2/lambda
// scales every acceptance value by the same factor.
template <ScalarBackend S>
PipelineStage<S> rescale_cutpoint(const GeneralizedAutomaton<S>& a, const S& lambda,
                                  const S& lambda2) {
    if (!(S{0} < lambda) || !(S{0} < lambda2))
        throw automaton_error("cut point rescale needs strictly positive cut points");
    const S factor = lambda2 / lambda;
    RowVec<S> pi(a.states());
    for (std::size_t i = 0; i < a.states(); ++i) pi[i] = factor * a.initial()[i];
    return {StageTag::rescaled,
            GeneralizedAutomaton<S>(a.monoid(), a.matrices(), std::move(pi), a.final_vector()),
            lambda2,
            {}};
}

// Border every matrix so that all row and column sums vanish, without
// touching the values of non-empty words. New state 0 absorbs row sums,
// new last state absorbs column sums.
template <ScalarBackend S>
PipelineStage<S> zero_sum_form(const GeneralizedAutomaton<S>& a, const S& cut) {
    const std::size_t n = a.states();
    std::vector<Matrix<S>> mats;
    for (Gen g = 0; g < a.monoid().generator_count(); ++g) {
        const Matrix<S>& q = a.matrix(g);
        const ColVec<S> rsum = row_sums(q);
        const RowVec<S> csum = col_sums(q);
        Matrix<S> m(n + 2, n + 2);
        for (std::size_t i = 0; i < n; ++i) {
            m(i + 1, 0) = -rsum[i];
            for (std::size_t j = 0; j < n; ++j) m(i + 1, j + 1) = q(i, j);
        }
        m(n + 1, 0) = total_sum(q);
        for (std::size_t j = 0; j < n; ++j) m(n + 1, j + 1) = -csum[j];
        mats.push_back(std::move(m));
    }
    RowVec<S> pi(n + 2);
    ColVec<S> f(n + 2);
    for (std::size_t i = 0; i < n; ++i) {
        pi[i + 1] = a.initial()[i];
        f[i + 1] = a.final_vector()[i];
    }
    return {StageTag::zero_sum,
            GeneralizedAutomaton<S>(a.monoid(), std::move(mats), std::move(pi), std::move(f)),
            cut,
            {}};
}

// Shift all entries up by the constant matrix B_r into non-negative
// territory; one extra state with a bare m*r entry soaks the shift back out
// of the values, paid for by the alpha/m mass on the initial vector against
// the -1 on the final vector.
template <ScalarBackend S>
PipelineStage<S> nonneg_form(const PipelineStage<S>& stage) {
    detail::require_stage(stage.tag, StageTag::zero_sum);
    const GeneralizedAutomaton<S>& a = stage.automaton;
    const std::size_t m = a.states();
    S r{0};
    for (const Matrix<S>& q : a.matrices())
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j)
                if (-q(i, j) > r) r = -q(i, j);
    const S alpha = a.initial().sum() * a.final_vector().sum();

    std::vector<Matrix<S>> mats;
    for (const Matrix<S>& q : a.matrices()) {
        Matrix<S> out(m + 1, m + 1);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j) out(i, j) = q(i, j) + r;
        out(m, m) = S(static_cast<long>(m)) * r;
        mats.push_back(std::move(out));
    }
    RowVec<S> pi(m + 1);
    for (std::size_t i = 0; i < m; ++i) pi[i] = a.initial()[i];
    pi[m] = alpha / S(static_cast<long>(m));
    ColVec<S> f(m + 1);
    for (std::size_t i = 0; i < m; ++i) f[i] = a.final_vector()[i];
    f[m] = S{-1};

    StageConstants<S> constants;
    constants.r = r;
    constants.alpha = alpha;
    return {StageTag::nonneg,
            GeneralizedAutomaton<S>(a.monoid(), std::move(mats), std::move(pi), std::move(f)),
            stage.cut,
            std::move(constants)};
}

// Scale by 1/beta and complete every row to sum one with a filler column;
// two extra states carry the cut point into the initial vector, moving the
// cut to 0. The result is genuinely stochastic in the matrix part.
template <ScalarBackend S>
PipelineStage<S> stochastic_cut0_form(const PipelineStage<S>& stage) {
    detail::require_stage(stage.tag, StageTag::nonneg);
    const GeneralizedAutomaton<S>& a = stage.automaton;
    const std::size_t m = a.states();
    S max_row_sum{0};
    for (const Matrix<S>& q : a.matrices()) {
        const ColVec<S> rsum = row_sums(q);
        for (std::size_t i = 0; i < m; ++i)
            if (rsum[i] > max_row_sum) max_row_sum = rsum[i];
    }
    const S beta = max_row_sum + S{1};
    const S inv_beta = S{1} / beta;

    std::vector<Matrix<S>> mats;
    for (const Matrix<S>& q : a.matrices()) {
        Matrix<S> out(m + 2, m + 2);
        for (std::size_t i = 0; i < m; ++i) {
            S rsum{0};
            for (std::size_t j = 0; j < m; ++j) {
                out(i, j) = inv_beta * q(i, j);
                rsum += out(i, j);
            }
            out(i, m + 1) = S{1} - rsum;
        }
        out(m, m) = inv_beta;
        out(m, m + 1) = S{1} - inv_beta;
        out(m + 1, m + 1) = S{1};
        if (!is_row_stochastic(out)) throw automaton_error("filler rows failed to normalize");
        mats.push_back(std::move(out));
    }
    RowVec<S> pi(m + 2);
    for (std::size_t i = 0; i < m; ++i) pi[i] = a.initial()[i];
    pi[m] = stage.cut;
    ColVec<S> f(m + 2);
    for (std::size_t i = 0; i < m; ++i) f[i] = a.final_vector()[i];
    f[m] = S{-1};

    StageConstants<S> constants;
    constants.beta = beta;
    return {StageTag::stochastic_cut0,
            GeneralizedAutomaton<S>(a.monoid(), std::move(mats), std::move(pi), std::move(f)),
            S{0},
            std::move(constants)};
}

// Double the automaton and shift both vectors into positive territory. The
// initial vector becomes a genuine distribution; acceptance values move up
// by exactly t, so the cut point becomes t.
template <ScalarBackend S>
PipelineStage<S> distribution_form(const PipelineStage<S>& stage) {
    detail::require_stage(stage.tag, StageTag::stochastic_cut0);
    const GeneralizedAutomaton<S>& a = stage.automaton;
    const std::size_t m = a.states();

    S max_neg_pi{0};
    for (std::size_t i = 0; i < m; ++i)
        if (-a.initial()[i] > max_neg_pi) max_neg_pi = -a.initial()[i];
    const S r{least_integer_above(max_neg_pi)};

    S max_abs_f{0};
    for (std::size_t i = 0; i < m; ++i)
        if (abs(a.final_vector()[i]) > max_abs_f) max_abs_f = abs(a.final_vector()[i]);
    const S t{least_integer_above(max_abs_f)};

    S big_r = a.initial().sum() + S{2} * S(static_cast<long>(m)) * r;

    std::vector<Matrix<S>> mats;
    for (const Matrix<S>& q : a.matrices()) {
        Matrix<S> out(2 * m, 2 * m);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j) {
                out(i, j) = q(i, j);
                out(m + i, m + j) = q(i, j);
            }
        mats.push_back(std::move(out));
    }
    RowVec<S> pi(2 * m);
    for (std::size_t i = 0; i < m; ++i) {
        pi[i] = (a.initial()[i] + r) / big_r;
        pi[m + i] = r / big_r;
    }
    ColVec<S> f(2 * m);
    for (std::size_t i = 0; i < m; ++i) {
        f[i] = a.final_vector()[i] + t;
        f[m + i] = -a.final_vector()[i] + t;
    }

    StageConstants<S> constants;
    constants.r = r;
    constants.big_r = big_r;
    constants.t = t;
    return {StageTag::distribution,
            GeneralizedAutomaton<S>(a.monoid(), std::move(mats), std::move(pi), std::move(f)),
            t,
            std::move(constants)};
}

// Fold the positive final vector into the matrices: k copies of the state
// set, every block row identical with block columns weighted by
// alpha_j = f_j / alpha. The final vector becomes an indicator, the cut
// point divides by alpha, and the whole thing is a stochastic acceptor.
template <ScalarBackend S>
PipelineStage<S> acceptor_form(const PipelineStage<S>& stage) {
    detail::require_stage(stage.tag, StageTag::distribution);
    const GeneralizedAutomaton<S>& a = stage.automaton;
    const std::size_t k = a.states();
    const S alpha = a.final_vector().sum();
    if (!(S{0} < alpha)) throw automaton_error("acceptor stage needs a positive final vector");
    std::vector<S> alpha_i(k);
    for (std::size_t i = 0; i < k; ++i) alpha_i[i] = a.final_vector()[i] / alpha;

    std::vector<Matrix<S>> mats;
    for (const Matrix<S>& q : a.matrices()) {
        Matrix<S> out(k * k, k * k);
        for (std::size_t c = 0; c < k; ++c) {
            // block column c is alpha_c * q in every block row
            for (std::size_t i = 0; i < k; ++i)
                for (std::size_t j = 0; j < k; ++j) {
                    const S val = alpha_i[c] * q(i, j);
                    for (std::size_t b = 0; b < k; ++b) out(b * k + i, c * k + j) = val;
                }
        }
        mats.push_back(std::move(out));
    }
    const S inv_k = S{1} / S(static_cast<long>(k));
    RowVec<S> pi(k * k);
    for (std::size_t b = 0; b < k; ++b)
        for (std::size_t i = 0; i < k; ++i) pi[b * k + i] = inv_k * a.initial()[i];
    ColVec<S> f(k * k);
    for (std::size_t i = 0; i < k; ++i) f[i * k + i] = S{1};

    StageConstants<S> constants;
    constants.alpha = alpha;
    constants.alpha_i = std::move(alpha_i);
    return {StageTag::acceptor,
            GeneralizedAutomaton<S>(a.monoid(), std::move(mats), std::move(pi), std::move(f)),
            stage.cut / alpha,
            std::move(constants)};
}

template <ScalarBackend S>
struct StochasticWithCut {
    StochasticAutomaton<S> automaton;
    S cut;
};

// Last step: fix membership of the empty word without disturbing anything
// else. Cut point 1 with the empty word wanted collapses to the two-state
// automaton of the language {empty}.
template <ScalarBackend S>
StochasticWithCut<S> adjoin_empty_word(const StochasticAutomaton<S>& a, const S& cut,
                                       bool want_epsilon) {
    require_cut_in_unit_interval(cut);
    if (!want_epsilon) return {a, cut};
    const GeneralizedAutomaton<S>& base = a.base();
    if (cut == S{1}) {
        const std::size_t gens = base.monoid().generator_count();
        std::vector<Matrix<S>> mats(gens, Matrix<S>{{S{0}, S{1}}, {S{0}, S{1}}});
        return {StochasticAutomaton<S>(GeneralizedAutomaton<S>(
                    base.monoid(), std::move(mats), RowVec<S>{1, 0}, ColVec<S>{1, 0})),
                S{0}};
    }
    const std::size_t n = base.states();
    std::vector<Matrix<S>> mats;
    for (const Matrix<S>& q : base.matrices()) {
        Matrix<S> out(n + 1, n + 1);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) out(i, j) = q(i, j);
        const RowVec<S> bottom = base.initial() * q;
        for (std::size_t j = 0; j < n; ++j) out(n, j) = bottom[j];
        mats.push_back(std::move(out));
    }
    RowVec<S> pi(n + 1);
    pi[n] = S{1};
    ColVec<S> f(n + 1);
    for (std::size_t i = 0; i < n; ++i) f[i] = base.final_vector()[i];
    f[n] = S{1};
    return {StochasticAutomaton<S>(
                GeneralizedAutomaton<S>(base.monoid(), std::move(mats), std::move(pi), std::move(f))),
            cut};
}

template <ScalarBackend S>
struct PipelineResult {
    StochasticAutomaton<S> automaton;
    S cut;
    bool epsilon_adjoined;
    std::map<std::string, std::string> provenance;
};

template <ScalarBackend S>
PipelineResult<S> full_pipeline(const GeneralizedAutomaton<S>& a, const S& cut) {
    const bool want_epsilon = a.initial() * a.final_vector() > cut;
    PipelineStage<S> s1 = zero_sum_form(a, cut);
    PipelineStage<S> s2 = nonneg_form(s1);
    PipelineStage<S> s3 = stochastic_cut0_form(s2);
    PipelineStage<S> s4 = distribution_form(s3);
    PipelineStage<S> s5 = acceptor_form(s4);
    StochasticWithCut<S> last =
        adjoin_empty_word(StochasticAutomaton<S>(s5.automaton), s5.cut, want_epsilon);

    std::map<std::string, std::string> prov;
    prov["nonneg.r"] = s2.constants.r->str();
    prov["nonneg.alpha"] = s2.constants.alpha->str();
    prov["stochastic_cut0.beta"] = s3.constants.beta->str();
    prov["distribution.r"] = s4.constants.r->str();
    prov["distribution.R"] = s4.constants.big_r->str();
    prov["distribution.t"] = s4.constants.t->str();
    prov["acceptor.alpha"] = s5.constants.alpha->str();
    return {std::move(last.automaton), last.cut, want_epsilon, std::move(prov)};
}

template <ScalarBackend S>
struct MatrixFamily {
    MonoidSpec monoid;
    std::vector<Matrix<S>> matrices;
};

template <ScalarBackend S>
struct GeneralizedWithCut {
    GeneralizedAutomaton<S> automaton;
    S cut;
};

// A matrix family accepts through its top-right corner: membership is
// "corner of Q(u) positive", realized by unit initial/final vectors and cut
// point 0. The family must satisfy the extension postulate to define a
// language at all.
template <ScalarBackend S>
GeneralizedWithCut<S> from_matrix_family(const MatrixFamily<S>& family) {
    if (family.matrices.size() != family.monoid.generator_count())
        throw automaton_error("need exactly one matrix per generator");
    std::size_t n = 0;
    for (const Matrix<S>& m : family.matrices) {
        if (!m.square()) throw automaton_error("family matrix is not square: " + m.shape_str());
        if (n == 0) n = m.rows();
        if (m.rows() != n) throw automaton_error("family matrices have mixed dimensions");
    }
    if (n == 0) throw automaton_error("empty matrix family needs an explicit dimension");
    RowVec<S> pi(n);
    pi[0] = S{1};
    ColVec<S> f(n);
    f[n - 1] = S{1};
    GeneralizedAutomaton<S> a(family.monoid, family.matrices, std::move(pi), std::move(f));
    const PostulateReport<S> report = check_extension_postulate(a);
    if (!report.ok()) {
        const Relation& rel = report.violations.front().relation;
        throw automaton_error("matrix family violates the extension postulate on " +
                              render_word(family.monoid, rel.lhs) + " = " +
                              render_word(family.monoid, rel.rhs));
    }
    return {std::move(a), S{0}};
}

// Converse direction: bordered (n+2)-dimensional family whose top-right
// corner reproduces the acceptance values. A non-zero cut point is first
// moved to 0 through the zero_sum/nonneg/stochastic_cut0 chain.
template <ScalarBackend S>
MatrixFamily<S> to_matrix_family(const StochasticAutomaton<S>& a, const S& cut) {
    require_cut_in_unit_interval(cut);
    GeneralizedAutomaton<S> base = a.base();
    if (!(cut == S{0})) {
        PipelineStage<S> s3 = stochastic_cut0_form(nonneg_form(zero_sum_form(base, cut)));
        base = s3.automaton;
    }
    const std::size_t m = base.states();
    std::vector<Matrix<S>> mats;
    for (Gen g = 0; g < base.monoid().generator_count(); ++g) {
        const Matrix<S>& q = base.matrix(g);
        const RowVec<S> top = base.initial() * q;
        const ColVec<S> right = q * base.final_vector();
        Matrix<S> out(m + 2, m + 2);
        for (std::size_t j = 0; j < m; ++j) out(0, j + 1) = top[j];
        out(0, m + 1) = top * base.final_vector();
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t j = 0; j < m; ++j) out(i + 1, j + 1) = q(i, j);
            out(i + 1, m + 1) = right[i];
        }
        mats.push_back(std::move(out));
    }
    return {base.monoid(), std::move(mats)};
}

}  // namespace moga
