#pragma once

// Closure constructions on cut-point languages: combination with a regular
// (deterministic boolean) operand, complement under a verified isolation
// gap, mirror, tape swap, and the Kronecker product of two non-negative
// automata.

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "moga/automaton.hpp"
#include "moga/boolean.hpp"
#include "moga/matrix.hpp"
#include "moga/monoid.hpp"
#include "moga/turakainen.hpp"

namespace moga {

// Deterministic complete acceptor: one initial state, no identity labels,
// exactly one outgoing transition per state and generator. Its 0/1 matrix
// embedding has exactly one 1 per row, so acceptance values are 0/1 and it
// can ride along inside a stochastic automaton.
class DeterministicMonoidalAcceptor {
  public:
    explicit DeterministicMonoidalAcceptor(BooleanMonoidalAutomaton a) : base_(std::move(a)) {
        if (base_.initial().size() != 1)
            throw automaton_error("deterministic acceptor needs exactly one initial state");
        if (base_.has_epsilon())
            throw automaton_error("deterministic acceptor cannot have identity labels");
        const std::size_t n = base_.states();
        const std::size_t g = base_.monoid().generator_count();
        step_.assign(n * g, n);
        for (const BoolTransition& t : base_.delta()) {
            std::size_t& slot = step_[t.from * g + *t.label];
            if (slot != n)
                throw automaton_error("state " + std::to_string(t.from) +
                                      " has two transitions on " +
                                      base_.monoid().generator_name(*t.label));
            slot = t.to;
        }
        for (std::size_t s = 0; s < n; ++s)
            for (Gen x = 0; x < g; ++x)
                if (step_[s * g + x] == n)
                    throw automaton_error("state " + std::to_string(s) + " has no transition on " +
                                          base_.monoid().generator_name(x));
    }

    const BooleanMonoidalAutomaton& base() const { return base_; }
    const MonoidSpec& monoid() const { return base_.monoid(); }

    std::size_t step(std::size_t state, Gen g) const {
        return step_[state * base_.monoid().generator_count() + g];
    }

    bool run(const Word& u) const {
        check_word(monoid(), u);
        std::size_t s = base_.initial().front();
        for (Gen g : u.syms) s = step(s, g);
        for (std::size_t f : base_.final_states())
            if (f == s) return true;
        return false;
    }

    DeterministicMonoidalAcceptor complemented() const {
        std::vector<std::size_t> flipped;
        std::set<std::size_t> final_set(base_.final_states().begin(), base_.final_states().end());
        for (std::size_t s = 0; s < base_.states(); ++s)
            if (!final_set.count(s)) flipped.push_back(s);
        return DeterministicMonoidalAcceptor(BooleanMonoidalAutomaton(
            base_.monoid(), base_.states(), base_.initial(), std::move(flipped), base_.delta()));
    }

  private:
    BooleanMonoidalAutomaton base_;
    std::vector<std::size_t> step_;  // state * gens + gen -> target
};

// Subset construction; free monoid specs only (over a presented spec the
// subset automaton would not respect the relations).
inline DeterministicMonoidalAcceptor determinize(const BooleanMonoidalAutomaton& a) {
    if (a.monoid().kind() != MonoidSpec::Kind::free)
        throw automaton_error("determinization is only available over free specs");
    const BooleanMonoidalAutomaton base = a.has_epsilon() ? eliminate_epsilon(a) : a;
    const std::size_t g = base.monoid().generator_count();

    std::vector<std::vector<std::size_t>> subsets;
    std::map<std::vector<std::size_t>, std::size_t> index;
    auto intern = [&](std::vector<std::size_t> subset) {
        auto [it, fresh] = index.try_emplace(subset, subsets.size());
        if (fresh) subsets.push_back(std::move(subset));
        return it->second;
    };

    const std::size_t start = intern(base.initial());
    std::vector<BoolTransition> delta;
    for (std::size_t cur = 0; cur < subsets.size(); ++cur) {
        for (Gen x = 0; x < g; ++x) {
            std::set<std::size_t> next;
            for (std::size_t s : subsets[cur])
                for (const BoolTransition& t : base.delta())
                    if (t.from == s && t.label && *t.label == x) next.insert(t.to);
            const std::size_t to = intern(std::vector<std::size_t>(next.begin(), next.end()));
            delta.push_back({cur, x, to});
        }
    }
    std::vector<std::size_t> final_states;
    const std::set<std::size_t> final_set(base.final_states().begin(), base.final_states().end());
    for (std::size_t i = 0; i < subsets.size(); ++i)
        for (std::size_t s : subsets[i])
            if (final_set.count(s)) {
                final_states.push_back(i);
                break;
            }
    return DeterministicMonoidalAcceptor(BooleanMonoidalAutomaton(
        base.monoid(), subsets.size(), {start}, std::move(final_states), std::move(delta)));
}

enum class SetOp { union_with, intersect_with, subtract };

// Run the stochastic automaton and the deterministic operand side by side
// with half the weight each. Values land at v/2 + r/2 with r in {0,1}, so
// cut/2 separates the union and (cut+1)/2 the intersection; difference is
// intersection with the complemented operand. Union against cut point 1 is
// degenerate (the cut-point language is empty) and returns the operand's
// language on its own.
template <ScalarBackend S>
StochasticWithCut<S> combine_with_regular(const StochasticAutomaton<S>& a, const S& cut,
                                          const DeterministicMonoidalAcceptor& r, SetOp op) {
    require_cut_in_unit_interval(cut);
    if (!(a.base().monoid() == r.monoid()))
        throw automaton_error("operands live over different monoid specs");
    const DeterministicMonoidalAcceptor operand =
        op == SetOp::subtract ? r.complemented() : r;
    const auto emb = to_generalized<S>(operand.base());

    if (op == SetOp::union_with && cut == S{1})
        return {StochasticAutomaton<S>(emb.automaton), S{0}};

    const GeneralizedAutomaton<S>& left = a.base();
    const GeneralizedAutomaton<S>& right = emb.automaton;
    const std::size_t n = left.states(), m = right.states();
    std::vector<Matrix<S>> mats;
    for (Gen g = 0; g < left.monoid().generator_count(); ++g) {
        Matrix<S> out(n + m, n + m);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) out(i, j) = left.matrix(g)(i, j);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j) out(n + i, n + j) = right.matrix(g)(i, j);
        mats.push_back(std::move(out));
    }
    const S half = S{1} / S{2};
    RowVec<S> pi(n + m);
    for (std::size_t i = 0; i < n; ++i) pi[i] = half * left.initial()[i];
    for (std::size_t i = 0; i < m; ++i) pi[n + i] = half * right.initial()[i];
    ColVec<S> f(n + m);
    for (std::size_t i = 0; i < n; ++i) f[i] = left.final_vector()[i];
    for (std::size_t i = 0; i < m; ++i) f[n + i] = right.final_vector()[i];

    const S new_cut = op == SetOp::union_with ? half * cut : half * (cut + S{1});
    return {StochasticAutomaton<S>(GeneralizedAutomaton<S>(left.monoid(), std::move(mats),
                                                           std::move(pi), std::move(f))),
            new_cut};
}

// Complement of a stochastic cut-point language, valid exactly when the cut
// point is isolated: flipping the 0/1 final vector sends values v to 1-v, so
// v < cut becomes 1-v > 1-cut, and isolation rules out v = cut. The gap
// witness from check_isolation is required up front.
template <ScalarBackend S>
StochasticWithCut<S> complement_isolated(const StochasticAutomaton<S>& a, const S& cut,
                                         const IsolationGap<S>& gap) {
    require_cut_in_unit_interval(cut);
    if (!(S{0} < gap.delta))
        throw automaton_error("complement needs an isolation witness with positive gap");
    const GeneralizedAutomaton<S>& base = a.base();
    ColVec<S> f(base.states());
    for (std::size_t i = 0; i < base.states(); ++i) f[i] = S{1} - base.final_vector()[i];
    return {StochasticAutomaton<S>(GeneralizedAutomaton<S>(base.monoid(), base.matrices(),
                                                           base.initial(), std::move(f))),
            S{1} - cut};
}

// Mirror language: transpose every matrix and swap the border vectors. The
// result is generalized even when the input is stochastic.
template <ScalarBackend S>
GeneralizedWithCut<S> mirror(const GeneralizedAutomaton<S>& a, const S& cut) {
    std::vector<Matrix<S>> mats;
    for (const Matrix<S>& q : a.matrices()) mats.push_back(transpose(q));
    return {GeneralizedAutomaton<S>(a.monoid(), std::move(mats), transpose(a.final_vector()),
                                    transpose(a.initial())),
            cut};
}

// Tape swap for an automaton over a product spec: same matrices, re-tagged
// generators over the swapped product.
template <ScalarBackend S>
GeneralizedWithCut<S> inverse_relation_generalized(const GeneralizedAutomaton<S>& a, const S& cut) {
    const MonoidSpec& spec = a.monoid();
    if (spec.kind() != MonoidSpec::Kind::product)
        throw automaton_error("inverse relation needs a product spec");
    MonoidSpec swapped = MonoidSpec::product(spec.right(), spec.left());
    const std::size_t nl = spec.left_generator_count();
    const std::size_t nr = spec.generator_count() - nl;
    std::vector<Matrix<S>> mats(spec.generator_count(), Matrix<S>());
    for (Gen g = 0; g < spec.generator_count(); ++g) {
        const Gen swapped_gen = g < nl ? g + nr : g - nl;
        mats[swapped_gen] = a.matrix(g);
    }
    return {GeneralizedAutomaton<S>(std::move(swapped), std::move(mats), a.initial(),
                                    a.final_vector()),
            cut};
}

// Kronecker product automaton over the product spec; acceptance values
// multiply, so the cut points multiply as well. Only sound with everything
// non-negative, which is checked up front.
template <ScalarBackend S>
GeneralizedWithCut<S> kronecker_product(const GeneralizedAutomaton<S>& a, const S& cut_a,
                                        const GeneralizedAutomaton<S>& b, const S& cut_b) {
    auto check_nonneg = [](const GeneralizedAutomaton<S>& x, const char* which) {
        for (Gen g = 0; g < x.monoid().generator_count(); ++g)
            for (std::size_t i = 0; i < x.states(); ++i)
                for (std::size_t j = 0; j < x.states(); ++j)
                    if (x.matrix(g)(i, j) < S{0})
                        throw automaton_error(std::string(which) + " operand: matrix " +
                                              x.monoid().generator_name(g) + " entry (" +
                                              std::to_string(i) + "," + std::to_string(j) + ") = " +
                                              x.matrix(g)(i, j).str() + " is negative");
        for (std::size_t i = 0; i < x.states(); ++i) {
            if (x.initial()[i] < S{0})
                throw automaton_error(std::string(which) + " operand: initial entry " +
                                      std::to_string(i) + " is negative");
            if (x.final_vector()[i] < S{0})
                throw automaton_error(std::string(which) + " operand: final entry " +
                                      std::to_string(i) + " is negative");
        }
    };
    check_nonneg(a, "left");
    check_nonneg(b, "right");
    if (cut_a < S{0} || cut_b < S{0})
        throw automaton_error("Kronecker product needs non-negative cut points");

    MonoidSpec spec = MonoidSpec::product(a.monoid(), b.monoid());
    const Matrix<S> id_a = Matrix<S>::identity(a.states());
    const Matrix<S> id_b = Matrix<S>::identity(b.states());
    std::vector<Matrix<S>> mats;
    for (Gen g = 0; g < a.monoid().generator_count(); ++g)
        mats.push_back(kronecker(a.matrix(g), id_b));
    for (Gen g = 0; g < b.monoid().generator_count(); ++g)
        mats.push_back(kronecker(id_a, b.matrix(g)));
    return {GeneralizedAutomaton<S>(std::move(spec), std::move(mats),
                                    kronecker(a.initial(), b.initial()),
                                    kronecker(a.final_vector(), b.final_vector())),
            cut_a * cut_b};
}

}  // namespace moga
