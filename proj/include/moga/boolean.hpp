#pragma once

// Boolean (transition-relation) automata over a monoid spec. Labels are
// single generators or the identity; richer labels are expressed by chains
// of states. Acceptance goes through the 0/1 matrix embedding with cut
// point 0, which matches the reachability semantics whenever the embedded
// matrices satisfy the extension postulate (free specs always do).

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "moga/automaton.hpp"
#include "moga/matrix.hpp"
#include "moga/monoid.hpp"

namespace moga {

struct BoolTransition {
    std::size_t from;
    std::optional<Gen> label;  // nullopt = identity step
    std::size_t to;

    friend bool operator==(const BoolTransition&, const BoolTransition&) = default;
    friend auto operator<=>(const BoolTransition&, const BoolTransition&) = default;
};

class BooleanMonoidalAutomaton {
  public:
    BooleanMonoidalAutomaton(MonoidSpec monoid, std::size_t states, std::vector<std::size_t> initial,
                             std::vector<std::size_t> final_states, std::vector<BoolTransition> delta)
        : monoid_(std::move(monoid)),
          states_(states),
          initial_(std::move(initial)),
          final_(std::move(final_states)),
          delta_(std::move(delta)) {
        if (states_ == 0) throw automaton_error("boolean automaton needs at least one state");
        for (std::size_t s : initial_) check_state(s);
        for (std::size_t s : final_) check_state(s);
        for (const BoolTransition& t : delta_) {
            check_state(t.from);
            check_state(t.to);
            if (t.label && *t.label >= monoid_.generator_count())
                throw automaton_error("transition label out of range");
        }
        sort_unique(initial_);
        sort_unique(final_);
        std::sort(delta_.begin(), delta_.end());
        delta_.erase(std::unique(delta_.begin(), delta_.end()), delta_.end());
    }

    const MonoidSpec& monoid() const { return monoid_; }
    std::size_t states() const { return states_; }
    const std::vector<std::size_t>& initial() const { return initial_; }
    const std::vector<std::size_t>& final_states() const { return final_; }
    const std::vector<BoolTransition>& delta() const { return delta_; }

    bool has_epsilon() const {
        for (const BoolTransition& t : delta_)
            if (!t.label) return true;
        return false;
    }

  private:
    void check_state(std::size_t s) const {
        if (s >= states_) throw automaton_error("state index out of range");
    }
    static void sort_unique(std::vector<std::size_t>& v) {
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
    }

    MonoidSpec monoid_;
    std::size_t states_;
    std::vector<std::size_t> initial_, final_;
    std::vector<BoolTransition> delta_;
};

inline std::vector<std::size_t> eps_closure(const BooleanMonoidalAutomaton& a,
                                            const std::vector<std::size_t>& from) {
    std::vector<bool> in(a.states(), false);
    std::vector<std::size_t> stack = from, out;
    for (std::size_t s : from) in[s] = true;
    while (!stack.empty()) {
        const std::size_t s = stack.back();
        stack.pop_back();
        out.push_back(s);
        for (const BoolTransition& t : a.delta())
            if (!t.label && t.from == s && !in[t.to]) {
                in[t.to] = true;
                stack.push_back(t.to);
            }
    }
    std::sort(out.begin(), out.end());
    return out;
}

// Identity-step elimination: fold the closure into the outgoing labelled
// transitions and into the final set. Language-preserving, same state count.
inline BooleanMonoidalAutomaton eliminate_epsilon(const BooleanMonoidalAutomaton& a) {
    std::vector<BoolTransition> delta;
    const std::set<std::size_t> orig_final(a.final_states().begin(), a.final_states().end());
    std::set<std::size_t> final_set = orig_final;
    for (std::size_t s = 0; s < a.states(); ++s) {
        const auto closure = eps_closure(a, {s});
        for (std::size_t c : closure) {
            if (orig_final.count(c)) final_set.insert(s);
            for (const BoolTransition& t : a.delta())
                if (t.label && t.from == c) delta.push_back({s, t.label, t.to});
        }
    }
    return BooleanMonoidalAutomaton(a.monoid(), a.states(), a.initial(),
                                    std::vector<std::size_t>(final_set.begin(), final_set.end()),
                                    std::move(delta));
}

template <ScalarBackend S>
struct BooleanEmbedding {
    GeneralizedAutomaton<S> automaton;
    S cut;  // always 0
};

// 0/1 matrix embedding: q^(x)_{ij} = 1 iff (s_i, x, s_j) is a transition,
// initial/final vectors from I and F. Identity labels are eliminated first.
template <ScalarBackend S>
BooleanEmbedding<S> to_generalized(const BooleanMonoidalAutomaton& a) {
    const BooleanMonoidalAutomaton base = a.has_epsilon() ? eliminate_epsilon(a) : a;
    const std::size_t n = base.states();
    std::vector<Matrix<S>> mats(base.monoid().generator_count(), Matrix<S>(n, n));
    for (const BoolTransition& t : base.delta()) mats[*t.label](t.from, t.to) = S{1};
    RowVec<S> pi(n);
    for (std::size_t s : base.initial()) pi[s] = S{1};
    ColVec<S> f(n);
    for (std::size_t s : base.final_states()) f[s] = S{1};
    return {GeneralizedAutomaton<S>(base.monoid(), std::move(mats), std::move(pi), std::move(f)),
            S{0}};
}

inline bool accepts_boolean(const BooleanMonoidalAutomaton& a, const Word& u) {
    const auto emb = to_generalized<Rational>(a);
    return accepts(emb.automaton, emb.cut, u);
}

template <class Pred>
std::vector<Word> filter_words(const MonoidSpec& spec, std::size_t max_len, Pred pred) {
    std::vector<Word> out;
    for (Word& w : enumerate_words(spec, max_len))
        if (pred(w)) out.push_back(std::move(w));
    return out;
}

inline std::vector<Word> enumerate_boolean_language(const BooleanMonoidalAutomaton& a,
                                                    std::size_t max_len) {
    const auto emb = to_generalized<Rational>(a);
    return enumerate_language(emb.automaton, emb.cut, max_len);
}

// Relabel every transition through the map: one-generator images stay single
// transitions, empty images become identity steps, longer images unroll into
// chains of fresh states. Only plain (non-anti) maps make sense here.
inline BooleanMonoidalAutomaton homomorphic_image(const BooleanMonoidalAutomaton& a,
                                                  const MonoidMap& phi) {
    if (!(phi.source() == a.monoid())) throw automaton_error("map source does not match automaton");
    if (phi.anti()) throw automaton_error("anti maps do not act on transition labels");
    std::size_t states = a.states();
    std::vector<BoolTransition> delta;
    for (const BoolTransition& t : a.delta()) {
        if (!t.label) {
            delta.push_back(t);
            continue;
        }
        const Word& img = phi.image(*t.label);
        if (img.empty()) {
            delta.push_back({t.from, std::nullopt, t.to});
        } else if (img.size() == 1) {
            delta.push_back({t.from, img.syms[0], t.to});
        } else {
            std::size_t prev = t.from;
            for (std::size_t i = 0; i + 1 < img.size(); ++i) {
                const std::size_t mid = states++;
                delta.push_back({prev, img.syms[i], mid});
                prev = mid;
            }
            delta.push_back({prev, img.syms.back(), t.to});
        }
    }
    return BooleanMonoidalAutomaton(phi.target(), states, a.initial(), a.final_states(),
                                    std::move(delta));
}

inline void require_same_monoid(const BooleanMonoidalAutomaton& a,
                                const BooleanMonoidalAutomaton& b) {
    if (!(a.monoid() == b.monoid()))
        throw automaton_error("operands live over different monoid specs");
}

inline BooleanMonoidalAutomaton union_boolean(const BooleanMonoidalAutomaton& a,
                                              const BooleanMonoidalAutomaton& b) {
    require_same_monoid(a, b);
    const std::size_t off = a.states();
    std::vector<std::size_t> initial = a.initial(), final_states = a.final_states();
    for (std::size_t s : b.initial()) initial.push_back(s + off);
    for (std::size_t s : b.final_states()) final_states.push_back(s + off);
    std::vector<BoolTransition> delta = a.delta();
    for (const BoolTransition& t : b.delta()) delta.push_back({t.from + off, t.label, t.to + off});
    return BooleanMonoidalAutomaton(a.monoid(), a.states() + b.states(), std::move(initial),
                                    std::move(final_states), std::move(delta));
}

inline BooleanMonoidalAutomaton concat_boolean(const BooleanMonoidalAutomaton& a,
                                               const BooleanMonoidalAutomaton& b) {
    require_same_monoid(a, b);
    const std::size_t off = a.states();
    std::vector<std::size_t> final_states;
    for (std::size_t s : b.final_states()) final_states.push_back(s + off);
    std::vector<BoolTransition> delta = a.delta();
    for (const BoolTransition& t : b.delta()) delta.push_back({t.from + off, t.label, t.to + off});
    for (std::size_t f : a.final_states())
        for (std::size_t i : b.initial()) delta.push_back({f, std::nullopt, i + off});
    return BooleanMonoidalAutomaton(a.monoid(), a.states() + b.states(), a.initial(),
                                    std::move(final_states), std::move(delta));
}

inline BooleanMonoidalAutomaton star_boolean(const BooleanMonoidalAutomaton& a) {
    const std::size_t hub = a.states();
    std::vector<BoolTransition> delta = a.delta();
    for (std::size_t i : a.initial()) delta.push_back({hub, std::nullopt, i});
    for (std::size_t f : a.final_states()) delta.push_back({f, std::nullopt, hub});
    return BooleanMonoidalAutomaton(a.monoid(), a.states() + 1, {hub}, {hub}, std::move(delta));
}

// Swap the two tape components: labels (x,e) <-> (e,x) over the swapped
// product spec.
inline BooleanMonoidalAutomaton inverse_relation(const BooleanMonoidalAutomaton& a) {
    const MonoidSpec& spec = a.monoid();
    if (spec.kind() != MonoidSpec::Kind::product)
        throw automaton_error("inverse relation needs a product spec");
    MonoidSpec swapped = MonoidSpec::product(spec.right(), spec.left());
    const std::size_t nl = spec.left_generator_count();
    const std::size_t nr = spec.generator_count() - nl;
    std::vector<BoolTransition> delta;
    for (const BoolTransition& t : a.delta()) {
        std::optional<Gen> label = t.label;
        if (label) label = *label < nl ? *label + nr : *label - nl;
        delta.push_back({t.from, label, t.to});
    }
    return BooleanMonoidalAutomaton(std::move(swapped), a.states(), a.initial(), a.final_states(),
                                    std::move(delta));
}

// Keep the first tape: (x,e) labels turn into x, (e,y) labels into identity
// steps.
inline BooleanMonoidalAutomaton project_first(const BooleanMonoidalAutomaton& a) {
    const MonoidSpec& spec = a.monoid();
    if (spec.kind() != MonoidSpec::Kind::product)
        throw automaton_error("projection needs a product spec");
    const std::size_t nl = spec.left_generator_count();
    std::vector<BoolTransition> delta;
    for (const BoolTransition& t : a.delta()) {
        std::optional<Gen> label;
        if (t.label && *t.label < nl) label = *t.label;
        delta.push_back({t.from, label, t.to});
    }
    return BooleanMonoidalAutomaton(spec.left(), a.states(), a.initial(), a.final_states(),
                                    std::move(delta));
}

// Synchronous product over the product spec. Each factor is padded with
// identity self-steps so runs of unequal length can be paired; a paired step
// with two generator labels needs an intermediate state because product
// generators touch one component at a time.
inline BooleanMonoidalAutomaton cartesian_product_boolean(const BooleanMonoidalAutomaton& a,
                                                          const BooleanMonoidalAutomaton& b) {
    MonoidSpec spec = MonoidSpec::product(a.monoid(), b.monoid());
    const std::size_t nl = a.monoid().generator_count();
    const std::size_t nb = b.states();
    auto pair_state = [nb](std::size_t sa, std::size_t sb) { return sa * nb + sb; };
    std::size_t states = a.states() * b.states();

    std::vector<BoolTransition> padded_a = a.delta(), padded_b = b.delta();
    for (std::size_t s = 0; s < a.states(); ++s) padded_a.push_back({s, std::nullopt, s});
    for (std::size_t s = 0; s < b.states(); ++s) padded_b.push_back({s, std::nullopt, s});

    std::vector<BoolTransition> delta;
    for (const BoolTransition& ta : padded_a)
        for (const BoolTransition& tb : padded_b) {
            const bool idle_a = !ta.label && ta.from == ta.to;
            const bool idle_b = !tb.label && tb.from == tb.to;
            if (idle_a && idle_b) continue;
            std::optional<Gen> first, second;
            if (ta.label) first = *ta.label;
            if (tb.label) second = *tb.label + nl;
            const std::size_t from = pair_state(ta.from, tb.from);
            const std::size_t to = pair_state(ta.to, tb.to);
            if (first && second) {
                const std::size_t mid = states++;
                delta.push_back({from, first, mid});
                delta.push_back({mid, second, to});
            } else {
                delta.push_back({from, first ? first : second, to});
            }
        }

    std::vector<std::size_t> initial, final_states;
    for (std::size_t ia : a.initial())
        for (std::size_t ib : b.initial()) initial.push_back(pair_state(ia, ib));
    for (std::size_t fa : a.final_states())
        for (std::size_t fb : b.final_states()) final_states.push_back(pair_state(fa, fb));
    return BooleanMonoidalAutomaton(std::move(spec), states, std::move(initial),
                                    std::move(final_states), std::move(delta));
}

}  // namespace moga
