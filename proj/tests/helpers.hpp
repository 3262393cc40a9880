#pragma once

// Shared test utilities. The oracles here are deliberately independent of the
// library's evaluation path: the m-adic oracle works digit by digit, the
// boolean oracle searches labelled paths, the set oracles enumerate and
// compare memberships. Random fixtures are seeded, so failures reproduce.

#include <map>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "moga/boolean.hpp"
#include "moga/monoid.hpp"
#include "moga/scalar.hpp"

namespace testutil {

using moga::Gen;
using moga::Rational;
using moga::Word;

// Base-m fraction of the reversed digit string, one digit at a time: reading
// a digit pushes it in front of the fraction, val <- (val + d) / m.
inline Rational madic_oracle(unsigned m, const std::vector<unsigned>& digits) {
    Rational val{0};
    const Rational rm(static_cast<long>(m));
    for (unsigned d : digits) val = (val + Rational(static_cast<long>(d))) / rm;
    return val;
}

// Left divisibility in the supported specs, both words in normal form.
inline bool is_left_divisor(const moga::MonoidSpec& spec, const Word& w, const Word& goal) {
    using Kind = moga::MonoidSpec::Kind;
    switch (spec.kind()) {
        case Kind::free: {
            if (w.size() > goal.size()) return false;
            for (std::size_t i = 0; i < w.size(); ++i)
                if (w.syms[i] != goal.syms[i]) return false;
            return true;
        }
        case Kind::presented: {
            std::map<Gen, long> count;
            for (Gen g : goal.syms) ++count[g];
            for (Gen g : w.syms)
                if (--count[g] < 0) return false;
            return true;
        }
        case Kind::product: {
            const std::size_t nl = spec.left_generator_count();
            Word wl, wr, gl, gr;
            for (Gen g : w.syms) (g < nl ? wl : wr).syms.push_back(g < nl ? g : g - nl);
            for (Gen g : goal.syms) (g < nl ? gl : gr).syms.push_back(g < nl ? g : g - nl);
            return is_left_divisor(spec.left(), wl, gl) && is_left_divisor(spec.right(), wr, gr);
        }
    }
    return false;
}

// Independent membership oracle for boolean monoidal automata: search the
// labelled-path closure, tracking the monoid element spelled so far and
// pruning branches that are no longer left divisors of the goal.
inline bool boolean_oracle(const moga::BooleanMonoidalAutomaton& a, const Word& target) {
    const moga::MonoidSpec& spec = a.monoid();
    const Word goal = moga::normal_form(spec, target);
    std::set<std::pair<std::size_t, Word>> seen;
    std::vector<std::pair<std::size_t, Word>> stack;
    auto push = [&](std::size_t s, const Word& w) {
        if (seen.insert({s, w}).second) stack.push_back({s, w});
    };
    for (std::size_t s : a.initial()) push(s, Word{});
    const std::set<std::size_t> final_set(a.final_states().begin(), a.final_states().end());
    while (!stack.empty()) {
        auto [s, w] = stack.back();
        stack.pop_back();
        if (w == goal && final_set.count(s)) return true;
        for (const moga::BoolTransition& t : a.delta()) {
            if (t.from != s) continue;
            if (!t.label) {
                push(t.to, w);
            } else {
                Word next = w;
                next.syms.push_back(*t.label);
                next = moga::normal_form(spec, next);
                if (is_left_divisor(spec, next, goal)) push(t.to, next);
            }
        }
    }
    return false;
}

struct Rng {
    std::mt19937_64 eng;
    explicit Rng(std::uint64_t seed) : eng(seed) {}

    std::size_t below(std::size_t n) {
        return std::uniform_int_distribution<std::size_t>(0, n - 1)(eng);
    }

    long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(eng); }

    // Rational in [-2, 2] with a small denominator.
    Rational entry() {
        const long den = integer(1, 3);
        return Rational(integer(-2 * den, 2 * den), den);
    }

    // Non-negative rationals summing to 1.
    std::vector<Rational> distribution(std::size_t n) {
        std::vector<long> weights(n);
        long total = 0;
        for (long& w : weights) total += (w = integer(0, 6));
        std::vector<Rational> out(n, Rational{0});
        if (total == 0)
            out[below(n)] = Rational{1};
        else
            for (std::size_t i = 0; i < n; ++i) out[i] = Rational(weights[i], total);
        return out;
    }
};

inline std::vector<std::string> gen_names(std::size_t k) {
    const std::vector<std::string> pool = {"x", "y", "z", "w"};
    return {pool.begin(), pool.begin() + k};
}

// Random generalized automaton over a free spec: n in {1,2,3}, 1 or 2
// generators, all entries in [-2, 2].
inline moga::GeneralizedAutomaton<Rational> random_generalized(Rng& rng) {
    const std::size_t n = 1 + rng.below(3);
    const std::size_t gens = 1 + rng.below(2);
    std::vector<moga::Matrix<Rational>> mats;
    for (std::size_t g = 0; g < gens; ++g) {
        moga::Matrix<Rational> m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) m(i, j) = rng.entry();
        mats.push_back(std::move(m));
    }
    moga::RowVec<Rational> pi(n);
    moga::ColVec<Rational> f(n);
    for (std::size_t i = 0; i < n; ++i) {
        pi[i] = rng.entry();
        f[i] = rng.entry();
    }
    return moga::GeneralizedAutomaton<Rational>(moga::MonoidSpec::free_monoid(gen_names(gens)),
                                                std::move(mats), std::move(pi), std::move(f));
}

inline moga::StochasticAutomaton<Rational> random_stochastic(Rng& rng) {
    const std::size_t n = 1 + rng.below(3);
    const std::size_t gens = 1 + rng.below(2);
    std::vector<moga::Matrix<Rational>> mats;
    for (std::size_t g = 0; g < gens; ++g) {
        moga::Matrix<Rational> m(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            const auto row = rng.distribution(n);
            for (std::size_t j = 0; j < n; ++j) m(i, j) = row[j];
        }
        mats.push_back(std::move(m));
    }
    moga::RowVec<Rational> pi(rng.distribution(n));
    moga::ColVec<Rational> f(n);
    for (std::size_t i = 0; i < n; ++i) f[i] = Rational(rng.integer(0, 1));
    return moga::StochasticAutomaton<Rational>(moga::GeneralizedAutomaton<Rational>(
        moga::MonoidSpec::free_monoid(gen_names(gens)), std::move(mats), std::move(pi),
        std::move(f)));
}

// Random boolean monoidal automaton over a free or free-commutative spec.
// Over a presented spec the 0/1 embedding must satisfy the extension
// postulate for the matrix semantics to be defined at all, so commutative
// fixtures are rejection-sampled against the postulate.
inline moga::BooleanMonoidalAutomaton random_boolean(Rng& rng) {
    for (;;) {
        const std::size_t n = 1 + rng.below(4);
        const std::size_t gens = 1 + rng.below(2);
        const bool commutative = rng.below(2) == 1;
        moga::MonoidSpec spec = commutative
                                    ? moga::MonoidSpec::free_commutative(gen_names(gens))
                                    : moga::MonoidSpec::free_monoid(gen_names(gens));
        std::vector<moga::BoolTransition> delta;
        const std::size_t arcs = 1 + rng.below(2 * n);
        for (std::size_t i = 0; i < arcs; ++i) {
            std::optional<Gen> label;
            if (rng.below(5) != 0) label = static_cast<Gen>(rng.below(gens));
            delta.push_back({rng.below(n), label, rng.below(n)});
        }
        std::vector<std::size_t> initial{rng.below(n)};
        std::vector<std::size_t> final_states{rng.below(n)};
        moga::BooleanMonoidalAutomaton a(spec, n, std::move(initial), std::move(final_states),
                                         std::move(delta));
        if (!commutative) return a;
        const auto emb = moga::to_generalized<Rational>(a);
        if (moga::check_extension_postulate(emb.automaton).ok()) return a;
    }
}

// Membership sets as rendered words, for readable set-level comparisons.
template <typename Pred>
std::set<std::string> language_set(const moga::MonoidSpec& spec, std::size_t max_len, Pred accept) {
    std::set<std::string> out;
    for (const Word& w : moga::enumerate_words(spec, max_len))
        if (accept(w)) out.insert(moga::render_word(spec, w));
    return out;
}

}  // namespace testutil
