#pragma once

// Worked automata used across the docs, demos and tests.

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "moga/automaton.hpp"
#include "moga/boolean.hpp"
#include "moga/closures.hpp"
#include "moga/monoid.hpp"

namespace moga::gallery {

struct RationalEntry {
    std::string id;
    GeneralizedAutomaton<Rational> automaton;
    Rational default_cut;
    bool stochastic;
    std::string notes;
};

struct FloatEntry {
    std::string id;
    GeneralizedAutomaton<Approx> automaton;
    Approx default_cut;
    std::string notes;
};

struct BooleanEntry {
    std::string id;
    BooleanMonoidalAutomaton automaton;
    std::string notes;
};

// Two-state acceptor whose value on a word is the base-m fraction
// 0.(digits reversed). Row-stochastic for every m >= 2.
inline RationalEntry m_adic(unsigned m) {
    if (m < 2) throw automaton_error("m-adic acceptor needs m >= 2");
    std::vector<std::string> names;
    for (unsigned d = 0; d < m; ++d) names.push_back(std::to_string(d));
    MonoidSpec spec = MonoidSpec::free_monoid(std::move(names));
    const Rational rm(static_cast<long>(m));
    std::vector<Matrix<Rational>> mats;
    for (unsigned d = 0; d < m; ++d) {
        const Rational x(static_cast<long>(d));
        mats.push_back(Matrix<Rational>{{Rational{1} - x / rm, x / rm},
                                        {Rational{1} - (x + Rational{1}) / rm, (x + Rational{1}) / rm}});
    }
    return {"m_adic",
            GeneralizedAutomaton<Rational>(std::move(spec), std::move(mats), RowVec<Rational>{1, 0},
                                           ColVec<Rational>{0, 1}),
            Rational(1, 2), true,
            "value of a digit word is the base-" + std::to_string(m) +
                " fraction with the digits reversed"};
}

// Plane rotation by 2*pi*phi per letter; the value of x^n is sin(2*pi*n*phi).
// Irrational entries, so this entry only exists on the float backend.
inline FloatEntry rotation(double phi) {
    const double theta = 2.0 * std::numbers::pi_v<double> * phi;
    Matrix<Approx> r{{std::cos(theta), std::sin(theta)}, {-std::sin(theta), std::cos(theta)}};
    return {"rotation",
            GeneralizedAutomaton<Approx>(MonoidSpec::free_monoid({"x"}), {std::move(r)},
                                         RowVec<Approx>{1, 0}, ColVec<Approx>{0, 1}),
            Approx{0.0}, "accepts x^n exactly when sin(2*pi*n*phi) is positive"};
}

// Over the free commutative monoid on {x,y}: the value of x^i y^j is i - j,
// so cut point 0 accepts the words with more x than y.
inline RationalEntry commutative_counter() {
    return {"commutative_counter",
            GeneralizedAutomaton<Rational>(
                MonoidSpec::free_commutative({"x", "y"}),
                {Matrix<Rational>{{1, 1}, {0, 1}}, Matrix<Rational>{{1, -1}, {0, 1}}},
                RowVec<Rational>{1, 0}, ColVec<Rational>{0, 1}),
            Rational{0}, false, "value of x^i y^j is i - j"};
}

// Two tapes: (x^i y^j, z^k) gets value i + j - k, so cut point 0 compares
// the first tape's length against the counter on the second tape.
inline RationalEntry two_tape_counter() {
    MonoidSpec spec =
        MonoidSpec::product(MonoidSpec::free_commutative({"x", "y"}), MonoidSpec::free_monoid({"z"}));
    return {"two_tape_counter",
            GeneralizedAutomaton<Rational>(
                std::move(spec),
                {Matrix<Rational>{{1, 1}, {0, 1}}, Matrix<Rational>{{1, 1}, {0, 1}},
                 Matrix<Rational>{{1, -1}, {0, 1}}},
                RowVec<Rational>{1, 0}, ColVec<Rational>{0, 1}),
            Rational{0}, false, "value of (x^i y^j, z^k) is i + j - k"};
}

// Two states flipping on y: accepts the words with an odd number of y.
inline BooleanEntry fig1_boolean() {
    return {"fig1_boolean",
            BooleanMonoidalAutomaton(MonoidSpec::free_monoid({"x", "y"}), 2, {0}, {1},
                                     {{0, Gen{0}, 0}, {0, Gen{1}, 1}, {1, Gen{0}, 1}, {1, Gen{1}, 0}}),
            "parity of y over the free monoid on {x,y}"};
}

// Kronecker product of the m-adic acceptor with a halving automaton: the
// value of (u, y^i) is (base-m fraction of u reversed) * (1 - 2^-i).
inline RationalEntry product_madic_halving(unsigned m) {
    RationalEntry left = m_adic(m);
    GeneralizedAutomaton<Rational> halving(
        MonoidSpec::free_monoid({"y"}),
        {Matrix<Rational>{{Rational(1, 2), Rational(1, 2)}, {0, 1}}}, RowVec<Rational>{1, 0},
        ColVec<Rational>{0, 1});
    auto prod = kronecker_product(left.automaton, Rational{0}, halving, Rational{0});
    return {"product_madic_halving", std::move(prod.automaton), prod.cut, true,
            "value of (u, y^i) is the reversed base-" + std::to_string(m) +
                " fraction of u times 1 - 2^-i"};
}

}  // namespace moga::gallery
