#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <set>
#include <string>
#include <variant>

#include "helpers.hpp"
#include "moga/closures.hpp"
#include "moga/gallery.hpp"

using moga::BooleanMonoidalAutomaton;
using moga::BoolTransition;
using moga::DeterministicMonoidalAcceptor;
using moga::Gen;
using moga::GeneralizedAutomaton;
using moga::MonoidSpec;
using moga::Rational;
using moga::SetOp;
using moga::StochasticAutomaton;
using moga::Word;

namespace {

// over the binary digit alphabet: words ending in digit 1
DeterministicMonoidalAcceptor ends_in_one() {
    const MonoidSpec spec = MonoidSpec::free_monoid({"0", "1"});
    return DeterministicMonoidalAcceptor(BooleanMonoidalAutomaton(
        spec, 2, {0}, {1}, {{0, Gen{0}, 0}, {0, Gen{1}, 1}, {1, Gen{0}, 0}, {1, Gen{1}, 1}}));
}

std::set<std::string> lang_set(const GeneralizedAutomaton<Rational>& a, const Rational& cut,
                               std::size_t max_len) {
    std::set<std::string> out;
    for (const Word& w : enumerate_language(a, cut, max_len))
        out.insert(render_word(a.monoid(), w));
    return out;
}

}  // namespace

TEST_CASE("deterministic acceptors insist on total single-valued transitions") {
    const MonoidSpec spec = MonoidSpec::free_monoid({"x"});
    CHECK_THROWS_WITH(
        DeterministicMonoidalAcceptor(
            BooleanMonoidalAutomaton(spec, 2, {0, 1}, {0}, {{0, Gen{0}, 0}, {1, Gen{0}, 0}})),
        Catch::Matchers::ContainsSubstring("one initial"));
    CHECK_THROWS_WITH(
        DeterministicMonoidalAcceptor(BooleanMonoidalAutomaton(
            spec, 2, {0}, {0}, {{0, Gen{0}, 0}, {0, std::nullopt, 1}, {1, Gen{0}, 1}})),
        Catch::Matchers::ContainsSubstring("identity"));
    CHECK_THROWS_WITH(
        DeterministicMonoidalAcceptor(BooleanMonoidalAutomaton(
            spec, 2, {0}, {0}, {{0, Gen{0}, 0}, {0, Gen{0}, 1}, {1, Gen{0}, 1}})),
        Catch::Matchers::ContainsSubstring("two transitions"));
    CHECK_THROWS_WITH(DeterministicMonoidalAcceptor(
                          BooleanMonoidalAutomaton(spec, 2, {0}, {0}, {{0, Gen{0}, 0}})),
                      Catch::Matchers::ContainsSubstring("no transition"));

    const auto dfa = ends_in_one();
    CHECK(dfa.run(Word{0, 1}));
    CHECK_FALSE(dfa.run(Word{1, 0}));
    CHECK_FALSE(dfa.run(Word{}));
    const auto co = dfa.complemented();
    for (const Word& w : moga::enumerate_words(dfa.monoid(), 4))
        REQUIRE(co.run(w) == !dfa.run(w));
}

TEST_CASE("subset construction matches the nondeterministic language") {
    const MonoidSpec spec = MonoidSpec::free_monoid({"x", "y"});
    // nondeterministic with an identity step: words containing xy
    const BooleanMonoidalAutomaton nfa(spec, 4, {0}, {3},
                                       {{0, Gen{0}, 0},
                                        {0, Gen{1}, 0},
                                        {0, Gen{0}, 1},
                                        {1, std::nullopt, 2},
                                        {2, Gen{1}, 3},
                                        {3, Gen{0}, 3},
                                        {3, Gen{1}, 3}});
    const DeterministicMonoidalAcceptor dfa = determinize(nfa);
    for (const Word& w : moga::enumerate_words(spec, 5))
        REQUIRE(dfa.run(w) == testutil::boolean_oracle(nfa, w));

    const BooleanMonoidalAutomaton fc_nfa(MonoidSpec::free_commutative({"x", "y"}), 1, {0}, {0},
                                          {{0, Gen{0}, 0}});
    CHECK_THROWS_WITH(determinize(fc_nfa), Catch::Matchers::ContainsSubstring("free"));
}

TEST_CASE("boolean combinations with a regular language") {
    const auto entry = moga::gallery::m_adic(2);
    const StochasticAutomaton<Rational> a(entry.automaton);
    const Rational cut{1, 2};
    const auto dfa = ends_in_one();

    auto expected = [&](SetOp op) {
        std::set<std::string> out;
        for (const Word& w : moga::enumerate_words(a.base().monoid(), 4)) {
            const bool in_a = accepts(a.base(), cut, w);
            const bool in_r = dfa.run(w);
            const bool keep = op == SetOp::union_with   ? in_a || in_r
                              : op == SetOp::intersect_with ? in_a && in_r
                                                            : in_a && !in_r;
            if (keep) out.insert(render_word(a.base().monoid(), w));
        }
        return out;
    };

    SECTION("union halves the cut point") {
        const auto got = combine_with_regular(a, cut, dfa, SetOp::union_with);
        CHECK(got.cut == Rational{1, 4});
        CHECK(lang_set(got.automaton.base(), got.cut, 4) == expected(SetOp::union_with));
    }
    SECTION("intersection shifts the cut point up") {
        const auto got = combine_with_regular(a, cut, dfa, SetOp::intersect_with);
        CHECK(got.cut == Rational{3, 4});
        CHECK(lang_set(got.automaton.base(), got.cut, 4) == expected(SetOp::intersect_with));
    }
    SECTION("difference runs against the complemented operand") {
        const auto got = combine_with_regular(a, cut, dfa, SetOp::subtract);
        CHECK(lang_set(got.automaton.base(), got.cut, 4) == expected(SetOp::subtract));
    }
    SECTION("union at cut point one degenerates to the operand") {
        const auto got = combine_with_regular(a, Rational{1}, dfa, SetOp::union_with);
        CHECK(got.cut == Rational{0});
        std::set<std::string> regular;
        for (const Word& w : moga::enumerate_words(a.base().monoid(), 4))
            if (dfa.run(w)) regular.insert(render_word(a.base().monoid(), w));
        CHECK(lang_set(got.automaton.base(), got.cut, 4) == regular);
    }
    SECTION("operands must share the monoid spec") {
        const MonoidSpec other = MonoidSpec::free_monoid({"x"});
        const DeterministicMonoidalAcceptor wrong(
            BooleanMonoidalAutomaton(other, 1, {0}, {0}, {{0, Gen{0}, 0}}));
        CHECK_THROWS_WITH(combine_with_regular(a, cut, wrong, SetOp::union_with),
                          Catch::Matchers::ContainsSubstring("different monoid"));
    }
}

TEST_CASE("complementing at an isolated cut point negates the language") {
    const auto entry = moga::gallery::m_adic(2);
    const StochasticAutomaton<Rational> a(entry.automaton);
    const Rational cut{1, 3};

    // values are dyadic, so the distance to 1/3 is at least 1/(3*2^6) at length 6
    const auto verdict = check_isolation(a.base(), cut, Rational{1, 192}, 6);
    REQUIRE(std::holds_alternative<moga::IsolationGap<Rational>>(verdict));
    const auto gap = std::get<moga::IsolationGap<Rational>>(verdict);
    CHECK(gap.verified_to_length == 6);

    const auto comp = complement_isolated(a, cut, gap);
    CHECK(comp.cut == Rational{2, 3});
    std::set<std::string> expected;
    for (const Word& w : moga::enumerate_words(a.base().monoid(), 6))
        if (!accepts(a.base(), cut, w)) expected.insert(render_word(a.base().monoid(), w));
    CHECK(lang_set(comp.automaton.base(), comp.cut, 6) == expected);

    CHECK_THROWS_WITH(complement_isolated(a, cut, moga::IsolationGap<Rational>{Rational{0}, 6}),
                      Catch::Matchers::ContainsSubstring("positive gap"));
}

TEST_CASE("mirror reverses every word") {
    const auto entry = moga::gallery::m_adic(2);
    const auto mir = mirror(entry.automaton, Rational{1, 2});
    for (const Word& w : moga::enumerate_words(entry.automaton.monoid(), 5)) {
        Word rev = w;
        std::reverse(rev.syms.begin(), rev.syms.end());
        REQUIRE(acceptance_value(mir.automaton, w) == acceptance_value(entry.automaton, rev));
    }
}

TEST_CASE("tape swap re-tags the product generators") {
    const auto entry = moga::gallery::two_tape_counter();
    const auto inv = inverse_relation_generalized(entry.automaton, entry.default_cut);
    CHECK(inv.automaton.monoid().generator_names() ==
          std::vector<std::string>{"(z,e)", "(e,x)", "(e,y)"});
    // original tags: (x,e)=0, (y,e)=1, (e,z)=2; swapped tags: x->1, y->2, z->0
    CHECK(acceptance_value(inv.automaton, Word{1, 2, 0}) ==
          acceptance_value(entry.automaton, Word{0, 1, 2}));
    CHECK(acceptance_value(inv.automaton, Word{1, 1, 0}) ==
          acceptance_value(entry.automaton, Word{0, 0, 2}));

    CHECK_THROWS_WITH(
        inverse_relation_generalized(moga::gallery::m_adic(2).automaton, Rational{0}),
        Catch::Matchers::ContainsSubstring("product"));
}

TEST_CASE("Kronecker products multiply values and cut points") {
    const auto left = moga::gallery::m_adic(2);
    const auto right = moga::gallery::m_adic(3);
    const auto prod =
        kronecker_product(left.automaton, Rational{1, 2}, right.automaton, Rational{1, 3});
    CHECK(prod.cut == Rational{1, 6});
    CHECK(prod.automaton.monoid().kind() == MonoidSpec::Kind::product);

    // interleavings collapse: value of (u, v) is value(u) * value(v)
    const Word u{1, 0, 1};  // left digits
    Word pair;
    pair.syms = {1, 0, 1};           // left tags coincide with left generators
    pair.syms.push_back(2 + 0);     // right digit 0
    pair.syms.push_back(2 + 2);     // right digit 2
    CHECK(acceptance_value(prod.automaton, pair) ==
          acceptance_value(left.automaton, u) * acceptance_value(right.automaton, Word{0, 2}));

    SECTION("negative entries are refused with a pointer to the culprit") {
        const MonoidSpec spec = MonoidSpec::free_monoid({"x"});
        const GeneralizedAutomaton<Rational> neg(
            spec, {moga::Matrix<Rational>{{Rational{1}, Rational{-1}}, {Rational{0}, Rational{1}}}},
            moga::RowVec<Rational>{1, 0}, moga::ColVec<Rational>{0, 1});
        CHECK_THROWS_WITH(kronecker_product(neg, Rational{0}, right.automaton, Rational{0}),
                          Catch::Matchers::ContainsSubstring("(0,1)") &&
                              Catch::Matchers::ContainsSubstring("negative"));
        CHECK_THROWS_WITH(kronecker_product(left.automaton, Rational{-1}, right.automaton,
                                            Rational{0}),
                          Catch::Matchers::ContainsSubstring("non-negative cut"));
    }
}
