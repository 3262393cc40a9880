#include <catch2/catch_amalgamated.hpp>

#include <cstddef>
#include <set>
#include <string>
#include <vector>

#include "helpers.hpp"
#include "moga/gallery.hpp"
#include "moga/turakainen.hpp"

using moga::GeneralizedAutomaton;
using moga::PipelineStage;
using moga::Rational;
using moga::StageTag;
using moga::Word;

namespace {

Rational pow_rat(const Rational& base, std::size_t e) {
    Rational out{1};
    for (std::size_t i = 0; i < e; ++i) out = out * base;
    return out;
}

std::set<std::string> cut_language(const GeneralizedAutomaton<Rational>& a, const Rational& cut,
                                   std::size_t max_len) {
    std::set<std::string> out;
    for (const Word& w : enumerate_language(a, cut, max_len))
        out.insert(render_word(a.monoid(), w));
    return out;
}

}  // namespace

TEST_CASE("stage chain bookkeeping: tags, cuts and state counts") {
    testutil::Rng rng(4177);
    const GeneralizedAutomaton<Rational> a = testutil::random_generalized(rng);
    const std::size_t n = a.states();
    const Rational cut{1, 3};

    const PipelineStage<Rational> s1 = zero_sum_form(a, cut);
    CHECK(s1.tag == StageTag::zero_sum);
    CHECK(s1.automaton.states() == n + 2);
    CHECK(s1.cut == cut);

    const PipelineStage<Rational> s2 = nonneg_form(s1);
    CHECK(s2.tag == StageTag::nonneg);
    CHECK(s2.automaton.states() == n + 3);
    CHECK(s2.cut == cut);
    for (const auto& m : s2.automaton.matrices())
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < m.cols(); ++j) REQUIRE(!(m(i, j) < Rational{0}));

    const PipelineStage<Rational> s3 = stochastic_cut0_form(s2);
    CHECK(s3.tag == StageTag::stochastic_cut0);
    CHECK(s3.automaton.states() == n + 5);
    CHECK(s3.cut == Rational{0});
    for (const auto& m : s3.automaton.matrices()) CHECK(is_row_stochastic(m));

    const PipelineStage<Rational> s4 = distribution_form(s3);
    CHECK(s4.tag == StageTag::distribution);
    CHECK(s4.automaton.states() == 2 * n + 10);
    CHECK(s4.cut == *s4.constants.t);
    CHECK(s4.automaton.initial().sum() == Rational{1});

    const PipelineStage<Rational> s5 = acceptor_form(s4);
    CHECK(s5.tag == StageTag::acceptor);
    CHECK(s5.automaton.states() == (2 * n + 10) * (2 * n + 10));
    CHECK(s5.cut == Rational{1, static_cast<long>(2 * n + 10)});
    CHECK(moga::validate_stochastic(s5.automaton).ok());

    CHECK(std::string(stage_name(StageTag::zero_sum)) == "zero_sum");
    CHECK(std::string(stage_name(StageTag::acceptor)) == "acceptor");
}

TEST_CASE("each stage transforms acceptance values by its affine law") {
    testutil::Rng rng(99251);
    for (int round = 0; round < 8; ++round) {
        const GeneralizedAutomaton<Rational> a = testutil::random_generalized(rng);
        const Rational cut(rng.integer(-2, 2), rng.integer(1, 3));

        const PipelineStage<Rational> s1 = zero_sum_form(a, cut);
        const PipelineStage<Rational> s2 = nonneg_form(s1);
        const PipelineStage<Rational> s3 = stochastic_cut0_form(s2);
        const PipelineStage<Rational> s4 = distribution_form(s3);
        const PipelineStage<Rational> s5 = acceptor_form(s4);
        const Rational beta = *s3.constants.beta;
        const Rational big_r = *s4.constants.big_r;
        const Rational t = *s4.constants.t;
        const Rational alpha = *s5.constants.alpha;

        for (const Word& u : moga::enumerate_words(a.monoid(), 3)) {
            const Rational v0 = acceptance_value(a, u);
            const Rational v1 = acceptance_value(s1.automaton, u);
            const Rational v2 = acceptance_value(s2.automaton, u);
            const Rational v3 = acceptance_value(s3.automaton, u);
            const Rational v4 = acceptance_value(s4.automaton, u);
            const Rational v5 = acceptance_value(s5.automaton, u);

            REQUIRE(v1 == v0);
            if (!u.empty()) REQUIRE(v2 == v1);
            REQUIRE(v3 * pow_rat(beta, u.size()) == v2 - cut);
            REQUIRE(v4 == v3 / big_r + t);
            if (!u.empty()) REQUIRE(v5 * alpha == v4);

            // cuts follow the same laws, so membership of non-empty words survives
            if (!u.empty()) {
                const bool in = v0 > cut;
                REQUIRE((v2 > s2.cut) == in);
                REQUIRE((v3 > s3.cut) == in);
                REQUIRE((v4 > s4.cut) == in);
                REQUIRE((v5 > s5.cut) == in);
            }
        }
    }
}

TEST_CASE("full pipeline lands on a stochastic automaton with the same language") {
    testutil::Rng rng(5150);
    for (int round = 0; round < 6; ++round) {
        const GeneralizedAutomaton<Rational> a = testutil::random_generalized(rng);
        const Rational cut(rng.integer(-2, 2), rng.integer(1, 3));
        const auto res = moga::full_pipeline(a, cut);

        CHECK(moga::validate_stochastic(res.automaton.base()).ok());
        CHECK(!(res.cut < Rational{0}));
        CHECK(!(Rational{1} < res.cut));
        const std::size_t bound = (2 * a.states() + 10) * (2 * a.states() + 10) + 1;
        CHECK(res.automaton.base().states() <= bound);
        CHECK(res.epsilon_adjoined == (acceptance_value(a, Word{}) > cut));

        CHECK(cut_language(res.automaton.base(), res.cut, 3) == cut_language(a, cut, 3));
    }
}

TEST_CASE("pipeline provenance lists every stage constant") {
    const auto entry = moga::gallery::commutative_counter();
    const auto res = moga::full_pipeline(entry.automaton, entry.default_cut);
    const std::vector<std::string> keys = {"nonneg.r",        "nonneg.alpha", "stochastic_cut0.beta",
                                           "distribution.r",  "distribution.R", "distribution.t",
                                           "acceptor.alpha"};
    CHECK(res.provenance.size() == keys.size());
    for (const auto& k : keys) CHECK(res.provenance.count(k) == 1);
}

TEST_CASE("pipeline output is deterministic") {
    testutil::Rng rng1(777), rng2(777);
    const GeneralizedAutomaton<Rational> a = testutil::random_generalized(rng1);
    const GeneralizedAutomaton<Rational> b = testutil::random_generalized(rng2);
    const auto ra = moga::full_pipeline(a, Rational{1, 2});
    const auto rb = moga::full_pipeline(b, Rational{1, 2});
    CHECK(ra.cut == rb.cut);
    REQUIRE(ra.automaton.base().matrices().size() == rb.automaton.base().matrices().size());
    for (std::size_t g = 0; g < ra.automaton.base().matrices().size(); ++g)
        CHECK(ra.automaton.base().matrix(g) == rb.automaton.base().matrix(g));
    CHECK(ra.automaton.base().initial() == rb.automaton.base().initial());
    CHECK(ra.automaton.base().final_vector() == rb.automaton.base().final_vector());
    CHECK(ra.provenance == rb.provenance);
}

TEST_CASE("stage preconditions are enforced") {
    testutil::Rng rng(31);
    const GeneralizedAutomaton<Rational> a = testutil::random_generalized(rng);
    const PipelineStage<Rational> s1 = zero_sum_form(a, Rational{1, 2});
    const PipelineStage<Rational> s2 = nonneg_form(s1);

    CHECK_THROWS_WITH(nonneg_form(s2), Catch::Matchers::ContainsSubstring("zero_sum"));
    CHECK_THROWS_AS(stochastic_cut0_form(s1), moga::automaton_error);
    CHECK_THROWS_AS(distribution_form(s2), moga::automaton_error);
    CHECK_THROWS_AS(acceptor_form(s2), moga::automaton_error);
}

TEST_CASE("rescaling moves the cut point without moving the language") {
    const auto entry = moga::gallery::m_adic(2);
    const Rational lam{1, 3};
    const Rational lam2{2, 5};
    const auto stage = moga::rescale_cutpoint(entry.automaton, lam, lam2);
    CHECK(stage.tag == StageTag::rescaled);
    CHECK(stage.cut == lam2);
    CHECK(cut_language(stage.automaton, lam2, 5) == cut_language(entry.automaton, lam, 5));
    CHECK_THROWS_AS(moga::rescale_cutpoint(entry.automaton, Rational{0}, lam2),
                    moga::automaton_error);
    CHECK_THROWS_AS(moga::rescale_cutpoint(entry.automaton, lam, Rational{-1, 2}),
                    moga::automaton_error);
}

TEST_CASE("adjoining the empty word") {
    const auto entry = moga::gallery::m_adic(2);
    const moga::StochasticAutomaton<Rational> sa(entry.automaton);
    const Rational cut{1, 2};

    SECTION("no-op when the empty word is unwanted") {
        const auto out = moga::adjoin_empty_word(sa, cut, false);
        CHECK(out.cut == cut);
        CHECK(out.automaton.base().states() == sa.base().states());
    }
    SECTION("bordered form keeps non-empty values and accepts the empty word") {
        const auto out = moga::adjoin_empty_word(sa, cut, true);
        CHECK(out.automaton.base().states() == sa.base().states() + 1);
        CHECK(moga::validate_stochastic(out.automaton.base()).ok());
        CHECK(acceptance_value(out.automaton.base(), Word{}) == Rational{1});
        for (const Word& u : moga::enumerate_words(sa.base().monoid(), 4))
            if (!u.empty())
                REQUIRE(acceptance_value(out.automaton.base(), u) ==
                        acceptance_value(sa.base(), u));
    }
    SECTION("cut point one collapses to the empty-word automaton") {
        const auto out = moga::adjoin_empty_word(sa, Rational{1}, true);
        CHECK(out.cut == Rational{0});
        CHECK(out.automaton.base().states() == 2);
        CHECK(moga::validate_stochastic(out.automaton.base()).ok());
        CHECK(cut_language(out.automaton.base(), out.cut, 3) == std::set<std::string>{"ε"});
    }
    SECTION("cut point outside the unit interval is refused") {
        CHECK_THROWS_AS(moga::adjoin_empty_word(sa, Rational{3, 2}, false),
                        moga::automaton_error);
    }
}

TEST_CASE("the extension postulate survives every stage") {
    const auto entry = moga::gallery::commutative_counter();
    const GeneralizedAutomaton<Rational>& a = entry.automaton;
    REQUIRE(check_extension_postulate(a).ok());

    const PipelineStage<Rational> s1 = zero_sum_form(a, entry.default_cut);
    const PipelineStage<Rational> s2 = nonneg_form(s1);
    const PipelineStage<Rational> s3 = stochastic_cut0_form(s2);
    const PipelineStage<Rational> s4 = distribution_form(s3);
    CHECK(check_extension_postulate(s1.automaton).ok());
    CHECK(check_extension_postulate(s2.automaton).ok());
    CHECK(check_extension_postulate(s3.automaton).ok());
    CHECK(check_extension_postulate(s4.automaton).ok());

    const auto res = moga::full_pipeline(a, entry.default_cut);
    CHECK(check_extension_postulate(res.automaton.base()).ok());
    CHECK(cut_language(res.automaton.base(), res.cut, 3) ==
          cut_language(a, entry.default_cut, 3));
}

TEST_CASE("matrix families and acceptors translate into each other") {
    SECTION("corner acceptance through unit borders") {
        const moga::MatrixFamily<Rational> fam{
            moga::MonoidSpec::free_monoid({"x"}),
            {moga::Matrix<Rational>{{Rational{1}, Rational{1}}, {Rational{0}, Rational{1}}}}};
        const auto got = moga::from_matrix_family(fam);
        CHECK(got.cut == Rational{0});
        CHECK(acceptance_value(got.automaton, Word{}) == Rational{0});
        CHECK(acceptance_value(got.automaton, Word{0, 0, 0}) == Rational{3});
    }
    SECTION("families must honor the postulate") {
        const moga::MonoidSpec fc = moga::MonoidSpec::free_commutative({"x", "y"});
        const moga::MatrixFamily<Rational> bad{
            fc,
            {moga::Matrix<Rational>{{Rational{1}, Rational{1}}, {Rational{0}, Rational{1}}},
             moga::Matrix<Rational>{{Rational{1}, Rational{0}}, {Rational{1}, Rational{1}}}}};
        CHECK_THROWS_WITH(moga::from_matrix_family(bad),
                          Catch::Matchers::ContainsSubstring("postulate"));
    }
    SECTION("shape errors") {
        const moga::MonoidSpec free1 = moga::MonoidSpec::free_monoid({"x"});
        CHECK_THROWS_AS(moga::from_matrix_family(moga::MatrixFamily<Rational>{free1, {}}),
                        moga::automaton_error);
    }
    SECTION("round trip preserves membership of non-empty words") {
        testutil::Rng rng(62101);
        for (int round = 0; round < 5; ++round) {
            const auto a = testutil::random_stochastic(rng);
            for (const Rational& cut : {Rational{0}, Rational{1, 2}}) {
                const auto fam = moga::to_matrix_family(a, cut);
                const auto back = moga::from_matrix_family(fam);
                for (const Word& u : moga::enumerate_words(a.base().monoid(), 4))
                    if (!u.empty())
                        REQUIRE(accepts(back.automaton, back.cut, u) ==
                                accepts(a.base(), cut, u));
            }
        }
    }
}
