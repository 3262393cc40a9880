// Walk the commutative counter through the normalization pipeline and show
// that the cut-point language never moves.

#include <iostream>

#include "moga/moga.hpp"

using namespace moga;

namespace {

void show_language(const char* label, const GeneralizedAutomaton<Rational>& a, const Rational& cut) {
    std::cout << label << " (cut " << cut.str() << "):";
    bool first = true;
    for (const Word& w : enumerate_language(a, cut, 4)) {
        std::cout << (first ? " " : ", ") << render_word(a.monoid(), w);
        first = false;
    }
    std::cout << "\n";
}

}  // namespace

int main() {
    const gallery::RationalEntry entry = gallery::commutative_counter();
    const GeneralizedAutomaton<Rational>& a = entry.automaton;
    std::cout << "input: " << a.states() << " states over {x,y} commuting, " << entry.notes << "\n";
    show_language("input language", a, entry.default_cut);

    const PipelineStage<Rational> s1 = zero_sum_form(a, entry.default_cut);
    const PipelineStage<Rational> s2 = nonneg_form(s1);
    const PipelineStage<Rational> s3 = stochastic_cut0_form(s2);
    const PipelineStage<Rational> s4 = distribution_form(s3);
    const PipelineStage<Rational> s5 = acceptor_form(s4);
    for (const PipelineStage<Rational>* s : {&s1, &s2, &s3, &s4, &s5})
        std::cout << stage_name(s->tag) << ": " << s->automaton.states() << " states, cut "
                  << s->cut.str() << "\n";

    const PipelineResult<Rational> res = full_pipeline(a, entry.default_cut);
    std::cout << "full pipeline: " << res.automaton.base().states() << " states, cut "
              << res.cut.str() << ", epsilon adjoined: " << (res.epsilon_adjoined ? "yes" : "no")
              << "\n";
    show_language("output language", res.automaton.base(), res.cut);

    std::cout << "constants:";
    for (const auto& [key, value] : res.provenance) std::cout << " " << key << "=" << value;
    std::cout << "\n";
    return 0;
}
