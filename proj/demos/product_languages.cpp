// Product-monoid automata: two tapes, tape swap, and the Kronecker product
// with its multiplicative value formula.

#include <iostream>

#include "moga/moga.hpp"

using namespace moga;

int main() {
    const gallery::RationalEntry two_tape = gallery::two_tape_counter();
    std::cout << "two tape counter: " << two_tape.notes << "\n";
    for (const char* text : {"ε", "(x,e) (e,z)", "(x,e) (y,e)", "(x,e) (y,e) (e,z) (e,z)"}) {
        const Word w = parse_word(two_tape.automaton.monoid(), text);
        std::cout << "  value(" << text
                  << ") = " << acceptance_value(two_tape.automaton, w).str() << "\n";
    }

    const GeneralizedWithCut<Rational> swapped =
        inverse_relation_generalized(two_tape.automaton, two_tape.default_cut);
    std::cout << "after tape swap the generators read:";
    for (const std::string& name : swapped.automaton.monoid().generator_names())
        std::cout << " " << name;
    std::cout << "\n";

    const gallery::RationalEntry prod = gallery::product_madic_halving(2);
    std::cout << "m-adic times halving: " << prod.notes << "\n";
    for (const char* text : {"(1,e)", "(1,e) (e,y)", "(1,e) (e,y) (e,y)", "(0,e) (1,e) (e,y)"}) {
        const Word w = parse_word(prod.automaton.monoid(), text);
        std::cout << "  value(" << text << ") = " << acceptance_value(prod.automaton, w).str()
                  << "\n";
    }
    return 0;
}
