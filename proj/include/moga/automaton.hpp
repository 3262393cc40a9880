#pragma once

// Generalized automata over a monoid spec: one square matrix per generator,
// a row vector in front, a column vector behind. Acceptance of a word is
// "value strictly above the cut point". The extension-postulate check is
// what makes evaluation on presented monoids meaningful at all: the word
// matrix must not depend on the chosen representative.

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "moga/matrix.hpp"
#include "moga/monoid.hpp"
#include "moga/scalar.hpp"

namespace moga {

template <ScalarBackend S>
class GeneralizedAutomaton {
  public:
    GeneralizedAutomaton(MonoidSpec monoid, std::vector<Matrix<S>> matrices, RowVec<S> initial,
                         ColVec<S> final_vec)
        : monoid_(std::move(monoid)),
          matrices_(std::move(matrices)),
          initial_(std::move(initial)),
          final_(std::move(final_vec)) {
        const std::size_t n = initial_.size();
        if (n == 0) throw automaton_error("automaton needs at least one state");
        if (final_.size() != n)
            throw automaton_error("initial/final vector length mismatch: " + std::to_string(n) +
                                  " vs " + std::to_string(final_.size()));
        if (matrices_.size() != monoid_.generator_count())
            throw automaton_error("need exactly one matrix per generator");
        for (const Matrix<S>& m : matrices_)
            if (m.rows() != n || m.cols() != n)
                throw automaton_error("generator matrix is " + m.shape_str() + ", expected " +
                                      std::to_string(n) + "x" + std::to_string(n));
    }

    const MonoidSpec& monoid() const { return monoid_; }
    const std::vector<Matrix<S>>& matrices() const { return matrices_; }
    const Matrix<S>& matrix(Gen g) const { return matrices_.at(g); }
    const RowVec<S>& initial() const { return initial_; }
    const ColVec<S>& final_vector() const { return final_; }
    std::size_t states() const { return initial_.size(); }

  private:
    MonoidSpec monoid_;
    std::vector<Matrix<S>> matrices_;
    RowVec<S> initial_;
    ColVec<S> final_;
};

template <ScalarBackend S>
Matrix<S> matrix_of_word(const GeneralizedAutomaton<S>& a, const Word& u) {
    check_word(a.monoid(), u);
    Matrix<S> acc = Matrix<S>::identity(a.states());
    for (Gen g : u.syms) acc = acc * a.matrix(g);
    return acc;
}

template <ScalarBackend S>
S acceptance_value(const GeneralizedAutomaton<S>& a, const Word& u) {
    check_word(a.monoid(), u);
    RowVec<S> v = a.initial();
    for (Gen g : u.syms) v = v * a.matrix(g);
    return v * a.final_vector();
}

template <ScalarBackend S>
bool accepts(const GeneralizedAutomaton<S>& a, const S& cut, const Word& u) {
    return acceptance_value(a, u) > cut;
}

// Accepted words of length <= max_len, one representative (the normal form)
// per monoid element, in length-lex order. Needs a solved word problem;
// otherwise the list would count elements with multiplicity.
template <ScalarBackend S>
std::vector<Word> enumerate_language(const GeneralizedAutomaton<S>& a, const S& cut,
                                     std::size_t max_len) {
    if (!supports_normal_form(a.monoid()))
        throw monoid_error("enumeration needs a spec with solved word problem");
    std::vector<Word> out;
    for (Word& w : enumerate_words(a.monoid(), max_len))
        if (accepts(a, cut, w)) out.push_back(std::move(w));
    return out;
}

template <ScalarBackend S>
struct PostulateViolation {
    Relation relation;
    Matrix<S> lhs_matrix, rhs_matrix;
};

template <ScalarBackend S>
struct PostulateReport {
    std::vector<PostulateViolation<S>> violations;
    bool ok() const { return violations.empty(); }
};

// Do the generator matrices extend to a monoid homomorphism? Free specs
// always pass; presented specs must satisfy their relations as matrix
// identities; products additionally need the two generator blocks to
// commute with each other.
template <ScalarBackend S>
PostulateReport<S> check_extension_postulate(const GeneralizedAutomaton<S>& a) {
    PostulateReport<S> report;
    for (const Relation& rel : defining_relations(a.monoid())) {
        Matrix<S> lhs = matrix_of_word(a, rel.lhs);
        Matrix<S> rhs = matrix_of_word(a, rel.rhs);
        if (!(lhs == rhs)) report.violations.push_back({rel, std::move(lhs), std::move(rhs)});
    }
    return report;
}

template <ScalarBackend S>
std::vector<std::string> stochastic_violations(const GeneralizedAutomaton<S>& a) {
    std::vector<std::string> out;
    for (Gen g = 0; g < a.monoid().generator_count(); ++g) {
        const Matrix<S>& m = a.matrix(g);
        for (std::size_t i = 0; i < m.rows(); ++i) {
            S sum{0};
            bool negative = false;
            for (std::size_t j = 0; j < m.cols(); ++j) {
                if (m(i, j) < S{0}) negative = true;
                sum += m(i, j);
            }
            if (negative)
                out.push_back("matrix " + a.monoid().generator_name(g) + ": row " +
                              std::to_string(i) + " has a negative entry");
            if (!(sum == S{1}))
                out.push_back("matrix " + a.monoid().generator_name(g) + ": row " +
                              std::to_string(i) + " sums to " + sum.str());
        }
    }
    S pi_sum{0};
    for (std::size_t i = 0; i < a.states(); ++i) {
        if (a.initial()[i] < S{0})
            out.push_back("initial vector: entry " + std::to_string(i) + " is negative");
        pi_sum += a.initial()[i];
    }
    if (!(pi_sum == S{1})) out.push_back("initial vector sums to " + pi_sum.str());
    for (std::size_t i = 0; i < a.states(); ++i)
        if (!(a.final_vector()[i] == S{0}) && !(a.final_vector()[i] == S{1}))
            out.push_back("final vector: entry " + std::to_string(i) + " = " +
                          a.final_vector()[i].str() + " is not 0/1");
    return out;
}

// Refinement witness: construction checks the stochastic shape (row-stochastic
// generator matrices, initial distribution, 0/1 final vector) and throws with
// the violation list when it fails.
template <ScalarBackend S>
class StochasticAutomaton {
  public:
    explicit StochasticAutomaton(GeneralizedAutomaton<S> a) : base_(std::move(a)) {
        const auto violations = stochastic_violations(base_);
        if (!violations.empty()) {
            std::string msg = "not a stochastic automaton:";
            for (const std::string& v : violations) msg += "\n  " + v;
            throw automaton_error(msg);
        }
    }

    const GeneralizedAutomaton<S>& base() const { return base_; }

  private:
    GeneralizedAutomaton<S> base_;
};

template <ScalarBackend S>
struct StochasticCheck {
    std::vector<std::string> violations;
    std::optional<StochasticAutomaton<S>> automaton;
    bool ok() const { return violations.empty(); }
};

template <ScalarBackend S>
StochasticCheck<S> validate_stochastic(const GeneralizedAutomaton<S>& a) {
    StochasticCheck<S> check;
    check.violations = stochastic_violations(a);
    if (check.violations.empty()) check.automaton.emplace(StochasticAutomaton<S>(a));
    return check;
}

template <ScalarBackend S>
void require_cut_in_unit_interval(const S& cut) {
    if (cut < S{0} || S{1} < cut)
        throw automaton_error("cut point " + cut.str() + " outside [0,1]");
}

template <ScalarBackend S>
struct IsolationGap {
    S delta;
    std::size_t verified_to_length;
};

// Bounded isolation check: |cut - value(u)| >= delta for every word up to
// max_len. Returns the witness gap, or the first offending word. This is a
// semi-check by design; nothing is claimed beyond the verified length.
template <ScalarBackend S>
std::variant<IsolationGap<S>, Word> check_isolation(const GeneralizedAutomaton<S>& a, const S& cut,
                                                    const S& delta, std::size_t max_len) {
    if (!(S{0} < delta)) throw automaton_error("isolation gap must be positive");
    for (const Word& w : enumerate_words(a.monoid(), max_len)) {
        const S diff = abs(cut - acceptance_value(a, w));
        if (diff < delta) return w;
    }
    return IsolationGap<S>{delta, max_len};
}

// Distinct word matrices {Q(u) : |u| <= max_len} in first-reached order.
// Deduplicating level by level is sound: equal matrices generate equal
// successor sets.
template <ScalarBackend S>
std::vector<Matrix<S>> matrix_monoid_sample(const GeneralizedAutomaton<S>& a, std::size_t max_len) {
    std::vector<Matrix<S>> seen{Matrix<S>::identity(a.states())};
    std::size_t level_begin = 0;
    for (std::size_t len = 1; len <= max_len; ++len) {
        const std::size_t level_end = seen.size();
        for (std::size_t i = level_begin; i < level_end; ++i)
            for (Gen g = 0; g < a.monoid().generator_count(); ++g) {
                Matrix<S> next = seen[i] * a.matrix(g);
                bool fresh = true;
                for (const Matrix<S>& m : seen)
                    if (m == next) {
                        fresh = false;
                        break;
                    }
                if (fresh) seen.push_back(std::move(next));
            }
        level_begin = level_end;
    }
    return seen;
}

// How a matrix monoid is claimed to map into another one.
template <ScalarBackend S>
struct MatrixRule {
    enum class Kind { identity, transpose, power, generator_table };

    Kind kind = Kind::identity;
    unsigned exponent = 1;
    std::vector<Matrix<S>> table;
    bool table_anti = false;

    static MatrixRule identity_rule() { return {}; }
    static MatrixRule transpose_rule() { return {Kind::transpose, 1, {}, false}; }
    static MatrixRule power_rule(unsigned e) { return {Kind::power, e, {}, false}; }
    static MatrixRule table_rule(std::vector<Matrix<S>> t, bool anti = false) {
        return {Kind::generator_table, 1, std::move(t), anti};
    }
};

template <ScalarBackend S>
Matrix<S> apply_rule(const MatrixRule<S>& rule, const GeneralizedAutomaton<S>& a, const Word& u,
                     std::size_t target_dim) {
    switch (rule.kind) {
        case MatrixRule<S>::Kind::identity:
            return matrix_of_word(a, u);
        case MatrixRule<S>::Kind::transpose:
            return transpose(matrix_of_word(a, u));
        case MatrixRule<S>::Kind::power:
            return power(matrix_of_word(a, u), rule.exponent);
        case MatrixRule<S>::Kind::generator_table: {
            Matrix<S> acc = Matrix<S>::identity(target_dim);
            if (rule.table_anti) {
                for (auto it = u.syms.rbegin(); it != u.syms.rend(); ++it)
                    acc = acc * rule.table.at(*it);
            } else {
                for (Gen g : u.syms) acc = acc * rule.table.at(g);
            }
            return acc;
        }
    }
    throw automaton_error("unreachable");
}

template <ScalarBackend S>
struct CommutingReport {
    bool ok = true;
    std::optional<Word> witness;
    Matrix<S> expected, actual;
};

// Bounded check of the square
//     Q'(phi(u)) = rule(Q(u))
// over all free representatives u up to max_len. With an anti map the rule
// is expected to encode the reversed composition (e.g. transpose).
template <ScalarBackend S>
CommutingReport<S> check_commuting_property(const GeneralizedAutomaton<S>& a,
                                            const GeneralizedAutomaton<S>& a2, const MonoidMap& phi,
                                            const MatrixRule<S>& rule, std::size_t max_len) {
    if (!(phi.source() == a.monoid()) || !(phi.target() == a2.monoid()))
        throw automaton_error("map endpoints do not match the two automata");
    std::vector<Gen> gens(a.monoid().generator_count());
    for (Gen g = 0; g < gens.size(); ++g) gens[g] = g;
    // all free representatives, not just normal forms
    std::vector<Word> frontier{Word{}};
    for (std::size_t len = 0; len <= max_len; ++len) {
        std::vector<Word> next;
        for (const Word& u : frontier) {
            Matrix<S> expected = matrix_of_word(a2, apply_map(phi, u));
            Matrix<S> actual = apply_rule(rule, a, u, a2.states());
            if (!(expected == actual))
                return {false, u, std::move(expected), std::move(actual)};
            if (len < max_len)
                for (Gen g : gens) {
                    Word w = u;
                    w.syms.push_back(g);
                    next.push_back(std::move(w));
                }
        }
        frontier = std::move(next);
    }
    return {};
}

}  // namespace moga
