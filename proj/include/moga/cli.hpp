#pragma once

// Command line surface. run_cli is the whole program; the binary's main only
// forwards argv. Kept in a header so the test suite can drive the CLI
// in-process against string streams.
//
// Exit codes: 0 success, 1 validation failure, 2 usage or parse error.

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "moga/closures.hpp"
#include "moga/document.hpp"
#include "moga/gallery.hpp"
#include "moga/turakainen.hpp"

namespace moga::cli {

namespace detail {

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw parse_error("cannot open \"" + path + "\"");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw parse_error("cannot write \"" + path + "\"");
    out << text;
}

inline Document load(const std::string& path) { return parse_document(read_file(path)); }

// Document bytes go to --output or stdout; notes go to the other stream so a
// piped document stays clean.
struct Emitter {
    std::string output;
    std::ostream* out;
    std::ostream* err;
    void document(const Document& doc) const {
        const std::string text = serialize_document(doc);
        if (output.empty())
            *out << text;
        else
            write_file(output, text);
    }
    std::ostream& note() const { return output.empty() ? *err : *out; }
};

template <ScalarBackend S>
std::string matrix_str(const Matrix<S>& m) {
    std::string out = "[";
    for (std::size_t i = 0; i < m.rows(); ++i) {
        out += "[";
        for (std::size_t j = 0; j < m.cols(); ++j) {
            out += scalar_str(m(i, j));
            if (j + 1 < m.cols()) out += ", ";
        }
        out += "]";
        if (i + 1 < m.rows()) out += ", ";
    }
    return out + "]";
}

inline Word parse_word_arg(const MonoidSpec& spec, const std::string& text) {
    try {
        return parse_word(spec, text);
    } catch (const monoid_error& e) {
        throw parse_error(std::string("--word: ") + e.what());
    }
}

template <ScalarBackend S>
S parse_scalar_arg(const std::string& text, const char* flag) {
    try {
        return S::parse(text);
    } catch (const parse_error& e) {
        throw parse_error(std::string(flag) + ": " + e.what());
    }
}

template <ScalarBackend S>
S resolve_cut(const std::optional<S>& doc_cut, const std::optional<std::string>& flag,
              const char* name = "--cut") {
    if (flag) return parse_scalar_arg<S>(*flag, name);
    if (doc_cut) return *doc_cut;
    throw parse_error(std::string("no cut point: the document carries none and ") + name +
                      " was not given");
}

inline void require_matrix_doc(const Document& doc, const char* what) {
    if (doc.kind == DocKind::boolean_kind)
        throw automaton_error(std::string(what) + " needs a matrix automaton document");
}

template <ScalarBackend S>
bool validate_matrix_doc(const Document& doc, const GeneralizedAutomaton<S>& a,
                         const std::optional<S>& cut, std::ostream& out) {
    bool ok = true;
    const PostulateReport<S> report = check_extension_postulate(a);
    if (report.ok()) {
        out << "postulate: ok\n";
    } else {
        ok = false;
        for (const PostulateViolation<S>& v : report.violations) {
            out << "postulate violation: " << render_word(a.monoid(), v.relation.lhs) << " = "
                << render_word(a.monoid(), v.relation.rhs) << "\n";
            out << "  lhs product: " << matrix_str(v.lhs_matrix) << "\n";
            out << "  rhs product: " << matrix_str(v.rhs_matrix) << "\n";
        }
    }
    if (doc.kind == DocKind::stochastic) {
        const std::vector<std::string> violations = stochastic_violations(a);
        if (violations.empty()) {
            out << "stochastic: ok\n";
        } else {
            ok = false;
            for (const std::string& v : violations) out << "stochastic violation: " << v << "\n";
        }
        if (cut) {
            try {
                require_cut_in_unit_interval(*cut);
                out << "cut: ok\n";
            } catch (const automaton_error& e) {
                ok = false;
                out << "cut violation: " << e.what() << "\n";
            }
        }
    }
    return ok;
}

inline int cmd_validate(const Document& doc, std::ostream& out) {
    bool ok = true;
    if (doc.kind == DocKind::boolean_kind)
        out << "boolean structure: ok\n";
    else if (doc.backend == DocBackend::rational)
        ok = validate_matrix_doc(doc, *doc.rational_automaton, doc.rational_cut, out);
    else
        ok = validate_matrix_doc(doc, *doc.float_automaton, doc.float_cut, out);
    out << (ok ? "validate: pass\n" : "validate: fail\n");
    return ok ? 0 : 1;
}

template <ScalarBackend S>
int accept_matrix(const GeneralizedAutomaton<S>& a, const std::optional<S>& doc_cut,
                  const std::optional<std::string>& cut_flag, const std::string& word_text,
                  bool with_decision, std::ostream& out) {
    const Word u = parse_word_arg(a.monoid(), word_text);
    const S value = acceptance_value(a, u);
    if (!with_decision) {
        out << value.str() << "\n";
        return 0;
    }
    const S cut = resolve_cut(doc_cut, cut_flag);
    out << "value: " << value.str() << "\n";
    out << "accepted: " << (value > cut ? "true" : "false") << "\n";
    return 0;
}

inline int cmd_accept(const Document& doc, const std::optional<std::string>& cut_flag,
                      const std::string& word_text, bool with_decision, std::ostream& out) {
    if (doc.kind == DocKind::boolean_kind) {
        if (cut_flag) throw parse_error("--cut: boolean documents are evaluated at cut point 0");
        const auto emb = to_generalized<Rational>(*doc.boolean_automaton);
        return accept_matrix<Rational>(emb.automaton, Rational{0}, std::nullopt, word_text,
                                       with_decision, out);
    }
    if (doc.backend == DocBackend::rational)
        return accept_matrix(*doc.rational_automaton, doc.rational_cut, cut_flag, word_text,
                             with_decision, out);
    return accept_matrix(*doc.float_automaton, doc.float_cut, cut_flag, word_text, with_decision,
                         out);
}

template <ScalarBackend S>
int enumerate_matrix(const GeneralizedAutomaton<S>& a, const std::optional<S>& doc_cut,
                     const std::optional<std::string>& cut_flag, std::size_t max_len,
                     std::ostream& out) {
    const S cut = resolve_cut(doc_cut, cut_flag);
    for (const Word& w : enumerate_language(a, cut, max_len))
        out << render_word(a.monoid(), w) << "\n";
    return 0;
}

inline int cmd_enumerate(const Document& doc, const std::optional<std::string>& cut_flag,
                         std::size_t max_len, std::ostream& out) {
    if (doc.kind == DocKind::boolean_kind) {
        if (cut_flag) throw parse_error("--cut: boolean documents are evaluated at cut point 0");
        for (const Word& w : enumerate_boolean_language(*doc.boolean_automaton, max_len))
            out << render_word(doc.boolean_automaton->monoid(), w) << "\n";
        return 0;
    }
    if (doc.backend == DocBackend::rational)
        return enumerate_matrix(*doc.rational_automaton, doc.rational_cut, cut_flag, max_len, out);
    return enumerate_matrix(*doc.float_automaton, doc.float_cut, cut_flag, max_len, out);
}

inline const GeneralizedAutomaton<Rational>& rational_matrix_operand(const Document& doc,
                                                                     const char* what) {
    require_matrix_doc(doc, what);
    if (doc.backend != DocBackend::rational)
        throw automaton_error(std::string(what) + " runs on the rational backend only");
    return *doc.rational_automaton;
}

inline std::optional<std::string> doc_stage(const Document& doc) {
    auto it = doc.provenance.find("stage");
    if (it == doc.provenance.end()) return std::nullopt;
    return it->second;
}

inline void require_raw_input(const Document& doc, const char* stage) {
    const auto tag = doc_stage(doc);
    if (tag && *tag != "rescaled")
        throw automaton_error(std::string(stage) + " expects a raw automaton document, got one tagged \"" +
                              *tag + "\"");
}

inline void require_tag(const Document& doc, const char* stage, const char* want) {
    const auto tag = doc_stage(doc);
    if (!tag || *tag != want)
        throw automaton_error(std::string(stage) + " expects a " + want + " document, got " +
                              (tag ? "\"" + *tag + "\"" : std::string("an untagged one")));
}

inline Document stage_to_document(const PipelineStage<Rational>& stage, const Document& input) {
    std::map<std::string, std::string> prov = input.provenance;
    const std::string prefix = stage_name(stage.tag);
    const StageConstants<Rational>& c = stage.constants;
    if (c.r) prov[prefix + ".r"] = c.r->str();
    if (c.alpha) prov[prefix + ".alpha"] = c.alpha->str();
    if (c.beta) prov[prefix + ".beta"] = c.beta->str();
    if (c.big_r) prov[prefix + ".R"] = c.big_r->str();
    if (c.t) prov[prefix + ".t"] = c.t->str();
    prov["stage"] = prefix;
    const DocKind kind =
        stage.tag == StageTag::acceptor ? DocKind::stochastic : DocKind::generalized;
    return make_document(stage.automaton, stage.cut, kind, std::move(prov));
}

inline int cmd_transform(const Document& doc, const std::string& stage,
                         const std::optional<std::string>& cut_flag,
                         const std::optional<std::string>& to_cut_flag, bool want_epsilon,
                         const Emitter& emit) {
    const GeneralizedAutomaton<Rational>& a = rational_matrix_operand(doc, "transform");
    auto input_cut = [&] { return resolve_cut(doc.rational_cut, cut_flag); };
    auto rebuild = [&](StageTag tag) { return PipelineStage<Rational>{tag, a, input_cut(), {}}; };

    if (stage == "rescale") {
        require_raw_input(doc, "rescale");
        if (!to_cut_flag) throw parse_error("rescale needs --to-cut");
        emit.document(stage_to_document(
            rescale_cutpoint(a, input_cut(), parse_scalar_arg<Rational>(*to_cut_flag, "--to-cut")),
            doc));
        return 0;
    }
    if (stage == "zero_sum") {
        require_raw_input(doc, "zero_sum");
        emit.document(stage_to_document(zero_sum_form(a, input_cut()), doc));
        return 0;
    }
    if (stage == "nonneg") {
        require_tag(doc, "nonneg", "zero_sum");
        emit.document(stage_to_document(nonneg_form(rebuild(StageTag::zero_sum)), doc));
        return 0;
    }
    if (stage == "stochastic_cut0") {
        require_tag(doc, "stochastic_cut0", "nonneg");
        emit.document(stage_to_document(stochastic_cut0_form(rebuild(StageTag::nonneg)), doc));
        return 0;
    }
    if (stage == "distribution") {
        require_tag(doc, "distribution", "stochastic_cut0");
        emit.document(stage_to_document(distribution_form(rebuild(StageTag::stochastic_cut0)), doc));
        return 0;
    }
    if (stage == "acceptor") {
        require_tag(doc, "acceptor", "distribution");
        emit.document(stage_to_document(acceptor_form(rebuild(StageTag::distribution)), doc));
        return 0;
    }
    if (stage == "adjoin_empty") {
        if (doc.kind != DocKind::stochastic)
            throw automaton_error("adjoin_empty runs on stochastic documents");
        StochasticAutomaton<Rational> sa(a);
        const auto res = adjoin_empty_word(sa, input_cut(), want_epsilon);
        std::map<std::string, std::string> prov = doc.provenance;
        prov["stage"] = "empty_adjoined";
        emit.document(
            make_document(res.automaton.base(), res.cut, DocKind::stochastic, std::move(prov)));
        return 0;
    }
    if (stage == "full") {
        require_raw_input(doc, "full");
        const PipelineResult<Rational> res = full_pipeline(a, input_cut());
        std::map<std::string, std::string> prov = res.provenance;
        prov["stage"] = "full";
        prov["epsilon_adjoined"] = res.epsilon_adjoined ? "true" : "false";
        emit.document(
            make_document(res.automaton.base(), res.cut, DocKind::stochastic, std::move(prov)));
        emit.note() << "states: " << res.automaton.base().states() << "\n";
        emit.note() << "cut: " << res.cut.str() << "\n";
        emit.note() << "epsilon_adjoined: " << (res.epsilon_adjoined ? "true" : "false") << "\n";
        return 0;
    }
    throw parse_error("unknown stage \"" + stage +
                      "\" (expected rescale, zero_sum, nonneg, stochastic_cut0, distribution, "
                      "acceptor, adjoin_empty or full)");
}

template <ScalarBackend S>
Document combine_docs(const Document& da, const GeneralizedAutomaton<S>& a,
                      const std::optional<S>& doc_cut, const std::optional<std::string>& cut_flag,
                      const BooleanMonoidalAutomaton& b, SetOp op, const char* opname) {
    if (da.kind != DocKind::stochastic)
        throw automaton_error(std::string(opname) + " needs a stochastic first operand");
    StochasticAutomaton<S> sa(a);
    const auto res = combine_with_regular(sa, resolve_cut(doc_cut, cut_flag), determinize(b), op);
    return make_document(res.automaton.base(), res.cut, DocKind::stochastic,
                         {{"composed", opname}});
}

template <ScalarBackend S>
Document complement_doc(const Document& da, const GeneralizedAutomaton<S>& a,
                        const std::optional<S>& doc_cut, const std::optional<std::string>& cut_flag,
                        const std::optional<std::string>& delta_flag,
                        const std::optional<std::size_t>& max_len, std::ostream& note) {
    if (da.kind != DocKind::stochastic) throw automaton_error("complement needs a stochastic operand");
    if (!delta_flag) throw parse_error("complement needs --delta (isolation gap)");
    if (!max_len) throw parse_error("complement needs --max-len (isolation check horizon)");
    StochasticAutomaton<S> sa(a);
    const S cut = resolve_cut(doc_cut, cut_flag);
    const S delta = parse_scalar_arg<S>(*delta_flag, "--delta");
    const auto check = check_isolation(a, cut, delta, *max_len);
    if (std::holds_alternative<Word>(check))
        throw automaton_error("cut point is not isolated at gap " + delta.str() + ": witness \"" +
                              render_word(a.monoid(), std::get<Word>(check)) + "\"");
    const auto res = complement_isolated(sa, cut, std::get<IsolationGap<S>>(check));
    note << "isolation: verified to length " << *max_len << "\n";
    return make_document(res.automaton.base(), res.cut, DocKind::stochastic,
                         {{"composed", "complement"}});
}

template <ScalarBackend S>
Document mirror_doc(const GeneralizedAutomaton<S>& a, const std::optional<S>& doc_cut,
                    const std::optional<std::string>& cut_flag) {
    const auto res = mirror(a, resolve_cut(doc_cut, cut_flag));
    return make_document(res.automaton, res.cut, DocKind::generalized, {{"composed", "mirror"}});
}

template <ScalarBackend S>
Document inverse_doc(const Document& da, const GeneralizedAutomaton<S>& a,
                     const std::optional<S>& doc_cut, const std::optional<std::string>& cut_flag) {
    const auto res = inverse_relation_generalized(a, resolve_cut(doc_cut, cut_flag));
    return make_document(res.automaton, res.cut, da.kind, {{"composed", "inverse"}});
}

template <ScalarBackend S>
Document kron_docs(const Document& da, const GeneralizedAutomaton<S>& a,
                   const std::optional<S>& ca, const Document& db,
                   const GeneralizedAutomaton<S>& b, const std::optional<S>& cb,
                   const std::optional<std::string>& cut_flag,
                   const std::optional<std::string>& cut2_flag) {
    const auto res = kronecker_product(a, resolve_cut(ca, cut_flag), b,
                                       resolve_cut(cb, cut2_flag, "--cut2"));
    const DocKind kind = da.kind == DocKind::stochastic && db.kind == DocKind::stochastic
                             ? DocKind::stochastic
                             : DocKind::generalized;
    return make_document(res.automaton, res.cut, kind, {{"composed", "kron"}});
}

inline int cmd_compose(const std::string& op, const std::vector<std::string>& inputs,
                       const std::optional<std::string>& cut_flag,
                       const std::optional<std::string>& cut2_flag,
                       const std::optional<std::string>& delta_flag,
                       const std::optional<std::size_t>& max_len, const Emitter& emit) {
    auto need_inputs = [&](std::size_t n) {
        if (inputs.size() != n)
            throw parse_error("compose " + op + " takes " + std::to_string(n) + " operand document" +
                              (n == 1 ? "" : "s"));
    };
    if (op == "union" || op == "intersect" || op == "diff") {
        need_inputs(2);
        const Document da = load(inputs[0]), db = load(inputs[1]);
        if (db.kind != DocKind::boolean_kind)
            throw automaton_error(op + " needs a boolean second operand");
        const SetOp sop = op == "union"       ? SetOp::union_with
                          : op == "intersect" ? SetOp::intersect_with
                                              : SetOp::subtract;
        emit.document(da.backend == DocBackend::rational
                          ? combine_docs(da, *da.rational_automaton, da.rational_cut, cut_flag,
                                         *db.boolean_automaton, sop, op.c_str())
                          : combine_docs(da, *da.float_automaton, da.float_cut, cut_flag,
                                         *db.boolean_automaton, sop, op.c_str()));
        return 0;
    }
    if (op == "complement") {
        need_inputs(1);
        const Document da = load(inputs[0]);
        require_matrix_doc(da, "complement");
        emit.document(da.backend == DocBackend::rational
                          ? complement_doc(da, *da.rational_automaton, da.rational_cut, cut_flag,
                                           delta_flag, max_len, emit.note())
                          : complement_doc(da, *da.float_automaton, da.float_cut, cut_flag,
                                           delta_flag, max_len, emit.note()));
        return 0;
    }
    if (op == "mirror") {
        need_inputs(1);
        const Document da = load(inputs[0]);
        require_matrix_doc(da, "mirror");
        emit.document(da.backend == DocBackend::rational
                          ? mirror_doc(*da.rational_automaton, da.rational_cut, cut_flag)
                          : mirror_doc(*da.float_automaton, da.float_cut, cut_flag));
        return 0;
    }
    if (op == "inverse") {
        need_inputs(1);
        const Document da = load(inputs[0]);
        require_matrix_doc(da, "inverse");
        emit.document(da.backend == DocBackend::rational
                          ? inverse_doc(da, *da.rational_automaton, da.rational_cut, cut_flag)
                          : inverse_doc(da, *da.float_automaton, da.float_cut, cut_flag));
        return 0;
    }
    if (op == "kron") {
        need_inputs(2);
        const Document da = load(inputs[0]), db = load(inputs[1]);
        require_matrix_doc(da, "kron");
        require_matrix_doc(db, "kron");
        if (da.backend != db.backend)
            throw automaton_error("backend mismatch: operands use different scalar backends");
        emit.document(da.backend == DocBackend::rational
                          ? kron_docs(da, *da.rational_automaton, da.rational_cut, db,
                                      *db.rational_automaton, db.rational_cut, cut_flag, cut2_flag)
                          : kron_docs(da, *da.float_automaton, da.float_cut, db,
                                      *db.float_automaton, db.float_cut, cut_flag, cut2_flag));
        return 0;
    }
    throw parse_error("unknown compose op \"" + op +
                      "\" (expected union, intersect, diff, complement, mirror, inverse or kron)");
}

inline int cmd_gallery(const std::string& id, unsigned m, const std::optional<double>& phi,
                       const std::optional<std::string>& backend, const Emitter& emit) {
    const std::string be = backend.value_or(id == "rotation" ? "float" : "rational");
    auto need_rational = [&] {
        if (be != "rational")
            throw parse_error("gallery entry " + id + " is exact; use the rational backend");
    };
    auto matrix_entry = [&](const gallery::RationalEntry& e) {
        emit.document(make_document(e.automaton, e.default_cut,
                                    e.stochastic ? DocKind::stochastic : DocKind::generalized,
                                    {{"source", "gallery/" + e.id}, {"notes", e.notes}}));
        return 0;
    };
    if (id == "m_adic") {
        need_rational();
        return matrix_entry(gallery::m_adic(m));
    }
    if (id == "rotation") {
        if (be != "float") throw parse_error("gallery entry rotation needs the float backend");
        if (!phi) throw parse_error("gallery entry rotation needs --phi");
        const gallery::FloatEntry e = gallery::rotation(*phi);
        emit.document(make_document(e.automaton, e.default_cut, DocKind::generalized,
                                    {{"source", "gallery/rotation"}, {"notes", e.notes}}));
        return 0;
    }
    if (id == "commutative_counter") {
        need_rational();
        return matrix_entry(gallery::commutative_counter());
    }
    if (id == "two_tape_counter") {
        need_rational();
        return matrix_entry(gallery::two_tape_counter());
    }
    if (id == "fig1_boolean") {
        need_rational();
        const gallery::BooleanEntry e = gallery::fig1_boolean();
        emit.document(make_document(e.automaton,
                                    {{"source", "gallery/fig1_boolean"}, {"notes", e.notes}}));
        return 0;
    }
    if (id == "product_madic_halving") {
        need_rational();
        return matrix_entry(gallery::product_madic_halving(m));
    }
    throw parse_error("unknown gallery entry \"" + id +
                      "\" (try: m_adic, rotation, commutative_counter, two_tape_counter, "
                      "fig1_boolean, product_madic_halving)");
}

}  // namespace detail

inline int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"stochastic and generalized automata over finitely generated monoids", "moga"};
    app.require_subcommand(1);

    std::string input, output, word_text, stage, op, gallery_id;
    std::string cut_str, cut2_str, to_cut_str, delta_str, backend_str;
    std::vector<std::string> inputs;
    std::size_t max_len = 0;
    unsigned m = 2;
    double phi = 0.0;
    bool want_epsilon = false;
    int rc = 0;

    auto opt_str = [](const CLI::Option* o, const std::string& v) {
        return o->count() ? std::optional<std::string>(v) : std::nullopt;
    };

    CLI::App* validate = app.add_subcommand("validate", "check a document's structural claims");
    validate->add_option("input", input, "automaton document")->required();
    validate->callback([&] { rc = detail::cmd_validate(detail::load(input), out); });

    CLI::App* accept = app.add_subcommand("accept", "evaluate a word against the cut point");
    accept->add_option("input", input, "automaton document")->required();
    accept->add_option("--word", word_text, "generator names separated by spaces (default: empty word)");
    const CLI::Option* accept_cut = accept->add_option("--cut", cut_str, "cut point override");
    accept->callback([&] {
        rc = detail::cmd_accept(detail::load(input), opt_str(accept_cut, cut_str), word_text, true,
                                out);
    });

    CLI::App* value = app.add_subcommand("value", "print a word's exact acceptance value");
    value->add_option("input", input, "automaton document")->required();
    value->add_option("--word", word_text, "generator names separated by spaces (default: empty word)");
    value->callback([&] {
        rc = detail::cmd_accept(detail::load(input), std::nullopt, word_text, false, out);
    });

    CLI::App* enumerate = app.add_subcommand("enumerate", "list accepted words up to a length");
    enumerate->add_option("input", input, "automaton document")->required();
    const CLI::Option* enum_cut = enumerate->add_option("--cut", cut_str, "cut point override");
    enumerate->add_option("--max-len", max_len, "maximum word length")->required();
    enumerate->callback([&] {
        rc = detail::cmd_enumerate(detail::load(input), opt_str(enum_cut, cut_str), max_len, out);
    });

    CLI::App* transform = app.add_subcommand("transform", "run a normalization stage");
    transform
        ->add_option("stage", stage,
                     "rescale, zero_sum, nonneg, stochastic_cut0, distribution, acceptor, "
                     "adjoin_empty or full")
        ->required();
    transform->add_option("input", input, "automaton document")->required();
    const CLI::Option* tr_cut = transform->add_option("--cut", cut_str, "cut point override");
    const CLI::Option* tr_to = transform->add_option("--to-cut", to_cut_str, "target cut point (rescale)");
    transform->add_flag("--want-epsilon", want_epsilon, "make the empty word accepted (adjoin_empty)");
    transform->add_option("--output", output, "write the document here instead of stdout");
    transform->callback([&] {
        rc = detail::cmd_transform(detail::load(input), stage, opt_str(tr_cut, cut_str),
                                   opt_str(tr_to, to_cut_str), want_epsilon,
                                   detail::Emitter{output, &out, &err});
    });

    CLI::App* compose = app.add_subcommand("compose", "combine automata");
    compose
        ->add_option("op", op, "union, intersect, diff, complement, mirror, inverse or kron")
        ->required();
    compose->add_option("inputs", inputs, "operand documents")->required()->expected(1, 2);
    const CLI::Option* co_cut = compose->add_option("--cut", cut_str, "first operand cut point");
    const CLI::Option* co_cut2 = compose->add_option("--cut2", cut2_str, "second operand cut point");
    const CLI::Option* co_delta = compose->add_option("--delta", delta_str, "isolation gap (complement)");
    const CLI::Option* co_ml =
        compose->add_option("--max-len", max_len, "isolation check horizon (complement)");
    compose->add_option("--output", output, "write the document here instead of stdout");
    compose->callback([&] {
        rc = detail::cmd_compose(op, inputs, opt_str(co_cut, cut_str), opt_str(co_cut2, cut2_str),
                                 opt_str(co_delta, delta_str),
                                 co_ml->count() ? std::optional<std::size_t>(max_len) : std::nullopt,
                                 detail::Emitter{output, &out, &err});
    });

    CLI::App* gallery_cmd = app.add_subcommand("gallery", "export a worked automaton");
    gallery_cmd
        ->add_option("id", gallery_id,
                     "m_adic, rotation, commutative_counter, two_tape_counter, fig1_boolean or "
                     "product_madic_halving")
        ->required();
    gallery_cmd->add_option("--m", m, "base for the m-adic entries (default 2)");
    const CLI::Option* ga_phi = gallery_cmd->add_option("--phi", phi, "rotation fraction of a full turn");
    const CLI::Option* ga_backend = gallery_cmd->add_option("--backend", backend_str, "rational or float");
    gallery_cmd->add_option("--output", output, "write the document here instead of stdout");
    gallery_cmd->callback([&] {
        rc = detail::cmd_gallery(gallery_id, m,
                                 ga_phi->count() ? std::optional<double>(phi) : std::nullopt,
                                 opt_str(ga_backend, backend_str),
                                 detail::Emitter{output, &out, &err});
    });

    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    } catch (const parse_error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return rc;
}

}  // namespace moga::cli
