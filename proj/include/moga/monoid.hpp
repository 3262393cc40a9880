#pragma once

// Finitely generated monoids as input alphabets. A spec is free, finitely
// presented, or a direct product of two specs. Words are stored as sequences
// of generator indices (free representatives); monoid structure only enters
// through normal forms and the defining relations.
//
// The word problem is solved only where it is decidable by inspection:
// free specs, presentations whose relations are exactly the commutators of
// all generator pairs, and products of such specs. Anything else keeps its
// free representatives and the equality/enumeration helpers refuse to guess.

#include <algorithm>
#include <cstddef>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "moga/scalar.hpp"

namespace moga {

using Gen = std::size_t;

struct Word {
    std::vector<Gen> syms;

    Word() = default;
    Word(std::initializer_list<Gen> init) : syms(init) {}
    explicit Word(std::vector<Gen> s) : syms(std::move(s)) {}

    std::size_t size() const { return syms.size(); }
    bool empty() const { return syms.empty(); }

    friend bool operator==(const Word&, const Word&) = default;
    friend auto operator<=>(const Word&, const Word&) = default;
};

inline Word concat(const Word& a, const Word& b) {
    Word out = a;
    out.syms.insert(out.syms.end(), b.syms.begin(), b.syms.end());
    return out;
}

struct Relation {
    Word lhs, rhs;
    friend bool operator==(const Relation&, const Relation&) = default;
};

class MonoidSpec {
  public:
    enum class Kind { free, presented, product };

    static MonoidSpec free_monoid(std::vector<std::string> generators) {
        auto impl = std::make_shared<Impl>();
        impl->kind = Kind::free;
        impl->names = std::move(generators);
        check_names(impl->names);
        return MonoidSpec(std::move(impl));
    }

    static MonoidSpec presented(std::vector<std::string> generators, std::vector<Relation> relations) {
        auto impl = std::make_shared<Impl>();
        impl->kind = Kind::presented;
        impl->names = std::move(generators);
        check_names(impl->names);
        for (const Relation& rel : relations)
            for (const Word* side : {&rel.lhs, &rel.rhs})
                for (Gen g : side->syms)
                    if (g >= impl->names.size())
                        throw monoid_error("relation uses generator index out of range");
        impl->relations = std::move(relations);
        return MonoidSpec(std::move(impl));
    }

    // Presentation with every commutator relation xy = yx; the one family of
    // presentations whose word problem we solve by sorting.
    static MonoidSpec free_commutative(std::vector<std::string> generators) {
        const std::size_t n = generators.size();
        std::vector<Relation> rels;
        for (Gen a = 0; a < n; ++a)
            for (Gen b = a + 1; b < n; ++b) rels.push_back({Word{a, b}, Word{b, a}});
        return presented(std::move(generators), std::move(rels));
    }

    // Derived names like "(x,e)" use the reserved characters on purpose, so
    // they cannot collide with user-supplied names; only uniqueness is vetted.
    static MonoidSpec product(MonoidSpec left, MonoidSpec right) {
        auto impl = std::make_shared<Impl>();
        impl->kind = Kind::product;
        for (Gen g = 0; g < left.generator_count(); ++g)
            impl->names.push_back("(" + left.generator_name(g) + ",e)");
        for (Gen g = 0; g < right.generator_count(); ++g)
            impl->names.push_back("(e," + right.generator_name(g) + ")");
        check_unique(impl->names);
        impl->components.push_back(std::move(left));
        impl->components.push_back(std::move(right));
        return MonoidSpec(std::move(impl));
    }

    Kind kind() const { return impl_->kind; }
    std::size_t generator_count() const { return impl_->names.size(); }
    const std::vector<std::string>& generator_names() const { return impl_->names; }

    const std::string& generator_name(Gen g) const {
        if (g >= impl_->names.size()) throw monoid_error("generator index out of range");
        return impl_->names[g];
    }

    std::optional<Gen> find_generator(std::string_view name) const {
        for (Gen g = 0; g < impl_->names.size(); ++g)
            if (impl_->names[g] == name) return g;
        return std::nullopt;
    }

    const std::vector<Relation>& relations() const {
        if (impl_->kind != Kind::presented) throw monoid_error("relations() on non-presented spec");
        return impl_->relations;
    }

    const MonoidSpec& left() const {
        if (impl_->kind != Kind::product) throw monoid_error("left() on non-product spec");
        return impl_->components[0];
    }

    const MonoidSpec& right() const {
        if (impl_->kind != Kind::product) throw monoid_error("right() on non-product spec");
        return impl_->components[1];
    }

    std::size_t left_generator_count() const { return left().generator_count(); }

    friend bool operator==(const MonoidSpec& a, const MonoidSpec& b) {
        if (a.impl_ == b.impl_) return true;
        if (a.kind() != b.kind() || a.impl_->names != b.impl_->names) return false;
        switch (a.kind()) {
            case Kind::free: return true;
            case Kind::presented: return a.impl_->relations == b.impl_->relations;
            case Kind::product:
                return a.left() == b.left() && a.right() == b.right();
        }
        return false;
    }

  private:
    struct Impl {
        Kind kind = Kind::free;
        std::vector<std::string> names;
        std::vector<Relation> relations;     // presented
        std::vector<MonoidSpec> components;  // product: exactly {left, right}
    };

    explicit MonoidSpec(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

    static void check_names(const std::vector<std::string>& names) {
        for (const std::string& n : names) {
            if (n.empty()) throw monoid_error("empty generator name");
            for (char c : n)
                if (c == ' ' || c == '\t' || c == '\n' || c == ',' || c == '(' || c == ')')
                    throw monoid_error("generator name \"" + n + "\" contains a reserved character");
        }
        check_unique(names);
    }

    static void check_unique(const std::vector<std::string>& names) {
        std::set<std::string> seen(names.begin(), names.end());
        if (seen.size() != names.size()) throw monoid_error("duplicate generator name");
    }

    std::shared_ptr<const Impl> impl_;
};

// Tagged view of a product spec's generator list: the left block embeds as
// (x,e), the right block as (e,y).
struct ProductGen {
    Gen product_gen;
    bool from_left;
    Gen component_gen;
    std::string name;
};

inline std::vector<ProductGen> product_generators(const MonoidSpec& spec) {
    if (spec.kind() != MonoidSpec::Kind::product)
        throw monoid_error("product_generators on non-product spec");
    std::vector<ProductGen> out;
    const std::size_t nl = spec.left_generator_count();
    for (Gen g = 0; g < spec.generator_count(); ++g)
        out.push_back({g, g < nl, g < nl ? g : g - nl, spec.generator_name(g)});
    return out;
}

inline bool is_free_commutative(const MonoidSpec& spec) {
    if (spec.kind() != MonoidSpec::Kind::presented) return false;
    const std::size_t n = spec.generator_count();
    std::set<std::pair<Gen, Gen>> pairs;
    for (const Relation& rel : spec.relations()) {
        if (rel.lhs.size() != 2 || rel.rhs.size() != 2) return false;
        const Gen a = rel.lhs.syms[0], b = rel.lhs.syms[1];
        if (a == b) return false;
        if (rel.rhs.syms[0] != b || rel.rhs.syms[1] != a) return false;
        pairs.insert(std::minmax(a, b));
    }
    return pairs.size() == n * (n - 1) / 2 && spec.relations().size() == pairs.size();
}

inline bool supports_normal_form(const MonoidSpec& spec) {
    switch (spec.kind()) {
        case MonoidSpec::Kind::free: return true;
        case MonoidSpec::Kind::presented: return is_free_commutative(spec);
        case MonoidSpec::Kind::product:
            return supports_normal_form(spec.left()) && supports_normal_form(spec.right());
    }
    return false;
}

inline void check_word(const MonoidSpec& spec, const Word& u) {
    for (Gen g : u.syms)
        if (g >= spec.generator_count()) throw monoid_error("word uses generator index out of range");
}

inline Word normal_form(const MonoidSpec& spec, const Word& u) {
    check_word(spec, u);
    switch (spec.kind()) {
        case MonoidSpec::Kind::free:
            return u;
        case MonoidSpec::Kind::presented: {
            if (!is_free_commutative(spec))
                throw monoid_error("no normal form for this presentation (general word problem not supported)");
            Word out = u;
            std::sort(out.syms.begin(), out.syms.end());
            return out;
        }
        case MonoidSpec::Kind::product: {
            const std::size_t nl = spec.left_generator_count();
            Word lpart, rpart;
            for (Gen g : u.syms)
                (g < nl ? lpart : rpart).syms.push_back(g < nl ? g : g - nl);
            lpart = normal_form(spec.left(), lpart);
            rpart = normal_form(spec.right(), rpart);
            Word out;
            for (Gen g : lpart.syms) out.syms.push_back(g);
            for (Gen g : rpart.syms) out.syms.push_back(g + nl);
            return out;
        }
    }
    throw monoid_error("unreachable");
}

inline bool words_equal(const MonoidSpec& spec, const Word& u, const Word& v) {
    return normal_form(spec, u) == normal_form(spec, v);
}

// All words over the given generator subset in length-lexicographic order.
// When the spec's word problem is solved, each monoid element appears once,
// represented by its normal form.
inline std::vector<Word> enumerate_words(const MonoidSpec& spec, const std::vector<Gen>& gens,
                                         std::size_t max_len) {
    for (Gen g : gens)
        if (g >= spec.generator_count()) throw monoid_error("enumeration over unknown generator");
    const bool dedup = supports_normal_form(spec);
    std::set<Word> seen;
    std::vector<Word> out;
    std::vector<std::size_t> odo;
    for (std::size_t len = 0; len <= max_len; ++len) {
        if (len > 0 && gens.empty()) break;
        odo.assign(len, 0);
        while (true) {
            Word w;
            w.syms.reserve(len);
            for (std::size_t p : odo) w.syms.push_back(gens[p]);
            if (dedup) {
                Word nf = normal_form(spec, w);
                if (seen.insert(nf).second) out.push_back(std::move(nf));
            } else {
                out.push_back(std::move(w));
            }
            std::size_t pos = len;
            while (pos > 0 && odo[pos - 1] + 1 == gens.size()) odo[--pos] = 0;
            if (pos == 0) break;
            ++odo[pos - 1];
        }
    }
    return out;
}

inline std::vector<Word> enumerate_words(const MonoidSpec& spec, std::size_t max_len) {
    std::vector<Gen> gens(spec.generator_count());
    for (Gen g = 0; g < gens.size(); ++g) gens[g] = g;
    return enumerate_words(spec, gens, max_len);
}

// Finite relation set sufficient for checking that generator images extend
// to a homomorphism: presented relations, lifted component relations, and
// the cross commutators that make a product a product.
inline std::vector<Relation> defining_relations(const MonoidSpec& spec) {
    switch (spec.kind()) {
        case MonoidSpec::Kind::free:
            return {};
        case MonoidSpec::Kind::presented:
            return spec.relations();
        case MonoidSpec::Kind::product: {
            std::vector<Relation> out = defining_relations(spec.left());
            const std::size_t nl = spec.left_generator_count();
            for (Relation rel : defining_relations(spec.right())) {
                for (Gen& g : rel.lhs.syms) g += nl;
                for (Gen& g : rel.rhs.syms) g += nl;
                out.push_back(std::move(rel));
            }
            for (Gen l = 0; l < nl; ++l)
                for (Gen r = nl; r < spec.generator_count(); ++r)
                    out.push_back({Word{l, r}, Word{r, l}});
            return out;
        }
    }
    throw monoid_error("unreachable");
}

class MonoidMap {
  public:
    MonoidMap(MonoidSpec source, MonoidSpec target, std::vector<Word> images, bool anti = false)
        : source_(std::move(source)), target_(std::move(target)), images_(std::move(images)), anti_(anti) {
        if (images_.size() != source_.generator_count())
            throw monoid_error("map needs one image per source generator");
        for (const Word& img : images_) check_word(target_, img);
    }

    const MonoidSpec& source() const { return source_; }
    const MonoidSpec& target() const { return target_; }
    const Word& image(Gen g) const { return images_.at(g); }
    bool anti() const { return anti_; }

  private:
    MonoidSpec source_, target_;
    std::vector<Word> images_;
    bool anti_;
};

inline Word apply_map(const MonoidMap& map, const Word& u) {
    check_word(map.source(), u);
    Word out;
    if (map.anti()) {
        for (auto it = u.syms.rbegin(); it != u.syms.rend(); ++it)
            out = concat(out, map.image(*it));
    } else {
        for (Gen g : u.syms) out = concat(out, map.image(g));
    }
    return out;
}

inline std::string render_word(const MonoidSpec& spec, const Word& u) {
    if (u.empty()) return "ε";
    std::string out;
    for (std::size_t i = 0; i < u.size(); ++i) {
        if (i > 0) out += ' ';
        out += spec.generator_name(u.syms[i]);
    }
    return out;
}

inline Word parse_word(const MonoidSpec& spec, std::string_view text) {
    Word out;
    std::size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && (text[i] == ' ' || text[i] == '\t')) ++i;
        if (i == text.size()) break;
        std::size_t j = i;
        while (j < text.size() && text[j] != ' ' && text[j] != '\t') ++j;
        const std::string_view name = text.substr(i, j - i);
        if (name != "ε") {
            const auto g = spec.find_generator(name);
            if (!g) throw monoid_error("unknown generator \"" + std::string(name) + "\"");
            out.syms.push_back(*g);
        }
        i = j;
    }
    return out;
}

}  // namespace moga
