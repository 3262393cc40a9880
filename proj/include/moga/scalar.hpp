#pragma once

// Scalar backends for all automata values: an exact arbitrary-precision
// rational (the default everywhere) and a tolerance-based double used only
// where entries are genuinely irrational (rotation matrices).
//
// The two backends never mix inside one computation; everything downstream
// is templated on the backend type, so a mixed expression does not compile.

#include <gmpxx.h>

#include <charconv>
#include <cmath>
#include <concepts>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace moga {

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct value_error : error {
    using error::error;
};

struct parse_error : error {
    using error::error;
};

struct dimension_error : error {
    using error::error;
};

struct monoid_error : error {
    using error::error;
};

struct automaton_error : error {
    using error::error;
};

// Exact rational scalar. Canonical form (reduced, positive denominator) is
// an invariant: every constructor and operator re-canonicalizes as needed,
// so str() output is unique per value.
class Rational {
  public:
    static constexpr const char* backend_name = "rational";

    Rational() : v_(0) {}
    Rational(int n) : v_(static_cast<long>(n)) {}
    Rational(long n) : v_(n) {}
    Rational(long long n) : v_(static_cast<long>(n)) {
        static_assert(sizeof(long long) == sizeof(long));
    }
    Rational(long num, long den) {
        if (den == 0) throw value_error("rational with zero denominator");
        v_ = mpq_class(num, den);
        v_.canonicalize();
    }
    explicit Rational(const mpq_class& v) : v_(v) { v_.canonicalize(); }

    static Rational parse(std::string_view text) {
        const std::string s(text);
        const auto slash = s.find('/');
        try {
            if (slash == std::string::npos) {
                check_integer_literal(s);
                return Rational(mpq_class(mpz_class(s)));
            }
            const std::string num = s.substr(0, slash);
            const std::string den = s.substr(slash + 1);
            check_integer_literal(num);
            check_integer_literal(den);
            mpz_class d(den);
            if (d == 0) throw parse_error("zero denominator in \"" + s + "\"");
            mpq_class q;
            q = mpz_class(num);
            q /= mpq_class(d);
            return Rational(q);
        } catch (const std::invalid_argument&) {
            throw parse_error("not a rational literal: \"" + s + "\"");
        }
    }

    std::string str() const { return v_.get_str(); }
    double to_double() const { return v_.get_d(); }
    const mpq_class& raw() const { return v_; }

    mpz_class numerator() const { return v_.get_num(); }
    mpz_class denominator() const { return v_.get_den(); }
    bool is_integer() const { return v_.get_den() == 1; }

    // Largest integer <= value; the pipeline's minimal-integer constants
    // are floor(x)+1 picks, all tiny, hence the slong guard.
    long floor_long() const {
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), v_.get_num_mpz_t(), v_.get_den_mpz_t());
        if (!q.fits_slong_p()) throw value_error("floor out of range");
        return q.get_si();
    }

    int sign() const { return sgn(v_); }

    friend Rational operator+(const Rational& a, const Rational& b) { return wrap(a.v_ + b.v_); }
    friend Rational operator-(const Rational& a, const Rational& b) { return wrap(a.v_ - b.v_); }
    friend Rational operator*(const Rational& a, const Rational& b) { return wrap(a.v_ * b.v_); }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.v_ == 0) throw value_error("rational division by zero");
        return wrap(a.v_ / b.v_);
    }
    Rational operator-() const { return wrap(-v_); }

    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.v_ == 0) throw value_error("rational division by zero");
        v_ /= o.v_;
        return *this;
    }

    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
    friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

  private:
    static Rational wrap(const mpq_class& v) {
        Rational r;
        r.v_ = v;  // mpq arithmetic keeps canonical form
        return r;
    }
    static void check_integer_literal(const std::string& s) {
        if (s.empty()) throw std::invalid_argument(s);
        std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
        if (i == s.size()) throw std::invalid_argument(s);
        for (; i < s.size(); ++i)
            if (s[i] < '0' || s[i] > '9') throw std::invalid_argument(s);
    }

    mpq_class v_;
};

inline Rational abs(const Rational& a) { return a.sign() < 0 ? -a : a; }

inline std::string scalar_str(const Rational& a) { return a.str(); }

// Approximate real scalar. All comparisons are tolerance-based with a fixed
// tau; arithmetic is plain IEEE double. Equality is deliberately not
// transitive, which is acceptable for the narrow fixtures this backend
// serves.
struct Approx {
    static constexpr const char* backend_name = "float";
    static constexpr double tolerance = 1e-9;

    double value = 0.0;

    Approx() = default;
    Approx(double v) : value(v) {}
    Approx(int v) : value(static_cast<double>(v)) {}
    Approx(long v) : value(static_cast<double>(v)) {}
    Approx(long long v) : value(static_cast<double>(v)) {}

    static Approx parse(std::string_view text) {
        double out = 0.0;
        const char* first = text.data();
        const char* last = text.data() + text.size();
        auto [ptr, ec] = std::from_chars(first, last, out);
        if (ec != std::errc() || ptr != last)
            throw parse_error("not a float literal: \"" + std::string(text) + "\"");
        return Approx(out);
    }

    std::string str() const {
        char buf[64];
        auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
        (void)ec;
        return std::string(buf, ptr);
    }

    double to_double() const { return value; }
    long floor_long() const { return static_cast<long>(std::floor(value)); }
    int sign() const { return value > tolerance ? 1 : (value < -tolerance ? -1 : 0); }

    friend Approx operator+(Approx a, Approx b) { return {a.value + b.value}; }
    friend Approx operator-(Approx a, Approx b) { return {a.value - b.value}; }
    friend Approx operator*(Approx a, Approx b) { return {a.value * b.value}; }
    friend Approx operator/(Approx a, Approx b) {
        if (b.value == 0.0) throw value_error("float division by zero");
        return {a.value / b.value};
    }
    Approx operator-() const { return {-value}; }

    Approx& operator+=(Approx o) { value += o.value; return *this; }
    Approx& operator-=(Approx o) { value -= o.value; return *this; }
    Approx& operator*=(Approx o) { value *= o.value; return *this; }
    Approx& operator/=(Approx o) { *this = *this / o; return *this; }

    friend bool operator==(Approx a, Approx b) { return std::fabs(a.value - b.value) <= tolerance; }
    friend bool operator!=(Approx a, Approx b) { return !(a == b); }
    friend bool operator<(Approx a, Approx b) { return a.value < b.value - tolerance; }
    friend bool operator>(Approx a, Approx b) { return a.value > b.value + tolerance; }
    friend bool operator<=(Approx a, Approx b) { return !(a > b); }
    friend bool operator>=(Approx a, Approx b) { return !(a < b); }
};

inline Approx abs(const Approx& a) { return {std::fabs(a.value)}; }

inline std::string scalar_str(const Approx& a) { return a.str(); }

template <class S>
concept ScalarBackend = requires(const S a, const S b) {
    S{};
    S{0};
    S{1};
    { a + b } -> std::convertible_to<S>;
    { a - b } -> std::convertible_to<S>;
    { a * b } -> std::convertible_to<S>;
    { a / b } -> std::convertible_to<S>;
    { -a } -> std::convertible_to<S>;
    { a == b } -> std::convertible_to<bool>;
    { a < b } -> std::convertible_to<bool>;
    { a.str() } -> std::convertible_to<std::string>;
    { a.floor_long() } -> std::convertible_to<long>;
    { a.sign() } -> std::convertible_to<int>;
    { S::parse(std::string_view{}) } -> std::convertible_to<S>;
    { S::backend_name } -> std::convertible_to<const char*>;
};

template <ScalarBackend S>
S scalar_parse(std::string_view text) {
    return S::parse(text);
}

// Least integer strictly greater than x; used for the pipeline constants
// that the construction only pins down as "any integer beyond this bound".
template <ScalarBackend S>
long least_integer_above(const S& x) {
    return x.floor_long() + 1;
}

}  // namespace moga
