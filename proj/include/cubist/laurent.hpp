#pragma once

// Exact arithmetic for integer Laurent polynomials in one variable q,
// truncated Laurent series, and quantum integers.  This is the scalar
// layer under every matrix in the library.

#include <cstdint>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace cubist {

using coeff_t = long long;

namespace detail {

inline coeff_t checked_add(coeff_t a, coeff_t b) {
    coeff_t r;
    if (__builtin_add_overflow(a, b, &r))
        throw std::overflow_error("laurent: coefficient addition overflow");
    return r;
}

inline coeff_t checked_mul(coeff_t a, coeff_t b) {
    coeff_t r;
    if (__builtin_mul_overflow(a, b, &r))
        throw std::overflow_error("laurent: coefficient multiplication overflow");
    return r;
}

} // namespace detail

/// An integer Laurent polynomial, stored as sorted (exponent, coefficient)
/// pairs with no zero coefficients.  All arithmetic is exact; coefficient
/// overflow throws instead of wrapping.
class LaurentPoly {
public:
    using term_list = std::vector<std::pair<int, coeff_t>>;

    LaurentPoly() = default;

    explicit LaurentPoly(coeff_t constant) {
        if (constant != 0) terms_.emplace_back(0, constant);
    }

    static LaurentPoly monomial(coeff_t c, int exponent) {
        LaurentPoly p;
        if (c != 0) p.terms_.emplace_back(exponent, c);
        return p;
    }

    static LaurentPoly from_terms(term_list terms) {
        std::map<int, coeff_t> acc;
        for (auto& [e, c] : terms) acc[e] = detail::checked_add(acc[e], c);
        LaurentPoly p;
        for (auto& [e, c] : acc)
            if (c != 0) p.terms_.emplace_back(e, c);
        return p;
    }

    const term_list& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    coeff_t coefficient(int exponent) const {
        for (auto& [e, c] : terms_)
            if (e == exponent) return c;
        return 0;
    }

    int min_exponent() const {
        if (terms_.empty()) throw std::domain_error("min_exponent of zero polynomial");
        return terms_.front().first;
    }

    int max_exponent() const {
        if (terms_.empty()) throw std::domain_error("max_exponent of zero polynomial");
        return terms_.back().first;
    }

    friend LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b) {
        LaurentPoly r;
        r.terms_.reserve(a.terms_.size() + b.terms_.size());
        std::size_t i = 0, j = 0;
        while (i < a.terms_.size() || j < b.terms_.size()) {
            if (j == b.terms_.size() ||
                (i < a.terms_.size() && a.terms_[i].first < b.terms_[j].first)) {
                r.terms_.push_back(a.terms_[i++]);
            } else if (i == a.terms_.size() || b.terms_[j].first < a.terms_[i].first) {
                r.terms_.push_back(b.terms_[j++]);
            } else {
                coeff_t c = detail::checked_add(a.terms_[i].second, b.terms_[j].second);
                if (c != 0) r.terms_.emplace_back(a.terms_[i].first, c);
                ++i, ++j;
            }
        }
        return r;
    }

    friend LaurentPoly operator-(const LaurentPoly& a) {
        LaurentPoly r = a;
        for (auto& [e, c] : r.terms_) c = detail::checked_mul(c, -1);
        return r;
    }

    friend LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b) {
        return a + (-b);
    }

    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
        std::map<int, coeff_t> acc;
        for (auto& [ea, ca] : a.terms_)
            for (auto& [eb, cb] : b.terms_)
                acc[ea + eb] = detail::checked_add(acc[ea + eb], detail::checked_mul(ca, cb));
        LaurentPoly r;
        for (auto& [e, c] : acc)
            if (c != 0) r.terms_.emplace_back(e, c);
        return r;
    }

    LaurentPoly& operator+=(const LaurentPoly& b) { return *this = *this + b; }
    LaurentPoly& operator-=(const LaurentPoly& b) { return *this = *this - b; }
    LaurentPoly& operator*=(const LaurentPoly& b) { return *this = *this * b; }

    friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
        return a.terms_ == b.terms_;
    }
    friend bool operator!=(const LaurentPoly& a, const LaurentPoly& b) { return !(a == b); }

    /// q -> -q: negates coefficients of odd-exponent terms.
    LaurentPoly substitute_neg_q() const {
        LaurentPoly r = *this;
        for (auto& [e, c] : r.terms_)
            if (e % 2 != 0) c = detail::checked_mul(c, -1);
        return r;
    }

    /// q -> q^(-1): reverses exponents.
    LaurentPoly substitute_inv_q() const {
        LaurentPoly r;
        r.terms_.reserve(terms_.size());
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it)
            r.terms_.emplace_back(-it->first, it->second);
        return r;
    }

    /// Multiply by q^k.
    LaurentPoly shifted(int k) const {
        LaurentPoly r = *this;
        for (auto& [e, c] : r.terms_) e += k;
        return r;
    }

    coeff_t evaluate_at_one() const {
        coeff_t s = 0;
        for (auto& [e, c] : terms_) s = detail::checked_add(s, c);
        return s;
    }

    std::string to_string() const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (auto& [e, c] : terms_) {
            coeff_t a = c;
            if (first) {
                if (a < 0) { os << "-"; a = -a; }
            } else {
                os << (a < 0 ? " - " : " + ");
                if (a < 0) a = -a;
            }
            if (e == 0) {
                os << a;
            } else {
                if (a != 1) os << a << "*";
                os << "q";
                if (e != 1) os << "^" << e;
            }
            first = false;
        }
        return os.str();
    }

private:
    term_list terms_; // ascending exponent, nonzero coefficients
};

/// A Laurent series known exactly modulo q^(cutoff+1).  Two series are
/// comparable and combinable only at equal cutoff; mixing cutoffs throws.
class TruncSeries {
public:
    TruncSeries() : cutoff_(0) {}

    explicit TruncSeries(int cutoff) : cutoff_(cutoff) {}

    TruncSeries(const LaurentPoly& p, int cutoff) : cutoff_(cutoff) {
        for (auto& [e, c] : p.terms())
            if (e <= cutoff) terms_.emplace_back(e, c);
    }

    int cutoff() const { return cutoff_; }
    const LaurentPoly::term_list& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    coeff_t coefficient(int exponent) const {
        for (auto& [e, c] : terms_)
            if (e == exponent) return c;
        return 0;
    }

    LaurentPoly as_poly() const {
        LaurentPoly::term_list t = terms_;
        return LaurentPoly::from_terms(std::move(t));
    }

    friend TruncSeries operator+(const TruncSeries& a, const TruncSeries& b) {
        require_same_cutoff(a, b);
        return TruncSeries(a.as_poly() + b.as_poly(), a.cutoff_);
    }

    friend TruncSeries operator-(const TruncSeries& a, const TruncSeries& b) {
        require_same_cutoff(a, b);
        return TruncSeries(a.as_poly() - b.as_poly(), a.cutoff_);
    }

    friend TruncSeries operator*(const TruncSeries& a, const TruncSeries& b) {
        require_same_cutoff(a, b);
        return TruncSeries(a.as_poly() * b.as_poly(), a.cutoff_);
    }

    friend TruncSeries operator*(const LaurentPoly& a, const TruncSeries& b) {
        return TruncSeries(a * b.as_poly(), b.cutoff_);
    }

    TruncSeries substitute_neg_q() const {
        return TruncSeries(as_poly().substitute_neg_q(), cutoff_);
    }

    TruncSeries shifted(int k) const {
        return TruncSeries(as_poly().shifted(k), cutoff_);
    }

    bool equals(const TruncSeries& b) const {
        require_same_cutoff(*this, b);
        return terms_ == b.terms_;
    }

    friend bool operator==(const TruncSeries& a, const TruncSeries& b) { return a.equals(b); }
    friend bool operator!=(const TruncSeries& a, const TruncSeries& b) { return !a.equals(b); }

    std::string to_string() const {
        std::ostringstream os;
        os << as_poly().to_string() << " + O(q^" << (cutoff_ + 1) << ")";
        return os.str();
    }

private:
    static void require_same_cutoff(const TruncSeries& a, const TruncSeries& b) {
        if (a.cutoff_ != b.cutoff_)
            throw std::invalid_argument("TruncSeries: mixed cutoffs " +
                                        std::to_string(a.cutoff_) + " and " +
                                        std::to_string(b.cutoff_));
    }

    int cutoff_;
    LaurentPoly::term_list terms_;
};

inline TruncSeries truncate(const LaurentPoly& p, int cutoff) {
    return TruncSeries(p, cutoff);
}

/// [n]_q = (q^n - q^(-n)) / (q - q^(-1)); [0] = 0 and [-n] = -[n].
inline LaurentPoly quantum_integer(long long n) {
    if (n == 0) return LaurentPoly();
    bool neg = n < 0;
    long long m = neg ? -n : n;
    LaurentPoly::term_list terms;
    for (long long e = 1 - m; e <= m - 1; e += 2)
        terms.emplace_back(static_cast<int>(e), neg ? -1 : 1);
    return LaurentPoly::from_terms(std::move(terms));
}

/// Expansion of (1 - q^2)^(1-r) modulo q^(cutoff+1); the coefficient of
/// q^(2k) is binomial(k + r - 2, r - 2).
inline TruncSeries geometric_power(int r, int cutoff) {
    if (r < 1) throw std::invalid_argument("geometric_power: r must be >= 1");
    if (cutoff < 0) throw std::invalid_argument("geometric_power: negative cutoff");
    LaurentPoly::term_list terms;
    for (int k = 0; 2 * k <= cutoff; ++k) {
        if (r == 1 && k > 0) break; // (1-q^2)^0 = 1
        // binomial(k + r - 2, r - 2) computed incrementally
        coeff_t b = 1;
        for (int t = 1; t <= r - 2; ++t)
            b = detail::checked_mul(b, k + t) / t;
        terms.emplace_back(2 * k, b);
    }
    return TruncSeries(LaurentPoly::from_terms(std::move(terms)), cutoff);
}

} // namespace cubist
