#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace coho {

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Input data failed a structural identity (bad descriptor, wrong dimension, ...).
struct validation_error : error {
    using error::error;
};

// An operation was called outside its stated domain.
struct precondition_error : error {
    using error::error;
};

// A combination of inputs the implementation declines to handle (explicit contract escape).
struct unsupported_error : error {
    using error::error;
};

struct parse_error : error {
    using error::error;
};

// Exact arithmetic left the 64-bit range. Thrown instead of wrapping, never ignored.
struct overflow_error : error {
    using error::error;
};

namespace detail {

inline std::int64_t narrow(__int128 v, const char* what) {
    if (v > __int128(INT64_MAX) || v < __int128(INT64_MIN))
        throw overflow_error(std::string("integer overflow in ") + what);
    return static_cast<std::int64_t>(v);
}

inline std::int64_t mul_i64(std::int64_t a, std::int64_t b) {
    return narrow(__int128(a) * __int128(b), "multiply");
}

inline std::int64_t add_i64(std::int64_t a, std::int64_t b) {
    return narrow(__int128(a) + __int128(b), "add");
}

} // namespace detail

/// Exact rational on 64-bit numerator/denominator, always normalized with den > 0.
class Rat {
public:
    Rat() = default;
    Rat(std::int64_t n) : num_(n), den_(1) {}
    Rat(std::int64_t n, std::int64_t d) : num_(n), den_(d) { normalize(); }

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    bool is_integer() const { return den_ == 1; }
    int sign() const { return num_ > 0 ? 1 : num_ < 0 ? -1 : 0; }

    std::int64_t as_integer() const {
        if (den_ != 1) throw error("rational " + str() + " is not an integer");
        return num_;
    }

    friend Rat operator+(const Rat& a, const Rat& b) {
        __int128 n = __int128(a.num_) * b.den_ + __int128(b.num_) * a.den_;
        __int128 d = __int128(a.den_) * b.den_;
        return make128(n, d);
    }
    friend Rat operator-(const Rat& a, const Rat& b) {
        __int128 n = __int128(a.num_) * b.den_ - __int128(b.num_) * a.den_;
        __int128 d = __int128(a.den_) * b.den_;
        return make128(n, d);
    }
    friend Rat operator*(const Rat& a, const Rat& b) {
        return make128(__int128(a.num_) * b.num_, __int128(a.den_) * b.den_);
    }
    friend Rat operator/(const Rat& a, const Rat& b) {
        if (b.num_ == 0) throw error("rational division by zero");
        return make128(__int128(a.num_) * b.den_, __int128(a.den_) * b.num_);
    }
    Rat operator-() const {
        Rat r;
        r.num_ = -num_;
        r.den_ = den_;
        return r;
    }
    Rat& operator+=(const Rat& o) { return *this = *this + o; }
    Rat& operator-=(const Rat& o) { return *this = *this - o; }
    Rat& operator*=(const Rat& o) { return *this = *this * o; }
    Rat& operator/=(const Rat& o) { return *this = *this / o; }

    friend bool operator==(const Rat& a, const Rat& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }
    friend bool operator<(const Rat& a, const Rat& b) {
        return __int128(a.num_) * b.den_ < __int128(b.num_) * a.den_;
    }
    friend bool operator>(const Rat& a, const Rat& b) { return b < a; }
    friend bool operator<=(const Rat& a, const Rat& b) { return !(b < a); }
    friend bool operator>=(const Rat& a, const Rat& b) { return !(a < b); }

    std::string str() const {
        if (den_ == 1) return std::to_string(num_);
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

    /// Parses "p" or "p/q".
    static Rat parse(const std::string& s) {
        auto slash = s.find('/');
        try {
            if (slash == std::string::npos) return Rat(std::stoll(s));
            return Rat(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
        } catch (const std::exception&) {
            throw parse_error("cannot parse rational from '" + s + "'");
        }
    }

private:
    static Rat make128(__int128 n, __int128 d) {
        if (d == 0) throw error("rational with zero denominator");
        if (d < 0) {
            n = -n;
            d = -d;
        }
        __int128 g = gcd128(n < 0 ? -n : n, d);
        if (g > 1) {
            n /= g;
            d /= g;
        }
        Rat r;
        r.num_ = detail::narrow(n, "rational numerator");
        r.den_ = detail::narrow(d, "rational denominator");
        return r;
    }

    static __int128 gcd128(__int128 a, __int128 b) {
        while (b != 0) {
            __int128 t = a % b;
            a = b;
            b = t;
        }
        return a == 0 ? 1 : a;
    }

    void normalize() {
        Rat r = make128(num_, den_);
        num_ = r.num_;
        den_ = r.den_;
    }

    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

using QVec = std::vector<Rat>;
using IVec = std::vector<std::int64_t>;

inline QVec to_qvec(const IVec& v) {
    QVec q(v.size());
    for (size_t i = 0; i < v.size(); ++i) q[i] = Rat(v[i]);
    return q;
}

inline std::string str(const QVec& v) {
    std::string s = "[";
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) s += ",";
        s += v[i].str();
    }
    return s + "]";
}

inline std::string str(const IVec& v) {
    std::string s = "[";
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(v[i]);
    }
    return s + "]";
}

} // namespace coho
