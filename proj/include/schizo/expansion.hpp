#pragma once

// Truncated base-b expansions of square roots, exact eventually-periodic
// expansions of rationals, and the text form shared by the CLI and the
// golden files.
//
// Text grammar: [sign] integer-digits ['.' fraction-digits] ['e' ('+'|'-') exp] ['_' base]
// Whitespace only groups digits for display and is dropped by parse(). Digits
// above 9 are 'a'..'z' in bases up to 36; larger bases write every digit in
// decimal and separate digits with ':'. The exponent always carries a sign so
// that 'e' stays usable as the digit 14.

#include <schizo/error.hpp>
#include <schizo/numeric.hpp>
#include <schizo/recurrence.hpp>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace schizo {

using Digit = std::uint32_t;

/// Positional numeral: digits most-significant first, the radix point after
/// the first `radix_offset` digits.
struct DigitString {
    Base base = 10;
    std::vector<Digit> digits{0};
    std::int64_t radix_offset = 1;
    bool negative = false;

    [[nodiscard]] std::size_t integer_digits() const {
        return static_cast<std::size_t>(radix_offset);
    }
    [[nodiscard]] std::size_t fractional_digits() const {
        return digits.size() - integer_digits();
    }

    friend bool operator==(const DigitString&, const DigitString&) = default;
};

/// Checks the DigitString invariants; throws precondition_error.
inline void validate(const DigitString& ds) {
    require_base(ds.base);
    detail::require(!ds.digits.empty(), "digit string has no digits");
    detail::require(ds.radix_offset >= 1, "radix offset must be at least 1");
    detail::require(static_cast<std::size_t>(ds.radix_offset) <= ds.digits.size(),
                    "radix offset beyond the last digit");
    detail::require(ds.radix_offset == 1 || ds.digits.front() != 0,
                    "integer part has a leading zero");
    for (Digit d : ds.digits) {
        detail::require(d < ds.base, "digit out of range for base");
    }
}

inline Rational value(const DigitString& ds) {
    Integer mantissa = 0;
    for (Digit d : ds.digits) {
        mantissa = mantissa * ds.base + d;
    }
    const auto frac = static_cast<std::int64_t>(ds.digits.size()) - ds.radix_offset;
    Rational v = Rational(mantissa) * rational_pow(ds.base, -frac);
    return ds.negative ? -v : v;
}

/// Base-b digits of x, most significant first; zero is [0].
inline std::vector<Digit> to_digits(Natural x, Base base) {
    require_base(base);
    detail::require(x >= 0, "to_digits of a negative number");
    std::vector<Digit> out;
    if (x == 0) {
        out.push_back(0);
        return out;
    }
    Integer q;
    Integer r;
    const Integer b = base;
    while (x != 0) {
        boost::multiprecision::divide_qr(x, b, q, r);
        out.push_back(r.convert_to<Digit>());
        x = std::move(q);
    }
    std::reverse(out.begin(), out.end());
    return out;
}

enum class Rounding { truncate, nearest };

/// sqrt(radicand) to `fractional` base-b digits after the point.
inline DigitString sqrt_expansion(const Natural& radicand, Base base, std::size_t fractional,
                                  Rounding rounding = Rounding::truncate) {
    require_base(base);
    detail::require(radicand >= 0, "square root of a negative number");
    const Natural scaled = radicand * ipow(base, 2 * static_cast<std::uint64_t>(fractional));
    Natural root = isqrt(scaled);
    if (rounding == Rounding::nearest) {
        // sqrt(scaled) >= root + 1/2  <=>  4*scaled >= (2*root + 1)^2; equality is impossible.
        const Natural twice = 2 * root + 1;
        if (4 * scaled > twice * twice) {
            ++root;
        }
    }
    DigitString ds;
    ds.base = base;
    ds.digits = to_digits(root, base);
    if (ds.digits.size() <= fractional) {
        ds.digits.insert(ds.digits.begin(), fractional + 1 - ds.digits.size(), 0);
    }
    ds.radix_offset = static_cast<std::int64_t>(ds.digits.size() - fractional);
    return ds;
}

/// Number of base-b digits in floor(sqrt(radicand)).
inline std::size_t sqrt_integer_digits(const Natural& radicand, Base base) {
    return to_digits(isqrt(radicand), base).size();
}

/// sqrt(radicand) to `significand` base-b digits in total.
inline DigitString sqrt_significant(const Natural& radicand, Base base, std::size_t significand,
                                    Rounding rounding = Rounding::truncate) {
    const std::size_t whole = sqrt_integer_digits(radicand, base);
    if (significand < whole) {
        throw precondition_error("precision " + std::to_string(significand) +
                                 " is below the " + std::to_string(whole) +
                                 " integer digits of the square root");
    }
    DigitString ds = sqrt_expansion(radicand, base, significand - whole, rounding);
    if (ds.digits.size() > significand && ds.fractional_digits() > 0) {
        // rounding carried into a new leading digit; the dropped digit is a zero
        ds.digits.pop_back();
    }
    return ds;
}

/// sqrt(f_b(n)) truncated to `fractional` digits after the point; n must be odd.
inline DigitString sqrt_digits(Base base, std::uint64_t n, std::size_t fractional,
                               Rounding rounding = Rounding::truncate) {
    require_base(base);
    detail::require(n % 2 == 1, "n must be odd");
    return sqrt_expansion(f_closed(base, n), base, fractional, rounding);
}

/// Exact expansion integer_part . preperiod (period)*
struct PeriodicExpansion {
    Base base = 10;
    Natural integer_part = 0;
    std::vector<Digit> preperiod;
    std::vector<Digit> period{0};

    friend bool operator==(const PeriodicExpansion&, const PeriodicExpansion&) = default;
};

/// Shortest unit whose repetition reproduces `cycle` (checked over divisor lengths).
inline std::vector<Digit> minimal_period(std::span<const Digit> cycle) {
    const std::size_t n = cycle.size();
    for (std::size_t p = 1; p < n; ++p) {
        if (n % p != 0) {
            continue;
        }
        bool repeats = true;
        for (std::size_t i = p; i < n && repeats; ++i) {
            repeats = cycle[i] == cycle[i - p];
        }
        if (repeats) {
            return {cycle.begin(), cycle.begin() + static_cast<std::ptrdiff_t>(p)};
        }
    }
    return {cycle.begin(), cycle.end()};
}

namespace detail {

// Moves preperiod digits into the period while they coincide with its tail.
inline void shorten_preperiod(PeriodicExpansion& pe) {
    while (!pe.preperiod.empty() && pe.preperiod.back() == pe.period.back()) {
        std::rotate(pe.period.rbegin(), pe.period.rbegin() + 1, pe.period.rend());
        pe.preperiod.pop_back();
    }
}

}  // namespace detail

/// Long division of q >= 0 in base b. Terminating expansions get period [0].
inline PeriodicExpansion rational_expansion(Base base, const Rational& q) {
    require_base(base);
    detail::require(q.sign() >= 0, "rational_expansion of a negative number");
    PeriodicExpansion pe;
    pe.base = base;
    pe.integer_part = q.floor();
    const Integer& den = q.denominator();
    Integer rem = q.numerator() - pe.integer_part * den;

    std::map<Integer, std::size_t> seen;
    std::vector<Digit> digits;
    Integer digit;
    while (seen.find(rem) == seen.end()) {
        seen.emplace(rem, digits.size());
        rem *= base;
        boost::multiprecision::divide_qr(Integer(rem), den, digit, rem);
        digits.push_back(digit.convert_to<Digit>());
    }
    const std::size_t start = seen.at(rem);
    pe.preperiod.assign(digits.begin(), digits.begin() + static_cast<std::ptrdiff_t>(start));
    const std::span<const Digit> cycle(digits.data() + start, digits.size() - start);
    pe.period = minimal_period(cycle);
    detail::shorten_preperiod(pe);
    return pe;
}

/// Like rational_expansion, but a terminating expansion of q > 0 is written as
/// the limit from below (0.5 -> 0.4999...). This is the digit string of any
/// quantity approaching q from below.
inline PeriodicExpansion rational_expansion_from_below(Base base, const Rational& q) {
    detail::require(q.sign() > 0, "rational_expansion_from_below needs q > 0");
    PeriodicExpansion pe = rational_expansion(base, q);
    if (pe.period.size() != 1 || pe.period.front() != 0) {
        return pe;
    }
    if (pe.preperiod.empty()) {
        pe.integer_part -= 1;
    } else {
        pe.preperiod.back() -= 1;
    }
    pe.period = {base - 1};
    detail::shorten_preperiod(pe);
    return pe;
}

inline Rational value(const PeriodicExpansion& pe) {
    Integer pre = 0;
    for (Digit d : pe.preperiod) {
        pre = pre * pe.base + d;
    }
    Integer cyc = 0;
    for (Digit d : pe.period) {
        cyc = cyc * pe.base + d;
    }
    const Integer cycle_scale = ipow(pe.base, pe.period.size()) - 1;
    const Rational fraction = (Rational(pre) + Rational(cyc, cycle_scale)) *
                              rational_pow(pe.base, -static_cast<std::int64_t>(pe.preperiod.size()));
    return Rational(pe.integer_part) + fraction;
}

/// Integer digits followed by fractional digits, `count` digits in total.
inline std::vector<Digit> positional_digits(const PeriodicExpansion& pe, std::size_t count) {
    std::vector<Digit> out = to_digits(pe.integer_part, pe.base);
    out.reserve(std::max(count, out.size()));
    for (Digit d : pe.preperiod) {
        if (out.size() >= count) {
            break;
        }
        out.push_back(d);
    }
    for (std::size_t i = 0; out.size() < count; ++i) {
        out.push_back(pe.period[i % pe.period.size()]);
    }
    out.resize(std::min(out.size(), count));
    return out;
}

// ---------------------------------------------------------------------------
// Text form

enum class Notation { positional, scientific, automatic };

struct RenderOptions {
    std::size_t group = 10;           ///< fractional digits per group
    std::size_t groups_per_row = 5;   ///< groups per output line
    Notation notation = Notation::automatic;
    bool base_suffix = true;          ///< append "_<base>"
};

inline char digit_char(Digit d) {
    return d < 10 ? static_cast<char>('0' + d) : static_cast<char>('a' + (d - 10));
}

inline std::string render(const DigitString& ds, const RenderOptions& options = {}) {
    validate(ds);
    detail::require(options.group >= 1, "group must be at least 1");
    detail::require(options.groups_per_row >= 1, "groups_per_row must be at least 1");

    std::size_t lead = 0;  // leading zeros skipped by scientific notation
    bool all_zero = std::all_of(ds.digits.begin(), ds.digits.end(), [](Digit d) { return d == 0; });
    if (!all_zero) {
        while (ds.digits[lead] == 0) {
            ++lead;
        }
    }
    const std::int64_t exponent = ds.radix_offset - 1 - static_cast<std::int64_t>(lead);
    bool scientific = options.notation == Notation::scientific;
    if (options.notation == Notation::automatic) {
        scientific = exponent >= 6 || exponent < -5;
    }

    std::span<const Digit> whole;
    std::span<const Digit> fraction;
    const std::span<const Digit> all(ds.digits);
    if (scientific) {
        whole = all.subspan(lead, 1);
        fraction = all.subspan(lead + 1);
    } else {
        whole = all.first(ds.integer_digits());
        fraction = all.subspan(ds.integer_digits());
    }

    const bool colon = ds.base > 36;
    auto put_run = [&](std::string& out, std::span<const Digit> run) {
        for (std::size_t i = 0; i < run.size(); ++i) {
            if (colon) {
                if (i != 0) {
                    out += ':';
                }
                out += std::to_string(run[i]);
            } else {
                out += digit_char(run[i]);
            }
        }
    };

    std::string out;
    if (ds.negative) {
        out += '-';
    }
    put_run(out, whole);
    if (!fraction.empty()) {
        out += '.';
        std::size_t index = 0;
        for (std::size_t pos = 0; pos < fraction.size(); pos += options.group, ++index) {
            if (index != 0) {
                out += (index % options.groups_per_row == 0) ? '\n' : ' ';
            }
            put_run(out, fraction.subspan(pos, std::min(options.group, fraction.size() - pos)));
        }
    }
    if (scientific) {
        out += exponent < 0 ? "e-" : "e+";
        out += std::to_string(exponent < 0 ? -exponent : exponent);
    }
    if (options.base_suffix) {
        out += '_';
        out += std::to_string(ds.base);
    }
    return out;
}

namespace detail {

inline std::uint64_t parse_decimal(std::string_view text, const char* what) {
    std::uint64_t v = 0;
    const auto* first = text.data();
    const auto* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (text.empty() || ec != std::errc() || ptr != last) {
        throw precondition_error(std::string("malformed ") + what + ": '" + std::string(text) + "'");
    }
    return v;
}

inline void trim_colons(std::string& s) {
    while (!s.empty() && s.back() == ':') {
        s.pop_back();
    }
    while (!s.empty() && s.front() == ':') {
        s.erase(s.begin());
    }
}

inline std::vector<Digit> parse_run(std::string_view run, Base base, bool colon) {
    std::vector<Digit> out;
    if (colon) {
        std::size_t pos = 0;
        while (pos <= run.size()) {
            const std::size_t next = std::min(run.find(':', pos), run.size());
            const auto v = parse_decimal(run.substr(pos, next - pos), "digit");
            if (v >= base) {
                throw precondition_error("digit " + std::to_string(v) + " invalid for base " +
                                         std::to_string(base));
            }
            out.push_back(static_cast<Digit>(v));
            pos = next + 1;
        }
        return out;
    }
    for (char c : run) {
        Digit d = 0;
        if (c >= '0' && c <= '9') {
            d = static_cast<Digit>(c - '0');
        } else if (c >= 'a' && c <= 'z') {
            d = static_cast<Digit>(c - 'a' + 10);
        } else if (c >= 'A' && c <= 'Z') {
            d = static_cast<Digit>(c - 'A' + 10);
        } else {
            throw precondition_error(std::string("invalid digit character '") + c + "'");
        }
        if (d >= base) {
            throw precondition_error(std::string("digit '") + c + "' invalid for base " +
                                     std::to_string(base));
        }
        out.push_back(d);
    }
    return out;
}

}  // namespace detail

/// Inverse of render(); whitespace is ignored.
inline DigitString parse(std::string_view text, Base base) {
    require_base(base);
    const bool colon = base > 36;

    std::string s;
    for (char c : text) {
        if (std::isspace(static_cast<unsigned char>(c)) != 0) {
            if (colon && !s.empty() && s.back() != ':') {
                s += ':';
            }
        } else {
            s += c;
        }
    }
    detail::trim_colons(s);

    if (const auto pos = s.rfind('_'); pos != std::string::npos) {
        const auto suffix = detail::parse_decimal(std::string_view(s).substr(pos + 1), "base suffix");
        if (suffix != base) {
            throw precondition_error("base suffix _" + std::to_string(suffix) +
                                     " does not match base " + std::to_string(base));
        }
        s.resize(pos);
        detail::trim_colons(s);
    }

    std::int64_t exponent = 0;
    for (std::size_t i = 0; i + 1 < s.size(); ++i) {
        if (s[i] == 'e' && (s[i + 1] == '+' || s[i + 1] == '-')) {
            const auto magnitude = detail::parse_decimal(std::string_view(s).substr(i + 2), "exponent");
            exponent = static_cast<std::int64_t>(magnitude);
            if (s[i + 1] == '-') {
                exponent = -exponent;
            }
            s.resize(i);
            detail::trim_colons(s);
            break;
        }
    }

    DigitString ds;
    ds.base = base;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        ds.negative = s.front() == '-';
        s.erase(s.begin());
    }

    const auto point = s.find('.');
    if (point != std::string::npos && s.find('.', point + 1) != std::string::npos) {
        throw precondition_error("more than one radix point");
    }
    std::string whole = s.substr(0, point);
    std::string fraction = point == std::string::npos ? std::string() : s.substr(point + 1);
    detail::trim_colons(whole);
    detail::trim_colons(fraction);
    if (whole.empty() || (point != std::string::npos && fraction.empty())) {
        throw precondition_error("malformed radix point in '" + std::string(text) + "'");
    }

    ds.digits = detail::parse_run(whole, base, colon);
    const auto whole_count = static_cast<std::int64_t>(ds.digits.size());
    if (!fraction.empty()) {
        const auto tail = detail::parse_run(fraction, base, colon);
        ds.digits.insert(ds.digits.end(), tail.begin(), tail.end());
    }

    ds.radix_offset = whole_count + exponent;
    if (ds.radix_offset < 1) {
        ds.digits.insert(ds.digits.begin(), static_cast<std::size_t>(1 - ds.radix_offset), 0);
        ds.radix_offset = 1;
    }
    if (static_cast<std::size_t>(ds.radix_offset) > ds.digits.size()) {
        ds.digits.resize(static_cast<std::size_t>(ds.radix_offset), 0);
    }
    while (ds.radix_offset > 1 && ds.digits.front() == 0) {
        ds.digits.erase(ds.digits.begin());
        --ds.radix_offset;
    }
    return ds;
}

}  // namespace schizo
