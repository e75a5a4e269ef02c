#pragma once

// Conversion between base b and base b^m by regrouping m digits at a time,
// and the check that a pattern survives the conversion.

#include <schizo/blocks.hpp>
#include <schizo/error.hpp>
#include <schizo/expansion.hpp>
#include <schizo/numeric.hpp>
#include <schizo/recurrence.hpp>

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

namespace schizo {

struct RegroupResult {
    DigitString digits;
    std::size_t dropped = 0;  ///< trailing base-b fractional digits that did not fill a group
};

inline Base power_base(Base base, std::size_t m) {
    require_base(base);
    detail::require(m >= 1, "power must be at least 1");
    std::uint64_t target = 1;
    for (std::size_t i = 0; i < m; ++i) {
        target *= base;
        detail::require(target <= std::numeric_limits<Base>::max(), "base^m does not fit a digit");
    }
    return static_cast<Base>(target);
}

/// Groups integer digits leftward and fractional digits rightward from the
/// radix point; a trailing partial fractional group is dropped.
inline RegroupResult regroup(const DigitString& ds, std::size_t m) {
    validate(ds);
    const Base target = power_base(ds.base, m);

    std::vector<Digit> whole(ds.digits.begin(), ds.digits.begin() + ds.radix_offset);
    const std::vector<Digit> fraction(ds.digits.begin() + ds.radix_offset, ds.digits.end());
    if (const auto extra = whole.size() % m; extra != 0) {
        whole.insert(whole.begin(), m - extra, 0);
    }

    auto pack = [&](const std::vector<Digit>& src, std::size_t count, std::vector<Digit>& dst) {
        for (std::size_t g = 0; g < count; ++g) {
            std::uint64_t v = 0;
            for (std::size_t j = 0; j < m; ++j) {
                v = v * ds.base + src[g * m + j];
            }
            dst.push_back(static_cast<Digit>(v));
        }
    };

    RegroupResult out;
    out.digits.base = target;
    out.digits.negative = ds.negative;
    out.digits.digits.clear();
    pack(whole, whole.size() / m, out.digits.digits);
    out.digits.radix_offset = static_cast<std::int64_t>(out.digits.digits.size());
    pack(fraction, fraction.size() / m, out.digits.digits);
    out.dropped = fraction.size() % m;

    while (out.digits.radix_offset > 1 && out.digits.digits.front() == 0) {
        out.digits.digits.erase(out.digits.digits.begin());
        --out.digits.radix_offset;
    }
    return out;
}

/// Inverse of regroup: expands each base-b^m digit into m base-b digits.
inline DigitString ungroup(const DigitString& ds, Base base, std::size_t m) {
    validate(ds);
    detail::require(power_base(base, m) == ds.base, "digit string is not in base b^m");
    auto expand = [&](Digit d, std::vector<Digit>& dst) {
        std::vector<Digit> group(m, 0);
        for (std::size_t j = m; j-- > 0;) {
            group[j] = d % base;
            d /= base;
        }
        dst.insert(dst.end(), group.begin(), group.end());
    };
    DigitString out;
    out.base = base;
    out.negative = ds.negative;
    out.digits.clear();
    for (std::size_t i = 0; i < ds.digits.size(); ++i) {
        if (static_cast<std::int64_t>(i) == ds.radix_offset) {
            out.radix_offset = static_cast<std::int64_t>(out.digits.size());
        }
        expand(ds.digits[i], out.digits);
    }
    if (static_cast<std::size_t>(ds.radix_offset) == ds.digits.size()) {
        out.radix_offset = static_cast<std::int64_t>(out.digits.size());
    }
    while (out.radix_offset > 1 && out.digits.front() == 0) {
        out.digits.erase(out.digits.begin());
        --out.radix_offset;
    }
    return out;
}

/// Greatest m with floor(lambda_max / m) == 2.
inline std::size_t max_power(std::size_t lambda_max) {
    detail::require(lambda_max >= 2, "lambda_max must be at least 2");
    for (std::size_t m = lambda_max; m >= 1; --m) {
        if (lambda_max / m == 2) {
            return m;
        }
    }
    throw precondition_error("no m satisfies floor(" + std::to_string(lambda_max) + "/m) = 2");
}

struct PowerReport {
    std::size_t m = 1;
    Base target_base = 10;
    DigitString digits;                ///< regrouped expansion
    std::size_t dropped = 0;
    std::vector<DetectedBlock> runs;
    bool pattern_present = false;      ///< at least two qualifying runs
    bool within_bound = false;         ///< m == 1 or 1 < m <= max_power(lambda_max)
};

struct PersistenceReport {
    Base base = 10;
    std::uint64_t k = 1;
    std::size_t precision = 0;         ///< base-b significand digits examined
    std::size_t lambda_max = 0;        ///< longest repeating run detected in base b
    std::optional<std::size_t> bound;  ///< max_power(lambda_max), when defined
    std::vector<PowerReport> powers;
};

/// Regroups `precision` base-b digits of sqrt(f_b(2k-1)) into each base b^m
/// and runs the detector there.
inline PersistenceReport persistence_check(Base base, std::uint64_t k,
                                           const std::vector<std::size_t>& powers,
                                           std::size_t precision, const DetectorParams& params = {}) {
    require_base(base);
    detail::require(k >= 1, "k must be at least 1");
    const DigitString source = sqrt_significant(f_closed(base, 2 * k - 1), base, precision);

    PersistenceReport report;
    report.base = base;
    report.k = k;
    report.precision = precision;
    for (const auto& run : detect(source, params)) {
        report.lambda_max = std::max(report.lambda_max, run.run_length);
    }
    if (report.lambda_max >= 2) {
        try {
            report.bound = max_power(report.lambda_max);
        } catch (const precondition_error&) {
            report.bound.reset();
        }
    }

    for (std::size_t m : powers) {
        PowerReport entry;
        entry.m = m;
        RegroupResult regrouped = regroup(source, m);
        entry.target_base = regrouped.digits.base;
        entry.dropped = regrouped.dropped;
        entry.digits = std::move(regrouped.digits);
        entry.runs = detect(entry.digits, params);
        entry.pattern_present = entry.runs.size() >= 2;
        entry.within_bound = m == 1 || (report.bound && m <= *report.bound);
        report.powers.push_back(std::move(entry));
    }
    return report;
}

}  // namespace schizo
