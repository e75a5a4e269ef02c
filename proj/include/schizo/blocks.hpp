#pragma once

// Block structure of the base-b expansion of sqrt(f_b(2k-1)).
//
// Block 0 is the leading run of 1s. Block l >= 1 is produced by the l-th
// Taylor term: a non-repeating prefix followed by a repeating run. Positions
// are significand indices counted from the leading digit, ignoring the radix
// point.
//
// With F(l) = floor(log_b |tau1 tau3|) of term l and r = shift_params(b,l).r:
//
//   taylor_nonrep_len(l) = F(l) + 1 + r
//   nonrep_len(l)        = F(l) + 1 + r + eps(l)
//   lambda(l)            = 2k(l+1) - (F(l+1) + 1 + eps(l+1)) - sum_{i<l} lambda(i)
//   rep_len(l)           = 2k(l+1) - (F(l+1) + F(l)) - (eps(l+1) + eps(l)) - (r + 2)
//                          - sum_{i<l} lambda(i)

#include <schizo/error.hpp>
#include <schizo/expansion.hpp>
#include <schizo/numeric.hpp>
#include <schizo/taylor.hpp>

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace schizo {

struct BlockPrediction {
    std::size_t l = 0;
    std::size_t start_pos = 0;
    std::size_t nonrep_len = 0;
    std::size_t rep_len = 0;
    std::size_t lambda = 0;
    std::vector<Digit> period;

    [[nodiscard]] std::size_t end_pos() const { return start_pos + lambda; }
};

struct PatternPrediction {
    Base base = 10;
    std::uint64_t k = 1;
    std::vector<BlockPrediction> blocks;
    bool truncated = false;
    std::string truncation_reason;
};

/// Evaluates the block-length formulas for one (b, k), memoizing lambda prefix sums.
class BlockModel {
public:
    BlockModel(Base base, std::uint64_t k, EpsilonRule rule = EpsilonRule::borrow)
        : series_(base, k), rule_(rule) {}

    TaylorSeries& series() noexcept { return series_; }

    std::int64_t floor_log_term(std::size_t l) {
        return floor_log(series_.base(), series_.magnitude(l));
    }

    int epsilon(std::size_t l) { return series_.epsilon(l, rule_); }

    std::size_t taylor_nonrep_len(std::size_t l) {
        detail::require(l >= 1, "taylor_nonrep_len needs l >= 1");
        const auto r = static_cast<std::int64_t>(shift_params(series_.base(), l).r);
        return checked(floor_log_term(l) + 1 + r, l, "non-repeating length");
    }

    std::size_t nonrep_len(std::size_t l) {
        return checked(static_cast<std::int64_t>(taylor_nonrep_len(l)) + epsilon(l), l,
                       "non-repeating length");
    }

    std::size_t lambda(std::size_t l) {
        while (lambdas_.size() <= l) {
            const std::size_t next = lambdas_.size();
            const std::int64_t value = two_k() * static_cast<std::int64_t>(next + 1) -
                                       (floor_log_term(next + 1) + 1 + epsilon(next + 1)) -
                                       prefix(next);
            lambdas_.push_back(checked(value, next, "block length"));
        }
        return lambdas_[l];
    }

    std::size_t rep_len(std::size_t l) {
        detail::require(l >= 1, "rep_len needs l >= 1");
        const auto r = static_cast<std::int64_t>(shift_params(series_.base(), l).r);
        const std::int64_t value = two_k() * static_cast<std::int64_t>(l + 1) -
                                   (floor_log_term(l + 1) + floor_log_term(l)) -
                                   (epsilon(l + 1) + epsilon(l)) - (r + 2) - prefix(l);
        return checked(value, l, "repeating length");
    }

    /// Sum of lambda(i) for i < l.
    std::int64_t prefix(std::size_t l) {
        std::int64_t sum = 0;
        for (std::size_t i = 0; i < l; ++i) {
            sum += static_cast<std::int64_t>(lambda(i));
        }
        return sum;
    }

private:
    [[nodiscard]] std::int64_t two_k() const { return 2 * static_cast<std::int64_t>(series_.k()); }

    static std::size_t checked(std::int64_t value, std::size_t l, const char* what) {
        if (value <= 0) {
            throw degenerate_instance(l, std::string(what) + " of block " + std::to_string(l) +
                                             " is " + std::to_string(value) +
                                             "; the pattern is exhausted");
        }
        return static_cast<std::size_t>(value);
    }

    TaylorSeries series_;
    EpsilonRule rule_;
    std::vector<std::size_t> lambdas_;
};

inline std::size_t taylor_nonrep_len(Base base, std::uint64_t k, std::size_t l) {
    return BlockModel(base, k).taylor_nonrep_len(l);
}

inline std::size_t nonrep_len(Base base, std::uint64_t k, std::size_t l,
                              EpsilonRule rule = EpsilonRule::borrow) {
    return BlockModel(base, k, rule).nonrep_len(l);
}

inline std::size_t lambda(Base base, std::uint64_t k, std::size_t l,
                          EpsilonRule rule = EpsilonRule::borrow) {
    return BlockModel(base, k, rule).lambda(l);
}

inline std::size_t rep_len(Base base, std::uint64_t k, std::size_t l,
                           EpsilonRule rule = EpsilonRule::borrow) {
    return BlockModel(base, k, rule).rep_len(l);
}

/// Blocks 0..last. Stops at the first degenerate block and marks the result truncated.
inline PatternPrediction predict(Base base, std::uint64_t k, std::size_t last,
                                 EpsilonRule rule = EpsilonRule::borrow) {
    detail::require(k >= 2, "predict needs k >= 2");
    BlockModel model(base, k, rule);
    PatternPrediction out;
    out.base = base;
    out.k = k;
    std::size_t start = 0;
    for (std::size_t l = 0; l <= last; ++l) {
        BlockPrediction block;
        block.l = l;
        block.start_pos = start;
        try {
            block.lambda = model.lambda(l);
            if (l == 0) {
                block.rep_len = block.lambda;
            } else {
                block.nonrep_len = model.nonrep_len(l);
                block.rep_len = model.rep_len(l);
            }
        } catch (const degenerate_instance& e) {
            out.truncated = true;
            out.truncation_reason = e.what();
            break;
        }
        if (block.nonrep_len + block.rep_len != block.lambda) {
            throw consistency_error("block " + std::to_string(l) +
                                    ": non-repeating and repeating lengths do not add up");
        }
        block.period = model.series().repeating_digits(l);
        start += block.lambda;
        out.blocks.push_back(std::move(block));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Detection

struct DetectorParams {
    std::size_t min_reps = 4;
    std::size_t max_period = 16;
    std::size_t min_run = 12;  ///< shortest run accepted, so chance repeats like "7777" are ignored
};

struct DetectedBlock {
    std::size_t start_pos = 0;
    std::vector<Digit> nonrep_digits;
    std::vector<Digit> period;
    std::size_t repetitions = 0;  ///< full copies of the period in the run
    std::size_t run_length = 0;   ///< digits in the maximal run, partial copy included

    [[nodiscard]] std::size_t length() const { return nonrep_digits.size() + run_length; }
    [[nodiscard]] std::size_t end_pos() const { return start_pos + length(); }
};

/// Greedy left-to-right segmentation. At each position the shortest period
/// p <= max_period repeated at least min_reps times starts a run, which is
/// extended as far as the digits stay p-periodic and kept if it spans at
/// least min_run digits; digits skipped since the previous run become the
/// run's non-repeating prefix.
inline std::vector<DetectedBlock> detect(std::span<const Digit> digits,
                                         const DetectorParams& params = {}) {
    detail::require(params.min_reps >= 3, "min_reps must be at least 3");
    detail::require(params.max_period >= 1, "max_period must be at least 1");
    const std::size_t n = digits.size();

    auto periodic_from = [&](std::size_t i, std::size_t p) {
        const std::size_t need = params.min_reps * p;
        if (i + need > n) {
            return false;
        }
        for (std::size_t j = i + p; j < i + need; ++j) {
            if (digits[j] != digits[j - p]) {
                return false;
            }
        }
        return true;
    };

    std::vector<DetectedBlock> out;
    std::size_t pending = 0;
    std::size_t i = 0;
    while (i < n) {
        std::size_t found = 0;
        std::size_t end = i;
        for (std::size_t p = 1; p <= params.max_period && i + params.min_reps * p <= n; ++p) {
            if (!periodic_from(i, p)) {
                continue;
            }
            end = i + p;
            while (end < n && digits[end] == digits[end - p]) {
                ++end;
            }
            if (end - i >= params.min_run) {
                found = p;
                break;
            }
        }
        if (found == 0) {
            ++pending;
            ++i;
            continue;
        }
        DetectedBlock block;
        block.start_pos = i - pending;
        block.nonrep_digits.assign(digits.begin() + static_cast<std::ptrdiff_t>(i - pending),
                                   digits.begin() + static_cast<std::ptrdiff_t>(i));
        block.period.assign(digits.begin() + static_cast<std::ptrdiff_t>(i),
                            digits.begin() + static_cast<std::ptrdiff_t>(i + found));
        block.run_length = end - i;
        block.repetitions = block.run_length / found;
        out.push_back(std::move(block));
        pending = 0;
        i = end;
    }
    return out;
}

inline std::vector<DetectedBlock> detect(const DigitString& ds, const DetectorParams& params = {}) {
    return detect(std::span<const Digit>(ds.digits), params);
}

/// True when b is a cyclic rotation of a.
inline bool same_cycle(std::span<const Digit> a, std::span<const Digit> b) {
    if (a.size() != b.size() || a.empty()) {
        return false;
    }
    for (std::size_t shift = 0; shift < a.size(); ++shift) {
        bool equal = true;
        for (std::size_t i = 0; i < a.size() && equal; ++i) {
            equal = a[(i + shift) % a.size()] == b[i];
        }
        if (equal) {
            return true;
        }
    }
    return false;
}

// ---------------------------------------------------------------------------
// Verification

struct BlockComparison {
    BlockPrediction predicted;
    std::optional<DetectedBlock> detected;
    bool boundary_match = false;  ///< same start, non-repeating and repeating lengths
    bool period_match = false;    ///< minimal periods equal up to rotation

    [[nodiscard]] bool matched() const { return boundary_match && period_match; }
};

struct VerificationReport {
    Base base = 10;
    std::uint64_t k = 1;
    std::size_t precision = 0;
    std::vector<BlockComparison> blocks;
    std::vector<DetectedBlock> detected;  ///< full detector output
    std::size_t boundary_matches = 0;
    std::size_t period_matches = 0;
    std::optional<std::size_t> first_divergence_pos;
    bool truncated = false;
    std::string truncation_reason;

    [[nodiscard]] bool all_match() const {
        return !blocks.empty() &&
               std::all_of(blocks.begin(), blocks.end(),
                           [](const BlockComparison& c) { return c.matched(); });
    }
};

/// Significand digits needed to check blocks 0..last of a prediction.
inline std::size_t required_precision(const PatternPrediction& prediction) {
    if (prediction.blocks.empty()) {
        return 0;
    }
    const auto& last = prediction.blocks.back();
    return last.end_pos() + last.period.size();
}

inline VerificationReport compare(const PatternPrediction& prediction,
                                  std::vector<DetectedBlock> detected, std::size_t precision) {
    VerificationReport report;
    report.base = prediction.base;
    report.k = prediction.k;
    report.precision = precision;
    report.truncated = prediction.truncated;
    report.truncation_reason = prediction.truncation_reason;
    for (const auto& predicted : prediction.blocks) {
        BlockComparison cmp;
        cmp.predicted = predicted;
        const auto it = std::find_if(detected.begin(), detected.end(), [&](const DetectedBlock& d) {
            return d.start_pos == predicted.start_pos;
        });
        if (it != detected.end()) {
            cmp.detected = *it;
            cmp.boundary_match = it->nonrep_digits.size() == predicted.nonrep_len &&
                                 it->run_length == predicted.rep_len;
            cmp.period_match = same_cycle(it->period, predicted.period);
        }
        report.boundary_matches += cmp.boundary_match ? 1 : 0;
        report.period_matches += cmp.period_match ? 1 : 0;
        if (!cmp.matched() && !report.first_divergence_pos) {
            report.first_divergence_pos = predicted.start_pos;
        }
        report.blocks.push_back(std::move(cmp));
    }
    report.detected = std::move(detected);
    return report;
}

/// Predicts blocks 0..last, computes `precision` significand digits of
/// sqrt(f_b(2k-1)), detects runs in them and pairs the two by start position.
inline VerificationReport verify(Base base, std::uint64_t k, std::size_t last, std::size_t precision,
                                 const DetectorParams& params = {},
                                 EpsilonRule rule = EpsilonRule::borrow) {
    const PatternPrediction prediction = predict(base, k, last, rule);
    const std::size_t needed = required_precision(prediction);
    if (precision < needed) {
        throw insufficient_precision(needed, precision);
    }
    const DigitString digits = sqrt_significant(f_closed(base, 2 * k - 1), base, precision);
    return compare(prediction, detect(digits, params), precision);
}

}  // namespace schizo
