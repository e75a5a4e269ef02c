#include "cli.hpp"

#include <schizo/schizo.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace schizo::cli {
namespace {

using nlohmann::json;

enum class Format { text, structured };

struct Options {
    Base base = 10;
    std::optional<std::uint64_t> n;
    std::optional<std::uint64_t> k;
    std::size_t precision = 0;
    std::size_t terms = 3;
    std::size_t group = 10;
    std::size_t rows = 5;
    std::size_t power = 1;
    std::optional<Base> radix;
    std::uint64_t from = 1;
    std::uint64_t to = 1;
    bool run_detector = false;
    DetectorParams detector;
    Rounding rounding = Rounding::truncate;
    Notation notation = Notation::automatic;
    EpsilonRule rule = EpsilonRule::borrow;
    Format format = Format::text;
};

const std::map<std::string, Rounding> kRounding{{"truncate", Rounding::truncate},
                                                {"nearest", Rounding::nearest}};
const std::map<std::string, Notation> kNotation{{"auto", Notation::automatic},
                                                {"scientific", Notation::scientific},
                                                {"positional", Notation::positional}};
const std::map<std::string, EpsilonRule> kRule{{"borrow", EpsilonRule::borrow},
                                               {"leading-digit", EpsilonRule::leading_digit}};
const std::map<std::string, Format> kFormat{{"text", Format::text},
                                            {"structured", Format::structured}};

std::string rule_name(EpsilonRule rule) {
    return rule == EpsilonRule::borrow ? "borrow" : "leading-digit";
}

std::string digits_text(const std::vector<Digit>& digits, Base base) {
    std::string out;
    for (std::size_t i = 0; i < digits.size(); ++i) {
        if (base > 36) {
            if (i != 0) {
                out += ':';
            }
            out += std::to_string(digits[i]);
        } else {
            out += digit_char(digits[i]);
        }
    }
    return out;
}

std::string compact(std::string text) {
    std::erase_if(text, [](char c) { return c == ' ' || c == '\n'; });
    return text;
}

/// Resolves --n / --k into (n, k) with n = 2k - 1.
std::pair<std::uint64_t, std::uint64_t> index_of(const Options& o) {
    if (!o.n && !o.k) {
        throw precondition_error("one of --n or --k is required");
    }
    if (o.k) {
        detail::require(*o.k >= 1, "k must be at least 1");
        const std::uint64_t n = 2 * *o.k - 1;
        if (o.n && *o.n != n) {
            throw precondition_error("--n and --k disagree (n must equal 2k-1)");
        }
        return {n, *o.k};
    }
    detail::require(*o.n % 2 == 1, "n must be odd");
    return {*o.n, (*o.n + 1) / 2};
}

RenderOptions render_options(const Options& o) {
    RenderOptions r;
    r.group = o.group == 0 ? std::numeric_limits<std::size_t>::max() : o.group;
    r.groups_per_row = o.rows;
    r.notation = o.notation;
    return r;
}

json document(const std::string& command, const Options& o, std::optional<std::uint64_t> n) {
    json doc;
    doc["command"] = command;
    doc["base"] = o.base;
    doc["n"] = n ? json(*n) : json(nullptr);
    doc["precision"] = o.precision;
    doc["digits"] = nullptr;
    doc["blocks"] = json::array();
    doc["truncated"] = false;
    doc["warnings"] = json::array();
    return doc;
}

json block_json(const BlockPrediction& b, Base base) {
    return json{{"l", b.l},           {"start", b.start_pos},   {"nonrep_len", b.nonrep_len},
                {"rep_len", b.rep_len}, {"lambda", b.lambda}, {"period", digits_text(b.period, base)},
                {"matched", nullptr}};
}

json detected_json(const DetectedBlock& d, Base base) {
    return json{{"start", d.start_pos},
                {"nonrep_len", d.nonrep_digits.size()},
                {"rep_len", d.run_length},
                {"lambda", d.length()},
                {"period", digits_text(d.period, base)},
                {"repetitions", d.repetitions}};
}

// ---------------------------------------------------------------------------

int cmd_expand(const Options& o, std::ostream& out) {
    const auto [n, k] = index_of(o);
    const Base radix = o.radix.value_or(o.base);
    const DigitString ds = sqrt_significant(f_closed(o.base, n), radix, o.precision, o.rounding);
    const std::string text = render(ds, render_options(o));
    if (o.format == Format::structured) {
        json doc = document("expand", o, n);
        doc["radix"] = radix;
        doc["digits"] = compact(text);
        out << doc.dump(2) << '\n';
    } else {
        out << text << '\n';
    }
    return ok;
}

int cmd_predict(const Options& o, std::ostream& out) {
    const auto [n, k] = index_of(o);
    const PatternPrediction p = predict(o.base, k, o.terms, o.rule);
    if (o.format == Format::structured) {
        json doc = document("predict", o, n);
        doc["k"] = k;
        doc["epsilon_rule"] = rule_name(o.rule);
        for (const auto& b : p.blocks) {
            doc["blocks"].push_back(block_json(b, o.base));
        }
        doc["truncated"] = p.truncated;
        if (p.truncated) {
            doc["warnings"].push_back(p.truncation_reason);
        }
        out << doc.dump(2) << '\n';
        return ok;
    }
    out << "# base " << o.base << ", n " << n << " (k " << k << "), blocks 0.." << o.terms
        << ", epsilon " << rule_name(o.rule) << '\n';
    out << std::setw(4) << "l" << std::setw(7) << "start" << std::setw(8) << "nonrep" << std::setw(6)
        << "rep" << std::setw(8) << "lambda" << "  period\n";
    for (const auto& b : p.blocks) {
        out << std::setw(4) << b.l << std::setw(7) << b.start_pos << std::setw(8) << b.nonrep_len
            << std::setw(6) << b.rep_len << std::setw(8) << b.lambda << "  "
            << digits_text(b.period, o.base) << '\n';
    }
    if (p.truncated) {
        out << "# truncated: " << p.truncation_reason << '\n';
    }
    return ok;
}

int cmd_verify(Options o, std::ostream& out) {
    const auto [n, k] = index_of(o);
    if (o.precision == 0) {
        o.precision = static_cast<std::size_t>(2 * k * (o.terms + 2));
    }
    const VerificationReport r = verify(o.base, k, o.terms, o.precision, o.detector, o.rule);
    const int status = r.all_match() ? ok : verify_mismatch;

    if (o.format == Format::structured) {
        json doc = document("verify", o, n);
        doc["k"] = k;
        doc["epsilon_rule"] = rule_name(o.rule);
        doc["min_reps"] = o.detector.min_reps;
        doc["max_period"] = o.detector.max_period;
        doc["min_run"] = o.detector.min_run;
        const DigitString ds = sqrt_significant(f_closed(o.base, n), o.base, o.precision);
        RenderOptions flat;
        flat.group = std::numeric_limits<std::size_t>::max();
        flat.notation = Notation::scientific;
        doc["digits"] = render(ds, flat);
        for (const auto& c : r.blocks) {
            json b = block_json(c.predicted, o.base);
            b["matched"] = c.matched();
            b["boundary_match"] = c.boundary_match;
            b["period_match"] = c.period_match;
            b["detected"] = c.detected ? detected_json(*c.detected, o.base) : json(nullptr);
            doc["blocks"].push_back(b);
        }
        doc["truncated"] = r.truncated;
        if (r.truncated) {
            doc["warnings"].push_back(r.truncation_reason);
        }
        doc["first_divergence_pos"] =
            r.first_divergence_pos ? json(*r.first_divergence_pos) : json(nullptr);
        out << doc.dump(2) << '\n';
        return status;
    }

    out << "# base " << o.base << ", n " << n << " (k " << k << "), blocks 0.." << o.terms
        << ", precision " << o.precision << ", min-reps " << o.detector.min_reps
        << ", max-period " << o.detector.max_period << ", min-run " << o.detector.min_run
        << ", epsilon " << rule_name(o.rule) << '\n';
    out << std::setw(4) << "l" << std::setw(7) << "start" << std::setw(8) << "nonrep" << std::setw(6)
        << "rep" << std::setw(8) << "lambda" << "  " << std::left << std::setw(18) << "period"
        << std::right << "| found" << std::setw(8) << "nonrep" << std::setw(6) << "rep" << "  "
        << std::left << std::setw(18) << "period" << std::right << "| boundary  period\n";
    for (const auto& c : r.blocks) {
        const auto& p = c.predicted;
        out << std::setw(4) << p.l << std::setw(7) << p.start_pos << std::setw(8) << p.nonrep_len
            << std::setw(6) << p.rep_len << std::setw(8) << p.lambda << "  " << std::left
            << std::setw(18) << digits_text(p.period, o.base) << std::right << "| ";
        if (c.detected) {
            const auto& d = *c.detected;
            out << std::setw(5) << d.start_pos << std::setw(8) << d.nonrep_digits.size()
                << std::setw(6) << d.run_length << "  " << std::left << std::setw(18)
                << digits_text(d.period, o.base) << std::right;
        } else {
            out << std::setw(5) << "-" << std::setw(8) << "-" << std::setw(6) << "-" << "  "
                << std::left << std::setw(18) << "-" << std::right;
        }
        out << "| " << std::setw(8) << (c.boundary_match ? "yes" : "no") << std::setw(8)
            << (c.period_match ? "yes" : "no") << '\n';
    }
    if (r.truncated) {
        out << "# truncated: " << r.truncation_reason << '\n';
    }
    std::size_t matched = 0;
    for (const auto& c : r.blocks) {
        matched += c.matched() ? 1 : 0;
    }
    out << "summary: " << matched << '/' << r.blocks.size() << " blocks matched (boundaries "
        << r.boundary_matches << '/' << r.blocks.size() << ", periods " << r.period_matches << '/'
        << r.blocks.size() << ")\n";
    if (r.first_divergence_pos) {
        out << "first divergence at significand digit " << *r.first_divergence_pos << '\n';
    }
    return status;
}

int cmd_sequence(const Options& o, std::ostream& out) {
    detail::require(o.from % 2 == 1 && o.to % 2 == 1, "--from and --to must be odd");
    detail::require(o.from <= o.to, "--from must not exceed --to");
    const RenderOptions ro = render_options(o);
    json doc = document("sequence", o, std::nullopt);
    doc["rows"] = json::array();
    for (std::uint64_t n = o.from; n <= o.to; n += 2) {
        const DigitString ds = sqrt_significant(f_closed(o.base, n), o.base, o.precision, o.rounding);
        const std::string text = render(ds, ro);
        if (o.format == Format::structured) {
            doc["rows"].push_back(json{{"n", n}, {"digits", compact(text)}});
        } else {
            out << n << " | " << text << '\n';
        }
    }
    if (o.format == Format::structured) {
        out << doc.dump(2) << '\n';
    }
    return ok;
}

int cmd_convert(const Options& o, std::ostream& out) {
    const auto [n, k] = index_of(o);
    const Base target = power_base(o.base, o.power);
    const Natural radicand = f_closed(o.base, n);
    // Enough base-b digits for `precision` base-b^m digits.
    const std::size_t whole = sqrt_integer_digits(radicand, target);
    detail::require(o.precision >= whole, "precision is below the integer digits in base b^m");
    const std::size_t source_whole = sqrt_integer_digits(radicand, o.base);
    const std::size_t source = source_whole + (o.precision - whole) * o.power;
    const DigitString digits = sqrt_significant(radicand, o.base, source);
    const RegroupResult regrouped = regroup(digits, o.power);
    const std::string text = render(regrouped.digits, render_options(o));

    std::vector<DetectedBlock> runs;
    if (o.run_detector) {
        runs = detect(regrouped.digits, o.detector);
    }
    if (o.format == Format::structured) {
        json doc = document("convert", o, n);
        doc["power"] = o.power;
        doc["target_base"] = target;
        doc["digits"] = compact(text);
        for (std::size_t i = 0; i < runs.size(); ++i) {
            json b = detected_json(runs[i], target);
            b["l"] = i;
            b["matched"] = nullptr;
            doc["blocks"].push_back(b);
        }
        if (o.run_detector) {
            doc["pattern_present"] = runs.size() >= 2;
        }
        out << doc.dump(2) << '\n';
        return ok;
    }
    out << text << '\n';
    if (o.run_detector) {
        out << "# runs in base " << target << " (min-reps " << o.detector.min_reps
            << ", max-period " << o.detector.max_period << ", min-run " << o.detector.min_run
            << ")\n";
        for (const auto& r : runs) {
            out << "start " << r.start_pos << " nonrep " << r.nonrep_digits.size() << " run "
                << r.run_length << " period " << digits_text(r.period, target) << '\n';
        }
        out << "pattern present: " << (runs.size() >= 2 ? "yes" : "no") << '\n';
    }
    return ok;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"Digit patterns of sqrt(f_b(2k-1)) for f_b(n) = b*f_b(n-1) + n", "schizo"};
    app.require_subcommand(1);

    auto add_index = [&](CLI::App* sub) {
        sub->add_option("--base,-b", o.base, "Base b of the recurrence")->required();
        sub->add_option("--n", o.n, "Odd index n of f_b(n)");
        sub->add_option("--k", o.k, "Half index k, n = 2k-1");
        sub->add_option("--format", o.format, "Output format")
            ->transform(CLI::CheckedTransformer(kFormat, CLI::ignore_case))
            ->option_text("text|structured");
    };
    auto add_layout = [&](CLI::App* sub) {
        sub->add_option("--group", o.group, "Fractional digits per group (0: no grouping)");
        sub->add_option("--rows", o.rows, "Groups per line")->check(CLI::PositiveNumber);
        sub->add_option("--notation", o.notation, "auto, scientific or positional")
            ->transform(CLI::CheckedTransformer(kNotation, CLI::ignore_case))
            ->option_text("auto|scientific|positional");
    };
    auto add_detector = [&](CLI::App* sub) {
        sub->add_option("--min-reps", o.detector.min_reps, "Minimum full copies of a period");
        sub->add_option("--max-period", o.detector.max_period, "Longest period searched");
        sub->add_option("--min-run", o.detector.min_run, "Fewest digits in an accepted run");
    };
    auto add_rule = [&](CLI::App* sub) {
        sub->add_option("--epsilon", o.rule, "Carry rule: borrow or leading-digit")
            ->transform(CLI::CheckedTransformer(kRule, CLI::ignore_case))
            ->option_text("borrow|leading-digit");
    };

    auto* expand = app.add_subcommand("expand", "Print the expansion of sqrt(f_b(n))");
    add_index(expand);
    add_layout(expand);
    expand->add_option("--precision,-p", o.precision, "Significand digits")->required();
    expand->add_option("--radix", o.radix, "Output base (default: --base)");
    expand->add_option("--rounding", o.rounding, "truncate or nearest")
        ->transform(CLI::CheckedTransformer(kRounding, CLI::ignore_case))
            ->option_text("truncate|nearest");

    auto* predict_cmd = app.add_subcommand("predict", "Predict the block structure");
    add_index(predict_cmd);
    add_rule(predict_cmd);
    predict_cmd->add_option("--terms,-L", o.terms, "Last block index");

    auto* verify_cmd = app.add_subcommand("verify", "Compare predicted and detected blocks");
    add_index(verify_cmd);
    add_rule(verify_cmd);
    add_detector(verify_cmd);
    verify_cmd->add_option("--terms,-L", o.terms, "Last block index");
    verify_cmd->add_option("--precision,-p", o.precision,
                           "Significand digits (default 2k(L+2))");

    auto* sequence = app.add_subcommand("sequence", "Expansions for odd n in a range");
    sequence->add_option("--base,-b", o.base, "Base b of the recurrence")->required();
    sequence->add_option("--from", o.from, "First odd n");
    sequence->add_option("--to", o.to, "Last odd n")->required();
    sequence->add_option("--precision,-p", o.precision, "Significand digits")->required();
    sequence->add_option("--rounding", o.rounding, "truncate or nearest")
        ->transform(CLI::CheckedTransformer(kRounding, CLI::ignore_case))
            ->option_text("truncate|nearest");
    sequence->add_option("--format", o.format, "Output format")
        ->transform(CLI::CheckedTransformer(kFormat, CLI::ignore_case))
            ->option_text("text|structured");
    add_layout(sequence);

    auto* convert = app.add_subcommand("convert", "Regroup the expansion into base b^m");
    add_index(convert);
    add_layout(convert);
    add_detector(convert);
    convert->add_option("--power,-m", o.power, "Power m of the target base b^m")->required();
    convert->add_option("--precision,-p", o.precision, "Significand digits in base b^m")
        ->required();
    convert->add_flag("--detect", o.run_detector, "Run the detector on the result");

    // sequence prints one row per n; keep rows ungrouped unless asked.
    sequence->preparse_callback([&](std::size_t) { o.group = 0; });

    std::vector<const char*> argv{"schizo"};
    for (const auto& a : args) {
        argv.push_back(a.c_str());
    }
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? ok : usage_error;
    }

    try {
        if (*expand) {
            return cmd_expand(o, out);
        }
        if (*predict_cmd) {
            return cmd_predict(o, out);
        }
        if (*verify_cmd) {
            return cmd_verify(o, out);
        }
        if (*sequence) {
            return cmd_sequence(o, out);
        }
        if (*convert) {
            return cmd_convert(o, out);
        }
    } catch (const consistency_error& e) {
        err << "internal error: " << e.what() << '\n';
        return internal_error;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return usage_error;
    }
    return usage_error;
}

}  // namespace schizo::cli
