// SPDX-License-Identifier: Apache-2.0
// Command-line front end: grammar construction, counting, census, densities,
// normalisation and intersection partitions.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "upsilon/analytics.hpp"
#include "upsilon/builder.hpp"
#include "upsilon/fip.hpp"
#include "upsilon/grammar_io.hpp"
#include "upsilon/hierarchy.hpp"
#include "upsilon/oracle.hpp"
#include "upsilon/reduction.hpp"
#include "upsilon/syntax.hpp"

namespace {

using namespace upsilon;

constexpr int kOk = 0;
constexpr int kDomainError = 1;
constexpr int kMismatch = 2;

// Either the named file or standard output.
class Output {
public:
    explicit Output(const std::string& path) {
        if (path.empty() || path == "-") return;
        file_ = std::make_unique<std::ofstream>(path);
        if (!*file_) throw std::invalid_argument("cannot open " + path + " for writing");
    }
    std::ostream& stream() { return file_ ? *file_ : std::cout; }

private:
    std::unique_ptr<std::ofstream> file_;
};

ReductionGrammar build_grammar(std::uint32_t k, const BuildOptions& options) {
    ReductionGrammar g = seed();
    while (g.level() < k) g = extend(g, options);
    return g;
}

struct BuildGrammarArgs {
    std::uint32_t level = 1;
    std::string format = "text";
    bool no_merge = false;
    std::string output;
};

// Levels below k are stored; level k is streamed straight to the output.
int run_build_grammar(const BuildGrammarArgs& args, const BuildOptions& base) {
    BuildOptions options = base;
    options.fvar_merge = !args.no_merge;
    Output out(args.output);
    const auto format = args.format == "json" ? GrammarWriter::Format::Json : GrammarWriter::Format::Text;
    GrammarWriter writer(out.stream(), format, args.level);
    if (args.level == 0) {
        for (const Production& p : seed().productions()) writer.write(p);
        writer.finish();
        return kOk;
    }
    const ReductionGrammar lower = build_grammar(args.level - 1, options);
    for (const Production& p : lower.productions()) writer.write(p);
    const NonTerminal lhs = NonTerminal::G(args.level);
    stream_extension(lower, [&](Pattern rhs) { writer.write(Production{lhs, rhs}); }, options);
    writer.finish();
    return kOk;
}

int run_count(std::uint32_t k, std::size_t n, const BuildOptions& options) {
    const HierarchyProfiles h = build_profiles(k, options);
    const std::vector<CountSeries> series = grammar_series(h.levels, n);
    std::cout << "n,G" << k << '\n';
    for (std::size_t i = 0; i <= n; ++i) std::cout << i << ',' << series[k][i].get_str() << '\n';
    return kOk;
}

void write_census(std::ostream& os, const CensusTable& table) {
    os << "size";
    for (std::uint64_t k = 0; k <= table.max_steps; ++k) os << ',' << k;
    os << ",more\n";
    for (std::uint64_t n = 1; n <= table.max_size; ++n) {
        os << n;
        for (std::uint64_t k = 0; k <= table.max_steps; ++k) os << ',' << table.at(n, k);
        os << ',' << table.overflow[n] << '\n';
    }
}

int run_census(std::uint64_t max_size, std::uint64_t max_steps, const std::string& csv, unsigned jobs) {
    const CensusTable table = census(max_size, max_steps, jobs);
    Output out(csv);
    write_census(out.stream(), table);
    return kOk;
}

// Grammar membership, census and series must give the same count for every
// level and size in range.
int run_verify(std::uint64_t max_size, std::uint64_t max_steps, std::optional<std::uint32_t> level,
               const BuildOptions& options) {
    const std::uint32_t k = level.value_or(static_cast<std::uint32_t>(max_steps));
    if (k > max_steps) throw std::invalid_argument("-k must not exceed --max-steps");
    const ReductionGrammar g = build_grammar(k, options);
    const CensusTable table = census(max_size, max_steps, options.jobs);
    const std::vector<CountSeries> series = grammar_series(g, max_size);
    bool ok = true;
    std::cout << "level,status,detail\n";
    for (const LevelReport& r : verify_levels(g, table, max_size, &series, options.jobs)) {
        std::cout << 'G' << r.level << ',';
        if (r.ok()) {
            std::cout << "ok,\n";
            continue;
        }
        ok = false;
        std::cout << "mismatch,size " << *r.mismatch_size;
        if (r.witness) std::cout << " witness " << *r.witness;
        std::cout << '\n';
    }
    return ok ? kOk : kMismatch;
}

struct DensityArgs {
    std::uint32_t level = 1;
    std::string method = "exact";
    int digits = 5;
    std::size_t order = 0;
    bool algebraic = false;
};

int run_density(const DensityArgs& args, const BuildOptions& options) {
    const HierarchyProfiles h = build_profiles(args.level, options);
    if (args.method == "exact") {
        const Density d = densities_exact(h.levels).at(args.level);
        std::cout << (args.algebraic ? d.algebraic() : d.decimal(args.digits)) << '\n';
        return kOk;
    }
    const std::size_t order = args.order ? args.order : default_series_order();
    const std::vector<CountSeries> series = grammar_series(h.levels, order);
    const BaseSeries base = base_series(order);
    std::cout << format_fixed(density_numeric(series[args.level], base.t, order), args.digits) << '\n';
    return kOk;
}

int run_normalize(const std::string& text, bool trace, std::optional<std::uint64_t> limit) {
    const Term t = parse_term(text);
    if (t.sort() == Sort::Subst) throw std::invalid_argument("expected a term, got a substitution");
    const Normalization result = normalize(t, NormalizeOptions{limit, trace});
    for (std::size_t i = 0; i < result.trace.size(); ++i) {
        std::cout << i + 1 << ' ' << to_string(result.trace[i].rule) << ' ' << result.trace[i].term << '\n';
    }
    std::cout << "normal form: " << result.normal_form << '\n';
    std::cout << "steps: " << result.steps << '\n';
    return kOk;
}

int run_fip(const std::string& left, const std::string& right, std::uint32_t k, const BuildOptions& options) {
    const Pattern a = parse_pattern(left);
    const Pattern b = parse_pattern(right);
    const ReductionGrammar g = build_grammar(k, options);
    for (Pattern part : fip(a, b, g)) std::cout << part << '\n';
    return kOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Reduction grammars and step-count statistics for the lambda-upsilon calculus"};
    app.require_subcommand(1);
    unsigned jobs = 1;
    app.add_option("--jobs", jobs, "Worker threads for census and grammar construction")
        ->check(CLI::PositiveNumber);

    BuildGrammarArgs bg;
    auto* build_cmd = app.add_subcommand("build-grammar", "Emit the grammar of level K.\n"
                                                          "  build-grammar -k K [--format text|json] "
                                                          "[--no-fvar-merge] [-o FILE]");
    build_cmd->add_option("-k", bg.level, "Level")->required()->check(CLI::NonNegativeNumber);
    build_cmd->add_option("--format", bg.format, "Output format")->check(CLI::IsMember({"text", "json"}));
    build_cmd->add_flag("--no-fvar-merge", bg.no_merge, "One 0[g/] production per level production");
    build_cmd->add_option("-o", bg.output, "Output file (default: standard output)");

    std::uint32_t count_level = 0;
    std::size_t count_size = 0;
    auto* count_cmd = app.add_subcommand("count", "Print [z^n]G_K for n <= N as CSV.\n  count -k K -n N");
    count_cmd->add_option("-k", count_level, "Level")->required()->check(CLI::NonNegativeNumber);
    count_cmd->add_option("-n", count_size, "Largest size")->required()->check(CLI::PositiveNumber);

    std::uint64_t census_size = 12, census_steps = 64;
    std::string census_csv;
    auto* census_cmd = app.add_subcommand(
        "census", "Count terms by size and number of normal-order steps.\n"
                  "  census --max-size N --max-steps K [--csv FILE]");
    census_cmd->add_option("--max-size", census_size, "Largest term size")->check(CLI::PositiveNumber);
    census_cmd->add_option("--max-steps", census_steps, "Step budget per term")->check(CLI::PositiveNumber);
    census_cmd->add_option("--csv", census_csv, "Write the table to FILE instead of standard output");

    std::uint64_t verify_size = 10, verify_steps = 6;
    std::optional<std::uint32_t> verify_level;
    auto* verify_cmd = app.add_subcommand(
        "verify", "Check grammar, census and series counts against each other; exit 2 on a mismatch.\n"
                  "  verify --max-size N --max-steps K [-k LEVEL]   (LEVEL defaults to K)");
    verify_cmd->add_option("--max-size", verify_size, "Largest term size")->check(CLI::PositiveNumber);
    verify_cmd->add_option("--max-steps", verify_steps, "Step budget per term")->check(CLI::PositiveNumber);
    verify_cmd->add_option("-k", verify_level, "Highest level to check")->check(CLI::NonNegativeNumber);

    DensityArgs da;
    auto* density_cmd = app.add_subcommand(
        "density", "Print the limit proportion of terms needing exactly K steps.\n"
                   "  density -k K [--method exact|numeric] [--digits D] [--order N] [--algebraic]");
    density_cmd->add_option("-k", da.level, "Level")->required()->check(CLI::NonNegativeNumber);
    density_cmd->add_option("--method", da.method, "exact (closed form) or numeric (coefficient ratio)")
        ->check(CLI::IsMember({"exact", "numeric"}));
    density_cmd->add_option("--digits", da.digits, "Decimal places, rounded half-up")->check(CLI::PositiveNumber);
    density_cmd->add_option("--order", da.order, "Series order for the numeric method")->check(CLI::PositiveNumber);
    density_cmd->add_flag("--algebraic", da.algebraic, "Print the exact value a + b*sqrt(33) instead");

    std::string term_text;
    bool trace = false;
    std::optional<std::uint64_t> limit;
    auto* normalize_cmd =
        app.add_subcommand("normalize", "Normalise a term in normal order.\n  normalize [--trace] TERM");
    normalize_cmd->add_option("term", term_text, "Term, e.g. \"(\\ 0 1)[(\\ \\ 1)/]\"")->required();
    normalize_cmd->add_flag("--trace", trace, "Print every step as: index rule term");
    normalize_cmd->add_option("--max-steps", limit, "Give up after this many steps")->check(CLI::PositiveNumber);

    std::string fip_left, fip_right;
    std::uint32_t fip_level = 0;
    auto* fip_cmd = app.add_subcommand(
        "fip", "Partition the intersection of two patterns, one part per line.\n  fip PATTERN PATTERN -k K");
    fip_cmd->add_option("left", fip_left, "First pattern")->required();
    fip_cmd->add_option("right", fip_right, "Second pattern")->required();
    fip_cmd->add_option("-k", fip_level, "Grammar level")->required()->check(CLI::NonNegativeNumber);

    CLI11_PARSE(app, argc, argv);

    BuildOptions options;
    options.jobs = jobs;
    try {
        if (*build_cmd) return run_build_grammar(bg, options);
        if (*count_cmd) return run_count(count_level, count_size, options);
        if (*census_cmd) return run_census(census_size, census_steps, census_csv, jobs);
        if (*verify_cmd) return run_verify(verify_size, verify_steps, verify_level, options);
        if (*density_cmd) return run_density(da, options);
        if (*normalize_cmd) return run_normalize(term_text, trace, limit);
        if (*fip_cmd) return run_fip(fip_left, fip_right, fip_level, options);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kDomainError;
    }
    return kOk;
}
