#include "cafcheck/cli.hpp"

#include "cafcheck/check.hpp"
#include "cafcheck/replay.hpp"
#include "cafcheck/rules.hpp"
#include "cafcheck/search.hpp"
#include "cafcheck/serialize.hpp"
#include "cafcheck/table_report.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <fstream>
#include <iterator>
#include <optional>
#include <ostream>

namespace cafcheck::cli {

namespace {

class UsageProblem : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Every field a run can carry; subcommands read the ones they need.
struct RunConfig {
    std::optional<int> n;
    std::optional<int> m;
    std::optional<int> p;
    std::string axioms;
    std::string format;
    std::uint64_t cell_budget = Limits{}.cell_budget;
    std::uint64_t table_budget = BruteForceOptions{}.table_budget;
    std::optional<double> timeout_seconds;

    std::vector<std::string> pins;
    bool no_symmetry = false;
    bool oracle = false;
    bool categorical_distinct = false;
    std::string witness_out;

    std::string rule;
    std::string table_file;
    bool same_category = false;
    std::string default_classification;
    std::string fixed_assignment;
    std::optional<int> decisive_count;

    std::string proof;

    int max_m = 4;
    int max_p = 3;
};

int to_int(std::string_view text, std::string_view what)
{
    int value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size())
        throw UsageProblem(std::string(what) + ": expected an integer, got '" + std::string(text) + "'");
    return value;
}

std::vector<std::string_view> split(std::string_view text, char sep)
{
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto end = text.find(sep, start);
        out.push_back(text.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start));
        if (end == std::string_view::npos)
            return out;
        start = end + 1;
    }
}

std::vector<Category> parse_categories(std::string_view text, std::string_view what)
{
    std::vector<Category> out;
    for (auto part : split(text, ','))
        out.push_back(to_int(part, what));
    return out;
}

/// "<axiom>=<claim>,<claim>" where a claim is i:x (expertise), i:t
/// (categorical-expertise) or i:x:t (minimal-expertise, semidecisive).
std::pair<ExpertiseKind, ExpertiseWitness> parse_pin(std::string_view text)
{
    const auto eq = text.find('=');
    if (eq == std::string_view::npos)
        throw UsageProblem("--pin-witness expects <axiom>=<claim>,<claim>, got '" + std::string(text) + "'");
    const auto kind_set = AxiomSet::parse(text.substr(0, eq));
    const auto kinds = kind_set.existential();
    if (kinds.size() != 1 || kind_set.unanimity || kind_set.independence)
        throw UsageProblem("--pin-witness names one of expertise, categorical-expertise, minimal-expertise, "
                           "semidecisive");
    const ExpertiseKind kind = kinds.front();
    const auto claims = split(text.substr(eq + 1), ',');
    if (claims.size() != 2)
        throw UsageProblem("--pin-witness needs exactly two claims separated by a comma");
    auto claim = [&](std::string_view part) {
        const auto fields = split(part, ':');
        const std::size_t want = kind == ExpertiseKind::MinimalExpertise || kind == ExpertiseKind::SemiDecisiveExpertise
                                     ? 3
                                     : 2;
        if (fields.size() != want)
            throw UsageProblem("claim '" + std::string(part) + "' for " + std::string(to_string(kind)) + " needs "
                               + std::to_string(want) + " colon-separated indices");
        const int i = to_int(fields[0], "--pin-witness");
        const int a = to_int(fields[1], "--pin-witness");
        switch (kind) {
        case ExpertiseKind::Expertise:
            return DecisivenessClaim::object_decisive(i, a);
        case ExpertiseKind::CategoricalExpertise:
            return DecisivenessClaim::categorically_decisive(i, a);
        case ExpertiseKind::MinimalExpertise:
            return DecisivenessClaim::minimally_decisive(i, a, to_int(fields[2], "--pin-witness"));
        case ExpertiseKind::SemiDecisiveExpertise:
            return DecisivenessClaim::minimally_semi_decisive(i, a, to_int(fields[2], "--pin-witness"));
        }
        throw UsageProblem("unknown axiom");
    };
    return {kind, ExpertiseWitness{claim(claims[0]), claim(claims[1])}};
}

io::Format format_or(const RunConfig& config, io::Format fallback)
{
    return config.format.empty() ? fallback : io::parse_format(config.format);
}

Instance require_instance(const RunConfig& config, std::string_view command)
{
    if (!config.n || !config.m || !config.p)
        throw UsageProblem(std::string(command) + " needs --n, --m and --p");
    return Instance(*config.n, *config.m, *config.p);
}

Limits limits_of(const RunConfig& config) { return Limits{config.cell_budget}; }

SearchOptions search_options(const RunConfig& config)
{
    SearchOptions options;
    options.symmetry_reduction = !config.no_symmetry;
    options.limits = limits_of(config);
    if (config.timeout_seconds)
        options.timeout = std::chrono::milliseconds(static_cast<std::int64_t>(*config.timeout_seconds * 1000.0));
    return options;
}

AxiomSet axioms_of(const RunConfig& config, std::string_view command)
{
    if (config.axioms.empty())
        throw UsageProblem(std::string(command) + " needs --axioms");
    auto axioms = AxiomSet::parse(config.axioms);
    if (axioms.empty())
        throw UsageProblem("--axioms selects no axiom");
    if (config.categorical_distinct)
        axioms.categorical_mode = CategoryMode::Distinct;
    return axioms;
}

void write_file(const std::string& path, const std::string& content)
{
    std::ofstream file(path, std::ios::binary);
    if (!file || !(file << content))
        throw UsageProblem("cannot write " + path);
}

std::string read_file(const std::string& path)
{
    std::ifstream file(path, std::ios::binary);
    if (!file)
        throw UsageProblem("cannot read " + path);
    return {std::istreambuf_iterator<char>(file), std::istreambuf_iterator<char>()};
}

int do_count(const RunConfig& config, std::ostream& out)
{
    if (!config.m || !config.p)
        throw UsageProblem("count needs --m and --p");
    if (*config.p < 1 || *config.m < *config.p)
        throw UsageProblem("count needs m >= p >= 1, got m = " + std::to_string(*config.m)
                           + ", p = " + std::to_string(*config.p));
    out << io::render_counts(*config.m, *config.p, config.n, format_or(config, io::Format::Text));
    return Ok;
}

int do_search(const RunConfig& config, std::ostream& out)
{
    const Instance instance = require_instance(config, "search");
    auto axioms = axioms_of(config, "search");
    for (const auto& pin : config.pins) {
        auto [kind, witness] = parse_pin(pin);
        axioms.pinned.get(kind) = witness;
    }
    const auto format = format_or(config, io::Format::Json);

    SearchOutcome outcome = [&] {
        if (config.oracle) {
            BruteForceOptions options;
            options.table_budget = config.table_budget;
            options.limits = limits_of(config);
            return brute_force_search(instance, axioms, options);
        }
        return search(instance, axioms, search_options(config));
    }();
    if (outcome.table && !config.witness_out.empty())
        write_file(config.witness_out, io::witness_file(*outcome.table, outcome.witnesses));
    out << io::render(outcome, format);
    return outcome.verdict == Verdict::Timeout ? TimedOut : Ok;
}

RuleConfig rule_config(const RunConfig& config)
{
    RuleConfig rule = parse_rule(config.rule);
    if (config.same_category) {
        if (rule.kind == RuleKind::Remark1)
            rule = RuleConfig::make_remark1(true);
        else if (rule.kind == RuleKind::Remark2)
            rule = RuleConfig::make_remark2(true);
        else
            throw ConfigError("--same-category applies to remark1 and remark2 only");
    }
    if (config.decisive_count) {
        if (rule.kind != RuleKind::Remark3)
            throw ConfigError("--decisive-count applies to remark3 only");
        rule = RuleConfig::make_remark3(*config.decisive_count);
    }
    if (!config.default_classification.empty()) {
        if (rule.kind != RuleKind::Remark2)
            throw ConfigError("--default applies to remark2 only");
        rule.default_classification = parse_categories(config.default_classification, "--default");
    }
    if (!config.fixed_assignment.empty()) {
        if (rule.kind != RuleKind::Remark3)
            throw ConfigError("--fixed applies to remark3 only");
        rule.fixed_assignment = parse_categories(config.fixed_assignment, "--fixed");
    }
    return rule;
}

int do_check(const RunConfig& config, std::ostream& out)
{
    const auto axioms = axioms_of(config, "check");
    const auto format = format_or(config, io::Format::Json);
    if (config.rule.empty() == config.table_file.empty())
        throw UsageProblem("check needs exactly one of --rule and --table");

    if (!config.table_file.empty()) {
        const auto loaded = io::parse_witness(read_file(config.table_file), limits_of(config));
        std::vector<DecisivenessClaim> claims;
        for (const auto& w : loaded.witnesses) {
            claims.push_back(w.witness.first);
            claims.push_back(w.witness.second);
        }
        out << io::render(check_table(loaded.table, axioms, claims, config.table_file), format);
        return Ok;
    }

    const Instance instance = require_instance(config, "check");
    const RuleConfig rule = rule_config(config);
    const Rule bound(rule, instance);
    const auto table = materialize(bound, ProfileSpace::make(instance, limits_of(config)));
    out << io::render(check_table(table, axioms, designated_claims(rule), describe(rule)), format);
    return Ok;
}

int do_replay(const RunConfig& config, std::ostream& out)
{
    if (config.proof.empty())
        throw UsageProblem("replay needs --proof");
    const ProofId proof = parse_proof_id(config.proof);
    const Instance instance = require_instance(config, "replay");
    ProofBinding binding;
    binding.same_category = config.same_category;
    const auto trace = replay_theorem(proof, instance, binding);
    out << io::render(trace, format_or(config, io::Format::Text));
    return Ok;
}

int do_table(const RunConfig& config, std::ostream& out)
{
    const int n = config.n.value_or(2);
    if (config.max_p < 2 || config.max_m < config.max_p)
        throw UsageProblem("table needs --max-m >= --max-p >= 2");
    const auto report = table1_report(grid_instances(n, config.max_m, config.max_p), search_options(config));
    out << io::render(report, format_or(config, io::Format::Text));
    if (report.any(CellStatus::Disagree))
        return TableDisagreement;
    if (report.any(CellStatus::Timeout))
        return TimedOut;
    return Ok;
}

} // namespace

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Verification workbench for classification aggregation functions", "cafcheck"};
    app.set_config("--config", "", "Read options from a key = value file");
    app.require_subcommand(1);
    RunConfig config;

    app.add_option("--n", config.n, "Number of individuals")->check(CLI::PositiveNumber);
    app.add_option("--m", config.m, "Number of objects")->check(CLI::PositiveNumber);
    app.add_option("--p", config.p, "Number of categories")->check(CLI::PositiveNumber);
    app.add_option("--axioms", config.axioms,
                   "Comma-separated: unanimity, independence, expertise, categorical-expertise, "
                   "minimal-expertise, semidecisive");
    app.add_option("--format", config.format, "json, csv or text");
    app.add_option("--cell-budget", config.cell_budget, "Maximum profile-count * m cells to enumerate")
        ->envname("CAFCHECK_CELL_BUDGET")
        ->check(CLI::PositiveNumber);
    app.add_option("--table-budget", config.table_budget, "Maximum tables enumerated by --oracle")
        ->check(CLI::PositiveNumber);
    app.add_option("--timeout", config.timeout_seconds, "Search time limit in seconds")
        ->check(CLI::PositiveNumber);
    app.add_option("--pin-witness", config.pins,
                   "Fix a witness pair instead of enumerating, e.g. expertise=0:0,1:1 or "
                   "minimal-expertise=0:0:0,1:1:1 (0-based)");
    app.add_flag("--no-symmetry", config.no_symmetry, "Enumerate every witness tuple");
    app.add_flag("--oracle", config.oracle, "Decide by brute-force table enumeration");
    app.add_flag("--categorical-distinct", config.categorical_distinct,
                 "Categorical expertise requires two different categories");
    app.add_option("--witness-out", config.witness_out, "Write the satisfying table to this file");
    app.add_option("--rule", config.rule, "dictator:<i>, remark1, remark2, remark3 or remark5");
    app.add_option("--table", config.table_file, "Check a witness file instead of a rule");
    app.add_flag("--same-category", config.same_category, "Both claims name the same category");
    app.add_option("--default", config.default_classification, "remark2 default classification, e.g. 0,1,2,2");
    app.add_option("--fixed", config.fixed_assignment, "remark3 categories of the non-decisive objects");
    app.add_option("--decisive-count", config.decisive_count, "remark3 number of decisive individuals")
        ->check(CLI::PositiveNumber);
    app.add_option("--proof", config.proof, "theorem-1, prop-2, prop-3, prop-4 or prop-5");
    app.add_option("--max-m", config.max_m, "Largest m in the grid");
    app.add_option("--max-p", config.max_p, "Largest p in the grid");

    auto* count = app.add_subcommand("count", "Count classifications and profiles")->fallthrough();
    auto* check = app.add_subcommand("check", "Check a rule or witness table against axioms")->fallthrough();
    auto* find = app.add_subcommand("search", "Decide whether a table satisfies the axioms")->fallthrough();
    auto* replay = app.add_subcommand("replay", "Replay an impossibility proof as a checked trace")->fallthrough();
    auto* table = app.add_subcommand("table", "Reproduce the verdict grid")->fallthrough();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    if (!reversed.empty())
        reversed.pop_back();
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? Ok : UsageError;
    }

    try {
        if (count->parsed())
            return do_count(config, out);
        if (check->parsed())
            return do_check(config, out);
        if (find->parsed())
            return do_search(config, out);
        if (replay->parsed())
            return do_replay(config, out);
        if (table->parsed())
            return do_table(config, out);
    } catch (const InstanceTooLarge& e) {
        err << "cap exceeded: " << e.what() << "\n";
        return CapExceeded;
    } catch (const std::overflow_error& e) {
        err << "cap exceeded: " << e.what() << "\n";
        return CapExceeded;
    } catch (const ReplayFailure& e) {
        err << "replay failure: " << e.what() << "\n";
        return ReplayFailed;
    } catch (const ProofPreconditionError& e) {
        err << "precondition error: " << e.what() << "\n";
        return UsageError;
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << "\n";
        return UsageError;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return UsageError;
    } catch (const std::out_of_range& e) {
        err << "error: " << e.what() << "\n";
        return UsageError;
    }
    return UsageError;
}

} // namespace cafcheck::cli
