#include "cafcheck/serialize.hpp"

#include <json.hpp>

#include <algorithm>
#include <sstream>

namespace cafcheck::io {

namespace {

using Json = nlohmann::ordered_json;

constexpr ExpertiseKind expertise_kinds[] = {ExpertiseKind::Expertise, ExpertiseKind::CategoricalExpertise,
                                             ExpertiseKind::MinimalExpertise,
                                             ExpertiseKind::SemiDecisiveExpertise};
constexpr DecisivenessKind decisiveness_kinds[] = {
    DecisivenessKind::ObjectDecisive, DecisivenessKind::CategoricallyDecisive, DecisivenessKind::MinimallyDecisive,
    DecisivenessKind::MinimallySemiDecisive};

std::string dump(const Json& json) { return json.dump(2) + "\n"; }

std::size_t display_width(std::string_view text)
{
    return static_cast<std::size_t>(
        std::ranges::count_if(text, [](char c) { return (static_cast<unsigned char>(c) & 0xC0) != 0x80; }));
}

std::string pad(std::string_view text, std::size_t width)
{
    std::string out(text);
    const auto shown = display_width(text);
    if (shown < width)
        out.append(width - shown, ' ');
    return out;
}

std::string csv_field(std::string_view text)
{
    if (text.find_first_of(",\"\n") == std::string_view::npos)
        return std::string(text);
    std::string out = "\"";
    for (char c : text) {
        if (c == '"')
            out += '"';
        out += c;
    }
    return out + "\"";
}

std::string category_list(CategoryMask mask)
{
    std::string out;
    for (Category t = 0; t < max_categories; ++t)
        if (mask & (CategoryMask{1} << t))
            out += (out.empty() ? "" : ",") + category_name(t);
    return "{" + out + "}";
}

std::vector<int> mask_indices(CategoryMask mask)
{
    std::vector<int> out;
    for (Category t = 0; t < max_categories; ++t)
        if (mask & (CategoryMask{1} << t))
            out.push_back(t);
    return out;
}

std::string one_based(std::span<const Category> assignment)
{
    std::string out;
    for (auto t : assignment)
        out += std::to_string(t + 1);
    return out;
}

Json to_json(const Instance& instance) { return Json{{"n", instance.n()}, {"m", instance.m()}, {"p", instance.p()}}; }

Json to_json(const DecisivenessClaim& claim)
{
    Json json{{"kind", to_string(claim.kind)}, {"individual", claim.individual}};
    if (claim.object)
        json["object"] = *claim.object;
    if (claim.category)
        json["category"] = *claim.category;
    json["description"] = describe(claim);
    return json;
}

Json to_json(ExpertiseKind kind, const ExpertiseWitness& witness)
{
    return Json{{"axiom", to_string(kind)}, {"first", to_json(witness.first)}, {"second", to_json(witness.second)}};
}

Json to_json(const AxiomViolation& violation)
{
    Json json{{"axiom", violation.axiom}, {"profiles", violation.profiles}};
    if (violation.object)
        json["object"] = *violation.object;
    if (violation.category)
        json["category"] = *violation.category;
    if (violation.claim)
        json["claim"] = to_json(*violation.claim);
    if (violation.direction != ViolationDirection::None)
        json["direction"] = violation.direction == ViolationDirection::Forward ? "forward" : "backward";
    json["reason"] = violation.reason;
    return json;
}

Json to_json(const SearchStats& stats, bool brute_force)
{
    if (brute_force)
        return Json{{"tables_enumerated", stats.tables_enumerated}};
    return Json{{"tuples_explored", stats.tuples_explored},
                {"tuples_pruned", stats.tuples_pruned},
                {"tuples_skipped", stats.tuples_skipped},
                {"nodes", stats.nodes},
                {"backtracks", stats.backtracks}};
}

Json axiom_names(const AxiomSet& axioms)
{
    Json names = Json::array();
    std::string list = axioms.names();
    std::size_t start = 0;
    while (start < list.size()) {
        const auto end = std::min(list.find(',', start), list.size());
        names.push_back(list.substr(start, end - start));
        start = end + 1;
    }
    return names;
}

Json witness_json(const CafTable& table, const std::vector<AxiomWitness>& witnesses)
{
    Json entries = Json::array();
    for (std::size_t r = 0; r < table.size(); ++r) {
        const auto assignment = table.output(r).assignment();
        entries.push_back(Json::array({r, std::vector<Category>(assignment.begin(), assignment.end())}));
    }
    Json claims = Json::array();
    for (const auto& w : witnesses)
        claims.push_back(to_json(w.kind, w.witness));
    return Json{{"instance", to_json(table.instance())}, {"entries", std::move(entries)},
                {"witness_claims", std::move(claims)}};
}

std::string witness_text(const std::vector<AxiomWitness>& witnesses)
{
    std::string out;
    for (const auto& w : witnesses)
        out += "witness (" + std::string(to_string(w.kind)) + "): " + describe(w.witness.first) + "; "
               + describe(w.witness.second) + "\n";
    return out;
}

std::string table_text(const CafTable& table)
{
    std::ostringstream out;
    const auto& space = table.space();
    const int n = table.instance().n();
    out << "table (each classification lists the category of x₁, x₂, ... in order):\n";
    for (std::size_t r = 0; r < table.size(); ++r) {
        out << "  " << r << ": ";
        for (Individual i = 0; i < n; ++i)
            out << (i ? " | " : "") << one_based(space.classification(space.member(r, i)).assignment());
        out << " -> " << one_based(table.output(r).assignment()) << "\n";
    }
    return out.str();
}

// ---------------------------------------------------------------------------
// Traces

std::string step_text(const ContradictionTrace& trace, const TraceStep& step)
{
    std::string out = trace.profile_names[step.profile] + ": " + object_name(step.object) + " ∈ "
                      + category_list(step.domain_after) + "  [" + std::string(to_string(step.rule));
    if (step.claim)
        out += ", claim " + std::to_string(*step.claim + 1);
    if (step.source_profile)
        out += " from " + trace.profile_names[*step.source_profile];
    return out + "]";
}

void node_text(const ContradictionTrace& trace, const TraceNode& node, int depth, int& counter,
               std::ostringstream& out)
{
    const std::string indent(static_cast<std::size_t>(2 * depth + 2), ' ');
    for (const auto& step : node.steps)
        out << indent << ++counter << ". " << step_text(trace, step) << "\n";
    if (node.terminal) {
        out << indent << "contradiction at " << trace.profile_names[node.terminal->profile] << ": "
            << node.terminal->conclusion << "\n";
        return;
    }
    if (!node.split_profile)
        return;
    const auto& name = trace.profile_names[*node.split_profile];
    out << indent << "some object covers " << category_name(node.split_category) << " at " << name << ":\n";
    for (std::size_t b = 0; b < node.branches.size(); ++b) {
        out << indent << "case " << object_name(node.branch_objects[b]) << " ∈ {"
            << category_name(node.split_category) << "} at " << name << ":\n";
        node_text(trace, node.branches[b], depth + 1, counter, out);
    }
}

Json node_json(const ContradictionTrace& trace, const TraceNode& node)
{
    Json steps = Json::array();
    for (const auto& step : node.steps) {
        Json s{{"rule", to_string(step.rule)}, {"profile", trace.profile_names[step.profile]}, {"object", step.object}};
        if (step.claim)
            s["claim"] = *step.claim;
        if (step.source_profile)
            s["source_profile"] = trace.profile_names[*step.source_profile];
        s["candidates"] = mask_indices(step.domain_after);
        steps.push_back(std::move(s));
    }
    Json json{{"steps", std::move(steps)}};
    if (node.terminal) {
        const auto& c = *node.terminal;
        Json terminal{{"profile", trace.profile_names[c.profile]}};
        if (c.empty_object)
            terminal["empty_object"] = *c.empty_object;
        else {
            terminal["categories"] = mask_indices(c.categories);
            terminal["candidates"] = c.candidates;
        }
        terminal["conclusion"] = c.conclusion;
        json["contradiction"] = std::move(terminal);
    } else if (node.split_profile) {
        Json branches = Json::array();
        for (std::size_t b = 0; b < node.branches.size(); ++b)
            branches.push_back(Json{{"object", node.branch_objects[b]}, {"node", node_json(trace, node.branches[b])}});
        json["split"] = Json{{"profile", trace.profile_names[*node.split_profile]},
                             {"category", node.split_category},
                             {"branches", std::move(branches)}};
    }
    return json;
}

void node_csv(const ContradictionTrace& trace, const TraceNode& node, const std::string& path, std::ostringstream& out)
{
    int index = 0;
    for (const auto& step : node.steps) {
        out << csv_field(path) << ',' << ++index << ',' << to_string(step.rule) << ','
            << csv_field(trace.profile_names[step.profile]) << ',' << step.object << ','
            << (step.claim ? std::to_string(*step.claim) : "") << ','
            << (step.source_profile ? csv_field(trace.profile_names[*step.source_profile]) : "") << ','
            << csv_field(category_list(step.domain_after)) << ",\n";
    }
    if (node.terminal) {
        out << csv_field(path) << ',' << ++index << ",contradiction," << csv_field(trace.profile_names[node.terminal->profile])
            << ',' << (node.terminal->empty_object ? std::to_string(*node.terminal->empty_object) : "") << ",,,"
            << csv_field(category_list(node.terminal->categories)) << ',' << csv_field(node.terminal->conclusion)
            << "\n";
        return;
    }
    for (std::size_t b = 0; b < node.branches.size(); ++b)
        node_csv(trace, node.branches[b], path + "/" + object_name(node.branch_objects[b]), out);
}

std::string binding_text(const ContradictionTrace& trace)
{
    const auto& b = trace.binding;
    std::string out = "individual 1 = " + individual_name(b.first) + ", individual 2 = " + individual_name(b.second);
    if (trace.proof != ProofId::Prop5)
        out += ", x = " + object_name(b.x) + ", y = " + object_name(b.y);
    if (trace.proof != ProofId::Prop4)
        out += ", t′ = " + category_name(b.t1) + ", t″ = " + category_name(b.same_category ? b.t1 : b.t2);
    return out;
}

// ---------------------------------------------------------------------------
// Parsing

template <class T>
T field(const Json& json, const char* key, const char* what)
{
    if (!json.is_object() || !json.contains(key))
        throw FormatError(std::string(what) + " lacks \"" + key + "\"");
    try {
        return json.at(key).get<T>();
    } catch (const nlohmann::json::exception&) {
        throw FormatError(std::string(what) + " has a malformed \"" + key + "\"");
    }
}

DecisivenessClaim parse_claim(const Json& json, const Instance& instance)
{
    const auto kind_name = field<std::string>(json, "kind", "claim");
    const auto kind = std::ranges::find_if(decisiveness_kinds, [&](auto k) { return to_string(k) == kind_name; });
    if (kind == std::end(decisiveness_kinds))
        throw FormatError("unknown claim kind '" + kind_name + "'");
    DecisivenessClaim claim;
    claim.kind = *kind;
    claim.individual = field<int>(json, "individual", "claim");
    if (json.contains("object"))
        claim.object = field<int>(json, "object", "claim");
    if (json.contains("category"))
        claim.category = field<int>(json, "category", "claim");
    try {
        claim.validate(instance);
    } catch (const std::exception& e) {
        throw FormatError(std::string("invalid claim: ") + e.what());
    }
    return claim;
}

} // namespace

Format parse_format(std::string_view text)
{
    if (text == "json")
        return Format::Json;
    if (text == "csv")
        return Format::Csv;
    if (text == "text")
        return Format::Text;
    throw FormatError("unknown format '" + std::string(text) + "' (expected json, csv or text)");
}

std::string describe(const DecisivenessClaim& claim)
{
    const std::string who = "individual " + individual_name(claim.individual);
    switch (claim.kind) {
    case DecisivenessKind::ObjectDecisive:
        return who + " decisive over " + object_name(*claim.object);
    case DecisivenessKind::CategoricallyDecisive:
        return who + " categorically decisive over " + category_name(*claim.category);
    case DecisivenessKind::MinimallyDecisive:
        return who + " minimally decisive over (" + object_name(*claim.object) + ", "
               + category_name(*claim.category) + ")";
    case DecisivenessKind::MinimallySemiDecisive:
        return who + " minimally semi-decisive over (" + object_name(*claim.object) + ", "
               + category_name(*claim.category) + ")";
    }
    return who;
}

std::string render_profile(const Profile& profile, std::string_view name)
{
    const int n = profile.individuals();
    const int m = profile[0].objects();
    const int p = profile[0].categories();
    std::vector<std::vector<std::string>> grid(static_cast<std::size_t>(p) + 1);
    grid[0].emplace_back(name);
    for (Individual i = 0; i < n; ++i)
        grid[0].push_back(individual_name(i));
    for (Category t = 0; t < p; ++t) {
        auto& row = grid[static_cast<std::size_t>(t) + 1];
        row.push_back(category_name(t));
        for (Individual i = 0; i < n; ++i) {
            std::string cell;
            for (Object x = 0; x < m; ++x)
                if (profile[i][x] == t)
                    cell += (cell.empty() ? "" : ",") + object_name(x);
            row.push_back(cell);
        }
    }
    std::vector<std::size_t> widths(static_cast<std::size_t>(n) + 1, 0);
    for (const auto& row : grid)
        for (std::size_t k = 0; k < row.size(); ++k)
            widths[k] = std::max(widths[k], display_width(row[k]));
    std::string out;
    for (std::size_t r = 0; r < grid.size(); ++r) {
        std::string line = "    ";
        for (std::size_t k = 0; k < grid[r].size(); ++k)
            line += (k == 1 ? " | " : k > 1 ? "  " : "") + pad(grid[r][k], widths[k]);
        while (!line.empty() && line.back() == ' ')
            line.pop_back();
        out += line + "\n";
        if (r == 0) {
            std::size_t total = 0;
            for (auto w : widths)
                total += w + 2;
            out += "    " + std::string(total + 1, '-') + "\n";
        }
    }
    return out;
}

std::string render_counts(int m, int p, std::optional<int> n, Format format)
{
    const auto classifications = count_surjections(m, p);
    std::optional<std::uint64_t> profiles;
    if (n) {
        profiles = 1;
        for (int i = 0; i < *n; ++i)
            if (__builtin_mul_overflow(*profiles, classifications, &*profiles))
                throw std::overflow_error("profile count does not fit in 64 bits");
    }
    switch (format) {
    case Format::Json: {
        Json json{{"m", m}, {"p", p}, {"classifications", classifications}};
        if (n) {
            json["n"] = *n;
            json["profiles"] = *profiles;
        }
        return dump(json);
    }
    case Format::Csv:
        return "m,p,n,classifications,profiles\n" + std::to_string(m) + "," + std::to_string(p) + ","
               + (n ? std::to_string(*n) : "") + "," + std::to_string(classifications) + ","
               + (profiles ? std::to_string(*profiles) : "") + "\n";
    case Format::Text:
        break;
    }
    std::string out = "classifications: " + std::to_string(classifications) + "\n";
    if (profiles)
        out += "profiles: " + std::to_string(*profiles) + "\n";
    return out;
}

std::string render(const SearchOutcome& outcome, Format format)
{
    const bool brute_force = outcome.model_count.has_value();
    switch (format) {
    case Format::Json: {
        Json json{{"instance", to_json(outcome.instance)},
                  {"axioms", axiom_names(outcome.axioms)},
                  {"engine", brute_force ? "brute-force" : "propagation"},
                  {"verdict", to_string(outcome.verdict)}};
        if (outcome.axioms.categorical_expertise)
            json["categorical_mode"] =
                outcome.axioms.categorical_mode == CategoryMode::Distinct ? "distinct" : "permissive";
        json["certificate"] = to_json(outcome.stats, brute_force);
        if (outcome.model_count)
            json["model_count"] = *outcome.model_count;
        if (outcome.table)
            json["witness"] = witness_json(*outcome.table, outcome.witnesses);
        return dump(json);
    }
    case Format::Csv: {
        std::ostringstream out;
        out << "n,m,p,axioms,engine,verdict,tuples_explored,tuples_pruned,tuples_skipped,nodes,backtracks,"
               "tables_enumerated,model_count\n";
        std::string names = outcome.axioms.names();
        std::ranges::replace(names, ',', ';');
        const auto& s = outcome.stats;
        out << outcome.instance.n() << ',' << outcome.instance.m() << ',' << outcome.instance.p() << ',' << names
            << ',' << (brute_force ? "brute-force" : "propagation") << ',' << to_string(outcome.verdict) << ','
            << s.tuples_explored << ',' << s.tuples_pruned << ',' << s.tuples_skipped << ',' << s.nodes << ','
            << s.backtracks << ',' << s.tables_enumerated << ','
            << (outcome.model_count ? std::to_string(*outcome.model_count) : "") << "\n";
        return out.str();
    }
    case Format::Text:
        break;
    }
    std::ostringstream out;
    const auto& s = outcome.stats;
    out << "instance: " << to_string(outcome.instance) << "\n"
        << "axioms: " << outcome.axioms.names() << "\n"
        << "engine: " << (brute_force ? "brute-force" : "propagation") << "\n"
        << "verdict: " << to_string(outcome.verdict) << "\n";
    if (brute_force)
        out << "tables enumerated: " << s.tables_enumerated << "\nsatisfying tables: " << *outcome.model_count
            << "\n";
    else
        out << "witness tuples explored: " << s.tuples_explored << ", pruned: " << s.tuples_pruned
            << ", skipped by symmetry: " << s.tuples_skipped << "\nnodes: " << s.nodes
            << ", backtracks: " << s.backtracks << "\n";
    out << witness_text(outcome.witnesses);
    if (outcome.table)
        out << table_text(*outcome.table);
    return out.str();
}

std::string render(const CheckReport& report, Format format)
{
    auto axiom_detail = [](const AxiomCheck& a) -> std::string {
        if (a.violation)
            return a.violation->reason;
        if (a.witness)
            return describe(a.witness->first) + "; " + describe(a.witness->second);
        return a.passed ? "" : "no admissible witness pair";
    };
    switch (format) {
    case Format::Json: {
        Json axioms = Json::array();
        for (const auto& a : report.axioms) {
            Json entry{{"axiom", a.axiom}, {"status", a.passed ? "pass" : "violated"}};
            if (a.violation)
                entry["violation"] = to_json(*a.violation);
            if (a.witness)
                entry["witness"] = Json{{"first", to_json(a.witness->first)}, {"second", to_json(a.witness->second)}};
            if (!a.passed && !a.violation)
                entry["reason"] = "no admissible witness pair";
            axioms.push_back(std::move(entry));
        }
        Json claims = Json::array();
        for (const auto& c : report.claims) {
            Json entry{{"claim", to_json(c.claim)}, {"status", c.result.passed() ? "pass" : "violated"}};
            if (c.result.violation)
                entry["violation"] = to_json(*c.result.violation);
            claims.push_back(std::move(entry));
        }
        return dump(Json{{"instance", to_json(report.instance)},
                         {"source", report.source},
                         {"surjective", report.surjective},
                         {"passed", report.passed()},
                         {"axioms", std::move(axioms)},
                         {"designated_claims", std::move(claims)}});
    }
    case Format::Csv: {
        std::string out = "item,status,detail\n";
        out += "surjective," + std::string(report.surjective ? "pass" : "violated") + ",\n";
        for (const auto& a : report.axioms)
            out += csv_field(a.axiom) + "," + (a.passed ? "pass" : "violated") + "," + csv_field(axiom_detail(a))
                   + "\n";
        for (const auto& c : report.claims)
            out += csv_field(describe(c.claim)) + "," + (c.result.passed() ? "pass" : "violated") + ","
                   + csv_field(c.result.violation ? c.result.violation->reason : "") + "\n";
        return out;
    }
    case Format::Text:
        break;
    }
    std::ostringstream out;
    out << "source: " << report.source << "\ninstance: " << to_string(report.instance) << "\n"
        << "every output surjective: " << (report.surjective ? "yes" : "no") << "\n";
    for (const auto& a : report.axioms) {
        const auto detail = axiom_detail(a);
        out << a.axiom << ": " << (a.passed ? "pass" : "violated") << (detail.empty() ? "" : " (" + detail + ")")
            << "\n";
    }
    if (!report.claims.empty())
        out << "designated claims:\n";
    for (const auto& c : report.claims)
        out << "  " << describe(c.claim) << ": " << (c.result.passed() ? "pass" : "violated")
            << (c.result.violation ? " (" + c.result.violation->reason + ")" : "") << "\n";
    out << "overall: " << (report.passed() ? "pass" : "violated") << "\n";
    return out.str();
}

std::string render(const ContradictionTrace& trace, Format format)
{
    switch (format) {
    case Format::Json: {
        Json claims = Json::array();
        for (const auto& c : trace.claims)
            claims.push_back(to_json(c));
        Json profiles = Json::array();
        for (std::size_t k = 0; k < trace.profiles.size(); ++k) {
            Json members = Json::array();
            for (const auto& member : trace.profiles[k].members())
                members.push_back(std::vector<Category>(member.assignment().begin(), member.assignment().end()));
            profiles.push_back(Json{{"name", trace.profile_names[k]}, {"classifications", std::move(members)}});
        }
        const auto& b = trace.binding;
        return dump(Json{{"proof", to_string(trace.proof)},
                         {"instance", to_json(trace.instance)},
                         {"binding",
                          {{"first", b.first},
                           {"second", b.second},
                           {"x", b.x},
                           {"y", b.y},
                           {"t1", b.t1},
                           {"t2", b.t2},
                           {"same_category", b.same_category}}},
                         {"claims", std::move(claims)},
                         {"profiles", std::move(profiles)},
                         {"trace", node_json(trace, trace.root)},
                         {"conclusions", conclusions(trace)},
                         {"verified", true}});
    }
    case Format::Csv: {
        std::ostringstream out;
        out << "branch,step,rule,profile,object,claim,source_profile,candidates,conclusion\n";
        node_csv(trace, trace.root, "root", out);
        return out.str();
    }
    case Format::Text:
        break;
    }
    std::ostringstream out;
    out << "replay " << to_string(trace.proof) << " on " << to_string(trace.instance) << "\n"
        << "binding: " << binding_text(trace) << "\n"
        << "claims:\n";
    for (std::size_t k = 0; k < trace.claims.size(); ++k)
        out << "  " << k + 1 << ". " << describe(trace.claims[k]) << "\n";
    out << "profiles (rows are categories, columns are individuals):\n";
    for (std::size_t k = 0; k < trace.profiles.size(); ++k)
        out << render_profile(trace.profiles[k], trace.profile_names[k]);
    out << "deductions:\n";
    int counter = 0;
    node_text(trace, trace.root, 0, counter, out);
    const auto closing = conclusions(trace);
    const bool uniform = std::ranges::all_of(closing, [&](const std::string& c) { return c == closing.front(); });
    out << "result: " << (uniform ? closing.front() : "every case ends in a contradiction") << "\n";
    return out.str();
}

std::string render(const TableReport& report, Format format)
{
    auto verdict_word = [](const TableCell& cell) -> std::string {
        switch (cell.status) {
        case CellStatus::SkippedCap:
            return "skipped: cap";
        case CellStatus::Timeout:
            return "timeout";
        default:
            return *cell.verdict == Verdict::Satisfiable ? "Yes" : "No";
        }
    };
    std::size_t counts[4] = {0, 0, 0, 0};
    for (const auto& row : report.rows)
        for (const auto& cell : row.cells)
            ++counts[static_cast<int>(cell.status)];
    const std::string note = "instances outside this grid are predicted only, not machine-checked";

    switch (format) {
    case Format::Json: {
        Json rows = Json::array();
        for (const auto& row : report.rows) {
            Json cells = Json::array();
            for (const auto& cell : row.cells) {
                Json c{{"instance", to_json(cell.instance)},
                       {"predicted", cell.prediction.satisfiable ? "Yes" : "No"},
                       {"basis", cell.prediction.basis},
                       {"verdict", cell.verdict ? Json(to_string(*cell.verdict)) : Json(nullptr)},
                       {"status", to_string(cell.status)}};
                if (cell.verdict)
                    c["certificate"] = to_json(cell.stats, false);
                cells.push_back(std::move(c));
            }
            rows.push_back(
                Json{{"axiom", to_string(row.axiom)}, {"context", to_string(row.column)}, {"cells", std::move(cells)}});
        }
        Json instances = Json::array();
        for (const auto& instance : report.instances)
            instances.push_back(to_json(instance));
        return dump(Json{{"instances", std::move(instances)},
                         {"rows", std::move(rows)},
                         {"summary",
                          {{"agree", counts[0]}, {"disagree", counts[1]}, {"skipped", counts[2]}, {"timeout", counts[3]}}},
                         {"note", note}});
    }
    case Format::Csv: {
        std::ostringstream out;
        out << "axiom,context,n,m,p,predicted,basis,verdict,status,nodes,backtracks\n";
        for (const auto& row : report.rows)
            for (const auto& cell : row.cells)
                out << to_string(row.axiom) << ',' << to_string(row.column) << ',' << cell.instance.n() << ','
                    << cell.instance.m() << ',' << cell.instance.p() << ','
                    << (cell.prediction.satisfiable ? "Yes" : "No") << ',' << cell.prediction.basis << ','
                    << (cell.verdict ? to_string(*cell.verdict) : "") << ',' << csv_field(to_string(cell.status))
                    << ',' << cell.stats.nodes << ',' << cell.stats.backtracks << "\n";
        return out.str();
    }
    case Format::Text:
        break;
    }

    std::vector<std::vector<std::string>> grid;
    std::vector<std::string> header{"axiom", "context"};
    for (const auto& instance : report.instances)
        header.push_back("(" + std::to_string(instance.m()) + "," + std::to_string(instance.p()) + ")");
    grid.push_back(header);
    for (const auto& row : report.rows) {
        std::vector<std::string> line{std::string(to_string(row.axiom)), std::string(to_string(row.column))};
        for (const auto& cell : row.cells)
            line.push_back(verdict_word(cell) + (cell.status == CellStatus::Disagree ? " (!)" : ""));
        grid.push_back(std::move(line));
    }
    std::vector<std::size_t> widths(header.size(), 0);
    for (const auto& line : grid)
        for (std::size_t k = 0; k < line.size(); ++k)
            widths[k] = std::max(widths[k], display_width(line[k]));

    std::ostringstream out;
    const int n = report.instances.empty() ? 0 : report.instances.front().n();
    out << "verdicts for n = " << n << ", columns (m,p); Yes means some table satisfies the axioms\n";
    for (const auto& line : grid) {
        std::string text;
        for (std::size_t k = 0; k < line.size(); ++k)
            text += pad(line[k], widths[k] + 2);
        while (!text.empty() && text.back() == ' ')
            text.pop_back();
        out << text << "\n";
    }
    out << "cells: " << counts[0] + counts[1] + counts[2] + counts[3] << ", agree: " << counts[0]
        << ", disagree: " << counts[1] << ", skipped: " << counts[2] << ", timeout: " << counts[3] << "\n";
    for (const auto& row : report.rows)
        for (const auto& cell : row.cells)
            if (cell.status == CellStatus::Disagree)
                out << "disagreement: " << to_string(row.axiom) << " " << to_string(row.column) << " at "
                    << to_string(cell.instance) << ": search says " << verdict_word(cell) << ", expected "
                    << (cell.prediction.satisfiable ? "Yes" : "No") << " (" << cell.prediction.basis << ")\n";
    out << "note: " << note << "\n";
    return out.str();
}

std::string witness_file(const CafTable& table, const std::vector<AxiomWitness>& witnesses)
{
    return dump(witness_json(table, witnesses));
}

LoadedWitness parse_witness(std::string_view text, const Limits& limits)
{
    Json json;
    try {
        json = Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw FormatError(std::string("witness file is not valid JSON: ") + e.what());
    }
    const auto inst = field<Json>(json, "instance", "witness file");
    std::optional<Instance> instance;
    try {
        instance.emplace(field<int>(inst, "n", "instance"), field<int>(inst, "m", "instance"),
                         field<int>(inst, "p", "instance"));
    } catch (const InvalidInstance& e) {
        throw FormatError(std::string("witness file instance is invalid: ") + e.what());
    }
    const auto space = ProfileSpace::make(*instance, limits);

    const auto entries = field<Json>(json, "entries", "witness file");
    if (!entries.is_array())
        throw FormatError("witness file \"entries\" must be an array");
    std::vector<std::optional<std::uint32_t>> outputs(space->profile_count());
    for (const auto& entry : entries) {
        if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number_unsigned() || !entry[1].is_array())
            throw FormatError("each entry must be [profile_rank, [categories...]]");
        const auto r = entry[0].get<std::size_t>();
        if (r >= outputs.size())
            throw FormatError("entry for profile " + std::to_string(r) + " is out of range");
        if (outputs[r])
            throw FormatError("duplicate entry for profile " + std::to_string(r));
        std::vector<Category> assignment;
        try {
            assignment = entry[1].get<std::vector<Category>>();
            if (static_cast<int>(assignment.size()) != instance->m())
                throw FormatError("entry for profile " + std::to_string(r) + " has "
                                  + std::to_string(assignment.size()) + " categories, expected "
                                  + std::to_string(instance->m()));
            outputs[r] = static_cast<std::uint32_t>(space->rank_of(Classification(assignment, instance->p())));
        } catch (const nlohmann::json::exception&) {
            throw FormatError("entry for profile " + std::to_string(r) + " is malformed");
        } catch (const FormatError&) {
            throw;
        } catch (const std::invalid_argument& e) {
            throw FormatError("entry for profile " + std::to_string(r) + " is not a classification: " + e.what());
        }
    }
    std::vector<std::uint32_t> ranks;
    ranks.reserve(outputs.size());
    for (std::size_t r = 0; r < outputs.size(); ++r) {
        if (!outputs[r])
            throw FormatError("witness file has no entry for profile " + std::to_string(r));
        ranks.push_back(*outputs[r]);
    }

    std::vector<AxiomWitness> witnesses;
    if (json.contains("witness_claims")) {
        const auto& claims = json.at("witness_claims");
        if (!claims.is_array())
            throw FormatError("\"witness_claims\" must be an array");
        for (const auto& c : claims) {
            const auto name = field<std::string>(c, "axiom", "witness claim");
            const auto kind = std::ranges::find_if(expertise_kinds, [&](auto k) { return to_string(k) == name; });
            if (kind == std::end(expertise_kinds))
                throw FormatError("unknown axiom '" + name + "' in witness claims");
            ExpertiseWitness witness{parse_claim(field<Json>(c, "first", "witness claim"), *instance),
                                     parse_claim(field<Json>(c, "second", "witness claim"), *instance)};
            try {
                witness.validate(*kind, *instance);
            } catch (const std::invalid_argument& e) {
                throw FormatError(std::string("inadmissible witness pair: ") + e.what());
            }
            witnesses.push_back({*kind, witness});
        }
    }
    return {CafTable(space, std::move(ranks)), std::move(witnesses)};
}

} // namespace cafcheck::io
