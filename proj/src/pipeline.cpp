#include "treefloer/pipeline.hpp"

#include "treefloer/error.hpp"

#include <nlohmann/json.hpp>

#include <chrono>
#include <iomanip>
#include <sstream>

namespace treefloer {

namespace {

class StageClock {
public:
    explicit StageClock(Report& r) : report_(r), start_(std::chrono::steady_clock::now()) {}
    void lap(const char* stage) {
        const auto now = std::chrono::steady_clock::now();
        report_.timings.emplace_back(stage, std::chrono::duration<double>(now - start_).count());
        start_ = now;
    }

private:
    Report& report_;
    std::chrono::steady_clock::time_point start_;
};

std::string bits_string(ResolutionBits bits, int n) {
    std::string s;
    for (int j = 0; j < n; ++j)
        s += ((bits >> j) & 1) ? '1' : '0';
    return s;
}

} // namespace

bool Report::checks_passed() const {
    for (const auto& c : checks)
        if (!c.passed)
            return false;
    return true;
}

CheckLevel parse_check_level(const std::string& s) {
    if (s == "none")
        return CheckLevel::None;
    if (s == "fast")
        return CheckLevel::Fast;
    if (s == "full")
        return CheckLevel::Full;
    throw Error(ErrorKind::MalformedInput, "cli", "check level must be none, fast or full");
}

std::string to_string(CheckLevel level) {
    switch (level) {
    case CheckLevel::None: return "none";
    case CheckLevel::Fast: return "fast";
    case CheckLevel::Full: return "full";
    }
    return "fast";
}

Report run(const RunConfig& cfg) {
    Report rep;
    rep.name = cfg.name;
    StageClock clock(rep);

    PlanarDiagram d = parse_pd(cfg.pd);
    if (cfg.mirror)
        d = mirror(d);
    rep.pd = d.to_pd_string();
    const Coloring col = faces_and_coloring(d, cfg.outer_face);
    rep.unbounded_face = col.unbounded_face;
    const BlackGraph bg = black_graph(d, col, cfg.orientation);
    const SignData sd = sign_data(d);
    clock.lap("diagram");

    Marking mk;
    if (cfg.marking_json)
        mk = marking_from_json(d, col, *cfg.marking_json);
    else if (cfg.points_per_arc > 0)
        mk = make_marking(d, col, std::vector<int>(static_cast<std::size_t>(d.num_arcs()), cfg.points_per_arc),
                          default_outer_arc(d, col));
    else
        mk = auto_mark(d, col, bg);
    const int n = d.num_crossings();
    OmegaAssignment om = cfg.omega ? make_omega(*cfg.omega, n <= 20) : default_omega(n);
    rep.omega = om.values;
    rep.genericity = om.mode;
    const WeightTable wt = assign_weights(d, mk, bg, om);
    clock.lap("marking");

    const auto tree_bits = enumerate_trees(d, bg);
    std::vector<TreeResolution> trees;
    trees.reserve(tree_bits.size());
    for (auto bits : tree_bits)
        trees.push_back(trace_resolution(d, col, bg, mk, wt, bits));
    auto pairs = double_successors(d, bg, wt, trees);
    rep.successor_pairs = static_cast<long>(pairs.size());
    clock.lap("resolutions");

    auto cx = std::make_shared<ChainComplex>(
        build_complex(std::move(trees), std::move(pairs), sd.n_minus, mk.num_points(), cfg.threads));
    clock.lap("complex");

    if (cfg.check == CheckLevel::Full) {
        rep.checks.push_back({"matrix_tree", matrix_tree_count(bg) == static_cast<long long>(cx->trees.size())});
        if (n <= 20)
            rep.checks.push_back({"tree_enumeration", enumerate_trees_brute_force(d, bg) == tree_bits});
        bool annihilated = true;
        for (const auto& sp : cx->pairs)
            annihilated = annihilated &&
                          relation_annihilated(sp, cx->trees[sp.source], cx->trees[sp.target], mk.num_points());
        rep.checks.push_back({"well_defined", annihilated});
    }
    if (cfg.check != CheckLevel::None)
        rep.checks.push_back({"d_squared", verify_d_squared(*cx)});
    clock.lap("checks");

    rep.graded = graded_homology(*cx, cfg.threads);
    rep.invariants = normalize_and_report(rep.graded, sd, mk.num_points(), n, static_cast<long>(cx->trees.size()));
    clock.lap("homology");

    rep.trees = cx->trees;
    rep.tree_gradings = cx->grading;
    if (cfg.keep_complex)
        rep.complex = cx;
    return rep;
}

std::string report_to_json(const Report& r, bool include_timings) {
    const InvariantReport& inv = r.invariants;
    nlohmann::ordered_json j;
    j["schema_version"] = kReportSchemaVersion;
    if (!r.name.empty())
        j["name"] = r.name;
    j["pd"] = r.pd;
    j["crossings"] = inv.n;
    j["components"] = inv.components;
    j["n_plus"] = inv.n_plus;
    j["n_minus"] = inv.n_minus;
    j["marked_points"] = inv.m;
    j["trees"] = inv.trees;
    j["successor_pairs"] = r.successor_pairs;
    j["unbounded_face"] = r.unbounded_face;
    j["omega"] = r.omega;
    j["genericity"] = r.genericity == GenericityMode::Verified ? "verified" : "assumed";
    auto& ranks = j["ranks"] = nlohmann::ordered_json::object();
    for (const auto& [g2, v] : inv.normalized)
        ranks[grading_string(g2)] = v;
    j["total_rank"] = inv.total;
    j["width"] = inv.width;
    j["thin"] = inv.thin;
    j["supported_grading_if_thin"] = nullptr;
    if (inv.supported_grading)
        j["supported_grading_if_thin"] = grading_string(*inv.supported_grading);
    auto& raw = j["raw"] = nlohmann::ordered_json::object();
    for (const auto& [g2, dim] : r.graded.chain) {
        nlohmann::ordered_json e;
        e["chain"] = dim;
        e["rank_out"] = r.graded.rank_out.count(g2) ? r.graded.rank_out.at(g2) : 0;
        e["homology"] = r.graded.homology.at(g2);
        if (r.graded.method.count(g2))
            e["rank_method"] = r.graded.method.at(g2) == RankMethod::Bounds ? "bounds" : "elimination";
        raw[grading_string(g2)] = std::move(e);
    }
    auto& checks = j["checks"] = nlohmann::ordered_json::object();
    for (const auto& c : r.checks)
        checks[c.name] = c.passed;
    if (include_timings) {
        auto& t = j["timings"] = nlohmann::ordered_json::object();
        for (const auto& [stage, secs] : r.timings)
            t[stage] = secs;
    }
    return j.dump(2);
}

std::string report_to_table(const Report& r) {
    const InvariantReport& inv = r.invariants;
    std::ostringstream os;
    if (!r.name.empty())
        os << r.name << "\n";
    os << "crossings " << inv.n << ", components " << inv.components << ", n+ " << inv.n_plus << ", n- "
       << inv.n_minus << ", marked points " << inv.m << ", trees " << inv.trees << "\n";
    os << std::left << std::setw(10) << "grading" << "rank\n";
    for (const auto& [g2, v] : inv.normalized)
        os << std::setw(10) << grading_string(g2) << v << "\n";
    os << "total " << inv.total << ", width " << inv.width << (inv.thin ? ", thin" : "");
    if (inv.supported_grading)
        os << ", supported in " << grading_string(*inv.supported_grading);
    os << "\n";
    for (const auto& c : r.checks)
        os << "check " << c.name << ": " << (c.passed ? "ok" : "FAILED") << "\n";
    return os.str();
}

std::string trees_to_json(const Report& r) {
    nlohmann::ordered_json j = nlohmann::ordered_json::array();
    for (std::size_t t = 0; t < r.trees.size(); ++t) {
        const auto& tr = r.trees[t];
        nlohmann::ordered_json e;
        e["index"] = t;
        e["resolution"] = bits_string(tr.bits, r.invariants.n);
        e["grading"] = grading_string(r.tree_gradings[t]);
        std::vector<int> sigma;
        for (int p : tr.sigma)
            sigma.push_back(p + 1);
        e["sigma"] = sigma;
        e["cumweight_by_point"] = tr.cumweight;
        j.push_back(std::move(e));
    }
    return j.dump(2);
}

} // namespace treefloer
