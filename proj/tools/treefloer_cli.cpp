// treefloer: compute the graded invariant of a knot diagram from its PD code.

#include "treefloer/error.hpp"
#include "treefloer/pipeline.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using treefloer::Error;
using treefloer::RunConfig;

struct Entry {
    std::string name;
    std::string pd;
};

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw Error(treefloer::ErrorKind::MalformedInput, "cli", "cannot read " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

// One diagram per line, "name: PD". Blank lines and lines starting with '#'
// are skipped.
std::vector<Entry> read_corpus(const std::string& path) {
    std::istringstream in(read_file(path));
    std::vector<Entry> out;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        line = trim(line);
        if (line.empty() || line[0] == '#')
            continue;
        const auto colon = line.find(':');
        if (colon == std::string::npos)
            throw Error(treefloer::ErrorKind::MalformedInput, "cli",
                        path + ":" + std::to_string(lineno) + ": expected 'name: PD'");
        out.push_back({trim(line.substr(0, colon)), trim(line.substr(colon + 1))});
    }
    return out;
}

std::vector<long> parse_omega(const std::string& s) {
    std::vector<long> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        tok = trim(tok);
        std::size_t used = 0;
        long v = 0;
        try {
            v = std::stol(tok, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (tok.empty() || used != tok.size())
            throw Error(treefloer::ErrorKind::MalformedInput, "cli", "bad --omega entry '" + tok + "'");
        out.push_back(v);
    }
    return out;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out)
        throw Error(treefloer::ErrorKind::MalformedInput, "cli", "cannot write " + path);
    out << text << "\n";
}

std::string suffixed(const std::string& path, const std::string& name, bool many) {
    if (!many)
        return path;
    const auto dot = path.rfind('.');
    if (dot == std::string::npos || path.find('/', dot) != std::string::npos)
        return path + "." + name;
    return path.substr(0, dot) + "." + name + path.substr(dot);
}

nlohmann::ordered_json error_json(const std::string& name, const Error& e) {
    nlohmann::ordered_json j;
    if (!name.empty())
        j["name"] = name;
    j["error"] = {{"kind", std::string(treefloer::to_string(e.kind()))}, {"module", e.module()}, {"message", e.what()}};
    return j;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Graded knot invariant from a PD code via the spanning-tree complex"};

    std::string pd, file, omega_text, marking_path, check_text = "fast", orientation_text = "smaller";
    std::string dump_trees, dump_complex;
    int outer_face = -1, threads = 1, points_per_arc = 0;
    bool as_json = false, mirror = false, no_timing = false;

    auto* pd_opt = app.add_option("--pd", pd, "PD code, e.g. \"X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]\"");
    auto* file_opt = app.add_option("--file", file, "corpus file, one 'name: PD' per line");
    pd_opt->excludes(file_opt);
    app.add_option("--omega", omega_text, "crossing weights, comma separated");
    app.add_option("--marking", marking_path, "JSON marking: {\"points_per_arc\": {...}, \"outer_arc\": k}")
        ->check(CLI::ExistingFile);
    app.add_option("--outer-face", outer_face, "face id to treat as unbounded")->check(CLI::NonNegativeNumber);
    app.add_option("--check", check_text, "self-check level")
        ->check(CLI::IsMember({"none", "fast", "full"}))
        ->capture_default_str();
    app.add_flag("--json", as_json, "emit the JSON report");
    app.add_option("--dump-trees", dump_trees, "write tree resolutions as JSON to this path");
    app.add_option("--dump-complex", dump_complex, "write the differential blocks as JSON to this path");
    app.add_flag("--mirror", mirror, "mirror the diagram first");
    app.add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber)->capture_default_str();
    app.add_option("--edge-orientation", orientation_text, "black-graph edge tail convention")
        ->check(CLI::IsMember({"smaller", "larger"}))
        ->capture_default_str();
    app.add_option("--points-per-arc", points_per_arc, "uniform marking instead of the automatic one")
        ->check(CLI::NonNegativeNumber);
    app.add_flag("--no-timing", no_timing, "omit timings so output is byte-stable");

    CLI11_PARSE(app, argc, argv);

    std::vector<Entry> entries;
    RunConfig base;
    try {
        if (!pd_opt->empty())
            entries.push_back({"", pd});
        else if (!file_opt->empty())
            entries = read_corpus(file);
        else
            throw Error(treefloer::ErrorKind::MalformedInput, "cli", "one of --pd or --file is required");
        if (!omega_text.empty())
            base.omega = parse_omega(omega_text);
        if (!marking_path.empty())
            base.marking_json = read_file(marking_path);
        if (outer_face >= 0)
            base.outer_face = outer_face;
        base.check = treefloer::parse_check_level(check_text);
        base.orientation = orientation_text == "larger" ? treefloer::EdgeOrientation::LargerTail
                                                        : treefloer::EdgeOrientation::SmallerTail;
        base.points_per_arc = points_per_arc;
        base.mirror = mirror;
        base.threads = threads;
        base.keep_complex = !dump_complex.empty();
    } catch (const Error& e) {
        std::cerr << "error [" << e.module() << "] " << treefloer::to_string(e.kind()) << ": " << e.what() << "\n";
        return treefloer::exit_code(e.kind());
    }

    const bool many = !file.empty();
    int status = 0;
    auto results = nlohmann::ordered_json::array();
    for (const auto& entry : entries) {
        RunConfig cfg = base;
        cfg.name = entry.name;
        cfg.pd = entry.pd;
        try {
            const auto rep = treefloer::run(cfg);
            if (as_json) {
                auto j = nlohmann::ordered_json::parse(treefloer::report_to_json(rep, !no_timing));
                if (many)
                    results.push_back(std::move(j));
                else
                    std::cout << j.dump(2) << "\n";
            } else {
                std::cout << treefloer::report_to_table(rep);
                if (!no_timing) {
                    std::cout << "timing";
                    for (const auto& [stage, secs] : rep.timings)
                        std::cout << " " << stage << "=" << secs << "s";
                    std::cout << "\n";
                }
                if (many)
                    std::cout << "\n";
            }
            const std::string tag = entry.name.empty() ? "diagram" : entry.name;
            if (!dump_trees.empty())
                write_text(suffixed(dump_trees, tag, many), treefloer::trees_to_json(rep));
            if (!dump_complex.empty() && rep.complex)
                write_text(suffixed(dump_complex, tag, many), treefloer::complex_to_json(*rep.complex));
            if (!rep.checks_passed()) {
                for (const auto& c : rep.checks)
                    if (!c.passed)
                        std::cerr << (entry.name.empty() ? "" : entry.name + ": ") << "check " << c.name
                                  << " failed\n";
                status = std::max(status, 3);
            }
        } catch (const Error& e) {
            std::cerr << (entry.name.empty() ? "" : entry.name + ": ") << "error [" << e.module() << "] "
                      << treefloer::to_string(e.kind()) << ": " << e.what() << "\n";
            if (as_json && many)
                results.push_back(error_json(entry.name, e));
            status = std::max(status, treefloer::exit_code(e.kind()));
        } catch (const std::exception& e) {
            std::cerr << (entry.name.empty() ? "" : entry.name + ": ") << "internal error: " << e.what() << "\n";
            status = 3;
        }
    }
    if (as_json && many)
        std::cout << results.dump(2) << "\n";
    return status;
}
