// Acceptance suite: one line per criterion, exit status 1 if any fails.

#include "support.hpp"

#include "treefloer/error.hpp"
#include "treefloer/homology.hpp"
#include "treefloer/pipeline.hpp"

#include <sys/resource.h>
#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

using namespace treefloer;

namespace {

using Ranks = std::map<int, long>;

struct Outcome {
    bool pass = true;
    std::string detail;
};

// Collects failures without stopping at the first one.
class Expect {
public:
    void operator()(bool ok, const std::string& what) {
        if (!ok) {
            pass_ = false;
            if (!failures_.empty())
                failures_ += "; ";
            failures_ += what;
        }
    }
    Outcome done(const std::string& summary) const { return {pass_, pass_ ? summary : failures_}; }

private:
    bool pass_ = true;
    std::string failures_;
};

std::string show(const Ranks& r) {
    std::ostringstream os;
    os << "{";
    bool first = true;
    for (const auto& [g, v] : r) {
        os << (first ? "" : ", ") << grading_string(g) << ": " << v;
        first = false;
    }
    os << "}";
    return os.str();
}

Report run_with(const std::string& pd, const std::function<void(RunConfig&)>& tweak = {}) {
    RunConfig cfg;
    cfg.pd = pd;
    if (tweak)
        tweak(cfg);
    return run(cfg);
}

Ranks ranks_of(const std::string& pd, const std::function<void(RunConfig&)>& tweak = {}) {
    return run_with(pd, tweak).invariants.normalized;
}

Outcome trefoil_detection() {
    Expect expect;
    const std::string left = tfs::kTrefoil;
    const std::string right = mirror(parse_pd(left)).to_pd_string();
    const auto r = run_with(right);
    const auto l = run_with(left);
    expect(r.invariants.n_plus == 3, "mirror of the table PD should have three positive crossings");
    for (const auto* rep : {&r, &l}) {
        expect(rep->invariants.total == 3, "total " + std::to_string(rep->invariants.total) + " != 3");
        expect(rep->invariants.normalized.size() == 1, "not concentrated: " + show(rep->invariants.normalized));
        expect(std::abs(rep->invariants.normalized.begin()->first) == 2, "grading is not +-1");
    }
    expect(r.invariants.normalized.begin()->first == -l.invariants.normalized.begin()->first,
           "mirror does not negate the grading");
    return expect.done("right-handed " + show(r.invariants.normalized) + ", left-handed " +
                       show(l.invariants.normalized));
}

Outcome figure_eight() {
    Expect expect;
    const auto r = ranks_of(tfs::kFigureEight);
    expect(r == Ranks{{0, 5}}, "got " + show(r));
    return expect.done(show(r));
}

Outcome unknot_and_unlink() {
    Expect expect;
    const auto u1 = ranks_of(tfs::kUnknot1);
    const auto u2 = ranks_of(tfs::kUnknot2);
    const auto u3 = ranks_of(tfs::kUnknot3);
    expect(u1.size() == 1 && u1.begin()->second == 1, "1-crossing unknot " + show(u1));
    expect(u2 == u1, "2-crossing unknot " + show(u2));
    expect(u3 == u1, "3-crossing unknot " + show(u3));
    const auto link = run_with(tfs::kUnlink2).invariants;
    expect(link.total == 2, "unlink total " + std::to_string(link.total));
    expect(link.width == 2, "unlink width " + std::to_string(link.width));
    return expect.done("unknots " + show(u1) + ", unlink " + show(link.normalized) + " width " +
                       std::to_string(link.width));
}

Outcome alternating_determinants() {
    Expect expect;
    struct Knot {
        const char* name;
        const char* pd;
        long det;
    };
    const Knot knots[] = {
        {"3_1", "X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]", 3},
        {"4_1", "X[4,2,5,1] X[8,6,1,5] X[6,3,7,4] X[2,7,3,8]", 5},
        {"5_1", "X[1,6,2,7] X[3,8,4,9] X[5,10,6,1] X[7,2,8,3] X[9,4,10,5]", 5},
        {"5_2", "X[1,4,2,5] X[3,8,4,9] X[5,10,6,1] X[9,6,10,7] X[7,2,8,3]", 7},
        {"6_1", "X[1,4,2,5] X[7,10,8,11] X[3,9,4,8] X[9,3,10,2] X[5,12,6,1] X[11,6,12,7]", 9},
    };
    std::string summary;
    for (const auto& k : knots) {
        const std::string name = k.name;
        const tfs::Staged s(k.pd);
        const long s_d = static_cast<long>(s.trees.size());
        expect(s_d == matrix_tree_count(s.bg), name + ": tree count differs from Matrix-Tree");
        expect(s_d == k.det, name + ": s(D) = " + std::to_string(s_d) + ", determinant " + std::to_string(k.det));
        expect(s.pairs.empty(), name + ": differential not empty");
        const auto cx = build_complex(s.trees, s.pairs, s.sd.n_minus, s.m());
        expect(cx.blocks.empty() && cx.groups.size() == 1, name + ": generators in more than one grading");
        long total = 0;
        for (const auto& [g, h] : graded_homology(cx).homology)
            total += h;
        expect(total == s_d * (1L << (s.m() - 1)), name + ": homology rank " + std::to_string(total));
        summary += (summary.empty() ? "" : ", ") + name + " s(D)=" + std::to_string(s_d);
    }
    return expect.done(summary);
}

Outcome d_squared_and_well_definedness() {
    Expect expect;
    int pairs = 0, blocks = 0;
    for (const auto& pd : tfs::corpus()) {
        const tfs::Staged s(pd);
        const auto cx = build_complex(s.trees, s.pairs, s.sd.n_minus, s.m(), 4);
        expect(verify_d_squared(cx), pd + ": d^2 != 0");
        blocks += static_cast<int>(cx.blocks.size());
        for (const auto& sp : s.pairs) {
            ++pairs;
            const auto& src = s.trees[sp.source];
            const auto& tgt = s.trees[sp.target];
            expect(relation_annihilated(sp, src, tgt, s.m()), pd + ": relation not annihilated");
            SuccessorPair flipped = sp;
            flipped.nu = 1 - sp.nu;
            const auto a = pair_tile(sp, src, tgt, s.m());
            const auto b = pair_tile(flipped, src, tgt, s.m());
            const RationalFn factor = RationalFn::tpow(sp.nu ? -sp.C : sp.C);
            bool scales = a.nonzeros() == b.nonzeros();
            for (int c = 0; scales && c < a.cols; ++c)
                for (const auto& [r, v] : a.columns[c])
                    scales = scales && b.at(r, c) == v * factor;
            expect(scales, pd + ": nu toggle is not a T^C rescaling");
        }
    }
    expect(pairs > 0, "corpus has no successor pairs");
    return expect.done(std::to_string(tfs::corpus().size()) + " diagrams, " + std::to_string(blocks) + " blocks, " +
                       std::to_string(pairs) + " successor pairs");
}

Outcome invariance() {
    Expect expect;
    int runs = 0;
    struct Family {
        const char* name;
        std::vector<std::string> diagrams;
    };
    const Family families[] = {
        {"unknot", {tfs::kUnknot1, tfs::kUnknot2, tfs::kUnknot3, tfs::kUnknot5}},
        {"trefoil", {tfs::kTrefoil, tfs::kTrefoilKink, tfs::kTrefoilR2}},
    };
    std::string summary;
    for (const auto& fam : families) {
        const Ranks base = ranks_of(fam.diagrams[0]);
        ++runs;
        for (const auto& pd : fam.diagrams) {
            const auto d = parse_pd(pd);
            const int n = d.num_crossings();
            std::vector<long> alt;
            for (int j = 1; j <= n; ++j)
                alt.push_back(3L << (2 * j));
            const bool small = d.num_arcs() <= 8;
            // (a) diagram, (b) marking, (c) Omega, (d) edge orientation.
            std::vector<std::pair<std::string, std::function<void(RunConfig&)>>> variants = {
                {"auto marking", {}},
                {"m = #arcs", [](RunConfig& c) { c.points_per_arc = 1; }},
                {"Omega 3*4^j", [&](RunConfig& c) { c.omega = alt; }},
                {"larger tail", [](RunConfig& c) { c.orientation = EdgeOrientation::LargerTail; }},
            };
            if (small)
                variants.push_back({"m = 2*#arcs", [](RunConfig& c) { c.points_per_arc = 2; }});
            for (const auto& [label, tweak] : variants) {
                const auto r = ranks_of(pd, tweak);
                ++runs;
                expect(r == base, std::string(fam.name) + " " + pd + " [" + label + "]: " + show(r) + " vs " + show(base));
            }
        }
        summary += std::string(summary.empty() ? "" : ", ") + fam.name + " " + show(base);
    }
    return expect.done(summary + "; " + std::to_string(runs) + " runs");
}

Outcome field_properties() {
    Expect expect;
    std::mt19937_64 rng(7);
    int axioms = 0;
    for (int it = 0; it < 10000; ++it) {
        const auto a = tfs::random_fn(rng, 10), b = tfs::random_fn(rng, 10), c = tfs::random_fn(rng, 10);
        bool ok = (a + b) + c == a + (b + c) && (a * b) * c == a * (b * c) && a * (b + c) == a * b + a * c &&
                  a + b == b + a && a * b == b * a && (a + a).is_zero() && (a + RationalFn::zero()) == a &&
                  (a * RationalFn::one()) == a;
        if (!a.is_zero())
            ok = ok && (a * a.inv()).is_one();
        axioms += ok;
    }
    expect(axioms == 10000, std::to_string(10000 - axioms) + " axiom checks failed");
    int agree = 0;
    for (int it = 0; it < 100; ++it) {
        SparseMatrix m(10, 10);
        std::bernoulli_distribution keep(0.6);
        for (int c = 0; c < 10; ++c)
            for (int r = 0; r < 10; ++r)
                if (keep(rng))
                    m.push(r, c, tfs::random_fn(rng, 4));
        // Plant dependencies in some matrices so ranks vary.
        const int dep = static_cast<int>(rng() % 5);
        for (int c = 10 - dep; c < 10; ++c) {
            m.columns[c].clear();
            const RationalFn u = tfs::random_fn(rng, 3);
            for (const auto& [r, v] : m.columns[c - 10 + dep])
                m.push(r, c, u * v);
        }
        m.normalize();
        agree += block_rank(m) == block_rank_dense(m);
    }
    expect(agree == 100, std::to_string(100 - agree) + " rank disagreements");
    return expect.done("10000 axiom checks, 100/100 rank agreements");
}

Outcome scale() {
    const tfs::Staged s(tfs::kUnknot5);
    const auto rep = run_with(tfs::kUnknot5);
    Expect expect;
    expect(s.m() == 10, "marking has m = " + std::to_string(s.m()));
    expect(rep.checks_passed(), "d^2 check failed");
    expect(rep.invariants.normalized == Ranks{{0, 1}}, "wrong ranks " + show(rep.invariants.normalized));
    return expect.done("5 crossings, m = 10, " + std::to_string(rep.invariants.trees) + " trees, " +
                       std::to_string(rep.successor_pairs) + " pairs, ranks " + show(rep.invariants.normalized));
}

struct Criterion {
    int id;
    const char* title;
    double seconds_limit;
    std::function<Outcome()> body;
    bool isolate_memory = false;
    long memory_limit_kb = 0;
};

Outcome guarded(const std::function<Outcome()>& body) {
    try {
        return body();
    } catch (const Error& e) {
        return {false, std::string("error [") + e.module() + "] " + std::string(to_string(e.kind())) + ": " + e.what()};
    } catch (const std::exception& e) {
        return {false, std::string("exception: ") + e.what()};
    }
}

// Runs the body in a child process and reports its peak resident memory.
Outcome in_child(const std::function<Outcome()>& body, long& peak_kb) {
    int fd[2];
    if (pipe(fd) != 0)
        return {false, "pipe failed"};
    const pid_t pid = fork();
    if (pid == 0) {
        close(fd[0]);
        const Outcome o = guarded(body);
        const std::string msg = std::string(o.pass ? "1" : "0") + o.detail;
        (void)!write(fd[1], msg.data(), msg.size());
        close(fd[1]);
        _exit(0);
    }
    close(fd[1]);
    std::string msg;
    char buf[512];
    for (ssize_t k; (k = read(fd[0], buf, sizeof buf)) > 0;)
        msg.append(buf, static_cast<std::size_t>(k));
    close(fd[0]);
    int status = 0;
    rusage ru{};
    wait4(pid, &status, 0, &ru);
    peak_kb = ru.ru_maxrss;
    if (msg.empty())
        return {false, "child exited without a result"};
    return {msg[0] == '1', msg.substr(1)};
}

} // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {1, "trefoil detection", 1.0, trefoil_detection},
        {2, "figure-eight", 5.0, figure_eight},
        {3, "unknot and unlink", 5.0, unknot_and_unlink},
        {4, "alternating determinant law", 60.0, alternating_determinants},
        {5, "d^2 = 0, well-definedness, nu law", 120.0, d_squared_and_well_definedness},
        {6, "invariance suite", 120.0, invariance},
        {7, "exact-field properties", 30.0, field_properties},
        {8, "scale: 5 crossings, m = 10", 60.0, scale, true, 2L * 1024 * 1024},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        long peak_kb = 0;
        Outcome o = c.isolate_memory ? in_child(c.body, peak_kb) : guarded(c.body);
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::ostringstream limits;
        limits.setf(std::ios::fixed);
        limits.precision(2);
        limits << secs << " s of " << c.seconds_limit << " s";
        if (secs >= c.seconds_limit) {
            o.pass = false;
            o.detail += "; over the time limit";
        }
        if (c.isolate_memory) {
            limits << ", peak " << peak_kb / 1024 << " MiB of " << c.memory_limit_kb / 1024 << " MiB";
            if (peak_kb >= c.memory_limit_kb) {
                o.pass = false;
                o.detail += "; over the memory limit";
            }
        }
        failed += !o.pass;
        std::printf("criterion %d %-36s %s  %s (%s)\n", c.id, c.title, o.pass ? "PASS" : "FAIL", o.detail.c_str(),
                    limits.str().c_str());
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
