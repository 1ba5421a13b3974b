// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "chowfm/errors.hpp"
#include "chowfm/jobs.hpp"
#include "test_support.hpp"

using namespace chowfm;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

struct Instance {
    int d;
    Weights weights;
    LargeFamily family;
    std::string label;
};

std::string weight_label(const Weights& w) {
    std::string s = "(";
    for (std::size_t i = 0; i < w.values().size(); ++i) s += (i ? "," : "") + w.values()[i].get_str();
    return s + ")";
}

/// The test matrix: d=1 with n<=4, d=2 with n<=3, d=3 with n=2, each with
/// all ones, (1,1/2,...,1/2), zeros and two seeded random weight vectors.
std::vector<Instance> matrix() {
    std::vector<Instance> out;
    std::mt19937 rng(5402);
    const auto add = [&](int d, std::vector<mpq_class> a) {
        Weights w(std::move(a));
        out.push_back({d, w, large_from_weights(w), "d=" + std::to_string(d) + " a=" + weight_label(w)});
    };
    for (auto [d, max_n] : std::vector<std::pair<int, int>>{{1, 4}, {2, 3}, {3, 2}}) {
        for (int n = 2; n <= max_n; ++n) {
            add(d, std::vector<mpq_class>(static_cast<std::size_t>(n), 1));
            std::vector<mpq_class> halves(static_cast<std::size_t>(n), mpq_class(1, 2));
            halves[0] = 1;
            add(d, halves);
            add(d, std::vector<mpq_class>(static_cast<std::size_t>(n), 0));
            for (int r = 0; r < 2; ++r) add(d, testing::random_weights(rng, n).values());
        }
    }
    return out;
}

struct Outcome {
    bool pass = true;
    std::string detail;
    void fail(const std::string& why) {
        if (pass) detail = why;
        pass = false;
    }
};

int failures = 0;

void report(int id, const std::string& title, const Outcome& o, double secs) {
    std::ostringstream time;
    time.precision(3);
    time << std::fixed << secs << "s";
    std::cout << "criterion " << id << " " << (o.pass ? "PASS" : "FAIL") << "  " << title << "  [" << time.str()
              << "]";
    if (!o.detail.empty()) std::cout << "  " << o.detail;
    std::cout << std::endl;
    if (!o.pass) ++failures;
}

void run(int id, const std::string& title, const std::function<void(Outcome&)>& body, double limit_s = 0) {
    Outcome o;
    const auto start = Clock::now();
    try {
        body(o);
    } catch (const std::exception& e) {
        o.fail(std::string("exception: ") + e.what());
    }
    const double secs = seconds_since(start);
    if (limit_s > 0 && secs >= limit_s) o.fail("took longer than the " + std::to_string(limit_s) + "s budget");
    report(id, title, o, secs);
}

std::string slurp(const fs::path& p) {
    std::ifstream is(p, std::ios::binary);
    std::stringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

/// Minimal small sets: |T| >= 2, T not large, every strict superset large.
std::vector<Subset> addable(const LargeFamily& fam) {
    std::vector<Subset> out;
    const std::uint32_t full = Subset::full(fam.n()).bits();
    for (std::uint32_t b = 1; b <= full; ++b) {
        const Subset t = Subset::from_bits(b);
        if (t.size() < 2 || fam.contains(t)) continue;
        bool ok = true;
        for (int i = 1; i <= fam.n() && ok; ++i)
            if (!t.contains(i) && !fam.contains(t | Subset{i})) ok = false;
        if (ok) out.push_back(t);
    }
    return out;
}

} // namespace

int main() {
    const std::vector<Instance> instances = matrix();
    std::vector<RankTable> presented(instances.size());

    run(1, "hE is not in <h^3> in the blown-up P^3", [](Outcome& o) {
        const Presentation y = blowup_line_in_p3();
        const Poly h = Poly::variable(y.vars(), "h");
        const Poly e = Poly::variable(y.vars(), "E");
        if (membership(y, {h * h * h}, h * e)) o.fail("hE found in <h^3>");
        o.detail = "membership = false";
    }, 1.0);

    run(2, "kernel of restriction equals <h^3, hE>", [](Outcome& o) {
        const Presentation y = blowup_line_in_p3();
        const Presentation v = blowup_point_in_p2();
        const Poly h = Poly::variable(y.vars(), "h");
        const Poly e = Poly::variable(y.vars(), "E");
        const RankTable kernel = kernel_ranks(
            y, v, {{"h", Poly::variable(v.vars(), "h")}, {"E", Poly::variable(v.vars(), "e")}});
        const RankTable ideal = ideal_ranks(y, {h * h * h, h * e});
        const RankTable expected{{0, 0, 1, 1}};
        if (kernel != expected || ideal != expected) {
            o.fail("kernel " + kernel.to_string() + ", ideal " + ideal.to_string());
            return;
        }
        o.detail = "kernel = ideal = " + kernel.to_string();
    }, 1.0);

    std::vector<RankTable> oracle(instances.size());
    run(3, "presentation ranks equal the blow-up oracle", [&](Outcome& o) {
        for (std::size_t i = 0; i < instances.size(); ++i) {
            const Instance& in = instances[i];
            const int n = in.family.n();
            presented[i] = graded_ranks(build_thm31(BaseGeometry(in.d, n), in.family));
            oracle[i] = rank_oracle(in.d, n, in.family);
            if (presented[i] != oracle[i]) {
                o.fail(in.label + ": " + presented[i].to_string() + " vs oracle " + oracle[i].to_string());
            }
        }
        if (o.pass) o.detail = std::to_string(instances.size()) + " instances";
    }, 600.0);

    run(4, "iterated construction matches presentation and oracle", [&](Outcome& o) {
        std::size_t checked = 0;
        for (std::size_t i = 0; i < instances.size(); ++i) {
            const Instance& in = instances[i];
            if (in.family.size() > 12) continue;
            const int n = in.family.n();
            const RankTable t = graded_ranks(iterated_presentation(BaseGeometry(in.d, n), in.family,
                                                                   canonical_walk(in.family)));
            ++checked;
            if (t != presented[i] || t != oracle[i]) o.fail(in.label + ": iterated " + t.to_string());
        }
        if (o.pass) o.detail = std::to_string(checked) + " instances";
    });

    run(5, "Fulton-MacPherson and Routis presentations agree", [](Outcome& o) {
        for (auto [d, n] : std::vector<std::pair<int, int>>{{1, 2}, {1, 3}, {2, 2}}) {
            const VerdictReport r = check_thm_equivalence(d, n);
            if (!r.pass) o.fail("d=" + std::to_string(d) + " n=" + std::to_string(n) + ": " + r.message);
        }
        if (o.pass) o.detail = "ranks and two-way membership at (1,2), (1,3), (2,2)";
    }, 300.0);

    run(6, "all six walks for three points on P^1 agree", [](Outcome& o) {
        const LargeFamily fam = LargeFamily::all_subsets(3);
        const BaseGeometry g(1, 3);
        const auto walks = all_walks(fam);
        if (walks.size() != 6) o.fail(std::to_string(walks.size()) + " walks");
        const RankTable first = graded_ranks(iterated_presentation(g, fam, walks.front()));
        for (const Walk& w : walks)
            if (graded_ranks(iterated_presentation(g, fam, w)) != first) o.fail("walks disagree");
        if (o.pass) o.detail = "6 walks, ranks " + first.to_string();
    });

    run(7, "palindromic, unit ends, permutation invariant, monotone", [&](Outcome& o) {
        std::mt19937 rng(7);
        for (std::size_t i = 0; i < instances.size(); ++i) {
            const Instance& in = instances[i];
            const int n = in.family.n();
            const BaseGeometry g(in.d, n);
            const RankTable& t = presented[i];
            if (!t.is_palindromic()) o.fail(in.label + ": not palindromic " + t.to_string());
            if (t[0] != 1 || t[t.size() - 1] != 1) o.fail(in.label + ": ends are not 1");
            const auto perm = testing::random_permutation(rng, n);
            if (graded_ranks(build_thm31(g, permute(in.family, perm))) != t) o.fail(in.label + ": not permutation invariant");
            for (Subset extra : addable(in.family)) {
                std::set<Subset> bigger = in.family.members();
                bigger.insert(extra);
                const RankTable u = graded_ranks(build_thm31(g, LargeFamily(n, bigger)));
                for (std::size_t k = 0; k < t.size(); ++k)
                    if (u[k] < t[k]) o.fail(in.label + ": adding " + extra.to_string() + " lowers degree " + std::to_string(k));
            }
        }
        if (o.pass) o.detail = std::to_string(instances.size()) + " instances";
    });

    run(8, "present and ranks outputs are byte-identical across runs", [](Outcome& o) {
        const fs::path root = fs::temp_directory_path() / "chowfm_acceptance_determinism";
        fs::remove_all(root);
        const auto once = [&](const std::string& tag, const JobConfig& base) {
            JobConfig cfg = base;
            cfg.out = (root / tag).string();
            cmd_present(cfg);
            std::ostringstream log;
            cmd_ranks(cfg, log);
        };
        std::vector<JobConfig> configs;
        JobConfig a;
        a.d = 1;
        a.weights = {{"1", "1/2", "1/2", "1/3"}};
        a.export_cas = true;
        configs.push_back(a);
        JobConfig b;
        b.d = 2;
        b.weights = {{"1", "1", "1"}};
        b.fm = true;
        configs.push_back(b);
        for (std::size_t c = 0; c < configs.size(); ++c) {
            configs[c].resolve();
            once("run1_" + std::to_string(c), configs[c]);
            once("run2_" + std::to_string(c), configs[c]);
            for (const char* file : {"presentation.txt", "presentation.json", "presentation.m2", "ranks.json"}) {
                const fs::path p1 = root / ("run1_" + std::to_string(c)) / file;
                const fs::path p2 = root / ("run2_" + std::to_string(c)) / file;
                if (fs::exists(p1) != fs::exists(p2) || slurp(p1) != slurp(p2)) o.fail(std::string(file) + " differs");
            }
        }
        fs::remove_all(root);
        if (o.pass) o.detail = "presentation.{txt,json,m2} and ranks.json";
    });

    std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
    return failures == 0 ? 0 : 1;
}
