#include "chowfm/jobs.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>
#include <sstream>

#include "chowfm/errors.hpp"

namespace chowfm {

namespace fs = std::filesystem;

namespace {

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream is(text);
    while (std::getline(is, item, sep)) {
        const auto first = item.find_first_not_of(" \t");
        const auto last = item.find_last_not_of(" \t");
        out.push_back(first == std::string::npos ? "" : item.substr(first, last - first + 1));
    }
    return out;
}

std::string weight_string(const nlohmann::json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_integer()) return std::to_string(v.get<long long>());
    throw ArgumentError("weights must be given as integers or \"p/q\" strings");
}

nlohmann::json presentation_json(const Presentation& p) {
    nlohmann::json vars = nlohmann::json::array();
    for (const Variable& v : p.vars()->variables()) {
        nlohmann::json jv{{"name", v.name}, {"degree", v.degree}};
        if (v.cap != 0) jv["cap"] = v.cap;
        vars.push_back(jv);
    }
    nlohmann::json rels = nlohmann::json::array();
    for (const Poly& r : p.relations()) {
        nlohmann::json terms = nlohmann::json::array();
        for (const auto& [m, c] : r.terms()) terms.push_back({{"coeff", c.get_str()}, {"exponents", m.exponents()}});
        rels.push_back({{"text", r.to_string()}, {"degree", r.degree()}, {"terms", terms}});
    }
    return {{"vars", vars}, {"relations", rels}, {"top_degree", p.top_degree()}};
}

} // namespace

// ---------------------------------------------------------------- JobConfig

JobConfig JobConfig::from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw ArgumentError("config must be a JSON object");
    JobConfig cfg;
    try {
        if (j.contains("base")) {
            const auto& base = j.at("base");
            if (base.value("kind", std::string("projective")) != "projective") {
                throw ArgumentError("only base kind \"projective\" is supported");
            }
            cfg.d = base.at("dim").get<int>();
        }
        if (j.contains("n")) cfg.n = j.at("n").get<int>();
        if (j.contains("weights")) {
            std::vector<std::string> w;
            for (const auto& v : j.at("weights")) w.push_back(weight_string(v));
            cfg.weights = std::move(w);
        }
        if (j.contains("large_sets")) cfg.large_sets = j.at("large_sets").get<std::vector<std::vector<int>>>();
        cfg.fm = j.value("fm", false);
        cfg.export_cas = j.value("export_cas", false);
        if (j.contains("walk")) cfg.walk = j.at("walk").get<std::string>();
        if (j.contains("cap")) cfg.cap = j.at("cap").get<std::size_t>();
        cfg.out = j.value("out", std::string("."));
    } catch (const nlohmann::json::exception& e) {
        throw ArgumentError(std::string("malformed config: ") + e.what());
    }
    return cfg;
}

void JobConfig::resolve() {
    if (d < 1) throw ArgumentError("dimension d must be positive");
    if (weights && large_sets) throw ArgumentError("give either weights or large sets, not both");
    if (!weights && !large_sets) throw ArgumentError("give weights or large sets");
    if (weights) {
        const Weights w = Weights::parse(*weights);
        if (n != 0 && n != w.n()) {
            throw ArgumentError("n = " + std::to_string(n) + " but " + std::to_string(w.n()) + " weights given");
        }
        n = w.n();
        std::vector<std::string> canonical;
        for (const auto& q : w.values()) canonical.push_back(q.get_str());
        weights = std::move(canonical);
    } else {
        if (n < 1) throw ArgumentError("n is required with explicit large sets");
        const LargeFamily fam = family();
        std::vector<std::vector<int>> canonical;
        for (Subset s : fam.members()) canonical.push_back(s.elements());
        large_sets = std::move(canonical);
    }
    if (walk != "canonical" && walk != "all") throw ArgumentError("walk must be 'canonical' or 'all'");
    if (cap == 0) throw ArgumentError("cap must be positive");
    if (fm && !all_ones()) throw ArgumentError("--fm requires all weights equal to 1");
}

LargeFamily JobConfig::family() const {
    if (weights) return large_from_weights(Weights::parse(*weights));
    if (!large_sets) throw ArgumentError("no weights or large sets configured");
    std::set<Subset> members;
    for (const auto& s : *large_sets) members.insert(Subset(s));
    return LargeFamily(n, std::move(members));
}

bool JobConfig::all_ones() const {
    if (weights) {
        return std::all_of(weights->begin(), weights->end(), [](const std::string& w) { return mpq_class(w) == 1; });
    }
    return n > 0 && family() == LargeFamily::all_subsets(n);
}

nlohmann::json JobConfig::to_json() const {
    nlohmann::json j;
    j["base"] = {{"kind", "projective"}, {"dim", d}};
    j["n"] = n;
    if (weights) j["weights"] = *weights;
    if (large_sets) j["large_sets"] = *large_sets;
    j["fm"] = fm;
    j["export_cas"] = export_cas;
    j["walk"] = walk;
    j["cap"] = cap;
    return j;
}

std::vector<std::string> parse_weight_list(const std::string& text) {
    auto out = split(text, ',');
    if (out.empty()) throw ArgumentError("empty weight list");
    return out;
}

std::vector<std::vector<int>> parse_large_sets(const std::string& text) {
    std::vector<std::vector<int>> out;
    for (const auto& group : split(text, ';')) {
        if (group.empty()) continue;
        std::vector<int> set;
        for (const auto& item : split(group, ',')) {
            try {
                std::size_t used = 0;
                set.push_back(std::stoi(item, &used));
                if (used != item.size()) throw std::invalid_argument(item);
            } catch (const std::exception&) {
                throw ArgumentError("cannot parse large-set element '" + item + "'");
            }
        }
        out.push_back(std::move(set));
    }
    return out;
}

void write_atomic(const fs::path& path, const std::string& content) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os) throw Error("cannot open " + tmp.string() + " for writing");
        os << content;
        if (!os.flush()) throw Error("failed writing " + tmp.string());
    }
    fs::rename(tmp, path);
}

// ---------------------------------------------------------------- present

Presentation job_presentation(const JobConfig& cfg) {
    const BaseGeometry g(cfg.d, cfg.n);
    if (cfg.fm) return build_thm34(g);
    return build_thm31(g, cfg.family());
}

PresentOutputs render_present(const JobConfig& cfg) {
    const Presentation p = job_presentation(cfg);
    const std::string config = cfg.to_json().dump();
    PresentOutputs out;
    out.text = "# config: " + config + "\n" + p.dump();
    nlohmann::json j{{"config", cfg.to_json()},
                     {"presentation", cfg.fm ? "fulton-macpherson" : "routis"},
                     {"ring", presentation_json(p)}};
    out.json = j.dump(2) + "\n";
    if (cfg.export_cas) out.cas = "-- config: " + config + "\n" + p.cas_script();
    return out;
}

void cmd_present(const JobConfig& cfg) {
    // Everything is computed before anything is written.
    const PresentOutputs out = render_present(cfg);
    const fs::path dir(cfg.out);
    write_atomic(dir / "presentation.txt", out.text);
    write_atomic(dir / "presentation.json", out.json);
    if (out.cas) write_atomic(dir / "presentation.m2", *out.cas);
}

// ---------------------------------------------------------------- ranks

nlohmann::json RanksResult::to_json(const JobConfig& cfg) const {
    return {{"config", cfg.to_json()},
            {"presentation_ranks", presentation.ranks},
            {"oracle_ranks", oracle.ranks},
            {"agree", agree},
            {"field", "rationals"}};
}

RanksResult compute_ranks(const JobConfig& cfg) {
    RanksResult r;
    r.presentation = graded_ranks(job_presentation(cfg), RankOptions{cfg.cap});
    r.oracle = rank_oracle(cfg.d, cfg.n, cfg.family());
    r.agree = r.presentation == r.oracle;
    return r;
}

bool cmd_ranks(const JobConfig& cfg, std::ostream& log) {
    const RanksResult r = compute_ranks(cfg);
    log << "presentation ranks: " << r.presentation.to_string() << '\n';
    log << "oracle ranks:       " << r.oracle.to_string() << '\n';
    log << "agree: " << (r.agree ? "true" : "false") << '\n';
    write_atomic(fs::path(cfg.out) / "ranks.json", r.to_json(cfg).dump(2) + "\n");
    return r.agree;
}

// ---------------------------------------------------------------- verify

int cmd_verify(const std::vector<std::string>& names, const JobConfig& cfg, std::ostream& log) {
    for (const auto& name : names) {
        if (std::find(scenario_names().begin(), scenario_names().end(), name) == scenario_names().end()) {
            throw ArgumentError("unknown scenario '" + name + "'");
        }
    }
    const std::vector<std::string>& selected = names.empty() ? scenario_names() : names;
    const bool explicit_instance = cfg.n > 0;
    const bool has_family = cfg.weights || cfg.large_sets;

    VerifyOptions opts;
    opts.ranks.monomial_cap = cfg.cap;
    opts.all_walks = cfg.walk == "all" || !explicit_instance;

    struct Run {
        std::string file;
        VerdictReport report;
    };
    std::vector<Run> runs;
    const auto tag = [](int d, int n) { return "_d" + std::to_string(d) + "_n" + std::to_string(n); };

    try {
        for (const auto& name : selected) {
            if (name == "counterexample") {
                runs.push_back({name, check_counterexample(opts)});
            } else if (name == "equivalence") {
                std::vector<std::pair<int, int>> instances{{1, 2}, {1, 3}, {2, 2}};
                if (explicit_instance) instances = {{cfg.d, cfg.n}};
                for (auto [d, n] : instances) runs.push_back({name + tag(d, n), check_thm_equivalence(d, n, opts)});
            } else if (name == "construction") {
                std::vector<std::pair<int, LargeFamily>> instances;
                if (explicit_instance) {
                    instances.emplace_back(cfg.d, has_family ? cfg.family() : LargeFamily::all_subsets(cfg.n));
                } else {
                    instances.emplace_back(1, LargeFamily(3, {Subset{1, 2, 3}}));
                    instances.emplace_back(1, LargeFamily::all_subsets(3));
                    instances.emplace_back(2, LargeFamily(3, {Subset{1, 2, 3}}));
                    instances.emplace_back(1, large_from_weights(Weights::parse({"1", "1/2", "1/2"})));
                }
                for (std::size_t i = 0; i < instances.size(); ++i) {
                    const auto& [d, family] = instances[i];
                    std::string file = name + tag(d, family.n());
                    if (instances.size() > 1) file += "_" + std::to_string(i + 1);
                    runs.push_back({file, check_construction(d, family.n(), family, opts)});
                }
            }
        }
    } catch (const SizeCapError& e) {
        log << "refused: " << e.what() << '\n';
        return kExitCap;
    }

    bool all_pass = true;
    nlohmann::json summary = nlohmann::json::array();
    for (const auto& run : runs) {
        const VerdictReport& r = run.report;
        all_pass = all_pass && r.pass;
        log << (r.pass ? "PASS " : "FAIL ") << run.file << ": " << r.message;
        if (r.divergent_degree) log << " (first divergence at degree " << *r.divergent_degree << ")";
        log << '\n';
        nlohmann::json j = r.to_json();
        j["config"] = cfg.to_json();
        write_atomic(fs::path(cfg.out) / "verify" / (run.file + ".json"), j.dump(2) + "\n");
        summary.push_back({{"report", run.file}, {"pass", r.pass}});
    }
    write_atomic(fs::path(cfg.out) / "verify" / "summary.json",
                 nlohmann::json{{"config", cfg.to_json()}, {"all_pass", all_pass}, {"reports", summary}}.dump(2) + "\n");
    return all_pass ? kExitOk : kExitFailure;
}

} // namespace chowfm
