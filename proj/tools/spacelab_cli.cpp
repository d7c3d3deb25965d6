// spacelab: command-line front end for the spacing-shift toolkit.
//
//   spacelab lang count --spec multiples2.json --n 4 --mode naive
//   spacelab detect delta --spec squares.json --depth 3 --bound 100 --verify
//   spacelab corpus run-all --out report --plot

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "spacelab/harness.hpp"

namespace {

using nlohmann::json;
using namespace spacelab;

constexpr int kExitValidation = 2;
constexpr int kExitBudget = 3;

struct BudgetHit : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::uint64_t env_budget() {
    if (const char* s = std::getenv("SPACELAB_BUDGET")) {
        try {
            return std::stoull(s);
        } catch (const std::exception&) {
            throw ValidationError(std::string("SPACELAB_BUDGET is not a number: ") + s);
        }
    }
    return kDefaultBudget;
}

json read_json_arg(const std::string& arg, bool try_corpus) {
    namespace fs = std::filesystem;
    std::vector<fs::path> candidates{arg};
    if (try_corpus) candidates.push_back(default_corpus_dir() / arg);
    for (const auto& p : candidates) {
        std::error_code ec;
        if (fs::is_regular_file(p, ec)) {
            std::ifstream in(p);
            try {
                return json::parse(in);
            } catch (const json::exception& e) {
                throw ValidationError(p.string() + ": " + e.what());
            }
        }
    }
    try {
        return json::parse(arg);
    } catch (const json::exception&) {
        throw ValidationError("not a readable file or inline JSON: " + arg);
    }
}

std::vector<Int> parse_grid(const std::string& s) {
    std::vector<Int> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        try {
            std::size_t used = 0;
            out.push_back(std::stoll(tok, &used));
            if (used != tok.size()) throw std::invalid_argument(tok);
        } catch (const std::exception&) {
            throw ValidationError("bad integer in list: " + tok);
        }
    }
    if (out.empty()) throw ValidationError("empty integer list");
    return out;
}

std::string timestamp_utc() {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

// Options shared by most subcommands.
struct Common {
    std::string spec;
    Int horizon = 0;
    std::uint64_t budget = 0;
    std::string out;
    bool plot = false;
    std::string command;
    json params = json::object();

    PSetSpec load_spec() const {
        if (spec.empty()) throw ValidationError("--spec is required");
        return spec_from_json(read_json_arg(spec, true));
    }

    // Result text goes to stdout; with --out it is also written to out/<file> next to a manifest.
    void emit(const std::string& text, const std::string& file, const std::string& digest) const {
        std::cout << text;
        if (out.empty()) return;
        std::filesystem::create_directories(out);
        write_atomic(std::filesystem::path(out) / file, text);
        json manifest = {{"tool", "spacelab"},
                         {"version", tool_version()},
                         {"command", command},
                         {"spec_digest", digest},
                         {"parameters", params},
                         {"outputs", {file}},
                         {"timestamp", timestamp_utc()}};
        write_atomic(std::filesystem::path(out) / "manifest.json", manifest.dump(2) + "\n");
    }
};

void add_common(CLI::App* app, Common& c, bool with_spec = true) {
    if (with_spec) app->add_option("--spec", c.spec, "P specification: file path, corpus file name, or inline JSON");
    app->add_option("--horizon", c.horizon, "Horizon H of the membership table");
    app->add_option("--budget", c.budget, "Node budget (default: SPACELAB_BUDGET or 1e7)");
    app->add_option("--out", c.out, "Output directory");
}

void finish_params(Common& c, const std::string& command) {
    c.command = command;
    if (c.budget == 0) c.budget = env_budget();
    c.params["budget"] = c.budget;
    if (c.horizon) c.params["horizon"] = c.horizon;
    if (!c.spec.empty()) c.params["spec"] = c.spec;
}

Int horizon_or(const Common& c, Int fallback) {
    const Int h = c.horizon ? c.horizon : fallback;
    if (h < 1) throw ValidationError("horizon must be >= 1");
    return h;
}

json config_json(const Configuration& c) { return {{"length", c.length}, {"ones", c.ones}, {"word", c.to_word()}}; }

// Named points: zero, greedy, periodic:k, random:seed, maxones:n, or a literal 0/1 word; "+s" shifts right.
OrbitPoint point_from_arg(std::string s, const PSetView& view, Int H, std::uint64_t budget) {
    Int shift = 0;
    if (auto plus = s.find('+'); plus != std::string::npos) {
        shift = parse_grid(s.substr(plus + 1)).at(0);
        s = s.substr(0, plus);
    }
    auto suffix = [&](const std::string& prefix) { return parse_grid(s.substr(prefix.size())).at(0); };
    OrbitPoint p;
    if (s == "zero") {
        p = make_orbit_point(Configuration{H, {}}, view, "zero");
    } else if (s == "greedy") {
        p = make_orbit_point(greedy_point(view, H), view, "greedy");
    } else if (s.rfind("periodic:", 0) == 0) {
        auto r = periodic_point_check(view, suffix("periodic:"), H);
        if (!r.point) throw ValidationError("no periodic point: " + std::to_string(*r.failing_multiple) + " is not in P");
        p = *r.point;
    } else if (s.rfind("random:", 0) == 0) {
        p = random_point(view, H, static_cast<std::uint64_t>(suffix("random:")));
    } else if (s.rfind("maxones:", 0) == 0) {
        auto m = max_ones(view, suffix("maxones:"), budget);
        if (!m.omega) throw BudgetHit("max_ones budget exhausted");
        p = make_orbit_point(Configuration{H, m.witness.ones}, view, s);
    } else {
        auto c = Configuration::from_word(s);
        if (c.length > H) throw ValidationError("word longer than the horizon");
        c.length = H;
        p = make_orbit_point(c, view, "word");
    }
    if (!p.admissible) throw ValidationError("point " + s + " is not admissible for P");
    return shift ? shifted(p, shift, H, view) : p;
}

void detect_output(const Common& c, const SearchResult& r, bool verify, const PSetView& view, const std::string& digest) {
    c.emit(to_json(r).dump(2) + "\n", "witness.json", digest);
    if (verify && r.witness) std::cout << (verify_witness(*r.witness, view) ? "verified" : "not verified") << "\n";
    if (r.status == SearchStatus::BudgetExhausted) throw BudgetHit("search budget exhausted");
}

int run(int argc, char** argv) {
    CLI::App app{"Spacing-shift toolkit: sets P, languages, entropy, structure detection, experiments"};
    app.set_version_flag("--version", tool_version());
    app.require_subcommand(1);
    Common c;
    Int n = 0;
    std::string n_grid;
    Int depth = 0;
    Int bound = 0;
    std::string mode = "optimized";
    std::uint64_t seed = 0;
    bool verify = false;
    unsigned workers = 1;

    // pset
    auto* pset = app.add_subcommand("pset", "Materialize P and report densities")->require_subcommand(1);
    auto* pset_density = pset->add_subcommand("density", "Prefix, lower/upper and Banach densities");
    add_common(pset_density, c);
    Int n0 = 0;
    std::string windows = "8,16,32,64";
    pset_density->add_option("--n0", n0, "Start of the lower/upper estimate range (default H/2)");
    pset_density->add_option("--windows", windows, "Comma-separated window lengths");
    pset_density->add_flag("--plot", c.plot, "Also write an SVG of the prefix density");
    pset_density->callback([&] {
        finish_params(c, "pset density");
        const auto spec = c.load_spec();
        const Int H = horizon_or(c, 1000);
        const auto view = build_pset(spec, H);
        const auto dr = density_report(view, n0 ? n0 : std::max<Int>(1, H / 2), parse_grid(windows));
        std::ostringstream os;
        os << "n,prefix_density\n";
        for (const auto& [m, d] : dr.prefix_densities) os << m << ',' << to_string(d) << '\n';
        json prof = json::array();
        for (const auto& [w, d] : dr.banach_profile) prof.push_back({{"W", w}, {"density", to_string(d)}});
        json summary = {{"horizon", H},
                        {"n0", dr.n0},
                        {"count", view.count()},
                        {"lower_est", to_string(dr.lower_est)},
                        {"upper_est", to_string(dr.upper_est)},
                        {"banach_profile", prof}};
        c.emit(summary.dump(2) + "\n", "density.json", spec.digest());
        if (!c.out.empty()) {
            write_atomic(std::filesystem::path(c.out) / "density.csv", os.str());
            if (c.plot) {
                std::vector<std::pair<double, double>> pts;
                for (const auto& [m, d] : dr.prefix_densities)
                    pts.emplace_back(static_cast<double>(m), boost::rational_cast<double>(d));
                write_atomic(std::filesystem::path(c.out) / "density.svg", render_svg("prefix density", {{"d_n", pts}}));
            }
        }
    });

    // detect
    auto* detect = app.add_subcommand("detect", "Search for structure certificates")->require_subcommand(1);
    auto add_search = [&](const std::string& name, const std::string& help, auto finder) {
        auto* sub = detect->add_subcommand(name, help);
        add_common(sub, c);
        sub->add_option("--depth", depth, "Certificate size")->required();
        sub->add_option("--bound", bound, "Largest element allowed")->required();
        sub->add_flag("--verify", verify, "Re-run the certificate check on the emitted witness");
        sub->callback([&, name, finder] {
            finish_params(c, "detect " + name);
            c.params["depth"] = depth;
            c.params["bound"] = bound;
            const auto spec = c.load_spec();
            const auto view = build_pset(spec, horizon_or(c, bound));
            detect_output(c, finder(view, depth, bound, c.budget), verify, view, spec.digest());
        });
    };
    add_search("delta", "Lexicographically least Delta-chain", find_delta_chain);
    add_search("ip", "Lexicographically least IP generator", find_ip_generator);
    add_search("ipip", "Lexicographically least IP-IP generator", find_ip_ip_generator);

    auto* syndetic = detect->add_subcommand("syndetic", "Longest interior gap of P in [1..H]");
    add_common(syndetic, c);
    syndetic->callback([&] {
        finish_params(c, "detect syndetic");
        const auto spec = c.load_spec();
        if (!c.horizon) throw ValidationError("--horizon is required");
        const auto g = syndetic_gap(build_pset(spec, c.horizon));
        json j = {{"kind", "syndetic_gap"},
                  {"interior_gap", g.interior_gap ? json(*g.interior_gap) : json()},
                  {"censored_tail", g.censored_tail},
                  {"horizon", c.horizon}};
        c.emit(j.dump(2) + "\n", "syndetic.json", spec.digest());
    });
    auto* thick = detect->add_subcommand("thick", "Longest run of consecutive members of P in [1..H]");
    add_common(thick, c);
    thick->callback([&] {
        finish_params(c, "detect thick");
        const auto spec = c.load_spec();
        if (!c.horizon) throw ValidationError("--horizon is required");
        json j = {{"kind", "thick_run"}, {"value", thick_run(build_pset(spec, c.horizon))}, {"horizon", c.horizon}};
        c.emit(j.dump(2) + "\n", "thick.json", spec.digest());
    });
    auto* intersect = detect->add_subcommand("intersect", "Least element of E in A - A");
    add_common(intersect, c);
    std::string a_spec;
    intersect->add_option("--a-spec", a_spec, "Specification of the set A")->required();
    intersect->add_flag("--verify", verify, "Re-run the certificate check on the emitted witness");
    intersect->callback([&] {
        finish_params(c, "detect intersect");
        c.params["a_spec"] = a_spec;
        const auto e_spec = c.load_spec();
        const auto a = spec_from_json(read_json_arg(a_spec, true));
        if (!c.horizon) throw ValidationError("--horizon is required");
        const auto ev = build_pset(e_spec, c.horizon);
        const auto av = build_pset(a, c.horizon);
        const auto w = intersective_refute(ev, av);
        json j = w ? to_json(*w) : json{{"kind", "intersective_hit"}, {"value", nullptr}};
        c.emit(j.dump(2) + "\n", "witness.json", e_spec.digest());
        if (verify && w) std::cout << (verify_witness(*w, ev, av) ? "verified" : "not verified") << "\n";
    });
    auto* verify_cmd = detect->add_subcommand("verify", "Re-check a witness JSON against P");
    add_common(verify_cmd, c);
    std::string witness_arg;
    verify_cmd->add_option("--witness", witness_arg, "Witness file or inline JSON")->required();
    verify_cmd->add_option("--a-spec", a_spec, "Specification of A (intersective hits only)");
    verify_cmd->callback([&] {
        finish_params(c, "detect verify");
        const auto spec = c.load_spec();
        json wj = read_json_arg(witness_arg, false);
        if (wj.contains("witness")) wj = wj.at("witness");
        if (wj.is_null()) throw ValidationError("no witness to verify");
        const auto w = witness_from_json(wj);
        // Large enough for every element and every subset sum the certificate mentions.
        Int need = std::max<Int>(1, w.bound);
        Int sum = 0;
        for (Int x : w.payload) sum += x;
        need = std::max(need, sum);
        for (Int x : w.support) need = std::max(need, x);
        const auto view = build_pset(spec, horizon_or(c, need));
        bool ok = false;
        if (w.kind == WitnessKind::IntersectiveHit) {
            if (a_spec.empty()) throw ValidationError("--a-spec is required for intersective hits");
            ok = verify_witness(w, view, build_pset(spec_from_json(read_json_arg(a_spec, true)), view.horizon()));
        } else {
            ok = verify_witness(w, view);
        }
        std::cout << (ok ? "verified" : "not verified") << "\n";
        if (!ok) throw ValidationError("witness does not verify");
    });

    // lang
    auto* lang = app.add_subcommand("lang", "Exact language enumeration")->require_subcommand(1);
    auto* count = lang->add_subcommand("count", "Number of admissible words of length n");
    add_common(count, c);
    count->add_option("--n", n, "Word length")->required();
    count->add_option("--mode", mode, "naive|optimized")->check(CLI::IsMember({"naive", "optimized"}));
    count->add_option("--workers", workers, "Threads for the optimized counter");
    count->callback([&] {
        finish_params(c, "lang count");
        c.params["n"] = n;
        c.params["mode"] = mode;
        const auto spec = c.load_spec();
        const auto view = build_pset(spec, horizon_or(c, std::max<Int>(n, 1)));
        auto r = count_words(view, n, mode == "naive" ? CountMode::Naive : CountMode::Optimized, c.budget, workers);
        if (!r.count) throw BudgetHit("count budget exhausted after " + std::to_string(r.nodes) + " nodes");
        c.emit(to_string(*r.count) + "\n", "count.txt", spec.digest());
    });
    auto* entropy = lang->add_subcommand("entropy", "c_n, h_n and omega_n over a grid (CSV)");
    add_common(entropy, c);
    entropy->add_option("--n-grid", n_grid, "Comma-separated word lengths")->required();
    entropy->add_flag("--plot", c.plot, "Also write an SVG of h_n and omega_n/n");
    entropy->callback([&] {
        finish_params(c, "lang entropy");
        c.params["n_grid"] = n_grid;
        const auto spec = c.load_spec();
        const auto grid = parse_grid(n_grid);
        const auto view = build_pset(spec, horizon_or(c, *std::max_element(grid.begin(), grid.end())));
        LanguageProfile prof;
        try {
            prof = entropy_profile(view, grid, c.budget);
        } catch (const BudgetExhausted& e) {
            throw BudgetHit(e.what());
        }
        c.emit(to_csv(prof), "entropy.csv", spec.digest());
        if (c.plot && !c.out.empty()) {
            std::vector<std::pair<double, double>> h, g;
            for (const auto& r : prof.records) {
                h.emplace_back(static_cast<double>(r.n), r.h);
                g.emplace_back(static_cast<double>(r.n), boost::rational_cast<double>(r.omega_over_n));
            }
            write_atomic(std::filesystem::path(c.out) / "entropy.svg", render_svg("entropy", {{"h_n", h}, {"omega/n", g}}));
        }
    });
    auto* maxones = lang->add_subcommand("maxones", "omega(n) and the lexicographically least witness");
    add_common(maxones, c);
    maxones->add_option("--n", n, "Word length")->required();
    maxones->callback([&] {
        finish_params(c, "lang maxones");
        c.params["n"] = n;
        const auto spec = c.load_spec();
        const auto view = build_pset(spec, horizon_or(c, std::max<Int>(n, 1)));
        auto r = max_ones(view, n, c.budget);
        if (!r.omega) throw BudgetHit("max_ones budget exhausted");
        json j = {{"n", n}, {"omega", *r.omega}, {"witness", config_json(r.witness)}, {"nodes", r.nodes}};
        c.emit(j.dump(2) + "\n", "maxones.json", spec.digest());
    });
    auto* greedy = lang->add_subcommand("greedy", "Greedy admissible point on [0, H)");
    add_common(greedy, c);
    greedy->callback([&] {
        finish_params(c, "lang greedy");
        const auto spec = c.load_spec();
        if (!c.horizon) throw ValidationError("--horizon is required");
        const auto view = build_pset(spec, c.horizon);
        c.emit(config_json(greedy_point(view, c.horizon)).dump(2) + "\n", "greedy.json", spec.digest());
    });
    auto* transitive = lang->add_subcommand("transitive", "Joinability of admissible word pairs by zero gaps");
    add_common(transitive, c);
    Int word_len = 4;
    Int gap_cap = 16;
    transitive->add_option("--word-len", word_len, "Longest word length L");
    transitive->add_option("--gap", gap_cap, "Largest gap G");
    transitive->callback([&] {
        finish_params(c, "lang transitive");
        c.params["word_len"] = word_len;
        c.params["gap"] = gap_cap;
        const auto spec = c.load_spec();
        const auto view = build_pset(spec, horizon_or(c, 2 * word_len + gap_cap));
        const auto t = transitive_gap_check(view, word_len, gap_cap);
        json j = {{"word_len_cap", t.word_len_cap}, {"gap_cap", t.gap_cap}, {"joinable", t.joinable}, {"total", t.total}};
        if (t.least_failing) j["least_failing"] = {t.least_failing->first.to_word(), t.least_failing->second.to_word()};
        c.emit(j.dump(2) + "\n", "transitive.json", spec.digest());
    });

    // dyn
    auto* dyn = app.add_subcommand("dyn", "Orbit-level probes")->require_subcommand(1);
    std::string x_arg = "greedy";
    std::string y_arg = "zero";
    auto* fstat = dyn->add_subcommand("fstat", "F_n statistic of a pair of points (CSV)");
    add_common(fstat, c);
    Int l = 0;
    fstat->add_option("--x", x_arg, "Point: zero|greedy|periodic:k|random:seed|maxones:n|0/1 word, optional +shift");
    fstat->add_option("--y", y_arg, "Second point, same syntax");
    fstat->add_option("--l", l, "Agreement length minus one");
    fstat->add_option("--n-grid", n_grid, "Comma-separated n values")->required();
    fstat->add_option("--seed", seed, "Seed for random:<seed> points given as random");
    fstat->add_flag("--plot", c.plot, "Also write an SVG of F_n");
    fstat->callback([&] {
        finish_params(c, "dyn fstat");
        c.params["x"] = x_arg;
        c.params["y"] = y_arg;
        c.params["l"] = l;
        c.params["n_grid"] = n_grid;
        const auto spec = c.load_spec();
        const auto grid = parse_grid(n_grid);
        const Int H = horizon_or(c, *std::max_element(grid.begin(), grid.end()) + l + 1);
        const auto view = build_pset(spec, H);
        if (x_arg == "random") x_arg = "random:" + std::to_string(seed);
        if (y_arg == "random") y_arg = "random:" + std::to_string(seed + 1);
        const auto x = point_from_arg(x_arg, view, H, c.budget);
        const auto y = point_from_arg(y_arg, view, H, c.budget);
        const auto r = f_statistic(x, y, l, grid);
        c.emit(to_csv(r), "fstat.csv", spec.digest());
        if (c.plot && !c.out.empty()) {
            std::vector<std::pair<double, double>> pts;
            for (const auto& [m, f] : r.values) pts.emplace_back(static_cast<double>(m), boost::rational_cast<double>(f));
            write_atomic(std::filesystem::path(c.out) / "fstat.svg", render_svg("F_n", {{"F_n", pts}}));
        }
    });
    auto* proximal = dyn->add_subcommand("proximal", "First block of agreement of two points");
    add_common(proximal, c);
    Int block = 8;
    proximal->add_option("--x", x_arg, "First point");
    proximal->add_option("--y", y_arg, "Second point");
    proximal->add_option("--block", block, "Block length");
    proximal->add_option("--seed", seed, "Seed for points given as random");
    proximal->callback([&] {
        finish_params(c, "dyn proximal");
        c.params["x"] = x_arg;
        c.params["y"] = y_arg;
        c.params["block"] = block;
        const auto spec = c.load_spec();
        if (!c.horizon) throw ValidationError("--horizon is required");
        const auto view = build_pset(spec, c.horizon);
        if (x_arg == "random") x_arg = "random:" + std::to_string(seed);
        if (y_arg == "random") y_arg = "random:" + std::to_string(seed + 1);
        const auto hit = proximal_probe(point_from_arg(x_arg, view, c.horizon, c.budget),
                                        point_from_arg(y_arg, view, c.horizon, c.budget), block);
        json j = {{"block", block}, {"horizon", c.horizon}, {"first_agreement", hit ? json(*hit) : json()}};
        c.emit(j.dump(2) + "\n", "proximal.json", spec.digest());
    });
    auto* periodic = dyn->add_subcommand("periodic", "Admissible periodic point (1 0^{k-1})^oo if kN is in P");
    add_common(periodic, c);
    Int k = 1;
    periodic->add_option("--k", k, "Period")->required();
    periodic->callback([&] {
        finish_params(c, "dyn periodic");
        c.params["k"] = k;
        const auto spec = c.load_spec();
        if (!c.horizon) throw ValidationError("--horizon is required");
        const auto r = periodic_point_check(build_pset(spec, c.horizon), k, c.horizon);
        json j = {{"k", k}, {"horizon", c.horizon}};
        if (r.point) {
            j["admissible"] = r.point->admissible;
            j["point"] = config_json(r.point->config);
        } else {
            j["admissible"] = false;
            j["failing_multiple"] = *r.failing_multiple;
        }
        c.emit(j.dump(2) + "\n", "periodic.json", spec.digest());
    });

    // exp
    auto* exp = app.add_subcommand("exp", "Named experiments")->require_subcommand(1);
    auto* exp_list = exp->add_subcommand("list", "List experiment ids");
    exp_list->callback([] {
        for (const auto& id : experiment_ids()) std::cout << id << "\n";
    });
    auto* exp_run = exp->add_subcommand("run", "Run one experiment");
    std::string exp_id;
    std::string exp_params;
    std::string corpus_dir;
    exp_run->add_option("id", exp_id, "Experiment id")->required();
    exp_run->add_option("--params", exp_params, "Parameter overrides: file or inline JSON object");
    exp_run->add_option("--corpus", corpus_dir, "Corpus directory");
    exp_run->add_option("--budget", c.budget, "Node budget (default: SPACELAB_BUDGET or 1e7)");
    exp_run->add_option("--out", c.out, "Output directory");
    exp_run->add_flag("--plot", c.plot, "Also write an SVG");
    exp_run->callback([&] {
        finish_params(c, "exp run " + exp_id);
        json params = exp_params.empty() ? json::object() : read_json_arg(exp_params, false);
        if (!params.is_object()) throw ValidationError("--params must be a JSON object");
        if (!params.contains("budget")) params["budget"] = c.budget;
        const auto corpus = load_corpus(corpus_dir.empty() ? default_corpus_dir() : std::filesystem::path(corpus_dir));
        const auto r = run_experiment(exp_id, params, corpus);
        c.params = r.params;
        c.emit(r.to_json().dump(2) + "\n", exp_id + ".json", "");
        if (!c.out.empty()) {
            write_atomic(std::filesystem::path(c.out) / (exp_id + ".csv"), r.to_csv());
            if (c.plot && !r.series.empty())
                write_atomic(std::filesystem::path(c.out) / (exp_id + ".svg"), render_svg(exp_id, r.series));
        }
        if (r.verdict == Verdict::Inconclusive) throw BudgetHit("experiment inconclusive: budget exhausted");
    });

    // corpus
    auto* corpus_cmd = app.add_subcommand("corpus", "Shipped corpus of P specifications")->require_subcommand(1);
    auto* run_all_cmd = corpus_cmd->add_subcommand("run-all", "Run every experiment and write a report directory");
    std::string out_dir = "report";
    run_all_cmd->add_option("--out", out_dir, "Report directory");
    run_all_cmd->add_option("--corpus", corpus_dir, "Corpus directory");
    run_all_cmd->add_option("--budget", c.budget, "Node budget (default: SPACELAB_BUDGET or 1e7)");
    run_all_cmd->add_option("--workers", workers, "Experiments run in parallel");
    run_all_cmd->add_flag("--plot", c.plot, "Also write SVG plots");
    run_all_cmd->callback([&] {
        const auto corpus = load_corpus(corpus_dir.empty() ? default_corpus_dir() : std::filesystem::path(corpus_dir));
        RunAllOptions opts;
        opts.out_dir = out_dir;
        opts.plot = c.plot;
        opts.workers = workers;
        opts.budget = c.budget ? c.budget : env_budget();
        const auto reports = run_all(corpus, opts);
        bool inconclusive = false;
        for (const auto& r : reports) {
            std::cout << r.id << ": " << to_string(r.verdict) << "\n";
            inconclusive = inconclusive || r.verdict == Verdict::Inconclusive;
        }
        if (inconclusive) throw BudgetHit("some experiments ran out of budget");
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << json{{"error", "usage"}, {"message", e.what()}}.dump() << "\n";
        return kExitValidation;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const BudgetHit& e) {
        std::cerr << json{{"error", "budget_exhausted"}, {"message", e.what()}}.dump() << "\n";
        return kExitBudget;
    } catch (const spacelab::BudgetExhausted& e) {
        std::cerr << json{{"error", "budget_exhausted"}, {"message", e.what()}}.dump() << "\n";
        return kExitBudget;
    } catch (const std::invalid_argument& e) {
        std::cerr << json{{"error", "validation"}, {"message", e.what()}}.dump() << "\n";
        return kExitValidation;
    } catch (const std::out_of_range& e) {
        std::cerr << json{{"error", "out_of_range"}, {"message", e.what()}}.dump() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << json{{"error", "internal"}, {"message", e.what()}}.dump() << "\n";
        return 1;
    }
}
