#pragma once

// Named, reproducible finite-scale experiments. Each one asserts only a finite,
// machine-checkable consequence of the corresponding result on spacing shifts and
// reports everything else as observations.

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "spacelab/dynamics.hpp"

namespace spacelab {

struct CorpusEntry {
    std::string name;
    PSetSpec spec;
    std::string entropy;  // "zero" or "positive": the theoretical class of the shift
    std::string note;
};

using Corpus = std::vector<CorpusEntry>;

// Loads every *.json under dir, sorted by file name.
Corpus load_corpus(const std::filesystem::path& dir);
std::filesystem::path default_corpus_dir();

// Accepts a bare PSetSpec object or a corpus entry {"spec": {...}, ...}.
PSetSpec spec_from_json(const nlohmann::json& j);

enum class Verdict { Consistent, Violation, Inconclusive };
std::string to_string(Verdict v);

struct Check {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct ExperimentReport {
    std::string id;
    nlohmann::json params;
    nlohmann::json observations = nlohmann::json::object();
    std::vector<Check> checks;
    Verdict verdict = Verdict::Consistent;
    std::vector<std::string> notes;

    // Main table, written as CSV.
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    // Optional line series for plots: name -> (n, value) points.
    std::vector<std::pair<std::string, std::vector<std::pair<double, double>>>> series;

    nlohmann::json to_json() const;
    std::string to_csv() const;
};

const std::vector<std::string>& experiment_ids();

// Defaults for every parameter of an experiment.
nlohmann::json default_params(const std::string& id);

// Runs one experiment; user params override defaults key by key. Unknown ids throw
// ValidationError. Budget exhaustion yields verdict Inconclusive, not an exception.
ExperimentReport run_experiment(const std::string& id, const nlohmann::json& params, const Corpus& corpus);

// "No increase larger than the slack log2(n+1)/n between consecutive grid points and
// last <= half of first". Grid and values must have equal size.
bool decreasing_toward_zero(const std::vector<Int>& grid, const std::vector<double>& values);
// Same slack rule, but only requires last < first.
bool decreasing_with_slack(const std::vector<Int>& grid, const std::vector<double>& values);
double slack(Int n);

struct RunAllOptions {
    std::filesystem::path out_dir;
    bool plot = false;
    unsigned workers = 1;
    std::uint64_t budget = kDefaultBudget;
};

// Runs every experiment with default params and writes <id>.json, <id>.csv
// (and <id>.svg with plot=true), index.json and manifest.json into out_dir.
std::vector<ExperimentReport> run_all(const Corpus& corpus, const RunAllOptions& opts);

// Writes text to path through a temporary file and a rename.
void write_atomic(const std::filesystem::path& path, const std::string& text);

// Minimal SVG line chart.
std::string render_svg(const std::string& title,
                       const std::vector<std::pair<std::string, std::vector<std::pair<double, double>>>>& series);

std::string tool_version();

}  // namespace spacelab
