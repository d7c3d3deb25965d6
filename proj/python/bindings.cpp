#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "spacelab/harness.hpp"

namespace py = pybind11;
using nlohmann::json;
using namespace spacelab;

namespace {

py::object to_py(const json& j) {
    switch (j.type()) {
        case json::value_t::null: return py::none();
        case json::value_t::boolean: return py::bool_(j.get<bool>());
        case json::value_t::number_integer: return py::int_(j.get<std::int64_t>());
        case json::value_t::number_unsigned: return py::int_(j.get<std::uint64_t>());
        case json::value_t::number_float: return py::float_(j.get<double>());
        case json::value_t::string: return py::str(j.get<std::string>());
        case json::value_t::array: {
            py::list l;
            for (const auto& x : j) l.append(to_py(x));
            return std::move(l);
        }
        case json::value_t::object: {
            py::dict d;
            for (const auto& [k, v] : j.items()) d[py::str(k)] = to_py(v);
            return std::move(d);
        }
        default: return py::none();
    }
}

// Round-trips through the json module; keeps the converter in one direction only.
json from_py(const py::handle& o) {
    if (py::isinstance<py::str>(o)) return json::parse(o.cast<std::string>());
    auto dumps = py::module_::import("json").attr("dumps");
    return json::parse(dumps(o).cast<std::string>());
}

py::int_ big_to_py(const BigInt& x) { return py::int_(py::str(to_string(x))); }

py::object rational_to_py(const Rational& r) {
    return py::module_::import("fractions").attr("Fraction")(r.numerator(), r.denominator());
}

CountMode mode_from(const std::string& s) {
    if (s == "naive") return CountMode::Naive;
    if (s == "optimized") return CountMode::Optimized;
    throw ValidationError("mode must be naive or optimized");
}

py::object search_py(const SearchResult& r) { return to_py(to_json(r)); }

Configuration config_from_py(const py::handle& o, Int length) {
    Configuration c;
    if (py::isinstance<py::str>(o)) {
        c = Configuration::from_word(o.cast<std::string>());
    } else {
        c.ones = o.cast<std::vector<Int>>();
        c.length = length;
    }
    if (length > 0) c.length = std::max(c.length, length);
    c.validate();
    return c;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Spacing-shift toolkit: exact languages, entropy, structure search, experiments";
    m.attr("__version__") = tool_version();
    py::register_exception<BudgetExhausted>(m, "BudgetExhaustedError", PyExc_RuntimeError);
    m.attr("DEFAULT_BUDGET") = kDefaultBudget;

    py::class_<PSetSpec>(m, "PSetSpec")
        .def(py::init([](const py::object& o) { return PSetSpec::from_json(from_py(o)); }), py::arg("spec"))
        .def_static("multiples", &PSetSpec::multiples, py::arg("k"))
        .def_static("squares", &PSetSpec::squares)
        .def_static("explicit", &PSetSpec::explicit_set, py::arg("elems"))
        .def_static("finite_sums", &PSetSpec::finite_sums, py::arg("gens"))
        .def_static("delta_of", &PSetSpec::delta_of, py::arg("seq"))
        .def_static("diff_set", &PSetSpec::diff_set, py::arg("base"))
        .def_static("bohr", &PSetSpec::bohr, py::arg("alpha"), py::arg("lo"), py::arg("hi"))
        .def_static("complement", &PSetSpec::complement, py::arg("of"))
        .def_static("union", &PSetSpec::union_of, py::arg("parts"))
        .def_static("intersect", &PSetSpec::intersect, py::arg("parts"))
        .def("validate", &PSetSpec::validate)
        .def("contains", &PSetSpec::contains, py::arg("n"))
        .def("to_json", [](const PSetSpec& s) { return to_py(s.to_json()); })
        .def("canonical", &PSetSpec::canonical)
        .def("digest", &PSetSpec::digest)
        .def("__repr__", [](const PSetSpec& s) { return "PSetSpec(" + s.canonical() + ")"; });

    py::class_<PSetView>(m, "PSetView")
        .def_property_readonly("horizon", &PSetView::horizon)
        .def_property_readonly("digest", &PSetView::spec_digest)
        .def("member", &PSetView::member, py::arg("n"))
        .def("__contains__", &PSetView::member)
        .def("elements", &PSetView::elements)
        .def("count", &PSetView::count)
        .def("__len__", &PSetView::count);

    m.def("build_pset", &build_pset, py::arg("spec"), py::arg("horizon"));

    m.def(
        "density_report",
        [](const PSetView& v, Int n0, const std::vector<Int>& windows) {
            const auto r = density_report(v, n0, windows);
            py::dict d;
            d["horizon"] = r.horizon;
            d["n0"] = r.n0;
            py::list prefix;
            for (const auto& [n, x] : r.prefix_densities) prefix.append(rational_to_py(x));
            d["prefix_densities"] = prefix;
            d["lower_est"] = rational_to_py(r.lower_est);
            d["upper_est"] = rational_to_py(r.upper_est);
            py::dict banach;
            for (const auto& [w, x] : r.banach_profile) banach[py::int_(w)] = rational_to_py(x);
            d["banach_profile"] = banach;
            return d;
        },
        py::arg("view"), py::arg("n0"), py::arg("windows"));

    // structure
    m.def(
        "find_delta_chain",
        [](const PSetView& v, Int depth, Int bound, std::uint64_t budget) {
            return search_py(find_delta_chain(v, depth, bound, budget));
        },
        py::arg("view"), py::arg("depth"), py::arg("bound"), py::arg("budget") = kDefaultBudget);
    m.def(
        "find_ip_generator",
        [](const PSetView& v, Int depth, Int bound, std::uint64_t budget) {
            return search_py(find_ip_generator(v, depth, bound, budget));
        },
        py::arg("view"), py::arg("depth"), py::arg("bound"), py::arg("budget") = kDefaultBudget);
    m.def(
        "find_ip_ip_generator",
        [](const PSetView& v, Int depth, Int bound, std::uint64_t budget) {
            return search_py(find_ip_ip_generator(v, depth, bound, budget));
        },
        py::arg("view"), py::arg("depth"), py::arg("bound"), py::arg("budget") = kDefaultBudget);
    m.def(
        "syndetic_gap",
        [](const PSetView& v) {
            const auto g = syndetic_gap(v);
            return py::make_tuple(g.interior_gap ? py::object(py::int_(*g.interior_gap)) : py::object(py::none()),
                                  g.censored_tail);
        },
        py::arg("view"));
    m.def("thick_run", &thick_run, py::arg("view"));
    m.def(
        "intersective_refute",
        [](const PSetView& e, const PSetView& a) -> py::object {
            auto w = intersective_refute(e, a);
            return w ? to_py(to_json(*w)) : py::object(py::none());
        },
        py::arg("e_view"), py::arg("a_view"));
    m.def(
        "verify_witness",
        [](const py::object& w, const PSetView& v) { return verify_witness(witness_from_json(from_py(w)), v); },
        py::arg("witness"), py::arg("view"));

    // language
    m.def(
        "count_words",
        [](const PSetView& v, Int n, const std::string& mode, std::uint64_t budget, unsigned workers) {
            auto r = count_words(v, n, mode_from(mode), budget, workers);
            if (!r.count) throw BudgetExhausted("count_words: budget exhausted after " + std::to_string(r.nodes) + " nodes");
            return big_to_py(*r.count);
        },
        py::arg("view"), py::arg("n"), py::arg("mode") = "optimized", py::arg("budget") = kDefaultBudget,
        py::arg("workers") = 1);
    m.def(
        "max_ones",
        [](const PSetView& v, Int n, std::uint64_t budget) {
            auto r = max_ones(v, n, budget);
            if (!r.omega) throw BudgetExhausted("max_ones: budget exhausted");
            return py::make_tuple(*r.omega, r.witness.ones);
        },
        py::arg("view"), py::arg("n"), py::arg("budget") = kDefaultBudget);
    m.def(
        "entropy_profile",
        [](const PSetView& v, const std::vector<Int>& grid, std::uint64_t budget) {
            py::list out;
            for (const auto& r : entropy_profile(v, grid, budget).records) {
                py::dict d;
                d["n"] = r.n;
                d["count"] = big_to_py(r.count);
                d["h"] = r.h;
                d["omega"] = r.omega;
                d["omega_over_n"] = rational_to_py(r.omega_over_n);
                out.append(d);
            }
            return out;
        },
        py::arg("view"), py::arg("grid"), py::arg("budget") = kDefaultBudget);
    m.def(
        "is_admissible",
        [](const py::object& word, const PSetView& v) { return is_admissible(config_from_py(word, 0), v); },
        py::arg("word"), py::arg("view"));
    m.def(
        "greedy_point", [](const PSetView& v, Int horizon) { return greedy_point(v, horizon).ones; }, py::arg("view"),
        py::arg("horizon"));
    m.def(
        "transitive_gap_check",
        [](const PSetView& v, Int word_len_cap, Int gap_cap) {
            const auto t = transitive_gap_check(v, word_len_cap, gap_cap);
            py::dict d;
            d["joinable"] = t.joinable;
            d["total"] = t.total;
            d["least_failing"] = t.least_failing ? py::object(py::make_tuple(t.least_failing->first.to_word(),
                                                                             t.least_failing->second.to_word()))
                                                 : py::object(py::none());
            return d;
        },
        py::arg("view"), py::arg("word_len_cap"), py::arg("gap_cap"));

    // dynamics
    m.def(
        "periodic_point_check",
        [](const PSetView& v, Int k, Int horizon) -> py::object {
            const auto r = periodic_point_check(v, k, horizon);
            if (r.point) return py::cast(r.point->config.ones);
            return py::none();
        },
        py::arg("view"), py::arg("k"), py::arg("horizon"));
    m.def(
        "proximal_probe",
        [](const py::object& x, const py::object& y, const PSetView& v, Int block, Int horizon) -> py::object {
            const auto px = make_orbit_point(config_from_py(x, horizon), v, "x");
            const auto py_ = make_orbit_point(config_from_py(y, horizon), v, "y");
            auto hit = proximal_probe(px, py_, block);
            return hit ? py::object(py::int_(*hit)) : py::object(py::none());
        },
        py::arg("x"), py::arg("y"), py::arg("view"), py::arg("block"), py::arg("horizon") = 0);
    m.def(
        "f_statistic",
        [](const py::object& x, const py::object& y, const PSetView& v, Int l, const std::vector<Int>& grid,
           Int horizon) {
            const auto px = make_orbit_point(config_from_py(x, horizon), v, "x");
            const auto py_ = make_orbit_point(config_from_py(y, horizon), v, "y");
            py::list out;
            for (const auto& [n, f] : f_statistic(px, py_, l, grid).values) out.append(py::make_tuple(n, rational_to_py(f)));
            return out;
        },
        py::arg("x"), py::arg("y"), py::arg("view"), py::arg("l"), py::arg("grid"), py::arg("horizon") = 0);

    // harness
    m.def("experiment_ids", &experiment_ids);
    m.def("default_params", [](const std::string& id) { return to_py(default_params(id)); }, py::arg("id"));
    m.def(
        "run_experiment",
        [](const std::string& id, const py::object& params, const std::string& corpus_dir) {
            const auto corpus = load_corpus(corpus_dir.empty() ? default_corpus_dir() : std::filesystem::path(corpus_dir));
            const json p = params.is_none() ? json::object() : from_py(params);
            return to_py(run_experiment(id, p, corpus).to_json());
        },
        py::arg("id"), py::arg("params") = py::none(), py::arg("corpus_dir") = "");
    m.def(
        "corpus_names",
        [](const std::string& corpus_dir) {
            std::vector<std::string> names;
            for (const auto& e : load_corpus(corpus_dir.empty() ? default_corpus_dir() : std::filesystem::path(corpus_dir)))
                names.push_back(e.name);
            return names;
        },
        py::arg("corpus_dir") = "");
}
