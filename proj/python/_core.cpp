#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "chowfm/errors.hpp"
#include "chowfm/jobs.hpp"

namespace py = pybind11;
using namespace chowfm;

namespace {

using Sets = std::vector<std::vector<int>>;

LargeFamily family_of(int n, const Sets& sets) {
    std::set<Subset> members;
    for (const auto& s : sets) members.insert(Subset(s));
    return LargeFamily(n, std::move(members));
}

Sets sets_of(const std::vector<Subset>& subsets) {
    Sets out;
    for (Subset s : subsets) out.push_back(s.elements());
    return out;
}

Sets sets_of(const LargeFamily& f) { return sets_of(std::vector<Subset>(f.members().begin(), f.members().end())); }

/// Accepts Python ints and "p/q" strings.
std::vector<std::string> weight_strings(const py::list& weights) {
    std::vector<std::string> out;
    for (const auto& w : weights) out.push_back(py::str(w));
    return out;
}

Walk walk_of(const Sets& steps) {
    Walk w;
    for (const auto& s : steps) w.steps.push_back(Subset(s));
    return w;
}

py::object json_to_py(const nlohmann::json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Chow rings of weighted Fulton-MacPherson compactifications of P^d";

    static py::exception<Error> base(m, "ChowError");
    static py::exception<ArgumentError> argument(m, "ArgumentError", base.ptr());
    static py::exception<SizeCapError> size_cap(m, "SizeCapError", base.ptr());
    static py::exception<WalkOrderError> walk_order(m, "WalkOrderError", base.ptr());
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const ArgumentError& e) {
            argument(e.what());
        } catch (const SizeCapError& e) {
            size_cap(e.what());
        } catch (const WalkOrderError& e) {
            walk_order(e.what());
        } catch (const Error& e) {
            base(e.what());
        }
    });

    py::class_<Presentation>(m, "Presentation")
        .def_property_readonly("variables",
                               [](const Presentation& p) {
                                   std::vector<std::string> names;
                                   for (const Variable& v : p.vars()->variables()) names.push_back(v.name);
                                   return names;
                               })
        .def_property_readonly("relations",
                               [](const Presentation& p) {
                                   std::vector<std::string> out;
                                   for (const Poly& r : p.relations()) out.push_back(r.to_string());
                                   return out;
                               })
        .def_property_readonly("top_degree", &Presentation::top_degree)
        .def("dump", &Presentation::dump)
        .def("cas_script", &Presentation::cas_script)
        .def("__repr__", [](const Presentation& p) {
            return "<Presentation: " + std::to_string(p.vars()->size()) + " variables, " +
                   std::to_string(p.relations().size()) + " relations>";
        });

    m.def("large_from_weights", [](const py::list& w) { return sets_of(large_from_weights(Weights::parse(weight_strings(w)))); },
          py::arg("weights"), "Large sets for the given weights, in canonical order.");
    m.def("canonical_walk", [](int n, const Sets& sets) { return sets_of(canonical_walk(family_of(n, sets)).steps); },
          py::arg("n"), py::arg("large_sets"));
    m.def(
        "all_walks",
        [](int n, const Sets& sets, std::size_t cap) {
            std::vector<Sets> out;
            for (const Walk& w : all_walks(family_of(n, sets), cap)) out.push_back(sets_of(w.steps));
            return out;
        },
        py::arg("n"), py::arg("large_sets"), py::arg("cap") = kDefaultWalkCap);

    m.def("routis_presentation", [](int d, int n, const Sets& sets) { return build_thm31(BaseGeometry(d, n), family_of(n, sets)); },
          py::arg("d"), py::arg("n"), py::arg("large_sets"));
    m.def("fm_presentation", [](int d, int n) { return build_thm34(BaseGeometry(d, n)); }, py::arg("d"), py::arg("n"));
    m.def(
        "iterated_presentation",
        [](int d, int n, const Sets& sets, std::optional<Sets> walk) {
            const LargeFamily fam = family_of(n, sets);
            return iterated_presentation(BaseGeometry(d, n), fam, walk ? walk_of(*walk) : canonical_walk(fam));
        },
        py::arg("d"), py::arg("n"), py::arg("large_sets"), py::arg("walk") = py::none());

    m.def("graded_ranks", [](const Presentation& p, std::size_t cap) { return graded_ranks(p, RankOptions{cap}).ranks; },
          py::arg("presentation"), py::arg("cap") = kDefaultMonomialCap);
    m.def(
        "relations_in_ideal",
        [](const Presentation& ideal_of, const Presentation& relations_of, std::size_t cap) {
            std::vector<Poly> rels;
            for (const Poly& r : relations_of.relations()) rels.push_back(rebase(r, ideal_of.vars()));
            return membership_batch(ideal_of, {}, rels, RankOptions{cap});
        },
        py::arg("ideal_of"), py::arg("relations_of"), py::arg("cap") = kDefaultMonomialCap,
        "Rational membership of each relation of `relations_of` in the ideal of `ideal_of`.");
    m.def("rank_oracle", [](int d, int n, const Sets& sets) { return rank_oracle(d, n, family_of(n, sets)).ranks; },
          py::arg("d"), py::arg("n"), py::arg("large_sets"));

    m.def("check_counterexample", [] { return json_to_py(check_counterexample().to_json(false)); });
    m.def("check_equivalence", [](int d, int n) { return json_to_py(check_thm_equivalence(d, n).to_json(false)); },
          py::arg("d"), py::arg("n"));
    m.def(
        "check_construction",
        [](int d, int n, const Sets& sets) { return json_to_py(check_construction(d, n, family_of(n, sets)).to_json(false)); },
        py::arg("d"), py::arg("n"), py::arg("large_sets"));
}
