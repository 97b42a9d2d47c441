#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "photonmab/config_io.hpp"
#include "photonmab/engine.hpp"

namespace py = pybind11;
using namespace photonmab;

namespace {

ExperimentConfig config_from_kwargs(const py::dict& kwargs) {
    nlohmann::json doc = nlohmann::json::object();
    for (const auto& item : kwargs) {
        const auto key = item.first.cast<std::string>();
        const py::handle value = item.second;
        if (py::isinstance<py::bool_>(value)) {
            doc[key] = value.cast<bool>();
        } else if (py::isinstance<py::int_>(value)) {
            if (key == "master_seed")
                doc[key] = value.cast<std::uint64_t>();
            else
                doc[key] = value.cast<long long>();
        } else if (py::isinstance<py::float_>(value)) {
            doc[key] = value.cast<double>();
        } else if (py::isinstance<py::str>(value)) {
            doc[key] = value.cast<std::string>();
        } else if (py::isinstance<py::sequence>(value)) {
            doc[key] = nlohmann::json::array();
            for (const py::handle element : value.cast<py::sequence>()) {
                if (py::isinstance<py::int_>(element))
                    doc[key].push_back(element.cast<long long>());
                else
                    doc[key].push_back(element.cast<double>());
            }
        } else {
            throw py::type_error("unsupported config value for key: " + key);
        }
    }
    return parse_config_json(doc);
}

py::dict curves_to_dict(const CdrCurves& curves) {
    py::dict out;
    out["fine_cdr"] = curves.fine_cdr;
    out["coarse_cdr"] = curves.coarse_cdr;
    out["mean_pa"] = curves.mean_pa;
    out["replications"] = curves.replications;
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Hierarchical photon-routing bandit simulator (C++ core)";

    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

    m.def("round_clamp", &round_clamp, py::arg("value"), py::arg("resolution"),
          "Round half away from zero, clamped to [-(N-1)/2, (N-1)/2].");
    m.def("pos_angle", &pos_angle, py::arg("n"), py::arg("resolution"),
          "Half-wave-plate orientation in degrees for discrete step n.");
    m.def("branch_prob_left", &branch_prob_left, py::arg("n"),
          py::arg("resolution"),
          "Probability of the left branch at rounded adjuster step n.");
    m.def("best_arm", &best_arm, py::arg("reward_probs"));
    m.def("best_group", &best_group, py::arg("reward_probs"), py::arg("level"));

    m.def(
        "leaf_distribution",
        [](const std::vector<double>& pa_values, int depth, int resolution) {
            RoutingTree tree(depth, PaState{.resolution = resolution});
            if (static_cast<int>(pa_values.size()) != tree.node_count())
                throw std::invalid_argument("expected 2^depth - 1 adjuster values");
            for (int id = 0; id < tree.node_count(); ++id)
                tree.node(id).value = pa_values[static_cast<std::size_t>(id)];
            return tree.leaf_distribution();
        },
        py::arg("pa_values"), py::arg("depth"), py::arg("resolution") = 7,
        "Leaf probabilities for a tree with the given adjuster values "
        "(breadth-first, 2^depth - 1 of them).");

    m.def(
        "run_experiment",
        [](const py::kwargs& kwargs) {
            const ExperimentConfig config = config_from_kwargs(kwargs);
            py::gil_scoped_release release;
            const ExperimentResult result = run_experiment(config);
            py::gil_scoped_acquire acquire;
            return curves_to_dict(result.curves);
        },
        "Run an experiment; accepts the JSON config fields as keyword "
        "arguments and returns the aggregated curves.");

    m.def(
        "sweep_resolutions",
        [](const py::kwargs& kwargs) {
            py::dict remaining;
            std::vector<int> resolutions;
            int snapshot_cycle = 30;
            for (const auto& item : kwargs) {
                const auto key = item.first.cast<std::string>();
                if (key == "resolutions")
                    resolutions = item.second.cast<std::vector<int>>();
                else if (key == "snapshot_cycle")
                    snapshot_cycle = item.second.cast<int>();
                else
                    remaining[item.first] = item.second;
            }
            const ExperimentConfig base = config_from_kwargs(remaining);
            py::gil_scoped_release release;
            const std::vector<SweepEntry> entries =
                sweep_resolutions(base, resolutions, snapshot_cycle);
            py::gil_scoped_acquire acquire;
            py::list out;
            for (const SweepEntry& entry : entries) {
                py::dict d;
                d["resolution"] = entry.resolution;
                d["curves"] = curves_to_dict(entry.curves);
                d["fine_at_snapshot"] = entry.fine_at_snapshot;
                d["coarse_at_snapshot"] = entry.coarse_at_snapshot;
                out.append(std::move(d));
            }
            return out;
        },
        "Sweep over uniform resolutions; pass resolutions=[...] and "
        "snapshot_cycle=N along with the config fields.");

#ifdef PHOTONMAB_VERSION
    m.attr("__version__") = PHOTONMAB_VERSION;
#endif
}
