#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <fstream>
#include <map>
#include <sstream>

#include "socinf/baselines.hpp"
#include "socinf/dataset.hpp"
#include "socinf/error.hpp"
#include "socinf/evaluation.hpp"
#include "socinf/ic_em.hpp"
#include "socinf/mlp.hpp"
#include "socinf/models.hpp"
#include "socinf/pipeline.hpp"
#include "socinf/propagation.hpp"
#include "socinf/synth.hpp"

namespace py = pybind11;
using namespace socinf;

namespace {

using EdgeMap = std::map<std::pair<std::string, std::string>, double>;

std::string read_path(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw InputError("cannot read " + path);
    }
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

Dataset parse_dataset(const std::string& graph_text, const std::string& actions_text) {
    std::istringstream g(graph_text);
    Dataset d;
    d.graph = load_graph(g).graph;
    std::istringstream a(actions_text);
    d.log = load_actions(a, d.graph).log;
    return d;
}

SubjectId subject_id(const Dataset& d, const std::string& name) {
    const auto s = d.graph.subjects().find(name);
    if (!s) {
        throw InputError("unknown subject '" + name + "'");
    }
    return *s;
}

ActionId action_id(const Dataset& d, const std::string& name) {
    const auto a = d.log.actions().find(name);
    if (!a) {
        throw InputError("unknown action '" + name + "'");
    }
    return *a;
}

std::vector<SubjectId> subject_ids(const Dataset& d, const std::vector<std::string>& names) {
    std::vector<SubjectId> out;
    for (const auto& n : names) {
        out.push_back(subject_id(d, n));
    }
    return out;
}

EdgeMap to_map(const Dataset& d, const EdgeProbabilities& probs) {
    EdgeMap out;
    const auto& ids = d.graph.subjects();
    for (EdgeId e = 0; e < d.graph.n_edges(); ++e) {
        const auto& edge = d.graph.edge(e);
        out[{ids.name(edge.source), ids.name(edge.target)}] = probs.p[e];
    }
    return out;
}

EdgeProbabilities from_map(const Dataset& d, const EdgeMap& map) {
    EdgeProbabilities probs{"", std::vector<double>(d.graph.n_edges(), 0.0)};
    for (const auto& [key, p] : map) {
        const auto e = d.graph.find_edge(subject_id(d, key.first), subject_id(d, key.second));
        if (!e) {
            throw InputError("no edge " + key.first + " -> " + key.second);
        }
        probs.p[*e] = p;
    }
    return probs;
}

ModelKind model_kind(const std::string& selector) {
    const auto k = parse_model_kind(selector);
    if (!k) {
        throw InputError("unknown model '" + selector + "'");
    }
    return *k;
}

PropagationOptions propagation(bool timestamp_free, std::optional<Timestamp> window) {
    PropagationOptions opts;
    opts.timestamp_free = timestamp_free;
    opts.window = window;
    return opts;
}

py::dict filter_report_dict(const FilterReport& r) {
    py::dict out;
    out["subjects_before"] = r.subjects_before;
    out["subjects_after"] = r.subjects_after;
    out["edges_before"] = r.edges_before;
    out["edges_after"] = r.edges_after;
    out["actions_before"] = r.actions_before;
    out["actions_after"] = r.actions_after;
    out["records_before"] = r.records_before;
    out["records_after"] = r.records_after;
    out["removed_few_actions"] = r.removed_few_actions;
    out["removed_no_edges"] = r.removed_no_edges;
    out["rounds"] = r.rounds;
    return out;
}

// A trained network bound to the subject map it was trained on.
struct DnnModel {
    Dataset data;
    MlpModel model;
    std::vector<double> loss_trace;

    double predict(const std::string& subject, const std::vector<std::string>& friends) const {
        return predict_proba(model, data.graph, subject_id(data, subject), subject_ids(data, friends));
    }
    std::string save() const {
        std::ostringstream os;
        save_model(os, model);
        return os.str();
    }
};

}  // namespace

PYBIND11_MODULE(_socinf, m) {
    m.doc() = "Social influence estimators, influence-aware networks, and the evaluation protocol";

    auto base = py::register_exception<Error>(m, "SocinfError", PyExc_RuntimeError);
    py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
    (void)base;

    py::class_<Dataset>(m, "Dataset")
        .def_static("from_strings", &parse_dataset, py::arg("graph"), py::arg("actions"))
        .def_static(
            "from_files",
            [](const std::string& graph_path, const std::string& actions_path) {
                return parse_dataset(read_path(graph_path), read_path(actions_path));
            },
            py::arg("graph_path"), py::arg("actions_path"))
        .def_property_readonly("n_subjects", [](const Dataset& d) { return d.graph.n_subjects(); })
        .def_property_readonly("n_edges", [](const Dataset& d) { return d.graph.n_edges(); })
        .def_property_readonly("n_actions", [](const Dataset& d) { return d.log.n_actions(); })
        .def_property_readonly("n_records", [](const Dataset& d) { return d.log.size(); })
        .def_property_readonly("subjects", [](const Dataset& d) { return d.graph.subjects().names(); })
        .def_property_readonly("timestamp_mode",
                               [](const Dataset& d) {
                                   switch (d.log.timestamp_mode()) {
                                       case TimestampMode::Timed:
                                           return "timed";
                                       case TimestampMode::Untimed:
                                           return "untimed";
                                       default:
                                           return "mixed";
                                   }
                               })
        .def(
            "filter",
            [](const Dataset& d, std::size_t min_actions) {
                auto r = filter_dataset(d.graph, d.log, min_actions);
                return py::make_tuple(std::move(r.data), filter_report_dict(r.report));
            },
            py::arg("min_actions") = 20)
        .def(
            "active_friends",
            [](const Dataset& d, const std::string& subject, const std::string& action,
               std::optional<Timestamp> before) {
                std::vector<std::string> out;
                for (const auto f : active_friends(d.graph, d.log, subject_id(d, subject), action_id(d, action), before)) {
                    out.push_back(d.graph.subjects().name(f));
                }
                return out;
            },
            py::arg("subject"), py::arg("action"), py::arg("before") = py::none())
        .def("graph_tsv",
             [](const Dataset& d) {
                 std::ostringstream os;
                 write_graph(os, d.graph);
                 return os.str();
             })
        .def("actions_tsv", [](const Dataset& d) {
            std::ostringstream os;
            write_actions(os, d);
            return os.str();
        });

    m.def(
        "combine_joint_probability",
        [](const std::vector<double>& probs) { return combine_joint_probability(probs); }, py::arg("probs"),
        "1 - prod(1 - p) over the active friends' probabilities.");

    m.def(
        "estimate",
        [](const Dataset& d, const std::string& model, bool timestamp_free, std::optional<Timestamp> window) {
            const auto kind = model_kind(model);
            if (kind == ModelKind::ICEM || kind == ModelKind::DNN) {
                throw InputError("estimate() covers bd, ji, pcb and pcj");
            }
            return to_map(d, fit_lt(d, d.log, kind, propagation(timestamp_free, window)));
        },
        py::arg("data"), py::arg("model") = "bd", py::arg("timestamp_free") = false, py::arg("window") = py::none(),
        "Static edge-probability estimate keyed by (source, target).");

    m.def(
        "lt_predict",
        [](const Dataset& d, const EdgeMap& probs, const std::string& subject, const std::vector<std::string>& friends,
           double theta) {
            const auto pred = lt_predict(d.graph, from_map(d, probs), subject_ids(d, friends), subject_id(d, subject),
                                         LtConfig{theta});
            return py::make_tuple(pred.score, pred.active);
        },
        py::arg("data"), py::arg("probs"), py::arg("subject"), py::arg("friends"), py::arg("theta") = 0.5);

    m.def(
        "ic_em_fit",
        [](const Dataset& d, std::size_t max_iters, double tolerance, double init_p) {
            const auto eps = episodes_from_log(d.log);
            const auto fit = ic_em_fit(eps, d.graph, IcEmConfig{max_iters, tolerance, init_p});
            py::dict out;
            out["probs"] = to_map(d, fit.probs);
            out["ll_trace"] = fit.ll_trace;
            out["iterations"] = fit.iterations;
            out["converged"] = fit.converged;
            return out;
        },
        py::arg("data"), py::arg("max_iters") = 1000, py::arg("tolerance") = 1e-9, py::arg("init_p") = 0.5);

    py::class_<DnnModel>(m, "DnnModel")
        .def("predict", &DnnModel::predict, py::arg("subject"), py::arg("friends"))
        .def("save", &DnnModel::save)
        .def_property_readonly("layer_sizes", [](const DnnModel& dm) { return dm.model.layer_sizes; })
        .def_readonly("loss_trace", &DnnModel::loss_trace);

    m.def(
        "train_dnn",
        [](const Dataset& d, std::size_t epochs, std::uint64_t seed, double dropout, double learning_rate,
           std::size_t batch_size, std::vector<std::size_t> hidden, bool timestamp_free) {
            TrainConfig cfg;
            cfg.epochs = epochs;
            cfg.seed = seed;
            cfg.dropout_rate = dropout;
            cfg.learning_rate = learning_rate;
            cfg.batch_size = batch_size;
            const auto set = build_training_set(d.graph, d.log, {derive_seed(seed, 0), timestamp_free});
            const auto sizes = tower_layer_sizes(d.graph.n_subjects(), hidden);
            py::gil_scoped_release release;
            auto result = fit(set.examples, cfg, sizes);
            return DnnModel{d, std::move(result.model), std::move(result.loss_trace)};
        },
        py::arg("data"), py::arg("epochs") = 25, py::arg("seed") = 0, py::arg("dropout") = 0.1,
        py::arg("learning_rate") = 1e-3, py::arg("batch_size") = 32, py::arg("hidden") = tower_hidden(),
        py::arg("timestamp_free") = false);

    m.def(
        "roc_curve",
        [](const std::vector<double>& scores, const std::vector<int>& labels) {
            if (scores.size() != labels.size()) {
                throw InputError("scores and labels differ in length");
            }
            std::vector<std::pair<double, int>> scored;
            for (std::size_t k = 0; k < scores.size(); ++k) {
                scored.emplace_back(scores[k], labels[k]);
            }
            const auto curve = roc_curve(scored);
            py::list points;
            for (const auto& p : curve.points) {
                points.append(py::make_tuple(p.threshold, p.tpr, p.fpr));
            }
            py::dict out;
            out["points"] = points;
            out["youden"] = youden_threshold(curve).theta;
            out["closest01"] = closest01_threshold(curve).theta;
            return out;
        },
        py::arg("scores"), py::arg("labels"));

    m.def(
        "synthesize",
        [](const std::string& kind, std::size_t n, double avg_in_degree, double p_min, double p_max,
           std::size_t actions, double seed_fraction, std::size_t pairs, std::size_t pairs_per_target,
           std::uint64_t seed) {
            WorldKind wk;
            if (kind == "independent") {
                wk = WorldKind::Independent;
            } else if (kind == "dependent") {
                wk = WorldKind::DependentAnd;
            } else {
                throw InputError("kind must be independent or dependent");
            }
            const SynthParams params{n, avg_in_degree, p_min, p_max, actions, seed_fraction, pairs, pairs_per_target};
            const auto out = synthesize(wk, params, seed);
            std::ostringstream manifest;
            write_world_manifest(manifest, out);
            return py::make_tuple(Dataset{out.world.graph, out.log}, manifest.str());
        },
        py::arg("kind") = "independent", py::arg("n") = 200, py::arg("avg_in_degree") = 8.0, py::arg("p_min") = 0.0,
        py::arg("p_max") = 0.2, py::arg("actions") = 2000, py::arg("seed_fraction") = 0.01, py::arg("pairs") = 0,
        py::arg("pairs_per_target") = 1, py::arg("seed") = 0);

    m.def(
        "evaluate",
        [](const Dataset& d, const std::vector<std::string>& models, std::size_t k, std::uint64_t seed,
           std::size_t epochs, bool timestamp_free) {
            EvalOptions opts;
            opts.models.clear();
            for (const auto& name : models) {
                opts.models.push_back(model_kind(name));
            }
            opts.k = k;
            opts.seed = seed;
            opts.train.epochs = epochs;
            opts.propagation.timestamp_free = timestamp_free;
            py::gil_scoped_release release;
            const auto report = run_evaluation(d, opts);
            return std::make_pair(report.to_text(), report.to_rows());
        },
        py::arg("data"), py::arg("models") = std::vector<std::string>{"bd", "ji", "pcb", "pcj", "icem", "dnn"},
        py::arg("k") = 10, py::arg("seed") = 0, py::arg("epochs") = 25, py::arg("timestamp_free") = false,
        "Runs the cross-validated comparison; returns (text report, tab-separated rows).");
}
