// socinf: ingest, fit, evaluate, predict, and synthesize social-influence data.
//
// Exit codes: 0 success, 1 model/compute failure, 2 input or usage error.

#include <openssl/evp.h>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "socinf/baselines.hpp"
#include "socinf/dataset.hpp"
#include "socinf/error.hpp"
#include "socinf/ic_em.hpp"
#include "socinf/mlp.hpp"
#include "socinf/models.hpp"
#include "socinf/pipeline.hpp"
#include "socinf/propagation.hpp"
#include "socinf/synth.hpp"

namespace fs = std::filesystem;
using namespace socinf;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCompute = 1;
constexpr int kExitInput = 2;

using Manifest = std::vector<std::pair<std::string, std::string>>;

std::string sha256_hex(const std::string& bytes) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr);
    std::ostringstream os;
    for (unsigned int i = 0; i < len; ++i) {
        os << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
    }
    return os.str();
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw InputError("cannot read " + path.string());
    }
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << content)) {
        throw InputError("cannot write " + path.string());
    }
}

// Digest of the dense id order; models are only valid against the same map.
std::string subjects_digest(const SocialGraph& graph) {
    std::string joined;
    for (const auto& name : graph.subjects().names()) {
        joined += name;
        joined += '\n';
    }
    return sha256_hex(joined);
}

std::string render_manifest(const Manifest& m) {
    std::string out;
    for (const auto& [k, v] : m) {
        out += k + '\t' + v + '\n';
    }
    return out;
}

Manifest parse_manifest(const fs::path& path) {
    Manifest m;
    std::istringstream in(read_file(path));
    std::string line;
    while (std::getline(in, line)) {
        const auto tab = line.find('\t');
        if (tab != std::string::npos) {
            m.emplace_back(line.substr(0, tab), line.substr(tab + 1));
        }
    }
    return m;
}

std::string manifest_value(const Manifest& m, const std::string& key) {
    for (const auto& [k, v] : m) {
        if (k == key) {
            return v;
        }
    }
    return {};
}

struct LoadedData {
    Dataset data;
    std::string graph_digest;
    std::string actions_digest;
};

LoadedData load_dataset_dir(const fs::path& dir) {
    LoadedData out;
    const auto graph_bytes = read_file(dir / "graph.tsv");
    const auto action_bytes = read_file(dir / "actions.tsv");
    out.graph_digest = sha256_hex(graph_bytes);
    out.actions_digest = sha256_hex(action_bytes);
    std::istringstream graph_in(graph_bytes);
    out.data.graph = load_graph(graph_in).graph;
    std::istringstream action_in(action_bytes);
    out.data.log = load_actions(action_in, out.data.graph).log;
    return out;
}

void ensure_dir(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) {
        throw InputError("cannot create " + dir.string() + ": " + ec.message());
    }
}

std::string command_line(int argc, char** argv) {
    std::string out;
    for (int i = 0; i < argc; ++i) {
        out += (i ? " " : "") + std::string(argv[i]);
    }
    return out;
}

std::string elapsed_since(std::chrono::steady_clock::time_point start) {
    const std::chrono::duration<double> d = std::chrono::steady_clock::now() - start;
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", d.count());
    return buf;
}

struct CommonOptions {
    std::uint64_t seed = 0;
    std::string out;
    bool timestamp_free = false;
    long long window = 0;

    PropagationOptions propagation() const {
        PropagationOptions p;
        p.timestamp_free = timestamp_free;
        if (window > 0) {
            p.window = window;
        }
        return p;
    }
};

struct TrainOverrides {
    TrainConfig cfg;
    std::size_t first_hidden = 128;
    std::size_t depth = 3;
};

void add_train_options(CLI::App* cmd, TrainOverrides& t) {
    cmd->add_option("--epochs", t.cfg.epochs, "Training epochs")->capture_default_str();
    cmd->add_option("--dropout", t.cfg.dropout_rate, "Dropout rate on hidden layers")->capture_default_str();
    cmd->add_option("--learning-rate", t.cfg.learning_rate, "RMSProp learning rate")->capture_default_str();
    cmd->add_option("--batch-size", t.cfg.batch_size, "Mini-batch size")->capture_default_str();
    cmd->add_option("--hidden", t.first_hidden, "Width of the first hidden layer")->capture_default_str();
    cmd->add_option("--depth", t.depth, "Number of hidden layers (each half the previous)")->capture_default_str();
}

Manifest train_manifest(const TrainOverrides& t) {
    return {{"epochs", std::to_string(t.cfg.epochs)},
            {"dropout", format_double(t.cfg.dropout_rate)},
            {"learning_rate", format_double(t.cfg.learning_rate)},
            {"rmsprop_decay", format_double(t.cfg.rmsprop_decay)},
            {"rmsprop_epsilon", format_double(t.cfg.rmsprop_epsilon)},
            {"batch_size", std::to_string(t.cfg.batch_size)},
            {"hidden", std::to_string(t.first_hidden)},
            {"depth", std::to_string(t.depth)}};
}

// ---- ingest ---------------------------------------------------------------

struct IngestArgs {
    std::string graph;
    std::string actions;
    std::size_t min_actions = 20;
};

int cmd_ingest(const IngestArgs& a, const CommonOptions& c, const std::string& cmdline) {
    const auto start = std::chrono::steady_clock::now();
    const auto graph_bytes = read_file(a.graph);
    const auto action_bytes = read_file(a.actions);
    std::istringstream graph_in(graph_bytes);
    const auto graph = load_graph(graph_in);
    std::istringstream action_in(action_bytes);
    const auto actions = load_actions(action_in, graph.graph);
    if (actions.log.timestamp_mode() == TimestampMode::Mixed) {
        throw InputError("action file mixes timed and untimed records");
    }
    if (actions.log.timestamp_mode() == TimestampMode::Untimed && !actions.log.empty() && !c.timestamp_free) {
        throw InputError("action file has no timestamps; pass --timestamp-free to accept it");
    }
    const auto filtered = filter_dataset(graph.graph, actions.log, a.min_actions);

    const fs::path out(c.out);
    ensure_dir(out);
    std::ostringstream g;
    write_graph(g, filtered.data.graph);
    std::ostringstream r;
    write_actions(r, filtered.data);
    write_file(out / "graph.tsv", g.str());
    write_file(out / "actions.tsv", r.str());

    std::string summary = "subjects\t" + std::to_string(filtered.data.graph.n_subjects()) + "\n" + "edges\t" +
                          std::to_string(filtered.data.graph.n_edges()) + "\n" + "actions\t" +
                          std::to_string(filtered.data.log.n_actions()) + "\n" + "records\t" +
                          std::to_string(filtered.data.log.size()) + "\n" + "self_loops_dropped\t" +
                          std::to_string(graph.self_loops) + "\n" + "duplicate_edges\t" +
                          std::to_string(graph.duplicate_edges) + "\n" + "unknown_subject_records\t" +
                          std::to_string(actions.unknown_subjects) + "\n" + "duplicate_records\t" +
                          std::to_string(actions.duplicate_records) + "\n" + filtered.report.to_text();
    write_file(out / "summary.txt", summary);
    write_file(out / "manifest.txt",
               render_manifest({{"command", cmdline},
                                {"subcommand", "ingest"},
                                {"seed", std::to_string(c.seed)},
                                {"min_actions", std::to_string(a.min_actions)},
                                {"timestamp_free", c.timestamp_free ? "1" : "0"},
                                {"graph_input", a.graph},
                                {"graph_input_sha256", sha256_hex(graph_bytes)},
                                {"actions_input", a.actions},
                                {"actions_input_sha256", sha256_hex(action_bytes)},
                                {"subjects_sha256", subjects_digest(filtered.data.graph)},
                                {"wall_seconds", elapsed_since(start)}}));
    std::cout << summary;
    return kExitOk;
}

// ---- fit ------------------------------------------------------------------

struct FitArgs {
    std::string data;
    std::string model;
    TrainOverrides train;
    double init_p = 0.5;
    std::size_t max_iters = 1000;
};

int cmd_fit(const FitArgs& a, const CommonOptions& c, const std::string& cmdline) {
    const auto start = std::chrono::steady_clock::now();
    const auto kind = parse_model_kind(a.model);
    if (!kind) {
        throw InputError("unknown model '" + a.model + "'");
    }
    const auto loaded = load_dataset_dir(a.data);
    const auto& data = loaded.data;
    const fs::path out(c.out);
    ensure_dir(out);

    Manifest manifest{{"command", cmdline},
                      {"subcommand", "fit"},
                      {"model", selector_name(*kind)},
                      {"seed", std::to_string(c.seed)},
                      {"timestamp_free", c.timestamp_free ? "1" : "0"},
                      {"window", std::to_string(c.window)},
                      {"data", a.data},
                      {"graph_sha256", loaded.graph_digest},
                      {"actions_sha256", loaded.actions_digest},
                      {"subjects_sha256", subjects_digest(data.graph)},
                      {"n_subjects", std::to_string(data.graph.n_subjects())}};

    std::string model_file;
    if (*kind == ModelKind::DNN) {
        TrainingSetOptions set_opts;
        set_opts.seed = derive_seed(c.seed, 0);
        set_opts.timestamp_free = c.timestamp_free;
        const auto set = build_training_set(data.graph, data.log, set_opts);
        if (set.examples.empty()) {
            throw InputError("no training examples in the dataset");
        }
        auto cfg = a.train.cfg;
        cfg.seed = derive_seed(c.seed, 2);
        const auto hidden = tower_hidden(a.train.first_hidden, a.train.depth);
        const auto fitted = fit(set.examples, cfg, tower_layer_sizes(data.graph.n_subjects(), hidden));
        std::ostringstream os;
        save_model(os, fitted.model);
        model_file = "model.mlp";
        write_file(out / model_file, os.str());
        std::string trace;
        for (const double l : fitted.loss_trace) {
            trace += format_double(l) + '\n';
        }
        write_file(out / "loss_trace.txt", trace);
        for (auto& kv : train_manifest(a.train)) {
            manifest.push_back(std::move(kv));
        }
    } else if (*kind == ModelKind::ICEM) {
        if (c.timestamp_free) {
            throw InputError("IC-EM needs activation order and cannot run in timestamp-free mode");
        }
        IcEmConfig cfg;
        cfg.init_p = a.init_p;
        cfg.max_iters = a.max_iters;
        const auto result = ic_em_fit(episodes_from_log(data.log), data.graph, cfg);
        std::ostringstream os;
        write_edge_probabilities(os, data.graph, result.probs);
        model_file = "model.tsv";
        write_file(out / model_file, os.str());
        std::string trace;
        for (const double l : result.ll_trace) {
            trace += format_double(l) + '\n';
        }
        write_file(out / "ll_trace.txt", trace);
        manifest.emplace_back("init_p", format_double(cfg.init_p));
        manifest.emplace_back("max_iters", std::to_string(cfg.max_iters));
        manifest.emplace_back("iterations", std::to_string(result.iterations));
    } else {
        const auto probs = fit_lt(data, data.log, *kind, c.propagation());
        std::ostringstream os;
        write_edge_probabilities(os, data.graph, probs);
        model_file = "model.tsv";
        write_file(out / model_file, os.str());
    }
    manifest.emplace_back("model_file", model_file);
    manifest.emplace_back("wall_seconds", elapsed_since(start));
    write_file(out / "manifest.txt", render_manifest(manifest));
    std::cout << "wrote " << (out / model_file).string() << '\n';
    return kExitOk;
}

// ---- eval -----------------------------------------------------------------

struct EvalArgs {
    std::string data;
    std::string models = "all";
    std::size_t k = 10;
    std::string rule = "youden";
    std::string dnn_rule = "fixed";
    double dnn_threshold = 0.5;
    TrainOverrides train;
};

std::vector<ModelKind> parse_model_list(const std::string& list) {
    if (list == "all") {
        return all_model_kinds();
    }
    std::vector<ModelKind> out;
    std::istringstream in(list);
    std::string item;
    while (std::getline(in, item, ',')) {
        const auto k = parse_model_kind(item);
        if (!k) {
            throw InputError("unknown model '" + item + "'");
        }
        out.push_back(*k);
    }
    if (out.empty()) {
        throw InputError("no models selected");
    }
    return out;
}

int cmd_eval(const EvalArgs& a, const CommonOptions& c, const std::string& cmdline) {
    const auto start = std::chrono::steady_clock::now();
    EvalOptions opts;
    opts.models = parse_model_list(a.models);
    opts.k = a.k;
    opts.seed = c.seed;
    const auto rule = parse_threshold_rule(a.rule);
    const auto dnn_rule = parse_threshold_rule(a.dnn_rule);
    if (!rule || !dnn_rule) {
        throw InputError("threshold rules are fixed, youden, or closest01");
    }
    if (a.k < 2) {
        throw InputError("--k must be at least 2");
    }
    opts.baseline_rule = *rule;
    opts.dnn_rule = *dnn_rule;
    opts.dnn_threshold = a.dnn_threshold;
    opts.train = a.train.cfg;
    opts.hidden = tower_hidden(a.train.first_hidden, a.train.depth);
    opts.propagation = c.propagation();

    const auto loaded = load_dataset_dir(a.data);
    const auto report = run_evaluation(loaded.data, opts);

    const fs::path out(c.out);
    ensure_dir(out);
    write_file(out / "report.txt", report.to_text());
    write_file(out / "report.tsv", report.to_rows());
    Manifest manifest{{"command", cmdline},
                      {"subcommand", "eval"},
                      {"seed", std::to_string(c.seed)},
                      {"models", a.models},
                      {"k", std::to_string(a.k)},
                      {"rule", a.rule},
                      {"dnn_rule", a.dnn_rule},
                      {"dnn_threshold", format_double(a.dnn_threshold)},
                      {"timestamp_free", c.timestamp_free ? "1" : "0"},
                      {"window", std::to_string(c.window)},
                      {"data", a.data},
                      {"graph_sha256", loaded.graph_digest},
                      {"actions_sha256", loaded.actions_digest}};
    for (auto& kv : train_manifest(a.train)) {
        manifest.push_back(std::move(kv));
    }
    manifest.emplace_back("wall_seconds", elapsed_since(start));
    write_file(out / "manifest.txt", render_manifest(manifest));
    std::cout << report.to_text();

    const bool any_ok = std::any_of(report.sections.begin(), report.sections.end(),
                                    [](const ModelSection& s) { return !s.error; });
    return any_ok ? kExitOk : kExitCompute;
}

// ---- predict --------------------------------------------------------------

struct PredictArgs {
    std::string model;
    std::string data;
    std::string subject;
    std::string action;
    double theta = 0.5;
};

bool is_mlp_file(const std::string& bytes) { return bytes.rfind("socinf-mlp", 0) == 0; }

int cmd_predict(const PredictArgs& a, const CommonOptions& c) {
    const auto loaded = load_dataset_dir(a.data);
    const auto& data = loaded.data;
    const auto subject = data.graph.subjects().find(a.subject);
    if (!subject) {
        throw InputError("unknown subject '" + a.subject + "'");
    }
    const auto action = data.log.actions().find(a.action);
    if (!action) {
        throw InputError("unknown action '" + a.action + "'");
    }

    const fs::path model_path(a.model);
    const auto model_manifest = model_path.parent_path() / "manifest.txt";
    if (fs::exists(model_manifest)) {
        const auto m = parse_manifest(model_manifest);
        const auto expected = manifest_value(m, "subjects_sha256");
        const auto actual = subjects_digest(data.graph);
        if (!expected.empty() && expected != actual) {
            const auto data_manifest = fs::path(a.data) / "manifest.txt";
            throw InputError("subject id map mismatch: model manifest " + model_manifest.string() + " has " +
                             expected + ", dataset " + data_manifest.string() + " has " + actual);
        }
    }

    // Friends active for this (subject, action): before the subject's own
    // activation when it has one and timestamps are in use.
    const auto* rec = data.log.find(*subject, *action);
    std::optional<Timestamp> before;
    if (rec != nullptr && !c.timestamp_free && rec->timestamp) {
        before = rec->timestamp;
    }
    const auto friends = active_friends(data.graph, data.log, *subject, *action, before);

    const auto bytes = read_file(model_path);
    double score = 0.0;
    std::string kind;
    if (is_mlp_file(bytes)) {
        std::istringstream in(bytes);
        const auto model = load_model(in);
        if (model.input_dim() != 2 * data.graph.n_subjects()) {
            throw InputError("model input has " + std::to_string(model.input_dim()) + " units but the dataset has " +
                             std::to_string(data.graph.n_subjects()) + " subjects");
        }
        score = predict_proba(model, data.graph, *subject, friends);
        kind = "dnn";
    } else {
        std::istringstream in(bytes);
        const auto probs = read_edge_probabilities(in, data.graph);
        score = lt_predict(data.graph, probs, friends, *subject, LtConfig{a.theta}).score;
        kind = "edge-probabilities";
    }
    const bool active = score >= a.theta;
    std::cout << "model\t" << kind << '\n'
              << "subject\t" << a.subject << '\n'
              << "action\t" << a.action << '\n'
              << "score\t" << format_double(score) << '\n'
              << "threshold\t" << format_double(a.theta) << '\n'
              << "decision\t" << (active ? "active" : "inactive") << '\n'
              << "active_friends\t";
    for (std::size_t k = 0; k < friends.size(); ++k) {
        std::cout << (k ? "," : "") << data.graph.subjects().name(friends[k]);
    }
    std::cout << '\n';
    return kExitOk;
}

// ---- synth ----------------------------------------------------------------

struct SynthArgs {
    std::string kind = "independent";
    SynthParams params;
};

int cmd_synth(const SynthArgs& a, const CommonOptions& c, const std::string& cmdline) {
    WorldKind kind;
    if (a.kind == "independent") {
        kind = WorldKind::Independent;
    } else if (a.kind == "dependent") {
        kind = WorldKind::DependentAnd;
    } else {
        throw InputError("--kind must be independent or dependent");
    }
    SynthOutput synth;
    try {
        synth = synthesize(kind, a.params, c.seed);
    } catch (const ContractError& e) {
        throw InputError(e.what());
    }
    const fs::path out(c.out);
    ensure_dir(out);
    Dataset data{synth.world.graph, synth.log};
    std::ostringstream g;
    write_graph(g, data.graph);
    std::ostringstream r;
    write_actions(r, data);
    std::ostringstream m;
    m << "command\t" << cmdline << '\n';
    write_world_manifest(m, synth);
    write_file(out / "graph.tsv", g.str());
    write_file(out / "actions.tsv", r.str());
    write_file(out / "manifest.txt", m.str());
    std::cout << "wrote " << to_string(kind) << " world: " << data.graph.n_subjects() << " subjects, "
              << data.graph.n_edges() << " edges, " << data.log.size() << " records, " << synth.world.pairs.size()
              << " AND pairs\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Social influence learning and behavior prediction"};
    app.require_subcommand(1);

    CommonOptions common;
    auto add_common = [&](CLI::App* cmd, bool needs_out) {
        cmd->add_option("--seed", common.seed, "Random seed")->capture_default_str();
        auto* out = cmd->add_option("--out", common.out, "Output directory");
        if (needs_out) {
            out->required();
        }
        cmd->add_flag("--timestamp-free", common.timestamp_free,
                      "Treat co-performance as propagation in both directions; ignore timestamps");
        cmd->add_option("--window", common.window, "Propagation window in timestamp units (0 = unbounded)");
    };

    IngestArgs ingest;
    auto* c_ingest = app.add_subcommand("ingest", "Load, validate, and filter a graph and action log");
    c_ingest->add_option("--graph", ingest.graph, "Edge list: source<TAB>target")->required();
    c_ingest->add_option("--actions", ingest.actions, "Action log: subject<TAB>action[<TAB>timestamp]")->required();
    c_ingest->add_option("--min-actions", ingest.min_actions, "Drop subjects with fewer actions")
        ->capture_default_str();
    add_common(c_ingest, true);

    FitArgs fit_args;
    auto* c_fit = app.add_subcommand("fit", "Fit one model on an ingested dataset");
    c_fit->add_option("--data", fit_args.data, "Ingested dataset directory")->required();
    c_fit->add_option("--model", fit_args.model, "bd, ji, pcb, pcj, icem, or dnn")->required();
    c_fit->add_option("--init-p", fit_args.init_p, "IC-EM initial edge probability")->capture_default_str();
    c_fit->add_option("--max-iters", fit_args.max_iters, "IC-EM iteration cap")->capture_default_str();
    add_train_options(c_fit, fit_args.train);
    add_common(c_fit, true);

    EvalArgs eval;
    auto* c_eval = app.add_subcommand("eval", "Cross-validated comparison of the models");
    c_eval->add_option("--data", eval.data, "Ingested dataset directory")->required();
    c_eval->add_option("--models", eval.models, "Comma list of bd,ji,pcb,pcj,icem,dnn or 'all'")
        ->capture_default_str();
    c_eval->add_option("--k", eval.k, "Number of folds")->capture_default_str();
    c_eval->add_option("--rule", eval.rule, "Baseline threshold rule: youden, closest01, fixed")
        ->capture_default_str();
    c_eval->add_option("--dnn-rule", eval.dnn_rule, "DNN threshold rule")->capture_default_str();
    c_eval->add_option("--dnn-threshold", eval.dnn_threshold, "Fixed DNN threshold")->capture_default_str();
    add_train_options(c_eval, eval.train);
    add_common(c_eval, true);

    PredictArgs predict;
    auto* c_predict = app.add_subcommand("predict", "Score one (subject, action) with a fitted model");
    c_predict->add_option("--model", predict.model, "model.tsv or model.mlp")->required();
    c_predict->add_option("--data", predict.data, "Ingested dataset directory")->required();
    c_predict->add_option("--subject", predict.subject, "Subject identifier")->required();
    c_predict->add_option("--action", predict.action, "Action identifier")->required();
    c_predict->add_option("--theta", predict.theta, "Activation threshold")->capture_default_str();
    add_common(c_predict, false);

    SynthArgs synth;
    auto* c_synth = app.add_subcommand("synth", "Generate a world with planted influence");
    c_synth->add_option("--kind", synth.kind, "independent or dependent")->capture_default_str();
    c_synth->add_option("--n", synth.params.n_subjects, "Subjects")->capture_default_str();
    c_synth->add_option("--avg-in-degree", synth.params.avg_in_degree, "Mean in-degree")->capture_default_str();
    c_synth->add_option("--p-min", synth.params.p_min, "Lower bound of edge probabilities")->capture_default_str();
    c_synth->add_option("--p-max", synth.params.p_max, "Upper bound of edge probabilities")->capture_default_str();
    c_synth->add_option("--actions", synth.params.n_actions, "Actions (episodes)")->capture_default_str();
    c_synth->add_option("--seed-fraction", synth.params.seed_fraction, "Per-subject initial adoption probability")
        ->capture_default_str();
    c_synth->add_option("--pairs", synth.params.n_pairs, "AND pairs to plant (dependent kind)")
        ->capture_default_str();
    c_synth->add_option("--pairs-per-target", synth.params.pairs_per_target,
                        "Most disjoint AND pairs sharing one target")
        ->capture_default_str();
    add_common(c_synth, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInput;
    }

    const auto cmdline = command_line(argc, argv);
    try {
        if (*c_ingest) {
            return cmd_ingest(ingest, common, cmdline);
        }
        if (*c_fit) {
            return cmd_fit(fit_args, common, cmdline);
        }
        if (*c_eval) {
            return cmd_eval(eval, common, cmdline);
        }
        if (*c_predict) {
            return cmd_predict(predict, common);
        }
        if (*c_synth) {
            return cmd_synth(synth, common, cmdline);
        }
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitCompute;
    }
    return kExitInput;
}
