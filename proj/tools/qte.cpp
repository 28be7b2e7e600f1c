// Experiment runner. Subcommands mirror the experiments: parity, bc,
// titanic, mnist, selftest, plus bloch-export for the trained tables.
#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "qte/errors.hpp"
#include "qte/experiment.hpp"

namespace {

using qte::ExperimentConfig;

struct CliOptions {
    std::string config_file;
    bool print_config = false;
    std::string embedding, entanglement, optimizer, te_init;
    double lambda = -2; // sentinel: not given
    int epochs = -1, depth = -1, shots = -1, repeats = -1, copies = -1, bits = -1, folds = -1;
    int cap_train = -1, cap_test = -1, batch_size = -1;
    long long seed = -1;
    bool titanic_mixed = false;
    std::string data_dir, out_dir;
    std::string bc_file, titanic_file;
    std::string mnist_train_images, mnist_train_labels, mnist_test_images, mnist_test_labels;
    std::string mnist_train_corpus, mnist_test_corpus;
    bool quiet = false;
    bool lambda_sweep = false;
    qte::SpsaGains spsa;
    bool spsa_given = false;
};

void add_common(CLI::App* cmd, CliOptions& o) {
    cmd->add_option("--config", o.config_file, "JSON config file; flags override its values");
    cmd->add_flag("--print-config", o.print_config,
                  "print the fully-resolved config as JSON and exit");
    cmd->add_option("--embedding", o.embedding,
                    "naive|qrac|ncopies-qrac|te|reg-te|zz|qrac+zz|te+zz|conv-qrac|conv-te|conv41-te");
    cmd->add_option("--lambda", o.lambda, "spread regularizer weight");
    cmd->add_option("--epochs", o.epochs, "optimizer epochs");
    cmd->add_option("--depth", o.depth, "RyRz ansatz depth");
    cmd->add_option("--entanglement", o.entanglement, "full|linear");
    cmd->add_option("--seed", o.seed, "base RNG seed");
    cmd->add_option("--shots", o.shots, "measurement shots (0 = exact expectations)");
    cmd->add_option("--repeats", o.repeats, "seeded repetitions");
    cmd->add_option("--copies", o.copies, "copy count for ncopies-qrac");
    cmd->add_option("--te-init", o.te_init, "random|qrac-corners");
    cmd->add_option("--optimizer", o.optimizer, "spsa|adam");
    cmd->add_option("--spsa-a", o.spsa.a, "SPSA gain a")->each([&](std::string) { o.spsa_given = true; });
    cmd->add_option("--spsa-c", o.spsa.c, "SPSA gain c")->each([&](std::string) { o.spsa_given = true; });
    cmd->add_option("--data-dir", o.data_dir, "dataset root (env QTE_DATA_DIR)");
    cmd->add_option("--out", o.out_dir, "output directory for report.json / losses.csv / bloch.csv");
    cmd->add_flag("--quiet", o.quiet, "suppress per-epoch progress on stderr");
}

ExperimentConfig build_config(qte::ExperimentKind kind, const CliOptions& o) {
    ExperimentConfig c;
    if (!o.config_file.empty()) {
        std::ifstream f(o.config_file);
        if (!f) throw qte::ConfigError("cannot open config file " + o.config_file);
        nlohmann::json j;
        try {
            f >> j;
        } catch (const nlohmann::json::exception& e) {
            throw qte::ConfigError("bad config JSON: " + std::string(e.what()));
        }
        c = qte::config_from_json(j);
    }
    c.experiment = kind;
    if (!o.embedding.empty()) c.embedding = qte::embedding_from_string(o.embedding);
    if (!o.entanglement.empty()) c.entanglement = qte::entanglement_from_string(o.entanglement);
    if (!o.optimizer.empty()) c.optimizer = qte::optimizer_from_string(o.optimizer);
    if (!o.te_init.empty()) c.te_init_mode = qte::te_init_from_string(o.te_init);
    if (o.lambda > -2) c.lambda = o.lambda;
    if (o.epochs >= 0) c.epochs = o.epochs;
    if (o.depth >= 0) c.depth = o.depth;
    if (o.shots >= 0) c.shots = o.shots;
    if (o.repeats >= 0) c.repeats = o.repeats;
    if (o.copies >= 0) c.copies = o.copies;
    if (o.bits >= 0) c.parity_bits = o.bits;
    if (o.folds >= 0) c.folds = o.folds;
    if (o.cap_train >= 0) c.sample_cap_train = o.cap_train;
    if (o.cap_test >= 0) c.sample_cap_test = o.cap_test;
    if (o.batch_size >= 0) c.batch_size = o.batch_size;
    if (o.seed >= 0) c.seed = static_cast<std::uint64_t>(o.seed);
    if (o.titanic_mixed) c.titanic_mixed = true;
    if (o.spsa_given) c.spsa = o.spsa;
    if (!o.data_dir.empty()) c.data_dir = o.data_dir;
    if (!o.out_dir.empty()) c.out_dir = o.out_dir;
    if (!o.bc_file.empty()) c.bc_file = o.bc_file;
    if (!o.titanic_file.empty()) c.titanic_file = o.titanic_file;
    if (!o.mnist_train_images.empty()) c.mnist_train_images = o.mnist_train_images;
    if (!o.mnist_train_labels.empty()) c.mnist_train_labels = o.mnist_train_labels;
    if (!o.mnist_test_images.empty()) c.mnist_test_images = o.mnist_test_images;
    if (!o.mnist_test_labels.empty()) c.mnist_test_labels = o.mnist_test_labels;
    if (!o.mnist_train_corpus.empty()) c.mnist_train_corpus = o.mnist_train_corpus;
    if (!o.mnist_test_corpus.empty()) c.mnist_test_corpus = o.mnist_test_corpus;
    if (o.quiet) c.verbose = false;
    c.resolve();
    c.validate();
    return c;
}

// one run per lambda on a log grid; reports land in <out>/lambda-<value>/
int run_lambda_sweep(qte::ExperimentKind kind, const CliOptions& o) {
    nlohmann::json summary = nlohmann::json::array();
    double best_acc = -1, best_lambda = 0;
    for (double lambda : {1e-5, 1e-4, 1e-3, 1e-2, 1e-1, 1.0, 10.0, 100.0}) {
        CliOptions opt = o;
        opt.lambda = lambda;
        ExperimentConfig config = build_config(kind, opt);
        if (!o.out_dir.empty())
            config.out_dir = o.out_dir + "/lambda-" + std::to_string(lambda);
        qte::RunReport report = qte::run_experiment(config);
        qte::write_report_files(report);
        const double acc = report.aggregate.mean_test_accuracy;
        std::fprintf(stderr, "lambda=%g mean_test_acc=%.4f mean_test_f1=%.4f\n", lambda, acc,
                     report.aggregate.mean_test_f1);
        summary.push_back({{"lambda", lambda},
                           {"mean_test_accuracy", acc},
                           {"mean_test_f1", report.aggregate.mean_test_f1}});
        if (acc > best_acc) {
            best_acc = acc;
            best_lambda = lambda;
        }
    }
    std::fprintf(stderr, "best: lambda=%g mean_test_acc=%.4f\n", best_lambda, best_acc);
    if (!o.out_dir.empty()) {
        std::ofstream f(o.out_dir + "/sweep.json");
        f << nlohmann::json{{"grid", summary}, {"best_lambda", best_lambda}}.dump(2) << "\n";
    }
    return 0;
}

int run(qte::ExperimentKind kind, const CliOptions& o) {
    if (o.lambda_sweep) {
        if (kind != qte::ExperimentKind::BreastCancer && kind != qte::ExperimentKind::Titanic)
            throw qte::ConfigError("--lambda-sweep applies to bc and titanic");
        return run_lambda_sweep(kind, o);
    }
    ExperimentConfig config = build_config(kind, o);
    if (o.print_config) {
        std::cout << qte::config_to_json(config).dump(2) << "\n";
        return 0;
    }
    qte::RunReport report = qte::run_experiment(config);
    if (kind == qte::ExperimentKind::OptimizerSelftest) return 0; // summary already on stderr
    const std::string path = qte::write_report_files(report);
    std::fprintf(stderr, "report: %s\n", path.c_str());
    std::fprintf(stderr,
                 "qubits=%d params=%zu mean_test_acc=%.4f best_test_acc=%.4f wall=%.1fs\n",
                 report.qubits, report.parameter_count, report.aggregate.mean_test_accuracy,
                 report.aggregate.best_test_accuracy, report.wall_seconds);
    if (report.aggregate.best_classified_ratio >= 0)
        std::fprintf(stderr, "classified_ratio mean=%.4f best=%.4f\n",
                     report.aggregate.mean_classified_ratio,
                     report.aggregate.best_classified_ratio);
    return 0;
}

int run_bloch_export(const std::string& from_report, const std::string& out_path,
                     bool qrac_corners, int slots) {
    qte::EmbeddingTable table(3, 1);
    if (qrac_corners) {
        table = qte::EmbeddingTable::qrac_corners(slots);
    } else {
        std::ifstream f(from_report);
        if (!f) throw qte::IngestError("cannot open " + from_report);
        nlohmann::json j;
        f >> j;
        if (!j.contains("embedding_table") || j["embedding_table"].is_null())
            throw qte::ConfigError(from_report + " holds no trained embedding table");
        const auto& t = j["embedding_table"];
        table = qte::EmbeddingTable(t.at("chunk_bits").get<int>(), t.at("slots").get<int>());
        table.load(t.at("params").get<std::vector<double>>());
    }
    qte::export_bloch(table, out_path);
    std::fprintf(stderr, "wrote %s\n", out_path.c_str());
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quantum classifier lab: QRAC and trainable discrete-feature embeddings"};
    app.require_subcommand(1);

    CliOptions o;
    auto* parity = app.add_subcommand("parity", "VQC on the n-bit parity truth table");
    parity->add_option("--bits", o.bits, "parity width (default 3)");
    auto* bc = app.add_subcommand("bc", "4-fold cross-validated VQC on UCI breast-cancer.data");
    bc->add_option("--bc-file", o.bc_file, "path to breast-cancer.data");
    bc->add_option("--folds", o.folds, "cross-validation folds (default 4)");
    bc->add_flag("--lambda-sweep", o.lambda_sweep,
                 "run the full log-grid lambda sweep [1e-5, 1e2]");
    auto* ts = app.add_subcommand("titanic", "4-fold cross-validated VQC on Titanic train.csv");
    ts->add_option("--titanic-file", o.titanic_file, "path to train.csv");
    ts->add_option("--folds", o.folds, "cross-validation folds (default 4)");
    ts->add_flag("--mixed", o.titanic_mixed, "age/fare stay continuous through the ZZ map");
    ts->add_flag("--lambda-sweep", o.lambda_sweep,
                 "run the full log-grid lambda sweep [1e-5, 1e2]");
    auto* mnist = app.add_subcommand("mnist", "QNN on binarized 4x4 MNIST threes vs sixes");
    mnist->add_option("--train-images", o.mnist_train_images, "IDX image file (gz or raw)");
    mnist->add_option("--train-labels", o.mnist_train_labels, "IDX label file");
    mnist->add_option("--test-images", o.mnist_test_images, "IDX image file");
    mnist->add_option("--test-labels", o.mnist_test_labels, "IDX label file");
    mnist->add_option("--train-corpus", o.mnist_train_corpus, "prepared bits,label file");
    mnist->add_option("--test-corpus", o.mnist_test_corpus, "prepared bits,label file");
    mnist->add_option("--cap-train", o.cap_train, "training sample cap (0 = all)");
    mnist->add_option("--cap-test", o.cap_test, "test sample cap (0 = all)");
    mnist->add_option("--batch-size", o.batch_size, "Adam minibatch size (default 32)");
    auto* selftest = app.add_subcommand("selftest", "optimizer sanity checks on analytic objectives");
    for (CLI::App* cmd : {parity, bc, ts, mnist, selftest}) add_common(cmd, o);

    auto* bloch = app.add_subcommand("bloch-export", "write slot,bits,x,y,z,theta,phi CSV");
    std::string from_report, bloch_out = "bloch.csv";
    bool corners = false;
    int corner_slots = 1;
    bloch->add_option("--from", from_report, "report.json of a trainable run");
    bloch->add_option("--out", bloch_out, "output CSV path");
    bloch->add_flag("--qrac-corners", corners, "export the fixed (3,1)-QRAC table instead");
    bloch->add_option("--slots", corner_slots, "slot count for --qrac-corners");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        app.exit(e);
        return 2;
    }

    try {
        if (parity->parsed()) return run(qte::ExperimentKind::Parity, o);
        if (bc->parsed()) return run(qte::ExperimentKind::BreastCancer, o);
        if (ts->parsed()) return run(qte::ExperimentKind::Titanic, o);
        if (mnist->parsed()) return run(qte::ExperimentKind::Mnist, o);
        if (selftest->parsed()) return run(qte::ExperimentKind::OptimizerSelftest, o);
        if (bloch->parsed()) {
            if (!corners && from_report.empty())
                throw qte::ConfigError("bloch-export needs --from <report.json> or --qrac-corners");
            return run_bloch_export(from_report, bloch_out, corners, corner_slots);
        }
    } catch (const qte::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const qte::IngestError& e) {
        std::fprintf(stderr, "ingestion error: %s\n", e.what());
        return 3;
    } catch (const qte::NumericError& e) {
        std::fprintf(stderr, "numerical failure: %s\n", e.what());
        return 4;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
