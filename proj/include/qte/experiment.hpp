#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "qte/adam.hpp"
#include "qte/ansatz.hpp"
#include "qte/codec.hpp"
#include "qte/dataset.hpp"
#include "qte/embedding_table.hpp"
#include "qte/loss.hpp"
#include "qte/metrics.hpp"
#include "qte/spsa.hpp"

namespace qte {

enum class ExperimentKind { Parity, BreastCancer, Titanic, Mnist, OptimizerSelftest };

enum class EmbeddingKind {
    Naive,
    Qrac,
    NCopiesQrac,
    TE,
    RegTE,
    ZZ,
    QracZZ,
    TeZZ,
    ConvQrac,
    ConvTE,
    Conv41TE,
};

enum class OptimizerKind { Spsa, Adam };

std::string to_string(ExperimentKind k);
std::string to_string(EmbeddingKind k);
std::string to_string(OptimizerKind k);
std::string to_string(Entanglement e);
std::string to_string(TeInit m);
ExperimentKind experiment_from_string(const std::string& s);
EmbeddingKind embedding_from_string(const std::string& s);
OptimizerKind optimizer_from_string(const std::string& s);
Entanglement entanglement_from_string(const std::string& s);
TeInit te_init_from_string(const std::string& s);

// Declarative description of one experiment run (the row of a results table).
struct ExperimentConfig {
    ExperimentKind experiment = ExperimentKind::Parity;
    EmbeddingKind embedding = EmbeddingKind::Qrac;
    int copies = 1;      // ncopies-qrac
    double lambda = -1;  // < 0 = unset; reg-te defaults to 0.02, others to 0
    int epochs = 0;      // 0 = experiment default (400/200/300/10)
    int depth = 4;
    Entanglement entanglement = Entanglement::Full;
    std::uint64_t seed = 1;
    int shots = 0; // 0 = exact expectations
    int repeats = 1;
    int parity_bits = 3;
    int folds = 4;
    TeInit te_init_mode = TeInit::Random;
    OptimizerKind optimizer = OptimizerKind::Spsa; // mnist defaults to adam
    SpsaGains spsa;
    AdamConfig adam;
    int batch_size = 32;
    int sample_cap_train = 0, sample_cap_test = 0; // 0 = no cap
    bool titanic_mixed = false; // continuous age/fare through the ZZ map
    std::string data_dir;       // default: env QTE_DATA_DIR, else "data"
    std::string bc_file, titanic_file;
    std::string mnist_train_images, mnist_train_labels;
    std::string mnist_test_images, mnist_test_labels;
    std::string mnist_train_corpus, mnist_test_corpus; // prepared `bits,label` files
    std::string out_dir;
    bool verbose = true;

    // Fills defaults (epochs, lambda, optimizer, dataset paths) in place.
    void resolve();
    // Throws ConfigError on invalid combinations. Call after resolve().
    void validate() const;
};

ExperimentConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const ExperimentConfig& c);

// One (seed, fold) training run.
struct RunResult {
    std::uint64_t seed = 0;
    int fold = 0;
    std::vector<LossReport> epochs;
    Metrics train, test;
    double classified_ratio = -1; // parity experiments only, else -1
    int skipped_steps = 0;
    int grad_fallbacks = 0;
    std::vector<double> trained_te; // flat table parameters when trainable
};

struct Aggregate {
    double mean_train_accuracy = 0, mean_test_accuracy = 0;
    double mean_train_f1 = 0, mean_test_f1 = 0;
    // per-seed fold means, then best/mean across seeds
    double best_test_accuracy = 0;
    double mean_classified_ratio = -1, best_classified_ratio = -1;
};

struct RunReport {
    ExperimentConfig config;
    int qubits = 0;
    std::size_t parameter_count = 0;
    std::vector<RunResult> runs;
    Aggregate aggregate;
    double wall_seconds = 0;
    std::string bloch_csv; // written file, empty if none
};

RunReport run_experiment(const ExperimentConfig& config);
RunReport run_parity(const ExperimentConfig& config);
RunReport run_breast_cancer(const ExperimentConfig& config);
RunReport run_titanic(const ExperimentConfig& config);
RunReport run_mnist(const ExperimentConfig& config);
// Optimizer sanity checks on analytic objectives; throws NumericError on failure.
RunReport run_optimizer_selftest(const ExperimentConfig& config);

// CSV with header `slot,bits,x,y,z,theta,phi`, one row per table entry.
void export_bloch(const EmbeddingTable& table, const std::string& path);

nlohmann::json report_to_json(const RunReport& report);
// Writes report.json and losses.csv (epoch,total,data,spread averaged over
// runs), plus bloch.csv for trainable runs. Returns the report.json path.
std::string write_report_files(RunReport& report);

// Ordinals of each codec feature decoded back out of a sample's bits.
std::vector<int> decode_ordinals(const FeatureCodec& codec, const std::string& bits);

} // namespace qte
