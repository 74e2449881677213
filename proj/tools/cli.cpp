#include "cli.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "rbminit/datasets.hpp"
#include "rbminit/errors.hpp"
#include "rbminit/evaluation.hpp"
#include "rbminit/initialization.hpp"
#include "rbminit/io.hpp"
#include "rbminit/meanfield.hpp"
#include "rbminit/training.hpp"

namespace rbminit::cli {
namespace {

namespace fs = std::filesystem;

constexpr const char* kOutDirEnv = "RBMINIT_OUT_DIR";

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Library precondition failures on user-supplied values are usage errors.
template <typename F>
void as_usage(F&& check) {
  try {
    check();
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
}

fs::path output_dir(const std::string& flag) {
  fs::path dir = ".";
  if (!flag.empty()) {
    dir = flag;
  } else if (const char* env = std::getenv(kOutDirEnv); env != nullptr && *env != '\0') {
    dir = env;
  }
  fs::create_directories(dir);
  return dir;
}

std::ofstream open_output(const fs::path& path) {
  std::ofstream os(path);
  if (!os) {
    throw Error("cannot write " + path.string());
  }
  return os;
}

HiddenSpace hidden_flag(const std::string& text) {
  HiddenSpace hidden{};
  as_usage([&] { hidden = parse_hidden_space(text); });
  return hidden;
}

std::string fixed(double x, int digits) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(digits) << x;
  return os.str();
}

std::string general(double x, int digits = 10) {
  std::ostringstream os;
  os << std::setprecision(digits) << x;
  return os.str();
}

void require_positive_alpha(double alpha) {
  if (!(std::isfinite(alpha) && alpha > 0.0)) {
    throw UsageError("--alpha must be a positive number");
  }
}

// ---------------------------------------------------------------- shared flags

struct ToyFlags {
  int n = 20;
  int per_pattern = 100;
  double flip = 0.15;
  std::uint64_t data_seed = 0;

  void add(CLI::App& cmd) {
    cmd.add_option("--n", n, "Visible units of the toy data")->capture_default_str();
    cmd.add_option("--per-pattern", per_pattern, "Toy copies per base pattern")->capture_default_str();
    cmd.add_option("--flip", flip, "Toy flip probability")->capture_default_str();
    cmd.add_option("--data-seed", data_seed, "Toy data seed")->capture_default_str();
  }

  ToySpec spec() const { return {n, per_pattern, flip, data_seed}; }
};

Dataset load_data(const std::string& source, const ToyFlags& toy) {
  if (source == "toy") {
    Dataset data;
    as_usage([&] { data = gen_toy(toy.spec()); });
    return data;
  }
  return load_dataset(source);
}

struct TrainFlags {
  int epochs = 200;
  int batch_size = 0;
  std::string mode = "exact";
  std::string eval = "exact";
  int chains = 1000;
  int pcd_steps = 40;
  int relaxation = 500;
  double lr = 0.01;
  int mais_samples = 1000;
  int mais_schedule = 1000;

  void add(CLI::App& cmd) {
    cmd.add_option("--epochs", epochs)->capture_default_str();
    cmd.add_option("--batch-size", batch_size, "0 = full batch")->capture_default_str();
    cmd.add_option("--mode", mode, "Gradient: exact | pcd")
        ->check(CLI::IsMember({"exact", "pcd"}))
        ->capture_default_str();
    cmd.add_option("--eval", eval, "Log-likelihood: exact | mais")
        ->check(CLI::IsMember({"exact", "mais"}))
        ->capture_default_str();
    cmd.add_option("--chains", chains, "PCD chains")->capture_default_str();
    cmd.add_option("--pcd-steps", pcd_steps, "Gibbs sweeps per update")->capture_default_str();
    cmd.add_option("--relaxation", relaxation, "Initial chain sweeps")->capture_default_str();
    cmd.add_option("--lr", lr, "Adam learning rate")->capture_default_str();
    cmd.add_option("--mais-samples", mais_samples)->capture_default_str();
    cmd.add_option("--mais-schedule", mais_schedule)->capture_default_str();
  }

  TrainConfig config(std::uint64_t seed) const {
    TrainConfig c;
    c.epochs = epochs;
    c.batch_size = batch_size;
    c.mode = mode == "pcd" ? GradientMode::Pcd : GradientMode::Exact;
    c.chains = chains;
    c.pcd_steps = pcd_steps;
    c.relaxation = relaxation;
    c.lr = lr;
    c.seed = seed;
    c.evaluation = eval == "mais" ? EvaluationMode::Mais : EvaluationMode::Exact;
    c.mais.samples = mais_samples;
    c.mais.schedule = mais_schedule;
    return c;
  }
};

// Explicit --beta wins; otherwise multiplier x beta_max(m/n, c, hidden).
double resolve_beta(std::optional<double> beta, double multiplier, int n, int m, double c,
                    HiddenSpace hidden) {
  if (beta) {
    if (!(std::isfinite(*beta) && *beta >= 0.0)) {
      throw UsageError("--beta must be a nonnegative number");
    }
    return *beta;
  }
  if (!(std::isfinite(multiplier) && multiplier > 0.0)) {
    throw UsageError("--multiplier must be positive");
  }
  if (n < 1 || m < 1) {
    throw UsageError("layer sizes must be positive");
  }
  return multiplier * cached_beta_max(static_cast<double>(m) / n, c, hidden);
}

// ---------------------------------------------------------------- commands

struct Context {
  std::ostream& out;
  std::ostream& err;
};

void setup_beta_max(CLI::App& app, Context& ctx) {
  auto* cmd = app.add_subcommand("beta-max", "Dataset-free beta_max for one (alpha, c)");
  struct Flags {
    double alpha = 0.0;
    double b = 0.0;
    double c = 0.0;
    std::string hidden = "ising";
  };
  auto flags = std::make_shared<Flags>();
  cmd->add_option("--alpha", flags->alpha, "m / n")->required();
  cmd->add_option("--b", flags->b, "Visible bias")->capture_default_str();
  cmd->add_option("--c", flags->c, "Hidden bias")->capture_default_str();
  cmd->add_option("--hidden", flags->hidden, "ising | binary")->capture_default_str();
  cmd->callback([flags, &ctx] {
    require_positive_alpha(flags->alpha);
    const HiddenSpace hidden = hidden_flag(flags->hidden);
    const double beta = find_beta_max(flags->alpha, flags->b, flags->c, hidden);
    ctx.out << fixed(beta, 4) << '\n';
  });
}

struct Grid {
  std::vector<double> alphas;
  std::vector<double> cs;
  HiddenSpace hidden;
};

Grid preset_grid(const std::string& name) {
  Grid g{};
  if (name == "table8") {
    for (int k = 1; k <= 12; ++k) {
      g.alphas.push_back(0.25 * k);
    }
    for (int k = 0; k <= 6; ++k) {
      g.cs.push_back(-static_cast<double>(k));
    }
    g.hidden = HiddenSpace::Binary;
  } else {
    g.alphas = {0.5, 1.0, 1.5, 2.0, 2.5, 3.0};
    g.cs = {0.0};
    g.hidden = HiddenSpace::Ising;
  }
  return g;
}

void setup_beta_table(CLI::App& app, Context& ctx) {
  auto* cmd = app.add_subcommand("beta-table", "beta_max over an (alpha, c) grid as CSV on stdout");
  struct Flags {
    std::string preset;
    std::vector<double> alphas;
    std::vector<double> cs;
    std::string hidden = "binary";
  };
  auto flags = std::make_shared<Flags>();
  auto* preset = cmd->add_option("--preset", flags->preset, "table8 | table9")
                     ->check(CLI::IsMember({"table8", "table9"}));
  cmd->add_option("--alphas", flags->alphas, "Comma-separated alphas")
      ->delimiter(',')
      ->excludes(preset);
  cmd->add_option("--cs", flags->cs, "Comma-separated hidden biases")
      ->delimiter(',')
      ->excludes(preset);
  cmd->add_option("--hidden", flags->hidden, "ising | binary")->capture_default_str()->excludes(preset);
  cmd->callback([flags, &ctx] {
    Grid grid;
    if (!flags->preset.empty()) {
      grid = preset_grid(flags->preset);
    } else {
      grid = {flags->alphas, flags->cs, hidden_flag(flags->hidden)};
      if (grid.cs.empty() && !grid.alphas.empty()) {
        grid.cs = {0.0};
      }
    }
    for (double alpha : grid.alphas) {
      require_positive_alpha(alpha);
    }
    ctx.out << "alpha,c,beta_max\n";
    for (double alpha : grid.alphas) {
      for (double c : grid.cs) {
        double beta = std::numeric_limits<double>::quiet_NaN();
        try {
          beta = find_beta_max(alpha, 0.0, c, grid.hidden);
        } catch (const Error& e) {
          ctx.err << "alpha=" << alpha << " c=" << c << ": " << e.what() << '\n';
        }
        ctx.out << general(alpha) << ',' << general(c + 0.0) << ','  // no "-0"
                << (std::isnan(beta) ? std::string("nan") : fixed(beta, 6)) << '\n';
      }
    }
  });
}

void setup_phase_scan(CLI::App& app, Context& ctx) {
  auto* cmd = app.add_subcommand("phase-scan", "|chi_vh| over a beta grid, written to phase_scan.csv");
  struct Flags {
    double alpha = 0.0;
    double b = 0.0;
    double c = 0.0;
    std::string hidden = "ising";
    double beta_min = 0.01;
    double beta_max = 4.0;
    double step = 0.01;
    std::string out;
  };
  auto flags = std::make_shared<Flags>();
  cmd->add_option("--alpha", flags->alpha, "m / n")->required();
  cmd->add_option("--b", flags->b)->capture_default_str();
  cmd->add_option("--c", flags->c)->capture_default_str();
  cmd->add_option("--hidden", flags->hidden)->capture_default_str();
  cmd->add_option("--beta-min", flags->beta_min)->capture_default_str();
  cmd->add_option("--beta-max", flags->beta_max, "Largest beta of the grid")->capture_default_str();
  cmd->add_option("--step", flags->step)->capture_default_str();
  cmd->add_option("--out", flags->out, "Output directory");
  cmd->callback([flags, &ctx] {
    require_positive_alpha(flags->alpha);
    const HiddenSpace hidden = hidden_flag(flags->hidden);
    if (!(flags->beta_min > 0.0 && flags->step > 0.0 && flags->beta_max >= flags->beta_min)) {
      throw UsageError("need 0 < --beta-min <= --beta-max and --step > 0");
    }
    std::vector<double> betas;
    const auto count =
        static_cast<long>(std::floor((flags->beta_max - flags->beta_min) / flags->step + 1e-9));
    for (long k = 0; k <= count; ++k) {
      betas.push_back(flags->beta_min + flags->step * static_cast<double>(k));
    }
    const PhaseScan scan = phase_scan(flags->alpha, flags->b, flags->c, hidden, betas);
    const fs::path path = output_dir(flags->out) / "phase_scan.csv";
    auto os = open_output(path);
    write_phase_scan_csv(os, scan);
    ctx.out << "argmax_beta," << fixed(scan.argmax_beta, 4) << '\n';
  });
}

void setup_gen_toy(CLI::App& app, Context& ctx) {
  auto* cmd = app.add_subcommand("gen-toy", "Noisy four-pattern toy data, written to toy.csv");
  struct Flags {
    ToyFlags toy;
    std::uint64_t seed = 0;
    std::string out;
  };
  auto flags = std::make_shared<Flags>();
  cmd->add_option("--n", flags->toy.n)->capture_default_str();
  cmd->add_option("--per-pattern", flags->toy.per_pattern)->capture_default_str();
  cmd->add_option("--flip", flags->toy.flip)->capture_default_str();
  cmd->add_option("--seed", flags->seed)->capture_default_str();
  cmd->add_option("--out", flags->out, "Output directory");
  cmd->callback([flags, &ctx] {
    ToySpec spec = flags->toy.spec();
    spec.seed = flags->seed;
    Dataset data;
    as_usage([&] { data = gen_toy(spec); });
    const fs::path path = output_dir(flags->out) / "toy.csv";
    save_dataset(path, data);
    ctx.out << path.string() << '\n';
  });
}

void setup_binarize(CLI::App& app, Context& ctx) {
  auto* cmd = app.add_subcommand("binarize", "Otsu binarization of a real CSV, written to binarized.csv");
  struct Flags {
    std::string input;
    std::string mode = "element";
    std::string out;
  };
  auto flags = std::make_shared<Flags>();
  cmd->add_option("--input", flags->input, "Real-valued CSV, rows = samples")->required();
  cmd->add_option("--mode", flags->mode, "element | point")
      ->check(CLI::IsMember({"element", "point"}))
      ->capture_default_str();
  cmd->add_option("--out", flags->out, "Output directory");
  cmd->callback([flags, &ctx] {
    std::ifstream is(flags->input);
    if (!is) {
      throw Error("cannot open " + flags->input);
    }
    const Eigen::MatrixXd values = read_real_csv(is);
    std::vector<std::string> warnings;
    const Dataset data = binarize(
        values, flags->mode == "point" ? BinarizeMode::PointWise : BinarizeMode::ElementWise,
        &warnings);
    for (const auto& w : warnings) {
      ctx.err << "warning: " << w << '\n';
    }
    const fs::path path = output_dir(flags->out) / "binarized.csv";
    save_dataset(path, data);
    ctx.out << path.string() << '\n';
  });
}

void setup_init(CLI::App& app, Context& ctx) {
  auto* cmd = app.add_subcommand("init", "Gaussian-initialized RBM, written to model.json");
  struct Flags {
    int n = 0;
    int m = 0;
    std::string hidden = "ising";
    double c = 0.0;
    std::optional<double> beta;
    double multiplier = 1.0;
    std::uint64_t seed = 0;
    std::string out;
  };
  auto flags = std::make_shared<Flags>();
  cmd->add_option("--n", flags->n)->required();
  cmd->add_option("--m", flags->m)->required();
  cmd->add_option("--hidden", flags->hidden)->capture_default_str();
  cmd->add_option("--c", flags->c)->capture_default_str();
  auto* beta = cmd->add_option("--beta", flags->beta, "Weight scale (default: multiplier x beta_max)");
  cmd->add_option("--multiplier", flags->multiplier, "Multiple of beta_max")
      ->capture_default_str()
      ->excludes(beta);
  cmd->add_option("--seed", flags->seed)->capture_default_str();
  cmd->add_option("--out", flags->out, "Output directory");
  cmd->callback([flags, &ctx] {
    InitSpec spec{flags->n, flags->m, hidden_flag(flags->hidden), flags->c, 0.0, flags->seed};
    as_usage([&] { spec.validate(); });
    spec.beta = resolve_beta(flags->beta, flags->multiplier, spec.n, spec.m, spec.c, spec.hidden);
    const Rbm rbm = init_rbm(spec);
    const fs::path path = output_dir(flags->out) / "model.json";
    save_rbm(path, rbm);
    ctx.out << "beta," << general(spec.beta) << '\n';
  });
}

void setup_train(CLI::App& app, Context& ctx) {
  auto* cmd = app.add_subcommand(
      "train", "Train one RBM; writes train_metrics.csv and trained_model.json");
  struct Flags {
    std::string data;
    ToyFlags toy;
    std::string init;
    int m = 0;
    std::string hidden = "ising";
    double c = 0.0;
    std::optional<double> beta;
    double multiplier = 1.0;
    TrainFlags train;
    std::uint64_t seed = 0;
    std::string out;
  };
  auto flags = std::make_shared<Flags>();
  cmd->add_option("--data", flags->data, "Dataset CSV (+-1) or 'toy'")->required();
  flags->toy.add(*cmd);
  auto* init = cmd->add_option("--init", flags->init, "Start from this model JSON");
  cmd->add_option("--m", flags->m, "Hidden units")->excludes(init);
  cmd->add_option("--hidden", flags->hidden)->capture_default_str()->excludes(init);
  cmd->add_option("--c", flags->c)->capture_default_str()->excludes(init);
  auto* beta = cmd->add_option("--beta", flags->beta)->excludes(init);
  cmd->add_option("--multiplier", flags->multiplier, "Multiple of beta_max")
      ->capture_default_str()
      ->excludes(beta)
      ->excludes(init);
  flags->train.add(*cmd);
  cmd->add_option("--seed", flags->seed)->capture_default_str();
  cmd->add_option("--out", flags->out, "Output directory");
  cmd->callback([flags, &ctx] {
    const Dataset data = load_data(flags->data, flags->toy);
    Rbm rbm;
    double multiplier = std::numeric_limits<double>::quiet_NaN();
    if (!flags->init.empty()) {
      rbm = load_rbm(flags->init);
    } else {
      InitSpec spec{data.n(), flags->m, hidden_flag(flags->hidden), flags->c, 0.0, flags->seed};
      as_usage([&] { spec.validate(); });
      spec.beta = resolve_beta(flags->beta, flags->multiplier, spec.n, spec.m, spec.c, spec.hidden);
      if (!flags->beta) {
        multiplier = flags->multiplier;
      }
      rbm = init_rbm(spec);
    }
    const TrainConfig config = flags->train.config(flags->seed);
    as_usage([&] { config.validate(rbm, data); });
    const TrainResult result = train(rbm, data, config);

    const fs::path dir = output_dir(flags->out);
    auto os = open_output(dir / "train_metrics.csv");
    write_metrics_csv(os, result.metrics, multiplier, flags->seed);
    save_rbm(dir / "trained_model.json", result.rbm);
    ctx.out << "final_log_likelihood," << general(result.metrics.back().log_likelihood) << '\n';
  });
}

void setup_eval(CLI::App& app, Context& ctx) {
  auto* cmd = app.add_subcommand("eval", "Mean log-likelihood of a dataset under a model");
  struct Flags {
    std::string rbm;
    std::string data;
    ToyFlags toy;
    bool exact = false;
    bool mais = false;
    int samples = 1000;
    int schedule = 1000;
    std::uint64_t seed = 0;
  };
  auto flags = std::make_shared<Flags>();
  cmd->add_option("--rbm", flags->rbm, "Model JSON")->required();
  cmd->add_option("--data", flags->data, "Dataset CSV (+-1) or 'toy'")->required();
  flags->toy.add(*cmd);
  auto* exact = cmd->add_flag("--exact", flags->exact, "Exact partition function");
  auto* mais = cmd->add_flag("--mais", flags->mais, "Annealed importance sampling")->excludes(exact);
  auto* group = cmd->add_option_group("method");
  group->add_option(exact);
  group->add_option(mais);
  group->require_option(1);
  cmd->add_option("--samples", flags->samples)->capture_default_str();
  cmd->add_option("--schedule", flags->schedule)->capture_default_str();
  cmd->add_option("--seed", flags->seed)->capture_default_str();
  cmd->callback([flags, &ctx] {
    const Rbm rbm = load_rbm(flags->rbm);
    const Dataset data = load_data(flags->data, flags->toy);
    if (data.n() != rbm.n()) {
      throw UsageError("dataset width does not match the model");
    }
    double ll = 0.0;
    if (flags->exact) {
      ll = exact_log_likelihood(rbm, data);
    } else {
      const MaisConfig config{flags->samples, flags->schedule, flags->seed};
      as_usage([&] { config.validate(); });
      ll = log_likelihood(rbm, data, mais_log_partition(rbm, config).log_z);
    }
    ctx.out << general(ll, 12) << '\n';
  });
}

struct Summary {
  double mean = 0.0;
  double std = 0.0;
};

Summary summarize(const std::vector<double>& xs) {
  Summary s;
  s.mean = std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
  if (xs.size() > 1) {
    double ss = 0.0;
    for (double x : xs) {
      ss += (x - s.mean) * (x - s.mean);
    }
    s.std = std::sqrt(ss / static_cast<double>(xs.size() - 1));
  }
  return s;
}

void setup_experiment(CLI::App& app, Context& ctx) {
  auto* cmd = app.add_subcommand(
      "experiment",
      "beta-multiplier sweep x seeds; writes experiment_runs.csv and experiment_summary.csv");
  struct Flags {
    std::string dataset = "toy";
    ToyFlags toy;
    int m = 30;
    std::string hidden = "ising";
    double c = 0.0;
    std::vector<double> multipliers{0.25, 0.5, 1.0, 2.0, 4.0};
    TrainFlags train;
    int seeds = 10;
    std::uint64_t seed = 0;
    std::string out;
  };
  auto flags = std::make_shared<Flags>();
  cmd->add_option("--dataset", flags->dataset, "'toy' or a +-1 dataset CSV")->capture_default_str();
  flags->toy.add(*cmd);
  cmd->add_option("--m", flags->m, "Hidden units")->capture_default_str();
  cmd->add_option("--hidden", flags->hidden)->capture_default_str();
  cmd->add_option("--c", flags->c)->capture_default_str();
  cmd->add_option("--multipliers", flags->multipliers, "Multiples of beta_max")
      ->delimiter(',')
      ->capture_default_str();
  flags->train.add(*cmd);
  cmd->add_option("--seeds", flags->seeds, "Runs per multiplier")->capture_default_str();
  cmd->add_option("--seed", flags->seed, "Run r uses seed + r")->capture_default_str();
  cmd->add_option("--out", flags->out, "Output directory");
  cmd->callback([flags, &ctx] {
    if (flags->seeds < 1) {
      throw UsageError("--seeds must be at least 1");
    }
    if (flags->multipliers.empty()) {
      throw UsageError("--multipliers must not be empty");
    }
    for (double k : flags->multipliers) {
      if (!(std::isfinite(k) && k > 0.0)) {
        throw UsageError("--multipliers must be positive");
      }
    }
    const Dataset data = load_data(flags->dataset, flags->toy);
    const HiddenSpace hidden = hidden_flag(flags->hidden);
    InitSpec base{data.n(), flags->m, hidden, flags->c, 0.0, 0};
    as_usage([&] { base.validate(); });
    as_usage([&] { flags->train.config(0).validate(Rbm(base.n, base.m, hidden), data); });
    const double beta_max =
        cached_beta_max(static_cast<double>(base.m) / base.n, base.c, base.hidden);

    const fs::path dir = output_dir(flags->out);
    auto runs_os = open_output(dir / "experiment_runs.csv");
    // ll[multiplier index][epoch] over seeds
    std::vector<std::vector<std::vector<double>>> ll(flags->multipliers.size());
    bool header = true;
    for (std::size_t k = 0; k < flags->multipliers.size(); ++k) {
      ll[k].assign(static_cast<std::size_t>(flags->train.epochs) + 1, {});
      for (int r = 0; r < flags->seeds; ++r) {
        const std::uint64_t seed = flags->seed + static_cast<std::uint64_t>(r);
        InitSpec spec = base;
        spec.beta = flags->multipliers[k] * beta_max;
        spec.seed = seed;
        const TrainResult result = train(init_rbm(spec), data, flags->train.config(seed));
        write_metrics_csv(runs_os, result.metrics, flags->multipliers[k], seed, header);
        header = false;
        for (const EpochMetrics& row : result.metrics) {
          ll[k][static_cast<std::size_t>(row.epoch)].push_back(row.log_likelihood);
        }
      }
    }

    auto summary_os = open_output(dir / "experiment_summary.csv");
    summary_os << "beta_multiplier,beta,epoch,mean_log_likelihood,std_log_likelihood,runs\n";
    for (std::size_t k = 0; k < ll.size(); ++k) {
      for (std::size_t e = 0; e < ll[k].size(); ++e) {
        const Summary s = summarize(ll[k][e]);
        summary_os << general(flags->multipliers[k]) << ',' << general(flags->multipliers[k] * beta_max)
                   << ',' << e << ',' << general(s.mean) << ',' << general(s.std) << ','
                   << ll[k][e].size() << '\n';
      }
    }

    const std::size_t last = static_cast<std::size_t>(flags->train.epochs);
    ctx.out << "beta_max," << general(beta_max) << '\n';
    ctx.out << "beta_multiplier,epoch,mean_log_likelihood,std_log_likelihood\n";
    std::size_t best = 0;
    std::vector<Summary> finals;
    for (std::size_t k = 0; k < ll.size(); ++k) {
      finals.push_back(summarize(ll[k][last]));
      if (finals[k].mean > finals[best].mean) {
        best = k;
      }
      ctx.out << general(flags->multipliers[k]) << ',' << last << ',' << fixed(finals[k].mean, 4)
              << ',' << fixed(finals[k].std, 4) << '\n';
    }
    ctx.out << "best_multiplier," << general(flags->multipliers[best]) << '\n';
  });
}

int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Dataset-free RBM weight initialization and a small training harness", "rbminit"};
  app.require_subcommand(1);
  Context ctx{out, err};
  setup_beta_max(app, ctx);
  setup_beta_table(app, ctx);
  setup_phase_scan(app, ctx);
  setup_gen_toy(app, ctx);
  setup_binarize(app, ctx);
  setup_init(app, ctx);
  setup_train(app, ctx);
  setup_eval(app, ctx);
  setup_experiment(app, ctx);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return kOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kRuntimeFailure;
  }
  return kOk;
}

}  // namespace

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  return dispatch(argc, argv, out, err);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"rbminit"};
  for (const auto& a : args) {
    argv.push_back(a.c_str());
  }
  return dispatch(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace rbminit::cli
