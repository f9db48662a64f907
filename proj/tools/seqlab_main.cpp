// Command-line front door for the sequence-prediction laboratory.  Each
// subcommand wraps one module's operation family; `verify` runs the bound
// harness and is the acceptance-criteria runner.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "seqlab/bounds.hpp"
#include "seqlab/catalog.hpp"
#include "seqlab/config.hpp"
#include "seqlab/harness.hpp"
#include "seqlab/losses.hpp"
#include "seqlab/machines.hpp"

namespace {

using namespace seqlab;

constexpr int kExitOk = 0;
constexpr int kExitViolated = 1;
constexpr int kExitUsage = 2;
constexpr int kExitBudget = 3;

struct CommonFlags {
    std::string config_path;
    int workers = 1;
    std::uint64_t seed = 1;
    std::string out_dir = ".";
    std::string format = "json";
};

void add_common(CLI::App* cmd, CommonFlags& flags) {
    cmd->add_option("--config", flags.config_path, "Experiment config (JSON)");
    cmd->add_option("--workers", flags.workers, "Worker threads (0 = hardware)");
    cmd->add_option("--seed", flags.seed, "Seed for randomized sweeps");
    cmd->add_option("--out", flags.out_dir, "Output directory");
    cmd->add_option("--format", flags.format, "Output format: json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
}

ExperimentConfig load_config(const CommonFlags& flags) {
    ExperimentConfig cfg;
    if (!flags.config_path.empty()) cfg = ExperimentConfig::from_json_file(flags.config_path);
    cfg.workers = flags.workers;
    cfg.seed = flags.seed;
    cfg.format = flags.format;
    // Budget override, documented in the README: SEQLAB_MAX_EVALS.
    if (const char* env = std::getenv("SEQLAB_MAX_EVALS")) cfg.max_evals = std::stoull(env);
    enforce_budget_caps(cfg);
    if (cfg.registry_version) {
        MachineRegistry reg = canonical_registry(Alphabet(cfg.alphabet));
        if (*cfg.registry_version != reg.version_string())
            throw InputError("config registry pin " + *cfg.registry_version +
                             " does not match built-in " + reg.version_string());
    }
    return cfg;
}

void write_file(const std::string& dir, const std::string& name, const std::string& content) {
    std::filesystem::create_directories(dir);
    std::string path = dir + "/" + name;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write " + path);
    out << content;
}

nlohmann::ordered_json rat_json(const Rat& q) { return rat_str(q); }

int cmd_eval(const std::string& spec, const std::string& x_str, int check_depth,
             const CommonFlags& flags) {
    if (!flags.config_path.empty()) load_config(flags);  // validates pins and caps
    Semimeasure m = parse_measure_spec(spec);
    FinStr x = FinStr::parse(m.alphabet(), x_str);
    nlohmann::ordered_json j;
    j["spec"] = m.spec_string();
    j["x"] = x.str();
    j["value"] = rat_json(m.eval(x));
    j["is_measure"] = m.is_measure();
    j["is_deterministic"] = m.is_deterministic();
    if (check_depth > 0) {
        SemimeasureCheck check = check_semimeasure(m, check_depth);
        j["check"] = {{"depth", check_depth},
                      {"is_semimeasure", check.is_semimeasure},
                      {"is_measure_up_to_depth", check.is_measure_up_to_depth},
                      {"max_violation", rat_str(check.max_violation)}};
    }
    std::cout << j.dump(2) << "\n";
    (void)flags;
    return kExitOk;
}

int cmd_mixture(const CommonFlags& flags, const std::string& class_name,
                const std::string& history_str) {
    ExperimentConfig cfg = load_config(flags);
    std::shared_ptr<const WeightedClass> cls;
    std::string name = class_name;
    if (!cfg.classes.empty()) {
        for (const ClassConfig& cc : cfg.classes)
            if (cc.name == class_name) cls = cc.build();
    }
    if (!cls) {
        for (const CatalogClass& cc : standard_catalog())
            if (cc.name == class_name) cls = cc.members;
    }
    if (!cls) throw InputError("unknown class: " + class_name);
    FinStr history = FinStr::parse(cls->alphabet(), history_str);
    std::string csv = posterior_trace_csv(cls, history);
    write_file(flags.out_dir, "mixture_" + name + ".csv", csv);
    std::cout << csv;
    return kExitOk;
}

int cmd_divergence(const CommonFlags& flags, const std::string& mu_spec,
                   const std::string& class_name, const std::string& history_str, int n,
                   std::uint64_t mc_samples) {
    ExperimentConfig cfg = load_config(flags);
    Semimeasure mu = parse_measure_spec(mu_spec);
    std::shared_ptr<const WeightedClass> cls;
    for (const CatalogClass& cc : standard_catalog())
        if (cc.name == class_name) cls = cc.members;
    for (const ClassConfig& cc : cfg.classes)
        if (cc.name == class_name) cls = cc.build();
    if (!cls) throw InputError("unknown class: " + class_name);
    Semimeasure xi = mixture_semimeasure(cls);
    FinStr history = FinStr::parse(mu.alphabet(), history_str);
    LossMatrix loss = LossMatrix::zero_one(static_cast<std::size_t>(mu.alphabet().size));
    EnumBudget budget;
    if (cfg.max_evals) budget.max_evals = *cfg.max_evals;
    DivergenceLedger ledger =
        cumulative_divergence(mu, xi, history, n, all_distance_kinds(), &loss, budget);
    write_file(flags.out_dir, "divergence.csv", ledger.csv());
    std::cout << ledger.csv();
    if (mc_samples > 0) {
        MonteCarloEstimate est = monte_carlo_divergence(mu, xi, history, n, mc_samples,
                                                        cfg.seed, all_distance_kinds(), &loss);
        nlohmann::ordered_json j;
        j["samples"] = est.samples;
        j["rhs_mean"] = est.rhs_mean;
        j["rhs_stderr"] = est.rhs_stderr;
        std::cout << j.dump(2) << "\n";
    }
    return kExitOk;
}

int cmd_complexity(const CommonFlags& flags, const std::string& target,
                   const std::string& cond, int L, long S, bool monotone_prior) {
    ExperimentConfig cfg = load_config(flags);
    MachineRegistry reg = canonical_registry(Alphabet(cfg.alphabet));
    FinStr y = FinStr::parse(reg.alphabet(), target);
    nlohmann::ordered_json j;
    j["target"] = y.str();
    j["condition"] = cond;
    j["L"] = L;
    j["S"] = S;
    j["registry"] = reg.version_string();
    if (monotone_prior) {
        j["M_L"] = rat_json(enum_M_lower(reg, y, L, S));
    } else {
        KResult k = cond.empty() ? enum_K(reg, y, L, S)
                                 : enum_K_cond(reg, y, FinStr::parse(reg.alphabet(), cond), L, S);
        j["value"] = k.value ? nlohmann::ordered_json(*k.value) : nlohmann::ordered_json();
        j["witness_bits"] = k.witness ? bits_str(*k.witness) : "";
    }
    std::string text = j.dump(2) + "\n";
    write_file(flags.out_dir, "complexity.json", text);
    std::cout << text;
    return kExitOk;
}

int cmd_kstar(const CommonFlags& flags, const std::string& target, const std::string& cond,
              int L, long S) {
    ExperimentConfig cfg = load_config(flags);
    MachineRegistry reg = canonical_registry(Alphabet(cfg.alphabet));
    FinStr y = FinStr::parse(reg.alphabet(), target);
    FinStr x = FinStr::parse(reg.alphabet(), cond);
    KstarResult k = enum_Kstar(reg, y, x, L, S);
    nlohmann::ordered_json j;
    j["target"] = y.str();
    j["condition"] = x.str();
    j["L"] = L;
    j["S"] = S;
    j["registry"] = reg.version_string();
    j["value"] = k.value ? nlohmann::ordered_json(*k.value) : nlohmann::ordered_json();
    j["witness_bits"] = k.witness ? bits_str(*k.witness) : "";
    j["witness_k"] = k.witness_k ? nlohmann::ordered_json(*k.witness_k) : nlohmann::ordered_json();
    std::string text = j.dump(2) + "\n";
    write_file(flags.out_dir, "kstar.json", text);
    std::cout << text;
    return kExitOk;
}

int cmd_adversarial(const CommonFlags& flags, const std::string& mu_spec, int n) {
    Semimeasure mu = parse_measure_spec(mu_spec);
    AdversarialResult res = adversarial_sequence(mu, n);
    nlohmann::ordered_json j;
    j["mu"] = mu.spec_string();
    j["alpha"] = res.alpha.str();
    nlohmann::ordered_json certs = nlohmann::ordered_json::array();
    for (const AdversarialStep& s : res.certificates)
        certs.push_back({{"b", s.b}, {"mu_b", rat_str(s.mu_b)}, {"chosen", s.chosen}});
    j["certificates"] = std::move(certs);
    std::string text = j.dump(2) + "\n";
    write_file(flags.out_dir, "adversarial.json", text);
    std::cout << text;
    return kExitOk;
}

int cmd_registry(const CommonFlags& flags) {
    ExperimentConfig cfg = load_config(flags);
    MachineRegistry reg = canonical_registry(Alphabet(cfg.alphabet));
    std::string manifest = reg.manifest();
    MachineRegistry extended = build_min_l_machine(reg);
    manifest += "extended version " + extended.version_string() + "\n";
    write_file(flags.out_dir, "registry_manifest.txt", manifest);
    std::cout << manifest;
    return kExitOk;
}

int cmd_verify(const CommonFlags& flags, const std::string& suite, int depth) {
    ExperimentConfig cfg = load_config(flags);
    if (depth > 0) cfg.horizon_depth = depth;
    enforce_budget_caps(cfg);
    HarnessOptions opt = harness_options_from(cfg);
    opt.workers = flags.workers;
    opt.seed = flags.seed;

    std::vector<BoundReport> reports;
    bool ok = true;
    if (suite == "exact" || suite == "all") {
        HarnessResult exact = run_exact_suite(opt);
        ok = ok && exact.exact_ok;
        reports.insert(reports.end(), exact.reports.begin(), exact.reports.end());
    }
    if (suite == "registry" || suite == "all") {
        HarnessResult registry = run_registry_suite(opt);
        ok = ok && registry.exact_ok;
        reports.insert(reports.end(), registry.reports.begin(), registry.reports.end());
    }
    if (!cfg.report_filter.empty()) {
        std::vector<BoundReport> kept;
        for (const BoundReport& r : reports)
            for (const std::string& prefix : cfg.report_filter)
                if (r.name.rfind(prefix, 0) == 0) {
                    kept.push_back(r);
                    break;
                }
        reports = std::move(kept);
    }
    write_file(flags.out_dir, "verify_" + suite + ".json", reports_json(reports));
    write_file(flags.out_dir, "verify_" + suite + ".csv", reports_csv(reports));
    std::cout << (flags.format == "csv" ? reports_csv(reports) : reports_json(reports));
    std::cerr << reports.size() << " reports, " << (ok ? "all clean" : "violations present")
              << "\n";
    return ok ? kExitOk : kExitViolated;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"seqlab: exact finite-class sequence prediction and "
                 "enumeration-bounded complexity experiments"};
    app.require_subcommand(1);

    CommonFlags flags;

    auto* eval = app.add_subcommand("eval", "Evaluate a measure spec on a string");
    std::string eval_spec, eval_x;
    int eval_check = 0;
    eval->add_option("--spec", eval_spec, "Measure spec")->required();
    eval->add_option("--x", eval_x, "String (digits)")->default_val("");
    eval->add_option("--check-depth", eval_check, "Also run the semimeasure check");
    add_common(eval, flags);

    auto* mixture = app.add_subcommand("mixture", "Posterior trace for a model class");
    std::string mix_class, mix_history;
    mixture->add_option("--class", mix_class, "Class name (catalog or config)")->required();
    mixture->add_option("--history", mix_history, "History string")->default_val("");
    add_common(mixture, flags);

    auto* divergence = app.add_subcommand("divergence", "Cumulative divergence ledger");
    std::string div_mu, div_class, div_history;
    int div_n = 8;
    std::uint64_t div_mc = 0;
    divergence->add_option("--mu", div_mu, "Environment spec")->required();
    divergence->add_option("--class", div_class, "Predictor class name")->required();
    divergence->add_option("--history", div_history, "Conditioning history")->default_val("");
    divergence->add_option("--n", div_n, "Horizon n");
    divergence->add_option("--mc-samples", div_mc, "Extra Monte Carlo estimate");
    add_common(divergence, flags);

    auto* complexity = app.add_subcommand("complexity", "Enumeration-bounded K_L / M_L");
    std::string cx_target, cx_cond;
    int cx_L = 14;
    long cx_S = 2000;
    bool cx_monotone = false;
    complexity->add_option("--target", cx_target, "Target string")->required();
    complexity->add_option("--cond", cx_cond, "Condition string (whole)")->default_val("");
    complexity->add_option("--L", cx_L, "Program length horizon");
    complexity->add_option("--S", cx_S, "Fuel per run");
    complexity->add_flag("--monotone-prior", cx_monotone, "Report M_L instead of K_L");
    add_common(complexity, flags);

    auto* kstar = app.add_subcommand("kstar", "Monotone conditional complexity K*_L");
    std::string ks_target, ks_cond;
    int ks_L = 14;
    long ks_S = 2000;
    kstar->add_option("--target", ks_target, "Target string")->required();
    kstar->add_option("--cond", ks_cond, "Condition string (stream)")->default_val("");
    kstar->add_option("--L", ks_L, "Program length horizon");
    kstar->add_option("--S", ks_S, "Fuel per run");
    add_common(kstar, flags);

    auto* adversarial = app.add_subcommand("adversarial", "Lemma-style adversarial sequence");
    std::string adv_mu;
    int adv_n = 16;
    adversarial->add_option("--mu", adv_mu, "Binary measure spec")->required();
    adversarial->add_option("--n", adv_n, "Sequence length");
    add_common(adversarial, flags);

    auto* registry_cmd = app.add_subcommand("registry", "Print the registry manifest");
    add_common(registry_cmd, flags);

    auto* verify = app.add_subcommand("verify", "Run the bound-verification harness");
    std::string verify_suite = "exact";
    int verify_depth = 0;
    verify->add_option("--suite", verify_suite, "exact, registry, or all")
        ->check(CLI::IsMember({"exact", "registry", "all"}));
    verify->add_option("--depth", verify_depth, "Exhaustive scan depth override");
    add_common(verify, flags);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (eval->parsed()) return cmd_eval(eval_spec, eval_x, eval_check, flags);
        if (mixture->parsed()) return cmd_mixture(flags, mix_class, mix_history);
        if (divergence->parsed())
            return cmd_divergence(flags, div_mu, div_class, div_history, div_n, div_mc);
        if (complexity->parsed())
            return cmd_complexity(flags, cx_target, cx_cond, cx_L, cx_S, cx_monotone);
        if (kstar->parsed()) return cmd_kstar(flags, ks_target, ks_cond, ks_L, ks_S);
        if (adversarial->parsed()) return cmd_adversarial(flags, adv_mu, adv_n);
        if (registry_cmd->parsed()) return cmd_registry(flags);
        if (verify->parsed()) return cmd_verify(flags, verify_suite, verify_depth);
    } catch (const BudgetError& e) {
        std::cerr << "budget exceeded: " << e.what() << "\n";
        return kExitBudget;
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
