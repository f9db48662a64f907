#include "seqlab/config.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace seqlab {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    parts.push_back(cur);
    return parts;
}

std::vector<Rat> parse_rat_list(const std::string& s) {
    std::vector<Rat> out;
    for (const std::string& item : split(s, ',')) out.push_back(parse_rat(item));
    return out;
}

}  // namespace

Semimeasure parse_measure_spec(const std::string& spec) {
    auto colon = spec.find(':');
    if (colon == std::string::npos) throw InputError("measure spec needs 'kind:args'");
    std::string kind = spec.substr(0, colon);
    std::string args = spec.substr(colon + 1);

    if (kind == "ber") {
        std::vector<Rat> probs = parse_rat_list(args);
        if (probs.size() == 1) return bernoulli_binary(probs[0]);
        return bernoulli(std::move(probs));
    }
    if (kind == "uniform") {
        int k = std::stoi(args);
        if (k < 2) throw InputError("uniform: alphabet size must be >= 2");
        return bernoulli(std::vector<Rat>(static_cast<std::size_t>(k), Rat(1, k)));
    }
    if (kind == "markov") {
        std::vector<std::string> rows = split(args, ';');
        if (rows.size() < 2) throw InputError("markov: needs INIT;ROW...");
        std::vector<Rat> init = parse_rat_list(rows[0]);
        std::vector<std::vector<Rat>> table;
        for (std::size_t i = 1; i < rows.size(); ++i) table.push_back(parse_rat_list(rows[i]));
        return markov(std::move(init), std::move(table));
    }
    if (kind == "det") {
        auto bar = args.find('|');
        if (bar == std::string::npos) throw InputError("det: needs U|V");
        std::string head = args.substr(0, bar);
        std::string period = args.substr(bar + 1);
        if (period.empty()) throw InputError("det: period must be nonempty");
        int max_sym = 1;
        for (char c : head + period) max_sym = std::max(max_sym, c - '0');
        Alphabet a(std::max(2, max_sym + 1));
        return deterministic(FinStr::parse(a, head), FinStr::parse(a, period));
    }
    if (kind == "suffixdet") {
        return suffix_deterministic(std::stoi(args));
    }
    throw InputError("unknown measure spec kind: '" + kind + "'");
}

std::shared_ptr<const WeightedClass> ClassConfig::build() const {
    std::vector<Semimeasure> models;
    std::vector<Rat> weights;
    for (const std::string& s : model_specs) models.push_back(parse_measure_spec(s));
    for (const std::string& w : weight_strs) weights.push_back(parse_rat(w));
    return std::make_shared<WeightedClass>(std::move(models), std::move(weights));
}

ExperimentConfig ExperimentConfig::from_json_text(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw InputError(std::string("config parse error: ") + e.what());
    }
    ExperimentConfig cfg;
    cfg.alphabet = j.value("alphabet", 2);
    if (j.contains("classes")) {
        for (const auto& jc : j.at("classes")) {
            ClassConfig cc;
            cc.name = jc.value("name", "class" + std::to_string(cfg.classes.size()));
            for (const auto& m : jc.at("models")) cc.model_specs.push_back(m.get<std::string>());
            for (const auto& w : jc.at("weights")) cc.weight_strs.push_back(w.get<std::string>());
            cfg.classes.push_back(std::move(cc));
        }
    }
    if (j.contains("registry") && j.at("registry").contains("version"))
        cfg.registry_version = j.at("registry").at("version").get<std::string>();
    if (j.contains("horizons")) {
        const auto& h = j.at("horizons");
        cfg.horizon_L = h.value("L", cfg.horizon_L);
        cfg.horizon_S = h.value("S", cfg.horizon_S);
        cfg.horizon_depth = h.value("depth", cfg.horizon_depth);
        cfg.horizon_n = h.value("n", cfg.horizon_n);
    }
    cfg.seed = j.value("seed", cfg.seed);
    cfg.workers = j.value("workers", cfg.workers);
    cfg.format = j.value("format", cfg.format);
    if (j.contains("reports"))
        for (const auto& r : j.at("reports")) cfg.report_filter.push_back(r.get<std::string>());
    if (j.contains("max_evals")) cfg.max_evals = j.at("max_evals").get<std::uint64_t>();
    return cfg;
}

ExperimentConfig ExperimentConfig::from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return from_json_text(buf.str());
}

void enforce_budget_caps(const ExperimentConfig& cfg) {
    if (cfg.horizon_L < 0 || cfg.horizon_L > 24)
        throw BudgetError("horizon L outside [0, 24]");
    if (cfg.horizon_S < 0 || cfg.horizon_S > 1'000'000)
        throw BudgetError("horizon S outside [0, 1e6]");
    if (cfg.horizon_depth < 0 || cfg.horizon_depth > 12)
        throw BudgetError("horizon depth outside [0, 12]");
    if (cfg.horizon_n < 0 || cfg.horizon_n > 16)
        throw BudgetError("horizon n outside [0, 16]");
}

}  // namespace seqlab
