#include "mrsav/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "mrsav/csv.hpp"
#include "mrsav/errors.hpp"

namespace mrsav {

std::int64_t RunConfig::step_count() const {
    return static_cast<std::int64_t>(std::llround(duration / stepper.k));
}

void RunConfig::validate() const {
    model.validate(grid);
    stepper.validate();
    if (!(duration > 0.0)) throw ConfigError("run.T must be positive");
    if (sample_stride < 1) throw ConfigError("run.sample_stride must be >= 1");
    if (checkpoint_stride < 0) throw ConfigError("run.checkpoint_stride must be >= 0");
    if (mode == RunMode::gamma_zero && stepper.gamma != 0.0)
        throw ConfigError("run.mode = gamma_zero requires stepper.gamma = 0");
    if (forcing.kind == ForcingSpec::Kind::kolmogorov && forcing.kolmogorov_m < 1)
        throw ConfigError("forcing.m must be >= 1");
    if (bootstrap == BootstrapMode::exact_seed && forcing.kind != ForcingSpec::Kind::manufactured)
        throw ConfigError("stepper.bootstrap = exact_seed requires manufactured forcing");
    if (initial == InitialConditionPreset::manufactured_t0 &&
        forcing.kind != ForcingSpec::Kind::manufactured)
        throw ConfigError("run.initial = manufactured_t0 requires manufactured forcing");
    for (double k : k_list)
        if (!(k > 0.0)) throw ConfigError("convergence.k_list entries must be positive");
}

namespace {

struct KeyValue {
    std::string value;
    bool consumed = false;
};

// Flat "section.key" -> value map with consumption tracking, so leftover keys
// can be reported by path.
class KeyStore {
  public:
    void insert(const std::string& path, const std::string& value, const std::string& origin) {
        if (entries_.count(path))
            throw ConfigError(origin + ": duplicate key '" + path + "'");
        entries_[path] = KeyValue{value, false};
    }

    std::optional<std::string> take(const std::string& path) {
        auto it = entries_.find(path);
        if (it == entries_.end()) return std::nullopt;
        it->second.consumed = true;
        return it->second.value;
    }

    void require_all_consumed(const std::string& origin) const {
        for (const auto& [path, kv] : entries_)
            if (!kv.consumed) throw ConfigError(origin + ": unknown key '" + path + "'");
    }

  private:
    std::map<std::string, KeyValue> entries_;
};

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& path, const std::string& value) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw ConfigError("key '" + path + "': expected a number, got '" + value + "'");
    }
}

std::int64_t parse_int(const std::string& path, const std::string& value) {
    try {
        std::size_t pos = 0;
        const long long v = std::stoll(value, &pos);
        if (pos != value.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw ConfigError("key '" + path + "': expected an integer, got '" + value + "'");
    }
}

bool parse_bool(const std::string& path, const std::string& value) {
    if (value == "true" || value == "on" || value == "1") return true;
    if (value == "false" || value == "off" || value == "0") return false;
    throw ConfigError("key '" + path + "': expected true/false, got '" + value + "'");
}

std::vector<double> parse_double_list(const std::string& path, const std::string& value) {
    std::vector<double> out;
    std::stringstream ss(value);
    std::string tok;
    while (ss >> tok) out.push_back(parse_double(path, tok));
    if (out.empty()) throw ConfigError("key '" + path + "': expected a list of numbers");
    return out;
}

std::vector<std::int64_t> parse_int_list(const std::string& path, const std::string& value) {
    std::vector<std::int64_t> out;
    std::stringstream ss(value);
    std::string tok;
    while (ss >> tok) out.push_back(parse_int(path, tok));
    if (out.empty()) throw ConfigError("key '" + path + "': expected a list of integers");
    return out;
}

RunConfig build_config(KeyStore& keys, const std::string& origin) {
    RunConfig cfg;

    // [grid]
    int dim = 2;
    if (auto v = keys.take("grid.dim")) dim = static_cast<int>(parse_int("grid.dim", *v));
    if (dim != 2 && dim != 3) throw ConfigError("key 'grid.dim': must be 2 or 3");
    std::array<int, 3> modes{128, 128, 128};
    if (auto v = keys.take("grid.modes")) {
        const auto list = parse_int_list("grid.modes", *v);
        if (list.size() == 1)
            modes.fill(static_cast<int>(list[0]));
        else if (list.size() == static_cast<std::size_t>(dim))
            for (std::size_t a = 0; a < list.size(); ++a) modes[a] = static_cast<int>(list[a]);
        else
            throw ConfigError("key 'grid.modes': expected 1 or grid.dim entries");
    }
    std::array<double, 3> lengths;
    lengths.fill(2.0 * M_PI);
    if (auto v = keys.take("grid.lengths")) {
        const auto list = parse_double_list("grid.lengths", *v);
        if (list.size() == 1)
            lengths.fill(list[0]);
        else if (list.size() == static_cast<std::size_t>(dim))
            for (std::size_t a = 0; a < list.size(); ++a) lengths[a] = list[a];
        else
            throw ConfigError("key 'grid.lengths': expected 1 or grid.dim entries");
    }
    cfg.grid = Grid(dim, lengths, modes);

    // [model]
    std::string kind = "qg2d";
    if (auto v = keys.take("model.kind")) kind = *v;
    if (kind != "qg2d" && kind != "cqg3d")
        throw ConfigError("key 'model.kind': must be qg2d or cqg3d, got '" + kind + "'");
    cfg.model.kind = kind == "qg2d" ? ModelKind::qg2d : ModelKind::cqg3d;
    cfg.reynolds = 100.0;
    if (auto v = keys.take("model.reynolds")) cfg.reynolds = parse_double("model.reynolds", *v);
    if (!(cfg.reynolds > 0.0)) throw ConfigError("key 'model.reynolds': must be positive");
    cfg.model.nu_h = cfg.model.nu_v = 1.0 / cfg.reynolds;
    if (auto v = keys.take("model.nu_h")) cfg.model.nu_h = parse_double("model.nu_h", *v);
    if (auto v = keys.take("model.nu_v")) cfg.model.nu_v = parse_double("model.nu_v", *v);
    if (auto v = keys.take("model.beta")) cfg.model.beta = parse_double("model.beta", *v);
    if (auto v = keys.take("model.froude")) cfg.model.froude = parse_double("model.froude", *v);

    // [forcing]
    std::string fkind = "none";
    if (auto v = keys.take("forcing.kind")) fkind = *v;
    if (fkind == "none")
        cfg.forcing.kind = ForcingSpec::Kind::none;
    else if (fkind == "kolmogorov")
        cfg.forcing.kind = ForcingSpec::Kind::kolmogorov;
    else if (fkind == "manufactured")
        cfg.forcing.kind = ForcingSpec::Kind::manufactured;
    else if (fkind == "custom")
        cfg.forcing.kind = ForcingSpec::Kind::custom;
    else
        throw ConfigError("key 'forcing.kind': unknown kind '" + fkind + "'");
    if (auto v = keys.take("forcing.m"))
        cfg.forcing.kolmogorov_m = static_cast<int>(parse_int("forcing.m", *v));
    if (auto v = keys.take("forcing.mode"))
        cfg.forcing.manufactured.mode = static_cast<int>(parse_int("forcing.mode", *v));
    if (auto v = keys.take("forcing.amplitude")) {
        if (*v == "cos_t")
            cfg.forcing.manufactured.amplitude = ManufacturedSolution::Amplitude::cos_t;
        else if (*v == "unit")
            cfg.forcing.manufactured.amplitude = ManufacturedSolution::Amplitude::unit;
        else
            throw ConfigError("key 'forcing.amplitude': must be cos_t or unit");
    }
    if (auto v = keys.take("forcing.file")) cfg.forcing.custom_path = *v;
    if (cfg.forcing.kind == ForcingSpec::Kind::custom && cfg.forcing.custom_path.empty())
        throw ConfigError("missing required key 'forcing.file' for custom forcing");

    // [stepper]
    if (auto v = keys.take("stepper.k")) cfg.stepper.k = parse_double("stepper.k", *v);
    if (auto v = keys.take("stepper.gamma")) cfg.stepper.gamma = parse_double("stepper.gamma", *v);
    if (auto v = keys.take("stepper.dealias"))
        cfg.stepper.dealias = parse_bool("stepper.dealias", *v);
    if (auto v = keys.take("stepper.bootstrap")) {
        if (*v == "first_order")
            cfg.bootstrap = BootstrapMode::first_order;
        else if (*v == "exact_seed")
            cfg.bootstrap = BootstrapMode::exact_seed;
        else
            throw ConfigError("key 'stepper.bootstrap': must be first_order or exact_seed");
    }

    // [run]
    if (auto v = keys.take("run.T")) cfg.duration = parse_double("run.T", *v);
    std::string initial = "zero";
    if (auto v = keys.take("run.initial")) initial = *v;
    if (initial == "zero")
        cfg.initial = InitialConditionPreset::zero;
    else if (initial == "kolmogorov_perturbed_a")
        cfg.initial = InitialConditionPreset::kolmogorov_perturbed_a;
    else if (initial == "kolmogorov_perturbed_b")
        cfg.initial = InitialConditionPreset::kolmogorov_perturbed_b;
    else if (initial == "manufactured_t0")
        cfg.initial = InitialConditionPreset::manufactured_t0;
    else
        throw ConfigError("key 'run.initial': unknown preset '" + initial + "'");
    if (auto v = keys.take("run.sample_stride"))
        cfg.sample_stride = parse_int("run.sample_stride", *v);
    if (auto v = keys.take("run.checkpoint_stride"))
        cfg.checkpoint_stride = parse_int("run.checkpoint_stride", *v);
    if (auto v = keys.take("run.output_dir")) cfg.output_dir = *v;
    std::string mode = "mrsav";
    if (auto v = keys.take("run.mode")) mode = *v;
    if (mode == "mrsav")
        cfg.mode = RunMode::mrsav;
    else if (mode == "explicit_baseline")
        cfg.mode = RunMode::explicit_baseline;
    else if (mode == "gamma_zero")
        cfg.mode = RunMode::gamma_zero;
    else
        throw ConfigError("key 'run.mode': unknown mode '" + mode + "'");
    if (cfg.mode == RunMode::gamma_zero) {
        // gamma_zero pins gamma; an explicit conflicting value is an error
        // caught by validate().
        if (!keys.take("stepper.gamma")) cfg.stepper.gamma = 0.0;
    }
    if (auto v = keys.take("run.restart_from")) cfg.restart_from = *v;

    // [convergence]
    if (auto v = keys.take("convergence.k_list"))
        cfg.k_list = parse_double_list("convergence.k_list", *v);

    keys.require_all_consumed(origin);
    cfg.validate();
    return cfg;
}

}  // namespace

RunConfig parse_config_text(const std::string& text, const std::vector<std::string>& overrides,
                            const std::string& origin) {
    std::map<std::string, std::string> raw;
    std::string section;
    std::stringstream ss(text);
    std::string line;
    int lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        if (t.front() == '[') {
            if (t.back() != ']')
                throw ConfigError(origin + ":" + std::to_string(lineno) + ": malformed section header");
            section = trim(t.substr(1, t.size() - 2));
            if (section.empty())
                throw ConfigError(origin + ":" + std::to_string(lineno) + ": empty section name");
            continue;
        }
        const auto eq = t.find('=');
        if (eq == std::string::npos)
            throw ConfigError(origin + ":" + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(t.substr(0, eq));
        const std::string value = trim(t.substr(eq + 1));
        if (key.empty())
            throw ConfigError(origin + ":" + std::to_string(lineno) + ": empty key");
        if (section.empty())
            throw ConfigError(origin + ":" + std::to_string(lineno) + ": key '" + key +
                              "' outside any [section]");
        const std::string path = section + "." + key;
        if (raw.count(path))
            throw ConfigError(origin + ": duplicate key '" + path + "'");
        raw[path] = value;
    }

    // Command-line overrides replace file values.
    for (const auto& ov : overrides) {
        const auto eq = ov.find('=');
        if (eq == std::string::npos)
            throw ConfigError("override '" + ov + "': expected section.key=value");
        const std::string path = trim(ov.substr(0, eq));
        const std::string value = trim(ov.substr(eq + 1));
        if (path.find('.') == std::string::npos)
            throw ConfigError("override '" + ov + "': key must be section.key");
        raw[path] = value;
    }

    KeyStore keys;
    for (const auto& [path, value] : raw) keys.insert(path, value, origin);
    return build_config(keys, origin);
}

RunConfig parse_config(const std::string& path, const std::vector<std::string>& overrides) {
    std::ifstream is(path);
    if (!is) throw ConfigError("cannot open config file: " + path);
    std::stringstream buffer;
    buffer << is.rdbuf();
    return parse_config_text(buffer.str(), overrides, path);
}

std::string serialize_config(const RunConfig& cfg) {
    std::ostringstream os;
    os << "[grid]\n";
    os << "dim = " << cfg.grid.dim() << "\n";
    os << "modes =";
    for (int a = 0; a < cfg.grid.dim(); ++a) os << " " << cfg.grid.modes(a);
    os << "\n";
    os << "lengths =";
    for (int a = 0; a < cfg.grid.dim(); ++a) os << " " << format_double(cfg.grid.length(a));
    os << "\n\n";

    os << "[model]\n";
    os << "kind = " << (cfg.model.kind == ModelKind::qg2d ? "qg2d" : "cqg3d") << "\n";
    os << "reynolds = " << format_double(cfg.reynolds) << "\n";
    os << "nu_h = " << format_double(cfg.model.nu_h) << "\n";
    os << "nu_v = " << format_double(cfg.model.nu_v) << "\n";
    os << "beta = " << format_double(cfg.model.beta) << "\n";
    os << "froude = " << format_double(cfg.model.froude) << "\n\n";

    os << "[forcing]\n";
    switch (cfg.forcing.kind) {
        case ForcingSpec::Kind::none: os << "kind = none\n"; break;
        case ForcingSpec::Kind::kolmogorov: os << "kind = kolmogorov\n"; break;
        case ForcingSpec::Kind::manufactured: os << "kind = manufactured\n"; break;
        case ForcingSpec::Kind::custom: os << "kind = custom\n"; break;
    }
    os << "m = " << cfg.forcing.kolmogorov_m << "\n";
    os << "mode = " << cfg.forcing.manufactured.mode << "\n";
    os << "amplitude = "
       << (cfg.forcing.manufactured.amplitude == ManufacturedSolution::Amplitude::cos_t ? "cos_t"
                                                                                        : "unit")
       << "\n";
    if (!cfg.forcing.custom_path.empty()) os << "file = " << cfg.forcing.custom_path << "\n";
    os << "\n";

    os << "[stepper]\n";
    os << "k = " << format_double(cfg.stepper.k) << "\n";
    os << "gamma = " << format_double(cfg.stepper.gamma) << "\n";
    os << "dealias = " << (cfg.stepper.dealias ? "true" : "false") << "\n";
    os << "bootstrap = "
       << (cfg.bootstrap == BootstrapMode::first_order ? "first_order" : "exact_seed") << "\n\n";

    os << "[run]\n";
    os << "T = " << format_double(cfg.duration) << "\n";
    switch (cfg.initial) {
        case InitialConditionPreset::zero: os << "initial = zero\n"; break;
        case InitialConditionPreset::kolmogorov_perturbed_a:
            os << "initial = kolmogorov_perturbed_a\n";
            break;
        case InitialConditionPreset::kolmogorov_perturbed_b:
            os << "initial = kolmogorov_perturbed_b\n";
            break;
        case InitialConditionPreset::manufactured_t0: os << "initial = manufactured_t0\n"; break;
    }
    os << "sample_stride = " << cfg.sample_stride << "\n";
    os << "checkpoint_stride = " << cfg.checkpoint_stride << "\n";
    os << "output_dir = " << cfg.output_dir << "\n";
    switch (cfg.mode) {
        case RunMode::mrsav: os << "mode = mrsav\n"; break;
        case RunMode::explicit_baseline: os << "mode = explicit_baseline\n"; break;
        case RunMode::gamma_zero: os << "mode = gamma_zero\n"; break;
    }
    if (!cfg.restart_from.empty()) os << "restart_from = " << cfg.restart_from << "\n";

    if (!cfg.k_list.empty()) {
        os << "\n[convergence]\n";
        os << "k_list =";
        for (double k : cfg.k_list) os << " " << format_double(k);
        os << "\n";
    }
    return os.str();
}

bool operator==(const RunConfig& a, const RunConfig& b) {
    return a.grid == b.grid && a.model.kind == b.model.kind && a.model.nu_h == b.model.nu_h &&
           a.model.nu_v == b.model.nu_v && a.model.beta == b.model.beta &&
           a.model.froude == b.model.froude && a.reynolds == b.reynolds &&
           a.forcing.kind == b.forcing.kind && a.forcing.kolmogorov_m == b.forcing.kolmogorov_m &&
           a.forcing.manufactured.mode == b.forcing.manufactured.mode &&
           a.forcing.manufactured.amplitude == b.forcing.manufactured.amplitude &&
           a.forcing.custom_path == b.forcing.custom_path && a.stepper.k == b.stepper.k &&
           a.stepper.gamma == b.stepper.gamma && a.stepper.dealias == b.stepper.dealias &&
           a.bootstrap == b.bootstrap && a.duration == b.duration && a.initial == b.initial &&
           a.sample_stride == b.sample_stride && a.checkpoint_stride == b.checkpoint_stride &&
           a.output_dir == b.output_dir && a.mode == b.mode && a.restart_from == b.restart_from &&
           a.k_list == b.k_list;
}

}  // namespace mrsav
