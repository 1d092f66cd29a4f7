#include "echelon/config.hpp"

#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace echelon {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::string num(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

}  // namespace

WakeParams RunConfig::wake_params() const {
    WakeParams p(weight, 0.5 * wingspan, airspeed, air_density);
    p.df_coeff = df_coeff;
    p.r0_coeff = r0_coeff;
    p.validate();
    return p;
}

double RunConfig::effective_beta() const {
    return beta > 0.0 ? beta : wake_params().beta();
}

CheckOptions RunConfig::check_options() const {
    CheckOptions o;
    o.grid_step = grid_step;
    o.tol = tol;
    const double b = 0.5 * wingspan;
    o.scan_lo = -20.0 * b;
    o.scan_hi = 20.0 * b;
    return o;
}

void RunConfig::validate() const {
    wake_params().validate();
    if (!(0.0 < alpha_s && alpha_s <= alpha_l))
        throw std::invalid_argument("config: need 0 < alpha_s <= alpha_l");
    if (n < 1) throw std::invalid_argument("config: n must be >= 1");
    if (grid_step <= 0 || tol <= 0)
        throw std::invalid_argument("config: grid_step and tol must be positive");
    if (restarts < 0) throw std::invalid_argument("config: restarts must be >= 0");
}

std::string RunConfig::serialize() const {
    std::ostringstream os;
    os << "weight = " << num(weight) << "\n"
       << "wingspan = " << num(wingspan) << "\n"
       << "airspeed = " << num(airspeed) << "\n"
       << "air_density = " << num(air_density) << "\n"
       << "df_coeff = " << num(df_coeff) << "\n"
       << "r0_coeff = " << num(r0_coeff) << "\n"
       << "beta = " << num(beta) << "\n"
       << "alpha_s = " << num(alpha_s) << "\n"
       << "alpha_l = " << num(alpha_l) << "\n"
       << "n = " << n << "\n"
       << "grid_step = " << num(grid_step) << "\n"
       << "tol = " << num(tol) << "\n"
       << "restarts = " << restarts << "\n"
       << "seed = " << seed << "\n"
       << "out_dir = " << out_dir << "\n";
    return os.str();
}

RunConfig RunConfig::parse(std::istream& in) {
    RunConfig c;
    std::map<std::string, std::string> kv;
    std::string line;
    while (std::getline(in, line)) {
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config: malformed line: " + t);
        kv[trim(t.substr(0, eq))] = trim(t.substr(eq + 1));
    }
    auto getd = [&](const char* key, double& out) {
        auto it = kv.find(key);
        if (it != kv.end()) out = std::stod(it->second);
    };
    getd("weight", c.weight);
    getd("wingspan", c.wingspan);
    getd("airspeed", c.airspeed);
    getd("air_density", c.air_density);
    getd("df_coeff", c.df_coeff);
    getd("r0_coeff", c.r0_coeff);
    getd("beta", c.beta);
    getd("alpha_s", c.alpha_s);
    getd("alpha_l", c.alpha_l);
    getd("grid_step", c.grid_step);
    getd("tol", c.tol);
    if (kv.count("n")) c.n = std::stoi(kv.at("n"));
    if (kv.count("restarts")) c.restarts = std::stoi(kv.at("restarts"));
    if (kv.count("seed")) c.seed = std::stoull(kv.at("seed"));
    if (kv.count("out_dir")) c.out_dir = kv.at("out_dir");
    c.validate();
    return c;
}

RunConfig RunConfig::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("config: cannot open " + path);
    return parse(in);
}

void RunConfig::save(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("config: cannot write " + path);
    out << serialize();
}

}  // namespace echelon
