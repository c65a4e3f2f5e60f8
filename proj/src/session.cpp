#include "hlf/session.hpp"

#include <fstream>
#include <sstream>

namespace hlf {

void SessionConfig::load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("cannot open config file: " + path);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        size_t eq = line.find('=');
        if (eq == std::string::npos) {
            if (line.find_first_not_of(" \t\r") != std::string::npos)
                throw DomainError("config line " + std::to_string(lineno) + " is not key=value");
            continue;
        }
        auto trim = [](std::string s) {
            size_t a = s.find_first_not_of(" \t\r");
            size_t b = s.find_last_not_of(" \t\r");
            return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
        };
        std::string key = trim(line.substr(0, eq)), val = trim(line.substr(eq + 1));
        if (key == "p") p = std::stoull(val);
        else if (key == "f") f = std::stoi(val);
        else if (key == "n") n = std::stoi(val);
        else if (key == "r") r = std::stoi(val);
        else if (key == "seed") seed = std::stoull(val);
        else if (key == "threads") threads = std::stoi(val);
        else if (key == "window") set_window(val);
        else if (key == "modulus") {
            modulus.clear();
            std::stringstream ss(val);
            std::string tok;
            while (std::getline(ss, tok, ',')) modulus.push_back(std::stoull(trim(tok)));
        } else {
            throw DomainError("unknown config key: " + key);
        }
    }
}

void SessionConfig::set_window(const std::string& text) {
    if (text.find(':') == std::string::npos) {
        window_radius = std::stoi(text);
        window_lo.clear();
        window_hi.clear();
        return;
    }
    window_lo.clear();
    window_hi.clear();
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        size_t colon = tok.find(':');
        if (colon == std::string::npos) throw DomainError("window bounds must be lo:hi");
        window_lo.push_back(std::stoi(tok.substr(0, colon)));
        window_hi.push_back(std::stoi(tok.substr(colon + 1)));
    }
}

void SessionConfig::validate() const {
    if (n < 1 || n > kMaxN) throw DomainError("dimension n out of range");
    if (r < 1 || r > 4) throw DomainError("level r out of range (1..4)");
    if (window_radius < 1) throw DomainError("window radius must be >= 1");
    if (!window_lo.empty() && static_cast<int>(window_lo.size()) != n)
        throw DomainError("per-variable window bounds must cover all n variables");
    if (threads < 1) throw DomainError("threads must be >= 1");
}

Window Session::window() const {
    if (!cfg.window_lo.empty()) {
        Window w;
        w.n = cfg.n;
        for (int c = 0; c < cfg.n; ++c) {
            w.lo[c] = cfg.window_lo[static_cast<size_t>(c)];
            w.hi[c] = cfg.window_hi[static_cast<size_t>(c)];
        }
        return w;
    }
    return Window::box(cfg.n, cfg.window_radius);
}

Session::Session(SessionConfig config)
    : cfg((config.validate(), std::move(config))),
      field(cfg.p, cfg.f, cfg.modulus.empty() ? FqField::default_modulus(cfg.p, cfg.f) : cfg.modulus),
      ring(field, cfg.n, window()) {
    K = std::make_unique<KClassContext>(ring, cfg.r);
}

}  // namespace hlf
