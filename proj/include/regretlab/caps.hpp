#pragma once

// Enumeration caps. Exhaustive checks (algebra enumeration, plan expansion,
// menu-subset sweeps) are exponential in the worst case; the caps keep runs
// bounded and make failures explicit rather than silent. Defaults can be
// raised via the REGRETLAB_CAPS environment variable, a comma-separated list
// of key=value pairs, e.g. REGRETLAB_CAPS=sigma=8192,plans=40000,subsets=8192.

#include <cstdlib>
#include <stdexcept>
#include <string>

namespace regretlab {

struct Caps {
    std::size_t sigma_events = 4096;   // events in a generated algebra
    std::size_t plans = 20000;         // plans enumerated from one tree
    std::size_t menu_subsets = 4096;   // menu subsets per axiom sweep
};

class caps_error : public std::runtime_error {
  public:
    caps_error(const std::string& cap, std::size_t requested, std::size_t limit)
        : std::runtime_error("cap '" + cap + "' exceeded: needed " + std::to_string(requested) +
                             ", limit " + std::to_string(limit)),
          cap_name(cap) {}
    std::string cap_name;
};

inline Caps parse_caps(const char* env) {
    Caps c;
    if (env == nullptr) return c;
    std::string s(env);
    std::size_t pos = 0;
    while (pos < s.size()) {
        std::size_t comma = s.find(',', pos);
        if (comma == std::string::npos) comma = s.size();
        std::string item = s.substr(pos, comma - pos);
        std::size_t eq = item.find('=');
        if (eq != std::string::npos) {
            std::string key = item.substr(0, eq);
            unsigned long value = std::strtoul(item.c_str() + eq + 1, nullptr, 10);
            if (value > 0) {
                if (key == "sigma") c.sigma_events = value;
                if (key == "plans") c.plans = value;
                if (key == "subsets") c.menu_subsets = value;
            }
        }
        pos = comma + 1;
    }
    return c;
}

inline const Caps& caps() {
    static Caps c = parse_caps(std::getenv("REGRETLAB_CAPS"));
    return c;
}

}  // namespace regretlab
