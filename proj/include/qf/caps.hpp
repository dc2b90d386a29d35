#pragma once

#include <cstdlib>
#include <cstdint>
#include <map>
#include <sstream>
#include <string>

#include "qf/errors.hpp"

namespace qf {

// Resource caps for the desk-scale searches.  Every potentially explosive
// loop takes its bound from here so runaway inputs fail predictably with a
// ResourceError instead of eating the machine.
struct Caps {
    std::uint64_t closure = 1'000'000;   // max elements in a permutation-group closure
    std::uint64_t inn = 1'000'000;       // max |Inn(Q)| when building the envelope model
    std::uint64_t components = 12;       // max |Q| for exhaustive component decomposition
    std::uint64_t hom_nodes = 5'000'000; // max search nodes in morphism enumeration

    // Parse "closure=N,components=N,..." as used by the QF_CAPS environment
    // variable.  Unknown keys or junk are rejected loudly.
    static Caps parse(const std::string& text) { return parse(text, Caps{}); }

    static Caps parse(const std::string& text, Caps base) {
        Caps caps = base;
        std::stringstream ss(text);
        std::string item;
        while (std::getline(ss, item, ',')) {
            if (item.empty()) continue;
            auto eq = item.find('=');
            if (eq == std::string::npos)
                throw MalformedInput("QF_CAPS entry is not key=value: '" + item + "'");
            std::string key = item.substr(0, eq), val = item.substr(eq + 1);
            std::uint64_t num = 0;
            try {
                size_t used = 0;
                num = std::stoull(val, &used);
                if (used != val.size()) throw std::invalid_argument(val);
            } catch (const std::exception&) {
                throw MalformedInput("QF_CAPS value for '" + key + "' is not a number: '" + val + "'");
            }
            if (key == "closure") caps.closure = num;
            else if (key == "inn") caps.inn = num;
            else if (key == "components") caps.components = num;
            else if (key == "hom_nodes") caps.hom_nodes = num;
            else throw MalformedInput("QF_CAPS unknown key '" + key + "'");
        }
        return caps;
    }

    // Defaults overridden by the QF_CAPS environment variable if present.
    static Caps from_env() {
        const char* env = std::getenv("QF_CAPS");
        if (!env) return Caps{};
        return parse(env);
    }
};

}  // namespace qf
