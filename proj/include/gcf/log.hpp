#pragma once

// Minimal stderr logging gated by the GCF_LOG environment variable
// (off | info | debug, default off).  Tools log progress at info and
// per-iteration detail at debug; the library itself stays silent.

#include <cstdlib>
#include <iostream>
#include <string>

namespace gcf::log {

enum class Level { off = 0, info = 1, debug = 2 };

inline Level level() {
    static const Level cached = [] {
        const char* env = std::getenv("GCF_LOG");
        if (!env) return Level::off;
        const std::string s(env);
        if (s == "debug") return Level::debug;
        if (s == "info") return Level::info;
        return Level::off;
    }();
    return cached;
}

inline void info(const std::string& msg) {
    if (level() >= Level::info) std::cerr << "[gcf] " << msg << std::endl;
}

inline void debug(const std::string& msg) {
    if (level() >= Level::debug) std::cerr << "[gcf] " << msg << std::endl;
}

}  // namespace gcf::log
