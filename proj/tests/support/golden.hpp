#ifndef CPSF_TESTS_GOLDEN_HPP
#define CPSF_TESTS_GOLDEN_HPP

#include "cpsf/cli.hpp"

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace cpsf::testing {


// CLI invocations reproducing the LKAS case study, grouped by scenario.
inline std::vector<std::vector<std::string>> golden_commands(int group) {
    const std::string lkas = "bundled:lkas.cpsf", patch = "bundled:lkas_patch.cpsf";
    switch (group) {
    case 1: {
        std::vector<std::vector<std::string>> out;
        for (const char* q : {"sat(Confidentiality)@0", "sat(Integrity)@0", "sat(Cybersecurity)@0",
                              "sat(Trustworthiness)@0", "-cam[allFramesStored]@0", "-sat(Functionality)@0",
                              "-sat(Functional)@0", "sat(Functional)@0"})
            out.push_back({"check", lkas, "--scenario", "design1", "--query", q});
        return out;
    }
    case 2:
        return {{"allsat", lkas, "--scenario", "design1", "--step", "0"}};
    case 3:
        return {{"complete", lkas, "--scenario", "partial1", "--goal", "sat(Trustworthiness)"},
                {"complete", lkas, "--scenario", "partial1", "--goal", "Functional"}};
    case 4:
        return {{"whatif", lkas, "--scenario", "attacked", "--query", "sat(Functional)@1", "--show-triggered"},
                {"whatif", lkas, "--scenario", "attacked", "--query", "-sat(Functional)@1"}};
    case 5:
        return {{"mitigate", lkas, "--scenario", "attacked", "--goal", "all", "--minimal"},
                {"mitigate", patch, "--scenario", "attacked", "--goal", "all", "--minimal"},
                {"mitigate", patch, "--scenario", "attacked", "--goal", "all"}};
    default:
        return {};
    }
}

inline constexpr int golden_groups = 5;

// Transcript of a group: each command line, its standard output and exit status.
inline std::string golden_transcript(int group, const std::string& format) {
    std::ostringstream t;
    for (auto args : golden_commands(group)) {
        args.push_back("--format");
        args.push_back(format);
        t << "$ cpsf";
        for (const auto& a : args)
            t << ' ' << a;
        t << '\n';
        std::ostringstream out, err;
        int code = cli::run(args, out, err);
        t << out.str() << "[exit " << code << "]\n";
    }
    return t.str();
}

inline std::string golden_path(const std::string& dir, int group, const std::string& format) {
    return dir + "/criterion" + std::to_string(group) + "_" + format + ".golden";
}

inline std::optional<std::string> read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        return std::nullopt;
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

} // namespace cpsf::testing

#endif
