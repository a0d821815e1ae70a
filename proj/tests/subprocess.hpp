#pragma once

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <stdexcept>
#include <string>

namespace testutil {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

/// Runs the CLI under test (path from $OEW_BIN) with the given argument
/// string; captures stdout, drops stderr.
inline RunResult run_cli(const std::string& args) {
    const char* bin = std::getenv("OEW_BIN");
    if (!bin) throw std::runtime_error("OEW_BIN is not set; run through ctest");
    const std::string cmd = std::string(bin) + " " + args + " 2>/dev/null";

    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) throw std::runtime_error("popen failed for: " + cmd);
    RunResult result;
    std::array<char, 4096> buffer;
    std::size_t n = 0;
    while ((n = fread(buffer.data(), 1, buffer.size(), pipe)) > 0)
        result.out.append(buffer.data(), n);
    const int status = pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

/// Per-process scratch directory under the system temp root.
inline std::filesystem::path scratch_dir() {
    static const std::filesystem::path dir = [] {
        auto p = std::filesystem::temp_directory_path() /
                 ("oew_test_" + std::to_string(::getpid()));
        std::filesystem::create_directories(p);
        return p;
    }();
    return dir;
}

}  // namespace testutil
