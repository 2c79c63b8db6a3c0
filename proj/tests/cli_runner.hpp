#pragma once

// Runs the command-line tool and captures stdout and the exit code.

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <string>

namespace testing {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

/// `prefix` goes in front of the command: environment settings or "... |".
inline RunResult run(const std::string& args, const std::string& prefix = "") {
    const std::string cmd = prefix + (prefix.empty() ? "" : " ") + "\"" + INVFORGE_CLI + "\" " + args + " 2>/dev/null";
    RunResult r;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return r;
    std::array<char, 4096> buf{};
    std::size_t n = 0;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
    const int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

inline std::string data(const std::string& file) { return std::string("\"") + INVFORGE_DATA_DIR + "/" + file + "\""; }

}  // namespace testing
