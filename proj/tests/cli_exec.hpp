// Minimal shell runner for driving the CLI binary from tests.
#pragma once

#include <sys/wait.h>

#include <cstdio>
#include <string>

struct CommandResult {
    int status = -1;
    std::string output;
};

// Runs a command through the shell; the command may include pipes,
// environment prefixes, and redirections. Captured output is stdout (plus
// stderr if the command redirects it).
inline CommandResult run_shell(const std::string& command) {
    CommandResult result;
    FILE* pipe = popen(command.c_str(), "r");
    if (pipe == nullptr) return result;
    char buf[4096];
    std::size_t got = 0;
    while ((got = fread(buf, 1, sizeof(buf), pipe)) > 0) {
        result.output.append(buf, got);
    }
    const int rc = pclose(pipe);
    if (WIFEXITED(rc)) result.status = WEXITSTATUS(rc);
    return result;
}
