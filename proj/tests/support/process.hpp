#pragma once

#include <string>
#include <sys/types.h>
#include <vector>

namespace testsupport {

// Path of the CLI binary under test, from the GQLHARVEST_BIN environment
// variable the build exports to the test runner.
std::string gqlharvest_bin();

// An OS port nobody is listening on right now.
int free_port();

// fork+exec with stdout/stderr appended to log_path. Throws on failure.
pid_t spawn(const std::vector<std::string>& argv, const std::string& log_path);

// True once a TCP connect to 127.0.0.1:port succeeds within the deadline.
bool wait_port_open(int port, int timeout_ms);

// Sends sig and reaps the child; escalates to SIGKILL when it ignores the
// deadline. Returns the wait status.
int stop_process(pid_t pid, int sig, int timeout_ms);

// Waits for the child to exit on its own; SIGKILLs it past the deadline.
// Returns the exit code, or -1 for abnormal termination.
int wait_exit(pid_t pid, int timeout_ms);

// SIGKILL immediately (crash simulation) and reap.
void kill_process(pid_t pid);

}  // namespace testsupport
