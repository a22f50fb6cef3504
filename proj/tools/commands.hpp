#pragma once

#include <string>
#include <vector>

// Subcommand entry points; each returns a process exit code (0 success,
// 2 configuration error, 3 numerical abort), with exceptions mapped in main.
int cmd_run(const std::string& config_path, const std::vector<std::string>& overrides);
int cmd_convergence(const std::string& config_path, const std::vector<std::string>& overrides,
                    int levels);
int cmd_advect(const std::string& config_path, const std::vector<std::string>& overrides,
               bool postprocess);
int cmd_verify();

/// LOMAC_THREADS (or hardware concurrency) clamped to [1, jobs].
int worker_count(int jobs);
