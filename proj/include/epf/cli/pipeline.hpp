#pragma once

#include <string>

#include "epf/cli/config.hpp"

namespace epf {

/// One function per CLI command; each reads/writes only the documented file
/// formats and throws epf::Error on domain failures.
namespace pipeline {

struct Options {
    bool dry_run = false;
    bool verbose = false;
    std::string instance;  // timestamp for `explain`
    int top_k = 8;
};

void simulate(const RunConfig& cfg, const Options& opt);
void ingest(const RunConfig& cfg, const Options& opt);
void forecast(const RunConfig& cfg, const Options& opt);
void features(const RunConfig& cfg, const Options& opt);
void train(const RunConfig& cfg, const Options& opt);
void predict(const RunConfig& cfg, const Options& opt);
void evaluate(const RunConfig& cfg, const Options& opt);
void explain(const RunConfig& cfg, const Options& opt);
void report(const RunConfig& cfg, const Options& opt);

}  // namespace pipeline

}  // namespace epf
