#pragma once

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cfs/dataset.hpp"

namespace test_support {

// Deterministic splitmix64 stream for test inputs.
struct Rng {
    std::uint64_t state;

    explicit Rng(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        state += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    int range(int lo, int hi) {
        return lo + static_cast<int>(next() % static_cast<std::uint64_t>(hi - lo + 1));
    }
};

inline cfs::Dataset make_dataset(const std::vector<std::vector<double>>& rows,
                                 const std::vector<int>& labels, int n_classes = -1) {
    cfs::Dataset ds;
    const std::size_t n = rows.empty() ? 0 : rows[0].size();
    ds.features.resize(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            ds.features(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
        }
    }
    ds.labels = labels;
    for (std::size_t j = 0; j < n; ++j) ds.feature_names.push_back("f" + std::to_string(j));
    int classes = n_classes;
    if (classes < 0) {
        classes = 0;
        for (int y : labels) classes = std::max(classes, y + 1);
    }
    for (int c = 0; c < classes; ++c) ds.class_names.push_back("c" + std::to_string(c));
    ds.provenance = "test fixture";
    return ds;
}

// Kendall rank correlation between two orderings given as feature-id
// sequences (rank order). 1 = identical order, -1 = reversed.
inline double kendall_tau(const std::vector<int>& a, const std::vector<int>& b) {
    const std::size_t n = a.size();
    std::vector<int> pos_b(n, 0);
    for (std::size_t i = 0; i < n; ++i) pos_b[static_cast<std::size_t>(b[i])] = static_cast<int>(i);
    long concordant = 0;
    long discordant = 0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const int bi = pos_b[static_cast<std::size_t>(a[i])];
            const int bj = pos_b[static_cast<std::size_t>(a[j])];
            if (bi < bj) {
                ++concordant;
            } else {
                ++discordant;
            }
        }
    }
    const double pairs = static_cast<double>(n) * (static_cast<double>(n) - 1.0) / 2.0;
    return (static_cast<double>(concordant) - static_cast<double>(discordant)) / pairs;
}

class TempDir {
  public:
    TempDir() {
        auto base = std::filesystem::temp_directory_path();
        for (int attempt = 0; attempt < 100; ++attempt) {
            auto candidate = base / ("cfs_test_" + std::to_string(std::rand()) + "_" +
                                     std::to_string(attempt));
            std::error_code ec;
            if (std::filesystem::create_directory(candidate, ec)) {
                path_ = candidate;
                return;
            }
        }
        throw std::runtime_error("cannot create temp directory");
    }

    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }

    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const { return path_; }

    std::filesystem::path file(const std::string& name) const { return path_ / name; }

  private:
    std::filesystem::path path_;
};

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline void write_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
}

struct CliResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

// Runs the installed CLI binary with the given argument string, capturing
// both streams. The binary path comes from the build system.
inline CliResult run_cli(const std::string& args) {
    TempDir dir;
    const auto out_path = dir.file("out");
    const auto err_path = dir.file("err");
    const std::string cmd = std::string("\"") + CFS_CLI_PATH + "\" " + args + " > \"" +
                            out_path.string() + "\" 2> \"" + err_path.string() + "\"";
    const int status = std::system(cmd.c_str());
    CliResult result;
    result.out = read_file(out_path);
    result.err = read_file(err_path);
    if (status == -1) {
        result.exit_code = -1;
    } else {
        result.exit_code = WEXITSTATUS(status);
    }
    return result;
}

} // namespace test_support
