// Shared CLI plumbing: exit-code contract, config hashing, JSON config
// files, rational parsing, CSV/SVG emission.

#pragma once

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "paralab/dyadic.hpp"

namespace cli {

// Exit-code contract: 0 pass, 1 property fails / negative decision,
// 2 usage, 3 undecided / budget exhausted.
enum ExitCode { kPass = 0, kFail = 1, kUsage = 2, kUndecided = 3 };

inline constexpr const char* kToolVersion = "0.1.0";

inline std::uint64_t fnv1a(const std::string& data) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

/// Hash of the fully-resolved option state of the (sub)command.
inline std::string config_hash(const CLI::App& app) {
    std::string dump = app.config_to_str(true, true);
    std::ostringstream os;
    os << "0x" << std::hex << fnv1a(dump);
    return os.str();
}

/// "name=value" provenance header lines for CSV outputs.
inline std::string csv_provenance(const CLI::App& app) {
    return "# tool=paralab " + std::string(kToolVersion) + "\n# config_hash=" + config_hash(app) +
           "\n";
}

inline std::vector<paralab::DyadicRational> parse_rational_list(const std::string& text) {
    std::vector<paralab::DyadicRational> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        out.push_back(paralab::DyadicRational::parse(item));
    }
    if (out.empty()) throw std::invalid_argument("empty rational list");
    return out;
}

/// JSON config files for --config: a flat object per subcommand, e.g.
/// {"norm": {"N": 512, "p1": 3.0}, "seed": 1}.
class JsonConfig : public CLI::Config {
  public:
    std::string to_config(const CLI::App* app, bool, bool, std::string) const override;
    std::vector<CLI::ConfigItem> from_config(std::istream& input) const override;
};

/// Minimal SVG polyline plot.
void write_svg_lineplot(const std::string& path, const std::vector<double>& xs,
                        const std::vector<double>& ys, const std::string& x_label,
                        const std::string& y_label, const std::string& title);

/// Route output to a file or stdout when the path is empty or "-".
class OutputTarget {
  public:
    explicit OutputTarget(const std::string& path) {
        if (!path.empty() && path != "-") {
            file_.open(path);
            if (!file_) throw std::invalid_argument("cannot open output file '" + path + "'");
        }
    }
    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

  private:
    std::ofstream file_;
};

}  // namespace cli
