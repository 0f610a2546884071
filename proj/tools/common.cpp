#include "common.hpp"

#include <algorithm>
#include <cmath>

#include "json.hpp"

namespace cli {

std::string JsonConfig::to_config(const CLI::App* app, bool default_also, bool, std::string) const {
    nlohmann::json j;
    for (const CLI::Option* opt : app->get_options()) {
        if (!opt->get_lnames().empty() && opt->get_configurable()) {
            std::string name = opt->get_lnames()[0];
            if (!opt->results().empty())
                j[name] = opt->results().size() == 1 ? nlohmann::json(opt->results()[0])
                                                     : nlohmann::json(opt->results());
            else if (default_also && !opt->get_default_str().empty())
                j[name] = opt->get_default_str();
        }
    }
    for (const CLI::App* sub : app->get_subcommands({}))
        j[sub->get_name()] = nlohmann::json::parse(to_config(sub, default_also, false, ""));
    return j.dump(2);
}

namespace {

void flatten(const nlohmann::json& j, std::vector<std::string> parents,
             std::vector<CLI::ConfigItem>& out) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (it.value().is_object()) {
            auto deeper = parents;
            deeper.push_back(it.key());
            flatten(it.value(), deeper, out);
        } else {
            CLI::ConfigItem item;
            item.parents = parents;
            item.name = it.key();
            if (it.value().is_array()) {
                for (const auto& v : it.value())
                    item.inputs.push_back(v.is_string() ? v.get<std::string>() : v.dump());
            } else {
                item.inputs.push_back(it.value().is_string() ? it.value().get<std::string>()
                                                             : it.value().dump());
            }
            out.push_back(std::move(item));
        }
    }
}

}  // namespace

std::vector<CLI::ConfigItem> JsonConfig::from_config(std::istream& input) const {
    nlohmann::json j = nlohmann::json::parse(input);
    std::vector<CLI::ConfigItem> out;
    flatten(j, {}, out);
    return out;
}

void write_svg_lineplot(const std::string& path, const std::vector<double>& xs,
                        const std::vector<double>& ys, const std::string& x_label,
                        const std::string& y_label, const std::string& title) {
    if (xs.size() != ys.size() || xs.empty())
        throw std::invalid_argument("svg plot: mismatched or empty data");
    const double w = 640, h = 420, ml = 70, mr = 20, mt = 40, mb = 50;
    double x0 = *std::min_element(xs.begin(), xs.end());
    double x1 = *std::max_element(xs.begin(), xs.end());
    double y0 = *std::min_element(ys.begin(), ys.end());
    double y1 = *std::max_element(ys.begin(), ys.end());
    if (x1 == x0) x1 = x0 + 1;
    if (y1 == y0) {
        y0 -= 0.5;
        y1 += 0.5;
    }
    auto px = [&](double x) { return ml + (x - x0) / (x1 - x0) * (w - ml - mr); };
    auto py = [&](double y) { return h - mb - (y - y0) / (y1 - y0) * (h - mt - mb); };

    std::ofstream os(path);
    if (!os) throw std::invalid_argument("cannot open svg file '" + path + "'");
    os << "<svg xmlns='http://www.w3.org/2000/svg' width='" << w << "' height='" << h << "'>\n";
    os << "<rect width='100%' height='100%' fill='white'/>\n";
    os << "<text x='" << w / 2 << "' y='24' text-anchor='middle' font-size='16'>" << title
       << "</text>\n";
    // axes
    os << "<line x1='" << ml << "' y1='" << h - mb << "' x2='" << w - mr << "' y2='" << h - mb
       << "' stroke='black'/>\n";
    os << "<line x1='" << ml << "' y1='" << mt << "' x2='" << ml << "' y2='" << h - mb
       << "' stroke='black'/>\n";
    os << "<text x='" << w / 2 << "' y='" << h - 12 << "' text-anchor='middle' font-size='12'>"
       << x_label << "</text>\n";
    os << "<text x='16' y='" << h / 2 << "' text-anchor='middle' font-size='12' transform='rotate(-90 16 "
       << h / 2 << ")'>" << y_label << "</text>\n";
    // ticks at the extremes
    os.precision(6);
    os << "<text x='" << ml << "' y='" << h - mb + 16 << "' font-size='10'>" << x0 << "</text>\n";
    os << "<text x='" << w - mr - 30 << "' y='" << h - mb + 16 << "' font-size='10'>" << x1
       << "</text>\n";
    os << "<text x='" << 6 << "' y='" << py(y0) << "' font-size='10'>" << y0 << "</text>\n";
    os << "<text x='" << 6 << "' y='" << py(y1) + 8 << "' font-size='10'>" << y1 << "</text>\n";
    // polyline + markers
    os << "<polyline fill='none' stroke='#2266cc' stroke-width='1.5' points='";
    for (size_t i = 0; i < xs.size(); ++i) os << px(xs[i]) << "," << py(ys[i]) << " ";
    os << "'/>\n";
    for (size_t i = 0; i < xs.size(); ++i)
        os << "<circle cx='" << px(xs[i]) << "' cy='" << py(ys[i]) << "' r='3' fill='#2266cc'/>\n";
    os << "</svg>\n";
}

}  // namespace cli
