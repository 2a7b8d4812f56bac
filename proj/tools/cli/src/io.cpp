#include "io.hpp"

#include <json.hpp>

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <sstream>

#ifndef IPDSAW_VERSION
#define IPDSAW_VERSION "unknown"
#endif

namespace ipdsaw::cli {

namespace {

double to_double(const std::string& s)
{
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v))
        throw UsageError("not a number: '" + s + "'");
    return v;
}

std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> out;
    std::string item;
    std::istringstream is(s);
    while (std::getline(is, item, sep)) out.push_back(item);
    return out;
}

}  // namespace

std::vector<double> parse_grid(const std::string& spec)
{
    const auto parts = split(spec, ':');
    if (parts.size() == 1) return {to_double(parts[0])};
    if (parts.size() != 3) throw UsageError("grid must be a:b:step, got '" + spec + "'");
    const double a = to_double(parts[0]), b = to_double(parts[1]), step = to_double(parts[2]);
    if (!(step > 0.0) || b < a) throw UsageError("grid needs a <= b and step > 0: '" + spec + "'");
    std::vector<double> out;
    for (long k = 0;; ++k) {
        const double v = a + k * step;
        if (v > b + 1e-9 * step) break;
        // Drop accumulated binary noise so 1.3:2:0.1 gives 1.4, not 1.4000000000000001.
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.12g", v);
        out.push_back(std::strtod(buf, nullptr));
        if (out.size() > 1000000) throw UsageError("grid too large: '" + spec + "'");
    }
    return out;
}

std::vector<int> parse_int_list(const std::string& spec)
{
    std::vector<int> out;
    for (const auto& item : split(spec, ',')) {
        int v = 0;
        const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
        if (ec != std::errc() || ptr != item.data() + item.size()) throw UsageError("not an integer: '" + item + "'");
        out.push_back(v);
    }
    if (out.empty()) throw UsageError("empty list");
    return out;
}

std::string resolve_output_path(const std::string& path)
{
    if (path.empty() || path == "-") return "";
    const std::filesystem::path p(path);
    const char* dir = std::getenv("IPDSAW_OUTPUT_DIR");
    if (p.is_relative() && dir != nullptr && *dir != '\0') return (std::filesystem::path(dir) / p).string();
    return p.string();
}

Sink::Sink(const std::string& path, Format format) : out_(&std::cout), format_(format)
{
    const std::string resolved = resolve_output_path(path);
    if (!resolved.empty()) {
        const auto parent = std::filesystem::path(resolved).parent_path();
        if (!parent.empty()) std::filesystem::create_directories(parent);
        file_ = std::make_unique<std::ofstream>(resolved, std::ios::binary);
        if (!*file_) throw UsageError("cannot open output file '" + resolved + "'");
        out_ = file_.get();
    }
}

void Sink::header(const std::string& command, const std::map<std::string, std::string>& config)
{
    nlohmann::ordered_json echo;
    echo["tool"] = "ipdsaw";
    echo["version"] = IPDSAW_VERSION;
    echo["command"] = command;
    nlohmann::json params(config);
    echo["config"] = params;
    if (format_ == Format::Csv) {
        line("# " + echo.dump());
    } else {
        nlohmann::ordered_json wrapped;
        wrapped["provenance"] = echo;
        line(wrapped.dump());
    }
}

void Sink::line(const std::string& text)
{
    std::lock_guard lock(mutex_);
    *out_ << text << '\n';
}

std::string format_double(double v)
{
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    (void)ec;
    return std::string(buf, ptr);
}

Table::Table(Sink& sink, Format format, std::vector<std::string> columns)
    : sink_(sink), format_(format), columns_(std::move(columns))
{
    if (format_ == Format::Csv) {
        std::string head;
        for (std::size_t i = 0; i < columns_.size(); ++i) head += (i ? "," : "") + columns_[i];
        sink_.line(head);
    }
}

void Table::row(const std::vector<Cell>& cells)
{
    if (cells.size() != columns_.size()) throw std::logic_error("table row has the wrong width");
    if (format_ == Format::Csv) {
        std::string text;
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) text += ',';
            std::visit(
                [&](const auto& v) {
                    using T = std::decay_t<decltype(v)>;
                    if constexpr (std::is_same_v<T, double>) text += format_double(v);
                    else if constexpr (std::is_same_v<T, long>) text += std::to_string(v);
                    else if constexpr (std::is_same_v<T, std::string>) text += v;
                },
                cells[i]);
        }
        sink_.line(text);
        return;
    }
    nlohmann::ordered_json obj;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        std::visit(
            [&](const auto& v) {
                using T = std::decay_t<decltype(v)>;
                if constexpr (std::is_same_v<T, std::monostate>) obj[columns_[i]] = nullptr;
                else if constexpr (std::is_same_v<T, double>) {
                    if (std::isfinite(v)) obj[columns_[i]] = v;
                    else obj[columns_[i]] = format_double(v);
                } else obj[columns_[i]] = v;
            },
            cells[i]);
    }
    sink_.line(obj.dump());
}

}  // namespace ipdsaw::cli
