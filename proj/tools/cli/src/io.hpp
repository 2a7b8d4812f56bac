#pragma once

#include <fstream>
#include <iosfwd>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace ipdsaw::cli {

// Bad command-line values; mapped to exit code 2.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// "a:b:step" -> a, a + step, ... up to b. A single number gives one value.
std::vector<double> parse_grid(const std::string& spec);
std::vector<int> parse_int_list(const std::string& spec);

// Resolves a relative path against IPDSAW_OUTPUT_DIR when it is set.
std::string resolve_output_path(const std::string& path);

enum class Format { Csv, JsonLines };

// Serialized writer for one output stream: a file, or stdout when the path is empty.
class Sink {
public:
    Sink(const std::string& path, Format format);
    // Provenance: tool version, subcommand and the full parameter echo.
    void header(const std::string& command, const std::map<std::string, std::string>& config);
    void line(const std::string& text);
    std::ostream& stream() { return *out_; }

private:
    std::unique_ptr<std::ofstream> file_;
    std::ostream* out_;
    Format format_;
    std::mutex mutex_;
};

std::string format_double(double v);

// Empty cells stand for values that do not exist for the row.
using Cell = std::variant<std::monostate, double, long, std::string>;

// Rows of named columns, as CSV or as one JSON object per line.
class Table {
public:
    Table(Sink& sink, Format format, std::vector<std::string> columns);
    void row(const std::vector<Cell>& cells);

private:
    Sink& sink_;
    Format format_;
    std::vector<std::string> columns_;
};

}  // namespace ipdsaw::cli
