#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

namespace atomtopo {

// Comma-separated, '.' decimal, header row, LF endings, 12 significant digits.
class CsvWriter {
public:
    CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header);

    template <class... T>
    void row(const T&... values) {
        bool first = true;
        ((write_field(values, first)), ...);
        out_ << '\n';
    }

private:
    template <class T>
    void write_field(const T& v, bool& first) {
        if (!first) out_ << ',';
        first = false;
        out_ << v;
    }

    std::ofstream out_;
};

void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace atomtopo
