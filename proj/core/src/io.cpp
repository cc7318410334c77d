#include "edgemorph/io.hpp"

#include <bit>
#include <cctype>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

namespace edgemorph {

namespace {

std::string path_str(const std::filesystem::path& p) { return p.string(); }

[[noreturn]] void fail(const std::filesystem::path& path, const std::string& what) {
    throw Error(path_str(path) + ": " + what);
}

// Reads one whitespace-delimited header token, skipping '#' comment lines.
std::string next_token(std::istream& in) {
    std::string tok;
    int c = in.get();
    while (c != EOF && (std::isspace(c) || c == '#')) {
        if (c == '#') {
            while (c != EOF && c != '\n') c = in.get();
        }
        c = in.get();
    }
    while (c != EOF && !std::isspace(c)) {
        tok.push_back(char(c));
        c = in.get();
    }
    return tok;
}

int parse_dim(const std::string& tok, const std::filesystem::path& path, const char* which) {
    try {
        std::size_t pos = 0;
        const int v = std::stoi(tok, &pos);
        if (pos != tok.size() || v < 1) fail(path, std::string("bad ") + which + " in header");
        return v;
    } catch (const Error&) {
        throw;
    } catch (const std::exception&) {
        fail(path, std::string("bad ") + which + " in header");
    }
}

std::uint32_t load_u32(const unsigned char* b, bool little_endian) {
    if (little_endian) {
        return std::uint32_t(b[0]) | std::uint32_t(b[1]) << 8 | std::uint32_t(b[2]) << 16 |
               std::uint32_t(b[3]) << 24;
    }
    return std::uint32_t(b[3]) | std::uint32_t(b[2]) << 8 | std::uint32_t(b[1]) << 16 |
           std::uint32_t(b[0]) << 24;
}

void store_u32_le(std::uint32_t v, unsigned char* b) {
    b[0] = (unsigned char)(v & 0xff);
    b[1] = (unsigned char)((v >> 8) & 0xff);
    b[2] = (unsigned char)((v >> 16) & 0xff);
    b[3] = (unsigned char)((v >> 24) & 0xff);
}

}  // namespace

ScalarMap read_pfm(const std::filesystem::path& path, Unit unit) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(path, "cannot open file");

    const std::string magic = next_token(in);
    if (magic == "PF") fail(path, "color PFM ('PF') unsupported, expected grayscale 'Pf'");
    if (magic != "Pf") fail(path, "not PFM (bad magic '" + magic + "')");

    const int width = parse_dim(next_token(in), path, "width");
    const int height = parse_dim(next_token(in), path, "height");

    const std::string scale_tok = next_token(in);
    double scale = 0.0;
    try {
        scale = std::stod(scale_tok);
    } catch (const std::exception&) {
        fail(path, "bad scale line");
    }
    if (scale == 0.0) fail(path, "zero scale");
    const bool little_endian = scale < 0.0;

    const std::size_t n = std::size_t(width) * height;
    std::vector<unsigned char> raw(n * 4);
    in.read(reinterpret_cast<char*>(raw.data()), std::streamsize(raw.size()));
    if (std::size_t(in.gcount()) != raw.size()) {
        fail(path, "payload size mismatch (truncated PFM)");
    }

    // File rows run bottom-up; normalize to top-down.
    std::vector<float> data(n);
    for (int fy = 0; fy < height; ++fy) {
        const int y = height - 1 - fy;
        for (int x = 0; x < width; ++x) {
            const unsigned char* b = raw.data() + (std::size_t(fy) * width + x) * 4;
            data[std::size_t(y) * width + x] = std::bit_cast<float>(load_u32(b, little_endian));
        }
    }

    try {
        return ScalarMap::from_data(width, height, std::move(data), unit);
    } catch (const Error& e) {
        fail(path, e.what());
    }
}

void write_pfm(const ScalarMap& map, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(path, "cannot open file for writing");

    out << "Pf\n" << map.width() << " " << map.height() << "\n-1.0\n";

    std::vector<unsigned char> raw(std::size_t(map.width()) * map.height() * 4);
    for (int fy = 0; fy < map.height(); ++fy) {
        const int y = map.height() - 1 - fy;
        for (int x = 0; x < map.width(); ++x) {
            unsigned char* b = raw.data() + (std::size_t(fy) * map.width() + x) * 4;
            store_u32_le(std::bit_cast<std::uint32_t>(map.at(x, y)), b);
        }
    }
    out.write(reinterpret_cast<const char*>(raw.data()), std::streamsize(raw.size()));
    if (!out) fail(path, "write failed");
}

BinaryMask read_mask_pgm(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(path, "cannot open file");

    const std::string magic = next_token(in);
    if (magic != "P5") fail(path, "not a binary PGM (bad magic '" + magic + "')");

    const int width = parse_dim(next_token(in), path, "width");
    const int height = parse_dim(next_token(in), path, "height");
    const int maxval = parse_dim(next_token(in), path, "maxval");
    if (maxval > 255) fail(path, "maxval > 255 unsupported");

    const std::size_t n = std::size_t(width) * height;
    std::vector<unsigned char> raw(n);
    in.read(reinterpret_cast<char*>(raw.data()), std::streamsize(n));
    if (std::size_t(in.gcount()) != n) fail(path, "payload size mismatch (truncated PGM)");

    std::vector<std::uint8_t> bits(n);
    for (std::size_t i = 0; i < n; ++i) bits[i] = raw[i] > 0 ? 1 : 0;
    return BinaryMask::from_bits(width, height, std::move(bits));
}

void write_mask_pgm(const BinaryMask& mask, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(path, "cannot open file for writing");

    out << "P5\n" << mask.width() << " " << mask.height() << "\n255\n";
    std::vector<unsigned char> raw(mask.size());
    for (int y = 0; y < mask.height(); ++y) {
        for (int x = 0; x < mask.width(); ++x) {
            raw[std::size_t(y) * mask.width() + x] = mask.at(x, y) ? 255 : 0;
        }
    }
    out.write(reinterpret_cast<const char*>(raw.data()), std::streamsize(raw.size()));
    if (!out) fail(path, "write failed");
}

void write_metrics_csv(const std::vector<MetricRow>& rows, const std::filesystem::path& path) {
    for (const auto& row : rows) {
        const bool in_range = row.d1 >= 0.0 && row.d3 <= 1.0;
        if (!(row.d1 <= row.d2 && row.d2 <= row.d3) || !in_range) {
            throw Error("metric row '" + row.name + "' violates delta column ordering");
        }
    }

    std::ofstream out(path);
    if (!out) fail(path, "cannot open file for writing");
    out << "name,abs_rel,sq_rel,rmse,rmse_log,d125,d125_2,d125_3\n";

    char buf[64];
    auto fmt = [&buf](double v) {
        std::snprintf(buf, sizeof(buf), "%.6g", v);
        return std::string(buf);
    };
    for (const auto& row : rows) {
        out << row.name << "," << fmt(row.abs_rel) << "," << fmt(row.sq_rel) << ","
            << fmt(row.rmse) << "," << fmt(row.rmse_log) << "," << fmt(row.d1) << ","
            << fmt(row.d2) << "," << fmt(row.d3) << "\n";
    }
    if (!out) fail(path, "write failed");
}

}  // namespace edgemorph
