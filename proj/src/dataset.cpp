#include "uqcal/dataset.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <istream>
#include <ostream>
#include <sstream>

#include "uqcal/errors.hpp"
#include "uqcal/format.hpp"

namespace uqcal {

Dataset::Dataset(std::vector<double> errors, std::vector<double> uncertainties,
                 std::string provenance)
    : errors_(std::move(errors)),
      uncertainties_(std::move(uncertainties)),
      provenance_(std::move(provenance)) {
    if (errors_.size() != uncertainties_.size())
        throw InputError("dataset: errors and uncertainties differ in length (" +
                         std::to_string(errors_.size()) + " vs " +
                         std::to_string(uncertainties_.size()) + ")");
    if (errors_.size() < 2)
        throw InputError("dataset: at least 2 records required, got " +
                         std::to_string(errors_.size()));
    for (std::size_t i = 0; i < errors_.size(); ++i) {
        if (!std::isfinite(errors_[i]))
            throw InputError("dataset: non-finite error at record " + std::to_string(i + 1));
        if (!std::isfinite(uncertainties_[i]) || uncertainties_[i] <= 0.0)
            throw InputError("dataset: uncertainty at record " + std::to_string(i + 1) +
                             " must be finite and > 0 (got " + format_double(uncertainties_[i]) + ")");
    }
}

Schema schema_from_string(const std::string& name) {
    if (name == "direct") return Schema::direct;
    if (name == "reference") return Schema::reference;
    throw InputError("unknown schema '" + name + "' (expected direct or reference)");
}

std::string to_string(Schema schema) {
    return schema == Schema::direct ? "direct" : "reference";
}

namespace {

std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && (std::isspace(static_cast<unsigned char>(s[b])) != 0)) ++b;
    while (e > b && (std::isspace(static_cast<unsigned char>(s[e - 1])) != 0)) --e;
    return std::string(s.substr(b, e - b));
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

std::vector<std::string> split_fields(const std::string& line, bool comma) {
    std::vector<std::string> out;
    if (comma) {
        std::size_t start = 0;
        while (true) {
            std::size_t pos = line.find(',', start);
            if (pos == std::string::npos) {
                out.push_back(trim(std::string_view(line).substr(start)));
                break;
            }
            out.push_back(trim(std::string_view(line).substr(start, pos - start)));
            start = pos + 1;
        }
    } else {
        std::istringstream iss(line);
        std::string tok;
        while (iss >> tok)
            out.push_back(tok);
    }
    return out;
}

double parse_number(const std::string& tok, std::size_t row, const std::string& col) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc{} || ptr != tok.data() + tok.size())
        throw InputError("row " + std::to_string(row) + ": cannot parse '" + tok +
                         "' in column " + col);
    return v;
}

struct ColumnIndex {
    std::size_t pos;
    std::string name;
};

ColumnIndex find_column(const std::vector<std::string>& header, const std::string& wanted) {
    const std::string key = lower(wanted);
    for (std::size_t i = 0; i < header.size(); ++i)
        if (lower(header[i]) == key)
            return {i, header[i]};
    std::string have;
    for (const auto& h : header)
        have += (have.empty() ? "" : ", ") + h;
    throw InputError("schema error: column '" + wanted + "' not found (header has: " + have + ")");
}

} // namespace

Dataset load_dataset(std::istream& in, Schema schema, std::string provenance) {
    std::string line;
    if (!std::getline(in, line))
        throw InputError("empty input: no header line");
    if (!line.empty() && line.back() == '\r')
        line.pop_back();
    const bool comma = line.find(',') != std::string::npos;
    const auto header = split_fields(line, comma);

    std::vector<ColumnIndex> cols;
    if (schema == Schema::direct) {
        cols.push_back(find_column(header, "E"));
        cols.push_back(find_column(header, "u"));
    } else {
        cols.push_back(find_column(header, "R"));
        cols.push_back(find_column(header, "V"));
        cols.push_back(find_column(header, "uV"));
    }

    std::vector<double> errors, uncertainties;
    std::size_t row = 0;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (trim(line).empty())
            continue;
        ++row;
        const auto fields = split_fields(line, comma);
        for (const auto& c : cols)
            if (c.pos >= fields.size())
                throw InputError("row " + std::to_string(row) + ": only " +
                                 std::to_string(fields.size()) + " fields, column '" +
                                 c.name + "' missing");
        double e, u;
        if (schema == Schema::direct) {
            e = parse_number(fields[cols[0].pos], row, cols[0].name);
            u = parse_number(fields[cols[1].pos], row, cols[1].name);
        } else {
            const double r = parse_number(fields[cols[0].pos], row, cols[0].name);
            const double v = parse_number(fields[cols[1].pos], row, cols[1].name);
            u = parse_number(fields[cols[2].pos], row, cols[2].name);
            e = r - v;
        }
        if (!std::isfinite(e))
            throw InputError("row " + std::to_string(row) + ": non-finite error value");
        if (!std::isfinite(u) || u <= 0.0)
            throw InputError("row " + std::to_string(row) +
                             ": uncertainty must be finite and > 0 (got " + format_double(u) + ")");
        errors.push_back(e);
        uncertainties.push_back(u);
    }
    if (row < 2)
        throw InputError("dataset: at least 2 records required, got " + std::to_string(row));
    return Dataset(std::move(errors), std::move(uncertainties), std::move(provenance));
}

Dataset load_dataset_file(const std::filesystem::path& path, Schema schema) {
    std::ifstream in(path);
    if (!in)
        throw InputError("cannot open input file: " + path.string());
    return load_dataset(in, schema, path.string());
}

void write_dataset(std::ostream& out, const Dataset& d) {
    out << "E,u\n";
    for (std::size_t i = 0; i < d.size(); ++i)
        out << format_double(d.error(i)) << ',' << format_double(d.uncertainty(i)) << '\n';
}

void write_dataset_file(const std::filesystem::path& path, const Dataset& d) {
    std::ofstream out(path);
    if (!out)
        throw InputError("cannot open output file: " + path.string());
    write_dataset(out, d);
}

StratificationProfile stratification_profile(const Dataset& d, double value_tolerance) {
    if (!(value_tolerance >= 0.0))
        throw InputError("value tolerance must be >= 0");
    std::vector<double> values(d.uncertainties());
    std::sort(values.begin(), values.end());

    StratificationProfile profile;
    std::size_t start = 0;
    for (std::size_t i = 1; i <= values.size(); ++i) {
        const bool boundary =
            i == values.size() || values[i] - values[i - 1] > value_tolerance;
        if (!boundary)
            continue;
        const std::size_t count = i - start;
        double value = values[start];
        if (values[i - 1] != values[start]) {
            // merged stratum: represent by the mean of its member values
            double sum = 0.0;
            for (std::size_t j = start; j < i; ++j)
                sum += values[j];
            value = sum / static_cast<double>(count);
        }
        profile.strata.push_back({value, count});
        if (count == 1)
            ++profile.n_singletons;
        start = i;
    }
    profile.n_unique = profile.strata.size();
    profile.counts_desc.reserve(profile.strata.size());
    for (const auto& s : profile.strata)
        profile.counts_desc.push_back(s.count);
    std::sort(profile.counts_desc.begin(), profile.counts_desc.end(), std::greater<>());
    return profile;
}

} // namespace uqcal
