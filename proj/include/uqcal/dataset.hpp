#ifndef UQCAL_DATASET_HPP
#define UQCAL_DATASET_HPP

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace uqcal {

/// Paired prediction errors and positive uncertainties. The record order is
/// kept exactly as ingested; several analyses depend on it.
class Dataset {
public:
    Dataset(std::vector<double> errors, std::vector<double> uncertainties,
            std::string provenance = "");

    std::size_t size() const { return errors_.size(); }
    const std::vector<double>& errors() const { return errors_; }
    const std::vector<double>& uncertainties() const { return uncertainties_; }
    const std::string& provenance() const { return provenance_; }

    double error(std::size_t i) const { return errors_[i]; }
    double uncertainty(std::size_t i) const { return uncertainties_[i]; }
    double z(std::size_t i) const { return errors_[i] / uncertainties_[i]; }

private:
    std::vector<double> errors_;
    std::vector<double> uncertainties_;
    std::string provenance_;
};

// Input column layout: direct carries (E, u), reference carries (R, V, uV)
// which is transformed to E = R - V, u = uV on load.
enum class Schema { direct, reference };

Schema schema_from_string(const std::string& name);
std::string to_string(Schema schema);

// Reads a header-bearing delimited table (comma or whitespace separated,
// auto-detected from the header; column names case-insensitive).
Dataset load_dataset(std::istream& in, Schema schema, std::string provenance = "");
Dataset load_dataset_file(const std::filesystem::path& path, Schema schema);

// Writes the direct (E, u) layout with shortest round-trip number formatting,
// so load_dataset() reproduces the dataset exactly.
void write_dataset(std::ostream& out, const Dataset& d);
void write_dataset_file(const std::filesystem::path& path, const Dataset& d);

struct Stratum {
    double value;       // common uncertainty value (mean of merged values)
    std::size_t count;
};

struct StratificationProfile {
    std::vector<Stratum> strata;            // ascending by value
    std::size_t n_unique = 0;
    std::size_t n_singletons = 0;
    std::vector<std::size_t> counts_desc;   // counts sorted decreasing
};

// Groups the uncertainties into strata of equal value. A positive tolerance
// chain-merges sorted values whose successive gap is <= tolerance; 0 means
// exact equality.
StratificationProfile stratification_profile(const Dataset& d, double value_tolerance = 0.0);

} // namespace uqcal

#endif
