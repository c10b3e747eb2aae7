#pragma once

// JSON decoding of matrices, vectors and measures, and CSV/plot-script
// emission for sampled signals.

#include <semistab/core.hpp>
#include <semistab/discrete_measure.hpp>

#include <nlohmann/json.hpp>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

namespace semistab::app {

using Json = nlohmann::ordered_json;

/// A complex number written as [re, im] or as a plain real.
Complex complex_from_json(const Json& j, const std::string& where);
Json complex_to_json(Complex z);

/// Rows of entries, e.g. [[[0,1],[0,0]],[[0,0],[-1,0]]], or an object
/// {"rows": n, "cols": m, "data": [...]} holding a row-major entry list.
ComplexMatrix matrix_from_json(const Json& j);
Json matrix_to_json(const ComplexMatrix& m);

/// A list of entries. The strings "ones" and "random" and the object
/// {"basis": k} are expanded against `dim`.
ComplexVector vector_from_json(const Json& j, std::size_t dim, std::uint64_t seed);
Json vector_to_json(const ComplexVector& v);

/// {"type": "cantor", "depth": d} | {"type": "lebesgue", "a":, "b":, "n":}
/// | {"type": "atoms", "atoms": [[location, weight], ...]}.
DiscreteMeasure measure_from_json(const Json& j);

double number_field(const Json& j, const char* key, std::optional<double> fallback = {});

struct SignalCsv {
    std::string file;
    std::size_t stride = 1;
    std::size_t rows = 0;
};

/// Writes t,re,im,abs,running_mean, keeping at most max_rows rows.
SignalCsv write_signal_csv(const std::filesystem::path& path, const Signal& s,
                           const Signal& running, std::size_t max_rows = 20001);

/// Gnuplot script plotting |s| and its running mean from a CSV written above.
void write_plot_script(const std::filesystem::path& path, const std::string& csv_relative,
                       const std::string& title);

} // namespace semistab::app
